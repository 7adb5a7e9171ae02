//! Invariants under EA- and CCZ-equivalence.

mod bitmatrix;

use serde::Serialize;

pub use bitmatrix::{BitMatrix, Echelon};

use crate::error::{Error, Result};
use crate::vbf::{Vbf, WalshSpectrum};

/// Largest `n + m` accepted by [`gamma_rank`].
pub const GAMMA_RANK_MAX_BITS: u32 = 16;

/// Rank over `F_2` of the `2^{n+m}`-square incidence matrix with a one at
/// `((a, b), (u, v))` iff `F(a + u) = b + v`.
///
/// Row `(a, b)` is the graph `{(x, F(x))}` translated by `(a, b)`, so rows
/// are generated on the fly and fed to the elimination in batches.
pub fn gamma_rank(f: &Vbf) -> Result<u64> {
    let (n, m) = (f.n(), f.m());
    if n + m > GAMMA_RANK_MAX_BITS {
        return Err(Error::Budget(format!(
            "Γ-rank needs n + m ≤ {GAMMA_RANK_MAX_BITS}, got {}",
            n + m
        )));
    }
    let side = 1usize << (n + m);
    let mut echelon = Echelon::new(side);
    let w = echelon.words();
    let mut batch = vec![0u64; Echelon::BATCH.min(side) * w];
    let mut filled = 0;
    for row in 0..side as u32 {
        let (a, b) = (row >> m, row & ((1 << m) - 1));
        let dst = &mut batch[filled * w..(filled + 1) * w];
        for x in 0..1u32 << n {
            let col = ((x ^ a) << m | (f.eval(x) ^ b)) as usize;
            dst[col / 64] |= 1 << (col % 64);
        }
        filled += 1;
        if filled * w == batch.len() {
            echelon.insert_batch(&mut batch);
            batch.fill(0);
            filled = 0;
        }
    }
    if filled > 0 {
        echelon.insert_batch(&mut batch[..filled * w]);
    }
    Ok(echelon.rank() as u64)
}

/// The Walsh spectrum of a quadratic APN function on `F_2^n`, `n` even:
/// `0` with multiplicity `2^{n-2}(2^n-1)`, `±2^{(n+2)/2}` with
/// `(2^n-1)(2^{n-2} ± 2^{(n-2)/2})/6`, `±2^{n/2}` with
/// `(2^n-1)(2^n ± 2^{n/2})/3`.
pub fn classical_spectrum(n: u32) -> Result<WalshSpectrum> {
    if n % 2 != 0 {
        return Err(Error::OddDegree(n));
    }
    if !(2..=crate::vbf::MAX_DIM).contains(&n) {
        return Err(Error::UnsupportedDegree(n));
    }
    let q = 1i64 << n;
    let mut s = WalshSpectrum::default();
    let mut put = |value: i64, count: i64| {
        if count > 0 {
            s.counts.insert(value, count as u64);
        }
    };
    let (big, small) = (1i64 << ((n + 2) / 2), 1i64 << (n / 2));
    let (h, hs) = (q / 4, (1i64 << (n / 2)) / 2);
    put(0, (q / 4) * (q - 1));
    put(big, (q - 1) * (h + hs) / 6);
    put(-big, (q - 1) * (h - hs) / 6);
    put(small, (q - 1) * (q + small) / 3);
    put(-small, (q - 1) * (q - small) / 3);
    Ok(s)
}

/// Whether `F` (with `n = m` even) has the classical spectrum.
pub fn is_classical(f: &Vbf) -> Result<bool> {
    if f.n() != f.m() {
        return Err(Error::Dimension("classical spectrum is defined for n = m".into()));
    }
    Ok(f.walsh_spectrum() == classical_spectrum(f.n())?)
}

/// A batch of invariants computed from one function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantBundle {
    pub n: u32,
    pub m: u32,
    pub uniformity: u32,
    pub degree: u32,
    /// Absent when not requested or over budget.
    pub gamma_rank: Option<u64>,
    pub walsh: WalshSpectrum,
}

impl InvariantBundle {
    pub fn compute(f: &Vbf, with_gamma_rank: bool) -> Result<Self> {
        Ok(InvariantBundle {
            n: f.n(),
            m: f.m(),
            uniformity: f.differential_uniformity(),
            degree: f.algebraic_degree(),
            gamma_rank: if with_gamma_rank { Some(gamma_rank(f)?) } else { None },
            walsh: f.walsh_spectrum(),
        })
    }
}

/// One invariant on which two functions differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Dimensions,
    Uniformity,
    Degree,
    GammaRank,
    WalshSpectrum,
}

/// Outcome of comparing invariants. Agreement never implies equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "differing", rename_all = "snake_case")]
pub enum Distinction {
    ProvablyInequivalent(Vec<Invariant>),
    Undetermined,
}

/// Compares two bundles. Degree counts only when one of them is at least 2
/// (below that EA-equivalence can change it); Walsh spectra are compared
/// by absolute values; Γ-ranks only when both are present.
pub fn distinguish(f: &InvariantBundle, g: &InvariantBundle) -> Distinction {
    let mut diff = Vec::new();
    if (f.n, f.m) != (g.n, g.m) {
        diff.push(Invariant::Dimensions);
    }
    if f.uniformity != g.uniformity {
        diff.push(Invariant::Uniformity);
    }
    if f.degree.max(g.degree) >= 2 && f.degree != g.degree {
        diff.push(Invariant::Degree);
    }
    if let (Some(a), Some(b)) = (f.gamma_rank, g.gamma_rank) {
        if a != b {
            diff.push(Invariant::GammaRank);
        }
    }
    if f.walsh.absolute() != g.walsh.absolute() {
        diff.push(Invariant::WalshSpectrum);
    }
    if diff.is_empty() {
        Distinction::Undetermined
    } else {
        Distinction::ProvablyInequivalent(diff)
    }
}
