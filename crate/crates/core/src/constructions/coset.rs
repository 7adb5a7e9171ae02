//! Adding constants on the four cosets of a codimension-2 subspace.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::vbf::{rank_of_vectors, Vbf};

/// A subspace `U` of codimension 2 together with representatives
/// `u_1 = 0, u_2, u_3, u_4` of its four cosets `U_i = U + u_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetDecomposition {
    n: u32,
    basis: Vec<u32>,
    reps: [u32; 4],
    /// Coset index (0..4) of every point.
    index: Vec<u8>,
}

fn span(basis: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32];
    for &b in basis {
        let ext: Vec<u32> = out.iter().map(|&v| v ^ b).collect();
        out.extend(ext);
    }
    out
}

impl CosetDecomposition {
    pub fn new(n: u32, basis: Vec<u32>, reps: [u32; 4]) -> Result<Self> {
        if n < 2 || n > crate::vbf::MAX_DIM {
            return Err(Error::UnsupportedDegree(n));
        }
        if basis.len() + 2 != n as usize || basis.iter().chain(&reps).any(|&v| v >> n != 0) {
            return Err(Error::BadDecomposition(format!("need {} basis vectors in F_2^{n}", n - 2)));
        }
        if rank_of_vectors(basis.iter().copied()) != n - 2 {
            return Err(Error::BadDecomposition("basis vectors are dependent".into()));
        }
        if reps[0] != 0 {
            return Err(Error::BadDecomposition("u_1 must be 0".into()));
        }
        let mut index = vec![u8::MAX; 1 << n];
        let u = span(&basis);
        for (i, &r) in reps.iter().enumerate() {
            for &v in &u {
                let slot = &mut index[(v ^ r) as usize];
                if *slot != u8::MAX {
                    return Err(Error::BadDecomposition("representatives share a coset".into()));
                }
                *slot = i as u8;
            }
        }
        Ok(CosetDecomposition { n, basis, reps, index })
    }

    /// `U = ker Tr^n_2` on `GF(2^n)`, `n` even, with cosets ordered by the
    /// value of `Tr^n_2`: `0, 1, β, β²` where `β = α^{(2^n-1)/3}`.
    pub fn from_trace_to_f4(field: &Field) -> Result<Self> {
        let n = field.degree();
        if n % 2 != 0 {
            return Err(Error::NotASubfield { n, m: 2 });
        }
        let [_, beta, beta2] = field.cube_roots_of_unity()?;
        let targets = [0, 1, beta, beta2];
        let mut reps = [u32::MAX; 4];
        let mut basis = Vec::new();
        for x in field.elements() {
            let t = field.trace_to_subfield(x, 2)?;
            let i = targets.iter().position(|&v| v == t).expect("Tr^n_2 lands in GF(4)");
            if reps[i] == u32::MAX {
                reps[i] = x;
            }
            if i == 0 && rank_of_vectors(basis.iter().copied().chain([x])) as usize > basis.len() {
                basis.push(x);
            }
        }
        Self::new(n, basis, reps)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn representatives(&self) -> [u32; 4] {
        self.reps
    }

    /// Which coset (0-based) contains `x`.
    #[inline]
    pub fn coset_of(&self, x: u32) -> usize {
        self.index[x as usize] as usize
    }

    /// Elements of `U_{i+1}`, increasing.
    pub fn coset(&self, i: usize) -> Vec<u32> {
        (0..1u32 << self.n).filter(|&x| self.coset_of(x) == i).collect()
    }
}

/// `G(x) = F(x) + a_i` for `x ∈ U_i`.
pub fn coset_modify(f: &Vbf, dec: &CosetDecomposition, a: [u32; 4]) -> Result<Vbf> {
    check(f, dec, a)?;
    Ok(Vbf::from_fn(f.n(), f.m(), |x| f.eval(x) ^ a[dec.coset_of(x)]))
}

fn check(f: &Vbf, dec: &CosetDecomposition, a: [u32; 4]) -> Result<()> {
    if f.n() != dec.n() {
        return Err(Error::Dimension("decomposition lives in another space".into()));
    }
    if let Some(i) = a.iter().position(|&v| v >> f.m() != 0) {
        return Err(Error::ValueRange {
            index: i,
            value: a[i],
            bits: f.m(),
        });
    }
    Ok(())
}

/// Calls `visit(x_1, x_2, x_3, F-sum)` for every flat `{x_1, x_2, x_3, x_4}`
/// with `x_i ∈ U_i`; stops when `visit` returns `true`.
fn for_each_flat(f: &Vbf, dec: &CosetDecomposition, mut visit: impl FnMut(u32, u32, u32, u32) -> bool) {
    let u = span(&dec.basis);
    let [_, r2, r3, _] = dec.reps;
    for &x1 in &u {
        let f1 = f.eval(x1);
        for &v2 in &u {
            let x2 = v2 ^ r2;
            let f12 = f1 ^ f.eval(x2);
            for &v3 in &u {
                let x3 = v3 ^ r3;
                let s = f12 ^ f.eval(x3) ^ f.eval(x1 ^ x2 ^ x3);
                if visit(x1, x2, x3, s) {
                    return;
                }
            }
        }
    }
}

/// Values `s` such that no flat meeting every coset once has `F`-sum `s`.
/// `G = coset_modify(F, a)` is APN iff `a_1 + a_2 + a_3 + a_4` lies here.
pub fn admissible_sums(f: &Vbf, dec: &CosetDecomposition) -> Result<BTreeSet<u32>> {
    check(f, dec, [0; 4])?;
    if !f.is_apn() {
        return Err(Error::NotApn);
    }
    let mut seen = vec![false; 1 << f.m()];
    for_each_flat(f, dec, |_, _, _, s| {
        seen[s as usize] = true;
        false
    });
    Ok((0..1u32 << f.m()).filter(|&s| !seen[s as usize]).collect())
}

/// Verdict of [`coset_criterion`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CosetVerdict {
    pub sum: u32,
    pub holds: bool,
    /// A flat `[x_1, x_2, x_3, x_4]` with `F`-sum equal to `sum`.
    pub witness: Option<[u32; 4]>,
}

pub fn coset_criterion(f: &Vbf, dec: &CosetDecomposition, a: [u32; 4]) -> Result<CosetVerdict> {
    check(f, dec, a)?;
    if !f.is_apn() {
        return Err(Error::NotApn);
    }
    let sum = a.iter().fold(0, |acc, &v| acc ^ v);
    let mut witness = None;
    for_each_flat(f, dec, |x1, x2, x3, s| {
        if s == sum {
            witness = Some([x1, x2, x3, x1 ^ x2 ^ x3]);
        }
        witness.is_some()
    });
    Ok(CosetVerdict {
        sum,
        holds: witness.is_none(),
        witness,
    })
}
