use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::Vbf;
use crate::field::Field;

/// In-place fast Walsh–Hadamard transform (unnormalized).
pub fn fwht(data: &mut [i32]) {
    let len = data.len();
    debug_assert!(len.is_power_of_two());
    let mut h = 1;
    while h < len {
        for chunk in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = chunk.split_at_mut(h);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let (a, b) = (*u, *v);
                *u = a + b;
                *v = a - b;
            }
        }
        h *= 2;
    }
}

/// Multiset of Walsh values `W_F(a, b)` over all `a` and all `b ≠ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WalshSpectrum {
    pub counts: BTreeMap<i64, u64>,
}

impl WalshSpectrum {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn values(&self) -> BTreeSet<i64> {
        self.counts.keys().copied().collect()
    }

    /// Multiset of `|W_F(a, b)|`, invariant under arbitrary affine
    /// equivalence.
    pub fn absolute(&self) -> WalshSpectrum {
        let mut counts = BTreeMap::new();
        for (&v, &c) in &self.counts {
            *counts.entry(v.abs()).or_insert(0) += c;
        }
        WalshSpectrum { counts }
    }

    pub(crate) fn push(&mut self, v: i64) {
        *self.counts.entry(v).or_insert(0) += 1;
    }
}

impl Vbf {
    /// `Σ_x (-1)^{b·F(x) + a·x}` with the standard inner product.
    pub fn walsh_at(&self, a: u32, b: u32) -> i64 {
        self.table
            .iter()
            .enumerate()
            .map(|(x, &v)| {
                if ((v & b).count_ones() + (x as u32 & a).count_ones()) & 1 == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }

    /// `Σ_x (-1)^{Tr(b F(x) + a x)}` over the field (requires `n = m`).
    pub fn walsh_at_trace(&self, field: &Field, a: u32, b: u32) -> i64 {
        self.table
            .iter()
            .enumerate()
            .map(|(x, &v)| {
                if field.trace(field.mul(b, v) ^ field.mul(a, x as u32)) == 0 {
                    1
                } else {
                    -1
                }
            })
            .sum()
    }

    /// Walsh spectrum under the inner-product convention. As a multiset it
    /// coincides with the trace-form spectrum, since both forms are related by
    /// a linear bijection on `a` and on `b`.
    pub fn walsh_spectrum(&self) -> WalshSpectrum {
        let mut spectrum = WalshSpectrum::default();
        let mut buf = vec![0i32; self.domain_size()];
        for b in 1..(1u32 << self.m) {
            for (s, &v) in buf.iter_mut().zip(&self.table) {
                *s = if (v & b).count_ones() & 1 == 0 { 1 } else { -1 };
            }
            fwht(&mut buf);
            for &w in &buf {
                spectrum.push(w as i64);
            }
        }
        spectrum
    }

    /// Walsh spectrum computed with the field trace form.
    pub fn walsh_spectrum_trace(&self, field: &Field) -> WalshSpectrum {
        let n = self.n;
        let mut spectrum = WalshSpectrum::default();
        let mut buf = vec![0i32; self.domain_size()];
        // mask of the functional x ↦ Tr(a x)
        let masks: Vec<u32> = field
            .elements()
            .map(|a| (0..n).filter(|&j| field.trace(field.mul(a, 1 << j)) == 1).fold(0, |m, j| m | 1 << j))
            .collect();
        for b in 1..(1u32 << self.m) {
            for (s, &v) in buf.iter_mut().zip(&self.table) {
                *s = if field.trace(field.mul(b, v)) == 0 { 1 } else { -1 };
            }
            fwht(&mut buf);
            for &mask in &masks {
                spectrum.push(buf[mask as usize] as i64);
            }
        }
        spectrum
    }
}
