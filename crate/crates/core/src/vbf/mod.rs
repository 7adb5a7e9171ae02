//! `(n, m)`-functions stored as full lookup tables, and their differential,
//! spectral and algebraic analysis.

mod anf;
mod differential;
mod dset;
mod linear;
mod walsh;

pub use anf::anf;
pub use differential::DifferentialProfile;
pub use dset::{hyperplane_projection, project, project_is_apn};
pub use linear::{rank_of_vectors, AffineMap, LinearMap};
pub use walsh::{fwht, WalshSpectrum};

use crate::error::{Error, Result};
use crate::field::Field;

/// Largest supported input or output dimension.
pub const MAX_DIM: u32 = 16;

/// A function `F_2^n → F_2^m` given by its values `F(0), F(1), …, F(2^n - 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vbf {
    n: u32,
    m: u32,
    table: Vec<u32>,
}

impl std::fmt::Debug for Vbf {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Vbf({}, {})", self.n, self.m)?;
        if self.table.len() <= 16 {
            write!(f, "{:x?}", self.table)?;
        }
        Ok(())
    }
}

impl Vbf {
    pub fn from_table(n: u32, m: u32, table: Vec<u32>) -> Result<Self> {
        if n > MAX_DIM || m == 0 || m > MAX_DIM + 1 {
            return Err(Error::Dimension(format!("unsupported shape ({n}, {m})")));
        }
        if table.len() != 1 << n {
            return Err(Error::TableLength {
                expected: 1 << n,
                got: table.len(),
            });
        }
        if let Some((index, &value)) = table.iter().enumerate().find(|(_, &v)| v >> m != 0) {
            return Err(Error::ValueRange {
                index,
                value,
                bits: m,
            });
        }
        Ok(Vbf { n, m, table })
    }

    /// Tabulates `f` over `F_2^n`, masking values to `m` bits.
    pub fn from_fn(n: u32, m: u32, f: impl Fn(u32) -> u32) -> Self {
        let mask = low_mask(m);
        Vbf {
            n,
            m,
            table: (0..1u32 << n).map(|x| f(x) & mask).collect(),
        }
    }

    /// `x ↦ Σ c_i x^{d_i}` over the field.
    pub fn from_univariate(field: &Field, terms: &[(u32, u64)]) -> Result<Self> {
        let n = field.degree();
        if let Some(&(_, d)) = terms.iter().find(|(_, d)| *d > field.order() as u64) {
            return Err(Error::Exponent(d));
        }
        if let Some(&(c, _)) = terms.iter().find(|(c, _)| *c >> n != 0) {
            return Err(Error::ValueRange {
                index: 0,
                value: c,
                bits: n,
            });
        }
        Ok(Self::from_fn(n, n, |x| {
            terms
                .iter()
                .fold(0, |acc, &(c, d)| acc ^ field.mul(c, field.pow(x, d)))
        }))
    }

    /// `x ↦ x^d`.
    pub fn power(field: &Field, d: u64) -> Self {
        let n = field.degree();
        Self::from_fn(n, n, |x| field.pow(x, d))
    }

    /// The inverse function `x ↦ x^{2^n - 2}` (so `0 ↦ 0`).
    pub fn inverse(field: &Field) -> Self {
        Self::power(field, field.order() as u64 - 1)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    pub fn into_table(self) -> Vec<u32> {
        self.table
    }

    pub fn domain_size(&self) -> usize {
        self.table.len()
    }

    #[inline]
    pub fn eval(&self, x: u32) -> u32 {
        self.table[x as usize]
    }

    /// Pointwise sum `F + G`.
    pub fn add(&self, other: &Vbf) -> Result<Vbf> {
        self.same_shape(other)?;
        Ok(Vbf {
            n: self.n,
            m: self.m,
            table: self.table.iter().zip(&other.table).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub(crate) fn same_shape(&self, other: &Vbf) -> Result<()> {
        if self.n != other.n || self.m != other.m {
            return Err(Error::Dimension(format!(
                "({}, {}) vs ({}, {})",
                self.n, self.m, other.n, other.m
            )));
        }
        Ok(())
    }

    /// `B_F(x, t) = F(x + t) + F(x) + F(t) + F(0)`.
    #[inline]
    pub fn bform(&self, x: u32, t: u32) -> u32 {
        self.eval(x ^ t) ^ self.eval(x) ^ self.eval(t) ^ self.table[0]
    }

    /// Algebraic degree: the largest monomial weight in the ANF of any
    /// coordinate. The zero function has degree 0.
    pub fn algebraic_degree(&self) -> u32 {
        anf(&self.table)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(mono, _)| mono.count_ones())
            .max()
            .unwrap_or(0)
    }

    /// Degree at most two (affine functions count as degenerate quadratics).
    pub fn is_quadratic(&self) -> bool {
        self.algebraic_degree() <= 2
    }

    /// Checks bilinearity of [`Vbf::bform`] directly over all triples.
    pub fn is_bform_bilinear(&self) -> bool {
        let size = 1u32 << self.n;
        (0..size).all(|t| {
            (0..size).all(|x| (x..size).all(|y| self.bform(x ^ y, t) == self.bform(x, t) ^ self.bform(y, t)))
        })
    }

    /// Boolean function `x ↦ c · F(x)` (component function).
    pub fn component(&self, c: u32) -> Vbf {
        Vbf {
            n: self.n,
            m: 1,
            table: self.table.iter().map(|&v| (v & c).count_ones() & 1).collect(),
        }
    }

    /// Stacks a Boolean function `g` above `self` as bit `m`: `x ↦ (F(x), g(x))`.
    pub fn with_extra_bit(&self, g: &Vbf) -> Result<Vbf> {
        if g.m != 1 || g.n != self.n {
            return Err(Error::Dimension("extra coordinate must be Boolean on the same domain".into()));
        }
        Ok(Vbf {
            n: self.n,
            m: self.m + 1,
            table: self.table.iter().zip(&g.table).map(|(&f, &b)| f | (b << self.m)).collect(),
        })
    }

    /// Inverse of [`Vbf::with_extra_bit`]: splits off the top output bit.
    pub fn split_top_bit(&self) -> Result<(Vbf, Vbf)> {
        if self.m < 2 {
            return Err(Error::Dimension("need at least two output bits".into()));
        }
        let low = low_mask(self.m - 1);
        Ok((
            Vbf {
                n: self.n,
                m: self.m - 1,
                table: self.table.iter().map(|&v| v & low).collect(),
            },
            Vbf {
                n: self.n,
                m: 1,
                table: self.table.iter().map(|&v| v >> (self.m - 1)).collect(),
            },
        ))
    }

    /// Reinterprets the output space as `F_2^m'` for `m' ≥ m` (zero-extension).
    pub fn widen(&self, m: u32) -> Result<Vbf> {
        if m < self.m {
            return Err(Error::Dimension(format!("cannot narrow {} to {m}", self.m)));
        }
        Ok(Vbf {
            n: self.n,
            m,
            table: self.table.clone(),
        })
    }
}

#[inline]
pub(crate) fn low_mask(bits: u32) -> u32 {
    if bits >= 32 {
        u32::MAX
    } else {
        (1u32 << bits) - 1
    }
}
