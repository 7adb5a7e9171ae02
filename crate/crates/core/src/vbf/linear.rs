use crate::error::{Error, Result};
use crate::field::Field;

use super::low_mask;

/// An `F_2`-linear map `F_2^{n_in} → F_2^{n_out}`, stored by the images of the
/// unit vectors (the columns of its matrix).
///
/// When built from a linearized polynomial `Σ a_i x^{2^i}` the coefficients
/// are kept alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    n_in: u32,
    n_out: u32,
    columns: Vec<u32>,
    coefficients: Option<Vec<u32>>,
}

/// Rank over `F_2` of a set of bit vectors.
pub fn rank_of_vectors(vectors: impl IntoIterator<Item = u32>) -> u32 {
    let mut basis = [0u32; 32];
    let mut rank = 0;
    for mut v in vectors {
        while v != 0 {
            let top = 31 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}

impl LinearMap {
    pub fn new(n_in: u32, n_out: u32, columns: Vec<u32>) -> Result<Self> {
        if columns.len() != n_in as usize {
            return Err(Error::Dimension(format!(
                "{} columns for a map from dimension {n_in}",
                columns.len()
            )));
        }
        if let Some((index, &value)) = columns.iter().enumerate().find(|(_, &c)| c >> n_out != 0) {
            return Err(Error::ValueRange {
                index,
                value,
                bits: n_out,
            });
        }
        Ok(LinearMap {
            n_in,
            n_out,
            columns,
            coefficients: None,
        })
    }

    pub fn zero(n_in: u32, n_out: u32) -> Self {
        LinearMap {
            n_in,
            n_out,
            columns: vec![0; n_in as usize],
            coefficients: None,
        }
    }

    pub fn identity(n: u32) -> Self {
        LinearMap {
            n_in: n,
            n_out: n,
            columns: (0..n).map(|i| 1 << i).collect(),
            coefficients: None,
        }
    }

    /// Builds the map from the values of a function assumed linear; the
    /// assumption is checked on the whole domain.
    pub fn from_linear_fn(n_in: u32, n_out: u32, f: impl Fn(u32) -> u32) -> Result<Self> {
        let map = Self::new(n_in, n_out, (0..n_in).map(|i| f(1 << i) & low_mask(n_out)).collect())?;
        if (0..1u32 << n_in).any(|x| map.eval(x) != f(x)) {
            return Err(Error::Dimension("function is not linear".into()));
        }
        Ok(map)
    }

    /// `x ↦ Σ a_i x^{2^i}` on `GF(2^n)`; missing trailing coefficients are zero.
    pub fn from_linearized(field: &Field, coefficients: &[u32]) -> Result<Self> {
        let n = field.degree();
        if coefficients.len() > n as usize {
            return Err(Error::Dimension(format!(
                "{} coefficients for degree {n}",
                coefficients.len()
            )));
        }
        let mut coeffs = coefficients.to_vec();
        coeffs.resize(n as usize, 0);
        if let Some((index, &value)) = coeffs.iter().enumerate().find(|(_, &c)| c >> n != 0) {
            return Err(Error::ValueRange { index, value, bits: n });
        }
        let columns = (0..n)
            .map(|j| linearized_eval(field, &coeffs, 1 << j))
            .collect();
        Ok(LinearMap {
            n_in: n,
            n_out: n,
            columns,
            coefficients: Some(coeffs),
        })
    }

    /// Coefficients `(a_0, …, a_{n-1})` of the unique linearized polynomial
    /// representing this map, solved from the Moore system on the
    /// polynomial basis.
    pub fn linearized_coefficients(&self, field: &Field) -> Result<Vec<u32>> {
        let n = field.degree();
        if self.n_in != n || self.n_out != n {
            return Err(Error::Dimension("map is not an endomorphism of the field".into()));
        }
        if let Some(c) = &self.coefficients {
            return Ok(c.clone());
        }
        let n = n as usize;
        // Row j: b_j^{2^0} … b_j^{2^{n-1}} | L(b_j)
        let mut rows: Vec<Vec<u32>> = (0..n)
            .map(|j| {
                let mut row = Vec::with_capacity(n + 1);
                let mut p = 1u32 << j;
                for _ in 0..n {
                    row.push(p);
                    p = field.square(p);
                }
                row.push(self.columns[j]);
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| rows[r][col] != 0)
                .expect("Moore matrix of a basis is invertible");
            rows.swap(col, pivot);
            let inv = field.inv(rows[col][col])?;
            for v in rows[col].iter_mut() {
                *v = field.mul(*v, inv);
            }
            for r in 0..n {
                if r != col && rows[r][col] != 0 {
                    let factor = rows[r][col];
                    for k in 0..=n {
                        let sub = field.mul(factor, rows[col][k]);
                        rows[r][k] ^= sub;
                    }
                }
            }
        }
        Ok(rows.into_iter().map(|r| r[n]).collect())
    }

    /// Attached linearized coefficients, if the map was built from them.
    pub fn coefficients(&self) -> Option<&[u32]> {
        self.coefficients.as_deref()
    }

    pub fn n_in(&self) -> u32 {
        self.n_in
    }

    pub fn n_out(&self) -> u32 {
        self.n_out
    }

    pub fn columns(&self) -> &[u32] {
        &self.columns
    }

    /// Row `i` of the matrix as a mask over input bits.
    pub fn row(&self, i: u32) -> u32 {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, &c)| c >> i & 1 != 0)
            .fold(0, |acc, (j, _)| acc | 1 << j)
    }

    #[inline]
    pub fn eval(&self, mut x: u32) -> u32 {
        let mut acc = 0;
        while x != 0 {
            acc ^= self.columns[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        acc
    }

    /// Values on all of `F_2^{n_in}`.
    pub fn table(&self) -> Vec<u32> {
        let size = 1usize << self.n_in;
        let mut out = vec![0u32; size];
        for x in 1..size {
            let low = x & x.wrapping_neg();
            out[x] = out[x ^ low] ^ self.columns[low.trailing_zeros() as usize];
        }
        out
    }

    pub fn rank(&self) -> u32 {
        rank_of_vectors(self.columns.iter().copied())
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.n_in
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.n_out
    }

    pub fn is_invertible(&self) -> bool {
        self.n_in == self.n_out && self.is_injective()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|&c| c == 0)
    }

    /// All vectors of the kernel, in increasing order.
    pub fn kernel(&self) -> Vec<u32> {
        self.table()
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == 0)
            .map(|(x, _)| x as u32)
            .collect()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &LinearMap) -> Result<LinearMap> {
        if inner.n_out != self.n_in {
            return Err(Error::Dimension("composition of incompatible maps".into()));
        }
        LinearMap::new(
            inner.n_in,
            self.n_out,
            inner.columns.iter().map(|&c| self.eval(c)).collect(),
        )
    }

    pub fn add(&self, other: &LinearMap) -> Result<LinearMap> {
        if self.n_in != other.n_in || self.n_out != other.n_out {
            return Err(Error::Dimension("sum of maps with different shapes".into()));
        }
        let coefficients = match (&self.coefficients, &other.coefficients) {
            (Some(a), Some(b)) => Some(a.iter().zip(b).map(|(x, y)| x ^ y).collect()),
            _ => None,
        };
        Ok(LinearMap {
            n_in: self.n_in,
            n_out: self.n_out,
            columns: self.columns.iter().zip(&other.columns).map(|(a, b)| a ^ b).collect(),
            coefficients,
        })
    }

    pub fn inverse(&self) -> Result<LinearMap> {
        if !self.is_invertible() {
            return Err(Error::NotInvertible);
        }
        let table = self.table();
        let mut inv = vec![0u32; table.len()];
        for (x, &y) in table.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        LinearMap::new(self.n_out, self.n_in, (0..self.n_out).map(|i| inv[1 << i]).collect())
    }
}

pub(crate) fn linearized_eval(field: &Field, coeffs: &[u32], x: u32) -> u32 {
    let mut acc = 0;
    let mut p = x;
    for &a in coeffs {
        acc ^= field.mul(a, p);
        p = field.square(p);
    }
    acc
}

/// An affine map `x ↦ L(x) + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    pub linear: LinearMap,
    pub constant: u32,
}

impl AffineMap {
    pub fn new(linear: LinearMap, constant: u32) -> Result<Self> {
        if constant >> linear.n_out() != 0 {
            return Err(Error::ValueRange {
                index: 0,
                value: constant,
                bits: linear.n_out(),
            });
        }
        Ok(AffineMap { linear, constant })
    }

    pub fn identity(n: u32) -> Self {
        AffineMap {
            linear: LinearMap::identity(n),
            constant: 0,
        }
    }

    pub fn zero(n_in: u32, n_out: u32) -> Self {
        AffineMap {
            linear: LinearMap::zero(n_in, n_out),
            constant: 0,
        }
    }

    #[inline]
    pub fn eval(&self, x: u32) -> u32 {
        self.linear.eval(x) ^ self.constant
    }

    pub fn is_invertible(&self) -> bool {
        self.linear.is_invertible()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linearized_round_trip() {
        let f = Field::preset(5).unwrap();
        let coeffs = vec![3, 0, 17, 1, 30];
        let l = LinearMap::from_linearized(&f, &coeffs).unwrap();
        for x in f.elements() {
            assert_eq!(l.eval(x), linearized_eval(&f, &coeffs, x));
        }
        let stripped = LinearMap::new(5, 5, l.columns().to_vec()).unwrap();
        assert_eq!(stripped.linearized_coefficients(&f).unwrap(), coeffs);
    }

    #[test]
    fn table_matches_eval() {
        let l = LinearMap::new(4, 3, vec![1, 6, 0, 5]).unwrap();
        let t = l.table();
        for x in 0..16 {
            assert_eq!(t[x as usize], l.eval(x));
        }
        assert_eq!(l.rank(), 3);
        assert!(l.is_surjective());
        assert!(!l.is_injective());
        assert_eq!(l.kernel().len(), 2);
    }

    #[test]
    fn inverse_and_compose() {
        let l = LinearMap::new(3, 3, vec![0b011, 0b110, 0b100]).unwrap();
        let inv = l.inverse().unwrap();
        assert_eq!(l.compose(&inv).unwrap(), LinearMap::identity(3));
        assert_eq!(
            LinearMap::new(2, 2, vec![1, 1]).unwrap().inverse(),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn from_linear_fn_rejects_nonlinear() {
        assert!(LinearMap::from_linear_fn(3, 3, |x| x ^ (x >> 1)).is_ok());
        assert!(LinearMap::from_linear_fn(3, 3, |x| x.count_ones()).is_err());
    }

    #[test]
    fn rows_and_columns_agree() {
        let l = LinearMap::new(3, 2, vec![0b01, 0b11, 0b10]).unwrap();
        assert_eq!(l.row(0), 0b011);
        assert_eq!(l.row(1), 0b110);
    }
}
