use serde::Serialize;

use super::Vbf;

/// Full tables are kept only while `n + m` stays within this bound.
const FULL_TABLE_BITS: u32 = 24;

/// Difference distribution of an `(n, m)`-function.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialProfile {
    pub n: u32,
    pub m: u32,
    /// Maximum of `|{x : F(x + a) + F(x) = b}|` over `a ≠ 0`.
    pub uniformity: u32,
    /// First `(a, b)` (row-major order) attaining the maximum.
    pub witness: (u32, u32),
    /// Row-major `2^n × 2^m` counts, absent for large shapes.
    #[serde(skip)]
    pub table: Option<Vec<u32>>,
}

impl DifferentialProfile {
    pub fn entry(&self, a: u32, b: u32) -> Option<u32> {
        self.table
            .as_ref()
            .map(|t| t[((a as usize) << self.m) | b as usize])
    }

    pub fn row(&self, a: u32) -> Option<&[u32]> {
        let width = 1usize << self.m;
        self.table
            .as_ref()
            .map(|t| &t[a as usize * width..(a as usize + 1) * width])
    }

    pub fn is_apn(&self) -> bool {
        self.uniformity == 2
    }
}

impl Vbf {
    /// Difference distribution table together with the uniformity.
    pub fn ddt(&self) -> DifferentialProfile {
        if self.n + self.m > FULL_TABLE_BITS {
            let (uniformity, witness) = self.uniformity_with_witness();
            return DifferentialProfile {
                n: self.n,
                m: self.m,
                uniformity,
                witness,
                table: None,
            };
        }
        let size = self.domain_size();
        let width = 1usize << self.m;
        let mut table = vec![0u32; size * width];
        for x in 0..size {
            let fx = self.table[x];
            for a in 0..size {
                table[a * width + (fx ^ self.table[x ^ a]) as usize] += 1;
            }
        }
        let mut uniformity = 0;
        let mut witness = (0, 0);
        for a in 1..size {
            for b in 0..width {
                let c = table[a * width + b];
                if c > uniformity {
                    uniformity = c;
                    witness = (a as u32, b as u32);
                }
            }
        }
        DifferentialProfile {
            n: self.n,
            m: self.m,
            uniformity,
            witness,
            table: Some(table),
        }
    }

    fn uniformity_with_witness(&self) -> (u32, (u32, u32)) {
        let size = self.domain_size();
        let mut counts = vec![0u32; 1 << self.m];
        let mut touched = Vec::with_capacity(size);
        let mut best = (0, (0, 0));
        for a in 1..size {
            for x in 0..size {
                let d = (self.table[x] ^ self.table[x ^ a]) as usize;
                if counts[d] == 0 {
                    touched.push(d);
                }
                counts[d] += 1;
            }
            for &d in &touched {
                if counts[d] > best.0 {
                    best = (counts[d], (a as u32, d as u32));
                }
                counts[d] = 0;
            }
            touched.clear();
        }
        best
    }

    /// Differential uniformity without materializing the table.
    pub fn differential_uniformity(&self) -> u32 {
        if self.n == 0 {
            return 0;
        }
        self.uniformity_with_witness().0
    }

    /// APN test with early exit on the first derivative value hit twice.
    pub fn is_apn(&self) -> bool {
        self.apn_violation().is_none()
    }

    /// A quadruple `(a, x, y)` with `x ≠ y, x + a ≠ y` and
    /// `F(x + a) + F(x) = F(y + a) + F(y)`, if one exists.
    pub fn apn_violation(&self) -> Option<(u32, u32, u32)> {
        let size = self.domain_size();
        let mut stamp = vec![0u32; 1 << self.m];
        let mut first = vec![0u32; 1 << self.m];
        for a in 1..size {
            let hb = 1usize << (31 - (a as u32).leading_zeros());
            for x in 0..size {
                // one representative per pair {x, x + a}
                if x & hb != 0 {
                    continue;
                }
                let d = (self.table[x] ^ self.table[x ^ a]) as usize;
                if stamp[d] == a as u32 {
                    return Some((a as u32, first[d], x as u32));
                }
                stamp[d] = a as u32;
                first[d] = x as u32;
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn ddt_rows_and_parity() {
        let f = Field::preset(5).unwrap();
        for func in [Vbf::power(&f, 3), Vbf::inverse(&f), Vbf::power(&f, 7)] {
            let p = func.ddt();
            let width = 1 << p.m;
            assert_eq!(p.entry(0, 0), Some(32));
            for a in 0..32 {
                let row = p.row(a).unwrap();
                assert_eq!(row.iter().sum::<u32>(), 32);
                assert!(row.iter().all(|c| c % 2 == 0));
                assert_eq!(row.len(), width);
            }
            assert_eq!(p.is_apn(), func.is_apn());
            assert_eq!(p.uniformity, func.differential_uniformity());
            assert_eq!(p.entry(p.witness.0, p.witness.1), Some(p.uniformity));
        }
    }

    #[test]
    fn known_uniformities() {
        let f6 = Field::preset(6).unwrap();
        assert!(Vbf::power(&f6, 3).is_apn());
        assert_eq!(Vbf::inverse(&f6).ddt().uniformity, 4);
        // inverse is APN for odd n
        assert!(Vbf::inverse(&Field::preset(5).unwrap()).is_apn());
    }

    #[test]
    fn affine_functions_concentrate() {
        let l = Vbf::from_fn(4, 4, |x| (x << 1 | x >> 3) & 15 ^ 5);
        let p = l.ddt();
        assert_eq!(p.uniformity, 16);
        for a in 1..16 {
            assert_eq!(p.row(a).unwrap().iter().filter(|&&c| c != 0).count(), 1);
        }
    }

    #[test]
    fn violation_is_genuine() {
        let f = Field::preset(6).unwrap();
        let inv = Vbf::inverse(&f);
        let (a, x, y) = inv.apn_violation().unwrap();
        assert!(x != y && x ^ a != y);
        assert_eq!(inv.eval(x) ^ inv.eval(x ^ a), inv.eval(y) ^ inv.eval(y ^ a));
    }
}
