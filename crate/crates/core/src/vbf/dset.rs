use std::collections::BTreeSet;

use super::{LinearMap, Vbf};
use crate::error::{Error, Result};

impl Vbf {
    /// `D_F^* = {B_F(x,t) + B_F(y,t) : x ≠ y, t ≠ 0, x ≠ y + t}`.
    ///
    /// Enumerates `t` in the outer loop and `x < y` inside; stops early once
    /// every value of `F_2^m` has been seen.
    pub fn dstar_set(&self) -> BTreeSet<u32> {
        self.four_point_sums(true)
    }

    /// `D_F = {B_F(x,t) + B_F(y,t) : x, y, t}`.
    pub fn d_set(&self) -> BTreeSet<u32> {
        self.four_point_sums(false)
    }

    fn four_point_sums(&self, exclude_degenerate: bool) -> BTreeSet<u32> {
        let size = self.domain_size() as u32;
        let width = 1usize << self.m;
        let mut seen = vec![false; width];
        let mut count = 0;
        let mut mark = |v: u32, seen: &mut Vec<bool>| {
            if !seen[v as usize] {
                seen[v as usize] = true;
                count += 1;
            }
            count == width
        };
        if !exclude_degenerate {
            // x = y contributes 0
            mark(0, &mut seen);
        }
        'outer: for t in 1..size {
            for x in 0..size {
                let dx = self.eval(x) ^ self.eval(x ^ t);
                for y in x + 1..size {
                    if exclude_degenerate && y == x ^ t {
                        continue;
                    }
                    if mark(dx ^ self.eval(y) ^ self.eval(y ^ t), &mut seen) {
                        break 'outer;
                    }
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(v, _)| v as u32)
            .collect()
    }
}

/// `π ∘ F` for a surjective linear `π: F_2^m → F_2^l`.
pub fn project(f: &Vbf, pi: &LinearMap) -> Result<Vbf> {
    if pi.n_in() != f.m() {
        return Err(Error::Dimension(format!(
            "projection expects {} input bits, function has {}",
            pi.n_in(),
            f.m()
        )));
    }
    if !pi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    let values = pi.table();
    Ok(Vbf::from_fn(f.n(), pi.n_out(), |x| values[f.eval(x) as usize]))
}

/// For APN `F`, decides whether `π ∘ F` is APN via the kernel criterion
/// `D_F^* ∩ ker π = ∅`, without tabulating the projected differences.
pub fn project_is_apn(f: &Vbf, pi: &LinearMap) -> Result<bool> {
    if pi.n_in() != f.m() {
        return Err(Error::Dimension("projection does not match output dimension".into()));
    }
    if !pi.is_surjective() {
        return Err(Error::NotSurjective);
    }
    if !f.is_apn() {
        return Err(Error::NotApn);
    }
    let kernel = pi.kernel();
    if kernel.len() == 1 {
        return Ok(true);
    }
    let dstar = f.dstar_set();
    Ok(kernel.iter().all(|k| *k == 0 || !dstar.contains(k)))
}

/// A surjection `F_2^m → F_2^{m-1}` with kernel `{0, k}`.
pub fn hyperplane_projection(m: u32, k: u32) -> Result<LinearMap> {
    if k == 0 || k >> m != 0 || m < 2 {
        return Err(Error::Dimension(format!("kernel vector {k:#x} for dimension {m}")));
    }
    let p = k.trailing_zeros();
    let drop_bit = |v: u32| {
        let low = v & ((1 << p) - 1);
        let high = (v >> (p + 1)) << p;
        low | high
    };
    LinearMap::new(
        m,
        m - 1,
        (0..m)
            .map(|i| {
                let v = 1u32 << i;
                drop_bit(if v >> p & 1 != 0 { v ^ k } else { v })
            })
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn dillon_observation() {
        for n in 3..=6 {
            let f = Field::preset(n).unwrap();
            let cube = Vbf::power(&f, 3);
            let dstar = cube.dstar_set();
            assert_eq!(dstar.len(), (1 << n) - 1);
            assert!(!dstar.contains(&0));
            let d = cube.d_set();
            assert!(d.contains(&0));
            assert!(dstar.is_subset(&d));
        }
    }

    #[test]
    fn projection_kernel_is_right() {
        for m in 2..=6 {
            for k in 1..(1u32 << m) {
                let pi = hyperplane_projection(m, k).unwrap();
                assert!(pi.is_surjective());
                assert_eq!(pi.kernel(), vec![0, k]);
            }
        }
    }

    #[test]
    fn identity_projection() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        let id = LinearMap::identity(4);
        assert_eq!(project(&cube, &id).unwrap(), cube);
        assert!(project_is_apn(&cube, &id).unwrap());
        let bad = LinearMap::new(4, 4, vec![1, 1, 2, 4]).unwrap();
        assert_eq!(project(&cube, &bad), Err(Error::NotSurjective));
    }
}
