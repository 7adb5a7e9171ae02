use crate::error::{Error, Result};
use crate::field::Field;
use crate::vbf::Vbf;

fn require_even(field: &Field) -> Result<()> {
    let n = field.degree();
    if n % 2 != 0 {
        return Err(Error::OddDegree(n));
    }
    Ok(())
}

/// Roots of `x^{-1} + (x + a)^{-1} = b` (with `0^{-1} = 0`) by scanning the
/// field.
pub fn nyberg_roots_direct(field: &Field, a: u32, b: u32) -> Vec<u32> {
    field
        .elements()
        .filter(|&x| field.inv_or_zero(x) ^ field.inv_or_zero(x ^ a) == b)
        .collect()
}

/// Number of roots of `x^{-1} + (x + a)^{-1} = b` predicted by trace tests:
/// 4 when `ab = 1`, otherwise 2 or 0 as `Tr(1/(ab))` is 0 or 1. The
/// equation with `b = 0` has no roots (`x` and `x + a` have distinct
/// inverses); that case is settled by direct count.
pub fn nyberg_root_count(field: &Field, a: u32, b: u32) -> Result<u32> {
    require_even(field)?;
    if field.degree() < 4 {
        return Err(Error::UnsupportedDegree(field.degree()));
    }
    if a == 0 {
        return Err(Error::ZeroInverse);
    }
    if b == 0 {
        return Ok(nyberg_roots_direct(field, a, 0).len() as u32);
    }
    let ab = field.mul(a, b);
    if ab == 1 {
        return Ok(4);
    }
    Ok(if field.trace(field.inv(ab)?) == 0 { 2 } else { 0 })
}

/// The four roots `{0, a, ωa, ω²a}` for `b = a^{-1}`.
pub fn nyberg_four_roots(field: &Field, a: u32) -> Result<[u32; 4]> {
    let [_, w, w2] = field.cube_roots_of_unity()?;
    Ok([0, a, field.mul(w, a), field.mul(w2, a)])
}

/// `(x^{2^n-2}, g)` as an APN `(n, n+1)`-function.
///
/// `g` must have odd sum on every orbit `{a, ωa, ω²a}` of `F^×` under
/// multiplication by `ω`, and `g(0) = 0`. The orbits are indexed by a
/// transversal `T`: the cubes when they form one (`n ≢ 0 mod 6`), otherwise
/// `{g^j : j < (2^n-1)/3}`. `g` is 1 exactly on `ω²T`.
pub fn inverse_extension(field: &Field) -> Result<Vbf> {
    require_even(field)?;
    let n = field.degree();
    if n <= 2 {
        return Err(Error::UnsupportedDegree(n));
    }
    let third = (field.order() / 3) as u64;
    let [_, w, w2] = field.cube_roots_of_unity()?;
    let mut g = vec![0u32; field.size()];
    // ω is a cube iff 3 divides (2^n - 1)/3
    if third % 3 != 0 {
        for x in 1..field.size() as u32 {
            if field.pow(x, third) == 1 {
                // x ∈ A = cubes
                g[field.mul(w2, x) as usize] = 1;
            }
        }
    } else {
        for j in 0..third {
            g[field.mul(w2, field.gen_pow(j)) as usize] = 1;
        }
    }
    debug_assert!((1..field.size() as u32)
        .all(|a| g[a as usize] ^ g[field.mul(w, a) as usize] ^ g[field.mul(w2, a) as usize] == 1));
    let inv = Vbf::inverse(field);
    inv.with_extra_bit(&Vbf::from_table(n, 1, g)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prediction_matches_scan() {
        for n in [4, 6] {
            let f = Field::preset(n).unwrap();
            for a in 1..f.size() as u32 {
                for b in f.elements() {
                    let direct = nyberg_roots_direct(&f, a, b).len() as u32;
                    assert_eq!(nyberg_root_count(&f, a, b).unwrap(), direct, "a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn four_roots() {
        let f = Field::preset(6).unwrap();
        for a in 1..64 {
            let b = f.inv(a).unwrap();
            let mut expect = nyberg_four_roots(&f, a).unwrap().to_vec();
            expect.sort();
            assert_eq!(nyberg_roots_direct(&f, a, b), expect);
        }
    }

    #[test]
    fn errors() {
        let f5 = Field::preset(5).unwrap();
        assert_eq!(nyberg_root_count(&f5, 1, 1), Err(Error::OddDegree(5)));
        assert_eq!(inverse_extension(&f5), Err(Error::OddDegree(5)));
        let f4 = Field::preset(4).unwrap();
        assert_eq!(nyberg_root_count(&f4, 0, 1), Err(Error::ZeroInverse));
    }

    #[test]
    fn inverse_extension_is_apn() {
        for n in [4, 6, 8] {
            let f = Field::preset(n).unwrap();
            let ext = inverse_extension(&f).unwrap();
            assert_eq!(ext.m(), n + 1);
            assert!(ext.is_apn());
            let (_, g) = ext.split_top_bit().unwrap();
            let [_, w, w2] = f.cube_roots_of_unity().unwrap();
            assert_eq!(g.eval(0), 0);
            for a in 1..f.size() as u32 {
                assert_eq!(g.eval(0) ^ g.eval(a) ^ g.eval(f.mul(w, a)) ^ g.eval(f.mul(w2, a)), 1);
            }
        }
    }
}
