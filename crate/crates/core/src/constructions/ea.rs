use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::vbf::{low_mask, AffineMap, LinearMap, Vbf};

/// `x ↦ A_1(F(A_2(x))) + A_3(x)`.
pub fn ea_transform(f: &Vbf, a1: &AffineMap, a2: &AffineMap, a3: &AffineMap) -> Result<Vbf> {
    let (n, m) = (f.n(), f.m());
    let shape = |a: &AffineMap, i, o| a.linear.n_in() == i && a.linear.n_out() == o;
    if !shape(a1, m, m) || !shape(a2, n, n) || !shape(a3, n, m) {
        return Err(Error::Dimension("affine maps do not fit the function".into()));
    }
    if !a1.is_invertible() || !a2.is_invertible() {
        return Err(Error::NotInvertible);
    }
    Ok(Vbf::from_fn(n, m, |x| a1.eval(f.eval(a2.eval(x))) ^ a3.eval(x)))
}

/// Uniform affine map `F_2^{n_in} → F_2^{n_out}`.
pub fn random_affine(n_in: u32, n_out: u32, rng: &mut SplitMix64) -> AffineMap {
    let columns = (0..n_in).map(|_| rng.bits(n_out) as u32 & low_mask(n_out)).collect();
    let constant = rng.bits(n_out) as u32;
    AffineMap::new(LinearMap::new(n_in, n_out, columns).expect("columns are masked"), constant)
        .expect("constant is masked")
}

/// Uniform affine bijection of `F_2^n` (rejection sampling on the linear part).
pub fn random_affine_bijection(n: u32, rng: &mut SplitMix64) -> AffineMap {
    loop {
        let a = random_affine(n, n, rng);
        if a.is_invertible() {
            return a;
        }
    }
}
