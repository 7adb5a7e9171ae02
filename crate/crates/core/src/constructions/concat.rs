use serde::Serialize;

use crate::error::{Error, Result};
use crate::vbf::{rank_of_vectors, LinearMap, Vbf};

/// Identification of `F_2^{n-1}` with a hyperplane `H` of `F_2^n` (via a
/// basis of `H`) together with a point `e_0 ∉ H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    n: u32,
    basis: Vec<u32>,
    e0: u32,
}

impl Embedding {
    /// `F_2^{n-1}` as the low `n - 1` coordinates, `e_0` the top unit vector.
    pub fn standard(n: u32) -> Self {
        Embedding {
            n,
            basis: (0..n - 1).map(|i| 1 << i).collect(),
            e0: 1 << (n - 1),
        }
    }

    pub fn new(n: u32, basis: Vec<u32>, e0: u32) -> Result<Self> {
        if basis.len() + 1 != n as usize || basis.iter().chain([&e0]).any(|&v| v >> n != 0) {
            return Err(Error::Dimension("embedding needs n-1 basis vectors in F_2^n".into()));
        }
        if rank_of_vectors(basis.iter().copied().chain([e0])) != n {
            return Err(Error::Dimension("basis and e_0 must span F_2^n".into()));
        }
        Ok(Embedding { n, basis, e0 })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn e0(&self) -> u32 {
        self.e0
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    /// Image of `x ∈ F_2^{n-1}` in `H`.
    pub fn embed(&self, mut x: u32) -> u32 {
        let mut acc = 0;
        while x != 0 {
            acc ^= self.basis[x.trailing_zeros() as usize];
            x &= x - 1;
        }
        acc
    }
}

/// `F(x) = f(x)` and `F(x + e_0) = g(x)` for `x` in the embedded hyperplane.
pub fn concatenate(f: &Vbf, g: &Vbf, embedding: &Embedding) -> Result<Vbf> {
    f.same_shape(g)?;
    if f.n() + 1 != embedding.n() {
        return Err(Error::Dimension(format!(
            "halves have dimension {}, embedding expects {}",
            f.n(),
            embedding.n() - 1
        )));
    }
    let mut table = vec![0u32; 1 << embedding.n()];
    for x in 0..1u32 << f.n() {
        let h = embedding.embed(x);
        table[h as usize] = f.eval(x);
        table[(h ^ embedding.e0()) as usize] = g.eval(x);
    }
    Vbf::from_table(embedding.n(), f.m(), table)
}

/// Why a concatenation fails to be APN.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConcatWitness {
    /// `f` itself is not APN: `f(x+a)+f(x) = f(y+a)+f(y)`.
    FNotApn { a: u32, x: u32, y: u32 },
    /// `g` is not APN.
    GNotApn { a: u32, x: u32, y: u32 },
    /// `f(x+a) + f(x) + g(y+a) + g(y) = 0`.
    Collision { x: u32, y: u32, a: u32 },
}

/// Decides APN-ness of the concatenation of `f` and `g` from the halves:
/// both must be APN and no nonzero `a` may give a common derivative value.
pub fn concat_is_apn(f: &Vbf, g: &Vbf) -> Result<Option<ConcatWitness>> {
    f.same_shape(g)?;
    if let Some((a, x, y)) = f.apn_violation() {
        return Ok(Some(ConcatWitness::FNotApn { a, x, y }));
    }
    if let Some((a, x, y)) = g.apn_violation() {
        return Ok(Some(ConcatWitness::GNotApn { a, x, y }));
    }
    let size = 1u32 << f.n();
    let none = u32::MAX;
    let mut from_f = vec![none; 1 << f.m()];
    let mut touched = Vec::new();
    for a in 1..size {
        for x in 0..size {
            let d = (f.eval(x ^ a) ^ f.eval(x)) as usize;
            if from_f[d] == none {
                from_f[d] = x;
                touched.push(d);
            }
        }
        for y in 0..size {
            let d = (g.eval(y ^ a) ^ g.eval(y)) as usize;
            if from_f[d] != none {
                return Ok(Some(ConcatWitness::Collision { x: from_f[d], y, a }));
            }
        }
        for &d in &touched {
            from_f[d] = none;
        }
        touched.clear();
    }
    Ok(None)
}

/// For quadratic `f` and `g = f + L + c`: the concatenation is APN iff
/// `x ↦ L(x) + B_f(x, A)` is injective for every `A`. Returns the first `A`
/// (in increasing order) whose map has a nontrivial kernel.
pub fn quadratic_concat_criterion(f: &Vbf, l: &LinearMap) -> Result<Option<u32>> {
    if l.n_in() != f.n() || l.n_out() != f.m() {
        return Err(Error::Dimension("L must map F_2^{n-1} to F_2^m".into()));
    }
    if !f.is_quadratic() {
        return Err(Error::NotQuadratic);
    }
    let size = 1u32 << f.n();
    let lt = l.table();
    Ok((0..size).find(|&a| (1..size).any(|x| lt[x as usize] == f.bform(x, a))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn self_concatenation_collides() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        match concat_is_apn(&cube, &cube).unwrap() {
            Some(ConcatWitness::Collision { x, y, a }) => {
                assert_eq!(cube.eval(x ^ a) ^ cube.eval(x), cube.eval(y ^ a) ^ cube.eval(y));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(!concatenate(&cube, &cube, &Embedding::standard(5)).unwrap().is_apn());
    }

    #[test]
    fn restriction_of_apn_is_concatenation() {
        // Any APN function on F_2^5 splits into two halves satisfying the criterion.
        let f = Field::preset(5).unwrap();
        let cube = Vbf::power(&f, 3);
        let lo = Vbf::from_fn(4, 5, |x| cube.eval(x));
        let hi = Vbf::from_fn(4, 5, |x| cube.eval(x | 16));
        assert_eq!(concat_is_apn(&lo, &hi).unwrap(), None);
        assert_eq!(concatenate(&lo, &hi, &Embedding::standard(5)).unwrap(), cube);
        // quadratic form: hi = lo + L + c with L(x) = B_F(x, e0)
        let l = LinearMap::from_linear_fn(4, 5, |x| cube.bform(x, 16)).unwrap();
        let c = cube.eval(16) ^ cube.eval(0);
        for x in 0..16 {
            assert_eq!(hi.eval(x), lo.eval(x) ^ l.eval(x) ^ c);
        }
        assert_eq!(quadratic_concat_criterion(&lo, &l).unwrap(), None);
    }

    #[test]
    fn zero_l_fails_at_zero() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3).widen(5).unwrap();
        assert_eq!(quadratic_concat_criterion(&cube, &LinearMap::zero(4, 5)).unwrap(), Some(0));
        let inv = Vbf::inverse(&f);
        assert_eq!(
            quadratic_concat_criterion(&inv, &LinearMap::zero(4, 4)),
            Err(Error::NotQuadratic)
        );
    }

    #[test]
    fn custom_embedding() {
        let e = Embedding::new(3, vec![0b011, 0b110], 0b001).unwrap();
        let f = Vbf::from_table(2, 3, vec![0, 1, 2, 4]).unwrap();
        let g = Vbf::from_table(2, 3, vec![3, 5, 6, 7]).unwrap();
        let c = concatenate(&f, &g, &e).unwrap();
        for x in 0..4 {
            assert_eq!(c.eval(e.embed(x)), f.eval(x));
            assert_eq!(c.eval(e.embed(x) ^ 1), g.eval(x));
        }
        assert!(Embedding::new(3, vec![0b011, 0b110], 0b101).is_err());
    }
}
