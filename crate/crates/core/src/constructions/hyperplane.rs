//! Modifying a quadratic APN function by a linear map on a hyperplane:
//! `G(x) = F(x) + Tr(x) L(x)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, MODULUS_6};
use crate::vbf::{AffineMap, LinearMap, Vbf};

/// The hyperplane `{x : a·x = β}` of `F_2^n`, `a ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HyperplaneSpec {
    pub n: u32,
    pub functional: u32,
    pub shift: u32,
}

impl HyperplaneSpec {
    pub fn new(n: u32, functional: u32, shift: u32) -> Result<Self> {
        if functional == 0 || functional >> n != 0 || shift > 1 {
            return Err(Error::Dimension(format!(
                "hyperplane functional {functional:#x}, shift {shift} in dimension {n}"
            )));
        }
        Ok(HyperplaneSpec { n, functional, shift })
    }

    /// `T_0 = {x : Tr(x) = 0}`.
    pub fn trace_zero(field: &Field) -> Self {
        HyperplaneSpec {
            n: field.degree(),
            functional: field.trace_mask(),
            shift: 0,
        }
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        (x & self.functional).count_ones() & 1 == self.shift
    }

    pub fn members(&self) -> Vec<u32> {
        (0..1u32 << self.n).filter(|&x| self.contains(x)).collect()
    }

    /// Basis of the linear hyperplane `{x : a·x = 0}`.
    pub fn linear_basis(&self) -> Vec<u32> {
        hyperplane_basis(self.n, self.functional).1
    }
}

/// Basis of `ker(x ↦ a·x)`: with `j` the lowest index where `a` has a one,
/// the unit vectors `e_k` (`k ≠ j`) with `a_k = 0`, and `e_k + e_j` where
/// `a_k = 1`. Returns `(j, basis)`.
pub fn hyperplane_basis(n: u32, functional: u32) -> (u32, Vec<u32>) {
    let j = functional.trailing_zeros();
    let basis = (0..n)
        .filter(|&k| k != j)
        .map(|k| if functional >> k & 1 == 1 { 1 << k | 1 << j } else { 1 << k })
        .collect();
    (j, basis)
}

/// `Σ c_i b_i` over the set bits of `c`.
pub(crate) fn combination(basis: &[u32], mut c: u32) -> u32 {
    let mut acc = 0;
    while c != 0 {
        acc ^= basis[c.trailing_zeros() as usize];
        c &= c - 1;
    }
    acc
}

/// Canonical basis of `T_0`: pairwise sums of trace-one basis vectors with
/// the lowest trace-one unit vector, plus the trace-zero unit vectors.
pub fn trace_zero_basis(field: &Field) -> Vec<u32> {
    hyperplane_basis(field.degree(), field.trace_mask()).1
}

fn check_endomorphism(field: &Field, f: &Vbf, l: &LinearMap) -> Result<()> {
    let n = field.degree();
    if f.n() != n || f.m() != n || l.n_in() != n || l.n_out() != n {
        return Err(Error::Dimension("F and L must be maps of the field".into()));
    }
    Ok(())
}

/// `G(x) = F(x) + Tr(x) L(x)`.
pub fn hyperplane_modify(field: &Field, f: &Vbf, l: &LinearMap) -> Result<Vbf> {
    check_endomorphism(field, f, l)?;
    let lt = l.table();
    Ok(Vbf::from_fn(f.n(), f.m(), |x| {
        f.eval(x) ^ if field.trace(x) == 1 { lt[x as usize] } else { 0 }
    }))
}

/// Kernel test for `G = F + Tr·L` with `F` quadratic APN, with the parts
/// independent of `L` precomputed.
///
/// For `x ∈ T_0 \ {0}` the set `{B_F(x, w) : Tr(w) = 1}` is stored; `L`
/// passes iff `L(x)` avoids it for every such `x`.
#[derive(Clone, Debug)]
pub struct TrLChecker {
    e0: u32,
    t0_nonzero: Vec<u32>,
    words: usize,
    forbidden: Vec<u64>,
}

impl TrLChecker {
    pub fn new(field: &Field, f: &Vbf, e0: u32) -> Result<Self> {
        let n = field.degree();
        if f.n() != n || f.m() != n {
            return Err(Error::Dimension("F must be a map of the field".into()));
        }
        if field.trace(e0) != 1 {
            return Err(Error::TraceNotOne(e0));
        }
        if !f.is_quadratic() {
            return Err(Error::NotQuadratic);
        }
        if !f.is_apn() {
            return Err(Error::NotApn);
        }
        let basis = trace_zero_basis(field);
        let t0_nonzero: Vec<u32> = (1..1u32 << (n - 1)).map(|c| combination(&basis, c)).collect();
        let words = (1usize << n).div_ceil(64);
        let mut forbidden = vec![0u64; t0_nonzero.len() * words];
        for (i, &x) in t0_nonzero.iter().enumerate() {
            let row = &mut forbidden[i * words..(i + 1) * words];
            for w in (0..1u32 << n).filter(|&w| field.trace(w) == 1) {
                let v = f.bform(x, w) as usize;
                row[v / 64] |= 1 << (v % 64);
            }
        }
        Ok(TrLChecker {
            e0,
            t0_nonzero,
            words,
            forbidden,
        })
    }

    pub fn e0(&self) -> u32 {
        self.e0
    }

    /// Nonzero elements of `T_0`: entry `c - 1` is the combination of
    /// [`trace_zero_basis`] selected by the bits of `c`.
    pub fn t0_nonzero(&self) -> &[u32] {
        &self.t0_nonzero
    }

    /// Checks the `L` with the given images of [`trace_zero_basis`]. The
    /// values on `T_0` are built incrementally in `scratch` and the scan
    /// stops at the first forbidden value.
    pub fn passes_images(&self, images: &[u32], scratch: &mut Vec<u32>) -> bool {
        let len = self.t0_nonzero.len() + 1;
        scratch.clear();
        scratch.resize(len, 0);
        for c in 1..len {
            let v = scratch[c & (c - 1)] ^ images[c.trailing_zeros() as usize];
            if self.is_forbidden(c - 1, v) {
                return false;
            }
            scratch[c] = v;
        }
        true
    }

    #[inline]
    fn is_forbidden(&self, index: usize, value: u32) -> bool {
        let v = value as usize;
        self.forbidden[index * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn passes(&self, l: &LinearMap) -> bool {
        self.first_failure(l).is_none()
    }

    /// First `x ∈ T_0 \ {0}` with `L(x) ∈ {B_F(x, w) : Tr(w) = 1}`.
    pub fn first_failure(&self, l: &LinearMap) -> Option<u32> {
        self.t0_nonzero
            .iter()
            .enumerate()
            .find(|&(i, &x)| self.is_forbidden(i, l.eval(x)))
            .map(|(_, &x)| x)
    }
}

/// Outcome of the kernel criterion for `F + Tr·L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrLWitness {
    /// `a ∈ T_0` whose map `L_a` is not injective.
    pub a: u32,
    /// Nonzero `x ∈ T_0` with `L(x) + B_F(x, a + e_0) = 0`.
    pub x: u32,
}

/// `G = F + Tr·L` (quadratic APN `F`, linear `L`) is APN iff for all
/// `a ∈ T_0` the map `T_0 ∋ x ↦ L(x) + B_F(x, a + e_0)` has trivial kernel.
/// Returns `None` when the criterion holds, else a witness.
pub fn tr_l_criterion(field: &Field, f: &Vbf, l: &LinearMap, e0: u32) -> Result<Option<TrLWitness>> {
    check_endomorphism(field, f, l)?;
    let checker = TrLChecker::new(field, f, e0)?;
    Ok(checker.first_failure(l).map(|x| {
        let lx = l.eval(x);
        let a = (0..1u32 << field.degree())
            .filter(|&a| field.trace(a) == 0)
            .find(|&a| f.bform(x, a ^ e0) == lx)
            .expect("x was flagged by the forbidden set");
        TrLWitness { a, x }
    }))
}

/// The two character sums of the exponential-sum criterion for
/// `x^3 + Tr(x) L(x)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpSum {
    /// `Σ_{x ∉ {0,1}} (-1)^{Tr(x² L(x²+x) / (x²+x)³)}`
    pub first: i64,
    /// `Σ_{x ∉ {0,1}} (-1)^{Tr(L(x²+x) / (x²+x)³)}`, always even.
    pub second: i64,
    /// `first - second / 2`.
    pub lhs: i64,
    /// `lhs == 2^{n-1} - 1`.
    pub holds: bool,
}

/// Evaluates the exponential-sum condition for `G(x) = x^3 + Tr(x) L(x)`
/// exactly in integers.
pub fn exp_sum_condition(field: &Field, l: &LinearMap) -> Result<ExpSum> {
    let n = field.degree();
    if l.n_in() != n || l.n_out() != n {
        return Err(Error::Dimension("L must be a map of the field".into()));
    }
    let lt = l.table();
    let (mut first, mut second) = (0i64, 0i64);
    for x in 2..1u32 << n {
        let y = field.square(x) ^ x;
        let ly_over = field.mul(lt[y as usize], field.inv(field.pow(y, 3))?);
        let sign = |t: u32| if t == 0 { 1 } else { -1 };
        first += sign(field.trace(field.mul(field.square(x), ly_over)));
        second += sign(field.trace(ly_over));
    }
    assert!(second % 2 == 0, "x ↦ x² + x is two-to-one, so the second sum is even");
    let lhs = first - second / 2;
    Ok(ExpSum {
        first,
        second,
        lhs,
        holds: lhs == (1i64 << (n - 1)) - 1,
    })
}

/// If `G = F` on `h` and `G = F + A` off `h` for an affine `A`, returns such
/// an `A`. The linear part is fitted on a basis of the complement coset and
/// normalized to vanish on the lowest unit vector outside `ker(a)`.
pub fn h_equivalence_witness(f: &Vbf, g: &Vbf, h: &HyperplaneSpec) -> Result<Option<AffineMap>> {
    f.same_shape(g)?;
    if f.n() != h.n {
        return Err(Error::Dimension("hyperplane lives in another space".into()));
    }
    let d = |x: u32| f.eval(x) ^ g.eval(x);
    let size = 1u32 << h.n;
    if (0..size).any(|x| h.contains(x) && d(x) != 0) {
        return Ok(None);
    }
    let p = (0..size).find(|&x| !h.contains(x)).expect("hyperplanes are proper");
    let (j, basis) = hyperplane_basis(h.n, h.functional);
    let mut columns = vec![0u32; h.n as usize];
    for (k, &b) in (0..h.n).filter(|&k| k != j).zip(&basis) {
        columns[k as usize] = d(p ^ b) ^ d(p);
    }
    let linear = LinearMap::new(h.n, f.m(), columns)?;
    let constant = d(p) ^ linear.eval(p);
    let affine = AffineMap::new(linear, constant)?;
    Ok((0..size)
        .filter(|&x| !h.contains(x))
        .all(|x| affine.eval(x) == d(x))
        .then_some(affine))
}

/// Exponents `k` of the coefficients `α^k` of `x^{2^i}` (`None` = zero
/// coefficient) for the thirteen maps `L_1 … L_13` over the `n = 6` preset.
pub const TABLE1_EXPONENTS: [[Option<u32>; 6]; 13] = [
    [None, None, None, None, None, None],
    [Some(42), Some(3), Some(34), Some(59), Some(59), Some(12)],
    [Some(18), Some(60), Some(17), Some(4), Some(17), Some(4)],
    [Some(18), Some(60), Some(57), Some(7), Some(32), Some(62)],
    [Some(42), Some(1), Some(29), Some(55), Some(9), Some(56)],
    [Some(42), Some(21), None, Some(4), Some(48), Some(16)],
    [Some(42), Some(19), Some(51), Some(59), Some(26), Some(38)],
    [Some(42), Some(19), Some(60), Some(11), Some(25), Some(13)],
    [Some(42), Some(21), Some(22), Some(31), Some(15), Some(61)],
    [Some(42), Some(47), Some(35), Some(54), Some(23), Some(27)],
    [Some(42), Some(21), Some(23), Some(32), Some(14), Some(51)],
    [Some(42), Some(21), Some(4), Some(56), Some(17), Some(20)],
    [Some(42), Some(21), None, Some(27), Some(34), Some(52)],
];

/// The maps `L_1 … L_13` whose modifications `x^3 + Tr(x) L_i(x)` cover
/// every EA-class of quadratic APN functions on `GF(2^6)`.
pub fn table1_maps(field: &Field) -> Result<Vec<LinearMap>> {
    if field.degree() != 6 || field.modulus() != MODULUS_6 || field.generator() != 2 {
        return Err(Error::WrongPreset(format!(
            "expected GF(2^6) with modulus {MODULUS_6:#x} and generator α, got {field:?}"
        )));
    }
    TABLE1_EXPONENTS
        .iter()
        .map(|row| {
            let coeffs: Vec<u32> = row.iter().map(|e| e.map_or(0, |k| field.gen_pow(k as u64))).collect();
            LinearMap::from_linearized(field, &coeffs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t0_basis_spans_trace_zero() {
        for n in 3..=8 {
            let f = Field::preset(n).unwrap();
            let basis = trace_zero_basis(&f);
            assert_eq!(basis.len(), n as usize - 1);
            assert!(basis.iter().all(|&b| f.trace(b) == 0));
            assert_eq!(crate::vbf::rank_of_vectors(basis.iter().copied()), n - 1);
        }
    }

    #[test]
    fn zero_modification() {
        let f = Field::preset(6).unwrap();
        let cube = Vbf::power(&f, 3);
        let zero = LinearMap::zero(6, 6);
        assert_eq!(hyperplane_modify(&f, &cube, &zero).unwrap(), cube);
        let e0 = f.trace_one_element();
        assert_eq!(tr_l_criterion(&f, &cube, &zero, e0).unwrap(), None);
        let s = exp_sum_condition(&f, &zero).unwrap();
        assert_eq!((s.first, s.second, s.lhs), (62, 62, 31));
        assert!(s.holds);
    }

    #[test]
    fn modification_keeps_t0() {
        let f = Field::preset(6).unwrap();
        let cube = Vbf::power(&f, 3);
        let maps = table1_maps(&f).unwrap();
        let g = hyperplane_modify(&f, &cube, &maps[1]).unwrap();
        for x in f.elements().filter(|&x| f.trace(x) == 0) {
            assert_eq!(g.eval(x), cube.eval(x));
        }
    }

    #[test]
    fn table1_shape() {
        let f = Field::preset(6).unwrap();
        let maps = table1_maps(&f).unwrap();
        assert_eq!(maps.len(), 13);
        assert!(maps[0].is_zero());
        assert_eq!(maps[5].coefficients().unwrap()[2], 0);
        assert_eq!(maps[1].coefficients().unwrap()[0], f.gen_pow(42));
        assert!(table1_maps(&Field::new(6, 0x43).unwrap()).is_err());
    }

    #[test]
    fn criterion_preconditions() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        let zero = LinearMap::zero(4, 4);
        let t0 = (0..16).find(|&x| x != 0 && f.trace(x) == 0).unwrap();
        assert_eq!(tr_l_criterion(&f, &cube, &zero, t0), Err(Error::TraceNotOne(t0)));
        let e0 = f.trace_one_element();
        assert_eq!(tr_l_criterion(&f, &Vbf::inverse(&f), &zero, e0), Err(Error::NotQuadratic));
        let x5 = Vbf::power(&f, 5);
        assert_eq!(tr_l_criterion(&f, &x5, &zero, e0), Err(Error::NotApn));
    }

    #[test]
    fn witness_is_a_kernel_vector() {
        let f = Field::preset(5).unwrap();
        let cube = Vbf::power(&f, 3);
        let e0 = f.trace_one_element();
        // L(x) = B_F(x, e0) on T_0, zero on e0 direction: L_0 has kernel T_0.
        let basis = trace_zero_basis(&f);
        let (j, _) = hyperplane_basis(5, f.trace_mask());
        let mut cols = vec![0u32; 5];
        for (k, &b) in (0..5).filter(|&k| k != j).zip(&basis) {
            cols[k as usize] = cube.bform(b, e0);
        }
        let l = LinearMap::new(5, 5, cols).unwrap();
        let w = tr_l_criterion(&f, &cube, &l, e0).unwrap().unwrap();
        assert_eq!(f.trace(w.a), 0);
        assert_ne!(w.x, 0);
        assert_eq!(l.eval(w.x) ^ cube.bform(w.x, w.a ^ e0), 0);
        assert!(!hyperplane_modify(&f, &cube, &l).unwrap().is_apn());
    }

    #[test]
    fn image_check_agrees_with_map_check() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        let e0 = f.trace_one_element();
        let checker = TrLChecker::new(&f, &cube, e0).unwrap();
        let basis = trace_zero_basis(&f);
        let mut scratch = Vec::new();
        for idx in 0u32..1 << 12 {
            let images: Vec<u32> = (0..3).map(|i| idx >> (4 * i) & 15).collect();
            let mut cols = [0u32; 4];
            // basis vectors are e_k or e_k + e_j; with L(e_j) = 0 the images are the columns
            let (j, _) = hyperplane_basis(4, f.trace_mask());
            for (k, &img) in (0..4).filter(|&k| k != j).zip(&images) {
                cols[k as usize] = img;
            }
            let l = LinearMap::new(4, 4, cols.to_vec()).unwrap();
            assert!(basis.iter().zip(&images).all(|(&b, &img)| l.eval(b) == img));
            assert_eq!(checker.passes_images(&images, &mut scratch), checker.passes(&l));
        }
    }

    #[test]
    fn h_equivalence() {
        let f = Field::preset(5).unwrap();
        let cube = Vbf::power(&f, 3);
        let h = HyperplaneSpec::trace_zero(&f);
        let id = h_equivalence_witness(&cube, &cube, &h).unwrap().unwrap();
        assert!(id.linear.is_zero());
        assert_eq!(id.constant, 0);
        let l = LinearMap::from_linearized(&f, &[3, 9, 0, 1, 0]).unwrap();
        let g = hyperplane_modify(&f, &cube, &l).unwrap();
        let w = h_equivalence_witness(&cube, &g, &h).unwrap().unwrap();
        for x in f.elements().filter(|&x| f.trace(x) == 1) {
            assert_eq!(w.eval(x), l.eval(x));
        }
        // a cubic perturbation off the hyperplane is not affine there
        let bumped = Vbf::from_fn(5, 5, |x| g.eval(x) ^ if f.trace(x) == 1 { f.pow(x, 7) } else { 0 });
        assert_eq!(h_equivalence_witness(&cube, &bumped, &h).unwrap(), None);
        // touching the hyperplane itself breaks the definition
        let touched = Vbf::from_fn(5, 5, |x| cube.eval(x) ^ u32::from(x == 0));
        assert_eq!(h_equivalence_witness(&cube, &touched, &h).unwrap(), None);
    }

    #[test]
    fn affine_hyperplane_witness() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        let h = HyperplaneSpec::new(4, 0b0110, 1).unwrap();
        let a = AffineMap::new(LinearMap::new(4, 4, vec![3, 0, 5, 9]).unwrap(), 6).unwrap();
        let g = Vbf::from_fn(4, 4, |x| cube.eval(x) ^ if h.contains(x) { 0 } else { a.eval(x) });
        let w = h_equivalence_witness(&cube, &g, &h).unwrap().unwrap();
        for x in (0..16).filter(|&x| !h.contains(x)) {
            assert_eq!(w.eval(x), a.eval(x));
        }
        assert_eq!(h.members().len(), 8);
    }
}
