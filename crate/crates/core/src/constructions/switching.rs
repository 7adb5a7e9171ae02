use serde::Serialize;

use crate::error::{Error, Result};
use crate::vbf::Vbf;

/// An `(n, m+1)`-function split as `x ↦ (f(x), g(x))` with a switching
/// direction `u ∈ F_2^m \ {0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchSpec {
    f: Vbf,
    g: Vbf,
    u: u32,
}

impl SwitchSpec {
    pub fn new(f: Vbf, g: Vbf, u: u32) -> Result<Self> {
        if g.m() != 1 || g.n() != f.n() {
            return Err(Error::Dimension("g must be a Boolean function on the domain of f".into()));
        }
        if u == 0 || u >> f.m() != 0 {
            return Err(Error::ValueRange {
                index: 0,
                value: u,
                bits: f.m(),
            });
        }
        Ok(SwitchSpec { f, g, u })
    }

    /// Splits the top output bit of `combined` off as `g`.
    pub fn from_combined(combined: &Vbf, u: u32) -> Result<Self> {
        let (f, g) = combined.split_top_bit()?;
        Self::new(f, g, u)
    }

    pub fn f(&self) -> &Vbf {
        &self.f
    }

    pub fn g(&self) -> &Vbf {
        &self.g
    }

    pub fn u(&self) -> u32 {
        self.u
    }

    pub fn combined(&self) -> Vbf {
        self.f.with_extra_bit(&self.g).expect("validated at construction")
    }
}

/// Result of [`switch`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchOutcome {
    /// `f + u·g`.
    pub function: Vbf,
    /// Whether every quadruple with `f`-sum `u` has `g`-sum 0.
    pub certificate: bool,
    /// First `(x, y, t)` with `f`-sum `u` and `g`-sum 1.
    pub witness: Option<(u32, u32, u32)>,
}

#[inline]
fn quad_sum(f: &Vbf, x: u32, y: u32, t: u32) -> u32 {
    f.eval(x ^ t) ^ f.eval(x) ^ f.eval(y ^ t) ^ f.eval(y)
}

/// Iterates `(x, y, t)` with `t ≠ 0`, `x < y`, `y ≠ x + t`: `t` outermost.
fn nondegenerate_triples(n: u32) -> impl Iterator<Item = (u32, u32, u32)> {
    let size = 1u32 << n;
    (1..size).flat_map(move |t| {
        (0..size).flat_map(move |x| (x + 1..size).filter(move |&y| y != x ^ t).map(move |y| (x, y, t)))
    })
}

/// Switching `f ↦ f + u·g`, certified by the four-point criterion on the
/// APN function `(f, g)`.
pub fn switch(spec: &SwitchSpec) -> Result<SwitchOutcome> {
    if !spec.combined().is_apn() {
        return Err(Error::NotApn);
    }
    let (f, g, u) = (&spec.f, &spec.g, spec.u);
    let witness = nondegenerate_triples(f.n()).find(|&(x, y, t)| quad_sum(f, x, y, t) == u && quad_sum(g, x, y, t) == 1);
    let function = Vbf::from_fn(f.n(), f.m(), |x| f.eval(x) ^ if g.eval(x) == 1 { u } else { 0 });
    Ok(SwitchOutcome {
        function,
        certificate: witness.is_none(),
        witness,
    })
}

/// `f = f_1 + u·g` with `f_1` differentially 4-uniform.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    #[serde(skip)]
    pub f1: Vbf,
    #[serde(skip)]
    pub g: Vbf,
    pub u: u32,
    /// Quadruple `(x, y, t)` exhibiting `(u, 1) ∈ D^*_{(f,g)}`.
    pub quadruple: (u32, u32, u32),
    /// Differential uniformity of `f_1`.
    pub uniformity: u32,
}

/// Writes an APN `f` as `f_1 + u·g` with `f_1` differentially 4-uniform.
///
/// With `g` given, `u` is read off the first quadruple (in `t`-outer, `x < y`
/// order) whose `g`-sum is 1. Without `g`, the component functions
/// `x ↦ c·f(x)` are tried for `c = 1, 2, …`.
pub fn decompose_to_4uniform(f: &Vbf, g: Option<&Vbf>) -> Result<Decomposition> {
    if !f.is_apn() {
        return Err(Error::NotApn);
    }
    match g {
        Some(g) => decompose_with(f, g),
        None => (1..1u32 << f.m())
            .map(|c| decompose_with(f, &f.component(c)))
            .find(|r| r.is_ok())
            .unwrap_or(Err(Error::DegenerateBoolean)),
    }
}

fn decompose_with(f: &Vbf, g: &Vbf) -> Result<Decomposition> {
    if g.m() != 1 || g.n() != f.n() {
        return Err(Error::Dimension("g must be a Boolean function on the domain of f".into()));
    }
    let (x, y, t) = nondegenerate_triples(f.n())
        .find(|&(x, y, t)| quad_sum(g, x, y, t) == 1)
        .ok_or(Error::DegenerateBoolean)?;
    let u = quad_sum(f, x, y, t);
    debug_assert_ne!(u, 0, "APN functions have no vanishing four-point sums");
    let f1 = Vbf::from_fn(f.n(), f.m(), |v| f.eval(v) ^ if g.eval(v) == 1 { u } else { 0 });
    let uniformity = f1.differential_uniformity();
    Ok(Decomposition {
        f1,
        g: g.clone(),
        u,
        quadruple: (x, y, t),
        uniformity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    #[test]
    fn zero_switch_is_identity() {
        let f = Field::preset(5).unwrap();
        let cube = Vbf::power(&f, 3);
        let g = Vbf::from_fn(5, 1, |_| 0);
        let out = switch(&SwitchSpec::new(cube.clone(), g, 7).unwrap()).unwrap();
        assert_eq!(out.function, cube);
        assert_eq!(out.certificate, cube.is_apn());
    }

    #[test]
    fn rejects_non_apn_base() {
        let f = Field::preset(4).unwrap();
        let inv = Vbf::inverse(&f);
        let g = Vbf::from_fn(4, 1, |_| 0);
        assert_eq!(switch(&SwitchSpec::new(inv, g, 1).unwrap()), Err(Error::NotApn));
    }

    #[test]
    fn decomposition_round_trip() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        // g = Tr(x^3)
        let g = Vbf::from_fn(4, 1, |x| f.trace(f.pow(x, 3)));
        let d = decompose_to_4uniform(&cube, Some(&g)).unwrap();
        assert_eq!(d.uniformity, 4);
        assert_eq!(d.f1.ddt().uniformity, 4);
        let back = Vbf::from_fn(4, 4, |x| d.f1.eval(x) ^ if g.eval(x) == 1 { d.u } else { 0 });
        assert_eq!(back, cube);
        // (u, 1) lies in D* of the lift (f, g)
        let lift = cube.with_extra_bit(&g).unwrap();
        assert!(lift.dstar_set().contains(&(d.u | 1 << 4)));
    }

    #[test]
    fn linear_g_is_degenerate() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        let tr = Vbf::from_fn(4, 1, |x| f.trace(x));
        assert_eq!(decompose_to_4uniform(&cube, Some(&tr)), Err(Error::DegenerateBoolean));
    }

    #[test]
    fn switching_back_recovers_original() {
        let f = Field::preset(5).unwrap();
        let cube = Vbf::power(&f, 3);
        let d = decompose_to_4uniform(&cube, None).unwrap();
        let spec = SwitchSpec::new(d.f1.clone(), d.g.clone(), d.u).unwrap();
        let out = switch(&spec).unwrap();
        assert_eq!(out.function, cube);
        assert!(out.certificate);
    }
}
