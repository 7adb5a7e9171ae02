use apnkit::constructions::*;
use apnkit::format::{parse_vbf1, write_vbf1};
use apnkit::invariants::{classical_spectrum, gamma_rank};
use apnkit::rng::SplitMix64;
use apnkit::{AffineMap, Field, LinearMap, Vbf};
use proptest::prelude::*;

fn field(n: u32) -> Field {
    Field::preset(n).unwrap()
}

fn arb_table(n: u32, m: u32) -> impl Strategy<Value = Vbf> {
    prop::collection::vec(0u32..1 << m, 1 << n).prop_map(move |t| Vbf::from_table(n, m, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(n in 2u32..=10, a: u32, b: u32, c: u32) {
        let f = field(n);
        let mask = (1u32 << n) - 1;
        let (a, b, c) = (a & mask, b & mask, c & mask);
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
        prop_assert_eq!(f.mul(a, b), f.mul_direct(a, b));
        prop_assert_eq!(f.trace(a ^ b), f.trace(a) ^ f.trace(b));
        prop_assert_eq!(f.trace(f.square(a)), f.trace(a));
        prop_assert_eq!(f.square(a ^ b), f.square(a) ^ f.square(b));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            prop_assert_eq!(f.pow(a, f.order() as u64), 1);
        }
    }

    #[test]
    fn linearized_maps_are_linear(coeffs in prop::collection::vec(0u32..64, 6), x in 0u32..64, y in 0u32..64) {
        let f = field(6);
        let l = LinearMap::from_linearized(&f, &coeffs).unwrap();
        prop_assert_eq!(l.eval(x ^ y), l.eval(x) ^ l.eval(y));
        let direct = coeffs.iter().enumerate().fold(0, |acc, (i, &c)| acc ^ f.mul(c, f.pow(x, 1 << i)));
        prop_assert_eq!(l.eval(x), direct);
        prop_assert_eq!(l.linearized_coefficients(&f).unwrap(), coeffs);
    }

    #[test]
    fn uniformity_and_apn_agree(t in arb_table(4, 4)) {
        let p = t.ddt();
        prop_assert_eq!(p.uniformity, t.differential_uniformity());
        prop_assert_eq!(t.is_apn(), p.uniformity == 2);
        match t.apn_violation() {
            Some((a, x, y)) => {
                prop_assert!(a != 0 && x != y && x != y ^ a);
                prop_assert_eq!(t.eval(x ^ a) ^ t.eval(x), t.eval(y ^ a) ^ t.eval(y));
            }
            None => prop_assert!(t.is_apn()),
        }
    }

    #[test]
    fn parseval(t in arb_table(5, 3)) {
        let s = t.walsh_spectrum();
        prop_assert_eq!(s.total(), 32 * 7);
        let energy: i64 = s.counts.iter().map(|(&v, &c)| v * v * c as i64).sum();
        prop_assert_eq!(energy, 7 * 32 * 32);
    }

    #[test]
    fn vbf1_round_trip(t in arb_table(5, 7)) {
        prop_assert_eq!(parse_vbf1(&write_vbf1(&t)).unwrap(), t);
    }

    #[test]
    fn ea_preserves_invariants(seed: u64) {
        let f = field(5);
        let cube = Vbf::power(&f, 3);
        let mut rng = SplitMix64::new(seed);
        let g = ea_transform(
            &cube,
            &random_affine_bijection(5, &mut rng),
            &random_affine_bijection(5, &mut rng),
            &random_affine(5, 5, &mut rng),
        )
        .unwrap();
        prop_assert!(g.is_apn());
        prop_assert_eq!(g.algebraic_degree(), 2);
        prop_assert_eq!(g.walsh_spectrum().absolute(), cube.walsh_spectrum().absolute());
    }

    #[test]
    fn gamma_rank_bounds(t in arb_table(3, 3)) {
        let r = gamma_rank(&t).unwrap();
        prop_assert!((8..=64).contains(&r));
    }

    #[test]
    fn switch_certificate_is_exact(seed: u64, u in 1u32..32) {
        let f = field(5);
        let mut rng = SplitMix64::new(seed);
        let base = ea_transform(
            &Vbf::power(&f, 3),
            &random_affine_bijection(5, &mut rng),
            &random_affine_bijection(5, &mut rng),
            &AffineMap::zero(5, 5),
        )
        .unwrap();
        // a quadratic g keeps the chance of a valid switch reasonable
        let c = rng.bits(5) as u32 | 1;
        let g = Vbf::from_fn(5, 1, |x| f.trace(f.mul(c, f.pow(x, 3 + 2 * (seed % 2)))) ^ (rng_bit(seed, x)));
        let out = switch(&SwitchSpec::new(base, g, u).unwrap()).unwrap();
        prop_assert_eq!(out.certificate, out.function.is_apn());
    }

    #[test]
    fn h_witness_recovers_linear_part(coeffs in prop::collection::vec(0u32..32, 5)) {
        let f = field(5);
        let cube = Vbf::power(&f, 3);
        let l = LinearMap::from_linearized(&f, &coeffs).unwrap();
        let g = hyperplane_modify(&f, &cube, &l).unwrap();
        let h = HyperplaneSpec::trace_zero(&f);
        let w = h_equivalence_witness(&cube, &g, &h).unwrap();
        prop_assert!(w.is_some());
        let w = w.unwrap();
        for x in (0..32).filter(|&x| f.trace(x) == 1) {
            prop_assert_eq!(w.eval(x), l.eval(x));
        }
    }

    #[test]
    fn criteria_agree_for_cube(coeffs in prop::collection::vec(0u32..32, 5)) {
        let f = field(5);
        let cube = Vbf::power(&f, 3);
        let l = LinearMap::from_linearized(&f, &coeffs).unwrap();
        let apn = hyperplane_modify(&f, &cube, &l).unwrap().is_apn();
        let th = tr_l_criterion(&f, &cube, &l, f.trace_one_element()).unwrap().is_none();
        prop_assert_eq!(th, apn);
        prop_assert_eq!(exp_sum_condition(&f, &l).unwrap().holds, apn);
    }
}

fn rng_bit(seed: u64, x: u32) -> u32 {
    // sparse noise so some g are non-quadratic
    u32::from(apnkit::rng::draw(seed, x as u64) % 11 == 0)
}

#[test]
fn classical_counts_are_integral() {
    for n in (4..=16).step_by(2) {
        let s = classical_spectrum(n).unwrap();
        assert_eq!(s.total(), (1u64 << n) * ((1u64 << n) - 1));
        assert_eq!(s.counts.len(), 5);
    }
}
