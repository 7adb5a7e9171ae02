//! Every iff-criterion against a brute-force DDT of the constructed function.

use apnkit::constructions::*;
use apnkit::rng::SplitMix64;
use apnkit::search::{enumerate_subspaces, Subspace};
use apnkit::{AffineMap, Field, LinearMap, Vbf};

fn random_apn(field: &Field, rng: &mut SplitMix64) -> Vbf {
    let n = field.degree();
    ea_transform(
        &Vbf::power(field, 3),
        &random_affine_bijection(n, rng),
        &random_affine_bijection(n, rng),
        &random_affine(n, n, rng),
    )
    .unwrap()
}

fn tally(results: impl Iterator<Item = (bool, bool)>) -> (usize, usize) {
    let mut counts = (0, 0);
    for (criterion, oracle) in results {
        assert_eq!(criterion, oracle);
        if oracle {
            counts.0 += 1;
        } else {
            counts.1 += 1;
        }
    }
    counts
}

#[test]
fn tr_l_exhaustive_n4() {
    let f = Field::preset(4).unwrap();
    let cube = Vbf::power(&f, 3);
    let e0 = f.trace_one_element();
    let (pos, neg) = tally((0u32..1 << 16).map(|idx| {
        let l = LinearMap::new(4, 4, (0..4).map(|i| idx >> (4 * i) & 15).collect()).unwrap();
        let apn = hyperplane_modify(&f, &cube, &l).unwrap().is_apn();
        (tr_l_criterion(&f, &cube, &l, e0).unwrap().is_none(), apn)
    }));
    assert_eq!(pos, 7168);
    assert!(neg > 0);
}

#[test]
fn tr_l_random_n5_other_base() {
    // F need not be x^3: any quadratic APN works, e.g. an EA-image of it.
    let f = Field::preset(5).unwrap();
    let mut rng = SplitMix64::new(3);
    let base = random_apn(&f, &mut rng);
    let (pos, neg) = tally((0..2000).map(|_| {
        let l = LinearMap::new(5, 5, (0..5).map(|_| rng.bits(5) as u32).collect()).unwrap();
        let apn = hyperplane_modify(&f, &base, &l).unwrap().is_apn();
        let e0 = f.trace_one_element();
        (tr_l_criterion(&f, &base, &l, e0).unwrap().is_none(), apn)
    }));
    assert!(pos > 0 && neg > 0, "{pos} {neg}");
}

#[test]
fn exp_sum_random_n5() {
    let f = Field::preset(5).unwrap();
    let cube = Vbf::power(&f, 3);
    let mut rng = SplitMix64::new(5);
    let (pos, neg) = tally((0..10_000).map(|_| {
        let l = LinearMap::new(5, 5, (0..5).map(|_| rng.bits(5) as u32).collect()).unwrap();
        let apn = hyperplane_modify(&f, &cube, &l).unwrap().is_apn();
        (exp_sum_condition(&f, &l).unwrap().holds, apn)
    }));
    assert!(pos > 0 && neg > 0);
}

#[test]
fn concat_random_pairs() {
    let f5 = Field::preset(5).unwrap();
    let emb = Embedding::standard(5);
    let mut rng = SplitMix64::new(17);
    let (pos, neg) = tally((0..1000).map(|i| {
        let whole = random_apn(&f5, &mut rng);
        let lo = Vbf::from_fn(4, 5, |x| whole.eval(x));
        let mut hi: Vec<u32> = (0..16).map(|x| whole.eval(x | 16)).collect();
        if i % 2 == 1 {
            hi[rng.below(16) as usize] ^= 1 << rng.below(5);
        }
        let hi = Vbf::from_table(4, 5, hi).unwrap();
        let oracle = concatenate(&lo, &hi, &emb).unwrap().is_apn();
        (concat_is_apn(&lo, &hi).unwrap().is_none(), oracle)
    }));
    assert!(pos >= 500 && neg > 0);
}

#[test]
fn quadratic_concat_random() {
    let f5 = Field::preset(5).unwrap();
    let emb = Embedding::standard(5);
    let mut rng = SplitMix64::new(23);
    let (pos, neg) = tally((0..2000).map(|_| {
        let whole = random_apn(&f5, &mut rng);
        let lo = Vbf::from_fn(4, 5, |x| whole.eval(x));
        let l = LinearMap::new(4, 5, (0..4).map(|_| rng.bits(5) as u32).collect()).unwrap();
        let c = rng.bits(5) as u32;
        let hi = Vbf::from_fn(4, 5, |x| lo.eval(x) ^ l.eval(x) ^ c);
        let oracle = concatenate(&lo, &hi, &emb).unwrap().is_apn();
        (quadratic_concat_criterion(&lo, &l).unwrap().is_none(), oracle)
    }));
    assert!(pos > 0 && neg > 0, "{pos} {neg}");
}

#[test]
fn coset_random() {
    for n in [4, 5, 6] {
        let f = Field::preset(n).unwrap();
        let mut rng = SplitMix64::new(n as u64);
        let decs = enumerate_subspaces(n, 2, 5, 99).unwrap();
        let (pos, neg) = tally((0..400).map(|i| {
            let Subspace::Codim2(dec) = &decs[i % decs.len()] else { unreachable!() };
            let base = random_apn(&f, &mut rng);
            let a = [0, 0, 0, 0].map(|_| rng.bits(n) as u32);
            let v = coset_criterion(&base, dec, a).unwrap();
            let g = coset_modify(&base, dec, a).unwrap();
            if let Some([x1, x2, x3, x4]) = v.witness {
                assert_eq!(g.eval(x1) ^ g.eval(x2) ^ g.eval(x3) ^ g.eval(x4), 0);
                assert!(g.differential_uniformity() > 2);
            }
            (v.holds, g.is_apn())
        }));
        assert!(neg > 0, "n = {n}: {pos} {neg}");
    }
}

#[test]
fn switching_both_ways() {
    let f = Field::preset(5).unwrap();
    let mut rng = SplitMix64::new(41);
    let (pos, neg) = tally((0..300).map(|_| {
        let base = random_apn(&f, &mut rng);
        let c = rng.bits(5) as u32;
        let g = if rng.below(2) == 0 {
            // g = Tr(c F): switching back along a component keeps APN sometimes
            Vbf::from_fn(5, 1, |x| f.trace(f.mul(c, base.eval(x))))
        } else {
            let bits: Vec<u32> = (0..32).map(|_| rng.bits(1) as u32).collect();
            Vbf::from_table(5, 1, bits).unwrap()
        };
        let u = rng.below(31) as u32 + 1;
        let out = switch(&SwitchSpec::new(base, g, u).unwrap()).unwrap();
        (out.certificate, out.function.is_apn())
    }));
    assert!(pos > 0 && neg > 0, "{pos} {neg}");
}

#[test]
fn decomposition_recombines() {
    for n in [4, 5, 6] {
        let f = Field::preset(n).unwrap();
        let mut rng = SplitMix64::new(7);
        for _ in 0..5 {
            let base = random_apn(&f, &mut rng);
            let d = decompose_to_4uniform(&base, None).unwrap();
            assert_eq!(d.uniformity, 4);
            let back = Vbf::from_fn(n, n, |x| d.f1.eval(x) ^ if d.g.eval(x) == 1 { d.u } else { 0 });
            assert_eq!(back, base);
        }
    }
}

#[test]
fn ea_identity() {
    let f = Field::preset(6).unwrap();
    let cube = Vbf::power(&f, 3);
    let id = AffineMap::identity(6);
    assert_eq!(ea_transform(&cube, &id, &id, &AffineMap::zero(6, 6)).unwrap(), cube);
}
