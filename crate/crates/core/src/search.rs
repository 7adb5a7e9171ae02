//! Searches over construction parameters: linear maps `L` for `F + Tr·L`,
//! coset constants, and random subspaces.

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

use crate::constructions::{
    admissible_sums, coset_modify, hyperplane_modify, trace_zero_basis, CosetDecomposition, HyperplaneSpec,
    TrLChecker,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::rng::{draw, SplitMix64};
use crate::vbf::{rank_of_vectors, LinearMap, Vbf};

/// Largest `n` searched exhaustively without `allow_long`.
pub const EXHAUSTIVE_MAX_N: u32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub mode: SearchMode,
    pub workers: usize,
    /// Maximum number of hits listed (all are counted).
    pub cap: usize,
    /// `e_0` with `Tr(e_0) = 1`; defaults to the lowest such unit vector.
    pub e0: Option<u32>,
    /// Also vary `L(e_0)` instead of fixing it to 0.
    pub free_e0_image: bool,
    /// Permit exhaustive runs above [`EXHAUSTIVE_MAX_N`].
    pub allow_long: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            mode: SearchMode::Exhaustive,
            workers: 1,
            cap: 100,
            e0: None,
            free_e0_image: false,
            allow_long: false,
        }
    }
}

/// A linear map passing the criterion. `index` packs the images of the
/// basis of `T_0` (`n` bits each, first basis vector lowest), then `L(e_0)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct TrLHit {
    pub index: u64,
    /// Images of the standard unit vectors.
    pub columns: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub space: String,
    pub n: u32,
    #[serde(flatten)]
    pub mode: SearchMode,
    pub e0: u32,
    pub examined: u64,
    pub hits: u64,
    pub cap: usize,
    pub truncated: bool,
    /// Smallest hit indices (deduplicated), at most `cap`.
    pub hit_list: Vec<TrLHit>,
    /// Hits re-checked by a direct APN test, and how many of those failed.
    pub verified: u64,
    pub verification_failures: u64,
    pub workers: usize,
    pub seconds: f64,
}

impl SearchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,columns\n");
        for h in &self.hit_list {
            let cols: Vec<String> = h.columns.iter().map(|c| format!("{c:x}")).collect();
            out.push_str(&format!("{},{}\n", h.index, cols.join(" ")));
        }
        out
    }
}

#[derive(Default)]
struct Partial {
    examined: u64,
    hits: u64,
    list: BTreeSet<u64>,
    verified: u64,
    failures: u64,
}

impl Partial {
    fn merge(mut self, other: Partial, cap: usize) -> Partial {
        self.examined += other.examined;
        self.hits += other.hits;
        self.verified += other.verified;
        self.failures += other.failures;
        self.list.extend(other.list);
        while self.list.len() > cap {
            self.list.pop_last();
        }
        self
    }
}

/// Counts linear `L` (with `L(e_0) = 0` unless freed) for which
/// `F + Tr·L` is APN, using the kernel criterion.
///
/// Every hit is re-verified with a direct APN test for `n ≤ 5`; above that a
/// deterministic 1% sample is.
pub fn search_tr_l(field: &Field, f: &Vbf, opts: &SearchOptions) -> Result<SearchReport> {
    let start = Instant::now();
    let n = field.degree();
    let e0 = opts.e0.unwrap_or_else(|| field.trace_one_element());
    let checker = TrLChecker::new(field, f, e0)?;
    let free_bits = n * (n - 1) + if opts.free_e0_image { n } else { 0 };
    if free_bits > 64 {
        return Err(Error::Budget(format!("{free_bits}-bit parameter space")));
    }
    let space_size = 1u128 << free_bits;
    if opts.mode == SearchMode::Exhaustive && n > EXHAUSTIVE_MAX_N && !opts.allow_long {
        return Err(Error::Budget(format!(
            "exhaustive search at n = {n} ({space_size} maps) needs the long-run override"
        )));
    }
    let total = match opts.mode {
        SearchMode::Exhaustive => u64::try_from(space_size)
            .map_err(|_| Error::Budget("parameter space does not fit in 64 bits".into()))?,
        SearchMode::Random { samples, .. } => samples,
    };
    let basis = trace_zero_basis(field);
    // columns of the inverse of [b_1 … b_{n-1} e_0], to turn images into a matrix
    let mut frame = basis.clone();
    frame.push(e0);
    let to_frame = LinearMap::new(n, n, frame)?.inverse()?;
    let mask = (1u32 << n) - 1;
    let images_of = |index: u64| -> Vec<u32> { (0..n).map(|i| (index >> (n * i)) as u32 & mask).collect() };
    let map_of = |index: u64| -> LinearMap {
        let mut imgs = images_of(index);
        if !opts.free_e0_image {
            imgs[n as usize - 1] = 0;
        }
        LinearMap::new(n, n, imgs)
            .and_then(|m| m.compose(&to_frame))
            .expect("dimensions fixed above")
    };
    let candidate = |i: u64| -> u64 {
        match opts.mode {
            SearchMode::Exhaustive => i,
            SearchMode::Random { seed, .. } => {
                if free_bits == 0 {
                    0
                } else {
                    draw(seed, i) >> (64 - free_bits)
                }
            }
        }
    };
    let verify_all = n <= 5;
    let run = |lo: u64, hi: u64| -> Partial {
        let mut p = Partial::default();
        let mut scratch = Vec::new();
        let mut images = vec![0u32; n as usize];
        for i in lo..hi {
            let idx = candidate(i);
            for (k, img) in images.iter_mut().enumerate().take(n as usize - 1) {
                *img = (idx >> (n * k as u32)) as u32 & mask;
            }
            p.examined += 1;
            if !checker.passes_images(&images, &mut scratch) {
                continue;
            }
            p.hits += 1;
            if p.list.len() < opts.cap || p.list.last().is_some_and(|&l| idx < l) {
                p.list.insert(idx);
                if p.list.len() > opts.cap {
                    p.list.pop_last();
                }
            }
            if verify_all || draw(0x5eed, idx) % 100 == 0 {
                p.verified += 1;
                let g = hyperplane_modify(field, f, &map_of(idx)).expect("shapes checked");
                if !g.is_apn() {
                    p.failures += 1;
                }
            }
        }
        p
    };
    let workers = opts.workers.max(1);
    let chunk = total.div_ceil(workers as u64).max(1);
    let partial = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| (w * chunk).min(total)..((w + 1) * chunk).min(total))
            .filter(|r| !r.is_empty())
            .map(|r| {
                let run = &run;
                s.spawn(move || run(r.start, r.end))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .fold(Partial::default(), |acc, p| acc.merge(p, opts.cap))
    });
    let hit_list: Vec<TrLHit> = partial
        .list
        .iter()
        .map(|&index| TrLHit {
            index,
            columns: map_of(index).columns().to_vec(),
        })
        .collect();
    Ok(SearchReport {
        space: format!(
            "linear L on GF(2^{n}){}, F + Tr(x)L(x)",
            if opts.free_e0_image { "" } else { " with L(e0) = 0" }
        ),
        n,
        mode: opts.mode,
        e0,
        examined: partial.examined,
        hits: partial.hits,
        cap: opts.cap,
        truncated: (hit_list.len() as u64) < partial.hits,
        hit_list,
        verified: partial.verified,
        verification_failures: partial.failures,
        workers,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Admissible constant tuples for a coset decomposition.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CosetSearchReport {
    pub n: u32,
    pub admissible: Vec<u32>,
    /// `(a_1, a_2, a_3, a_4)` tuples, `per_sum` for each admissible sum.
    pub tuples: Vec<[u32; 4]>,
    pub verified: u64,
    pub verification_failures: u64,
    pub seed: u64,
    pub seconds: f64,
}

/// Computes the admissible sums once and emits seeded tuples realizing each
/// of them, every one re-checked with a direct APN test. The first tuple
/// for a sum `s` is `(0, 0, 0, s)`.
pub fn search_coset_constants(
    f: &Vbf,
    dec: &CosetDecomposition,
    per_sum: usize,
    seed: u64,
) -> Result<CosetSearchReport> {
    let start = Instant::now();
    let admissible: Vec<u32> = admissible_sums(f, dec)?.into_iter().collect();
    let mut rng = SplitMix64::new(seed);
    let mut tuples = Vec::new();
    for &s in &admissible {
        for k in 0..per_sum {
            let tuple = if k == 0 {
                [0, 0, 0, s]
            } else {
                let [a1, a2, a3] = [0; 3].map(|_| rng.bits(f.m()) as u32);
                [a1, a2, a3, s ^ a1 ^ a2 ^ a3]
            };
            tuples.push(tuple);
        }
    }
    let failures = tuples
        .iter()
        .filter(|&&a| !coset_modify(f, dec, a).map(|g| g.is_apn()).unwrap_or(false))
        .count() as u64;
    Ok(CosetSearchReport {
        n: f.n(),
        admissible,
        verified: tuples.len() as u64,
        tuples,
        verification_failures: failures,
        seed,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// A sampled linear subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Subspace {
    Hyperplane(HyperplaneSpec),
    Codim2(CosetDecomposition),
}

/// Reduced row echelon form of a set of vectors (pivot = highest bit),
/// zero vectors dropped, sorted decreasingly.
pub fn rref(vectors: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut rows: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &r in &rows {
            v = v.min(v ^ r);
        }
        if v != 0 {
            let top = 1 << (31 - v.leading_zeros());
            for r in rows.iter_mut() {
                if *r & top != 0 {
                    *r ^= v;
                }
            }
            rows.push(v);
            rows.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    rows
}

/// Number of subspaces of `F_2^n` of codimension 1 or 2.
fn subspace_count(n: u32, codim: u32) -> u64 {
    let q = 1u64 << n;
    match codim {
        1 => q - 1,
        _ => (q - 1) * (q / 2 - 1) / 3,
    }
}

/// Distinct pseudorandom linear subspaces of codimension 1 or 2, in draw
/// order. Each is identified by the row-reduced basis of its annihilator;
/// at most `count` (or all that exist) are returned.
pub fn enumerate_subspaces(n: u32, codim: u32, count: usize, seed: u64) -> Result<Vec<Subspace>> {
    if !(codim == 1 || codim == 2) || n < codim + 1 || n > crate::vbf::MAX_DIM {
        return Err(Error::Dimension(format!("codimension {codim} in dimension {n}")));
    }
    let want = (count as u64).min(subspace_count(n, codim)) as usize;
    let mut rng = SplitMix64::new(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(want);
    while out.len() < want {
        let functionals: Vec<u32> = (0..codim).map(|_| rng.bits(n) as u32).collect();
        if rank_of_vectors(functionals.iter().copied()) != codim {
            continue;
        }
        let key = rref(functionals);
        if !seen.insert(key.clone()) {
            continue;
        }
        out.push(match codim {
            1 => Subspace::Hyperplane(HyperplaneSpec::new(n, key[0], 0)?),
            _ => Subspace::Codim2(codim2_from_functionals(n, key[0], key[1])?),
        });
    }
    Ok(out)
}

/// `U = ker a ∩ ker b`; representatives are the smallest element of each
/// coset, cosets ordered by representative.
fn codim2_from_functionals(n: u32, a: u32, b: u32) -> Result<CosetDecomposition> {
    let dot = |x: u32, y: u32| (x & y).count_ones() & 1;
    let kernel = (0..1u32 << n).filter(|&x| dot(x, a) == 0 && dot(x, b) == 0);
    let mut basis = rref(kernel);
    basis.reverse();
    let mut reps = [u32::MAX; 4];
    let mut slots = Vec::new();
    for x in 0..1u32 << n {
        let key = (dot(x, a), dot(x, b));
        if !slots.contains(&key) {
            reps[slots.len()] = x;
            slots.push(key);
            if slots.len() == 4 {
                break;
            }
        }
    }
    CosetDecomposition::new(n, basis, reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_n4() {
        let f = Field::preset(4).unwrap();
        let cube = Vbf::power(&f, 3);
        let report = search_tr_l(&f, &cube, &SearchOptions::default()).unwrap();
        assert_eq!(report.examined, 4096);
        assert_eq!(report.hits, 448);
        assert_eq!(report.verified, 448);
        assert_eq!(report.verification_failures, 0);
        assert_eq!(report.hit_list.len(), 100);
        assert!(report.truncated);
        let parallel = search_tr_l(&f, &cube, &SearchOptions { workers: 3, ..Default::default() }).unwrap();
        assert_eq!(parallel.hit_list, report.hit_list);
        assert_eq!(parallel.hits, 448);
        let e0 = report.hit_list[0].columns.clone();
        assert_eq!(LinearMap::new(4, 4, e0).unwrap().eval(report.e0), 0);
    }

    #[test]
    fn exhaustive_budget() {
        let f = Field::preset(6).unwrap();
        let cube = Vbf::power(&f, 3);
        assert!(matches!(
            search_tr_l(&f, &cube, &SearchOptions::default()),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn random_mode_is_deterministic() {
        let f = Field::preset(5).unwrap();
        let cube = Vbf::power(&f, 3);
        let opts = |workers| SearchOptions {
            mode: SearchMode::Random { samples: 20_000, seed: 9 },
            workers,
            cap: 10,
            ..Default::default()
        };
        let a = search_tr_l(&f, &cube, &opts(1)).unwrap();
        let b = search_tr_l(&f, &cube, &opts(4)).unwrap();
        assert_eq!((a.hits, &a.hit_list), (b.hits, &b.hit_list));
        assert_eq!(a.examined, 20_000);
        assert_eq!(a.verification_failures, 0);
    }

    #[test]
    fn coset_tuples_are_apn() {
        let f = Field::preset(6).unwrap();
        let cube = Vbf::power(&f, 3);
        let subspaces = enumerate_subspaces(6, 2, 3, 1).unwrap();
        for s in subspaces {
            let Subspace::Codim2(dec) = s else { panic!() };
            let r = search_coset_constants(&cube, &dec, 3, 5).unwrap();
            assert!(r.admissible.contains(&0));
            assert_eq!(r.verification_failures, 0);
            assert!(r.tuples.contains(&[0, 0, 0, 0]));
        }
    }

    #[test]
    fn hyperplanes_exhausted() {
        let all = enumerate_subspaces(6, 1, 63, 3).unwrap();
        let set: BTreeSet<u32> = all
            .iter()
            .map(|s| match s {
                Subspace::Hyperplane(h) => h.functional,
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(set.len(), 63);
        assert_eq!(enumerate_subspaces(6, 1, 100, 3).unwrap().len(), 63);
        assert_eq!(enumerate_subspaces(6, 1, 10, 3).unwrap(), all[..10].to_vec());
    }

    #[test]
    fn codim2_subspaces() {
        let list = enumerate_subspaces(4, 2, 1000, 8).unwrap();
        assert_eq!(list.len(), 35);
        for s in &list {
            let Subspace::Codim2(d) = s else { panic!() };
            assert_eq!(d.coset(0).len(), 4);
        }
    }

    #[test]
    fn rref_is_canonical() {
        assert_eq!(rref([0b110, 0b011]), rref([0b101, 0b011]));
        assert_eq!(rref([0b11, 0b11, 0]), vec![0b11]);
    }
}
