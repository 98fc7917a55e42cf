//! Named batches of checks with a deterministic JSON report.
//!
//! Every check runs its instances on a worker pool of the requested size and
//! collects the results in instance order, so the report depends only on the
//! suite name, the seed and the sample count.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use crate::check::{CheckResult, CheckTally};
use crate::gf3::{pow3, TernarySet};
use crate::halves::{check_half_fact, enumerate_halves};
use crate::kneser::{find_stabilizer_witness, kneser_check, kneser_check_slow, sample_kneser_pair, sample_stabilizer_triple, slow_sumset, verify_witness_slow};
use crate::primitive::{check_lemma, enumerate_primitive, library_size_counts, primitive_library, LemmaId, LemmaInstance, PrimitiveEntry};
use crate::search::{canonical_form, check_proposition, compute_t, enumerate_maximal_sumfree, lev_construction, verify_main_theorem, EnumerationReport, PropId, PropParams, SearchError, SearchOptions};
use crate::subspace::{enumerate_affine_subspaces, enumerate_hyperplanes, AffineSubspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    /// Everything up to dimension 3 plus the sampled property checks.
    Standard,
    /// The standard suite, the dimension-4 verification and the dim4 sweep.
    Extended,
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SuiteName::Standard => "standard",
            SuiteName::Extended => "extended",
        })
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown suite {0:?} (expected standard or extended)")]
pub struct UnknownSuite(pub String);

impl FromStr for SuiteName {
    type Err = UnknownSuite;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "standard" => Ok(SuiteName::Standard),
            "extended" => Ok(SuiteName::Extended),
            _ => Err(UnknownSuite(s.to_string())),
        }
    }
}

/// Deliberate defects used to test that the suite notices them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// The sumset under test drops its smallest element.
    BrokenSumset,
}

impl FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "broken-sumset" => Ok(Fault::BrokenSumset),
            _ => Err(format!("unknown fault {s:?} (expected broken-sumset)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub name: SuiteName,
    pub jobs: usize,
    pub seed: u64,
    /// Number of random Kneser pairs; the stabilizer triples are a tenth of it.
    pub samples: usize,
    pub fault: Option<Fault>,
    /// Checkpoint file for the dimension-4 search of the extended suite.
    pub checkpoint: Option<PathBuf>,
}

impl SuiteConfig {
    pub fn new(name: SuiteName, jobs: usize, seed: u64) -> Self {
        Self { name, jobs, seed, samples: DEFAULT_SAMPLES, fault: None, checkpoint: None }
    }
}

pub const DEFAULT_SAMPLES: usize = 10_000;
const CROSS_CHECKS: usize = 100;
const DENSITY_PROPS: [PropId; 5] = [PropId::HyperplaneCover, PropId::EmptySlice, PropId::ConclusionGrid, PropId::LineEverywhere, PropId::Codim2Slice];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteCheck {
    pub name: String,
    pub passed: bool,
    #[serde(flatten)]
    pub tally: CheckTally,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    pub samples: usize,
    pub passed: bool,
    pub checks: Vec<SuiteCheck>,
}

impl SuiteReport {
    pub fn failed_checks(&self) -> impl Iterator<Item = &SuiteCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

#[derive(Debug, Error)]
pub enum SuiteError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("worker pool: {0}")]
    Pool(String),
}

struct Runner {
    pool: rayon::ThreadPool,
    opts: SearchOptions,
    fault: Option<Fault>,
    checks: Vec<SuiteCheck>,
}

impl Runner {
    fn push(&mut self, name: &str, tally: CheckTally) {
        self.checks.push(SuiteCheck { name: name.to_string(), passed: tally.passed(), tally });
    }

    fn single(&mut self, name: &str, r: CheckResult) {
        self.push(name, std::iter::once(&r).collect());
    }

    fn each<T: Sync>(&mut self, name: &str, items: &[T], f: impl Fn(&T) -> CheckResult + Sync) {
        let results: Vec<CheckResult> = self.pool.install(|| items.par_iter().map(&f).collect());
        self.push(name, results.iter().collect());
    }

    fn sumset(&self, a: &TernarySet, b: &TernarySet) -> TernarySet {
        let mut s = a.sumset(b).expect("same dimension");
        if self.fault == Some(Fault::BrokenSumset) {
            if let Some(&x) = s.indices().first() {
                s.remove_index(x);
            }
        }
        s
    }
}

fn expect(ok: bool, holds: &str, fails: impl FnOnce() -> String) -> CheckResult {
    if ok {
        CheckResult::holds(holds)
    } else {
        CheckResult::counterexample(fails())
    }
}

fn verdict(n: usize, opts: &SearchOptions) -> Result<(CheckResult, EnumerationReport), SearchError> {
    let r = verify_main_theorem(n, opts)?;
    let res = expect(r.verdict.is_verified(), "Verified", || format!("{:?}", r.verdict));
    Ok((res, r.maximal))
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, SuiteError> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs.max(1)).build().map_err(|e| SuiteError::Pool(e.to_string()))?;
    let mut run = Runner { pool, opts: SearchOptions::with_jobs(cfg.jobs), fault: cfg.fault, checks: Vec::new() };
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    dimension_one(&mut run)?;
    dimension_two(&mut run)?;
    dimension_three(&mut run)?;
    let fives = five_in_cube(&mut run);
    lev(&mut run);
    let library: Vec<PrimitiveEntry> = (1..=3).flat_map(|n| primitive_library(n).expect("small dimension").iter().cloned()).collect();
    primitive_lemmas(&mut run, "", &library);
    halves_fact(&mut run);
    sampled_lemmas(&mut run, &library, &mut rng);
    let mut dense: Vec<TernarySet> = library.iter().map(|(s, _)| s.clone()).filter(|s| s.dim() >= 2).collect();
    dense.extend(fives);
    density_props(&mut run, "", &DENSITY_PROPS, &dense);
    kneser(&mut run, cfg.samples, &mut rng);
    stabilizer(&mut run, (cfg.samples / 10).max(1), &mut rng);

    if cfg.name == SuiteName::Extended {
        dimension_four(&mut run, cfg.checkpoint.clone(), &mut rng)?;
    }

    let passed = run.checks.iter().all(|c| c.passed);
    Ok(SuiteReport { suite: cfg.name, seed: cfg.seed, samples: cfg.samples, passed, checks: run.checks })
}

fn dimension_one(run: &mut Runner) -> Result<(), SearchError> {
    let sets: Vec<TernarySet> = enumerate_primitive(1, false).expect("n = 1").into_iter().map(|(s, _)| s).collect();
    let want = vec![TernarySet::from_indices(1, [1]).unwrap(), TernarySet::from_indices(1, [2]).unwrap()];
    run.single("n1_primitive_sets", expect(sets == want, "exactly {1} and {2}", || format!("got {sets:?}")));
    let (res, _) = verdict(1, &run.opts)?;
    run.single("n1_verify_main", res);
    Ok(())
}

fn dimension_two(run: &mut Runner) -> Result<(), SearchError> {
    let mut lines: Vec<TernarySet> = enumerate_affine_subspaces(&AffineSubspace::whole(2), 1)
        .expect("k <= n")
        .into_iter()
        .filter(|l| !l.contains_origin())
        .map(|l| l.points())
        .collect();
    lines.sort();
    let mut primitive: Vec<TernarySet> = primitive_library(2).expect("n = 2").iter().map(|(s, _)| s.clone()).collect();
    primitive.sort();
    run.single(
        "n2_primitive_are_lines",
        expect(lines.len() == 8 && primitive == lines, "the 8 lines avoiding 0", || format!("{} primitive sets, {} lines", primitive.len(), lines.len())),
    );
    let mut brute: Vec<TernarySet> = (0u32..1 << 9)
        .map(|m| TernarySet::from_indices(2, (0..9).filter(|i| m >> i & 1 == 1)).unwrap())
        .filter(|s| s.len() >= 2 && s.is_maximal_sum_free())
        .collect();
    brute.sort();
    run.single(
        "n2_brute_force_maximal",
        expect(brute == lines, "all 512 subsets scanned", || format!("brute force found {} sets", brute.len())),
    );
    let t = compute_t(2, &run.opts)?;
    run.single("n2_compute_t", expect(t == 0, "t(2) = 0", || format!("t(2) = {t}")));
    let (res, _) = verdict(2, &run.opts)?;
    run.single("n2_verify_main", res);
    Ok(())
}

fn dimension_three(run: &mut Runner) -> Result<(), SearchError> {
    let (res, maximal) = verdict(3, &run.opts)?;
    run.single("n3_verify_main", res);
    let sizes: Vec<usize> = maximal.size_counts.keys().copied().collect();
    run.single("n3_dense_sizes", expect(sizes == [5, 9], "sizes {5, 9}", || format!("sizes {sizes:?}")));
    let p = TernarySet::from_trit_rows(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]).unwrap();
    let fives: Vec<&TernarySet> = maximal.sets.iter().filter(|s| s.len() == 5).collect();
    run.single(
        "n3_size5_single_orbit",
        expect(fives == [&canonical_form(&p)], "one orbit, containing P", || format!("{} size-5 orbits", fives.len())),
    );
    let t = compute_t(3, &run.opts)?;
    run.single("n3_compute_t", expect(t == 5, "t(3) = 5", || format!("t(3) = {t}")));

    let full = enumerate_maximal_sumfree(3, 5, false, &run.opts)?;
    let library: std::collections::BTreeMap<usize, u64> = library_size_counts(3).expect("n = 3").into_iter().map(|(k, v)| (k, v as u64)).collect();
    let ok = maximal.expanded_size_counts == full.size_counts && full.size_counts == library;
    run.single(
        "n3_orbit_consistency",
        expect(ok, "orbit sums match the unreduced search and the primitive library", || {
            format!("orbits {:?}, unreduced {:?}, library {:?}", maximal.expanded_size_counts, full.size_counts, library)
        }),
    );
    let formula: Vec<(usize, usize)> = maximal.sets.iter().zip(&maximal.sym_dims).map(|(s, &d)| (s.len(), d)).collect();
    run.single(
        "n3_size_formula",
        expect(
            formula.iter().all(|&(len, d)| 6 * len == 27 + 3 * pow3(d)),
            "|A| = (3^n + 3|Sym(A)|)/6 for every orbit",
            || format!("(size, sym dim) pairs {formula:?}"),
        ),
    );
    Ok(())
}

/// Runs the sweep over all 5-subsets of F_3^3 and returns the ones that
/// passed the sum-free filter.
fn five_in_cube(run: &mut Runner) -> Vec<TernarySet> {
    let mut candidates = Vec::new();
    for a in 0..27 {
        for b in a + 1..27 {
            for c in b + 1..27 {
                for d in c + 1..27 {
                    for e in d + 1..27 {
                        candidates.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    let run_ref = &*run;
    let sum_free: Vec<TernarySet> = run.pool.install(|| {
        candidates
            .par_iter()
            .map(|idx| TernarySet::from_indices(3, idx.iter().copied()).unwrap())
            .filter(|s| run_ref.sumset(s, s).is_disjoint(s))
            .collect()
    });
    run.each("five_in_cube_sweep", &sum_free, |s| check_proposition(PropId::FiveInCube, s, &PropParams::default()).unwrap());
    sum_free
}

fn prop_name(id: PropId) -> String {
    format!("prop_{}", id.name().trim_start_matches("prop_"))
}

/// The statements about dense sum-free sets, run on `sets`.
fn density_props(run: &mut Runner, prefix: &str, ids: &[PropId], sets: &[TernarySet]) {
    for &id in ids {
        run.each(&format!("{prefix}{}", prop_name(id)), sets, |s| check_proposition(id, s, &PropParams::default()).unwrap());
    }
}

fn lev(run: &mut Runner) {
    let dims: Vec<usize> = (3..=8).collect();
    run.each("lev_construction", &dims, |&n| {
        let (a, _) = lev_construction(n).expect("3 <= n <= 8");
        let size = (pow3(n - 1) + 1) / 2;
        let aperiodic = a.sym_group().map(|k| k.dim() == 0).unwrap_or(false);
        expect(a.len() == size && a.is_maximal_sum_free() && aperiodic, "aperiodic maximal of the predicted size", || {
            format!("n = {n}: size {} (want {size}), maximal {}, aperiodic {aperiodic}", a.len(), a.is_maximal_sum_free())
        })
    });
}

fn primitive_lemmas(run: &mut Runner, prefix: &str, entries: &[PrimitiveEntry]) {
    let name = |s: &str| format!("{prefix}{s}");
    run.each(&name("lemma_card_formula"), entries, |(_, c)| check_lemma(LemmaId::CardFormula, &LemmaInstance::Certified(c.clone())).unwrap());
    run.each(&name("lemma_sym_containment"), entries, |(_, c)| check_lemma(LemmaId::SymContainment, &LemmaInstance::Certified(c.clone())).unwrap());
    for id in [LemmaId::FourSum, LemmaId::HyperplaneBound, LemmaId::AffineAboveSym] {
        run.each(&name(&format!("lemma_{}", id.name())), entries, |(s, _)| check_lemma(id, &LemmaInstance::Set(s.clone())).unwrap());
    }
    run.each(&name(&prop_name(PropId::NoZero4A)), entries, |(s, _)| check_proposition(PropId::NoZero4A, s, &PropParams::default()).unwrap());
}

fn halves_fact(run: &mut Runner) {
    let mut pairs = Vec::new();
    for h in enumerate_hyperplanes(3, true) {
        for x in h.points().iter() {
            let u = AffineSubspace::point(crate::gf3::TernaryVector::new(3, x).unwrap());
            pairs.push((h.clone(), u));
        }
    }
    run.each("halves_fact", &pairs, |(h, u)| {
        let count = enumerate_halves(h, u).map(|v| v.len()).unwrap_or(0);
        let fact = check_half_fact(h, u).unwrap_or(false);
        expect(count == 16 && fact, "16 halves, each containing a line", || format!("{count} halves, fact {fact}"))
    });
}

fn sampled_lemmas(run: &mut Runner, library: &[PrimitiveEntry], rng: &mut ChaCha8Rng) {
    use rand::seq::SliceRandom;
    use rand::Rng;

    let n3: Vec<&PrimitiveEntry> = library.iter().filter(|(s, _)| s.dim() == 3).collect();
    let subset = |a: &TernarySet, rng: &mut ChaCha8Rng| {
        let mut idx = a.indices();
        idx.shuffle(rng);
        let keep = rng.gen_range(idx.len().div_ceil(2)..=idx.len());
        TernarySet::from_indices(a.dim(), idx[..keep].iter().copied()).unwrap()
    };
    let dense: Vec<(TernarySet, usize)> = (0..500)
        .map(|_| {
            let (a, _) = n3.choose(rng).expect("library is nonempty");
            (subset(a, rng), rng.gen_range(1..=3))
        })
        .collect();
    run.each("lemma_dense_affine", &dense, |(b, k)| check_lemma(LemmaId::DenseAffine, &LemmaInstance::Dense { b: b.clone(), k: *k }).unwrap());

    let hyperplanes = enumerate_hyperplanes(3, false);
    let transfer: Vec<(TernarySet, TernarySet, AffineSubspace)> = (0..500)
        .map(|_| {
            let (a, _) = n3.choose(rng).expect("library is nonempty");
            let b = subset(a, rng);
            let j = hyperplanes.choose(rng).expect("nonempty").clone();
            (a.clone(), b, j)
        })
        .collect();
    run.each("lemma_disjoint_transfer", &transfer, |(a, b, j)| {
        check_lemma(LemmaId::DisjointTransfer, &LemmaInstance::Transfer { a: a.clone(), b: b.clone(), j: j.clone() }).unwrap()
    });

    let fours: Vec<TernarySet> = (0..500)
        .map(|_| {
            let (a, _) = n3.choose(rng).expect("library is nonempty");
            let mut idx = a.indices();
            idx.shuffle(rng);
            let keep = 4.min(idx.len());
            TernarySet::from_indices(3, idx[..keep].iter().copied()).unwrap()
        })
        .collect();
    run.each(&prop_name(PropId::FourPoint), &fours, |s| check_proposition(PropId::FourPoint, s, &PropParams::default()).unwrap());
}

fn kneser(run: &mut Runner, samples: usize, rng: &mut ChaCha8Rng) {
    let pairs: Vec<(TernarySet, TernarySet)> = (0..samples).map(|i| sample_kneser_pair(1 + i % 3, rng)).collect();
    run.each("kneser_pairs", &pairs, |(a, b)| kneser_check(a, b).expect("nonempty, same dimension"));
    let cross = &pairs[..CROSS_CHECKS.min(pairs.len())];
    let run_ref = &*run;
    let results: Vec<CheckResult> = run.pool.install(|| {
        cross
            .par_iter()
            .map(|(a, b)| {
                let fast = run_ref.sumset(a, b);
                let slow = slow_sumset(a, b);
                if fast != slow {
                    return CheckResult::counterexample(format!("sumset of {:?} and {:?}: fast {:?}, slow {:?}", a.indices(), b.indices(), fast.indices(), slow.indices()));
                }
                let (s, ak, bk, k) = kneser_check_slow(a, b);
                let ok = s + k >= ak + bk && matches!(kneser_check(a, b), Ok(CheckResult::Holds { .. }));
                expect(ok, "fast and slow paths agree", || format!("slow Kneser numbers {s}, {ak}, {bk}, {k}"))
            })
            .collect()
    });
    run.push("kneser_slow_cross_check", results.iter().collect());
}

fn stabilizer(run: &mut Runner, samples: usize, rng: &mut ChaCha8Rng) {
    let triples: Vec<(TernarySet, TernarySet, TernarySet)> = (0..samples).map(|i| sample_stabilizer_triple(1 + i % 3, rng)).collect();
    run.each("stabilizer_triples", &triples, |(a, b, c)| match find_stabilizer_witness(a, b, c) {
        Ok(w) => expect(verify_witness_slow(a, b, c, &w), "witness verified", || "witness fails the slow verification".into()),
        Err(e) => CheckResult::counterexample(format!("{}: {e}", e.code())),
    });
}

fn dimension_four(run: &mut Runner, checkpoint: Option<PathBuf>, rng: &mut ChaCha8Rng) -> Result<(), SearchError> {
    use rand::seq::SliceRandom;
    use rand::Rng;

    let opts = SearchOptions { checkpoint, ..run.opts.clone() };
    let (res, maximal) = verdict(4, &opts)?;
    run.single("n4_verify_main", res);
    let t = maximal.sets.iter().zip(&maximal.sym_dims).filter(|(_, &d)| d == 0).map(|(s, _)| s.len()).max().unwrap_or(0);
    run.single("n4_compute_t", expect(t == 14, "t(4) = 14", || format!("t(4) = {t}")));
    let formula_ok = maximal.sets.iter().zip(&maximal.sym_dims).all(|(s, &d)| 6 * s.len() == 81 + 3 * pow3(d));
    run.single("n4_size_formula", expect(formula_ok, "|A| = (3^n + 3|Sym(A)|)/6 for every orbit", || "size formula fails".into()));

    let reps = enumerate_primitive(4, true).expect("n = 4");
    primitive_lemmas(run, "n4_", &reps);

    // maximal representatives plus random sum-free subsets of size >= 14
    let mut sweep: Vec<TernarySet> = maximal.sets.clone();
    while sweep.len() < maximal.sets.len() + 200 {
        let a = maximal.sets.choose(rng).expect("nonempty");
        let mut idx = a.indices();
        idx.shuffle(rng);
        let keep = rng.gen_range(14..=a.len());
        sweep.push(TernarySet::from_indices(4, idx[..keep].iter().copied()).unwrap());
    }
    density_props(run, "n4_sweep_", &[PropId::Dim4, PropId::ParallelLines, PropId::NoZero4A], &sweep);
    density_props(run, "n4_", &DENSITY_PROPS, &maximal.sets);
    Ok(())
}
