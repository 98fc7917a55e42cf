//! Acceptance criteria 1 to 8, one line each.
//!
//! Runs without the libtest harness so the lines are printed even when every
//! criterion passes. Each criterion has a pinned wall-clock budget; going over
//! it counts as a failure.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sumfree_core::kneser::{find_stabilizer_witness, kneser_check, kneser_check_slow, sample_kneser_pair, sample_stabilizer_triple, slow_sumset, verify_witness_slow};
use sumfree_core::primitive::{check_lemma, enumerate_primitive, primitive_library, LemmaId, LemmaInstance, PrimitiveEntry};
use sumfree_core::search::{canonical, compute_t, enumerate_maximal_sumfree, lev_construction, verify_main_theorem, SearchError, SearchOptions};
use sumfree_core::halves::{check_half_fact, enumerate_halves};
use sumfree_core::{enumerate_affine_subspaces, enumerate_hyperplanes, gl_order, pow3, AffineSubspace, GroupElement, TernarySet, TernaryVector};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn set(rows: &[&[u8]]) -> TernarySet {
    TernarySet::from_trit_rows(rows).unwrap()
}

fn p() -> TernarySet {
    set(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]])
}

/// Sum-free by the definition: no x, y in A (x = y allowed) with x + y in A.
fn sum_free_by_definition(a: &TernarySet) -> bool {
    let n = a.dim();
    let pts: Vec<TernaryVector> = a.iter().map(|i| TernaryVector::new(n, i).unwrap()).collect();
    pts.iter().all(|x| pts.iter().all(|y| !a.contains(*x + *y)))
}

/// Maximal by the definition: every outside point breaks sum-freeness.
fn maximal_by_definition(a: &TernarySet) -> bool {
    sum_free_by_definition(a)
        && (0..a.universe()).filter(|&x| !a.contains_index(x)).all(|x| {
            let mut b = a.clone();
            b.insert_index(x);
            !sum_free_by_definition(&b)
        })
}

/// Three distinct points form a line exactly when they sum to zero.
fn contains_line(a: &TernarySet) -> bool {
    let n = a.dim();
    let pts: Vec<TernaryVector> = a.iter().map(|i| TernaryVector::new(n, i).unwrap()).collect();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let third = (pts[i] + pts[j]).scale(2);
            if third != pts[i] && third != pts[j] && a.contains(third) {
                return true;
            }
        }
    }
    false
}

fn criterion_1() -> Outcome {
    let sets: Vec<TernarySet> = enumerate_primitive(1, false).map_err(|e| e.to_string())?.into_iter().map(|(s, _)| s).collect();
    let want = [TernarySet::from_indices(1, [1]).unwrap(), TernarySet::from_indices(1, [2]).unwrap()];
    ensure(sets == want, || format!("primitive sets {sets:?}"))?;
    let r = verify_main_theorem(1, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.verdict.is_verified(), || format!("{:?}", r.verdict))?;
    Ok("primitive sets are {1} and {2}; verify-main Verified".into())
}

fn criterion_2() -> Outcome {
    let lines: BTreeSet<TernarySet> = enumerate_affine_subspaces(&AffineSubspace::whole(2), 1)
        .unwrap()
        .into_iter()
        .filter(|l| !l.contains_origin())
        .map(|l| l.points())
        .collect();
    ensure(lines.len() == 8, || format!("{} lines avoid the origin", lines.len()))?;
    let primitive: BTreeSet<TernarySet> = primitive_library(2).unwrap().iter().map(|(s, _)| s.clone()).collect();
    ensure(primitive == lines, || format!("{} primitive sets", primitive.len()))?;
    let brute: BTreeSet<TernarySet> = (0u32..512)
        .map(|m| TernarySet::from_indices(2, (0..9).filter(|i| m >> i & 1 == 1)).unwrap())
        .filter(|s| s.len() >= 2 && maximal_by_definition(s))
        .collect();
    ensure(brute == lines, || format!("brute force found {} maximal sets of size >= 2", brute.len()))?;
    let t = compute_t(2, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(t == 0, || format!("t(2) = {t}"))?;
    Ok("primitive = 8 lines avoiding 0 = brute-force maximal sets of size >= 2 over 512 subsets; t(2) = 0".into())
}

fn criterion_3() -> Outcome {
    let opts = SearchOptions::default();
    let r = verify_main_theorem(3, &opts).map_err(|e| e.to_string())?;
    ensure(r.verdict.is_verified(), || format!("{:?}", r.verdict))?;
    let sizes: Vec<usize> = r.maximal.size_counts.keys().copied().collect();
    ensure(sizes == [5, 9], || format!("sizes above 27/6: {sizes:?}"))?;
    let cp = canonical(&p());
    let fives: Vec<&TernarySet> = r.maximal.sets.iter().filter(|s| s.len() == 5).collect();
    ensure(fives == [&cp.form], || format!("{} size-5 orbits", fives.len()))?;
    let all = enumerate_maximal_sumfree(3, 5, false, &opts).map_err(|e| e.to_string())?;
    let orbit = gl_order(3) / cp.stabilizer_order;
    let count5 = all.size_counts.get(&5).copied().unwrap_or(0);
    ensure(count5 == orbit, || format!("{count5} size-5 sets but the orbit of P has {orbit}"))?;
    let t = compute_t(3, &opts).map_err(|e| e.to_string())?;
    ensure(t == 5 && t == (pow3(2) + 1) / 2, || format!("t(3) = {t}"))?;
    Ok(format!("Verified; sizes {{5, 9}}; all {count5} size-5 sets lie in the orbit of P; t(3) = 5"))
}

fn criterion_4() -> Outcome {
    let library: BTreeSet<TernarySet> = primitive_library(3).unwrap().iter().map(|(s, _)| s.clone()).collect();
    let (mut candidates, mut sum_free) = (0usize, 0usize);
    let idx: Vec<usize> = (0..27).collect();
    let mut stack = vec![(0usize, Vec::<usize>::new())];
    while let Some((start, chosen)) = stack.pop() {
        if chosen.len() == 5 {
            candidates += 1;
            let a = TernarySet::from_indices(3, chosen.iter().copied()).unwrap();
            if !sum_free_by_definition(&a) {
                continue;
            }
            sum_free += 1;
            ensure(library.iter().any(|s| a.is_subset(s)), || format!("{:?} is not subprimitive", a.indices()))?;
            ensure(contains_line(&a), || format!("{:?} contains no line", a.indices()))?;
            continue;
        }
        for &i in &idx[start..] {
            let mut next = chosen.clone();
            next.push(i);
            stack.push((i + 1, next));
        }
    }
    ensure(candidates == 80_730, || format!("{candidates} candidates"))?;
    Ok(format!("{candidates} 5-subsets, {sum_free} sum-free, all subprimitive with a line; 0 exceptions"))
}

fn criterion_5() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let ck = dir.path().join("n4.json");
    let interrupted = SearchOptions { checkpoint: Some(ck.clone()), stop_after_tasks: Some(100), ..SearchOptions::default() };
    match verify_main_theorem(4, &interrupted) {
        Err(SearchError::Interrupted { completed, total }) => ensure(completed == 100 && total > 100, || format!("stopped at {completed} of {total}"))?,
        other => return Err(format!("expected an interruption, got {:?}", other.map(|r| r.verdict))),
    }
    let resumed = SearchOptions { checkpoint: Some(ck), ..SearchOptions::default() };
    let r = verify_main_theorem(4, &resumed).map_err(|e| e.to_string())?;
    ensure(r.min_size == 14, || format!("min_size {}", r.min_size))?;
    ensure(r.verdict.is_verified(), || format!("{:?}", r.verdict))?;
    let t = compute_t(4, &SearchOptions::default()).map_err(|e| e.to_string())?;
    ensure(t == 14 && t == (pow3(3) + 1) / 2, || format!("t(4) = {t}"))?;
    Ok(format!("Verified with min_size 14 after checkpoint resume ({} orbits); t(4) = 14", r.maximal.sets.len()))
}

fn criterion_6() -> Outcome {
    for n in 3..=8 {
        let (a, _) = lev_construction(n).map_err(|e| e.to_string())?;
        let want = (pow3(n - 1) + 1) / 2;
        ensure(a.len() == want, || format!("n = {n}: size {} != {want}", a.len()))?;
        ensure(a.is_sum_free() && a.is_maximal_sum_free(), || format!("n = {n}: not maximal sum-free"))?;
        if n <= 5 {
            ensure(maximal_by_definition(&a), || format!("n = {n}: definition check fails"))?;
        }
        let sym = a.sym_group().map_err(|e| e.to_string())?;
        ensure(sym.dim() == 0, || format!("n = {n}: Sym has dimension {}", sym.dim()))?;
    }
    Ok("n = 3..8: sizes (3^(n-1)+1)/2, maximal sum-free, Sym = {0}".into())
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut entries: Vec<PrimitiveEntry> = (1..=3).flat_map(|n| primitive_library(n).unwrap().iter().cloned()).collect();
    for (s, c) in enumerate_primitive(4, true).map_err(|e| e.to_string())? {
        entries.push((s.clone(), c.clone()));
        for _ in 0..50 {
            let g = GroupElement::random(4, &mut rng);
            entries.push((g.apply_set(&s), c.transform(&g)));
        }
    }
    let mut counts = [0usize; 3];
    for (s, c) in &entries {
        for (slot, (id, inst)) in [
            (LemmaId::CardFormula, LemmaInstance::Certified(c.clone())),
            (LemmaId::FourSum, LemmaInstance::Set(s.clone())),
            (LemmaId::HyperplaneBound, LemmaInstance::Set(s.clone())),
        ]
        .into_iter()
        .enumerate()
        {
            let r = check_lemma(id, &inst).map_err(|e| e.to_string())?;
            ensure(!r.is_counterexample(), || format!("{id} on {:?}: {r:?}", s.indices()))?;
            counts[slot] += usize::from(r.is_holds());
        }
    }
    let mut halves = 0;
    for h in enumerate_hyperplanes(3, true) {
        for x in h.points().iter() {
            let u = AffineSubspace::point(TernaryVector::new(3, x).unwrap());
            let count = enumerate_halves(&h, &u).map_err(|e| e.to_string())?.len();
            ensure(count == 16, || format!("{count} halves"))?;
            ensure(check_half_fact(&h, &u).map_err(|e| e.to_string())?, || "a half contains no line".into())?;
            halves += count;
        }
    }
    let pairs: Vec<(TernarySet, TernarySet)> = (0..10_000).map(|i| sample_kneser_pair(1 + i % 3, &mut rng)).collect();
    for (i, (a, b)) in pairs.iter().enumerate() {
        let r = kneser_check(a, b).map_err(|e| e.to_string())?;
        ensure(r.is_holds(), || format!("Kneser fails: {r:?}"))?;
        if i < 100 {
            ensure(a.sumset(b).unwrap() == slow_sumset(a, b), || "fast and slow sumsets differ".into())?;
            let (s, ak, bk, k) = kneser_check_slow(a, b);
            ensure(s + k >= ak + bk, || "slow Kneser check fails".into())?;
        }
    }
    for i in 0..1_000 {
        let (a, b, c) = sample_stabilizer_triple(1 + i % 3, &mut rng);
        let w = find_stabilizer_witness(&a, &b, &c).map_err(|e| e.to_string())?;
        ensure(verify_witness_slow(&a, &b, &c, &w), || "witness fails the slow verification".into())?;
    }
    Ok(format!(
        "(a) {} (b) {} (c) {} primitive sets, (d) {halves} halves, (e) 10000 Kneser pairs with 100 slow cross-checks, (f) 1000 triples; 0 counterexamples",
        counts[0], counts[1], counts[2]
    ))
}

fn criterion_8() -> Outcome {
    let run = |jobs: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_sumfree"))
            .args(["run-suite", "standard", "--seed", "2024", "--jobs", jobs, "--format", "json"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(o.status.code() == Some(0), || format!("jobs {jobs}: exit {:?}", o.status.code()))?;
        Ok::<Vec<u8>, String>(o.stdout)
    };
    let runs = [run("1")?, run("1")?, run("8")?, run("8")?];
    ensure(runs.iter().all(|r| r == &runs[0]), || "reports differ".into())?;
    Ok(format!("4 standard-suite runs (jobs 1, 1, 8, 8), byte-identical {}-byte JSON reports", runs[0].len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome, Duration); 8] = [
        (1, "n=1 classification", criterion_1, Duration::from_secs(1)),
        (2, "n=2 classification", criterion_2, Duration::from_secs(1)),
        (3, "n=3 theorem", criterion_3, Duration::from_secs(60)),
        (4, "5-subset sweep of F_3^3", criterion_4, Duration::from_secs(300)),
        (5, "n=4 verification", criterion_5, Duration::from_secs(8 * 3600)),
        (6, "construction for n=3..8", criterion_6, Duration::from_secs(10)),
        (7, "lemma property suites", criterion_7, Duration::from_secs(600)),
        (8, "determinism", criterion_8, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (no, title, f, budget) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(_) if elapsed > budget => Err(format!("took {:.2} s", elapsed.as_secs_f64())),
            o => o,
        };
        let (mark, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!("criterion {no} {mark} {title}: {detail} [{:.2} s, budget {} s]", elapsed.as_secs_f64(), budget.as_secs());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
