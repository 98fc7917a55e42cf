//! Kneser's sumset inequality and its consequences as executable checks.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::check::{CheckResult, Witness};
use crate::error::{Gf3Error, Result};
use crate::gf3::{add_index, pow3, sub_index, TernarySet, TernaryVector};
use crate::subspace::{enumerate_linear_subspaces, AffineSubspace, LinearSubspace};

fn same_dim(a: &TernarySet, b: &TernarySet) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Gf3Error::DimensionMismatch { left: a.dim(), right: b.dim() });
    }
    Ok(())
}

/// `A + K` for a linear subspace `K`.
pub fn add_subspace(a: &TernarySet, k: &LinearSubspace) -> TernarySet {
    a.sumset(&k.points()).expect("same dimension")
}

/// Checks `|A + B| >= |A + K| + |B + K| - |K|` with `K = Sym(A + B)`.
pub fn kneser_check(a: &TernarySet, b: &TernarySet) -> Result<CheckResult> {
    same_dim(a, b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Gf3Error::EmptySet);
    }
    let s = a.sumset(b)?;
    let k = s.sym_group()?;
    let (ak, bk) = (add_subspace(a, &k).len(), add_subspace(b, &k).len());
    let witness = Witness::Kneser { sumset: s.len(), a_plus_k: ak, b_plus_k: bk, k: k.len(), equality: s.len() + k.len() == ak + bk };
    if s.len() + k.len() < ak + bk {
        return Ok(CheckResult::counterexample(format!("|A+B| = {} < |A+K| + |B+K| - |K| = {} + {} - {}", s.len(), ak, bk, k.len())));
    }
    Ok(CheckResult::holds_with("Kneser bound holds", witness))
}

/// `|A| + |B| > |G|` implies `A + B = G`.
pub fn full_sumset_check(a: &TernarySet, b: &TernarySet) -> Result<CheckResult> {
    same_dim(a, b)?;
    if a.len() + b.len() <= a.universe() {
        return Ok(CheckResult::not_applicable("|A| + |B| <= |G|"));
    }
    let s = a.sumset(b)?;
    if s.len() != s.universe() {
        return Ok(CheckResult::counterexample(format!("A + B misses {} points", s.universe() - s.len())));
    }
    Ok(CheckResult::holds("A + B = G"))
}

/// `|A| > |V|/3` implies `A - A = V`.
pub fn difference_cover_check(a: &TernarySet) -> CheckResult {
    if 3 * a.len() <= a.universe() {
        return CheckResult::not_applicable("|A| <= |V|/3");
    }
    let d = a.difference_set(a).expect("same dimension");
    if d.len() != d.universe() {
        return CheckResult::counterexample(format!("A - A misses {} points", d.universe() - d.len()));
    }
    CheckResult::holds("A - A = V")
}

/// A subgroup `K` with `|A + K| + |B + K| = |G|` and a `K`-coset holding `C`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerWitness {
    pub k: LinearSubspace,
    pub coset_of_c: AffineSubspace,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("dimension mismatch among A, B and C")]
    DimensionMismatch,
    #[error("hypothesis violated: C is empty")]
    EmptyC,
    #[error("hypothesis violated: A + B meets C")]
    SumsetMeetsC,
    #[error("hypothesis violated: 2|A| + 2|B| + |C| = {lhs} is not above 2|G| = {rhs}")]
    TooSmall { lhs: usize, rhs: usize },
    #[error("internal error: constructed witness fails verification ({0})")]
    Verification(String),
}

impl StabilizerError {
    /// Stable code per hypothesis.
    pub fn code(&self) -> &'static str {
        match self {
            StabilizerError::DimensionMismatch => "dimension_mismatch",
            StabilizerError::EmptyC => "empty_c",
            StabilizerError::SumsetMeetsC => "sumset_meets_c",
            StabilizerError::TooSmall { .. } => "too_small",
            StabilizerError::Verification(_) => "verification",
        }
    }
}

/// Checks the hypotheses shared by the finder and the exhaustive oracle.
fn stabilizer_hypotheses(a: &TernarySet, b: &TernarySet, c: &TernarySet) -> std::result::Result<(), StabilizerError> {
    if a.dim() != b.dim() || a.dim() != c.dim() {
        return Err(StabilizerError::DimensionMismatch);
    }
    if c.is_empty() {
        return Err(StabilizerError::EmptyC);
    }
    let (lhs, rhs) = (2 * a.len() + 2 * b.len() + c.len(), 2 * a.universe());
    if lhs <= rhs {
        return Err(StabilizerError::TooSmall { lhs, rhs });
    }
    if !a.sumset(b).expect("same dimension").is_disjoint(c) {
        return Err(StabilizerError::SumsetMeetsC);
    }
    Ok(())
}

/// Builds `K` as in the argument for the statement: the whole group when
/// exactly one of `A`, `B` is empty, otherwise `Sym(A + B)`. The result is
/// verified before it is returned.
pub fn find_stabilizer_witness(a: &TernarySet, b: &TernarySet, c: &TernarySet) -> std::result::Result<StabilizerWitness, StabilizerError> {
    stabilizer_hypotheses(a, b, c)?;
    let n = a.dim();
    let k = if a.is_empty() || b.is_empty() {
        LinearSubspace::whole(n)
    } else {
        a.sumset(b).expect("same dimension").sym_group().expect("A + B is nonempty")
    };
    let first = c.vectors().next().expect("C is nonempty");
    let w = StabilizerWitness { coset_of_c: k.coset(first), k };
    verify_witness(a, b, c, &w).map_err(StabilizerError::Verification)?;
    Ok(w)
}

fn verify_witness(a: &TernarySet, b: &TernarySet, c: &TernarySet, w: &StabilizerWitness) -> std::result::Result<(), String> {
    let total = add_subspace(a, &w.k).len() + add_subspace(b, &w.k).len();
    if total != a.universe() {
        return Err(format!("|A + K| + |B + K| = {total}"));
    }
    if w.coset_of_c.direction().ok().as_ref() != Some(&w.k) {
        return Err("coset has the wrong direction".into());
    }
    if !c.is_subset(&w.coset_of_c.points()) {
        return Err("C leaves the coset".into());
    }
    Ok(())
}

/// `A + B` by looping over all pairs.
pub fn slow_sumset(a: &TernarySet, b: &TernarySet) -> TernarySet {
    let n = a.dim();
    let mut out = TernarySet::empty(n);
    for x in a.iter() {
        for y in b.iter() {
            out.insert_index(add_index(n, x, y));
        }
    }
    out
}

/// `Sym(A)` by testing every translation.
pub fn slow_sym(a: &TernarySet) -> TernarySet {
    let n = a.dim();
    let mut out = TernarySet::empty(n);
    for t in 0..pow3(n) {
        if a.iter().all(|x| a.contains_index(add_index(n, x, t))) {
            out.insert_index(t);
        }
    }
    out
}

/// Kneser check from first principles: pairwise sumset, translation scan for
/// the stabilizer, and `X + K` built element by element.
pub fn kneser_check_slow(a: &TernarySet, b: &TernarySet) -> (usize, usize, usize, usize) {
    let s = slow_sumset(a, b);
    let k = slow_sym(&s);
    let (ak, bk) = (slow_sumset(a, &k).len(), slow_sumset(b, &k).len());
    (s.len(), ak, bk, k.len())
}

/// Re-checks a witness coset by coset: every coset of `K` is scanned to
/// count those met by `A` and by `B`, and `C` is compared against its own
/// coset representative.
pub fn verify_witness_slow(a: &TernarySet, b: &TernarySet, c: &TernarySet, w: &StabilizerWitness) -> bool {
    let n = a.dim();
    let kpts: Vec<usize> = w.k.points().iter().collect();
    let mut seen = TernarySet::empty(n);
    let (mut a_cosets, mut b_cosets) = (0, 0);
    for x in 0..pow3(n) {
        if seen.contains_index(x) {
            continue;
        }
        let coset: Vec<usize> = kpts.iter().map(|&k| add_index(n, x, k)).collect();
        for &y in &coset {
            seen.insert_index(y);
        }
        a_cosets += coset.iter().any(|&y| a.contains_index(y)) as usize;
        b_cosets += coset.iter().any(|&y| b.contains_index(y)) as usize;
    }
    let cosets_ok = (a_cosets + b_cosets) * kpts.len() == pow3(n);
    let c0 = c.iter().next();
    let c_ok = c0.is_some_and(|c0| c.iter().all(|y| w.k.contains_index(sub_index(n, y, c0))) && w.coset_of_c.contains_index(c0));
    cosets_ok && c_ok
}

/// Searches all linear subspaces for a witness; usable for n <= 3.
pub fn exhaustive_stabilizer_witness(a: &TernarySet, b: &TernarySet, c: &TernarySet) -> Option<StabilizerWitness> {
    stabilizer_hypotheses(a, b, c).ok()?;
    let n = a.dim();
    let first = c.vectors().next()?;
    (0..=n).flat_map(|d| enumerate_linear_subspaces(n, d)).find_map(|k| {
        let w = StabilizerWitness { coset_of_c: k.coset(first), k };
        verify_witness(a, b, c, &w).is_ok().then_some(w)
    })
}

/// A random subset where each point is kept with probability `p`.
pub fn random_set<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> TernarySet {
    TernarySet::from_indices(n, (0..pow3(n)).filter(|_| rng.gen_bool(p))).expect("valid indices")
}

/// A random pair of nonempty sets with independent densities.
pub fn sample_kneser_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (TernarySet, TernarySet) {
    let pick = |rng: &mut R| loop {
        let p = rng.gen_range(0.05..0.7);
        let s = random_set(n, p, rng);
        if !s.is_empty() {
            return s;
        }
    };
    let a = pick(rng);
    let b = pick(rng);
    (a, b)
}

fn random_subspace<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> LinearSubspace {
    loop {
        let gens: Vec<TernaryVector> = (0..d).map(|_| TernaryVector::new(n, rng.gen_range(0..pow3(n))).expect("in range")).collect();
        let k = LinearSubspace::span(n, &gens).expect("same dimension");
        if k.dim() == d {
            return k;
        }
    }
}

/// A triple satisfying the hypotheses of the stabilizer statement.
///
/// A random proper subgroup `K` and a coset `c + K` are fixed. `A` is a
/// union of random `K`-cosets, `B` the union of the cosets outside
/// `c - A`, so `|A| + |B| = |G|` and `A + B` misses `c + K`. `C` is a random
/// nonempty part of `c + K`, and fewer than `|C|/2` points are then
/// removed from `A ∪ B`.
pub fn sample_stabilizer_triple<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (TernarySet, TernarySet, TernarySet) {
    let size = pow3(n);
    let d = rng.gen_range(0..n);
    let k = random_subspace(n, d, rng);
    let reps: Vec<usize> = (0..size).filter(|&x| k.reduce(TernaryVector::new(n, x).unwrap()).index() == x).collect();
    let c_rep = *reps.choose(rng).expect("nonempty");
    let density = rng.gen_range(0.0..1.0);
    let a_reps: Vec<usize> = reps.iter().copied().filter(|_| rng.gen_bool(density)).collect();
    let forbidden: Vec<usize> = a_reps.iter().map(|&x| k.reduce(TernaryVector::new(n, sub_index(n, c_rep, x)).unwrap()).index()).collect();
    let b_reps: Vec<usize> = reps.iter().copied().filter(|r| !forbidden.contains(r)).collect();
    let kpts = k.points();
    let expand = |rs: &[usize]| {
        let mut s = TernarySet::empty(n);
        for &r in rs {
            for y in kpts.iter() {
                s.insert_index(add_index(n, r, y));
            }
        }
        s
    };
    let (mut a, mut b) = (expand(&a_reps), expand(&b_reps));
    let mut c = TernarySet::empty(n);
    for y in kpts.iter() {
        if rng.gen_bool(0.6) {
            c.insert_index(add_index(n, c_rep, y));
        }
    }
    if c.is_empty() {
        c.insert_index(c_rep);
    }
    let removals = (c.len() - 1) / 2;
    for _ in 0..removals {
        let target = if rng.gen_bool(0.5) { &mut a } else { &mut b };
        if let Some(&x) = target.indices().choose(rng) {
            target.remove_index(x);
        }
    }
    (a, b, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(rows: &[&[u8]]) -> TernarySet {
        TernarySet::from_trit_rows(rows).unwrap()
    }

    #[test]
    fn kneser_examples() {
        let v = TernarySet::full(2);
        match kneser_check(&v, &v).unwrap() {
            CheckResult::Holds { witness: Some(Witness::Kneser { equality, .. }), .. } => assert!(equality),
            other => panic!("{other:?}"),
        }
        let line = set(&[&[1, 0], &[1, 1], &[1, 2]]);
        match kneser_check(&line, &line).unwrap() {
            CheckResult::Holds { witness: Some(Witness::Kneser { sumset, a_plus_k, b_plus_k, k, equality }), .. } => {
                assert_eq!((sumset, a_plus_k, b_plus_k, k, equality), (3, 3, 3, 3, true));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(kneser_check(&line, &TernarySet::empty(2)).unwrap_err(), Gf3Error::EmptySet);
    }

    #[test]
    fn full_sumset_examples() {
        let v = TernarySet::full(2);
        assert!(full_sumset_check(&v, &v).unwrap().is_holds());
        let line = set(&[&[1, 0], &[1, 1], &[1, 2]]);
        let six = line.complement();
        assert!(full_sumset_check(&line, &six).unwrap().is_not_applicable());
    }

    #[test]
    fn difference_cover_over_all_four_subsets() {
        let mut count = 0;
        for m in 0u32..512 {
            if m.count_ones() != 4 {
                continue;
            }
            let a = TernarySet::from_indices(2, (0..9).filter(|i| m >> i & 1 == 1)).unwrap();
            assert!(difference_cover_check(&a).is_holds());
            count += 1;
        }
        assert_eq!(count, 126);
        assert!(difference_cover_check(&set(&[&[1, 0], &[1, 1], &[1, 2]])).is_not_applicable());
    }

    #[test]
    fn stabilizer_degenerate_and_hypotheses() {
        let b = set(&[&[1, 0]]);
        let c = TernarySet::full(2).difference(&b);
        let w = find_stabilizer_witness(&TernarySet::empty(2), &b, &c).unwrap_err();
        assert_eq!(w.code(), "too_small");
        // exactly one of A, B empty: K is the whole group
        let c = set(&[&[0, 1]]);
        let all = TernarySet::full(2);
        assert_eq!(find_stabilizer_witness(&TernarySet::empty(2), &all, &c).unwrap().k.dim(), 2);
        let a = set(&[&[1, 0], &[1, 1]]);
        let e = find_stabilizer_witness(&a, &a, &c).unwrap_err();
        assert_eq!(e, StabilizerError::TooSmall { lhs: 9, rhs: 18 });
        assert_eq!(find_stabilizer_witness(&a, &a, &TernarySet::empty(2)).unwrap_err(), StabilizerError::EmptyC);
    }

    #[test]
    fn sampled_triples_yield_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(2..=3);
            let (a, b, c) = sample_stabilizer_triple(n, &mut rng);
            let w = find_stabilizer_witness(&a, &b, &c).expect("sampler meets the hypotheses");
            assert!(verify_witness_slow(&a, &b, &c, &w));
            assert!(exhaustive_stabilizer_witness(&a, &b, &c).is_some());
        }
    }

    #[test]
    fn fast_and_slow_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(1..=3);
            let (a, b) = sample_kneser_pair(n, &mut rng);
            assert_eq!(a.sumset(&b).unwrap(), slow_sumset(&a, &b));
            assert_eq!(a.sym_group().unwrap().points(), slow_sym(&a));
            match kneser_check(&a, &b).unwrap() {
                CheckResult::Holds { witness: Some(Witness::Kneser { sumset, a_plus_k, b_plus_k, k, .. }), .. } => {
                    assert_eq!((sumset, a_plus_k, b_plus_k, k), kneser_check_slow(&a, &b));
                }
                other => panic!("{other:?}"),
            }
        }
    }
}
