//! The classification theorem checked by two independent enumerations:
//! maximal sum-free sets from the backtracking engine and primitive sets
//! from the recursive definition, compared as sets of orbit representatives.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use super::{check_dim, enumerate_maximal_sumfree, EnumerationReport, SearchError, SearchOptions};
use crate::gf3::{pow3, TernarySet};
use crate::primitive::{enumerate_primitive, recognize_primitive, validate_certificate};

/// Which half of the equivalence an offending set breaks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// A dense maximal sum-free set without a certificate.
    MaximalNotPrimitive,
    /// A primitive set that is not dense maximal sum-free.
    PrimitiveNotMaximal,
    /// The two enumerations disagree although each set passed its own test.
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum VerificationVerdict {
    Verified,
    Counterexample { direction: Direction, set: TernarySet, reason: String },
}

impl VerificationVerdict {
    pub fn is_verified(&self) -> bool {
        matches!(self, VerificationVerdict::Verified)
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub dim: usize,
    /// Smallest size above `3^n / 6`.
    pub min_size: usize,
    pub verdict: VerificationVerdict,
    pub maximal: EnumerationReport,
    pub primitive_orbits: usize,
}

impl VerificationReport {
    pub fn to_json(&self, timing: bool) -> Value {
        json!({
            "dim": self.dim,
            "min_size": self.min_size,
            "result": self.verdict,
            "maximal_orbits": self.maximal.sets.len(),
            "primitive_orbits": self.primitive_orbits,
            "maximal": self.maximal.to_json(timing),
        })
    }
}

/// Smallest integer strictly above `3^n / 6`.
pub fn dense_threshold(n: usize) -> usize {
    pow3(n) / 6 + 1
}

pub fn verify_main_theorem(n: usize, opts: &SearchOptions) -> Result<VerificationReport, SearchError> {
    check_dim(n)?;
    let min_size = dense_threshold(n);
    let maximal = enumerate_maximal_sumfree(n, min_size, true, opts)?;
    let primitive = enumerate_primitive(n, true).expect("dimension is supported");
    let verdict = compare(&maximal.sets, &primitive, min_size);
    Ok(VerificationReport { dim: n, min_size, verdict, primitive_orbits: primitive.len(), maximal })
}

fn compare(maximal: &[TernarySet], primitive: &[(TernarySet, crate::primitive::PrimitiveCertificate)], min_size: usize) -> VerificationVerdict {
    let cx = |direction, set: &TernarySet, reason: &str| VerificationVerdict::Counterexample { direction, set: set.clone(), reason: reason.to_string() };
    for a in maximal {
        match recognize_primitive(a) {
            None => return cx(Direction::MaximalNotPrimitive, a, "no certificate exists"),
            Some(c) if validate_certificate(&c).as_ref() != Ok(a) => {
                return cx(Direction::MaximalNotPrimitive, a, "recognized certificate does not validate to the set")
            }
            Some(_) => {}
        }
    }
    for (a, c) in primitive {
        if validate_certificate(c).as_ref() != Ok(a) {
            return cx(Direction::PrimitiveNotMaximal, a, "generated certificate does not validate to the set");
        }
        if !a.is_maximal_sum_free() {
            return cx(Direction::PrimitiveNotMaximal, a, "not maximal sum-free");
        }
        if a.len() < min_size {
            return cx(Direction::PrimitiveNotMaximal, a, "too small");
        }
    }
    let left: BTreeSet<&TernarySet> = maximal.iter().collect();
    let right: BTreeSet<&TernarySet> = primitive.iter().map(|(s, _)| s).collect();
    if let Some(a) = left.symmetric_difference(&right).next() {
        let reason = if left.contains(a) { "maximal orbit missing from the primitive enumeration" } else { "primitive orbit missing from the maximal enumeration" };
        return cx(Direction::Mismatch, a, reason);
    }
    VerificationVerdict::Verified
}

/// Largest size of an aperiodic maximal sum-free subset of F_3^n, or 0.
pub fn compute_t(n: usize, opts: &SearchOptions) -> Result<usize, SearchError> {
    check_dim(n)?;
    let best = |r: &EnumerationReport| r.sets.iter().zip(&r.sym_dims).filter(|(_, &d)| d == 0).map(|(s, _)| s.len()).max();
    // aperiodic sets above the dense threshold are the large ones; only if
    // there are none does the search go down to size 1
    let dense = enumerate_maximal_sumfree(n, dense_threshold(n), true, opts)?;
    if let Some(t) = best(&dense) {
        return Ok(t);
    }
    let all = enumerate_maximal_sumfree(n, 1, true, opts)?;
    Ok(best(&all).unwrap_or(0))
}
