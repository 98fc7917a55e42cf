//! Checkable implications about dense sum-free sets.
//!
//! Statements whose hypotheses include the induction assumption on lower
//! dimensions are checked only where subprimitivity is decidable here
//! (n <= 4), and that assumption is itself covered by the verification of
//! the classification in dimensions up to 4.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::check::{CheckResult, Witness};
use crate::gf3::{pow3, TernarySet};
use crate::primitive::lemmas::affine_subspace_within;
use crate::primitive::{primitive_superset, SubprimitiveError};
use crate::subspace::{affine_hull, enumerate_affine_subspaces, enumerate_hyperplanes, AffineSubspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PropId {
    HyperplaneCover,
    EmptySlice,
    ConclusionGrid,
    FiveInCube,
    FourPoint,
    LineEverywhere,
    ParallelLines,
    Dim4,
    NoZero4A,
    Codim2Slice,
}

impl PropId {
    pub const ALL: [PropId; 10] = [
        PropId::HyperplaneCover,
        PropId::EmptySlice,
        PropId::ConclusionGrid,
        PropId::FiveInCube,
        PropId::FourPoint,
        PropId::LineEverywhere,
        PropId::ParallelLines,
        PropId::Dim4,
        PropId::NoZero4A,
        PropId::Codim2Slice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PropId::HyperplaneCover => "prop_hyperplane_cover",
            PropId::EmptySlice => "prop_empty_slice",
            PropId::ConclusionGrid => "conclusion_grid",
            PropId::FiveInCube => "five_in_cube",
            PropId::FourPoint => "four_point",
            PropId::LineEverywhere => "line_everywhere",
            PropId::ParallelLines => "parallel_lines",
            PropId::Dim4 => "dim4",
            PropId::NoZero4A => "no_zero_4A",
            PropId::Codim2Slice => "codim2_slice",
        }
    }
}

impl fmt::Display for PropId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown proposition id `{0}`")]
pub struct UnknownProp(pub String);

impl FromStr for PropId {
    type Err = UnknownProp;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| UnknownProp(s.to_string()))
    }
}

/// Extra input for the statements that quantify over a hyperplane `H`.
/// Without one, the first hyperplane in canonical order satisfying the
/// hypotheses is used.
#[derive(Clone, Debug, Default)]
pub struct PropParams {
    pub hyperplane: Option<AffineSubspace>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropError {
    #[error("the hyperplane lives in dimension {got}, the set in dimension {want}")]
    DimensionMismatch { want: usize, got: usize },
    #[error("the given subspace is not a hyperplane")]
    NotHyperplane,
}

pub fn check_proposition(id: PropId, a: &TernarySet, params: &PropParams) -> Result<CheckResult, PropError> {
    let n = a.dim();
    if let Some(h) = &params.hyperplane {
        if h.ambient_dim() != n {
            return Err(PropError::DimensionMismatch { want: n, got: h.ambient_dim() });
        }
        if h.dim() != Some(n - 1) {
            return Err(PropError::NotHyperplane);
        }
    }
    Ok(match id {
        PropId::HyperplaneCover => with_hyperplane(a, params, hyperplane_cover_hyp),
        PropId::EmptySlice => with_hyperplane(a, params, empty_slice_hyp),
        PropId::ConclusionGrid => conclusion_grid(a),
        PropId::FiveInCube => five_in_cube(a),
        PropId::FourPoint => four_point(a),
        PropId::LineEverywhere => line_everywhere(a),
        PropId::ParallelLines => parallel_lines(a),
        PropId::Dim4 => dim4(a),
        PropId::NoZero4A => no_zero_4a(a),
        PropId::Codim2Slice => codim2_slice(a),
    })
}

fn dense(a: &TernarySet) -> bool {
    6 * a.len() > pow3(a.dim())
}

fn require_dense_sum_free(a: &TernarySet) -> Result<(), CheckResult> {
    if !a.is_sum_free() {
        return Err(CheckResult::not_applicable("A is not sum-free"));
    }
    if !dense(a) {
        return Err(CheckResult::not_applicable("|A| <= |V|/6"));
    }
    Ok(())
}

/// Subprimitivity as the conclusion of a statement.
fn conclude_subprimitive(a: &TernarySet, what: &str) -> CheckResult {
    match primitive_superset(a) {
        Ok(Some((_, cert))) => CheckResult::holds_with(format!("{what}: A is subprimitive"), Witness::Certificate { certificate: cert }),
        Ok(None) => CheckResult::counterexample(format!("{what}: A = {:?} has no primitive superset", a.indices())),
        Err(SubprimitiveError::UnsupportedDimension(n)) => CheckResult::not_applicable(format!("subprimitivity is not decided in dimension {n}")),
    }
}

type HyperplaneHypothesis = fn(&TernarySet, &AffineSubspace) -> Result<(), &'static str>;

fn with_hyperplane(a: &TernarySet, params: &PropParams, hyp: HyperplaneHypothesis) -> CheckResult {
    if let Err(na) = require_dense_sum_free(a) {
        return na;
    }
    let chosen = match &params.hyperplane {
        Some(h) => match hyp(a, h) {
            Ok(()) => h.clone(),
            Err(reason) => return CheckResult::not_applicable(reason),
        },
        None => match enumerate_hyperplanes(a.dim(), true).into_iter().find(|h| hyp(a, h).is_ok()) {
            Some(h) => h,
            None => return CheckResult::not_applicable("no hyperplane satisfies the hypotheses"),
        },
    };
    let base = chosen.base_point().map(|b| b.trits()).unwrap_or_default();
    conclude_subprimitive(a, &format!("hypotheses hold for H through {base:?}"))
}

fn hyperplane_cover_hyp(a: &TernarySet, h: &AffineSubspace) -> Result<(), &'static str> {
    if h.contains_origin() {
        return Err("H contains the origin");
    }
    let dir = h.direction().expect("nonempty").points();
    if !a.is_disjoint(&dir) {
        return Err("A meets [H]");
    }
    let neg_h = h.negate();
    let hull = affine_hull(&a.intersection(&neg_h.points()));
    // the empty subspace counts as proper
    if hull == neg_h {
        return Err("aff(A ∩ -H) is all of -H");
    }
    Ok(())
}

fn empty_slice_hyp(a: &TernarySet, h: &AffineSubspace) -> Result<(), &'static str> {
    if h.contains_origin() {
        return Err("H contains the origin");
    }
    if !a.is_disjoint(&h.points()) {
        return Err("A meets H");
    }
    let dir = h.direction().expect("nonempty");
    if affine_hull(&a.intersection(&dir.points())) == *dir.as_affine() {
        return Err("aff(A ∩ [H]) = [H]");
    }
    Ok(())
}

/// `V_ij`: the vectors whose first two coordinates are `(i, j)`.
fn grid_cell(n: usize, i: usize, j: usize) -> TernarySet {
    TernarySet::from_indices(n, (0..pow3(n)).filter(|x| x % 3 == i && (x / 3) % 3 == j)).expect("valid indices")
}

fn conclusion_grid(a: &TernarySet) -> CheckResult {
    let n = a.dim();
    if n < 2 {
        return CheckResult::not_applicable("needs n >= 2");
    }
    if !a.is_sum_free() {
        return CheckResult::not_applicable("A is not sum-free");
    }
    if 2 * a.len() <= pow3(n - 1) {
        return CheckResult::not_applicable("|A| <= 3^(n-1)/2");
    }
    if 2 * a.intersection_len(&grid_cell(n, 0, 1)) <= pow3(n - 2) {
        return CheckResult::not_applicable("|A ∩ V_01| <= 3^(n-2)/2");
    }
    for i in 0..3 {
        let first = a.is_disjoint(&grid_cell(n, 1, i));
        let second = a.is_disjoint(&grid_cell(n, 2, (4 - i) % 3));
        if !first && !second {
            return CheckResult::not_applicable(format!("A meets both V_1{i} and V_2{}", (4 - i) % 3));
        }
    }
    conclude_subprimitive(a, "grid hypotheses hold")
}

fn line_in(a: &TernarySet) -> Option<AffineSubspace> {
    affine_subspace_within(a, 1)
}

fn five_in_cube(a: &TernarySet) -> CheckResult {
    if a.dim() != 3 {
        return CheckResult::not_applicable("the statement is about F_3^3");
    }
    if !a.is_sum_free() || a.len() < 5 {
        return CheckResult::not_applicable("needs a sum-free set with at least 5 points");
    }
    let sub = conclude_subprimitive(a, "sum-free with |A| >= 5");
    if !sub.is_holds() {
        return sub;
    }
    match line_in(a) {
        Some(l) => CheckResult::holds_with("subprimitive and contains a line", Witness::Subspace { subspace: l }),
        None => CheckResult::counterexample(format!("{:?} contains no line", a.indices())),
    }
}

fn four_point(a: &TernarySet) -> CheckResult {
    if a.dim() != 3 || a.len() != 4 {
        return CheckResult::not_applicable("needs four points of F_3^3");
    }
    match primitive_superset(a) {
        Ok(Some(_)) => {}
        _ => return CheckResult::not_applicable("A is not subprimitive"),
    }
    let hull = affine_hull(a);
    if hull.dim() < Some(3) {
        return CheckResult::holds_with("A is coplanar", Witness::Subspace { subspace: hull });
    }
    let pts: Vec<_> = a.vectors().collect();
    for (k, &p) in pts.iter().enumerate() {
        let rest = pts.iter().enumerate().filter(|&(m, _)| m != k).fold(crate::TernaryVector::zero(3), |s, (_, &q)| s + q);
        if rest == p {
            return CheckResult::holds(format!("{:?} is the sum of the other three", p.trits()));
        }
    }
    CheckResult::counterexample(format!("{:?} is neither coplanar nor has a point summing the rest", a.indices()))
}

fn line_everywhere(a: &TernarySet) -> CheckResult {
    if a.dim() < 3 {
        return CheckResult::not_applicable("needs n >= 3");
    }
    if let Err(na) = require_dense_sum_free(a) {
        return na;
    }
    match line_in(a) {
        Some(l) => CheckResult::holds_with("A contains a line", Witness::Subspace { subspace: l }),
        None => CheckResult::counterexample(format!("{:?} contains no line", a.indices())),
    }
}

/// Two distinct lines in `a` with the same direction.
pub(crate) fn two_parallel_lines(a: &TernarySet) -> Option<(AffineSubspace, AffineSubspace)> {
    let lines: Vec<AffineSubspace> =
        enumerate_affine_subspaces(&AffineSubspace::whole(a.dim()), 1).ok()?.into_iter().filter(|l| l.points().is_subset(a)).collect();
    for (i, l) in lines.iter().enumerate() {
        for m in &lines[i + 1..] {
            if l.basis() == m.basis() {
                return Some((l.clone(), m.clone()));
            }
        }
    }
    None
}

fn require_dim4_large(a: &TernarySet) -> Result<(), CheckResult> {
    if a.dim() != 4 {
        return Err(CheckResult::not_applicable("the statement is about F_3^4"));
    }
    if !a.is_sum_free() || a.len() < 14 {
        return Err(CheckResult::not_applicable("needs a sum-free set with at least 14 points"));
    }
    Ok(())
}

fn parallel_lines(a: &TernarySet) -> CheckResult {
    if let Err(na) = require_dim4_large(a) {
        return na;
    }
    if two_parallel_lines(a).is_none() {
        return CheckResult::not_applicable("A contains no two parallel lines");
    }
    conclude_subprimitive(a, "two parallel lines")
}

fn dim4(a: &TernarySet) -> CheckResult {
    if let Err(na) = require_dim4_large(a) {
        return na;
    }
    conclude_subprimitive(a, "|A| >= 14 in F_3^4")
}

fn no_zero_4a(a: &TernarySet) -> CheckResult {
    if let Err(na) = require_dense_sum_free(a) {
        return na;
    }
    if a.k_fold_sumset(4).contains_index(0) {
        return CheckResult::counterexample(format!("0 lies in 4A for {:?}", a.indices()));
    }
    CheckResult::holds("0 is not in 4A")
}

fn codim2_slice(a: &TernarySet) -> CheckResult {
    let n = a.dim();
    if n < 3 {
        return CheckResult::not_applicable("needs n >= 3");
    }
    if let Err(na) = require_dense_sum_free(a) {
        return na;
    }
    let need = (pow3(n - 2) + 3).div_ceil(2);
    let found = enumerate_affine_subspaces(&AffineSubspace::whole(n), n - 2)
        .expect("n - 2 <= n")
        .into_iter()
        .find(|q| a.intersection_len(&q.points()) >= need);
    match found {
        Some(q) => CheckResult::holds_with(format!("|A ∩ Q| >= {need} for a codimension-2 Q"), Witness::Subspace { subspace: q }),
        None => CheckResult::counterexample(format!("no codimension-2 affine subspace meets A in {need} points")),
    }
}
