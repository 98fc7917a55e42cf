//! Executable statements about primitive sets.
//!
//! Each check first tests the hypotheses of its statement and answers
//! `NotApplicable` when they fail, so a vacuous instance never counts as
//! evidence.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use super::{primitive_size, primitive_superset, recognize_primitive, validate_certificate, PrimitiveCertificate};
use crate::check::{CheckResult, Witness};
use crate::gf3::{pow3, TernarySet};
use crate::subspace::{affine_hull, enumerate_affine_subspaces, enumerate_hyperplanes, AffineSubspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    CardFormula,
    SymContainment,
    FourSum,
    HyperplaneBound,
    AffineAboveSym,
    DenseAffine,
    DisjointTransfer,
}

impl LemmaId {
    pub const ALL: [LemmaId; 7] = [
        LemmaId::CardFormula,
        LemmaId::SymContainment,
        LemmaId::FourSum,
        LemmaId::HyperplaneBound,
        LemmaId::AffineAboveSym,
        LemmaId::DenseAffine,
        LemmaId::DisjointTransfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LemmaId::CardFormula => "card_formula",
            LemmaId::SymContainment => "sym_containment",
            LemmaId::FourSum => "four_sum",
            LemmaId::HyperplaneBound => "hyperplane_bound",
            LemmaId::AffineAboveSym => "affine_above_sym",
            LemmaId::DenseAffine => "dense_affine",
            LemmaId::DisjointTransfer => "disjoint_transfer",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown lemma id `{0}`")]
pub struct UnknownLemma(pub String);

impl FromStr for LemmaId {
    type Err = UnknownLemma;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LemmaId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| UnknownLemma(s.to_string()))
    }
}

/// Input of a lemma check. Which variant a lemma takes is listed on
/// [`check_lemma`].
#[derive(Clone, Debug)]
pub enum LemmaInstance {
    Certified(PrimitiveCertificate),
    Set(TernarySet),
    Dense { b: TernarySet, k: usize },
    Transfer { a: TernarySet, b: TernarySet, j: AffineSubspace },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LemmaError {
    #[error("lemma {id} does not take this kind of instance")]
    WrongInstance { id: LemmaId },
    #[error("instance parts live in different dimensions")]
    DimensionMismatch,
}

/// Runs one lemma on one instance.
///
/// * `card_formula`, `sym_containment`: [`LemmaInstance::Certified`]
/// * `four_sum`, `hyperplane_bound`, `affine_above_sym`: [`LemmaInstance::Set`]
///   (a set; its primitivity is established by recognition)
/// * `dense_affine`: [`LemmaInstance::Dense`]
/// * `disjoint_transfer`: [`LemmaInstance::Transfer`]
pub fn check_lemma(id: LemmaId, instance: &LemmaInstance) -> Result<CheckResult, LemmaError> {
    use LemmaInstance as I;
    Ok(match (id, instance) {
        (LemmaId::CardFormula, I::Certified(c)) => card_formula(c),
        (LemmaId::SymContainment, I::Certified(c)) => sym_containment(c),
        (LemmaId::FourSum, I::Set(a)) => four_sum(a),
        (LemmaId::HyperplaneBound, I::Set(a)) => hyperplane_bound(a),
        (LemmaId::AffineAboveSym, I::Set(a)) => affine_above_sym(a),
        (LemmaId::DenseAffine, I::Dense { b, k }) => dense_affine(b, *k),
        (LemmaId::DisjointTransfer, I::Transfer { a, b, j }) => {
            if a.dim() != b.dim() || a.dim() != j.ambient_dim() {
                return Err(LemmaError::DimensionMismatch);
            }
            disjoint_transfer(a, b, j)
        }
        _ => return Err(LemmaError::WrongInstance { id }),
    })
}

fn sym_dim(a: &TernarySet) -> usize {
    a.sym_group().map(|s| s.dim()).unwrap_or(0)
}

fn card_formula(c: &PrimitiveCertificate) -> CheckResult {
    let a = match validate_certificate(c) {
        Ok(a) => a,
        Err(e) => return CheckResult::not_applicable(format!("certificate rejected: {e}")),
    };
    if !a.is_maximal_sum_free() {
        return CheckResult::counterexample(format!("primitive set {:?} is not maximal sum-free", a.indices()));
    }
    let n = a.dim();
    let s = sym_dim(&a);
    let expected = primitive_size(n, s);
    if a.len() != expected {
        return CheckResult::counterexample(format!("|A| = {} but (3^{n} + 3*3^{s})/6 = {expected}", a.len()));
    }
    CheckResult::holds_with(format!("maximal, |A| = {} with dim Sym(A) = {s}", a.len()), Witness::Certificate { certificate: c.clone() })
}

fn sym_containment(c: &PrimitiveCertificate) -> CheckResult {
    let PrimitiveCertificate::Derived { u, x, .. } = c else {
        return CheckResult::not_applicable("a hyperplane certificate has no (H, U, W, X) data");
    };
    let a = match validate_certificate(c) {
        Ok(a) => a,
        Err(e) => return CheckResult::not_applicable(format!("certificate rejected: {e}")),
    };
    let xs = x.certified_set();
    let sym_a = a.sym_group().expect("nonempty");
    let sym_x = xs.sym_group().expect("nonempty");
    if sym_a != sym_x {
        return CheckResult::counterexample(format!("Sym(A) has dimension {} but Sym(X) has dimension {}", sym_a.dim(), sym_x.dim()));
    }
    let dir = u.direction().expect("nonempty");
    if !sym_x.is_subspace_of(&dir) {
        return CheckResult::counterexample("Sym(X) is not contained in [U]");
    }
    CheckResult::holds_with(format!("Sym(A) = Sym(X) of dimension {} inside [U]", sym_a.dim()), Witness::Subspace { subspace: sym_a.into_affine() })
}

fn require_primitive(a: &TernarySet) -> Result<PrimitiveCertificate, CheckResult> {
    recognize_primitive(a).ok_or_else(|| CheckResult::not_applicable("the set is not primitive"))
}

fn four_sum(a: &TernarySet) -> CheckResult {
    if let Err(na) = require_primitive(a) {
        return na;
    }
    if a.k_fold_sumset(4).contains_index(0) {
        return CheckResult::counterexample(format!("0 lies in 4A for {:?}", a.indices()));
    }
    CheckResult::holds("0 is not in 4A")
}

fn require_non_hyperplane_primitive(a: &TernarySet) -> Result<(), CheckResult> {
    let c = require_primitive(a)?;
    if c.is_hyperplane() {
        return Err(CheckResult::not_applicable("the set is a hyperplane"));
    }
    Ok(())
}

fn hyperplane_bound(a: &TernarySet) -> CheckResult {
    if let Err(na) = require_non_hyperplane_primitive(a) {
        return na;
    }
    let hyperplanes = enumerate_hyperplanes(a.dim(), false);
    for j in &hyperplanes {
        let pts = j.points();
        if a.len() + a.intersection_len(&pts) > pts.len() {
            return CheckResult::counterexample(format!(
                "|A| + |A ∩ J| = {} > |J| = {} for J with base point {:?}",
                a.len() + a.intersection_len(&pts),
                pts.len(),
                j.base_point().map(|b| b.trits())
            ));
        }
    }
    CheckResult::holds(format!("bound holds for all {} hyperplanes", hyperplanes.len()))
}

/// First affine subspace of dimension `k` inside `a`, in canonical order.
pub(crate) fn affine_subspace_within(a: &TernarySet, k: usize) -> Option<AffineSubspace> {
    enumerate_affine_subspaces(&AffineSubspace::whole(a.dim()), k)
        .ok()?
        .into_iter()
        .find(|e| e.points().is_subset(a))
}

fn affine_above_sym(a: &TernarySet) -> CheckResult {
    if let Err(na) = require_non_hyperplane_primitive(a) {
        return na;
    }
    let s = sym_dim(a);
    match affine_subspace_within(a, s + 1) {
        Some(e) => CheckResult::holds_with(format!("A contains an affine subspace of dimension {}", s + 1), Witness::Subspace { subspace: e }),
        None => CheckResult::counterexample(format!("no affine subspace of dimension {} lies in A", s + 1)),
    }
}

fn dense_affine(b: &TernarySet, k: usize) -> CheckResult {
    let n = b.dim();
    if k == 0 || k > n {
        return CheckResult::not_applicable(format!("k = {k} is not in 1..={n}"));
    }
    if 6 * b.len() <= pow3(n) + pow3(k - 1) {
        return CheckResult::not_applicable("|B| <= (|V| + 3^(k-1))/6");
    }
    if affine_hull(b).dim() != Some(n) {
        return CheckResult::not_applicable("B lies in a hyperplane");
    }
    match primitive_superset(b) {
        Ok(Some(_)) => {}
        Ok(None) => return CheckResult::not_applicable("B is not subprimitive"),
        Err(e) => return CheckResult::not_applicable(e.to_string()),
    }
    let need = (5 * pow3(k) + 3) / 6;
    let found = enumerate_affine_subspaces(&AffineSubspace::whole(n), k)
        .expect("k in range")
        .into_iter()
        .find(|e| b.intersection_len(&e.points()) >= need);
    match found {
        Some(e) => CheckResult::holds_with(format!("|B ∩ E| >= {need} for a {k}-dimensional E"), Witness::Subspace { subspace: e }),
        None => CheckResult::counterexample(format!("no {k}-dimensional affine subspace meets B in {need} points")),
    }
}

fn disjoint_transfer(a: &TernarySet, b: &TernarySet, j: &AffineSubspace) -> CheckResult {
    let n = a.dim();
    if let Err(na) = require_non_hyperplane_primitive(a) {
        return na;
    }
    if !b.is_subset(a) {
        return CheckResult::not_applicable("B is not a subset of A");
    }
    if 6 * b.len() <= pow3(n) {
        return CheckResult::not_applicable("|B| <= |V|/6");
    }
    if j.dim() != Some(n - 1) {
        return CheckResult::not_applicable("J is not a hyperplane");
    }
    let jp = j.points();
    if !jp.is_disjoint(b) {
        return CheckResult::not_applicable("J meets B");
    }
    if !jp.is_disjoint(a) {
        return CheckResult::counterexample(format!("J meets A in {} points", jp.intersection_len(a)));
    }
    CheckResult::holds("J is disjoint from A")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitive::tests::p_certificate;
    use crate::subspace::hyperplane_from_functional;
    use crate::TernaryVector;

    fn p() -> TernarySet {
        TernarySet::from_trit_rows(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]).unwrap()
    }

    #[test]
    fn card_formula_on_p() {
        let r = check_lemma(LemmaId::CardFormula, &LemmaInstance::Certified(p_certificate())).unwrap();
        assert!(r.is_holds(), "{r:?}");
    }

    #[test]
    fn sym_containment_on_p() {
        assert!(check_lemma(LemmaId::SymContainment, &LemmaInstance::Certified(p_certificate())).unwrap().is_holds());
        let h = hyperplane_from_functional(TernaryVector::unit(3, 0), 1);
        let hc = PrimitiveCertificate::Hyperplane { h };
        assert!(check_lemma(LemmaId::SymContainment, &LemmaInstance::Certified(hc)).unwrap().is_not_applicable());
    }

    #[test]
    fn set_lemmas_on_p() {
        for id in [LemmaId::FourSum, LemmaId::HyperplaneBound, LemmaId::AffineAboveSym] {
            let r = check_lemma(id, &LemmaInstance::Set(p())).unwrap();
            assert!(r.is_holds(), "{id}: {r:?}");
        }
        let h = hyperplane_from_functional(TernaryVector::unit(3, 0), 1).points();
        assert!(check_lemma(LemmaId::FourSum, &LemmaInstance::Set(h.clone())).unwrap().is_holds());
        assert!(check_lemma(LemmaId::HyperplaneBound, &LemmaInstance::Set(h)).unwrap().is_not_applicable());
        let not_prim = TernarySet::from_trit_rows(&[&[1, 0, 0]]).unwrap();
        assert!(check_lemma(LemmaId::FourSum, &LemmaInstance::Set(not_prim)).unwrap().is_not_applicable());
    }

    #[test]
    fn dense_and_transfer() {
        // P spans F_3^3 and |P| = 5 > (27 + 1)/6
        let r = check_lemma(LemmaId::DenseAffine, &LemmaInstance::Dense { b: p(), k: 1 }).unwrap();
        assert!(r.is_holds(), "{r:?}");
        let r = check_lemma(LemmaId::DenseAffine, &LemmaInstance::Dense { b: p(), k: 2 }).unwrap();
        assert!(r.is_not_applicable());
        let j = hyperplane_from_functional(TernaryVector::unit(3, 0), 0);
        let r = check_lemma(LemmaId::DisjointTransfer, &LemmaInstance::Transfer { a: p(), b: p(), j }).unwrap();
        assert!(r.is_holds(), "{r:?}");
        assert_eq!(
            check_lemma(LemmaId::FourSum, &LemmaInstance::Certified(p_certificate())),
            Err(LemmaError::WrongInstance { id: LemmaId::FourSum })
        );
    }

    #[test]
    fn ids_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(id.name().parse::<LemmaId>().unwrap(), id);
        }
        assert!("nope".parse::<LemmaId>().is_err());
    }
}
