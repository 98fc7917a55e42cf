//! Three-valued outcome shared by every lemma, proposition and sumset checker.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::gf3::TernarySet;
use crate::primitive::PrimitiveCertificate;
use crate::subspace::{AffineSubspace, LinearSubspace};

impl Serialize for TernarySet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl Serialize for AffineSubspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(2))?;
        let basis: Vec<Vec<u8>> = self.basis().into_iter().map(|b| b.trits()).collect();
        m.serialize_entry("basis", &basis)?;
        m.serialize_entry("base_point", &self.base_point().map(|b| b.trits()))?;
        m.end()
    }
}

impl Serialize for LinearSubspace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.as_affine().serialize(s)
    }
}

/// Evidence attached to a successful check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Set { members: TernarySet },
    Subspace { subspace: AffineSubspace },
    Certificate { certificate: PrimitiveCertificate },
    Kneser { sumset: usize, a_plus_k: usize, b_plus_k: usize, k: usize, equality: bool },
    Stabilizer { k: LinearSubspace, coset_of_c: AffineSubspace },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CheckResult {
    Holds {
        detail: String,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<Witness>,
    },
    NotApplicable { reason: String },
    Counterexample { detail: String },
}

impl CheckResult {
    pub fn holds(detail: impl Into<String>) -> Self {
        CheckResult::Holds { detail: detail.into(), witness: None }
    }

    pub fn holds_with(detail: impl Into<String>, witness: Witness) -> Self {
        CheckResult::Holds { detail: detail.into(), witness: Some(witness) }
    }

    pub fn not_applicable(reason: impl Into<String>) -> Self {
        CheckResult::NotApplicable { reason: reason.into() }
    }

    pub fn counterexample(detail: impl Into<String>) -> Self {
        CheckResult::Counterexample { detail: detail.into() }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, CheckResult::Holds { .. })
    }

    pub fn is_not_applicable(&self) -> bool {
        matches!(self, CheckResult::NotApplicable { .. })
    }

    pub fn is_counterexample(&self) -> bool {
        matches!(self, CheckResult::Counterexample { .. })
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            CheckResult::Holds { witness, .. } => witness.as_ref(),
            _ => None,
        }
    }
}

/// Aggregate of many check results: counts plus the first counterexample.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub holds: usize,
    pub not_applicable: usize,
    pub counterexamples: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
}

impl CheckTally {
    pub fn record(&mut self, r: &CheckResult) {
        match r {
            CheckResult::Holds { .. } => self.holds += 1,
            CheckResult::NotApplicable { .. } => self.not_applicable += 1,
            CheckResult::Counterexample { detail } => {
                self.counterexamples += 1;
                if self.first_counterexample.is_none() {
                    self.first_counterexample = Some(detail.clone());
                }
            }
        }
    }

    pub fn merge(&mut self, other: CheckTally) {
        self.holds += other.holds;
        self.not_applicable += other.not_applicable;
        self.counterexamples += other.counterexamples;
        if self.first_counterexample.is_none() {
            self.first_counterexample = other.first_counterexample;
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexamples == 0
    }
}

impl<'a> FromIterator<&'a CheckResult> for CheckTally {
    fn from_iter<I: IntoIterator<Item = &'a CheckResult>>(iter: I) -> Self {
        let mut t = CheckTally::default();
        for r in iter {
            t.record(r);
        }
        t
    }
}
