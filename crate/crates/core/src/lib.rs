//! Maximal sum-free sets and primitive sets in ternary vector spaces F_3^n.
//!
//! The crate builds primitive sets through their recursive definition,
//! recognizes them with certificates, enumerates maximal sum-free sets by
//! symmetry-reduced backtracking and checks the two against each other.

pub mod error;
pub mod gf3;
pub mod linear;
pub mod subspace;
pub mod text;

pub use error::Gf3Error;
pub use gf3::{pow3, TernarySet, TernaryVector, MAX_DIM};
pub use linear::{gl_order, GroupElement, LinearMap};
pub use subspace::{affine_hull, cone, enumerate_affine_subspaces, enumerate_hyperplanes, quotient_map, AffineSubspace, LinearSubspace};
pub mod check;
pub mod halves;
pub mod kneser;
pub mod primitive;
pub mod search;
pub mod classify;
pub mod suite;

pub use check::{CheckResult, CheckTally, Witness};
pub use classify::{classify, ClassificationReport};
pub use primitive::{recognize_primitive, validate_certificate, PrimitiveCertificate};
pub use suite::{run_suite, Fault, SuiteConfig, SuiteName, SuiteReport};
