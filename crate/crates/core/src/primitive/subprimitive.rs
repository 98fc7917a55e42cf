//! Subsets of primitive sets.
//!
//! Up to dimension 3 the full primitive library is scanned for a superset.
//! In dimension 4 the search engine extends the set to maximal sum-free
//! supersets of at least the smallest primitive size and runs the
//! recognizer on each; every primitive set is maximal sum-free, so this
//! finds a primitive superset whenever one exists.

use std::ops::ControlFlow;

use thiserror::Error;

use super::enumerate::{primitive_library, PrimitiveEntry, LIBRARY_MAX_DIM};
use super::{min_primitive_size, recognize_primitive};
use crate::gf3::TernarySet;
use crate::search::engine::Engine;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubprimitiveError {
    #[error("subprimitivity is decided only for dimensions 1..=4, got {0}")]
    UnsupportedDimension(usize),
}

/// Some primitive set containing `a`, with its certificate.
pub fn primitive_superset(a: &TernarySet) -> Result<Option<PrimitiveEntry>, SubprimitiveError> {
    let n = a.dim();
    if !(1..=4).contains(&n) {
        return Err(SubprimitiveError::UnsupportedDimension(n));
    }
    if !a.is_sum_free() {
        return Ok(None);
    }
    if n <= LIBRARY_MAX_DIM {
        let lib = primitive_library(n).expect("dimension in range");
        return Ok(lib.iter().find(|(s, _)| a.is_subset(s)).cloned());
    }
    let engine = Engine::new(n, min_primitive_size(n));
    let lay = engine.layout;
    let Some(root) = engine.root(lay.from_set(a)) else {
        return Ok(None);
    };
    let mut nodes = 0;
    let mut found = None;
    let _ = engine.run(root, &mut nodes, &mut |mask| {
        let s = lay.to_set(mask);
        match recognize_primitive(&s) {
            Some(c) => {
                found = Some((s, c));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        }
    });
    Ok(found)
}

pub fn is_subprimitive(a: &TernarySet) -> Result<bool, SubprimitiveError> {
    primitive_superset(a).map(|s| s.is_some())
}
