//! Plain-text set format.
//!
//! ```text
//! # comment
//! dim 3
//! 1 0 1
//! 2 0 0
//! ```
//!
//! The first non-blank, non-comment line is `dim N`; each following line is
//! one vector as N space-separated trits. Duplicate vectors are rejected.

use std::fmt::Write as _;

use thiserror::Error;

use crate::gf3::{check_dim, trits_to_index, TernarySet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `dim N` header")]
    MissingHeader { line: usize },
    #[error("line {line}: invalid dimension `{text}`")]
    BadDimension { line: usize, text: String },
    #[error("line {line}: dimension {dim} exceeds the maximum of {max}", max = crate::gf3::MAX_DIM)]
    DimensionTooLarge { line: usize, dim: usize },
    #[error("line {line}: expected {expected} trits, found {found}")]
    WrongLength { line: usize, expected: usize, found: usize },
    #[error("line {line}: `{token}` is not a trit in {{0, 1, 2}}")]
    BadTrit { line: usize, token: String },
    #[error("line {line}: duplicate vector")]
    Duplicate { line: usize },
    #[error("empty input")]
    Empty,
}

pub fn parse_set(input: &str) -> Result<TernarySet, ParseError> {
    let mut set: Option<TernarySet> = None;
    for (no, raw) in input.lines().enumerate() {
        let line = no + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some(s) = set.as_mut() else {
            let mut toks = body.split_whitespace();
            if toks.next() != Some("dim") {
                return Err(ParseError::MissingHeader { line });
            }
            let text = toks.collect::<Vec<_>>().join(" ");
            let dim: usize = text.parse().map_err(|_| ParseError::BadDimension { line, text: text.clone() })?;
            check_dim(dim).map_err(|_| ParseError::DimensionTooLarge { line, dim })?;
            set = Some(TernarySet::empty(dim));
            continue;
        };
        let trits = body
            .split_whitespace()
            .map(|tok| match tok {
                "0" => Ok(0u8),
                "1" => Ok(1),
                "2" => Ok(2),
                _ => Err(ParseError::BadTrit { line, token: tok.to_string() }),
            })
            .collect::<Result<Vec<u8>, _>>()?;
        if trits.len() != s.dim() {
            return Err(ParseError::WrongLength { line, expected: s.dim(), found: trits.len() });
        }
        let idx = trits_to_index(&trits);
        if s.contains_index(idx) {
            return Err(ParseError::Duplicate { line });
        }
        s.insert_index(idx);
    }
    set.ok_or(ParseError::Empty)
}

/// Renders a set in ascending index order.
pub fn format_set(a: &TernarySet) -> String {
    let mut out = format!("dim {}\n", a.dim());
    for v in a.vectors() {
        let row: Vec<String> = v.trits().iter().map(|t| t.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}
