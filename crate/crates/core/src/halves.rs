//! `(H, U)`-halves: sets `W ⊆ H` that are unions of `U`-translates and
//! pick exactly one translate out of every pair `{U + x, U - x}`.

use std::collections::BTreeMap;

use crate::error::{Gf3Error, Result};
use crate::gf3::{add_index, neg_index, TernarySet};
use crate::subspace::{enumerate_affine_subspaces, AffineSubspace};

fn check_pair(h: &AffineSubspace, u: &AffineSubspace) -> Result<()> {
    if h.is_empty() || u.is_empty() {
        return Err(Gf3Error::EmptySubspace);
    }
    if h.ambient_dim() != u.ambient_dim() {
        return Err(Gf3Error::DimensionMismatch { left: h.ambient_dim(), right: u.ambient_dim() });
    }
    if !u.is_subset_of(h) {
        return Err(Gf3Error::NotContained);
    }
    Ok(())
}

/// The pairs `{U + x, U - x}` of translates of `U` inside `H`, as point sets.
///
/// Within a pair the translate holding the smaller minimal index comes
/// first; pairs are ordered by their overall minimal index.
pub fn translate_pairs(h: &AffineSubspace, u: &AffineSubspace) -> Result<Vec<(TernarySet, TernarySet)>> {
    check_pair(h, u)?;
    let n = h.ambient_dim();
    let dir = u.direction()?;
    let u0 = u.base_point().unwrap().index();
    let u_base = u0;
    // coset representative (index-minimal) -> points
    let mut cosets: BTreeMap<usize, TernarySet> = BTreeMap::new();
    for p in h.points().iter() {
        let key = dir.reduce(crate::TernaryVector::from_raw(n, p)).index();
        cosets.entry(key).or_insert_with(|| TernarySet::empty(n)).insert_index(p);
    }
    let mut pairs = Vec::new();
    let mut done = std::collections::BTreeSet::new();
    for (&key, pts) in &cosets {
        if key == u_base || done.contains(&key) {
            continue;
        }
        // partner of u0 + x is u0 - x = -(u0 + (u0 + x))
        let partner_point = neg_index(n, add_index(n, u0, key));
        let partner_key = dir.reduce(crate::TernaryVector::from_raw(n, partner_point)).index();
        done.insert(key);
        done.insert(partner_key);
        pairs.push((pts.clone(), cosets[&partner_key].clone()));
    }
    Ok(pairs)
}

/// Whether `w` is an `(H, U)`-half, checked against the defining
/// conditions: `W + [U] = W` and `H = U ⊎ W ⊎ ((-U) + (-W))`.
pub fn is_half(w: &TernarySet, h: &AffineSubspace, u: &AffineSubspace) -> Result<bool> {
    check_pair(h, u)?;
    if w.dim() != h.ambient_dim() {
        return Err(Gf3Error::DimensionMismatch { left: w.dim(), right: h.ambient_dim() });
    }
    let hp = h.points();
    if !w.is_subset(&hp) {
        return Ok(false);
    }
    let up = u.points();
    let dir = u.direction()?.points();
    if w.sumset(&dir)? != *w {
        return Ok(false);
    }
    let rest = up.negate().sumset(&w.negate())?;
    let disjoint = up.is_disjoint(w) && up.is_disjoint(&rest) && w.is_disjoint(&rest);
    Ok(disjoint && up.union(w).union(&rest) == hp)
}

/// Every `(H, U)`-half; choice bit `i` selects the second translate of
/// pair `i` (pairs ordered as in [`translate_pairs`]).
pub fn enumerate_halves(h: &AffineSubspace, u: &AffineSubspace) -> Result<Vec<TernarySet>> {
    let pairs = translate_pairs(h, u)?;
    let m = pairs.len();
    assert!(m < 40, "too many translate pairs to enumerate");
    let n = h.ambient_dim();
    Ok((0u64..1 << m)
        .map(|mask| {
            let mut w = TernarySet::empty(n);
            for (i, (a, b)) in pairs.iter().enumerate() {
                w = w.union(if mask >> i & 1 == 0 { a } else { b });
            }
            w
        })
        .collect())
}

/// For each half (in enumeration order), an affine subspace of dimension
/// `dim(U) + 1` inside it, if one exists.
pub fn half_fact_witnesses(h: &AffineSubspace, u: &AffineSubspace) -> Result<Vec<(TernarySet, Option<AffineSubspace>)>> {
    check_pair(h, u)?;
    let (hd, ud) = (h.dim().unwrap(), u.dim().unwrap());
    if hd < ud + 2 {
        return Err(Gf3Error::Precondition(format!("dim(H/U) = {} < 2", hd - ud)));
    }
    if h.contains_origin() {
        return Err(Gf3Error::Precondition("H contains the origin".into()));
    }
    let flats: Vec<(AffineSubspace, TernarySet)> =
        enumerate_affine_subspaces(h, ud + 1)?.into_iter().map(|f| {
            let p = f.points();
            (f, p)
        }).collect();
    Ok(enumerate_halves(h, u)?
        .into_iter()
        .map(|w| {
            let found = flats.iter().find(|(_, p)| p.is_subset(&w)).map(|(f, _)| f.clone());
            (w, found)
        })
        .collect())
}

/// Every `(H, U)`-half contains an affine subspace of dimension `dim(U) + 1`.
pub fn check_half_fact(h: &AffineSubspace, u: &AffineSubspace) -> Result<bool> {
    Ok(half_fact_witnesses(h, u)?.iter().all(|(_, f)| f.is_some()))
}
