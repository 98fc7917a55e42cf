use std::sync::OnceLock;

use super::PrimitiveCertificate;
use crate::gf3::{TernarySet, MAX_DIM};
use crate::halves::is_half;
use crate::subspace::{affine_hull, enumerate_hyperplanes, AffineSubspace, LinearSubspace};

pub(crate) struct HyperplaneEntry {
    pub h: AffineSubspace,
    pub points: TernarySet,
    pub direction: TernarySet,
    pub negated: TernarySet,
}

static HYPERPLANES: [OnceLock<Vec<HyperplaneEntry>>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];

/// Hyperplanes of F_3^n avoiding the origin, in canonical order, with their
/// point sets precomputed.
pub(crate) fn hyperplane_entries(n: usize) -> &'static [HyperplaneEntry] {
    HYPERPLANES[n].get_or_init(|| {
        enumerate_hyperplanes(n, true)
            .into_iter()
            .map(|h| {
                let points = h.points();
                let direction = h.direction().unwrap().points();
                let negated = points.negate();
                HyperplaneEntry { h, points, direction, negated }
            })
            .collect()
    })
}

/// Restricts `a ⊆ space` to the echelon coordinates of `space`.
pub(crate) fn to_local(a: &TernarySet, space: &LinearSubspace) -> TernarySet {
    let mut out = TernarySet::empty(space.dim());
    for x in a.vectors() {
        out.insert(space.coordinates(x).expect("set lies in the subspace"));
    }
    out
}

/// Finds a certificate for `a` if it is primitive in its ambient space.
///
/// `U` is forced once `H` is fixed: `A ∩ (-H) = X ∩ (-U)` spans `-U`, so
/// `U = -aff(A ∩ (-H))`, `X = A ∩ C(U)` and `W = A \ X`. Hyperplanes are
/// tried in canonical order and the first success is returned.
pub fn recognize_primitive(a: &TernarySet) -> Option<PrimitiveCertificate> {
    let n = a.dim();
    if n == 0 || a.is_empty() {
        return None;
    }
    let hull = affine_hull(a);
    if hull.dim() == Some(n - 1) && !hull.contains_origin() && a.len() == hull.len() {
        return Some(PrimitiveCertificate::Hyperplane { h: hull });
    }
    for e in hyperplane_entries(n) {
        if !a.is_disjoint(&e.direction) {
            continue;
        }
        let back = a.intersection(&e.negated);
        if back.is_empty() {
            continue;
        }
        let u = affine_hull(&back).negate();
        if u.dim() == e.h.dim() {
            continue;
        }
        let cone = u.cone().expect("nonempty");
        let x = a.intersection(&cone.points());
        let w = a.difference(&x);
        if !w.is_subset(&e.points) || !is_half(&w, &e.h, &u).unwrap_or(false) {
            continue;
        }
        if !x.is_disjoint(&u.direction().unwrap().points()) {
            continue;
        }
        let neg_u = u.negate();
        let neg_u_points = neg_u.points();
        if e.h.dim().unwrap() - u.dim().unwrap() < 2 && x == neg_u_points {
            continue;
        }
        if affine_hull(&x.intersection(&neg_u_points)) != neg_u {
            continue;
        }
        let Some(inner) = recognize_primitive(&to_local(&x, &cone)) else {
            continue;
        };
        return Some(PrimitiveCertificate::Derived {
            h: e.h.clone(),
            u,
            w,
            x: Box::new(inner.map(&cone.embedding())),
        });
    }
    None
}
