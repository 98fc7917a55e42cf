//! Primitive sets: certificates, validation, recognition, enumeration and
//! subprimitivity.
//!
//! A primitive subset of a linear space `L` is either a hyperplane of `L`
//! avoiding the origin, or `W ∪ X` where `H` is such a hyperplane, `U ⊊ H`
//! an affine subspace, `W` an `(H, U)`-half and `X` a primitive subset of
//! the cone `C(U)` with
//!
//! * (i)   the set equals `W ∪ X`,
//! * (ii)  `X ∩ [U] = ∅`,
//! * (iii) `dim(H/U) ≥ 2` or `X ≠ -U`,
//! * (iv)  `aff(X ∩ (-U)) = -U`.
//!
//! Certificates always live in the coordinates of the outermost space.

mod enumerate;
mod json;
pub mod lemmas;
mod recognize;
mod subprimitive;

pub use enumerate::{enumerate_primitive, library_size_counts, primitive_library, PrimitiveEntry, PrimitiveEnumError, ISO_MAX_DIM, LIBRARY_MAX_DIM};
pub use json::{certificate_from_json, certificate_to_json, CertificateJsonError};
pub use lemmas::{check_lemma, LemmaError, LemmaId, LemmaInstance};
pub use recognize::recognize_primitive;
pub use subprimitive::{is_subprimitive, primitive_superset, SubprimitiveError};

use thiserror::Error;

use crate::gf3::{pow3, TernarySet};
use crate::halves::is_half;
use crate::linear::{GroupElement, LinearMap};
use crate::subspace::{affine_hull, AffineSubspace, LinearSubspace};

/// Recursive witness that a set is primitive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PrimitiveCertificate {
    Hyperplane {
        h: AffineSubspace,
    },
    Derived {
        h: AffineSubspace,
        u: AffineSubspace,
        w: TernarySet,
        x: Box<PrimitiveCertificate>,
    },
}

/// A violated condition, tagged with the recursion depth (0 = outermost).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("depth {depth}: certificate dimension does not match the ambient space")]
    DimensionMismatch { depth: usize },
    #[error("depth {depth}: H is not a hyperplane of the enclosing space")]
    NotHyperplane { depth: usize },
    #[error("depth {depth}: H contains the origin (clause a)")]
    OriginInHyperplane { depth: usize },
    #[error("depth {depth}: U is not a nonempty proper affine subspace of H")]
    UNotProper { depth: usize },
    #[error("depth {depth}: W is not an (H, U)-half")]
    NotAHalf { depth: usize },
    #[error("depth {depth}: X is not a subset of the cone C(U) (clause i)")]
    ClauseI { depth: usize },
    #[error("depth {depth}: X meets [U] (clause ii)")]
    ClauseII { depth: usize },
    #[error("depth {depth}: dim(H/U) = 1 and X = -U (clause iii)")]
    ClauseIII { depth: usize },
    #[error("depth {depth}: aff(X ∩ -U) differs from -U (clause iv)")]
    ClauseIV { depth: usize },
}

impl PrimitiveCertificate {
    pub fn ambient_dim(&self) -> usize {
        match self {
            PrimitiveCertificate::Hyperplane { h } | PrimitiveCertificate::Derived { h, .. } => h.ambient_dim(),
        }
    }

    pub fn is_hyperplane(&self) -> bool {
        matches!(self, PrimitiveCertificate::Hyperplane { .. })
    }

    pub fn hyperplane(&self) -> &AffineSubspace {
        match self {
            PrimitiveCertificate::Hyperplane { h } | PrimitiveCertificate::Derived { h, .. } => h,
        }
    }

    /// Nesting depth; a hyperplane certificate has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            PrimitiveCertificate::Hyperplane { .. } => 0,
            PrimitiveCertificate::Derived { x, .. } => 1 + x.depth(),
        }
    }

    /// The set this certificate describes, without validation.
    pub fn certified_set(&self) -> TernarySet {
        match self {
            PrimitiveCertificate::Hyperplane { h } => h.points(),
            PrimitiveCertificate::Derived { w, x, .. } => w.union(&x.certified_set()),
        }
    }

    /// Pushes the certificate forward along an injective linear map.
    pub fn map(&self, f: &LinearMap) -> Self {
        match self {
            PrimitiveCertificate::Hyperplane { h } => PrimitiveCertificate::Hyperplane { h: f.apply_subspace(h) },
            PrimitiveCertificate::Derived { h, u, w, x } => PrimitiveCertificate::Derived {
                h: f.apply_subspace(h),
                u: f.apply_subspace(u),
                w: f.apply_set(w),
                x: Box::new(x.map(f)),
            },
        }
    }

    pub fn transform(&self, g: &GroupElement) -> Self {
        self.map(g.map())
    }
}

/// Checks every condition recursively and returns the certified set.
pub fn validate_certificate(cert: &PrimitiveCertificate) -> Result<TernarySet, CertificateError> {
    let n = cert.ambient_dim();
    validate_in(cert, &LinearSubspace::whole(n), 0)
}

fn validate_in(cert: &PrimitiveCertificate, space: &LinearSubspace, depth: usize) -> Result<TernarySet, CertificateError> {
    let n = space.ambient_dim();
    let h = cert.hyperplane();
    if h.ambient_dim() != n {
        return Err(CertificateError::DimensionMismatch { depth });
    }
    if h.is_empty() || h.dim() != Some(space.dim().wrapping_sub(1)) || !h.is_subset_of(space.as_affine()) {
        return Err(CertificateError::NotHyperplane { depth });
    }
    if h.contains_origin() {
        return Err(CertificateError::OriginInHyperplane { depth });
    }
    let PrimitiveCertificate::Derived { u, w, x, .. } = cert else {
        return Ok(h.points());
    };
    if u.ambient_dim() != n || w.dim() != n {
        return Err(CertificateError::DimensionMismatch { depth });
    }
    if u.is_empty() || !u.is_subset_of(h) || u.dim() == h.dim() {
        return Err(CertificateError::UNotProper { depth });
    }
    if !is_half(w, h, u).map_err(|_| CertificateError::NotAHalf { depth })? {
        return Err(CertificateError::NotAHalf { depth });
    }
    let cone = u.cone().expect("nonempty");
    if x.ambient_dim() != n {
        return Err(CertificateError::DimensionMismatch { depth: depth + 1 });
    }
    if !x.hyperplane().is_subset_of(cone.as_affine()) {
        return Err(CertificateError::ClauseI { depth });
    }
    let xs = validate_in(x, &cone, depth + 1)?;
    if !xs.is_subset(&cone.points()) {
        return Err(CertificateError::ClauseI { depth });
    }
    let dir = u.direction().expect("nonempty").points();
    if !xs.is_disjoint(&dir) {
        return Err(CertificateError::ClauseII { depth });
    }
    let neg_u = u.negate();
    let neg_u_points = neg_u.points();
    if h.dim().unwrap() - u.dim().unwrap() < 2 && xs == neg_u_points {
        return Err(CertificateError::ClauseIII { depth });
    }
    if affine_hull(&xs.intersection(&neg_u_points)) != neg_u {
        return Err(CertificateError::ClauseIV { depth });
    }
    Ok(w.union(&xs))
}

/// `|A| = (|V| + 3 |Sym(A)|) / 6` for a primitive `A`.
pub fn primitive_size(n: usize, sym_dim: usize) -> usize {
    (pow3(n) + 3 * pow3(sym_dim)) / 6
}

/// Smallest size a primitive subset of F_3^n can have by the size formula.
pub fn min_primitive_size(n: usize) -> usize {
    primitive_size(n, 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3::TernaryVector;
    use crate::subspace::hyperplane_from_functional;

    fn v(t: &[u8]) -> TernaryVector {
        TernaryVector::from_trits(t).unwrap()
    }

    fn set(rows: &[&[u8]]) -> TernarySet {
        TernarySet::from_trit_rows(rows).unwrap()
    }

    pub(crate) fn p_certificate() -> PrimitiveCertificate {
        let h = hyperplane_from_functional(v(&[1, 0, 0]), 1);
        let u = AffineSubspace::point(v(&[1, 0, 0]));
        let w = set(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1]]);
        let x = PrimitiveCertificate::Hyperplane { h: AffineSubspace::point(v(&[2, 0, 0])) };
        PrimitiveCertificate::Derived { h, u, w, x: Box::new(x) }
    }

    #[test]
    fn hyperplane_certificate() {
        let h = hyperplane_from_functional(v(&[1, 0]), 1);
        let c = PrimitiveCertificate::Hyperplane { h: h.clone() };
        assert_eq!(validate_certificate(&c).unwrap(), set(&[&[1, 0], &[1, 1], &[1, 2]]));
        let bad = PrimitiveCertificate::Hyperplane { h: hyperplane_from_functional(v(&[1, 0]), 0) };
        assert_eq!(validate_certificate(&bad), Err(CertificateError::OriginInHyperplane { depth: 0 }));
        let point = PrimitiveCertificate::Hyperplane { h: AffineSubspace::point(v(&[1, 1])) };
        assert_eq!(validate_certificate(&point), Err(CertificateError::NotHyperplane { depth: 0 }));
    }

    #[test]
    fn certificate_for_p() {
        let a = validate_certificate(&p_certificate()).unwrap();
        let p = set(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]);
        assert_eq!(a, p);
        assert!(a.is_maximal_sum_free());
    }

    #[test]
    fn clause_three_rejects_line_case() {
        // F_3^2: H = {x_1 = 1}, U = {(1,0)}, X = -U
        let h = hyperplane_from_functional(v(&[1, 0]), 1);
        let u = AffineSubspace::point(v(&[1, 0]));
        let w = set(&[&[1, 1]]);
        let x = PrimitiveCertificate::Hyperplane { h: AffineSubspace::point(v(&[2, 0])) };
        let c = PrimitiveCertificate::Derived { h, u, w, x: Box::new(x) };
        assert_eq!(validate_certificate(&c), Err(CertificateError::ClauseIII { depth: 0 }));
    }

    #[test]
    fn clause_four_and_half_errors() {
        let h = hyperplane_from_functional(v(&[1, 0]), 1);
        let u = AffineSubspace::point(v(&[1, 0]));
        let x = PrimitiveCertificate::Hyperplane { h: AffineSubspace::point(v(&[1, 0])) };
        let c = PrimitiveCertificate::Derived { h: h.clone(), u: u.clone(), w: set(&[&[1, 1]]), x: Box::new(x) };
        assert_eq!(validate_certificate(&c), Err(CertificateError::ClauseIV { depth: 0 }));

        let mut bad_half = p_certificate();
        if let PrimitiveCertificate::Derived { w, .. } = &mut bad_half {
            w.insert(v(&[1, 2, 2]));
        }
        assert_eq!(validate_certificate(&bad_half), Err(CertificateError::NotAHalf { depth: 0 }));

        let improper = PrimitiveCertificate::Derived {
            h: h.clone(),
            u: h.clone(),
            w: TernarySet::empty(2),
            x: Box::new(PrimitiveCertificate::Hyperplane { h: h.negate() }),
        };
        assert_eq!(validate_certificate(&improper), Err(CertificateError::UNotProper { depth: 0 }));
    }

    #[test]
    fn nested_error_depth() {
        let mut c = p_certificate();
        if let PrimitiveCertificate::Derived { x, .. } = &mut c {
            // a "hyperplane" of the 1-dimensional cone that contains 0
            **x = PrimitiveCertificate::Hyperplane { h: AffineSubspace::point(v(&[0, 0, 0])) };
        }
        assert_eq!(validate_certificate(&c), Err(CertificateError::OriginInHyperplane { depth: 1 }));
    }

    #[test]
    fn size_formula_values() {
        assert_eq!(primitive_size(3, 0), 5);
        assert_eq!(primitive_size(3, 2), 9);
        assert_eq!(primitive_size(4, 0), 14);
        assert_eq!(primitive_size(4, 1), 15);
        assert_eq!(primitive_size(4, 3), 27);
    }
}
