//! Everything the library can say about a single set, in one report.

use serde::Serialize;

use crate::gf3::TernarySet;
use crate::primitive::{is_subprimitive, recognize_primitive, PrimitiveCertificate};

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub dim: usize,
    pub size: usize,
    pub sum_free: bool,
    pub maximal: bool,
    /// `|Sym(A)|`, or `None` for the empty set.
    pub sym_size: Option<usize>,
    pub sym_dim: Option<usize>,
    pub aperiodic: bool,
    pub certificate: Option<PrimitiveCertificate>,
    /// `None` when the dimension is beyond the supported range.
    pub subprimitive: Option<bool>,
}

pub fn classify(a: &TernarySet) -> ClassificationReport {
    let sym = a.sym_group().ok();
    let sum_free = a.is_sum_free();
    ClassificationReport {
        dim: a.dim(),
        size: a.len(),
        sum_free,
        maximal: sum_free && a.is_maximal_sum_free(),
        sym_size: sym.as_ref().map(|k| k.len()),
        sym_dim: sym.as_ref().map(|k| k.dim()),
        aperiodic: sym.as_ref().is_some_and(|k| k.dim() == 0),
        certificate: recognize_primitive(a),
        subprimitive: is_subprimitive(a).ok(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subspace::hyperplane_from_functional;
    use crate::TernaryVector;

    #[test]
    fn p_is_aperiodic_primitive() {
        let p = TernarySet::from_trit_rows(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]).unwrap();
        let r = classify(&p);
        assert!(r.sum_free && r.maximal && r.aperiodic);
        assert_eq!((r.sym_size, r.sym_dim), (Some(1), Some(0)));
        assert!(matches!(r.certificate, Some(PrimitiveCertificate::Derived { .. })));
        assert_eq!(r.subprimitive, Some(true));
    }

    #[test]
    fn zero_and_hyperplane() {
        let zero = TernarySet::from_indices(2, [0]).unwrap();
        let r = classify(&zero);
        assert!(!r.sum_free && !r.maximal && r.certificate.is_none());
        assert_eq!(r.subprimitive, Some(false));
        let h = hyperplane_from_functional(TernaryVector::unit(3, 1), 2).points();
        let r = classify(&h);
        assert!(matches!(r.certificate, Some(PrimitiveCertificate::Hyperplane { .. })));
        assert_eq!(r.sym_dim, Some(2));
    }
}
