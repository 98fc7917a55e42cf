use crate::error::{Gf3Error, Result};
use crate::gf3::{check_dim, index_to_trits, pow3, TernarySet, TernaryVector};
use crate::primitive::PrimitiveCertificate;
use crate::subspace::{hyperplane_from_functional, AffineSubspace};

/// Aperiodic maximal sum-free subset of F_3^n of size `(3^(n-1) + 1) / 2`.
///
/// Derived from `H = {x : x_1 = 1}`, `U = {e_1}` and `X = {-e_1}`; the half
/// takes from each pair `{e_1 + y, e_1 - y}` the vector whose first nonzero
/// coordinate after `x_1` is 1.
pub fn lev_construction(n: usize) -> Result<(TernarySet, PrimitiveCertificate)> {
    check_dim(n)?;
    if n < 3 {
        return Err(Gf3Error::Precondition(format!("the construction needs n >= 3, got {n}")));
    }
    let e1 = TernaryVector::unit(n, 0);
    let mut w = TernarySet::empty(n);
    for i in 0..pow3(n) {
        let t = index_to_trits(n, i);
        if t[0] == 1 && t[1..].iter().find(|&&c| c != 0) == Some(&1) {
            w.insert_index(i);
        }
    }
    let minus_e1 = e1.scale(2);
    let cert = PrimitiveCertificate::Derived {
        h: hyperplane_from_functional(e1, 1),
        u: AffineSubspace::point(e1),
        w: w.clone(),
        x: Box::new(PrimitiveCertificate::Hyperplane { h: AffineSubspace::point(minus_e1) }),
    };
    let mut a = w;
    a.insert(minus_e1);
    Ok((a, cert))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitive::validate_certificate;

    #[test]
    fn dimension_three_is_p() {
        let (a, cert) = lev_construction(3).unwrap();
        let p = TernarySet::from_trit_rows(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]).unwrap();
        assert_eq!(a, p);
        assert_eq!(validate_certificate(&cert).unwrap(), a);
    }

    #[test]
    fn sizes_and_properties() {
        for n in 3..=6 {
            let (a, cert) = lev_construction(n).unwrap();
            assert_eq!(a.len(), (pow3(n - 1) + 1) / 2);
            assert!(a.is_maximal_sum_free());
            assert_eq!(a.sym_group().unwrap().dim(), 0);
            assert_eq!(validate_certificate(&cert).unwrap(), a);
        }
        assert_eq!(lev_construction(6).unwrap().0.len(), 122);
    }

    #[test]
    fn preconditions() {
        assert!(matches!(lev_construction(2), Err(Gf3Error::Precondition(_))));
        assert_eq!(lev_construction(13).unwrap_err(), Gf3Error::DimensionTooLarge(13));
    }
}
