//! Generation of primitive sets from the recursive definition.
//!
//! The full library is built for n <= 3 by running over every hyperplane
//! `H`, every proper `U ⊊ H`, every half and every primitive `X` of the
//! cone. For orbit representatives a single hyperplane and one `U` per
//! dimension suffice: the linear maps fixing `H` act on it as its full
//! affine group, which is transitive on affine subspaces of each dimension.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use thiserror::Error;

use super::{validate_certificate, PrimitiveCertificate};
use crate::gf3::{TernarySet, TernaryVector};
use crate::halves::enumerate_halves;
use crate::subspace::{enumerate_affine_subspaces, enumerate_hyperplanes, hyperplane_from_functional, AffineSubspace};

/// Largest dimension for which every primitive set is listed.
pub const LIBRARY_MAX_DIM: usize = 3;
/// Largest dimension for which orbit representatives are generated.
pub const ISO_MAX_DIM: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrimitiveEnumError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("listing every primitive subset of F_3^{0} is not supported; use orbit representatives")]
    LibraryTooLarge(usize),
    #[error("orbit representatives are generated only up to dimension {ISO_MAX_DIM}, got {0}")]
    TooLarge(usize),
}

/// A primitive set with a certificate for it.
pub type PrimitiveEntry = (TernarySet, PrimitiveCertificate);

static LIBRARY: [OnceLock<Vec<PrimitiveEntry>>; LIBRARY_MAX_DIM + 1] = [const { OnceLock::new() }; LIBRARY_MAX_DIM + 1];

/// Every primitive subset of F_3^n in ascending order, for `1 <= n <= 3`.
pub fn primitive_library(n: usize) -> Result<&'static [PrimitiveEntry], PrimitiveEnumError> {
    match n {
        0 => Err(PrimitiveEnumError::ZeroDimension),
        1..=LIBRARY_MAX_DIM => Ok(LIBRARY[n].get_or_init(|| build_library(n))),
        _ => Err(PrimitiveEnumError::LibraryTooLarge(n)),
    }
}

fn build_library(n: usize) -> Vec<PrimitiveEntry> {
    let mut found: BTreeMap<TernarySet, PrimitiveCertificate> = BTreeMap::new();
    for h in enumerate_hyperplanes(n, true) {
        found.entry(h.points()).or_insert(PrimitiveCertificate::Hyperplane { h: h.clone() });
        for k in 0..n - 1 {
            for u in enumerate_affine_subspaces(&h, k).expect("k below dim H") {
                for (set, cert) in derived_from(&h, &u) {
                    found.entry(set).or_insert(cert);
                }
            }
        }
    }
    found.into_iter().collect()
}

/// All valid derived certificates with the given `H` and `U`, the inner
/// set ranging over the library of the cone.
fn derived_from(h: &AffineSubspace, u: &AffineSubspace) -> Vec<PrimitiveEntry> {
    let cone = u.cone().expect("nonempty");
    let embed = cone.embedding();
    let inner = primitive_library(cone.dim()).expect("cone is smaller than the space");
    let halves = enumerate_halves(h, u).expect("U lies in H");
    let neg_u = u.negate().points();
    let mut out = Vec::new();
    for (xs_local, xc_local) in inner {
        let x = embed.apply_set(xs_local);
        // clause (iv) needs X to meet -U; cheap filter before validation
        if x.is_disjoint(&neg_u) {
            continue;
        }
        let xc = xc_local.map(&embed);
        for w in &halves {
            let cert = PrimitiveCertificate::Derived { h: h.clone(), u: u.clone(), w: w.clone(), x: Box::new(xc.clone()) };
            if let Ok(set) = validate_certificate(&cert) {
                out.push((set, cert));
            }
        }
    }
    out
}

/// Primitive subsets of F_3^n with certificates, sorted by set; with
/// `up_to_iso`, one canonical representative per GL(n, 3)-orbit.
pub fn enumerate_primitive(n: usize, up_to_iso: bool) -> Result<Vec<PrimitiveEntry>, PrimitiveEnumError> {
    if n == 0 {
        return Err(PrimitiveEnumError::ZeroDimension);
    }
    if !up_to_iso {
        return primitive_library(n).map(<[_]>::to_vec);
    }
    if n > ISO_MAX_DIM {
        return Err(PrimitiveEnumError::TooLarge(n));
    }
    let e1 = TernaryVector::unit(n, 0);
    let h = hyperplane_from_functional(e1, 1);
    let mut candidates = vec![(h.points(), PrimitiveCertificate::Hyperplane { h: h.clone() })];
    for k in 0..n - 1 {
        let dirs: Vec<TernaryVector> = (1..=k).map(|i| TernaryVector::unit(n, i)).collect();
        let u = AffineSubspace::from_generators(e1, &dirs).expect("independent directions");
        candidates.extend(derived_from(&h, &u));
    }
    let canon: Vec<(TernarySet, PrimitiveCertificate)> = candidates
        .par_iter()
        .map(|(set, cert)| {
            let c = crate::search::canonical(set);
            (c.form, cert.transform(&c.transporter))
        })
        .collect();
    let mut reps: BTreeMap<TernarySet, PrimitiveCertificate> = BTreeMap::new();
    for (form, cert) in canon {
        reps.entry(form).or_insert(cert);
    }
    Ok(reps.into_iter().collect())
}

/// Number of primitive subsets of F_3^n listed by the library, per size.
pub fn library_size_counts(n: usize) -> Result<BTreeMap<usize, usize>, PrimitiveEnumError> {
    let mut counts = BTreeMap::new();
    for (s, _) in primitive_library(n)? {
        *counts.entry(s.len()).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Brute-force list of primitive subsets of F_3^n for n <= 2, by testing
/// every subset with the recognizer.
#[cfg(test)]
pub(crate) fn brute_force_primitive(n: usize) -> Vec<TernarySet> {
    let size = crate::gf3::pow3(n);
    (0u64..1 << size)
        .map(|m| TernarySet::from_indices(n, (0..size).filter(|i| m >> i & 1 == 1)).unwrap())
        .filter(|s| super::recognize_primitive(s).is_some())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::canonical_form;

    #[test]
    fn dimension_one() {
        let lib = primitive_library(1).unwrap();
        let sets: Vec<_> = lib.iter().map(|(s, _)| s.indices()).collect();
        assert_eq!(sets, vec![vec![1], vec![2]]);
    }

    #[test]
    fn dimension_two_is_the_eight_lines() {
        let lib = primitive_library(2).unwrap();
        assert_eq!(lib.len(), 8);
        let lines: Vec<_> = enumerate_hyperplanes(2, true).iter().map(|h| h.points()).collect();
        for (s, c) in lib {
            assert!(lines.contains(s));
            assert!(c.is_hyperplane());
        }
        let mut brute = brute_force_primitive(2);
        brute.sort();
        assert_eq!(brute, lib.iter().map(|(s, _)| s.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn dimension_three_sizes_and_certificates() {
        let counts = library_size_counts(3).unwrap();
        assert_eq!(counts, BTreeMap::from([(5, 1872), (9, 26)]));
        for (s, c) in primitive_library(3).unwrap() {
            assert_eq!(&validate_certificate(c).unwrap(), s);
        }
    }

    #[test]
    fn representatives_in_dimension_three() {
        let reps = enumerate_primitive(3, true).unwrap();
        assert_eq!(reps.len(), 2);
        let p = TernarySet::from_trit_rows(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]).unwrap();
        assert!(reps.iter().any(|(s, _)| *s == canonical_form(&p)));
        for (s, c) in &reps {
            assert_eq!(&validate_certificate(c).unwrap(), s);
            assert_eq!(canonical_form(s), *s);
        }
    }

    #[test]
    fn library_is_limited() {
        assert_eq!(primitive_library(4).unwrap_err(), PrimitiveEnumError::LibraryTooLarge(4));
        assert_eq!(enumerate_primitive(5, true).unwrap_err(), PrimitiveEnumError::TooLarge(5));
    }
}
