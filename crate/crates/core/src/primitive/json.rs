//! Certificate JSON.
//!
//! ```json
//! {"kind":"hyperplane","H":{"basis":[[0,1,0],[0,0,1]],"base_point":[1,0,0]}}
//! {"kind":"derived","H":{..},"U":{..},"W":[sorted indices],"X":{nested}}
//! ```
//!
//! Trit lists are ordered by coordinate (coordinate 0 first). Subspaces are
//! written in canonical form, so serializing a parsed certificate
//! reproduces the input byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PrimitiveCertificate;
use crate::gf3::{TernarySet, TernaryVector};
use crate::subspace::AffineSubspace;

#[derive(Debug, Error)]
pub enum CertificateJsonError {
    #[error("malformed certificate JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid certificate content: {0}")]
    Content(String),
}

#[derive(Serialize, Deserialize)]
struct SubspaceJson {
    basis: Vec<Vec<u8>>,
    base_point: Vec<u8>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum CertJson {
    Hyperplane {
        #[serde(rename = "H")]
        h: SubspaceJson,
    },
    Derived {
        #[serde(rename = "H")]
        h: SubspaceJson,
        #[serde(rename = "U")]
        u: SubspaceJson,
        #[serde(rename = "W")]
        w: Vec<usize>,
        #[serde(rename = "X")]
        x: Box<CertJson>,
    },
}

fn subspace_to_json(s: &AffineSubspace) -> SubspaceJson {
    SubspaceJson {
        basis: s.basis().into_iter().map(|b| b.trits()).collect(),
        base_point: s.base_point().expect("certificate subspaces are nonempty").trits(),
    }
}

fn subspace_from_json(s: &SubspaceJson) -> Result<AffineSubspace, CertificateJsonError> {
    let content = |e: crate::Gf3Error| CertificateJsonError::Content(e.to_string());
    let base = TernaryVector::from_trits(&s.base_point).map_err(content)?;
    let dirs = s.basis.iter().map(|b| TernaryVector::from_trits(b)).collect::<Result<Vec<_>, _>>().map_err(content)?;
    let sub = AffineSubspace::from_generators(base, &dirs).map_err(content)?;
    if sub.dim() != Some(dirs.len()) {
        return Err(CertificateJsonError::Content("basis vectors are linearly dependent".into()));
    }
    Ok(sub)
}

fn to_json(c: &PrimitiveCertificate) -> CertJson {
    match c {
        PrimitiveCertificate::Hyperplane { h } => CertJson::Hyperplane { h: subspace_to_json(h) },
        PrimitiveCertificate::Derived { h, u, w, x } => CertJson::Derived {
            h: subspace_to_json(h),
            u: subspace_to_json(u),
            w: w.indices(),
            x: Box::new(to_json(x)),
        },
    }
}

fn from_json(c: &CertJson) -> Result<PrimitiveCertificate, CertificateJsonError> {
    Ok(match c {
        CertJson::Hyperplane { h } => PrimitiveCertificate::Hyperplane { h: subspace_from_json(h)? },
        CertJson::Derived { h, u, w, x } => {
            let h = subspace_from_json(h)?;
            let u = subspace_from_json(u)?;
            let w = TernarySet::from_indices(h.ambient_dim(), w.iter().copied())
                .map_err(|e| CertificateJsonError::Content(e.to_string()))?;
            PrimitiveCertificate::Derived { h, u, w, x: Box::new(from_json(x)?) }
        }
    })
}

impl Serialize for PrimitiveCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        to_json(self).serialize(s)
    }
}

pub fn certificate_to_json(c: &PrimitiveCertificate) -> String {
    serde_json::to_string(c).expect("certificate serialization cannot fail")
}

/// Parses a certificate. Structural problems are reported here; the
/// defining conditions are left to `validate_certificate`.
pub fn certificate_from_json(s: &str) -> Result<PrimitiveCertificate, CertificateJsonError> {
    let raw: CertJson = serde_json::from_str(s)?;
    from_json(&raw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::primitive::tests::p_certificate;

    #[test]
    fn p_round_trip_is_byte_exact() {
        let c = p_certificate();
        let s = certificate_to_json(&c);
        assert!(s.starts_with(r#"{"kind":"derived","H":{"basis":"#));
        let back = certificate_from_json(&s).unwrap();
        assert_eq!(back, c);
        assert_eq!(certificate_to_json(&back), s);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(certificate_from_json("{").is_err());
        assert!(certificate_from_json(r#"{"kind":"hyperplane","H":{"basis":[[3]],"base_point":[1]}}"#).is_err());
        assert!(certificate_from_json(r#"{"kind":"hyperplane","H":{"basis":[[1,0],[2,0]],"base_point":[0,1]}}"#).is_err());
        assert!(certificate_from_json(r#"{"kind":"other"}"#).is_err());
    }
}
