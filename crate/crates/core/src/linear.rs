//! Linear maps between ternary spaces and the group GL(n, 3).

use rand::Rng;

use crate::error::{Gf3Error, Result};
use crate::gf3::{add_index, pow3, scale_index, TernarySet, TernaryVector};
use crate::subspace::{AffineSubspace, Echelon};

/// A linear map F_3^k -> F_3^n given by the images of the unit vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    target_dim: usize,
    columns: Vec<u32>,
}

impl LinearMap {
    pub fn from_columns(target_dim: usize, columns: &[TernaryVector]) -> Self {
        assert!(columns.iter().all(|c| c.dim() == target_dim));
        Self { target_dim, columns: columns.iter().map(|c| c.index() as u32).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.columns.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn columns(&self) -> Vec<TernaryVector> {
        self.columns.iter().map(|&c| TernaryVector::from_raw(self.target_dim, c as usize)).collect()
    }

    pub fn apply_index(&self, x: usize) -> usize {
        let mut out = 0;
        let mut x = x;
        for &c in &self.columns {
            out = add_index(self.target_dim, out, scale_index(self.target_dim, c as usize, (x % 3) as u8));
            x /= 3;
        }
        out
    }

    pub fn apply(&self, x: TernaryVector) -> TernaryVector {
        assert_eq!(x.dim(), self.source_dim());
        TernaryVector::from_raw(self.target_dim, self.apply_index(x.index()))
    }

    pub fn apply_set(&self, a: &TernarySet) -> TernarySet {
        let mut out = TernarySet::empty(self.target_dim);
        for x in a.iter() {
            out.insert_index(self.apply_index(x));
        }
        out
    }

    pub fn apply_subspace(&self, u: &AffineSubspace) -> AffineSubspace {
        match u.base_point() {
            None => AffineSubspace::empty(self.target_dim),
            Some(b) => {
                let dirs: Vec<usize> = u.basis().into_iter().map(|d| self.apply(d).index()).collect();
                AffineSubspace::from_parts(self.target_dim, self.apply(b).index(), &dirs)
            }
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut ech = Echelon::new(self.target_dim);
        self.columns.iter().all(|&c| ech.insert_index(c as usize))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(other.target_dim, self.source_dim());
        Self {
            target_dim: self.target_dim,
            columns: other.columns.iter().map(|&c| self.apply_index(c as usize) as u32).collect(),
        }
    }
}

/// An invertible linear map of F_3^n with its action tabulated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    map: LinearMap,
    table: Vec<u32>,
}

impl GroupElement {
    pub fn new(map: LinearMap) -> Result<Self> {
        if map.source_dim() != map.target_dim() {
            return Err(Gf3Error::DimensionMismatch { left: map.source_dim(), right: map.target_dim() });
        }
        if !map.is_injective() {
            return Err(Gf3Error::Precondition("matrix is singular".into()));
        }
        let table = (0..pow3(map.source_dim())).map(|x| map.apply_index(x) as u32).collect();
        Ok(Self { map, table })
    }

    pub fn identity(n: usize) -> Self {
        let cols: Vec<_> = (0..n).map(|i| TernaryVector::unit(n, i)).collect();
        Self::new(LinearMap::from_columns(n, &cols)).unwrap()
    }

    /// Uniform random element of GL(n, 3).
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        loop {
            let cols: Vec<_> = (0..n).map(|_| TernaryVector::from_raw(n, rng.gen_range(0..pow3(n)))).collect();
            if let Ok(g) = Self::new(LinearMap::from_columns(n, &cols)) {
                return g;
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.map.source_dim()
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    #[inline]
    pub fn apply_index(&self, x: usize) -> usize {
        self.table[x] as usize
    }

    pub fn apply(&self, x: TernaryVector) -> TernaryVector {
        TernaryVector::from_raw(self.dim(), self.apply_index(x.index()))
    }

    pub fn apply_set(&self, a: &TernarySet) -> TernarySet {
        let mut out = TernarySet::empty(a.dim());
        for x in a.iter() {
            out.insert_index(self.apply_index(x));
        }
        out
    }

    pub fn apply_subspace(&self, u: &AffineSubspace) -> AffineSubspace {
        self.map.apply_subspace(u)
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut inv = vec![0u32; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        let cols: Vec<_> = (0..n).map(|i| TernaryVector::from_raw(n, inv[pow3(i)] as usize)).collect();
        Self { map: LinearMap::from_columns(n, &cols), table: inv }
    }
}

/// `|GL(n, 3)| = prod_{i<n} (3^n - 3^i)`.
pub fn gl_order(n: usize) -> u64 {
    (0..n).map(|i| (pow3(n) - pow3(i)) as u64).product()
}
