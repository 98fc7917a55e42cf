//! Affine and linear subspaces of F_3^n in canonical form.
//!
//! The direction space is kept in reduced echelon form where each row's
//! pivot is its highest nonzero coordinate, normalized to 1, and no other
//! row is nonzero there. Rows are stored in ascending pivot order. With that
//! form, reducing a point by the rows yields the index-minimal member of its
//! coset, which is what `base_point` stores.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Gf3Error, Result};
use crate::gf3::{index_to_trits, pow3, trits_to_index, TernarySet, TernaryVector};

#[derive(Clone, Debug, Default)]
pub(crate) struct Echelon {
    dim: usize,
    // (pivot, row), ascending pivot
    rows: Vec<(usize, Vec<u8>)>,
}

fn highest_nonzero(v: &[u8]) -> Option<usize> {
    v.iter().rposition(|&t| t != 0)
}

fn axpy(y: &mut [u8], c: u8, x: &[u8]) {
    // y <- y - c*x
    if c == 0 {
        return;
    }
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi = (*yi + 3 * 3 - c * xi) % 3;
    }
}

impl Echelon {
    pub(crate) fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new() }
    }

    pub(crate) fn reduce(&self, v: &mut [u8]) {
        for (p, row) in self.rows.iter().rev() {
            let c = v[*p];
            axpy(v, c, row);
        }
    }

    pub(crate) fn reduce_index(&self, i: usize) -> usize {
        let mut t = index_to_trits(self.dim, i);
        self.reduce(&mut t);
        trits_to_index(&t)
    }

    /// Returns true if `v` enlarged the span.
    pub(crate) fn insert(&mut self, v: &[u8]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        let Some(p) = highest_nonzero(&v) else {
            return false;
        };
        if v[p] == 2 {
            for t in v.iter_mut() {
                *t = (*t * 2) % 3;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            axpy(row, c, &v);
        }
        let pos = self.rows.partition_point(|(q, _)| *q < p);
        self.rows.insert(pos, (p, v));
        true
    }

    pub(crate) fn insert_index(&mut self, i: usize) -> bool {
        self.insert(&index_to_trits(self.dim, i))
    }

    fn row_indices(&self) -> Vec<u32> {
        self.rows.iter().map(|(_, r)| trits_to_index(r) as u32).collect()
    }

    fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }
}

/// A possibly empty affine subspace `base_point + span(basis)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineSubspace {
    ambient: u8,
    basis: Vec<u32>,
    base: Option<u32>,
}

impl AffineSubspace {
    pub fn empty(ambient: usize) -> Self {
        Self { ambient: ambient as u8, basis: Vec::new(), base: None }
    }

    pub fn point(v: TernaryVector) -> Self {
        Self { ambient: v.dim() as u8, basis: Vec::new(), base: Some(v.index() as u32) }
    }

    pub fn whole(ambient: usize) -> Self {
        let dirs: Vec<usize> = (0..ambient).map(pow3).collect();
        Self::from_parts(ambient, 0, &dirs)
    }

    fn from_echelon(ambient: usize, point: usize, ech: &Echelon) -> Self {
        Self {
            ambient: ambient as u8,
            basis: ech.row_indices(),
            base: Some(ech.reduce_index(point) as u32),
        }
    }

    /// `point + span(directions)` in canonical form.
    pub(crate) fn from_parts(ambient: usize, point: usize, directions: &[usize]) -> Self {
        let mut ech = Echelon::new(ambient);
        for &d in directions {
            ech.insert_index(d);
        }
        Self::from_echelon(ambient, point, &ech)
    }

    pub fn from_generators(point: TernaryVector, directions: &[TernaryVector]) -> Result<Self> {
        let n = point.dim();
        if let Some(d) = directions.iter().find(|d| d.dim() != n) {
            return Err(Gf3Error::DimensionMismatch { left: n, right: d.dim() });
        }
        let dirs: Vec<usize> = directions.iter().map(|d| d.index()).collect();
        Ok(Self::from_parts(n, point.index(), &dirs))
    }

    /// Smallest affine subspace containing `points`; empty for the empty set.
    pub fn hull(points: &TernarySet) -> Self {
        let n = points.dim();
        let mut it = points.iter();
        let Some(p0) = it.next() else {
            return Self::empty(n);
        };
        let mut ech = Echelon::new(n);
        let t0 = index_to_trits(n, p0);
        for p in it {
            let mut t = index_to_trits(n, p);
            for (a, b) in t.iter_mut().zip(&t0) {
                *a = (*a + 3 - b) % 3;
            }
            ech.insert(&t);
        }
        Self::from_echelon(n, p0, &ech)
    }

    pub(crate) fn echelon(&self) -> Echelon {
        let n = self.ambient_dim();
        let mut ech = Echelon::new(n);
        for &b in &self.basis {
            ech.insert_index(b as usize);
        }
        ech
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient as usize
    }

    pub fn is_empty(&self) -> bool {
        self.base.is_none()
    }

    /// Dimension, or `None` for the empty subspace.
    pub fn dim(&self) -> Option<usize> {
        self.base.map(|_| self.basis.len())
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            pow3(self.basis.len())
        }
    }

    pub fn basis(&self) -> Vec<TernaryVector> {
        self.basis.iter().map(|&b| TernaryVector::from_raw(self.ambient_dim(), b as usize)).collect()
    }

    pub fn base_point(&self) -> Option<TernaryVector> {
        self.base.map(|b| TernaryVector::from_raw(self.ambient_dim(), b as usize))
    }

    pub fn contains_origin(&self) -> bool {
        self.base == Some(0)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        match self.base {
            None => false,
            Some(b) => self.echelon().reduce_index(i) == b as usize,
        }
    }

    pub fn contains(&self, v: TernaryVector) -> bool {
        v.dim() == self.ambient_dim() && self.contains_index(v.index())
    }

    /// All members as a set.
    pub fn points(&self) -> TernarySet {
        let n = self.ambient_dim();
        let mut out = TernarySet::empty(n);
        let Some(base) = self.base else {
            return out;
        };
        let k = self.basis.len();
        for combo in 0..pow3(k) {
            let mut x = base as usize;
            let mut c = combo;
            for &b in &self.basis {
                x = crate::gf3::add_index(n, x, crate::gf3::scale_index(n, b as usize, (c % 3) as u8));
                c /= 3;
            }
            out.insert_index(x);
        }
        out
    }

    /// The direction space `[U] = U - U`.
    pub fn direction(&self) -> Result<LinearSubspace> {
        if self.is_empty() {
            return Err(Gf3Error::EmptySubspace);
        }
        Ok(LinearSubspace(Self { ambient: self.ambient, basis: self.basis.clone(), base: Some(0) }))
    }

    pub fn translate(&self, v: TernaryVector) -> Self {
        match self.base {
            None => self.clone(),
            Some(b) => {
                let p = crate::gf3::add_index(self.ambient_dim(), b as usize, v.index());
                Self::from_echelon(self.ambient_dim(), p, &self.echelon())
            }
        }
    }

    /// `-U`.
    pub fn negate(&self) -> Self {
        match self.base {
            None => self.clone(),
            Some(b) => {
                let p = crate::gf3::neg_index(self.ambient_dim(), b as usize);
                Self::from_echelon(self.ambient_dim(), p, &self.echelon())
            }
        }
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        let Some(b) = self.base else {
            return true;
        };
        if other.is_empty() || self.ambient != other.ambient {
            return false;
        }
        let ech = other.echelon();
        ech.reduce_index(b as usize) == other.base.unwrap() as usize
            && self.basis.iter().all(|&d| ech.reduce_index(d as usize) == 0)
    }

    /// The cone `C(U)`: the linear span of `U`.
    pub fn cone(&self) -> Result<LinearSubspace> {
        let b = self.base.ok_or(Gf3Error::EmptySubspace)?;
        let mut dirs: Vec<usize> = self.basis.iter().map(|&d| d as usize).collect();
        dirs.push(b as usize);
        Ok(LinearSubspace(Self::from_parts(self.ambient_dim(), 0, &dirs)))
    }

    pub fn into_linear(self) -> Option<LinearSubspace> {
        if self.contains_origin() {
            Some(LinearSubspace(self))
        } else {
            None
        }
    }

    /// Codimension inside the ambient space, `None` when empty.
    pub fn codim(&self) -> Option<usize> {
        self.dim().map(|d| self.ambient_dim() - d)
    }
}

impl fmt::Debug for AffineSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.base_point() {
            None => write!(f, "∅"),
            Some(b) => write!(f, "{:?} + <{:?}>", b, self.basis()),
        }
    }
}

/// An affine subspace that contains the origin.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearSubspace(AffineSubspace);

impl LinearSubspace {
    pub fn zero(ambient: usize) -> Self {
        Self(AffineSubspace::point(TernaryVector::zero(ambient)))
    }

    pub fn whole(ambient: usize) -> Self {
        Self(AffineSubspace::whole(ambient))
    }

    pub fn span(ambient: usize, vectors: &[TernaryVector]) -> Result<Self> {
        Ok(Self(AffineSubspace::from_generators(TernaryVector::zero(ambient), vectors)?))
    }

    pub fn as_affine(&self) -> &AffineSubspace {
        &self.0
    }

    pub fn into_affine(self) -> AffineSubspace {
        self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.0.basis.len()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn basis(&self) -> Vec<TernaryVector> {
        self.0.basis()
    }

    pub fn contains(&self, v: TernaryVector) -> bool {
        self.0.contains(v)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.0.contains_index(i)
    }

    pub fn points(&self) -> TernarySet {
        self.0.points()
    }

    pub fn is_subspace_of(&self, other: &LinearSubspace) -> bool {
        self.0.is_subset_of(&other.0)
    }

    /// Pivot coordinates of the echelon basis, ascending.
    pub fn pivots(&self) -> Vec<usize> {
        self.0.echelon().pivots()
    }

    /// Coordinates of a member with respect to the echelon basis: the trits
    /// at the pivot positions.
    pub fn coordinates(&self, v: TernaryVector) -> Option<TernaryVector> {
        if !self.contains(v) {
            return None;
        }
        let t: Vec<u8> = self.pivots().iter().map(|&p| v.trit(p)).collect();
        Some(TernaryVector::from_raw(t.len(), trits_to_index(&t)))
    }

    /// Inverse of [`LinearSubspace::coordinates`].
    pub fn embed(&self, local: TernaryVector) -> TernaryVector {
        assert_eq!(local.dim(), self.dim());
        let n = self.ambient_dim();
        let mut x = 0;
        for (i, &b) in self.0.basis.iter().enumerate() {
            x = crate::gf3::add_index(n, x, crate::gf3::scale_index(n, b as usize, local.trit(i)));
        }
        TernaryVector::from_raw(n, x)
    }

    /// The linear map F_3^k -> F_3^n sending the unit vectors to the basis.
    pub fn embedding(&self) -> crate::linear::LinearMap {
        crate::linear::LinearMap::from_columns(self.ambient_dim(), &self.basis())
    }

    /// Index-minimal representative of `v + self`.
    pub fn reduce(&self, v: TernaryVector) -> TernaryVector {
        TernaryVector::from_raw(v.dim(), self.0.echelon().reduce_index(v.index()))
    }

    /// The coset `v + self`.
    pub fn coset(&self, v: TernaryVector) -> AffineSubspace {
        self.0.translate(v)
    }
}

impl fmt::Debug for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{:?}>", self.basis())
    }
}

/// `aff(X)`.
pub fn affine_hull(x: &TernarySet) -> AffineSubspace {
    AffineSubspace::hull(x)
}

/// `C(U)`.
pub fn cone(u: &AffineSubspace) -> Result<LinearSubspace> {
    u.cone()
}

/// The hyperplane `{x : f . x = c}` for a nonzero functional `f`.
pub fn hyperplane_from_functional(f: TernaryVector, c: u8) -> AffineSubspace {
    let n = f.dim();
    let ft = f.trits();
    let p = highest_nonzero(&ft).expect("nonzero functional");
    // f_p is its own inverse in F_3
    let inv = ft[p];
    let mut dirs = Vec::with_capacity(n - 1);
    for j in (0..n).filter(|&j| j != p) {
        let mut d = vec![0u8; n];
        d[j] = 1;
        d[p] = (3 - (ft[j] * inv) % 3) % 3;
        dirs.push(trits_to_index(&d));
    }
    let mut base = vec![0u8; n];
    base[p] = (c * inv) % 3;
    AffineSubspace::from_parts(n, trits_to_index(&base), &dirs)
}

/// All hyperplanes of F_3^n (codimension 1), sorted; with `avoid_origin`
/// only those not containing 0.
pub fn enumerate_hyperplanes(n: usize, avoid_origin: bool) -> Vec<AffineSubspace> {
    let mut out = BTreeSet::new();
    for fi in 1..pow3(n) {
        let f = TernaryVector::from_raw(n, fi);
        out.insert(hyperplane_from_functional(f, 1));
        if !avoid_origin {
            out.insert(hyperplane_from_functional(f, 0));
        }
    }
    out.into_iter().collect()
}

/// All `k`-dimensional linear subspaces of F_3^d, sorted.
pub fn enumerate_linear_subspaces(d: usize, k: usize) -> Vec<LinearSubspace> {
    let mut out = BTreeSet::new();
    if k > d {
        return Vec::new();
    }
    let mut pivots = Vec::with_capacity(k);
    pivot_sets(d, k, 0, &mut pivots, &mut |piv| {
        // free slots: for the row with pivot p, each non-pivot coordinate below p
        let slots: Vec<(usize, usize)> = piv
            .iter()
            .enumerate()
            .flat_map(|(r, &p)| (0..p).filter(|j| !piv.contains(j)).map(move |j| (r, j)))
            .collect();
        for assignment in 0..pow3(slots.len()) {
            let mut rows: Vec<Vec<u8>> = piv
                .iter()
                .map(|&p| {
                    let mut r = vec![0u8; d];
                    r[p] = 1;
                    r
                })
                .collect();
            let mut a = assignment;
            for &(r, j) in &slots {
                rows[r][j] = (a % 3) as u8;
                a /= 3;
            }
            let dirs: Vec<usize> = rows.iter().map(|r| trits_to_index(r)).collect();
            out.insert(LinearSubspace(AffineSubspace::from_parts(d, 0, &dirs)));
        }
    });
    out.into_iter().collect()
}

fn pivot_sets(d: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for p in start..d {
        cur.push(p);
        pivot_sets(d, k, p + 1, cur, f);
        cur.pop();
    }
}

/// All `k`-dimensional affine subspaces contained in `h`, sorted.
pub fn enumerate_affine_subspaces(h: &AffineSubspace, k: usize) -> Result<Vec<AffineSubspace>> {
    let d = h.dim().ok_or(Gf3Error::EmptySubspace)?;
    if k > d {
        return Err(Gf3Error::SubspaceDimension { k, max: d });
    }
    let n = h.ambient_dim();
    let dir = h.direction()?;
    let emb = dir.embedding();
    let hpoints = h.points();
    let mut out = BTreeSet::new();
    for local in enumerate_linear_subspaces(d, k) {
        let dirs: Vec<usize> = local.basis().into_iter().map(|b| emb.apply(b).index()).collect();
        let mut ech = Echelon::new(n);
        for &x in &dirs {
            ech.insert_index(x);
        }
        let mut seen = BTreeSet::new();
        for p in hpoints.iter() {
            let base = ech.reduce_index(p);
            if seen.insert(base) {
                out.insert(AffineSubspace::from_echelon(n, base, &ech));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Image of `a` in `V / k`.
///
/// The quotient is coordinatized by the non-pivot coordinates of `k`'s
/// echelon basis, in ascending order: a vector is first reduced modulo `k`
/// (which zeroes the pivot coordinates), then its remaining trits are read
/// off. The result lives in dimension `n - dim(k)`.
pub fn quotient_map(a: &TernarySet, k: &LinearSubspace) -> Result<TernarySet> {
    let n = a.dim();
    if n != k.ambient_dim() {
        return Err(Gf3Error::DimensionMismatch { left: n, right: k.ambient_dim() });
    }
    let pivots = k.pivots();
    let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
    let ech = k.0.echelon();
    let mut out = TernarySet::empty(free.len());
    for x in a.iter() {
        let mut t = index_to_trits(n, x);
        ech.reduce(&mut t);
        let q: Vec<u8> = free.iter().map(|&j| t[j]).collect();
        out.insert_index(trits_to_index(&q));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(t: &[u8]) -> TernaryVector {
        TernaryVector::from_trits(t).unwrap()
    }

    fn set(rows: &[&[u8]]) -> TernarySet {
        TernarySet::from_trit_rows(rows).unwrap()
    }

    #[test]
    fn hull_examples() {
        assert!(affine_hull(&TernarySet::empty(2)).is_empty());
        let p = affine_hull(&set(&[&[2, 1]]));
        assert_eq!(p.dim(), Some(0));
        assert_eq!(p.base_point(), Some(v(&[2, 1])));
        let line = affine_hull(&set(&[&[1, 0], &[1, 1]]));
        assert_eq!(line.points(), set(&[&[1, 0], &[1, 1], &[1, 2]]));
    }

    #[test]
    fn base_point_is_index_minimal() {
        for n in 1..=3 {
            for h in enumerate_hyperplanes(n, false) {
                let pts = h.points();
                assert_eq!(h.base_point().unwrap().index(), pts.min_index().unwrap());
                assert_eq!(pts.len(), pow3(n - 1));
            }
        }
    }

    #[test]
    fn cone_examples() {
        let c = cone(&AffineSubspace::point(v(&[1, 0]))).unwrap();
        assert_eq!(c.points(), set(&[&[0, 0], &[1, 0], &[2, 0]]));
        let lin = LinearSubspace::span(2, &[v(&[1, 1])]).unwrap();
        assert_eq!(cone(lin.as_affine()).unwrap(), lin);
        let line = affine_hull(&set(&[&[1, 0], &[1, 1]]));
        assert_eq!(cone(&line).unwrap().len(), 9);
        assert!(cone(&AffineSubspace::empty(2)).is_err());
    }

    #[test]
    fn hyperplane_counts() {
        assert_eq!(enumerate_hyperplanes(1, true).len(), 2);
        // lines of F_3^2: 12 total, 4 through the origin
        let all = enumerate_hyperplanes(2, false);
        assert_eq!(all.len(), 12);
        assert_eq!(all.iter().filter(|h| h.contains_origin()).count(), 4);
        assert_eq!(enumerate_hyperplanes(2, true).len(), 8);
        assert_eq!(enumerate_hyperplanes(3, true).len(), 26);
        assert_eq!(enumerate_hyperplanes(3, false).len(), 39);
        assert_eq!(enumerate_hyperplanes(4, false).len(), 120);
    }

    #[test]
    fn affine_subspace_enumeration() {
        let plane = AffineSubspace::whole(2);
        assert_eq!(enumerate_affine_subspaces(&plane, 2).unwrap(), vec![plane.clone()]);
        assert_eq!(enumerate_affine_subspaces(&plane, 0).unwrap().len(), 9);
        let lines = enumerate_affine_subspaces(&plane, 1).unwrap();
        assert_eq!(lines.len(), 12);
        // brute force: distinct 3-point sets {a, a+d, a+2d}
        let mut brute = BTreeSet::new();
        for a in 0..9 {
            for d in 1..9 {
                let b = crate::gf3::add_index(2, a, d);
                let c = crate::gf3::add_index(2, b, d);
                brute.insert(TernarySet::from_indices(2, [a, b, c]).unwrap());
            }
        }
        let ours: BTreeSet<_> = lines.iter().map(|l| l.points()).collect();
        assert_eq!(ours, brute);
        assert!(enumerate_affine_subspaces(&plane, 3).is_err());
        assert_eq!(enumerate_affine_subspaces(&AffineSubspace::whole(3), 1).unwrap().len(), 117);
    }

    #[test]
    fn linear_subspace_counts() {
        // Gaussian binomials over F_3
        assert_eq!(enumerate_linear_subspaces(3, 1).len(), 13);
        assert_eq!(enumerate_linear_subspaces(4, 2).len(), 130);
        assert_eq!(enumerate_linear_subspaces(4, 3).len(), 40);
    }

    #[test]
    fn quotient_examples() {
        let a = set(&[&[1, 0, 2], &[0, 2, 2]]);
        assert_eq!(quotient_map(&a, &LinearSubspace::zero(3)).unwrap(), a);
        let q = quotient_map(&a, &LinearSubspace::whole(3)).unwrap();
        assert_eq!((q.dim(), q.indices()), (0, vec![0]));
        assert!(quotient_map(&TernarySet::empty(3), &LinearSubspace::whole(3)).unwrap().is_empty());
        let k = LinearSubspace::span(3, &[v(&[1, 1, 0])]).unwrap();
        let coset = k.coset(v(&[0, 1, 2])).points();
        assert_eq!(quotient_map(&coset, &k).unwrap().len(), 1);
    }

    #[test]
    fn coordinates_round_trip() {
        let l = LinearSubspace::span(3, &[v(&[1, 2, 0]), v(&[0, 1, 1])]).unwrap();
        for x in l.points().vectors() {
            let c = l.coordinates(x).unwrap();
            assert_eq!(l.embed(c), x);
        }
        assert!(l.coordinates(v(&[1, 0, 0])).is_none());
    }

    #[test]
    fn subset_and_negation() {
        let h = hyperplane_from_functional(v(&[1, 0, 0]), 1);
        let u = AffineSubspace::point(v(&[1, 2, 1]));
        assert!(u.is_subset_of(&h));
        assert!(!u.negate().is_subset_of(&h));
        assert_eq!(h.negate().points(), h.points().negate());
        assert!(AffineSubspace::empty(3).is_subset_of(&h));
    }
}
