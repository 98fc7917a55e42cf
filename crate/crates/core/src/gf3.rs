//! Vectors and subsets of the ternary space F_3^n.
//!
//! A vector is identified with its little-endian base-3 index: coordinate
//! `i` contributes `trit * 3^i`. A subset is a dense bitset over those
//! indices. Sets of dimension 0 (the one-point space) are admitted so that
//! quotients by the whole space stay representable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use crate::error::{Gf3Error, Result};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 12;

const POW3: [usize; MAX_DIM + 1] = {
    let mut p = [1usize; MAX_DIM + 1];
    let mut i = 1;
    while i <= MAX_DIM {
        p[i] = p[i - 1] * 3;
        i += 1;
    }
    p
};

/// `3^k` for `k <= MAX_DIM`.
#[inline]
pub const fn pow3(k: usize) -> usize {
    POW3[k]
}

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim > MAX_DIM {
        Err(Gf3Error::DimensionTooLarge(dim))
    } else {
        Ok(())
    }
}

fn same_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Gf3Error::DimensionMismatch { left: a, right: b })
    }
}

// Addition tables for small dimensions; index arithmetic falls back to a
// digit loop above TABLE_DIM.
const TABLE_DIM: usize = 6;
static ADD_TABLES: [OnceLock<Vec<u16>>; TABLE_DIM + 1] = [const { OnceLock::new() }; TABLE_DIM + 1];

fn add_digits(dim: usize, mut a: usize, mut b: usize) -> usize {
    let mut out = 0;
    for i in 0..dim {
        let t = (a % 3 + b % 3) % 3;
        out += t * POW3[i];
        a /= 3;
        b /= 3;
    }
    out
}

fn add_table(dim: usize) -> &'static [u16] {
    ADD_TABLES[dim].get_or_init(|| {
        let size = POW3[dim];
        let mut t = Vec::with_capacity(size * size);
        for a in 0..size {
            for b in 0..size {
                t.push(add_digits(dim, a, b) as u16);
            }
        }
        t
    })
}

/// Digitwise sum mod 3 of two vector indices.
#[inline]
pub fn add_index(dim: usize, a: usize, b: usize) -> usize {
    if dim <= TABLE_DIM {
        add_table(dim)[a * POW3[dim] + b] as usize
    } else {
        add_digits(dim, a, b)
    }
}

/// Index of `-v`, obtained by swapping trits 1 and 2.
#[inline]
pub fn neg_index(dim: usize, mut a: usize) -> usize {
    let mut out = 0;
    for i in 0..dim {
        let t = a % 3;
        if t != 0 {
            out += (3 - t) * POW3[i];
        }
        a /= 3;
    }
    out
}

#[inline]
pub fn sub_index(dim: usize, a: usize, b: usize) -> usize {
    add_index(dim, a, neg_index(dim, b))
}

/// Multiplies every trit by `c` (mod 3).
#[inline]
pub fn scale_index(dim: usize, a: usize, c: u8) -> usize {
    match c % 3 {
        0 => 0,
        1 => a,
        _ => neg_index(dim, a),
    }
}

pub(crate) fn index_to_trits(dim: usize, mut a: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(dim);
    for _ in 0..dim {
        out.push((a % 3) as u8);
        a /= 3;
    }
    out
}

pub(crate) fn trits_to_index(trits: &[u8]) -> usize {
    trits.iter().rev().fold(0, |acc, &t| acc * 3 + t as usize)
}

/// An element of F_3^n.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernaryVector {
    dim: u8,
    index: u32,
}

impl TernaryVector {
    pub fn new(dim: usize, index: usize) -> Result<Self> {
        check_dim(dim)?;
        if index >= pow3(dim) {
            return Err(Gf3Error::IndexOutOfRange { dim, index: index as u64 });
        }
        Ok(Self { dim: dim as u8, index: index as u32 })
    }

    pub(crate) fn from_raw(dim: usize, index: usize) -> Self {
        debug_assert!(index < pow3(dim));
        Self { dim: dim as u8, index: index as u32 }
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_raw(dim, 0)
    }

    /// The `i`-th standard basis vector (0-based coordinate).
    pub fn unit(dim: usize, i: usize) -> Self {
        assert!(i < dim, "coordinate {i} out of range for dimension {dim}");
        Self::from_raw(dim, pow3(i))
    }

    pub fn from_trits(trits: &[u8]) -> Result<Self> {
        check_dim(trits.len())?;
        if let Some(&t) = trits.iter().find(|&&t| t > 2) {
            return Err(Gf3Error::InvalidTrit(t));
        }
        Ok(Self::from_raw(trits.len(), trits_to_index(trits)))
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn trits(self) -> Vec<u8> {
        index_to_trits(self.dim(), self.index())
    }

    pub fn trit(self, i: usize) -> u8 {
        ((self.index() / pow3(i)) % 3) as u8
    }

    pub fn is_zero(self) -> bool {
        self.index == 0
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self::from_raw(self.dim(), add_index(self.dim(), self.index(), other.index())))
    }

    pub fn try_sub(self, other: Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self::from_raw(self.dim(), sub_index(self.dim(), self.index(), other.index())))
    }

    pub fn scale(self, c: u8) -> Self {
        Self::from_raw(self.dim(), scale_index(self.dim(), self.index(), c))
    }
}

impl Add for TernaryVector {
    type Output = TernaryVector;

    /// Panics on dimension mismatch; use [`TernaryVector::try_add`] to handle it.
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("vector dimensions differ")
    }
}

impl Sub for TernaryVector {
    type Output = TernaryVector;

    fn sub(self, rhs: Self) -> Self {
        self.try_sub(rhs).expect("vector dimensions differ")
    }
}

impl Neg for TernaryVector {
    type Output = TernaryVector;

    // -x = x + x in characteristic 3
    fn neg(self) -> Self {
        self + self
    }
}

impl fmt::Debug for TernaryVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, t) in self.trits().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, ")")
    }
}

/// A subset of F_3^n stored as a bitset of length 3^n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernarySet {
    dim: u8,
    words: Vec<u64>,
}

impl TernarySet {
    pub fn empty(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        Self { dim: dim as u8, words: vec![0; pow3(dim).div_ceil(64)] }
    }

    pub fn try_empty(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self::empty(dim))
    }

    pub fn full(dim: usize) -> Self {
        let mut s = Self::empty(dim);
        for i in 0..pow3(dim) {
            s.insert_index(i);
        }
        s
    }

    pub fn singleton(v: TernaryVector) -> Self {
        let mut s = Self::empty(v.dim());
        s.insert_index(v.index());
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(dim: usize, indices: I) -> Result<Self> {
        let mut s = Self::try_empty(dim)?;
        for i in indices {
            if i >= pow3(dim) {
                return Err(Gf3Error::IndexOutOfRange { dim, index: i as u64 });
            }
            s.insert_index(i);
        }
        Ok(s)
    }

    pub fn from_vectors<I: IntoIterator<Item = TernaryVector>>(dim: usize, vs: I) -> Result<Self> {
        let mut s = Self::try_empty(dim)?;
        for v in vs {
            same_dim(dim, v.dim())?;
            s.insert_index(v.index());
        }
        Ok(s)
    }

    pub fn from_trit_rows(rows: &[&[u8]]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        let vs = rows.iter().map(|r| TernaryVector::from_trits(r)).collect::<Result<Vec<_>>>()?;
        Self::from_vectors(dim, vs)
    }

    /// Sets of dimension at most 4 fit in a `u128`.
    pub fn from_u128(dim: usize, bits: u128) -> Self {
        assert!(dim <= 4);
        let mut s = Self::empty(dim);
        s.words[0] = bits as u64;
        if s.words.len() > 1 {
            s.words[1] = (bits >> 64) as u64;
        }
        s
    }

    pub fn to_u128(&self) -> u128 {
        assert!(self.dim() <= 4);
        let lo = self.words[0] as u128;
        let hi = self.words.get(1).copied().unwrap_or(0) as u128;
        lo | (hi << 64)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    /// Number of points of the ambient space.
    pub fn universe(&self) -> usize {
        pow3(self.dim())
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn contains_index(&self, i: usize) -> bool {
        i < self.universe() && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn contains(&self, v: TernaryVector) -> bool {
        v.dim() == self.dim() && self.contains_index(v.index())
    }

    #[inline]
    pub fn insert_index(&mut self, i: usize) {
        debug_assert!(i < self.universe());
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn remove_index(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn insert(&mut self, v: TernaryVector) {
        assert_eq!(v.dim(), self.dim(), "vector dimension differs from set");
        self.insert_index(v.index());
    }

    /// Member indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }

    pub fn vectors(&self) -> impl Iterator<Item = TernaryVector> + '_ {
        let dim = self.dim();
        self.iter().map(move |i| TernaryVector::from_raw(dim, i))
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn min_index(&self) -> Option<usize> {
        self.iter().next()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        assert_eq!(self.dim, other.dim, "set dimensions differ");
        Self {
            dim: self.dim,
            words: self.words.iter().zip(&other.words).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn complement(&self) -> Self {
        Self::full(self.dim()).difference(self)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.dim == other.dim && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// `A + v`.
    pub fn translate(&self, v: TernaryVector) -> Self {
        assert_eq!(v.dim(), self.dim());
        self.translate_index(v.index())
    }

    pub(crate) fn translate_index(&self, v: usize) -> Self {
        let dim = self.dim();
        let mut out = Self::empty(dim);
        for a in self.iter() {
            out.insert_index(add_index(dim, a, v));
        }
        out
    }

    /// `-A`.
    pub fn negate(&self) -> Self {
        let dim = self.dim();
        let mut out = Self::empty(dim);
        for a in self.iter() {
            out.insert_index(neg_index(dim, a));
        }
        out
    }

    /// `{a + b : a in A, b in B}`.
    pub fn sumset(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        let dim = self.dim();
        let mut out = Self::empty(dim);
        if self.is_empty() || other.is_empty() {
            return Ok(out);
        }
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let large_idx: Vec<usize> = large.iter().collect();
        for a in small.iter() {
            for &b in &large_idx {
                out.insert_index(add_index(dim, a, b));
            }
        }
        Ok(out)
    }

    /// `{a - b : a in A, b in B}`.
    pub fn difference_set(&self, other: &Self) -> Result<Self> {
        self.sumset(&other.negate())
    }

    /// `kA = A + ... + A` (`k` summands); `0A = {0}`.
    pub fn k_fold_sumset(&self, k: usize) -> Self {
        let mut acc = Self::singleton(TernaryVector::zero(self.dim()));
        for _ in 0..k {
            acc = acc.sumset(self).expect("same dimension");
        }
        acc
    }

    /// No `a + b = c` with `a, b, c` in the set (repetition allowed).
    pub fn is_sum_free(&self) -> bool {
        let dim = self.dim();
        let idx: Vec<usize> = self.iter().collect();
        for (i, &a) in idx.iter().enumerate() {
            for &b in &idx[i..] {
                if self.contains_index(add_index(dim, a, b)) {
                    return false;
                }
            }
        }
        true
    }

    /// Points whose addition would create a solution of `x + y = z`:
    /// `{0} ∪ -A ∪ (A + A) ∪ (A - A)`.
    pub fn blocked_points(&self) -> Self {
        let dim = self.dim();
        let mut out = Self::empty(dim);
        out.insert_index(0);
        let idx: Vec<usize> = self.iter().collect();
        for &a in &idx {
            out.insert_index(neg_index(dim, a));
            for &b in &idx {
                out.insert_index(add_index(dim, a, b));
                out.insert_index(sub_index(dim, a, b));
            }
        }
        out
    }

    pub fn is_maximal_sum_free(&self) -> bool {
        self.is_sum_free() && self.union(&self.blocked_points()).len() == self.universe()
    }

    /// `Sym(A) = {x : A + x = A}` as a linear subspace.
    pub fn sym_group(&self) -> Result<crate::subspace::LinearSubspace> {
        let periods = self.period_set()?;
        Ok(crate::subspace::AffineSubspace::hull(&periods).into_linear().expect("period set contains 0"))
    }

    /// The period set `{x : A + x = A}` as a plain set.
    pub fn period_set(&self) -> Result<Self> {
        let a0 = self.min_index().ok_or(Gf3Error::EmptySet)?;
        let dim = self.dim();
        let mut out = Self::empty(dim);
        for a in self.iter() {
            let v = sub_index(dim, a, a0);
            if self.iter().all(|x| self.contains_index(add_index(dim, x, v))) {
                out.insert_index(v);
            }
        }
        Ok(out)
    }

    /// Ordering by sorted member lists, compared lexicographically.
    pub fn cmp_members(&self, other: &Self) -> Ordering {
        self.dim.cmp(&other.dim).then_with(|| {
            let mut a = self.iter();
            let mut b = other.iter();
            loop {
                match (a.next(), b.next()) {
                    (None, None) => return Ordering::Equal,
                    (None, Some(_)) => return Ordering::Less,
                    (Some(_), None) => return Ordering::Greater,
                    (Some(x), Some(y)) if x != y => return x.cmp(&y),
                    _ => {}
                }
            }
        })
    }
}

impl PartialOrd for TernarySet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TernarySet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_members(other)
    }
}

impl fmt::Debug for TernarySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.vectors()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(trits: &[u8]) -> TernaryVector {
        TernaryVector::from_trits(trits).unwrap()
    }

    fn set(rows: &[&[u8]]) -> TernarySet {
        TernarySet::from_trit_rows(rows).unwrap()
    }

    #[test]
    fn vector_addition() {
        assert_eq!(v(&[1, 2]) + v(&[2, 2]), v(&[0, 1]));
        let x = v(&[2, 0, 1]);
        assert_eq!(x + TernaryVector::zero(3), x);
        assert!((x + (-x)).is_zero());
        assert_eq!(-x, x + x);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        assert!(matches!(v(&[1]).try_add(v(&[1, 0])), Err(Gf3Error::DimensionMismatch { .. })));
        let a = TernarySet::empty(1);
        let b = TernarySet::empty(2);
        assert!(a.sumset(&b).is_err());
    }

    #[test]
    fn construction_limits() {
        assert!(TernaryVector::new(2, 9).is_err());
        assert!(TernaryVector::new(13, 0).is_err());
        assert!(TernarySet::try_empty(13).is_err());
        assert!(TernaryVector::from_trits(&[3]).is_err());
    }

    #[test]
    fn encode_decode_round_trip() {
        for n in 1..=4 {
            for i in 0..pow3(n) {
                let t = TernaryVector::new(n, i).unwrap();
                assert_eq!(TernaryVector::from_trits(&t.trits()).unwrap(), t);
            }
        }
    }

    #[test]
    fn sumset_examples() {
        let a = set(&[&[1], &[2]]);
        assert!(a.sumset(&TernarySet::empty(1)).unwrap().is_empty());
        let one = set(&[&[1]]);
        assert_eq!(one.sumset(&one).unwrap(), set(&[&[2]]));
        let line = set(&[&[1, 0], &[1, 1], &[1, 2]]);
        assert_eq!(line.sumset(&line).unwrap(), set(&[&[2, 0], &[2, 1], &[2, 2]]));
    }

    #[test]
    fn sum_free_examples() {
        assert!(set(&[&[1, 0], &[1, 1], &[1, 2]]).is_sum_free());
        let p = set(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]);
        assert!(p.is_sum_free());
        assert!(p.is_maximal_sum_free());
        assert!(!set(&[&[1], &[2]]).is_sum_free());
        assert!(set(&[&[1]]).is_maximal_sum_free());
        assert!(!set(&[&[1, 0], &[1, 1]]).is_maximal_sum_free());
        assert!(!set(&[&[0, 0]]).is_sum_free());
    }

    #[test]
    fn sym_group_examples() {
        let p = set(&[&[1, 0, 1], &[1, 1, 2], &[1, 1, 0], &[1, 1, 1], &[2, 0, 0]]);
        assert_eq!(p.sym_group().unwrap().dim(), 0);
        // brute-force all 27 translations
        let fixed = (0..27).filter(|&i| p.translate_index(i) == p).count();
        assert_eq!(fixed, 1);
        assert!(TernarySet::empty(2).sym_group().is_err());
        let single = set(&[&[2, 1, 1]]);
        assert_eq!(single.sym_group().unwrap().dim(), 0);
    }

    #[test]
    fn member_order() {
        let a = TernarySet::from_indices(2, [1]).unwrap();
        let b = TernarySet::from_indices(2, [1, 2]).unwrap();
        let c = TernarySet::from_indices(2, [2]).unwrap();
        assert!(a < b && b < c);
    }
}
