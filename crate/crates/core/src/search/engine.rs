//! Backtracking over the pairs `{x, -x}` of F_3^n, n <= 4.
//!
//! Nonzero vectors are relabelled so that pair `i` occupies bit `i` (the
//! member whose highest nonzero trit is 1) and bit `64 + i` (its negative).
//! Negation is then a swap of the two halves of a `u128`, and the zero
//! vector gets the otherwise unused bit 63.
//!
//! Pairs are decided in ascending order of their low member's index; each
//! pair contributes its low member, its high member, or neither. A set is
//! sum-free as long as every added point is unblocked, where the blocked
//! points of `A` are `{0} ∪ -A ∪ (A + A) ∪ (A - A)`. At a leaf the set is
//! maximal iff every unchosen point is blocked.

use std::ops::ControlFlow;
use std::sync::OnceLock;

use crate::gf3::{add_index, neg_index, pow3, TernarySet};

pub(crate) const ZERO: usize = 63;
const HIGH: usize = 64;

pub(crate) struct Layout {
    pub n: usize,
    pub pairs: usize,
    label_of: Vec<u8>,
    index_of: [u16; 128],
    add: Vec<u8>,
}

static LAYOUTS: [OnceLock<Layout>; 5] = [const { OnceLock::new() }; 5];

pub(crate) fn layout(n: usize) -> &'static Layout {
    assert!((1..=4).contains(&n), "search engine supports dimensions 1..=4");
    LAYOUTS[n].get_or_init(|| Layout::new(n))
}

#[inline]
fn bit(l: usize) -> u128 {
    1u128 << l
}

impl Layout {
    fn new(n: usize) -> Self {
        let size = pow3(n);
        let mut label_of = vec![0u8; size];
        let mut index_of = [u16::MAX; 128];
        label_of[0] = ZERO as u8;
        index_of[ZERO] = 0;
        let mut p = 0;
        for x in 1..size {
            let nx = neg_index(n, x);
            if x < nx {
                label_of[x] = p as u8;
                label_of[nx] = (HIGH + p) as u8;
                index_of[p] = x as u16;
                index_of[HIGH + p] = nx as u16;
                p += 1;
            }
        }
        let mut add = vec![ZERO as u8; 128 * 128];
        for x in 0..size {
            for y in 0..size {
                add[label_of[x] as usize * 128 + label_of[y] as usize] = label_of[add_index(n, x, y)];
            }
        }
        Layout { n, pairs: p, label_of, index_of, add }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * 128 + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        if a == ZERO {
            ZERO
        } else {
            a ^ HIGH
        }
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn to_set(&self, mask: u128) -> TernarySet {
        let mut s = TernarySet::empty(self.n);
        for l in labels(mask) {
            s.insert_index(self.index_of[l] as usize);
        }
        s
    }

    pub fn from_set(&self, a: &TernarySet) -> u128 {
        a.iter().fold(0, |m, x| m | bit(self.label_of[x] as usize))
    }

    fn pair_mask(&self, from: usize) -> u128 {
        let lo: u128 = ((1u128 << self.pairs) - 1) & !((1u128 << from) - 1);
        lo | (lo << HIGH)
    }

    /// Blocked points of a sum-free mask.
    pub fn blocked_of(&self, a: u128) -> u128 {
        let mut blocked = bit(ZERO);
        let mut acc = 0u128;
        for l in labels(a) {
            blocked |= self.add_point(acc, l);
            acc |= bit(l);
        }
        blocked
    }

    /// Points newly blocked when `y` joins `a`.
    #[inline]
    fn add_point(&self, a: u128, y: usize) -> u128 {
        let mut b = bit(self.neg(y));
        for x in labels(a) {
            b |= bit(self.add(y, x)) | bit(self.sub(y, x)) | bit(self.sub(x, y));
        }
        b
    }
}

#[inline]
pub(crate) fn labels(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let l = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(l)
        }
    })
}

/// A search node: the chosen set, its blocked points and the next pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Node {
    pub a: u128,
    pub blocked: u128,
    pub pair: usize,
}

pub(crate) struct Engine<'l> {
    pub layout: &'l Layout,
    pub min_size: usize,
}

impl<'l> Engine<'l> {
    pub fn new(n: usize, min_size: usize) -> Self {
        Self { layout: layout(n), min_size }
    }

    pub fn root(&self, forced: u128) -> Option<Node> {
        let blocked = self.layout.blocked_of(forced);
        if forced & blocked != 0 {
            return None;
        }
        Some(Node { a: forced, blocked, pair: 0 })
    }

    fn viable(&self, node: &Node) -> bool {
        let lay = self.layout;
        let future = lay.pair_mask(node.pair);
        let free = !node.blocked & !node.a & future;
        let free_pairs = (free | (free >> HIGH)) & ((1u128 << HIGH) - 1);
        if self.min_size > (node.a.count_ones() + free_pairs.count_ones()) as usize {
            return false;
        }
        let decided = !future & lay.pair_mask(0);
        let pending = decided & !node.a & !node.blocked;
        labels(pending).all(|e| self.blockable(node, e, free))
    }

    /// Whether some future choices can still block `e`.
    fn blockable(&self, node: &Node, e: usize, free: u128) -> bool {
        let lay = self.layout;
        let mut blockers = bit(lay.neg(e));
        for x in labels(node.a) {
            blockers |= bit(lay.sub(e, x)) | bit(lay.add(e, x)) | bit(lay.sub(x, e));
        }
        if blockers & free != 0 {
            return true;
        }
        // two future points y, y' with y + y' = e or y - y' = e
        labels(free).any(|y| {
            let cand = bit(lay.sub(e, y)) | bit(lay.add(y, e)) | bit(lay.sub(y, e));
            cand & free & !bit(y) != 0
        })
    }

    fn is_leaf(&self, node: &Node) -> bool {
        node.pair >= self.layout.pairs
    }

    /// Children in search order: low member, high member, neither.
    pub fn children(&self, node: &Node, out: &mut Vec<Node>) {
        let i = node.pair;
        let (lo, hi) = (i, HIGH + i);
        let next = i + 1;
        if node.a & (bit(lo) | bit(hi)) != 0 {
            out.push(Node { pair: next, ..*node });
            return;
        }
        for y in [lo, hi] {
            if node.blocked & bit(y) == 0 {
                let blocked = node.blocked | self.layout.add_point(node.a, y);
                out.push(Node { a: node.a | bit(y), blocked, pair: next });
            }
        }
        out.push(Node { pair: next, ..*node });
    }

    /// Depth-first search below `node`; `emit` receives every maximal
    /// sum-free set of size at least `min_size`.
    pub fn run(&self, node: Node, nodes: &mut u64, emit: &mut impl FnMut(u128) -> ControlFlow<()>) -> ControlFlow<()> {
        *nodes += 1;
        if !self.viable(&node) {
            return ControlFlow::Continue(());
        }
        if self.is_leaf(&node) {
            // viability at a leaf means nothing unchosen is unblocked
            return emit(node.a);
        }
        let i = node.pair;
        let (lo, hi) = (i, HIGH + i);
        let next = i + 1;
        if node.a & (bit(lo) | bit(hi)) != 0 {
            return self.run(Node { pair: next, ..node }, nodes, emit);
        }
        for y in [lo, hi] {
            if node.blocked & bit(y) == 0 {
                let blocked = node.blocked | self.layout.add_point(node.a, y);
                self.run(Node { a: node.a | bit(y), blocked, pair: next }, nodes, emit)?;
            }
        }
        self.run(Node { pair: next, ..node }, nodes, emit)
    }

    /// Breadth-first expansion until at least `target` open nodes exist.
    /// Returned nodes are in depth-first order.
    pub fn frontier(&self, root: Node, target: usize, nodes: &mut u64) -> Vec<Node> {
        let mut level = vec![root];
        let mut buf = Vec::new();
        while level.len() < target && level.iter().any(|n| !self.is_leaf(n)) {
            let mut next = Vec::with_capacity(level.len() * 3);
            for n in &level {
                if self.is_leaf(n) {
                    next.push(*n);
                    continue;
                }
                *nodes += 1;
                if !self.viable(n) {
                    continue;
                }
                buf.clear();
                self.children(n, &mut buf);
                next.extend_from_slice(&buf);
            }
            level = next;
        }
        level
    }
}
