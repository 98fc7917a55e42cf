//! Canonical forms under GL(n, 3).
//!
//! The canonical form of `A` is the member of its orbit with the
//! lexicographically least sorted index list. An element `g` is built one
//! preimage of a unit vector at a time: choosing `b_0, .., b_k` fixes the
//! image of `A` on every index below `3^(k+1)`, so candidates are compared
//! on that prefix and only the best ones are extended.

use crate::gf3::{add_index, pow3, scale_index, TernarySet};
use crate::linear::{gl_order, GroupElement, LinearMap};
use crate::TernaryVector;

/// Result of a canonical-form computation.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub form: TernarySet,
    /// Maps the input onto `form`.
    pub transporter: GroupElement,
    /// Order of the setwise stabilizer of the input in GL(n, 3).
    pub stabilizer_order: u64,
}

impl Canonical {
    pub fn orbit_size(&self) -> u64 {
        gl_order(self.form.dim()) / self.stabilizer_order
    }
}

struct Partial {
    basis: Vec<usize>,
    // span[j] = sum_i digit_i(j) * basis[i]
    span: Vec<usize>,
}

// bits of the image on indices [3^k, 3^(k+1)) when b_k = c, most
// significant first so that numeric order is the preferred order
fn level_pattern(a: &TernarySet, n: usize, span: &[usize], c: usize, out: &mut Vec<u64>) {
    out.clear();
    let mut word = 0u64;
    let mut filled = 0;
    for t in 1..=2u8 {
        let tc = scale_index(n, c, t);
        for &s in span {
            word = (word << 1) | a.contains_index(add_index(n, s, tc)) as u64;
            filled += 1;
            if filled == 64 {
                out.push(word);
                word = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(word << (64 - filled));
    }
}

pub fn canonical(a: &TernarySet) -> Canonical {
    let n = a.dim();
    let size = pow3(n);
    let nonzero = a.len() - a.contains_index(0) as usize;
    if nonzero == 0 || nonzero == size - 1 {
        return Canonical { form: a.clone(), transporter: GroupElement::identity(n), stabilizer_order: gl_order(n) };
    }
    let mut frontier = vec![Partial { basis: Vec::new(), span: vec![0] }];
    let mut pattern = Vec::new();
    let mut best_pattern: Vec<u64> = Vec::new();
    let mut final_count = 0u64;
    let mut final_best: Option<Vec<usize>> = None;
    for k in 0..n {
        let last = k + 1 == n;
        let mut next: Vec<Partial> = Vec::new();
        best_pattern.clear();
        let mut have_best = false;
        for p in &frontier {
            let mut in_span = vec![false; size];
            for &s in &p.span {
                in_span[s] = true;
            }
            for c in 0..size {
                if in_span[c] {
                    continue;
                }
                level_pattern(a, n, &p.span, c, &mut pattern);
                let ord = if have_best { pattern.cmp(&best_pattern) } else { std::cmp::Ordering::Greater };
                match ord {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Greater => {
                        best_pattern.clone_from(&pattern);
                        have_best = true;
                        next.clear();
                        final_count = 0;
                        final_best = None;
                    }
                    std::cmp::Ordering::Equal => {}
                }
                if last {
                    final_count += 1;
                    if final_best.is_none() {
                        let mut b = p.basis.clone();
                        b.push(c);
                        final_best = Some(b);
                    }
                } else {
                    let mut basis = p.basis.clone();
                    basis.push(c);
                    let mut span = p.span.clone();
                    for t in 1..=2u8 {
                        let tc = scale_index(n, c, t);
                        span.extend(p.span.iter().map(|&s| add_index(n, s, tc)));
                    }
                    next.push(Partial { basis, span });
                }
            }
        }
        frontier = next;
    }
    let basis = final_best.expect("at least one basis");
    let cols: Vec<TernaryVector> = basis.iter().map(|&b| TernaryVector::from_raw(n, b)).collect();
    // g^{-1} sends e_i to b_i
    let inv = GroupElement::new(LinearMap::from_columns(n, &cols)).expect("basis is independent");
    let transporter = inv.inverse();
    let form = transporter.apply_set(a);
    Canonical { form, transporter, stabilizer_order: final_count }
}

/// The least member of the GL(n, 3)-orbit of `a`.
pub fn canonical_form(a: &TernarySet) -> TernarySet {
    canonical(a).form
}
