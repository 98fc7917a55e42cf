use std::collections::BTreeMap;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::gf3::TernarySet;
use crate::linear::gl_order;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct SizeSymCount {
    pub size: usize,
    pub sym_dim: usize,
    pub count: u64,
}

/// Outcome of [`enumerate_maximal_sumfree`](super::enumerate_maximal_sumfree).
///
/// Everything except `elapsed` is independent of the worker count.
#[derive(Clone, Debug)]
pub struct EnumerationReport {
    pub dim: usize,
    pub min_size: usize,
    pub up_to_iso: bool,
    /// Whether the unit vectors were forced into every candidate.
    pub seeded: bool,
    /// Found sets in ascending order; canonical forms when `up_to_iso`.
    pub sets: Vec<TernarySet>,
    pub sym_dims: Vec<usize>,
    /// Stabilizer order in GL(n, 3) of each representative when `up_to_iso`.
    pub stabilizer_orders: Option<Vec<u64>>,
    /// Reported sets per size.
    pub size_counts: BTreeMap<usize, u64>,
    pub size_sym_counts: Vec<SizeSymCount>,
    /// Number of sets per size before orbit reduction.
    pub expanded_size_counts: BTreeMap<usize, u64>,
    pub nodes: u64,
    pub tasks: usize,
    pub elapsed: Duration,
}

impl EnumerationReport {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn build(
        dim: usize,
        min_size: usize,
        up_to_iso: bool,
        seeded: bool,
        sets: Vec<TernarySet>,
        sym_dims: Vec<usize>,
        stabilizer_orders: Option<Vec<u64>>,
        nodes: u64,
        tasks: usize,
        elapsed: Duration,
    ) -> Self {
        let mut size_counts = BTreeMap::new();
        let mut expanded_size_counts = BTreeMap::new();
        let mut by_pair: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (i, s) in sets.iter().enumerate() {
            *size_counts.entry(s.len()).or_insert(0) += 1;
            *by_pair.entry((s.len(), sym_dims[i])).or_insert(0) += 1;
            let weight = match &stabilizer_orders {
                Some(st) => gl_order(dim) / st[i],
                None => 1,
            };
            *expanded_size_counts.entry(s.len()).or_insert(0) += weight;
        }
        let size_sym_counts = by_pair.into_iter().map(|((size, sym_dim), count)| SizeSymCount { size, sym_dim, count }).collect();
        Self {
            dim,
            min_size,
            up_to_iso,
            seeded,
            sets,
            sym_dims,
            stabilizer_orders,
            size_counts,
            size_sym_counts,
            expanded_size_counts,
            nodes,
            tasks,
            elapsed,
        }
    }

    /// Sizes that occur, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        self.size_counts.keys().copied().collect()
    }

    pub fn total(&self) -> usize {
        self.sets.len()
    }

    /// Wall time is left out unless `timing` is set, so that reports from
    /// different runs compare equal byte for byte.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "dim": self.dim,
            "min_size": self.min_size,
            "up_to_iso": self.up_to_iso,
            "seeded": self.seeded,
            "count": self.sets.len(),
            "size_counts": self.size_counts,
            "size_sym_counts": self.size_sym_counts,
            "expanded_size_counts": self.expanded_size_counts,
            "sets": self.sets,
            "sym_dims": self.sym_dims,
            "nodes": self.nodes,
            "tasks": self.tasks,
        });
        if let Some(st) = &self.stabilizer_orders {
            v["stabilizer_orders"] = json!(st);
        }
        if timing {
            v["elapsed_seconds"] = json!(self.elapsed.as_secs_f64());
        }
        v
    }
}
