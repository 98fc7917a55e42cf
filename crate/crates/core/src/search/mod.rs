//! Exhaustive enumeration of maximal sum-free sets, canonical forms under
//! GL(n, 3), and the verification jobs built on them.

mod canon;
pub mod checkpoint;
pub(crate) mod engine;
mod lev;
pub mod props;
mod report;
mod verify;

pub use canon::{canonical, canonical_form, Canonical};
pub use lev::lev_construction;
pub use props::{check_proposition, PropError, PropId, PropParams};
pub use report::{EnumerationReport, SizeSymCount};
pub use verify::{compute_t, dense_threshold, verify_main_theorem, Direction, VerificationReport, VerificationVerdict};

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::gf3::{pow3, TernarySet};
use checkpoint::{Checkpoint, TaskRecord};
use engine::{Engine, Node};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("dimension {0} is outside the supported range 1..=4")]
    UnsupportedDimension(usize),
    #[error("checkpoint I/O: {0}")]
    Checkpoint(#[from] std::io::Error),
    #[error("checkpoint was written for different search parameters")]
    CheckpointMismatch,
    #[error("stopped after {completed} of {total} tasks; rerun with the same checkpoint to resume")]
    Interrupted { completed: usize, total: usize },
    #[error("worker pool: {0}")]
    Pool(String),
}

/// Execution knobs that never change the result.
#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub jobs: usize,
    /// Number of subtrees the search is split into.
    pub tasks: usize,
    pub checkpoint: Option<PathBuf>,
    /// Stop once this many tasks have finished in this run.
    pub stop_after_tasks: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self { jobs: 1, tasks: 256, checkpoint: None, stop_after_tasks: None }
    }
}

impl SearchOptions {
    pub fn with_jobs(jobs: usize) -> Self {
        Self { jobs, ..Self::default() }
    }

    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool, SearchError> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs.max(1))
            .build()
            .map_err(|e| SearchError::Pool(e.to_string()))
    }
}

fn check_dim(n: usize) -> Result<(), SearchError> {
    if (1..=4).contains(&n) {
        Ok(())
    } else {
        Err(SearchError::UnsupportedDimension(n))
    }
}

static MAX_SUMFREE: [OnceLock<usize>; 5] = [const { OnceLock::new() }; 5];

/// Largest size of a sum-free subset of F_3^k, by exhaustive search.
pub fn max_sum_free_size(k: usize) -> usize {
    if k == 0 {
        return 0;
    }
    *MAX_SUMFREE[k].get_or_init(|| {
        let engine = Engine::new(k, 1);
        let mut best = 0;
        let mut nodes = 0;
        let root = engine.root(0).expect("empty set is sum-free");
        let _ = engine.run(root, &mut nodes, &mut |a| {
            best = best.max(a.count_ones() as usize);
            ControlFlow::Continue(())
        });
        best
    })
}

/// The unit vectors `e_1, .., e_n`, forced into the set when every
/// candidate spans the space: any spanning set contains a basis, and GL(n, 3)
/// moves every ordered basis to the standard one.
pub(crate) fn seeding_applies(n: usize, min_size: usize) -> bool {
    max_sum_free_size(n - 1) < min_size
}

struct RawSearch {
    sets: Vec<TernarySet>,
    nodes: u64,
    tasks: usize,
}

fn raw_search(n: usize, min_size: usize, seeded: bool, opts: &SearchOptions) -> Result<RawSearch, SearchError> {
    let engine = Engine::new(n, min_size);
    let lay = engine.layout;
    let forced = if seeded {
        lay.from_set(&TernarySet::from_indices(n, (0..n).map(pow3)).unwrap())
    } else {
        0
    };
    let Some(root) = engine.root(forced) else {
        return Ok(RawSearch { sets: Vec::new(), nodes: 0, tasks: 0 });
    };
    let mut front_nodes = 0;
    let frontier: Vec<Node> = engine.frontier(root, opts.tasks.max(1), &mut front_nodes);
    let total = frontier.len();

    let fresh = Checkpoint::new(n, min_size, seeded, total);
    let mut state = match &opts.checkpoint {
        Some(path) => match Checkpoint::load(path)? {
            Some(cp) if cp.matches(&fresh) => cp,
            Some(_) => return Err(SearchError::CheckpointMismatch),
            None => fresh,
        },
        None => fresh,
    };
    let pending: Vec<usize> = (0..total).filter(|i| !state.completed.contains_key(i)).collect();
    let budget = opts.stop_after_tasks.unwrap_or(usize::MAX);
    let to_run: Vec<usize> = pending.iter().copied().take(budget).collect();
    let interrupted = to_run.len() < pending.len();

    let shared = Mutex::new((std::mem::take(&mut state.completed), Instant::now()));
    let save = |completed: &BTreeMap<usize, TaskRecord>| -> Result<(), SearchError> {
        if let Some(path) = &opts.checkpoint {
            let cp = Checkpoint { completed: completed.clone(), ..Checkpoint::new(n, min_size, seeded, total) };
            cp.save(path)?;
        }
        Ok(())
    };
    opts.pool()?.install(|| {
        to_run.par_iter().try_for_each(|&t| -> Result<(), SearchError> {
            let mut nodes = 0;
            let mut found = Vec::new();
            let _ = engine.run(frontier[t], &mut nodes, &mut |a| {
                found.push(lay.to_set(a).indices());
                ControlFlow::Continue(())
            });
            let mut guard = shared.lock().unwrap();
            guard.0.insert(t, TaskRecord { nodes, sets: found });
            if guard.1.elapsed() > Duration::from_secs(2) {
                save(&guard.0)?;
                guard.1 = Instant::now();
            }
            Ok(())
        })
    })?;
    let (completed, _) = shared.into_inner().unwrap();
    save(&completed)?;
    if interrupted {
        return Err(SearchError::Interrupted { completed: completed.len(), total });
    }
    let mut nodes = front_nodes;
    let mut sets = Vec::new();
    for rec in completed.values() {
        nodes += rec.nodes;
        sets.extend(rec.sets.iter().map(|s| TernarySet::from_indices(n, s.iter().copied()).unwrap()));
    }
    Ok(RawSearch { sets, nodes, tasks: total })
}

/// Every maximal sum-free subset of F_3^n with at least `min_size`
/// elements, or one canonical representative per GL(n, 3)-orbit when
/// `up_to_iso` is set.
pub fn enumerate_maximal_sumfree(n: usize, min_size: usize, up_to_iso: bool, opts: &SearchOptions) -> Result<EnumerationReport, SearchError> {
    check_dim(n)?;
    let start = Instant::now();
    let seeded = up_to_iso && seeding_applies(n, min_size);
    let raw = raw_search(n, min_size, seeded, opts)?;
    let pool = opts.pool()?;
    let (sets, stabilizers) = if up_to_iso {
        let canon: Vec<Canonical> = pool.install(|| raw.sets.par_iter().map(canonical).collect());
        let mut reps: BTreeMap<TernarySet, u64> = BTreeMap::new();
        for c in canon {
            reps.entry(c.form).or_insert(c.stabilizer_order);
        }
        let (s, st): (Vec<_>, Vec<_>) = reps.into_iter().unzip();
        (s, Some(st))
    } else {
        let mut s = raw.sets;
        s.sort();
        (s, None)
    };
    let sym_dims: Vec<usize> = pool.install(|| sets.par_iter().map(|s| s.sym_group().map(|g| g.dim()).unwrap_or(0)).collect());
    Ok(EnumerationReport::build(n, min_size, up_to_iso, seeded, sets, sym_dims, stabilizers, raw.nodes, raw.tasks, start.elapsed()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_maximal(n: usize) -> Vec<TernarySet> {
        let size = pow3(n);
        (0u64..1 << size)
            .map(|m| TernarySet::from_indices(n, (0..size).filter(|i| m >> i & 1 == 1)).unwrap())
            .filter(|s| s.is_maximal_sum_free())
            .collect()
    }

    #[test]
    fn matches_brute_force_in_small_dimensions() {
        for n in 1..=2 {
            let mut brute = brute_force_maximal(n);
            brute.sort();
            let r = enumerate_maximal_sumfree(n, 1, false, &SearchOptions::default()).unwrap();
            assert_eq!(r.sets, brute);
        }
    }

    #[test]
    fn maximum_sizes() {
        assert_eq!(max_sum_free_size(1), 1);
        assert_eq!(max_sum_free_size(2), 3);
        assert_eq!(max_sum_free_size(3), 9);
    }

    #[test]
    fn dimension_one() {
        let r = enumerate_maximal_sumfree(1, 1, false, &SearchOptions::default()).unwrap();
        let idx: Vec<_> = r.sets.iter().map(|s| s.indices()).collect();
        assert_eq!(idx, vec![vec![1], vec![2]]);
        assert!(matches!(enumerate_maximal_sumfree(5, 1, false, &SearchOptions::default()), Err(SearchError::UnsupportedDimension(5))));
    }
}
