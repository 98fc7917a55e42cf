//! Resumable progress for long enumerations.
//!
//! The search frontier is a fixed, deterministic list of subtrees. The
//! checkpoint records which of them are finished together with their
//! results, so a rerun with the same parameters skips them. Format (JSON):
//!
//! ```json
//! {"version":1,"dim":4,"min_size":14,"seeded":true,"tasks_total":256,
//!  "completed":{"0":{"nodes":1234,"sets":[[1,3,9,27,..],..]}, ..}}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};

pub const CHECKPOINT_VERSION: u32 = 1;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaskRecord {
    pub nodes: u64,
    /// Found sets as sorted vector-index lists.
    pub sets: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub dim: usize,
    pub min_size: usize,
    pub seeded: bool,
    pub tasks_total: usize,
    pub completed: BTreeMap<usize, TaskRecord>,
}

impl Checkpoint {
    pub fn new(dim: usize, min_size: usize, seeded: bool, tasks_total: usize) -> Self {
        Self { version: CHECKPOINT_VERSION, dim, min_size, seeded, tasks_total, completed: BTreeMap::new() }
    }

    /// Same search parameters, hence the same task list.
    pub fn matches(&self, other: &Checkpoint) -> bool {
        self.version == other.version
            && self.dim == other.dim
            && self.min_size == other.min_size
            && self.seeded == other.seeded
            && self.tasks_total == other.tasks_total
    }

    pub fn load(path: &Path) -> io::Result<Option<Self>> {
        match fs::read_to_string(path) {
            Ok(s) => serde_json::from_str(&s).map(Some).map_err(|e| io::Error::new(io::ErrorKind::InvalidData, e)),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(None),
            Err(e) => Err(e),
        }
    }

    /// Writes to a sibling temporary file and renames it into place.
    pub fn save(&self, path: &Path) -> io::Result<()> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec(self)?)?;
        fs::rename(&tmp, path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.json");
        assert_eq!(Checkpoint::load(&path).unwrap(), None);
        let mut cp = Checkpoint::new(3, 5, true, 10);
        cp.completed.insert(2, TaskRecord { nodes: 7, sets: vec![vec![1, 3]] });
        cp.save(&path).unwrap();
        let back = Checkpoint::load(&path).unwrap().unwrap();
        assert_eq!(back, cp);
        assert!(back.matches(&Checkpoint::new(3, 5, true, 10)));
        assert!(!back.matches(&Checkpoint::new(3, 6, true, 10)));
    }
}
