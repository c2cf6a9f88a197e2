//! Enumeration of root assignments with incrementally maintained sums.
//!
//! Each interpolation node `j` has `k` candidate values (the t-th roots of
//! its residue). Choosing value `r` at node `j` contributes a fixed vector to
//! a set of tracked coefficient sums, so walking assignments in reflected
//! Gray order changes one node per step and costs one vector update.
//!
//! Work is split into a thread-count independent set of partitions by fixing
//! the highest node indices; callers merge per-partition results in
//! partition order, so the outcome never depends on scheduling.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{add_mod, sub_mod};

/// Partitions are made by fixing high digits until about this many exist.
const TARGET_PARTITIONS: u64 = 256;

/// `data[((j * choices) + r) * rows + i]` is the contribution of value `r`
/// at node `j` to sum `i`.
#[derive(Debug, Clone)]
pub(crate) struct ContributionTable {
    p: u64,
    nodes: usize,
    choices: usize,
    rows: usize,
    data: Vec<u64>,
}

impl ContributionTable {
    pub fn build(
        p: u64,
        nodes: usize,
        choices: usize,
        rows: usize,
        mut entry: impl FnMut(usize, usize, &mut [u64]),
    ) -> Self {
        let mut data = vec![0u64; nodes * choices * rows];
        for j in 0..nodes {
            for r in 0..choices {
                let start = (j * choices + r) * rows;
                entry(j, r, &mut data[start..start + rows]);
            }
        }
        ContributionTable {
            p,
            nodes,
            choices,
            rows,
            data,
        }
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn choices(&self) -> usize {
        self.choices
    }

    fn entry(&self, j: usize, r: usize) -> &[u64] {
        let start = (j * self.choices + r) * self.rows;
        &self.data[start..start + self.rows]
    }

    /// Sums for a full assignment, from scratch.
    pub fn sums_for(&self, digits: &[u8]) -> Vec<u64> {
        let mut sums = vec![0u64; self.rows];
        for (j, &r) in digits.iter().enumerate() {
            for (s, &c) in sums.iter_mut().zip(self.entry(j, r as usize)) {
                *s = add_mod(*s, c, self.p);
            }
        }
        sums
    }

    fn apply(&self, sums: &mut [u64], j: usize, old: u8, new: u8) {
        let p = self.p;
        let out = self.entry(j, old as usize);
        let inn = self.entry(j, new as usize);
        for ((s, &o), &n) in sums.iter_mut().zip(out).zip(inn) {
            *s = add_mod(sub_mod(*s, o, p), n, p);
        }
    }
}

/// Visits up to `limit` assignments agreeing with `fixed` (`None` marks a
/// free node) in reflected mixed-radix Gray order (Knuth's Algorithm H).
/// Returns the number of assignments visited.
pub(crate) fn gray_scan(
    table: &ContributionTable,
    fixed: &[Option<u8>],
    limit: u64,
    mut visit: impl FnMut(&[u64], &[u8]),
) -> u64 {
    let k = table.choices();
    let mut digits: Vec<u8> = fixed.iter().map(|d| d.unwrap_or(0)).collect();
    let free: Vec<usize> = if k > 1 {
        (0..fixed.len()).filter(|&j| fixed[j].is_none()).collect()
    } else {
        Vec::new()
    };
    let mut sums = table.sums_for(&digits);
    let mut focus: Vec<usize> = (0..=free.len()).collect();
    let mut dir: Vec<i8> = vec![1; free.len()];
    let mut visited = 0u64;
    while visited < limit {
        visit(&sums, &digits);
        visited += 1;
        let q = focus[0];
        focus[0] = 0;
        if q == free.len() {
            break;
        }
        let j = free[q];
        let old = digits[j];
        let new = (old as i8 + dir[q]) as u8;
        digits[j] = new;
        table.apply(&mut sums, j, old, new);
        if new == 0 || new as usize == k - 1 {
            dir[q] = -dir[q];
            focus[q] = focus[q + 1];
            focus[q + 1] = q + 1;
        }
    }
    visited
}

/// Thread-count independent split of the assignment space.
#[derive(Debug, Clone)]
pub(crate) struct PartitionPlan {
    pub prefixes: Vec<Vec<Option<u8>>>,
    /// assignments per partition
    pub size: u128,
}

/// Splits all assignments of `table`, with node 0 pinned to value 0 when
/// `pin_first` is set (used to quotient out the root-of-unity symmetry).
pub(crate) fn plan(table: &ContributionTable, pin_first: bool) -> PartitionPlan {
    let n = table.nodes();
    let k = table.choices() as u64;
    let mut base: Vec<Option<u8>> = vec![None; n];
    if pin_first && n > 0 {
        base[0] = Some(0);
    }
    let free: Vec<usize> = if k > 1 {
        (0..n).filter(|&j| base[j].is_none()).collect()
    } else {
        Vec::new()
    };
    let mut split = 0usize;
    let mut count = 1u64;
    while split + 1 < free.len() && count * k <= TARGET_PARTITIONS {
        split += 1;
        count *= k;
    }
    let split_nodes = &free[free.len() - split..];
    let prefixes = (0..count)
        .map(|mut q| {
            let mut fixed = base.clone();
            for &j in split_nodes {
                fixed[j] = Some((q % k) as u8);
                q /= k;
            }
            if k <= 1 {
                for d in fixed.iter_mut() {
                    d.get_or_insert(0);
                }
            }
            fixed
        })
        .collect();
    let size = (k as u128).pow((free.len() - split) as u32);
    PartitionPlan { prefixes, size }
}

/// Runs `worker(prefix, limit)` on every partition, in parallel, returning
/// results in partition order. `budget` caps the total number of visits,
/// allotted to partitions in order.
pub(crate) fn run_partitions<R, F>(plan: &PartitionPlan, budget: Option<u64>, worker: F) -> Vec<R>
where
    R: Send,
    F: Fn(&[Option<u8>], u64) -> R + Sync,
{
    let size = plan.size.min(u64::MAX as u128) as u64;
    plan.prefixes
        .par_iter()
        .enumerate()
        .filter_map(|(q, prefix)| {
            let limit = match budget {
                None => size,
                Some(b) => size.min(b.saturating_sub((q as u64).saturating_mul(size))),
            };
            (limit > 0).then(|| worker(prefix, limit))
        })
        .collect()
}

/// Worker-pool configuration shared by all searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Worker threads; 0 uses the global pool.
    pub threads: usize,
    /// Largest exhaustive search space (number of assignments) accepted.
    pub max_assignments: u64,
}

/// Default exhaustive cap: 2^26 assignments.
pub const DEFAULT_MAX_ASSIGNMENTS: u64 = 1 << 26;

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: 0,
            max_assignments: DEFAULT_MAX_ASSIGNMENTS,
        }
    }
}

impl SearchOptions {
    pub fn with_threads(threads: usize) -> Self {
        SearchOptions {
            threads,
            ..Self::default()
        }
    }

    pub(crate) fn install<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        if self.threads == 0 {
            return Ok(job());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.threads)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
        Ok(pool.install(job))
    }

    pub(crate) fn check_cap(&self, size: u128) -> Result<()> {
        if size > self.max_assignments as u128 {
            return Err(Error::SearchSpaceTooLarge {
                size,
                cap: self.max_assignments,
            });
        }
        Ok(())
    }
}
