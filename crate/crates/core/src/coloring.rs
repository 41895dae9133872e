//! Strict colorings of mixed hypergraphs.
//!
//! A strict k-coloring is identified with the partition of the vertex set into
//! its k color classes, so colorings that differ only by renaming colors are
//! counted once. Partitions are encoded as restricted growth strings: vertex 0
//! is in block 0 and every vertex either joins an existing block or opens the
//! block numbered one past the largest used so far.
//!
//! Enumeration is a backtracking search assigning vertices in id order. An edge
//! is checked when its largest vertex is assigned: a D-edge fails if it is
//! monochromatic, a C-edge fails if all its vertices got distinct colors.
//! Results always come out in lexicographic order of the growth string.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{MixedHypergraph, VertexSet};

/// A partition of `0..n` in restricted growth form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    assignment: Vec<usize>,
    block_count: usize,
}

impl Partition {
    /// Wraps a restricted growth string, validating it.
    pub fn from_rgs(assignment: Vec<usize>) -> Result<Self> {
        let mut next = 0;
        for (v, &b) in assignment.iter().enumerate() {
            if b > next {
                return Err(Error::InvalidPartition(format!(
                    "vertex {v} uses block {b} before block {next}"
                )));
            }
            if b == next {
                next += 1;
            }
        }
        Ok(Partition {
            assignment,
            block_count: next,
        })
    }

    /// Builds the canonical partition of `0..n` with the given blocks (in any
    /// order). Blocks must be nonempty, disjoint, and cover `0..n`.
    pub fn from_blocks<B: AsRef<[usize]>>(n: usize, blocks: &[B]) -> Result<Self> {
        let mut owner = vec![usize::MAX; n];
        for (i, block) in blocks.iter().enumerate() {
            let block = block.as_ref();
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            for &v in block {
                if v >= n {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} outside 0..{n}"
                    )));
                }
                if owner[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} appears in two blocks"
                    )));
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is uncovered")));
        }
        Ok(Self::from_labels(&owner))
    }

    /// Canonical partition induced by an arbitrary vertex -> class map.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut seen: Vec<&T> = Vec::new();
        let assignment = labels
            .iter()
            .map(|l| match seen.iter().position(|s| *s == l) {
                Some(i) => i,
                None => {
                    seen.push(l);
                    seen.len() - 1
                }
            })
            .collect();
        Partition {
            assignment,
            block_count: seen.len(),
        }
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn vertex_count(&self) -> usize {
        self.assignment.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    /// Blocks ordered by smallest member.
    pub fn blocks(&self) -> Vec<VertexSet> {
        let mut blocks = vec![VertexSet::EMPTY; self.block_count];
        for (v, &b) in self.assignment.iter().enumerate() {
            blocks[b].insert(v);
        }
        blocks
    }

    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks().into_iter().map(VertexSet::to_vec).collect()
    }

    /// Partition induced on `subset`, with kept vertices renumbered in order
    /// and emptied blocks dropped.
    pub fn restrict(&self, subset: VertexSet) -> Partition {
        let labels: Vec<usize> = subset.iter().map(|v| self.assignment[v]).collect();
        Partition::from_labels(&labels)
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.blocks()).finish()
    }
}

/// Chromatic spectrum `(r_1, ..., r_m)`: `r_k` is the number of feasible
/// partitions with exactly `k` blocks and `m` is the upper chromatic number.
/// Empty when the hypergraph has no proper coloring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Spectrum {
    counts: Vec<u64>,
}

impl Spectrum {
    /// Builds a spectrum from per-k counts starting at k = 1; trailing zeros
    /// are trimmed.
    pub fn from_counts(mut counts: Vec<u64>) -> Self {
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Spectrum { counts }
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `r_k`, zero outside the stored range.
    pub fn get(&self, k: usize) -> u64 {
        if k == 0 {
            return 0;
        }
        self.counts.get(k - 1).copied().unwrap_or(0)
    }

    pub fn is_colorable(&self) -> bool {
        !self.counts.is_empty()
    }

    /// Upper chromatic number, absent when uncolorable.
    pub fn upper_chromatic(&self) -> Option<usize> {
        self.is_colorable().then_some(self.counts.len())
    }

    /// Lower chromatic number, absent when uncolorable.
    pub fn lower_chromatic(&self) -> Option<usize> {
        self.counts.iter().position(|&r| r > 0).map(|i| i + 1)
    }

    pub fn feasible_set(&self) -> FeasibleSet {
        FeasibleSet(
            self.counts
                .iter()
                .enumerate()
                .filter(|(_, &r)| r > 0)
                .map(|(i, _)| i + 1)
                .collect(),
        )
    }

    /// Every entry is 0 or 1.
    pub fn is_zero_one(&self) -> bool {
        self.counts.iter().all(|&r| r <= 1)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Set of k for which a strict k-coloring exists.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FeasibleSet(BTreeSet<usize>);

impl FeasibleSet {
    pub fn new<I: IntoIterator<Item = usize>>(values: I) -> Self {
        FeasibleSet(values.into_iter().collect())
    }

    pub fn values(&self) -> &BTreeSet<usize> {
        &self.0
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.0.iter().copied().collect()
    }

    pub fn contains(&self, k: usize) -> bool {
        self.0.contains(&k)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    /// Values below and above `k` are feasible but `k` is not.
    pub fn has_gap_at(&self, k: usize) -> bool {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => lo < k && k < hi && !self.contains(k),
            _ => false,
        }
    }

    /// All gap positions in ascending order.
    pub fn gaps(&self) -> Vec<usize> {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => (lo + 1..hi).filter(|&k| !self.contains(k)).collect(),
            _ => Vec::new(),
        }
    }

    /// The set is an interval of integers. The empty set counts as gap-free.
    pub fn is_gap_free(&self) -> bool {
        match (self.min(), self.max()) {
            (Some(lo), Some(hi)) => hi - lo + 1 == self.0.len(),
            _ => true,
        }
    }
}

impl fmt::Debug for FeasibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl FromIterator<usize> for FeasibleSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        FeasibleSet::new(iter)
    }
}

/// Checks the C- and D-edge constraints of `h` against `p`.
pub fn is_proper(h: &MixedHypergraph, p: &Partition) -> Result<bool> {
    if p.vertex_count() != h.vertex_count() {
        return Err(Error::PartitionMismatch {
            partition: p.vertex_count(),
            hypergraph: h.vertex_count(),
        });
    }
    let blocks = p.blocks();
    let shares_block = |e: VertexSet| blocks.iter().any(|b| b.intersection(e).len() >= 2);
    let monochromatic = |e: VertexSet| blocks.iter().any(|&b| e.is_subset(b));
    Ok(h.c_edges().iter().all(|&e| shares_block(e)) && !h.d_edges().iter().any(|&e| monochromatic(e)))
}

/// Minimum number of search sub-trees handed to each worker.
const TASKS_PER_WORKER: usize = 8;

/// Backtracking enumerator of feasible partitions.
///
/// `jobs` controls how many worker threads explore disjoint sub-trees; the
/// results do not depend on it.
#[derive(Debug, Clone)]
pub struct Enumerator {
    n: usize,
    /// C-edges (as bits) grouped by their largest vertex.
    closing_c: Vec<Vec<u64>>,
    /// D-edges (as bits) grouped by their largest vertex.
    closing_d: Vec<Vec<u64>>,
    jobs: usize,
}

#[derive(Clone)]
struct SearchState {
    colors: Vec<usize>,
    blocks: Vec<u64>,
}

impl SearchState {
    fn new(n: usize) -> Self {
        SearchState {
            colors: Vec::with_capacity(n),
            blocks: Vec::with_capacity(n),
        }
    }

    fn push(&mut self, v: usize, b: usize) {
        if b == self.blocks.len() {
            self.blocks.push(0);
        }
        self.blocks[b] |= 1u64 << v;
        self.colors.push(b);
    }

    fn pop(&mut self, v: usize) {
        let b = self.colors.pop().expect("pop on empty state");
        self.blocks[b] &= !(1u64 << v);
        if self.blocks[b] == 0 {
            self.blocks.pop();
        }
    }
}

impl Enumerator {
    pub fn new(h: &MixedHypergraph) -> Self {
        let n = h.vertex_count();
        let group = |edges: &[VertexSet]| {
            let mut out = vec![Vec::new(); n];
            for e in edges {
                out[e.max_vertex().expect("edges are nonempty")].push(e.bits());
            }
            out
        };
        Enumerator {
            n,
            closing_c: group(h.c_edges()),
            closing_d: group(h.d_edges()),
            jobs: 1,
        }
    }

    /// Sets the worker count (at least 1).
    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }

    /// Whether vertex `v`, just placed in block `b`, closes a violated edge.
    fn closes_violation(&self, v: usize, b: usize, state: &SearchState) -> bool {
        let block = state.blocks[b];
        if self.closing_d[v].iter().any(|&e| e & !block == 0) {
            return true;
        }
        self.closing_c[v].iter().any(|&e| {
            let mut seen = 0u64;
            let mut bits = e;
            while bits != 0 {
                let u = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let c = 1u64 << state.colors[u];
                if seen & c != 0 {
                    return false;
                }
                seen |= c;
            }
            true
        })
    }

    /// Depth-first search from vertex `v`. `target` restricts to exactly that
    /// many blocks. `visit` receives each completed assignment.
    fn descend<F: FnMut(&SearchState)>(
        &self,
        v: usize,
        target: Option<usize>,
        stop_at: usize,
        state: &mut SearchState,
        visit: &mut F,
    ) {
        if v == stop_at {
            if v < self.n || target.map_or(true, |k| state.blocks.len() == k) {
                visit(state);
            }
            return;
        }
        let used = state.blocks.len();
        let remaining_after = self.n - v - 1;
        let max_block = match target {
            Some(k) => used.min(k - 1),
            None => used,
        };
        for b in 0..=max_block {
            let opened = usize::from(b == used);
            if let Some(k) = target {
                if used + opened + remaining_after < k {
                    continue;
                }
            }
            state.push(v, b);
            if !self.closes_violation(v, b, state) {
                self.descend(v + 1, target, stop_at, state, visit);
            }
            state.pop(v);
        }
    }

    /// Valid prefixes of the first `depth` vertices, in lexicographic order.
    fn prefixes(&self, depth: usize, target: Option<usize>) -> Vec<SearchState> {
        let mut out = Vec::new();
        let mut state = SearchState::new(self.n);
        self.descend(0, target, depth, &mut state, &mut |s| out.push(s.clone()));
        out
    }

    /// Runs `work` over disjoint sub-trees and returns the per-sub-tree
    /// results in lexicographic order of their prefixes.
    fn run<T, W>(&self, target: Option<usize>, work: W) -> Vec<T>
    where
        T: Send,
        W: Fn(&mut SearchState, usize) -> T + Sync,
    {
        if self.jobs == 1 || self.n < 2 {
            let mut state = SearchState::new(self.n);
            return vec![work(&mut state, 0)];
        }
        let wanted = self.jobs * TASKS_PER_WORKER;
        let mut depth = 1;
        let mut tasks = self.prefixes(depth, target);
        while tasks.len() < wanted && depth < self.n {
            depth += 1;
            tasks = self.prefixes(depth, target);
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            tasks
                .into_par_iter()
                .map(|mut state| work(&mut state, depth))
                .collect()
        })
    }

    fn collect(&self, target: Option<usize>) -> Vec<Partition> {
        self.run(target, |state, from| {
            let mut out = Vec::new();
            self.descend(from, target, self.n, state, &mut |s| {
                out.push(Partition {
                    assignment: s.colors.clone(),
                    block_count: s.blocks.len(),
                })
            });
            out
        })
        .into_iter()
        .flatten()
        .collect()
    }

    /// All feasible partitions with exactly `k` blocks, `1 <= k <= n`.
    pub fn strict(&self, k: usize) -> Result<Vec<Partition>> {
        if k == 0 || k > self.n {
            return Err(Error::BlockCountOutOfRange { k, n: self.n });
        }
        Ok(self.collect(Some(k)))
    }

    /// All feasible partitions regardless of block count.
    pub fn all(&self) -> Vec<Partition> {
        self.collect(None)
    }

    pub fn spectrum(&self) -> Spectrum {
        let per_task = self.run(None, |state, from| {
            let mut counts = vec![0u64; self.n];
            self.descend(from, None, self.n, state, &mut |s| {
                counts[s.blocks.len() - 1] += 1
            });
            counts
        });
        let mut counts = vec![0u64; self.n];
        for task in per_task {
            for (total, c) in counts.iter_mut().zip(task) {
                *total += c;
            }
        }
        Spectrum::from_counts(counts)
    }
}

/// Feasible partitions with exactly `k` blocks in lexicographic order.
pub fn enumerate_strict(h: &MixedHypergraph, k: usize) -> Result<Vec<Partition>> {
    Enumerator::new(h).strict(k)
}

/// All feasible partitions in lexicographic order.
pub fn feasible_partitions(h: &MixedHypergraph) -> Vec<Partition> {
    Enumerator::new(h).all()
}

pub fn chromatic_spectrum(h: &MixedHypergraph) -> Spectrum {
    Enumerator::new(h).spectrum()
}

pub fn feasible_set(h: &MixedHypergraph) -> FeasibleSet {
    chromatic_spectrum(h).feasible_set()
}
