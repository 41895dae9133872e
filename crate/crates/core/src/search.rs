//! Verification of one-realization claims and a bounded search for smaller
//! realizations.
//!
//! The bounded search only covers hypergraphs whose C-edges all have one
//! fixed size and whose D-edges all have another (by default triples and
//! pairs, the shape of the constructions). An exhausted search is therefore
//! evidence about that family, not a statement about all mixed hypergraphs.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::coloring::{Enumerator, FeasibleSet, Spectrum};
use crate::constructions::{delta, smallest_one_realization, SpecSet};
use crate::error::{Error, Result};
use crate::hypergraph::{MixedHypergraph, VertexSet};

/// Hard ceiling on `SearchBudget::max_vertices`.
pub const SEARCH_VERTEX_CAP: usize = 6;

/// Feasible set equals `target`.
pub fn is_realization(h: &MixedHypergraph, target: &FeasibleSet) -> bool {
    Enumerator::new(h).spectrum().feasible_set() == *target
}

/// Realizes `target` and every spectrum entry is 0 or 1.
pub fn is_one_realization(h: &MixedHypergraph, target: &FeasibleSet) -> bool {
    spectrum_one_realizes(&Enumerator::new(h).spectrum(), target)
}

pub fn spectrum_one_realizes(spectrum: &Spectrum, target: &FeasibleSet) -> bool {
    spectrum.is_zero_one() && spectrum.feasible_set() == *target
}

/// For each vertex, whether deleting it leaves a one-realization of `target`.
/// A one-vertex hypergraph has no deletions and yields an empty list.
pub fn deletion_criticality(h: &MixedHypergraph, target: &FeasibleSet) -> Vec<(usize, bool)> {
    if h.vertex_count() < 2 {
        return Vec::new();
    }
    h.vertices()
        .map(|v| {
            let reduced = h.delete_vertex(v).expect("vertex in range");
            (v, is_one_realization(&reduced, target))
        })
        .collect()
}

/// The smallest construction for `set` has exactly `delta(set)` vertices and
/// one-realizes `set`.
pub fn check_theorem_1_1(set: &SpecSet) -> Result<bool> {
    let h = smallest_one_realization(set)?;
    Ok(h.vertex_count() == delta(set) && is_one_realization(&h, &set.to_feasible_set()))
}

/// Limits of the bounded search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub c_edge_size: usize,
    pub d_edge_size: usize,
    /// Largest candidate space (number of edge-set combinations) attempted.
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: 5,
            c_edge_size: 3,
            d_edge_size: 2,
            max_candidates: 1 << 22,
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_vertices > SEARCH_VERTEX_CAP {
            return Err(Error::InvalidBudget(format!(
                "max_vertices {} exceeds {SEARCH_VERTEX_CAP}",
                self.max_vertices
            )));
        }
        if self.c_edge_size < 2 || self.d_edge_size < 2 {
            return Err(Error::InvalidBudget("edge sizes must be at least 2".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    WitnessFound,
    Exhausted,
    BudgetExceeded,
}

impl SearchOutcome {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchOutcome::WitnessFound => "witness-found",
            SearchOutcome::Exhausted => "exhausted",
            SearchOutcome::BudgetExceeded => "budget-exceeded",
        }
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub witness: Option<MixedHypergraph>,
    pub vertex_count: usize,
    /// Size of the full candidate space, `2^(#possible edges)`.
    pub candidate_space: u64,
    /// Candidates visited, in search order, up to and including the witness.
    pub examined: u64,
    /// Visited candidates that were isomorphism-class representatives.
    pub canonical: u64,
}

impl SearchReport {
    /// Fraction of visited candidates discarded as isomorphic duplicates.
    pub fn dedup_ratio(&self) -> f64 {
        if self.examined == 0 {
            0.0
        } else {
            (self.examined - self.canonical) as f64 / self.examined as f64
        }
    }
}

/// Every hypergraph on `n` vertices with uniform C- and D-edge sizes,
/// encoded as a bitmask over the possible edges: D-edges first, then
/// C-edges, each family in lexicographic order.
#[derive(Debug, Clone)]
pub struct CandidateSpace {
    n: usize,
    edges: Vec<VertexSet>,
    d_count: usize,
    /// Per non-identity permutation, byte-chunk lookup tables mapping a key
    /// to its image.
    perm_tables: Vec<Vec<[u64; 256]>>,
}

impl CandidateSpace {
    pub fn new(n: usize, c_edge_size: usize, d_edge_size: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > SEARCH_VERTEX_CAP {
            return Err(Error::SearchTooLarge {
                n,
                cap: SEARCH_VERTEX_CAP,
            });
        }
        let family = |size: usize| -> Vec<VertexSet> {
            (0..n)
                .combinations(size)
                .map(|c| c.into_iter().collect())
                .collect()
        };
        let mut edges = family(d_edge_size);
        let d_count = edges.len();
        edges.extend(family(c_edge_size));
        let m = edges.len();
        assert!(m < 64, "candidate key must fit in u64");

        let index_of = |e: VertexSet, from: usize, to: usize| {
            (from..to).find(|&i| edges[i] == e).expect("image edge exists")
        };
        let chunks = m.div_ceil(8);
        let perm_tables = (0..n)
            .permutations(n)
            .skip(1) // identity
            .map(|perm| {
                let item_image: Vec<u64> = (0..m)
                    .map(|i| {
                        let img = edges[i].map(&perm);
                        let j = if i < d_count {
                            index_of(img, 0, d_count)
                        } else {
                            index_of(img, d_count, m)
                        };
                        1u64 << j
                    })
                    .collect();
                (0..chunks)
                    .map(|c| {
                        let mut table = [0u64; 256];
                        for (byte, slot) in table.iter_mut().enumerate() {
                            for bit in 0..8 {
                                let item = c * 8 + bit;
                                if byte >> bit & 1 == 1 && item < m {
                                    *slot |= item_image[item];
                                }
                            }
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        Ok(CandidateSpace {
            n,
            edges,
            d_count,
            perm_tables,
        })
    }

    /// Number of possible edges (bits per key).
    pub fn edge_slots(&self) -> usize {
        self.edges.len()
    }

    /// `2^edge_slots`, saturating.
    pub fn size(&self) -> u64 {
        1u64.checked_shl(self.edges.len() as u32).unwrap_or(u64::MAX)
    }

    pub fn decode(&self, key: u64) -> MixedHypergraph {
        let mut c = Vec::new();
        let mut d = Vec::new();
        for (i, &e) in self.edges.iter().enumerate() {
            if key >> i & 1 == 1 {
                if i < self.d_count {
                    d.push(e);
                } else {
                    c.push(e);
                }
            }
        }
        MixedHypergraph::from_sets(self.n, c, d)
    }

    fn image(tables: &[[u64; 256]], key: u64) -> u64 {
        tables
            .iter()
            .enumerate()
            .fold(0, |acc, (c, t)| acc | t[(key >> (8 * c)) as usize & 0xff])
    }

    /// Search order between keys with equal edge counts: lexicographic on the
    /// ascending list of edge slots.
    fn precedes(a: u64, b: u64) -> bool {
        let diff = a ^ b;
        diff != 0 && a & diff & diff.wrapping_neg() != 0
    }

    /// No vertex relabeling yields a key earlier in search order.
    pub fn is_canonical(&self, key: u64) -> bool {
        self.perm_tables
            .iter()
            .all(|t| !Self::precedes(Self::image(t, key), key))
    }

    /// Earliest key in search order among all relabelings of `key`.
    pub fn canonical_form(&self, key: u64) -> u64 {
        self.perm_tables.iter().fold(key, |best, t| {
            let img = Self::image(t, key);
            if Self::precedes(img, best) {
                img
            } else {
                best
            }
        })
    }

    /// Keys with `edges` set slots, in search order.
    pub fn level(&self, edges: usize) -> impl Iterator<Item = u64> {
        (0..self.edges.len())
            .combinations(edges)
            .map(|c| c.into_iter().fold(0u64, |k, i| k | 1 << i))
    }
}

const CHUNK: usize = 1024;

/// Searches hypergraphs on `n` vertices within `budget` for a one-realization
/// of `set`, visiting candidates by increasing edge count and lexicographically
/// within a count, and testing only isomorphism-class representatives.
/// The returned witness is the first in that order for any worker count.
pub fn bounded_minimality_search(
    set: &SpecSet,
    n: usize,
    budget: &SearchBudget,
    jobs: usize,
) -> Result<SearchReport> {
    budget.validate()?;
    if n > budget.max_vertices {
        return Err(Error::SearchTooLarge {
            n,
            cap: budget.max_vertices,
        });
    }
    let space = CandidateSpace::new(n, budget.c_edge_size, budget.d_edge_size)?;
    let mut report = SearchReport {
        outcome: SearchOutcome::Exhausted,
        witness: None,
        vertex_count: n,
        candidate_space: space.size(),
        examined: 0,
        canonical: 0,
    };
    if space.edge_slots() >= 63 || space.size() > budget.max_candidates {
        report.outcome = SearchOutcome::BudgetExceeded;
        return Ok(report);
    }
    let target = set.to_feasible_set();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");

    for level in 0..=space.edge_slots() {
        let keys: Vec<u64> = space.level(level).collect();
        // Per chunk: number of canonical keys, and the first witness offset
        // with the canonical count up to it.
        let results: Vec<(u64, Option<(usize, u64)>)> = pool.install(|| {
            keys.par_chunks(CHUNK)
                .map(|chunk| {
                    let mut canonical = 0u64;
                    for (i, &key) in chunk.iter().enumerate() {
                        if !space.is_canonical(key) {
                            continue;
                        }
                        canonical += 1;
                        if is_one_realization(&space.decode(key), &target) {
                            return (canonical, Some((i, canonical)));
                        }
                    }
                    (canonical, None)
                })
                .collect()
        });
        for (c, (canonical, hit)) in results.into_iter().enumerate() {
            if let Some((offset, upto)) = hit {
                let index = c * CHUNK + offset;
                report.examined += index as u64 + 1;
                report.canonical += upto;
                report.outcome = SearchOutcome::WitnessFound;
                report.witness = Some(space.decode(keys[index]));
                return Ok(report);
            }
            report.canonical += canonical;
            report.examined += CHUNK.min(keys.len() - c * CHUNK) as u64;
        }
    }
    Ok(report)
}
