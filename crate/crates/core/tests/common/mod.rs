//! Test-only oracles that share no code with the enumeration engine.
#![allow(dead_code)]

use std::collections::BTreeSet;

use mixed_hypergraph::MixedHypergraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Partition as sorted blocks, each sorted, blocks ordered by first element.
pub type Blocks = Vec<Vec<usize>>;

/// Every set partition of `0..n`, built by inserting each element into an
/// existing block or a new one.
pub fn all_partitions(n: usize) -> Vec<Blocks> {
    let mut acc: Vec<Blocks> = vec![Vec::new()];
    for v in 0..n {
        let mut next = Vec::new();
        for p in &acc {
            for b in 0..p.len() {
                let mut q = p.clone();
                q[b].push(v);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![v]);
            next.push(q);
        }
        acc = next;
    }
    acc
}

fn block_index(p: &Blocks, v: usize) -> usize {
    p.iter().position(|b| b.contains(&v)).unwrap()
}

/// Direct reading of the definition: every C-edge has two vertices in a
/// common block, every D-edge has two vertices in different blocks.
pub fn proper_by_definition(h: &MixedHypergraph, p: &Blocks) -> bool {
    let pairs = |e: &[usize]| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..e.len() {
            for j in i + 1..e.len() {
                out.push((e[i], e[j]));
            }
        }
        out
    };
    let c_ok = h.c_edges().iter().all(|e| {
        pairs(&e.to_vec())
            .iter()
            .any(|&(a, b)| block_index(p, a) == block_index(p, b))
    });
    let d_ok = h.d_edges().iter().all(|e| {
        pairs(&e.to_vec())
            .iter()
            .any(|&(a, b)| block_index(p, a) != block_index(p, b))
    });
    c_ok && d_ok
}

/// Proper partitions found by filtering all partitions.
pub fn brute_force_feasible(h: &MixedHypergraph) -> BTreeSet<Blocks> {
    all_partitions(h.vertex_count())
        .into_iter()
        .filter(|p| proper_by_definition(h, p))
        .collect()
}

/// Spectrum counts from the brute-force filter, trailing zeros trimmed.
pub fn brute_force_spectrum(h: &MixedHypergraph) -> Vec<u64> {
    let mut counts = vec![0u64; h.vertex_count()];
    for p in brute_force_feasible(h) {
        counts[p.len() - 1] += 1;
    }
    while counts.last() == Some(&0) {
        counts.pop();
    }
    counts
}

/// Random hypergraph on 1..=max_n vertices with random size-2 and size-3
/// edges in both families.
pub fn random_hypergraph<R: Rng>(rng: &mut R, max_n: usize) -> MixedHypergraph {
    let n = rng.gen_range(1..=max_n);
    let family = |rng: &mut R| -> Vec<Vec<usize>> {
        if n < 2 {
            return Vec::new();
        }
        let count = rng.gen_range(0..=6);
        (0..count)
            .map(|_| {
                let size = if n >= 3 { rng.gen_range(2..=3) } else { 2 };
                let mut vs: Vec<usize> = (0..n).collect();
                vs.shuffle(rng);
                vs.truncate(size);
                vs
            })
            .collect()
    };
    let c = family(rng);
    let d = family(rng);
    MixedHypergraph::new(n, c, d).unwrap()
}

pub fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// All subsets of `values` with size in `sizes`.
pub fn subsets_of(values: &[usize], sizes: std::ops::RangeInclusive<usize>) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << values.len()) {
        let s: Vec<usize> = (0..values.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| values[i])
            .collect();
        if sizes.contains(&s.len()) {
            out.push(s);
        }
    }
    out
}
