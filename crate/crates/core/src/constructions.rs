//! Minimum one-realizations of a set `S = {n_1 > n_2 > ... > n_s >= 2}`.
//!
//! Vertices are integer tuples `(x_1, ..., x_s)` with `x_i` in `1..=n_i`:
//!
//! * the diagonal `(i, ..., i)` for `i < n_s`;
//! * for every `t` in `2..=s` and `j` in `n_t..n_{t-1}`, the two tuples
//!   `(j, ..., j, n_t, n_{t+1}, ..., n_s)` and `(j, ..., j, 1, ..., 1)` whose
//!   first `t - 1` coordinates equal `j`;
//! * the apex `(n_1, ..., n_s)`.
//!
//! A pair of tuples is a D-edge when they differ in every coordinate, and a
//! triple is a C-edge when it shows exactly two distinct values in every
//! coordinate. This gives `2 n_1 - n_s` vertices whose only strict colorings
//! are the groupings by a single coordinate. When `n_1 = n_2 + 1` the vertex
//! `(n_2, 1, ..., 1)` can be removed without losing that property.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::coloring::{FeasibleSet, Partition};
use crate::error::{Error, Result};
use crate::hypergraph::{MixedHypergraph, TupleLabel, VertexSet, MAX_VERTICES};

/// A target set with at least two values, all at least 2, kept in strictly
/// decreasing order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SpecSet {
    values: Vec<usize>,
}

impl SpecSet {
    /// Accepts the values in any order.
    pub fn new<I: IntoIterator<Item = usize>>(values: I) -> Result<Self> {
        let mut values: Vec<usize> = values.into_iter().collect();
        values.sort_unstable_by(|a, b| b.cmp(a));
        if let Some((a, _)) = values.iter().tuple_windows().find(|(a, b)| a == b) {
            return Err(Error::InvalidSet(format!("duplicate value {a}")));
        }
        if values.len() < 2 {
            return Err(Error::InvalidSet(format!(
                "need at least two values, got {}",
                values.len()
            )));
        }
        if let Some(&small) = values.last().filter(|&&v| v < 2) {
            return Err(Error::InvalidSet(format!("values must be at least 2, got {small}")));
        }
        Ok(SpecSet { values })
    }

    /// Values in decreasing order `n_1 > ... > n_s`.
    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `n_i`, 1-based.
    pub fn n(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    /// Number of values.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn max(&self) -> usize {
        self.values[0]
    }

    pub fn min(&self) -> usize {
        *self.values.last().unwrap()
    }

    /// `n_1 = n_2 + 1`.
    pub fn top_is_consecutive(&self) -> bool {
        self.values[0] == self.values[1] + 1
    }

    /// The set without its largest value, when at least two values remain.
    pub fn without_max(&self) -> Option<SpecSet> {
        (self.values.len() > 2).then(|| SpecSet {
            values: self.values[1..].to_vec(),
        })
    }

    pub fn to_feasible_set(&self) -> FeasibleSet {
        self.values.iter().copied().collect()
    }
}

impl fmt::Debug for SpecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.values.iter()).finish()
    }
}

impl fmt::Display for SpecSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.values.iter().join(","))
    }
}

impl FromStr for SpecSet {
    type Err = Error;

    /// Parses a comma separated list such as `4,2`.
    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSet(format!("not a positive integer: {part:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        SpecSet::new(values)
    }
}

/// Which construction a hypergraph or coloring refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Full vertex set of size `2 n_1 - n_s`.
    One,
    /// The reduced hypergraph for `n_1 = n_2 + 1`.
    Two,
}

/// The vertex tuples of the first construction, in canonical id order:
/// diagonal ascending, then by `t` and `j` ascending with the `n_t` tuple
/// before the all-ones tail, apex last.
pub fn construction_vertices(set: &SpecSet) -> Vec<TupleLabel> {
    let s = set.len();
    let mut out = Vec::with_capacity(2 * set.max() - set.min());
    for i in 1..set.min() {
        out.push(TupleLabel(vec![i; s]));
    }
    for t in 2..=s {
        for j in set.n(t)..set.n(t - 1) {
            let mut upper = vec![j; t - 1];
            upper.extend((t..=s).map(|k| set.n(k)));
            let mut ones = vec![j; t - 1];
            ones.extend(std::iter::repeat(1).take(s - t + 1));
            out.push(TupleLabel(upper));
            out.push(TupleLabel(ones));
        }
    }
    out.push(TupleLabel(set.values().to_vec()));
    out
}

fn differs_everywhere(a: &TupleLabel, b: &TupleLabel) -> bool {
    a.coords().iter().zip(b.coords()).all(|(x, y)| x != y)
}

fn two_values_everywhere(a: &TupleLabel, b: &TupleLabel, c: &TupleLabel) -> bool {
    a.coords()
        .iter()
        .zip(b.coords())
        .zip(c.coords())
        .all(|((x, y), z)| {
            let distinct = 1 + usize::from(y != x) + usize::from(z != x && z != y);
            distinct == 2
        })
}

/// The first construction: all pairs differing in every coordinate become
/// D-edges, all triples with exactly two values per coordinate become C-edges.
pub fn construct_one(set: &SpecSet) -> Result<MixedHypergraph> {
    let labels = construction_vertices(set);
    let n = labels.len();
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices(n));
    }
    let d_edges = (0..n)
        .tuple_combinations()
        .filter(|&(a, b)| differs_everywhere(&labels[a], &labels[b]))
        .map(|(a, b)| VertexSet::from_iter([a, b]))
        .collect();
    let c_edges = (0..n)
        .tuple_combinations()
        .filter(|&(a, b, c)| two_values_everywhere(&labels[a], &labels[b], &labels[c]))
        .map(|(a, b, c)| VertexSet::from_iter([a, b, c]))
        .collect();
    MixedHypergraph::from_sets(n, c_edges, d_edges).with_labels(labels)
}

/// Label of the vertex removed by the second construction.
pub fn removed_label(set: &SpecSet) -> Vec<usize> {
    let mut label = vec![1; set.len()];
    label[0] = set.n(2);
    label
}

fn require_consecutive_top(set: &SpecSet) -> Result<()> {
    if set.top_is_consecutive() {
        Ok(())
    } else {
        Err(Error::NotConsecutiveTop {
            n1: set.n(1),
            n2: set.n(2),
        })
    }
}

/// The second construction: the first one without `(n_2, 1, ..., 1)`.
/// Only defined when `n_1 = n_2 + 1`.
pub fn construct_two(set: &SpecSet) -> Result<MixedHypergraph> {
    require_consecutive_top(set)?;
    let full = construct_one(set)?;
    let v = full
        .vertex_with_label(&removed_label(set))
        .expect("construction contains (n2,1,...,1)");
    full.delete_vertex(v)
}

pub fn construct(set: &SpecSet, variant: Variant) -> Result<MixedHypergraph> {
    match variant {
        Variant::One => construct_one(set),
        Variant::Two => construct_two(set),
    }
}

/// Partition of the construction's vertices by their `i`-th coordinate
/// (1-based). It has exactly `n_i` blocks.
pub fn canonical_coloring(set: &SpecSet, i: usize, variant: Variant) -> Result<Partition> {
    if i == 0 || i > set.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: set.len(),
        });
    }
    let h = construct(set, variant)?;
    let labels = h.labels().expect("constructions are labelled");
    Ok(coloring_by_coordinate(labels, i))
}

/// Groups labelled vertices by coordinate `i` (1-based).
pub fn coloring_by_coordinate(labels: &[TupleLabel], i: usize) -> Partition {
    let coords: Vec<usize> = labels.iter().map(|l| l.coord(i)).collect();
    Partition::from_labels(&coords)
}

/// Minimum vertex count of a one-realization of `set`:
/// `2 n_1 - n_s`, or one less when `n_1 = n_2 + 1`.
pub fn delta(set: &SpecSet) -> usize {
    let base = 2 * set.max() - set.min();
    if set.top_is_consecutive() {
        base - 1
    } else {
        base
    }
}

/// The construction matching [`delta`]: the second one when `n_1 = n_2 + 1`,
/// otherwise the first.
pub fn smallest_one_realization(set: &SpecSet) -> Result<MixedHypergraph> {
    construct(set, smallest_variant(set))
}

pub fn smallest_variant(set: &SpecSet) -> Variant {
    if set.top_is_consecutive() {
        Variant::Two
    } else {
        Variant::One
    }
}

/// A nonempty set of positive integers is the feasible set of some mixed
/// hypergraph exactly when it avoids 1 or is an interval.
pub fn is_feasible_set_predicate(set: &FeasibleSet) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::InvalidSet("feasible set predicate needs a nonempty set".into()));
    }
    Ok(!set.contains(1) || set.is_gap_free())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{chromatic_spectrum, is_proper};

    fn set(v: &[usize]) -> SpecSet {
        SpecSet::new(v.iter().copied()).unwrap()
    }

    fn labels(h: &MixedHypergraph) -> Vec<Vec<usize>> {
        h.labels().unwrap().iter().map(|l| l.coords().to_vec()).collect()
    }

    #[test]
    fn spec_set_normalizes_and_validates() {
        assert_eq!(set(&[2, 5, 3]).values(), &[5, 3, 2]);
        assert!(SpecSet::new([4]).is_err());
        assert!(SpecSet::new([4, 4, 2]).is_err());
        assert!(SpecSet::new([3, 1]).is_err());
        assert!(SpecSet::new([3, 0]).is_err());
        assert_eq!("4, 2".parse::<SpecSet>().unwrap(), set(&[4, 2]));
        assert!("4,x".parse::<SpecSet>().is_err());
        assert!("".parse::<SpecSet>().is_err());
    }

    #[test]
    fn first_construction_for_4_2() {
        let h = construct_one(&set(&[4, 2])).unwrap();
        assert_eq!(
            labels(&h),
            vec![
                vec![1, 1],
                vec![2, 2],
                vec![2, 1],
                vec![3, 2],
                vec![3, 1],
                vec![4, 2]
            ]
        );
        assert_eq!(h.d_edges().len(), 7);
        let v = |l: &[usize]| h.vertex_with_label(l).unwrap();
        let c = VertexSet::from_iter([v(&[1, 1]), v(&[2, 1]), v(&[2, 2])]);
        assert!(h.c_edges().contains(&c));
    }

    #[test]
    fn second_construction_small_cases() {
        let h = construct_two(&set(&[4, 3])).unwrap();
        assert_eq!(labels(&h), vec![vec![1, 1], vec![2, 2], vec![3, 3], vec![4, 3]]);

        let h = construct_two(&set(&[3, 2])).unwrap();
        assert_eq!(labels(&h), vec![vec![1, 1], vec![2, 2], vec![3, 2]]);
        assert!(h.c_edges().is_empty());
        assert_eq!(
            h.d_edges(),
            &[VertexSet::from_iter([0, 1]), VertexSet::from_iter([0, 2])]
        );

        assert_eq!(
            construct_two(&set(&[4, 2])),
            Err(Error::NotConsecutiveTop { n1: 4, n2: 2 })
        );
    }

    #[test]
    fn canonical_colorings_for_4_2() {
        let s = set(&[4, 2]);
        let by_second = canonical_coloring(&s, 2, Variant::One).unwrap();
        // (1,1),(2,1),(3,1) | (2,2),(3,2),(4,2)
        assert_eq!(by_second.block_lists(), vec![vec![0, 2, 4], vec![1, 3, 5]]);
        let by_first = canonical_coloring(&s, 1, Variant::One).unwrap();
        assert_eq!(
            by_first.block_lists(),
            vec![vec![0], vec![1, 2], vec![3, 4], vec![5]]
        );
        assert!(canonical_coloring(&s, 0, Variant::One).is_err());
        assert!(canonical_coloring(&s, 3, Variant::One).is_err());
        assert!(canonical_coloring(&s, 1, Variant::Two).is_err());
    }

    #[test]
    fn canonical_colorings_are_strict() {
        for s in [set(&[4, 2]), set(&[5, 3, 2]), set(&[4, 3]), set(&[6, 5, 3])] {
            let h = construct_one(&s).unwrap();
            for i in 1..=s.len() {
                let p = canonical_coloring(&s, i, Variant::One).unwrap();
                assert_eq!(p.block_count(), s.n(i));
                assert!(is_proper(&h, &p).unwrap(), "{s:?} coordinate {i}");
            }
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(delta(&set(&[4, 2])), 6);
        assert_eq!(delta(&set(&[4, 3])), 4);
        assert_eq!(delta(&set(&[5, 3, 2])), 8);
        assert_eq!(delta(&set(&[3, 2])), 3);
        assert_eq!(smallest_one_realization(&set(&[3, 2])).unwrap().vertex_count(), 3);
        assert_eq!(smallest_one_realization(&set(&[4, 2])).unwrap().vertex_count(), 6);
        assert_eq!(smallest_one_realization(&set(&[4, 3])).unwrap().vertex_count(), 4);
    }

    #[test]
    fn feasible_set_predicate() {
        assert!(is_feasible_set_predicate(&FeasibleSet::new([2, 4])).unwrap());
        assert!(!is_feasible_set_predicate(&FeasibleSet::new([1, 3])).unwrap());
        assert!(is_feasible_set_predicate(&FeasibleSet::new([1, 2, 3])).unwrap());
        assert!(is_feasible_set_predicate(&FeasibleSet::default()).is_err());
    }

    #[test]
    fn small_spectra() {
        assert_eq!(
            chromatic_spectrum(&construct_one(&set(&[4, 2])).unwrap()).counts(),
            &[0, 1, 0, 1]
        );
        assert_eq!(
            chromatic_spectrum(&construct_two(&set(&[4, 3])).unwrap()).counts(),
            &[0, 0, 1, 1]
        );
    }
}
