//! Immutable mixed hypergraph model.
//!
//! A mixed hypergraph is a vertex set together with two edge families: the
//! C-edges, each of which must contain two vertices of a common color, and the
//! D-edges, each of which must contain two vertices of distinct colors. The
//! families may overlap (a bi-hypergraph has both families equal).
//!
//! Vertices are the dense integers `0..n`. Edges are stored as bitmasks, so a
//! hypergraph holds at most [`MAX_VERTICES`] vertices.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count (edges are `u64` bitmasks).
pub const MAX_VERTICES: usize = 64;

/// Largest vertex count accepted by [`MixedHypergraph::isomorphism`].
pub const ISO_MAX_VERTICES: usize = 12;

/// A set of vertices stored as a bitmask.
///
/// Ordering is lexicographic on the ascending member list, so `{0,1} < {0,1,2}
/// < {0,2} < {1,2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    /// Largest member, `None` for the empty set.
    pub fn max_vertex(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Image of the set under a vertex map.
    pub fn map(self, image: &[usize]) -> VertexSet {
        self.iter().fold(VertexSet::EMPTY, |mut acc, v| {
            acc.insert(image[v]);
            acc
        })
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

/// Coordinate label attached to a construction vertex. Coordinates are 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TupleLabel(pub Vec<usize>);

impl TupleLabel {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    /// Coordinate `i`, 1-based.
    pub fn coord(&self, i: usize) -> usize {
        self.0[i - 1]
    }
}

impl fmt::Debug for TupleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for TupleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A vertex bijection witnessing an isomorphism: vertex `v` of the source maps
/// to `image()[v]` of the target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMapping {
    image: Vec<usize>,
}

impl IsoMapping {
    pub fn identity(n: usize) -> Self {
        IsoMapping {
            image: (0..n).collect(),
        }
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, v: usize) -> usize {
        self.image[v]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(v, &w)| v == w)
    }

    pub fn inverse(&self) -> IsoMapping {
        let mut inv = vec![0; self.image.len()];
        for (v, &w) in self.image.iter().enumerate() {
            inv[w] = v;
        }
        IsoMapping { image: inv }
    }

    /// Checks that this mapping is an isomorphism from `a` to `b`.
    pub fn is_isomorphism(&self, a: &MixedHypergraph, b: &MixedHypergraph) -> bool {
        if a.vertex_count() != b.vertex_count() || self.image.len() != a.vertex_count() {
            return false;
        }
        let mut seen = VertexSet::EMPTY;
        for &w in &self.image {
            if w >= b.vertex_count() || seen.contains(w) {
                return false;
            }
            seen.insert(w);
        }
        let mapped = |edges: &[VertexSet]| {
            let mut out: Vec<VertexSet> = edges.iter().map(|e| e.map(&self.image)).collect();
            out.sort();
            out
        };
        mapped(a.c_edges()) == b.c_edges() && mapped(a.d_edges()) == b.d_edges()
    }
}

/// A mixed hypergraph `(X, C, D)` on vertices `0..n`.
///
/// Both edge families are kept sorted and free of duplicates, so two
/// hypergraphs built from the same edge sets compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct MixedHypergraph {
    vertex_count: usize,
    labels: Option<Vec<TupleLabel>>,
    c_edges: Vec<VertexSet>,
    d_edges: Vec<VertexSet>,
}

impl fmt::Debug for MixedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MixedHypergraph")
            .field("vertex_count", &self.vertex_count)
            .field("c_edges", &self.c_edges)
            .field("d_edges", &self.d_edges)
            .finish()
    }
}

fn canonical_edges<E, I>(n: usize, edges: I) -> Result<Vec<VertexSet>>
where
    I: IntoIterator<Item = E>,
    E: AsRef<[usize]>,
{
    let mut out = Vec::new();
    for edge in edges {
        let edge = edge.as_ref();
        if let Some(&v) = edge.iter().find(|&&v| v >= n) {
            return Err(Error::EdgeOutOfRange {
                edge: edge.to_vec(),
                vertex: v,
                vertex_count: n,
            });
        }
        let set: VertexSet = edge.iter().copied().collect();
        if set.len() < 2 {
            return Err(Error::EdgeTooSmall(edge.to_vec()));
        }
        out.push(set);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

impl MixedHypergraph {
    /// Builds a hypergraph on `n` vertices. Edges are given as vertex lists;
    /// repeated vertices inside an edge and repeated edges are collapsed.
    pub fn new<E, I, J>(n: usize, c_edges: I, d_edges: J) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        J: IntoIterator<Item = E>,
        E: AsRef<[usize]>,
    {
        if n == 0 {
            return Err(Error::NoVertices);
        }
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(MixedHypergraph {
            vertex_count: n,
            labels: None,
            c_edges: canonical_edges(n, c_edges)?,
            d_edges: canonical_edges(n, d_edges)?,
        })
    }

    /// Hypergraph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::new::<Vec<usize>, _, _>(n, Vec::new(), Vec::new())
    }

    pub(crate) fn from_sets(
        n: usize,
        mut c_edges: Vec<VertexSet>,
        mut d_edges: Vec<VertexSet>,
    ) -> Self {
        debug_assert!(n >= 1 && n <= MAX_VERTICES);
        c_edges.sort();
        c_edges.dedup();
        d_edges.sort();
        d_edges.dedup();
        MixedHypergraph {
            vertex_count: n,
            labels: None,
            c_edges,
            d_edges,
        }
    }

    /// Attaches one label per vertex.
    pub fn with_labels(mut self, labels: Vec<TupleLabel>) -> Result<Self> {
        if labels.len() != self.vertex_count {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                vertices: self.vertex_count,
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.vertex_count
    }

    pub fn vertex_set(&self) -> VertexSet {
        if self.vertex_count == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << self.vertex_count) - 1)
        }
    }

    pub fn c_edges(&self) -> &[VertexSet] {
        &self.c_edges
    }

    pub fn d_edges(&self) -> &[VertexSet] {
        &self.d_edges
    }

    pub fn labels(&self) -> Option<&[TupleLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&TupleLabel> {
        self.labels.as_ref().and_then(|l| l.get(v))
    }

    /// Vertex carrying the given label, if labels are present.
    pub fn vertex_with_label(&self, label: &[usize]) -> Option<usize> {
        self.labels
            .as_ref()?
            .iter()
            .position(|l| l.coords() == label)
    }

    /// Both families are identical (a bi-hypergraph).
    pub fn is_bi_hypergraph(&self) -> bool {
        self.c_edges == self.d_edges
    }

    /// The derived sub-hypergraph on `subset`: only edges fully inside the
    /// subset survive. Kept vertices are renumbered `0..|subset|` in their
    /// original order and keep their labels.
    pub fn derived(&self, subset: VertexSet) -> Result<MixedHypergraph> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(v) = subset.iter().find(|&v| v >= self.vertex_count) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        let mut renumber = vec![usize::MAX; self.vertex_count];
        for (new, old) in subset.iter().enumerate() {
            renumber[old] = new;
        }
        let restrict = |edges: &[VertexSet]| -> Vec<VertexSet> {
            edges
                .iter()
                .filter(|e| e.is_subset(subset))
                .map(|e| e.map(&renumber))
                .collect()
        };
        let mut h = MixedHypergraph::from_sets(
            subset.len(),
            restrict(&self.c_edges),
            restrict(&self.d_edges),
        );
        h.labels = self
            .labels
            .as_ref()
            .map(|l| subset.iter().map(|v| l[v].clone()).collect());
        Ok(h)
    }

    /// Convenience wrapper over [`derived`](Self::derived) taking a vertex list.
    pub fn derived_on(&self, vertices: &[usize]) -> Result<MixedHypergraph> {
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.vertex_count) {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        self.derived(vertices.iter().copied().collect())
    }

    /// Removes one vertex, keeping the edges that avoid it.
    pub fn delete_vertex(&self, v: usize) -> Result<MixedHypergraph> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        if self.vertex_count == 1 {
            return Err(Error::DeleteLastVertex);
        }
        let mut keep = self.vertex_set();
        keep.0 &= !(1u64 << v);
        self.derived(keep)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`. Labels are dropped.
    pub fn permuted(&self, perm: &[usize]) -> MixedHypergraph {
        assert_eq!(perm.len(), self.vertex_count);
        let map = |edges: &[VertexSet]| edges.iter().map(|e| e.map(perm)).collect();
        MixedHypergraph::from_sets(self.vertex_count, map(&self.c_edges), map(&self.d_edges))
    }

    fn signature(&self, v: usize) -> (Vec<usize>, Vec<usize>) {
        let sizes = |edges: &[VertexSet]| {
            let mut s: Vec<usize> = edges
                .iter()
                .filter(|e| e.contains(v))
                .map(|e| e.len())
                .collect();
            s.sort_unstable();
            s
        };
        (sizes(&self.c_edges), sizes(&self.d_edges))
    }

    /// Searches for an isomorphism onto `other`.
    ///
    /// Backtracks over vertex bijections, restricting each vertex to targets
    /// with the same incidence signature (sizes of incident C- and D-edges).
    /// An edge is checked as soon as its last vertex is mapped. Labels are
    /// ignored. Both hypergraphs must have at most [`ISO_MAX_VERTICES`]
    /// vertices.
    pub fn isomorphism(&self, other: &MixedHypergraph) -> Result<Option<IsoMapping>> {
        for n in [self.vertex_count, other.vertex_count] {
            if n > ISO_MAX_VERTICES {
                return Err(Error::IsomorphismTooLarge { got: n });
            }
        }
        if self.vertex_count != other.vertex_count
            || self.c_edges.len() != other.c_edges.len()
            || self.d_edges.len() != other.d_edges.len()
        {
            return Ok(None);
        }
        let size_profile = |edges: &[VertexSet]| {
            let mut s: Vec<usize> = edges.iter().map(|e| e.len()).collect();
            s.sort_unstable();
            s
        };
        if size_profile(&self.c_edges) != size_profile(&other.c_edges)
            || size_profile(&self.d_edges) != size_profile(&other.d_edges)
        {
            return Ok(None);
        }

        let n = self.vertex_count;
        let sig_a: Vec<_> = (0..n).map(|v| self.signature(v)).collect();
        let sig_b: Vec<_> = (0..n).map(|v| other.signature(v)).collect();
        let candidates: Vec<Vec<usize>> = (0..n)
            .map(|v| (0..n).filter(|&w| sig_a[v] == sig_b[w]).collect())
            .collect();
        if candidates.iter().any(|c| c.is_empty()) {
            return Ok(None);
        }

        // Edges grouped by their largest vertex: checkable once it is mapped.
        let mut closing: Vec<Vec<(VertexSet, bool)>> = vec![Vec::new(); n];
        for &e in &self.c_edges {
            closing[e.max_vertex().unwrap()].push((e, true));
        }
        for &e in &self.d_edges {
            closing[e.max_vertex().unwrap()].push((e, false));
        }
        let c_target: HashSet<VertexSet> = other.c_edges.iter().copied().collect();
        let d_target: HashSet<VertexSet> = other.d_edges.iter().copied().collect();

        struct Ctx<'a> {
            candidates: &'a [Vec<usize>],
            closing: &'a [Vec<(VertexSet, bool)>],
            c_target: &'a HashSet<VertexSet>,
            d_target: &'a HashSet<VertexSet>,
        }

        fn extend(ctx: &Ctx<'_>, v: usize, image: &mut Vec<usize>, used: &mut VertexSet) -> bool {
            if v == ctx.candidates.len() {
                return true;
            }
            for &w in &ctx.candidates[v] {
                if used.contains(w) {
                    continue;
                }
                image.push(w);
                let ok = ctx.closing[v].iter().all(|&(e, is_c)| {
                    let mapped = e.map(image);
                    if is_c {
                        ctx.c_target.contains(&mapped)
                    } else {
                        ctx.d_target.contains(&mapped)
                    }
                });
                if ok {
                    used.insert(w);
                    if extend(ctx, v + 1, image, used) {
                        return true;
                    }
                    used.0 &= !(1u64 << w);
                }
                image.pop();
            }
            false
        }

        let ctx = Ctx {
            candidates: &candidates,
            closing: &closing,
            c_target: &c_target,
            d_target: &d_target,
        };
        let mut image = Vec::with_capacity(n);
        let mut used = VertexSet::EMPTY;
        // Injective and edge-preserving with equal family sizes implies the
        // edge maps are bijections.
        Ok(extend(&ctx, 0, &mut image, &mut used).then_some(IsoMapping { image }))
    }

    pub fn is_isomorphic(&self, other: &MixedHypergraph) -> Result<bool> {
        Ok(self.isomorphism(other)?.is_some())
    }
}
