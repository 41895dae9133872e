use thiserror::Error;

/// Errors raised by the hypergraph model, the coloring engine, the
/// constructions and the bounded search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("hypergraph must have at least one vertex")]
    NoVertices,
    #[error("hypergraph has {0} vertices, at most {max} supported", max = crate::hypergraph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("edge {edge:?} references vertex {vertex}, but there are only {vertex_count} vertices")]
    EdgeOutOfRange {
        edge: Vec<usize>,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("edge {0:?} has fewer than two distinct vertices")]
    EdgeTooSmall(Vec<usize>),
    #[error("label count {labels} does not match vertex count {vertices}")]
    LabelCountMismatch { labels: usize, vertices: usize },
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex {vertex} is not in a hypergraph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("cannot delete the only vertex")]
    DeleteLastVertex,
    #[error("isomorphism testing is limited to {max} vertices, got {got}", max = crate::hypergraph::ISO_MAX_VERTICES)]
    IsomorphismTooLarge { got: usize },
    #[error("partition covers {partition} vertices, hypergraph has {hypergraph}")]
    PartitionMismatch { partition: usize, hypergraph: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("block count {k} out of range 1..={n}")]
    BlockCountOutOfRange { k: usize, n: usize },
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("construction two requires n1 = n2 + 1, got n1 = {n1}, n2 = {n2}")]
    NotConsecutiveTop { n1: usize, n2: usize },
    #[error("coordinate index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("search on {n} vertices exceeds the cap of {cap}")]
    SearchTooLarge { n: usize, cap: usize },
    #[error("invalid search budget: {0}")]
    InvalidBudget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
