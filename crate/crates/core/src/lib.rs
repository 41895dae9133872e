//! Mixed hypergraph coloring: exhaustive strict-coloring enumeration,
//! chromatic spectra, and the minimum-size one-realization constructions
//! together with the machinery that verifies them.

pub mod coloring;
pub mod cli;
pub mod constructions;
pub mod document;
pub mod error;
pub mod hypergraph;
pub mod report;
pub mod search;

pub use coloring::{
    chromatic_spectrum, enumerate_strict, feasible_partitions, feasible_set, is_proper,
    Enumerator, FeasibleSet, Partition, Spectrum,
};
pub use constructions::{
    canonical_coloring, construct_one, construct_two, delta, is_feasible_set_predicate,
    smallest_one_realization, SpecSet, Variant,
};
pub use error::{Error, Result};
pub use hypergraph::{IsoMapping, MixedHypergraph, TupleLabel, VertexSet};
pub use search::{
    bounded_minimality_search, check_theorem_1_1, deletion_criticality, is_one_realization,
    is_realization, SearchBudget, SearchOutcome, SearchReport,
};
