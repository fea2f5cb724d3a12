//! Exact combinatorics behind the clique projectors: a coloring survives
//! the central projector exactly when it has no forbidden monochromatic
//! clique, so everything here is stated as predicates on edge colorings.

mod canonical;
mod coloring;
mod recursion;
mod search;

pub use canonical::{
    canonical_form, canonical_form_with_budget, canonical_key, CanonicalForm, CanonicalKey, DEFAULT_LEAF_BUDGET,
    MAX_CANONICAL_VERTICES,
};
pub use coloring::{edge_count, edge_index, has_clique, has_forbidden_clique, CliqueConstraint, EdgeColoring, MAX_VERTICES};
pub use recursion::{graded_ramsey, qubit_cost, KNOWN_RAMSEY};
pub use search::{
    brute_force_ramsey, count_good_colorings, count_good_extensions, exists_good_coloring, glue_extensions,
    glue_frontier, good_classes, good_classes_with_budget, survivor_rank, RamseyOutcome, RamseySearch, SearchMethod,
    DEFAULT_FRONTIER_BUDGET, ENUMERATION_EDGE_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("clique sizes must be positive, got ({m}, {n})")]
    InvalidConstraint { m: usize, n: usize },
    #[error("{0} vertices exceeds the supported maximum")]
    TooManyVertices(usize),
    #[error("expected {expected} edge bits, found {found}")]
    BitCount { expected: usize, found: usize },
    #[error("adjacency must be symmetric with an empty diagonal")]
    InvalidAdjacency,
    #[error("input coloring already contains a forbidden clique")]
    NotGood,
    #[error("search budget of {0} exceeded")]
    BudgetExceeded(usize),
    #[error("full enumeration at v = {0} exceeds the edge limit")]
    EnumerationTooLarge(usize),
    #[error("dimension must be at least 2, got {0}")]
    InvalidDimension(usize),
    #[error("vertex count must be at least 2, got {0}")]
    InvalidVertexCount(u64),
    #[error("value overflows 128 bits")]
    Overflow,
}
