use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty complex")]
    EmptyComplex,
    #[error("empty facet in input")]
    EmptyFacet,
    #[error("invalid label `{0}` (labels must match [A-Za-z0-9_+-]+)")]
    InvalidLabel(String),
    #[error("duplicate label `{0}` inside one facet")]
    DuplicateLabel(String),
    #[error("not a face")]
    NotAFace,
    #[error("ridge graph requires pure complex")]
    ImpureComplex,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("face dimension {k} out of range for complex of dimension {dim}")]
    DimOutOfRange { k: i32, dim: i32 },
    #[error("k = {k} out of range for complex of dimension {dim}")]
    KOutOfRange { k: i32, dim: i32 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("empty polytope: row sums ({0}) and column sums ({1}) differ")]
    EmptyPolytope(i64, i64),
    #[error("degenerate size: margins must satisfy m >= 2, n >= 2 and mn > 4")]
    DegenerateSize,
    #[error("margins must be positive integers")]
    NonpositiveMargin,
    #[error("polar not simplicial: polytope is degenerate")]
    PolarNotSimplicial,
    #[error("family parameter m must be at least 3 (got {0})")]
    FamilyParameter(u32),
    #[error("node limit {0} exceeded")]
    NodeLimitExceeded(u64),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("internal invariant violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
