use thiserror::Error;

/// Errors surfaced by graph construction, parsing, and the game/search layers.
#[derive(Debug, Error, PartialEq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph document: {0}")]
    GraphDoc(String),

    #[error("node {node} out of range for graph with {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },

    #[error("self-loop on node {node} is not allowed")]
    SelfLoop { node: usize },

    #[error("duplicate edge {u} -> {v}")]
    DuplicateEdge { u: usize, v: usize },

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("edge probability must lie in [0, 1], got {0}")]
    InvalidProbability(f64),

    #[error("partial symmetrization count 2^{arcs} exceeds cap {cap}")]
    SymmetrizationCapExceeded { arcs: u32, cap: u64 },

    #[error("search budget exhausted")]
    BudgetExhausted,

    #[error("the given node set is not a kernel")]
    NotAKernel,

    #[error("graph is not a partial symmetrization of the base graph")]
    NotPartialSymmetrization,

    #[error("graph is not symmetric")]
    NotSymmetric,

    #[error("node set is not a maximal independent set")]
    NotMaximalIndependent,

    #[error("profile is not a Nash equilibrium")]
    NotNash,

    #[error("profile is not a specialized equilibrium of the residual game")]
    NotResidualEquilibrium,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
