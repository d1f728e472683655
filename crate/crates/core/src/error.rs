use thiserror::Error;

/// Errors produced by input validation across the crate.
///
/// Internal invariant violations panic instead; every variant here corresponds
/// to a rejected *input*.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph with {vertex_count} vertices")]
    VertexOutOfRange { vertex: u32, vertex_count: usize },

    #[error("loop edge ({0},{0}) is not allowed")]
    LoopEdge(u32),

    #[error("repeated edge ({0},{1})")]
    RepeatedEdge(u32, u32),

    #[error("edge ({0},{1}) joins two vertices of the same part")]
    EdgeWithinPart(u32, u32),

    #[error("edge ({0},{1}) does not belong to the graph")]
    EdgeNotInGraph(u32, u32),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("coface index {i} out of range 0..={p} at level {p}")]
    CofaceIndexOutOfRange { i: u32, p: u32 },

    #[error("codegeneracy index {i} out of range 0..={p} at level {p}")]
    CodegeneracyIndexOutOfRange { i: u32, p: u32 },

    #[error("grid position (strand {a}, column {l}) out of range for {m} strands and {p} columns")]
    GridOutOfRange { m: u32, p: u32, a: u32, l: u32 },

    #[error("subset constraint violated: {0}")]
    BadSubset(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid field descriptor '{0}' (expected 'q' or a prime)")]
    BadFieldSpec(String),

    #[error("invalid job: {0}")]
    InvalidJob(String),
}
