use thiserror::Error;

use crate::hypergraph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypergraphError {
    #[error("edge {edge} contains vertex {vertex}, but there are only {num_vertices} vertices")]
    OutOfRangeVertex {
        edge: usize,
        vertex: VertexId,
        num_vertices: usize,
    },
    #[error("edge {edge} lists vertex {vertex} more than once")]
    DuplicateVertexInEdge { edge: usize, vertex: VertexId },
    #[error("incidence index disagrees with the edge list at vertex {vertex}")]
    IncidenceMismatch { vertex: VertexId },
    #[error("malformed instance: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid parameters n = {n}, r = {r}: need n >= 1 and r >= 3")]
    InvalidParameters { n: u64, r: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {0} has no color")]
    MissingVertexColor(VertexId),
    #[error("coloring assigns color 0 to vertex {0}; colors start at 1")]
    ZeroColor(VertexId),
    #[error("hypergraph is not regular")]
    NotRegular,
    #[error("hypergraph has {num_vertices} vertices, above the cap of {cap}")]
    TooLarge { num_vertices: usize, cap: usize },
    #[error("palette size must be positive")]
    EmptyPalette,
    #[error("vertex order is not a permutation of the vertex set")]
    BadOrder,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed coloring: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("generation failed after {attempts} attempts: {reason}")]
    GenerationFailed { attempts: usize, reason: String },
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("config: {0}")]
    Config(String),
    #[error("generator: {0}")]
    Generator(#[from] GeneratorError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
