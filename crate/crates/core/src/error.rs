use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot canonicalize content: {0}")]
    Canonicalization(String),
    #[error("derivation undefined on generator {0}")]
    Domain(String),
    #[error("degenerate index pair ({0}, {0})")]
    DegenerateIndex(usize),
    #[error("axis {0} out of range 1..=4")]
    Axis(usize),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("singular matrix")]
    Singular,
    #[error("loop does not close: {0}")]
    Shape(String),
    #[error("contraction is not well posed: {0}")]
    Contraction(String),
    #[error("node {node} out of range for a net of {num_nodes} nodes")]
    NodeRange { node: usize, num_nodes: usize },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("embedding fails metric preservation: residual {0:e}")]
    Embedding(f64),
    #[error("i/o: {0}")]
    Io(String),
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
