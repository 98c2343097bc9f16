use thiserror::Error;

/// Errors raised by the library. Each variant names the layer that rejected the input.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("label sets differ: {0}")]
    LabelMismatch(String),
    #[error("size limit exceeded: {0}")]
    Limit(String),
    #[error("substitution does not preserve the simplex relation: {0}")]
    BadSubstitution(String),
    #[error("boundary condition violated: {0}")]
    Boundary(String),
    #[error("not a member of A_{n}: {report}")]
    NotMember { n: usize, report: String },
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("invalid Lie data: {0}")]
    Lie(String),
    #[error("invalid module: {0}")]
    Module(String),
    #[error("invalid state: {0}")]
    State(String),
    #[error("invalid unshuffle: {0}")]
    Unshuffle(String),
    #[error("invalid cosimplicial data: {0}")]
    Cosimplicial(String),
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
