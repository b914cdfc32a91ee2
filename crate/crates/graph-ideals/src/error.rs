use thiserror::Error;

/// Crate-wide error type. Variants mirror the failure modes of the public
/// operations; parse errors carry 1-based line numbers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: malformed input: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: loop edge {v}-{v} not allowed")]
    LoopEdge { line: usize, v: u32 },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: u32, v: u32 },
    #[error("line {line}: endpoint {v} out of range 1..={n}")]
    EndpointOutOfRange { line: usize, v: u32, n: u32 },
    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: u32, n: u32 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("field/regime not supported: {0}")]
    RegimeUnsupported(String),
    #[error("shape not supported: {0}")]
    NotSupported(String),
    #[error("ring map unavailable: {0}")]
    MapUnavailable(String),
    #[error("polynomials over different fields")]
    FieldMismatch,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("generators admit a linear syzygy (degree-3 kernel is nonzero)")]
    LinearSyzygyPresent,
    #[error("invalid field specification: {0}")]
    InvalidField(String),
}

pub type Result<T> = std::result::Result<T, Error>;
