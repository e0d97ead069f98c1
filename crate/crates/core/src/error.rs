use thiserror::Error;

/// Errors raised while building or transforming graphs.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid vertex name {0:?}")]
    InvalidName(String),
    #[error("vertex name {0:?} uses the reserved '$' prefix")]
    ReservedName(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("loop edge at {0}")]
    LoopEdge(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("{{{0}, {1}}} is not an edge")]
    NotAnEdge(String, String),
    #[error("{{{0}, {1}}} is already an edge")]
    IsAnEdge(String, String),
    #[error("vertex sets overlap at {0}")]
    NameCollision(String),
    #[error("{kind} needs n >= {min}, got {n}")]
    TooSmall { kind: &'static str, min: usize, n: usize },
    #[error("graph has {0} vertices; at most {max} supported", max = crate::graph::MAX_VERTICES)]
    TooLarge(usize),
    #[error("complement of the induced subgraph on the contracted set is not connected")]
    DisconnectedCoComplement,
    #[error("contracted set must be nonempty")]
    EmptySet,
}

/// Errors raised by the graph6 / edgelist readers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("malformed header: {0}")]
    Header(String),
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range")]
    OutOfRange { byte: u8, offset: usize },
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("line {line}: {msg}")]
    Line { line: usize, msg: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Errors from the word engine and surface-group checks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("malformed letter {0:?}")]
    BadToken(String),
    #[error("word has {len} letters, limit is {limit}")]
    TooLong { len: usize, limit: usize },
    #[error("missing image for surface generator {0}")]
    MissingImage(String),
    #[error("image given for unknown surface generator {0}")]
    UnexpectedImage(String),
    #[error("the relator image is nontrivial, so this is not a homomorphism")]
    NotAHomomorphism,
    #[error("relative maps need at least one boundary component")]
    NoBoundary,
    #[error("closed surface of genus {0} is not hyperbolic")]
    NotHyperbolic(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("lists differ in length ({0}, {1}, {2})")]
    LengthMismatch(usize, usize, usize),
}

/// Errors from certificate loading and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),
    #[error("malformed catalog: {0}")]
    Catalog(String),
    #[error("internal soundness violation: graph has both a verified derivation and a verified obstruction")]
    Soundness,
    #[error(transparent)]
    Graph(#[from] GraphError),
}
