use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex index {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex label {0:?}")]
    DuplicateLabel(String),
    #[error("graphs are limited to 64 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("edge {{{0}, {1}}} has no weight or a weight below 2")]
    BadWeight(usize, usize),
    #[error("graph must be connected: {0}")]
    Disconnected(&'static str),
    #[error("rank identity violated at degree {degree}: extracted coefficient {value}")]
    IdentityViolation { degree: usize, value: String },
    #[error("invalid coefficient field {0:?}: expected q or p<prime>")]
    InvalidField(String),
    #[error("flag complex is not simply connected; the theorem hypothesis fails")]
    NotSimplyConnected,
    #[error("simple connectivity of the flag complex is undecided; pass an explicit override")]
    SimpleConnectivityUnknown,
    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),
    #[error("the trivial character is not allowed here")]
    TrivialCharacter,
    #[error("character coordinates must be nonzero")]
    ZeroCoordinate,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("components live in different ambient spaces")]
    AmbientMismatch,
    #[error("the full vertex set has no injective image in H^1(N)")]
    FullVertexSet,
    #[error("vertex triple must be strictly increasing")]
    UnsortedTriple,
    #[error("step {step}: edge {{{a}, {b}}} is not a boundary edge")]
    NotBoundaryEdge { step: usize, a: String, b: String },
    #[error("step {step}: unknown vertex {label:?}")]
    UnknownStepVertex { step: usize, label: String },
    #[error("step {step}: apex label {label:?} already in use")]
    ApexInUse { step: usize, label: String },
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("presentation text: {0}")]
    PresentationSyntax(String),
    #[error("oracles disagree: {0}")]
    OracleDisagreement(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
