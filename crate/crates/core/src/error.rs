use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed textual or JSON input. `line` is 1-based when known.
    #[error("parse error{}: {message}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Parse { line: Option<usize>, message: String },

    #[error("graph must have at least one vertex")]
    NoVertices,
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("cannot contract loop `{0}`")]
    LoopContraction(String),
    #[error("edge `{edge}` is not incident to vertex `{vertex}`")]
    NotIncident { vertex: String, edge: String },
    #[error("partition does not cover the vertex set exactly: {0}")]
    InvalidPartition(String),

    #[error("{what} = {value} exceeds the limit {limit} (use --force to override)")]
    GuardExceeded { what: &'static str, value: u64, limit: u64 },
    #[error("dimension d = {0} is out of range; d >= 2 is required")]
    DimensionTooSmall(u32),

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no binding supplied for variable `{0}`")]
    MissingBinding(String),
    #[error("variable `{0}` does not belong to this ring")]
    ForeignVariable(String),
    #[error("manifold Poincaré polynomial must have constant term 1, found {0}")]
    BadManifoldPolynomial(String),

    #[error("graph is not an orchard: edge `{0}` is neither a loop nor an isthmus")]
    NotOrchard(String),
    #[error("cohomology class belongs to a different ring")]
    ForeignRing,

    #[error("invalid permutation {0:?}: not a bijection on 1..=n")]
    InvalidPermutation(Vec<usize>),
    #[error("permutation {perm:?} is not relevant: {reason}")]
    IrrelevantPermutation { perm: Vec<usize>, reason: String },
    #[error("divided difference index {index} out of range 1..={max}")]
    BadIndex { index: usize, max: usize },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: Option<usize>, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// True for errors caused by malformed input text rather than by a domain
    /// precondition.
    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}
