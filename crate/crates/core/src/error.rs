use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("duplicate vertex {0} in token set")]
    DuplicateVertex(usize),
    #[error("{0} set not independent")]
    NotIndependent(&'static str),
    #[error("token sets have different sizes ({source_len} vs {target_len})")]
    SizeMismatch { source_len: usize, target_len: usize },
    #[error("token sets must be nonempty")]
    EmptyTokenSet,
    #[error("cannot delete token vertex {0}")]
    TokenDeletion(usize),
    #[error("original id map has {got} entries, expected {expected}")]
    OriginalIdsLength { got: usize, expected: usize },
    #[error("original id map is not injective")]
    OriginalIdsNotInjective,
    #[error("rotation at vertex {0} is not a permutation of its neighbors")]
    RotationMismatch(usize),
    #[error("rotation system covers {got} vertices, graph has {expected}")]
    RotationLength { got: usize, expected: usize },
    #[error("K3,r minor check refused: n = {n} exceeds limit {limit}")]
    MinorCheckTooLarge { n: usize, limit: usize },
    #[error("vertex order is not a permutation of the vertex set")]
    NotAPermutation,
    #[error("coloring is not proper: edge {0}-{1} is monochromatic")]
    ImproperColoring(usize, usize),
    #[error("coloring covers {got} vertices, graph has {expected}")]
    ColoringLength { got: usize, expected: usize },
}

/// Rejection reasons for a rotation system.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("face traversal did not close starting from dart {0}->{1}")]
    OpenFace(usize, usize),
    #[error("Euler characteristic mismatch: V - E + F = {got}, expected {expected}")]
    NotPlanar { got: i64, expected: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed line: {0}")]
    Malformed(String),
    #[error("problem line must be the first non-comment line")]
    MissingProblemLine,
    #[error("duplicate `{0}` line")]
    DuplicateLine(&'static str),
    #[error("missing `{0}` line")]
    MissingLine(&'static str),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("duplicate vertex in {0}-line")]
    DuplicateVertex(&'static str),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("{which} line has {found} vertices, expected k = {expected}")]
    TokenCount { which: &'static str, expected: usize, found: usize },
    #[error("source set not independent")]
    SourceNotIndependent,
    #[error("target set not independent")]
    TargetNotIndependent,
    #[error("rotation of vertex {0} is inconsistent with its edges")]
    RotationInconsistent(usize),
    #[error("rotation lines must be given for all vertices or none")]
    RotationIncomplete,
    #[error("unknown graph class `{0}`")]
    UnknownClass(String),
    #[error("coloring is not proper on edge {0} {1}")]
    ImproperColoring(usize, usize),
    #[error("{0}")]
    Invalid(String),
}

impl ParseError {
    pub(crate) fn new(line: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("instance declares {declared} but the {mode} kernel was requested")]
    WrongClass { declared: String, mode: &'static str },
    #[error("planar kernel needs a rotation system")]
    MissingEmbedding,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
    #[error("independent set extraction failed although the pigeonhole threshold was met")]
    ExtractionFailed,
    #[error("2-class {0:?} violates the planar path/cycle structure")]
    EmbeddingClassViolation((usize, usize)),
    #[error("could not make 2-classes pairwise anticomplete: {0}")]
    EmbeddingInconsistent(String),
    #[error("color removal left important vertex {0} uncovered")]
    ColorCoverage(usize),
    #[error("kernel has {size} vertices, strict bound is {bound}")]
    BoundViolated { size: usize, bound: usize },
    #[error("2-class {0:?} is not part of this decomposition")]
    UnknownClass((usize, usize)),
}

/// Why a reconfiguration sequence fails to replay. Steps are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("step {step}: vertex {vertex} out of range")]
    OutOfRange { step: usize, vertex: usize },
    #[error("step {step}: no token on vertex {vertex}")]
    NoToken { step: usize, vertex: usize },
    #[error("step {step}: vertex {vertex} already holds a token")]
    Occupied { step: usize, vertex: usize },
    #[error("step {step}: token set is not independent")]
    NotIndependent { step: usize },
    #[error("final token set differs from the target")]
    WrongTarget,
}

impl SequenceError {
    /// Failing jump (1-based), or `None` when only the final set is wrong.
    pub fn step(&self) -> Option<usize> {
        match *self {
            SequenceError::OutOfRange { step, .. }
            | SequenceError::NoToken { step, .. }
            | SequenceError::Occupied { step, .. }
            | SequenceError::NotIndependent { step } => Some(step),
            SequenceError::WrongTarget => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("no {k} independent tokens found after {tries} attempts")]
    RetryCapExhausted { k: usize, tries: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("manifest line {line}: {message}")]
pub struct ManifestError {
    pub line: usize,
    pub message: String,
}
