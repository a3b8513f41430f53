use thiserror::Error;

/// Violations of the simple-polygon hypothesis. Edge indices are 1-based,
/// edge `i` joining vertices `i - 1` and `i`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("a polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertices {0} and {1} coincide")]
    DuplicateVertex(usize, usize),
    #[error("edges {0} and {1} intersect")]
    EdgeCrossing(usize, usize),
    #[error("edges {0} and {1} overlap along a segment")]
    CollinearOverlap(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Validation(#[from] ValidationError),
    #[error("point is on the polygon or its raindrop ray meets a vertex")]
    NotInS0,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("verified search did not terminate: {0}")]
    HaltingCapExceeded(&'static str),
    #[error("points lie in different components")]
    ComponentMismatch,
    #[error("input point lies on the polygon")]
    OnBoundaryInput,
    #[error("target unreachable in the candidate field")]
    Unreachable,
    #[error("polygon has {n} vertices, oracle limit is {max}")]
    OracleTooLarge { n: usize, max: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("verification failed: {0}")]
    VerificationFailed(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
