use thiserror::Error;

/// Errors raised by field construction, expression evaluation and the set
/// constructions built on top of them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial has degree 0 or is zero")]
    ZeroDegree,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("no real root available for the requested distinguished embedding")]
    NoRealRoot,
    #[error("polynomial is reducible: found factor {0}")]
    ReducibleDetected(String),
    #[error("root isolation failed to certify after {0} refinement rounds")]
    RootIsolationFailed(u32),
    #[error("root index {index} out of range for degree {degree}")]
    RootIndexOutOfRange { index: usize, degree: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("embedding {0} is complex, a real embedding is required")]
    ComplexEmbedding(usize),
    #[error("embedding {0} is real, a complex embedding is required")]
    RealEmbedding(usize),
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown function `{0}`")]
    UnknownFunction(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("floor-type operation applied to a non-real value")]
    NonRealFloorArgument,
    #[error("variables from different fields mixed in one expression")]
    MixedFields,

    #[error("basis is linearly dependent over Q")]
    DependentBasis,
    #[error("unit rank of the field is not 1")]
    RankNotOne,
    #[error("invalid rho: {0}")]
    InvalidRho(String),
    #[error("element is not a Pisot unit: {0}")]
    NotPisotUnit(String),
    #[error("certified refinement could not separate the value from the threshold")]
    ThresholdAmbiguous,

    #[error("characteristic polynomial of degree {degree} needs {degree} initial terms, got {got}")]
    DegreeMismatch { degree: usize, got: usize },
    #[error("linear system is singular")]
    SingularSystem,
    #[error("dominant root is not a Pisot number")]
    NotPisot,
    #[error("dominant root is not a Salem number")]
    NotSalem,
    #[error("source sequence is identically zero")]
    ZeroSourceSequence,
    #[error("trace representation is zero")]
    ZeroTraceRep,
    #[error("Vandermonde system is singular")]
    VandermondeSingular,
    #[error("value requires index {needed} beyond search bound {bound}")]
    SearchBoundExceeded { needed: u64, bound: u64 },
    #[error("construction audit failed: {0}")]
    AuditFailed(String),
    #[error("sequences have different characteristic polynomials")]
    CharpolyMismatch,
    #[error("bound {bound} exceeds the limit {limit}")]
    BoundTooLarge { bound: u64, limit: u64 },

    #[error("word window of length {len} is shorter than {n}")]
    WindowTooShort { len: usize, n: usize },
    #[error("slope is rational")]
    RationalSlope,
    #[error("slope must lie in (0, 1)")]
    SlopeOutOfRange,
    #[error("density hypothesis fails at level {0}")]
    DensityHypothesisFailed(u32),
    #[error("pigeonhole step found fewer than {needed} identical blocks at level {level}")]
    PigeonholeFailed { level: u32, needed: u64 },
    #[error("rate function must be positive at level {0}")]
    InvalidRate(u32),

    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
