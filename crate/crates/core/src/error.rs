use crate::label::Label;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("unknown label `{0}`")]
    UnknownLabel(Label),

    #[error("duplicate label `{0}`")]
    DuplicateLabel(Label),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("pivot entry at ({row}, {col}) is zero")]
    ZeroPivot { row: Label, col: Label },

    #[error("label `{0}` would appear twice on one axis after the pivot")]
    LabelCollision(Label),

    #[error("{what}: size limit {limit} exceeded")]
    SizeLimitExceeded { what: &'static str, limit: u64 },

    #[error("factor {factor} for `{label}` is not in {{0, 1, -1}}")]
    BadFactor { label: Label, factor: String },

    #[error("label sets differ: {0}")]
    LabelMismatch(String),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("not a base: {0}")]
    NotABase(String),

    #[error("matrix is not totally unimodular")]
    NotTu,

    #[error("ground sets differ")]
    GroundMismatch,

    #[error("label sets overlap on `{0}`")]
    LabelOverlap(Label),

    #[error("bad overlap: {0}")]
    BadOverlap(String),

    #[error("row `{0}` of the left summand is zero")]
    ZeroRow(Label),

    #[error("column `{0}` of the right summand is zero")]
    ZeroCol(Label),

    #[error("3-sum pattern violation: {0}")]
    PatternViolation(String),

    #[error("2x2 block is not in a canonical form")]
    NotCanonicalForm,

    #[error("re-signing factor from entry ({row}, {col}) is not +1 or -1")]
    ZeroResignFactor { row: Label, col: Label },

    #[error("partition mismatch: {0}")]
    PartitionMismatch(String),

    #[error("invalid certificate at {path}: {reason}")]
    CertInvalid { path: String, reason: String },

    #[error("sum precondition failed at {path}: {reason}")]
    SumPreconditionFailed { path: String, reason: String },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
