use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure carries a stable code (see [`Error::code`]) that the CLI prints.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("irrational value not representable in exact mode: {0}")]
    ExactUnsupported(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("bracket violates the Jacobi identity (defect {0:e})")]
    NotLieAlgebra(f64),
    #[error("operator is not self-adjoint for the metric (defect {0:e})")]
    NotSelfAdjoint(f64),
    #[error("metric has signature ({p},{q}), expected exactly one negative direction")]
    NotLorentzian { p: usize, q: usize },
    #[error("eigenvalue clusters too close to decide the Jordan structure: {0}")]
    DefectiveAmbiguity(String),
    #[error("inconsistent split decomposition: {0}")]
    BadDecomposition(String),
    #[error("type mismatch: {0}")]
    TypeMismatch(String),
    #[error("bad parameter: {0}")]
    BadParam(String),
    #[error("subalgebra is not Einstein")]
    NotEinstein,
    #[error("constraint violated: {0}")]
    ConstraintViolation(String),
    #[error("bracket [{0},{1}] given twice")]
    DuplicateBracket(String, String),
    #[error("line {line}, column {column}: unknown basis name `{name}`")]
    UnknownName { name: String, line: usize, column: usize },
    #[error("arithmetic mixes exact and float scalars")]
    MixedBackend,
    #[error("{0}")]
    Io(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "PARSE_ERROR",
            Error::ExactUnsupported(_) => "EXACT_UNSUPPORTED",
            Error::DimensionMismatch(_) => "DIMENSION_MISMATCH",
            Error::DegenerateMetric => "DEGENERATE_METRIC",
            Error::NotLieAlgebra(_) => "NOT_LIE_ALGEBRA",
            Error::NotSelfAdjoint(_) => "NOT_SELF_ADJOINT",
            Error::NotLorentzian { .. } => "NOT_LORENTZIAN",
            Error::DefectiveAmbiguity(_) => "DEFECTIVE_AMBIGUITY",
            Error::BadDecomposition(_) => "BAD_DECOMPOSITION",
            Error::TypeMismatch(_) => "TYPE_MISMATCH",
            Error::BadParam(_) => "BAD_PARAM",
            Error::NotEinstein => "NOT_EINSTEIN",
            Error::ConstraintViolation(_) => "CONSTRAINT_VIOLATION",
            Error::DuplicateBracket(..) => "DUPLICATE_BRACKET",
            Error::UnknownName { .. } => "UNKNOWN_NAME",
            Error::MixedBackend => "MIXED_BACKEND",
            Error::Io(_) => "IO_ERROR",
        }
    }

    /// 3 for numerical ambiguity, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::DefectiveAmbiguity(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
