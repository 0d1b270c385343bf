use thiserror::Error;

/// Errors raised by the toolkit. The variant name leads every message so the
/// CLI can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("CycleDetected: {0} and {1} lie on a cycle")]
    CycleDetected(String, String),
    #[error("UnknownLabel: {0}")]
    UnknownLabel(String),
    #[error("DuplicateLabel: {0}")]
    DuplicateLabel(String),
    #[error("InvalidLabel: {0:?}")]
    InvalidLabel(String),
    #[error("DimensionMismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("FieldMismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("InvalidField: {0}")]
    InvalidField(String),
    #[error("MonotonicityViolation: {0} <= {1} but the subspace at {0} is not contained in the subspace at {1}")]
    MonotonicityViolation(String, String),
    #[error("NotAMorphism: the map does not send the subspace at {0} into its target")]
    NotAMorphism(String),
    #[error("PosetMismatch: {0}")]
    PosetMismatch(String),
    #[error("NotAnAntichain: {0}")]
    NotAnAntichain(String),
    #[error("NotAnIdeal: {0}")]
    NotAnIdeal(String),
    #[error("NotAFilter: {0}")]
    NotAFilter(String),
    #[error("NoUniqueTop: {0}")]
    NoUniqueTop(String),
    #[error("NotApplicable: width {width} of the complement exceeds 2 at {point}")]
    NotApplicable { point: String, width: usize },
    #[error("GuardrailExceeded: {0}")]
    GuardrailExceeded(String),
    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),
    #[error("Mismatch: {0}")]
    Mismatch(String),
    #[error("ParseError: line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("IoError: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// The bare variant name, e.g. `CycleDetected`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::CycleDetected(..) => "CycleDetected",
            Error::UnknownLabel(_) => "UnknownLabel",
            Error::DuplicateLabel(_) => "DuplicateLabel",
            Error::InvalidLabel(_) => "InvalidLabel",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::FieldMismatch(..) => "FieldMismatch",
            Error::InvalidField(_) => "InvalidField",
            Error::MonotonicityViolation(..) => "MonotonicityViolation",
            Error::NotAMorphism(_) => "NotAMorphism",
            Error::PosetMismatch(_) => "PosetMismatch",
            Error::NotAnAntichain(_) => "NotAnAntichain",
            Error::NotAnIdeal(_) => "NotAnIdeal",
            Error::NotAFilter(_) => "NotAFilter",
            Error::NoUniqueTop(_) => "NoUniqueTop",
            Error::NotApplicable { .. } => "NotApplicable",
            Error::GuardrailExceeded(_) => "GuardrailExceeded",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::Mismatch(_) => "Mismatch",
            Error::Parse { .. } => "ParseError",
            Error::Io(_) => "IoError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
