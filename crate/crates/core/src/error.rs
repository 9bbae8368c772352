use thiserror::Error;

/// Errors raised by the algebra kernels.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by `{0}`")]
    NotDivisible(String),
    #[error("no value assigned to symbol `{0}`")]
    MissingSymbol(String),
    #[error("invalid symbol `{0}`")]
    InvalidSymbol(String),
    #[error("polynomial syntax error at byte {offset}: {message}")]
    PolySyntax { offset: usize, message: String },
    #[error("{d} does not divide {n}")]
    NotADivisor { n: u64, d: u64 },
    #[error("leading coefficient must be a nonzero rational constant")]
    NonUnitLeadingCoefficient,
    #[error("leading coefficient must be zero")]
    LeadingCoefficientNotZero,
    #[error("leading coefficient must be exactly one")]
    LeadingCoefficientNotOne,
    #[error("constant term must be exactly one")]
    ConstantTermNotOne,
    #[error("constant term must be zero")]
    ConstantTermNotZero,
    #[error("constant term must be a nonzero rational")]
    ConstantTermNotUnit,
    #[error("series truncation {have} is smaller than the required {need}")]
    TruncationTooSmall { have: usize, need: usize },
    #[error("matrix kind mismatch: {0}")]
    KindMismatch(String),
    #[error("diagonal entry ({0},{0}) is not a nonzero rational constant")]
    SingularDiagonal(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed series document: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
