use thiserror::Error;

/// Everything that can go wrong while building models, descriptors and operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generators cannot be expressed in the descriptor family of {model}: {detail}")]
    RawOutsideFamily { model: String, detail: String },
    #[error("generator list denotes the zero module")]
    ZeroModule,
    #[error("operands live in different models ({left} vs {right})")]
    ModelMismatch { left: String, right: String },
    #[error("{0} is not an overring of the base domain")]
    NotAnOverring(String),
    #[error("overring {0} has no catalogue model")]
    OverringNotInCatalogue(String),
    #[error("operation {0} is trivial (D^* = K)")]
    TrivialOperation(String),
    #[error("finite-type supremum for {ideal} did not stabilize within cutoff {cutoff}")]
    CutoffNotStabilized { ideal: String, cutoff: usize },
    #[error("{0} is not a fractional ideal")]
    NotFractional(String),
    #[error("bounded witness search exhausted for {0}")]
    SearchExhausted(String),
    #[error("operation {0} is not of finite type")]
    NotFiniteType(String),
    #[error("{0} is not finitely generated")]
    NotFinitelyGenerated(String),
    #[error("extended ideal is not invertible: {0}")]
    NotInvertibleExtension(String),
    #[error("{0} is not closed under the operation")]
    NotClosed(String),
    #[error("invalid model parameters: {0}")]
    InvalidModel(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("scenario error at line {line}, column {column}: {message}")]
    Scenario { line: usize, column: usize, message: String },
    #[error("usage error: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
