use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("functional-vanishing certificate required for the functional-induced bracket")]
    MissingCertificate,
    #[error("mismatched arguments: {0}")]
    Argument(String),
    #[error("operator has beta-dependent coefficients but no functional is active")]
    MissingFunctional,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
}
