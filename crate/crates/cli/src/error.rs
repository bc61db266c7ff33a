use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },
    #[error("undeclared symbol {0}")]
    UndeclaredSymbol(String),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("invalid input: {0}")]
    Validation(dgsymp_core::Error),
    #[error("{0}")]
    Domain(#[from] dgsymp_core::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 3,
            _ => 2,
        }
    }
}
