use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("d^2 != 0 on {generator}: d^2 = {residue}")]
    DifferentialNotSquareZero { generator: String, residue: String },

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("base rings differ")]
    BaseRingMismatch,

    #[error("not a chain map: {0}")]
    InvalidChainMap(String),

    #[error("no value supplied for degree-0 generator {0}")]
    MissingEvaluationPoint(String),

    #[error("invalid k-point: {0}")]
    InvalidPoint(String),

    #[error("truncation window too small: {0}")]
    TruncationTooSmall(String),

    #[error("form has wrong weight or degree: {0}")]
    WrongWeightOrDegree(String),

    #[error("matrix is not invertible over the base (det = {det})")]
    NotInvertible { det: String },

    #[error("de Rham algebra is not bounded inside the weight window: {0}")]
    NotBounded(String),

    #[error("invalid ring map: {0}")]
    InvalidRingMap(String),

    #[error("undeclared symbol {0}")]
    UndeclaredSymbol(String),

    #[error("invalid structure: {0}")]
    Invalid(String),
}
