use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite argument to {0}")]
    NonFinite(&'static str),

    #[error("singular point: {0}")]
    SingularPoint(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("direct surgery formula requires p > 0, got p = {0}")]
    UnsupportedFraming(i64),

    #[error("branch inconsistency: coordinate {index} has c = {raw}, {distance:.3e} away from the correction lattice")]
    BranchInconsistency {
        index: usize,
        raw: String,
        distance: f64,
    },

    #[error("invalid hypersum spec: {0}")]
    InvalidSpec(String),

    #[error("reference file line {line}: {message}")]
    ReferenceParse { line: u64, message: String },

    #[error("schema mismatch: {0}")]
    Schema(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
