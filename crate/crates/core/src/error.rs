use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid instance: {}", .0.join("; "))]
    InvalidInstance(Vec<String>),

    #[error("invalid hyperparameters: {0}")]
    InvalidHyperparameters(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("export error: {0}")]
    Export(String),

    #[error("run has no feasible layout, no milestones available")]
    NoMilestones,

    #[error("unknown instance or suite `{0}`")]
    UnknownSelection(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
