use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("unachievable density {target} for {model} on {n} vertices (closest {closest})")]
    UnachievableDensity {
        model: String,
        n: usize,
        target: f64,
        closest: f64,
    },

    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("product of {n_g} x {n_h} vertices exceeds the cap of {cap}")]
    SizeOverflow { n_g: usize, n_h: usize, cap: usize },

    #[error("search budget of {budget} nodes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("degenerate degree: {0}")]
    DegenerateDegree(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("instance too large: {0}")]
    InstanceTooLarge(String),

    #[error("edge list line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid experiment config: {0}")]
    InvalidConfig(String),

    #[error("empty report: nothing to export")]
    EmptyReport,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
