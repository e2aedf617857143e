use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("dyadic index {k} outside grid range [{lo}, {hi}]")]
    DyadicRange { k: i32, lo: i32, hi: i32 },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("euler operator not defined for `{0}`")]
    EulerUndefined(String),
    #[error("resolution {0} below minimum 64")]
    Resolution(usize),
    #[error("config: {0}")]
    Config(String),
    #[error("time mismatch: expected {expected}, got {got}")]
    TimeMismatch { expected: f64, got: f64 },
    #[error("normalization failed: {0}")]
    Normalization(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
