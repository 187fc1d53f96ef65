use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("gap out of range at particle index {index}: gap = {gap}, must be 1 or 2")]
    BadGap { index: usize, gap: i64 },
    #[error("time {t} is beyond the simulated horizon {horizon}")]
    BeyondHorizon { t: f64, horizon: f64 },
    #[error("truncated run: a particle reached the right boundary x_max = {x_max}")]
    Truncated { x_max: usize },
    #[error("quadrature error: {0}")]
    Quadrature(String),
    #[error("infeasible contour constraints: {0}")]
    Contour(String),
    #[error("Pfaffian requires even dimension, got {0}")]
    OddDimension(usize),
    #[error("kernel decay diagnostic failed: {0}")]
    Decay(String),
    #[error("config error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
