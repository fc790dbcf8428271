use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid array configuration: {0}")]
    InvalidArray(String),

    #[error("pattern level must lie in (0, 1), got {0}")]
    InvalidLevel(f64),

    #[error("{axis} pattern never drops to level {level} within +-pi/2")]
    NoCrossing { axis: &'static str, level: f64 },

    #[error("invalid channel parameters: {0}")]
    InvalidParams(String),

    #[error("vector length mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("SIC constraint infeasible: p_min / zeta1 = {ratio} > 1")]
    InfeasibleSic { ratio: f64 },

    #[error("partial-CSI interference term vanishes (other-beam power {nu})")]
    DegenerateInterference { nu: f64 },

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("cannot read config {path}: {msg}")]
    ConfigRead { path: String, msg: String },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),
}
