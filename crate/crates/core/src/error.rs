use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left:?} vs {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("expected {expected} entries, found {found}")]
    InvalidLength { expected: usize, found: usize },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("parameter `{name}` = {value} is outside [{min}, {max}]")]
    OutOfRange {
        name: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    #[error("strategy profile annihilates the state (normalization trace {trace:e})")]
    DegenerateStrategy { trace: f64 },

    #[error("unsupported player count {0}; only 3 and 4 player games are defined")]
    UnsupportedPlayers(usize),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid strategy profile: {0}")]
    InvalidProfile(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),
}

pub(crate) fn check_unit(name: &'static str, value: f64) -> Result<f64> {
    check_range(name, value, 0.0, 1.0)
}

pub(crate) fn check_range(name: &'static str, value: f64, min: f64, max: f64) -> Result<f64> {
    if value.is_finite() && (min..=max).contains(&value) {
        Ok(value)
    } else {
        Err(Error::OutOfRange {
            name,
            value,
            min,
            max,
        })
    }
}
