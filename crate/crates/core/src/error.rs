use thiserror::Error;

/// Errors raised by the phase-simulation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vector is not normalized: |v| = {norm}")]
    NotUnitVector { norm: f64 },

    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("path needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("time grid is not uniform at sample {index}")]
    NonUniformGrid { index: usize },

    #[error("time grid is not strictly increasing at sample {index}")]
    NonIncreasingTime { index: usize },

    #[error("direction jumps by {jump} between samples {index} and {}", index + 1)]
    NonSmoothPath { index: usize, jump: f64 },

    #[error("|k| = {got} at sample {index} differs from {expected}")]
    MagnitudeMismatch {
        index: usize,
        expected: f64,
        got: f64,
    },

    #[error("sample index {index} out of range (valid: {valid})")]
    IndexOutOfRange { index: usize, valid: String },

    #[error("helicity must be +1 or -1, got {0}")]
    InvalidHelicity(i32),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config: {0}")]
    Config(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
