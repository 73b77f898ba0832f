//! Crate-wide error type.
//!
//! All fallible operations return [`Result`]; errors carry enough context to
//! be printed as a one-line diagnostic by the CLI.

use thiserror::Error;

use crate::fixedpoint::QFormat;

#[derive(Debug, Error)]
pub enum Error {
    /// A Q-format description was rejected (width/frac out of bounds, bad syntax).
    #[error("invalid Q-format: {0}")]
    InvalidFormat(String),

    /// Two samples (or a sample and a filter) disagree on their Q-format.
    #[error("format mismatch: expected {expected}, got {got}")]
    FormatMismatch { expected: QFormat, got: QFormat },

    /// A real-valued input was NaN or infinite where a finite value is required.
    #[error("non-finite input: {0}")]
    NonFiniteInput(&'static str),

    /// A configuration or function parameter violated its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Two sequences that must agree in length did not.
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// Filter coefficients describe poles on or outside the unit circle.
    #[error("unstable filter: {0}")]
    UnstableFilter(String),

    /// A weight update was requested while the model is frozen for inference.
    #[error("training disabled: {0}")]
    TrainingDisabled(&'static str),

    /// A time-mode pulse operation would discharge past the clock window.
    #[error("pulse out of range: {0}")]
    PulseOutOfRange(String),

    /// Experiment or config-file level problem (unknown key, bad value, ...).
    #[error("config error: {0}")]
    Config(String),

    /// A module error that surfaced while running one model of an experiment,
    /// tagged with the model's name.
    #[error("model {model}: {source}")]
    Model {
        model: &'static str,
        #[source]
        source: Box<Error>,
    },

    /// A text artifact (coefficient file, weight snapshot, CSV) failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
