use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("pump amplitudes differ (A0 = {a0}, A1 = {a1}); symmetric solution needs A0 = A1")]
    AsymmetricPumps { a0: String, a1: String },

    #[error("propagation distance must be >= 0, got {0}")]
    NegativeDistance(f64),

    #[error("no triplet generated: state has zero norm")]
    Vacuum,

    #[error("state is not normalized (norm = {0})")]
    NotNormalized(f64),

    #[error("tolerance must lie in (0, 0.5), got {0}")]
    InvalidTolerance(f64),

    #[error("invalid sweep axis {name:?}: {reason}")]
    InvalidAxis { name: String, reason: String },

    #[error("infeasible search box: {0}")]
    InfeasibleBox(String),

    #[error("invalid integration setup: {0}")]
    InvalidIntegration(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
