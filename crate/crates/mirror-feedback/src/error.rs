use thiserror::Error;

/// Errors shared across the simulator.
#[derive(Debug, Error)]
pub enum Error {
    /// Invalid parameters, grids, or run configurations.
    #[error("config error: {0}")]
    Config(String),

    /// An amplitude became NaN or infinite during integration.
    #[error("non-finite value at t = {t} ps")]
    NonFiniteValue { t: f64 },

    /// Grid refinement did not reach the requested tolerance.
    #[error("no convergence after {doublings} refinements (last change {last_change:.3e})")]
    NoConvergence { doublings: usize, last_change: f64 },

    /// The discretized reservoir evolution lost probability.
    #[error("norm drift {drift:.3e} exceeds {limit:.1e} at t = {t} ps")]
    NormDrift { t: f64, drift: f64, limit: f64 },

    /// Trajectory too short for the requested analysis window.
    #[error("trajectory spans {span:.3} ps, need at least {required:.3} ps")]
    TooShort { span: f64, required: f64 },

    /// The trajectory never settles onto a plateau.
    #[error("trajectory is not stabilized")]
    NotStabilized,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
