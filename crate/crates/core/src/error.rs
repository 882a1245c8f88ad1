use thiserror::Error;

use crate::roots::RootError;
use crate::waves::WaveFamily;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("adiabatic exponent must exceed 1, got {0}")]
    InvalidGamma(f64),

    #[error("{name} must be positive and finite, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} = {value} lies outside {range}")]
    Domain {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("strength {0} is within the null band around 1")]
    NullStrength(f64),

    #[error("states are not joined by a single {family:?} wave (residual {residual:e})")]
    NotConnected { family: WaveFamily, residual: f64 },

    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),

    #[error("states do not open a vacuum")]
    NoVacuum,

    #[error("invalid incoming pair: {0}")]
    InvalidPair(String),

    #[error("two contacts do not interact")]
    ContactPair,

    #[error("{0} is not defined for this adiabatic exponent")]
    Regime(&'static str),

    #[error("entropy-form solve did not converge (residual {0:e})")]
    NoConvergence(f64),

    #[error(transparent)]
    Root(#[from] RootError),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}
