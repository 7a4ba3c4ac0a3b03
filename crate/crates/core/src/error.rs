//! Crate-wide error type.

use num_complex::Complex64;
use thiserror::Error;

use crate::quadrature::PeriodValue;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("the zero polynomial is not a valid {0}")]
    ZeroInput(&'static str),

    #[error("denominator polynomial is zero")]
    ZeroDenominator,

    #[error("a principal part needs at least one nonzero negative-power coefficient")]
    EmptyPrincipalPart,

    #[error("window start {0} is positive; the series has no positive powers")]
    PositiveWindowStart(i64),

    #[error("coefficient window ends at power {hi} but powers up to {needed} are required")]
    WindowTooShort { hi: i64, needed: i64 },

    #[error("residue series blocks failed to decay over {span} consecutive blocks")]
    NonConvergence { span: usize },

    #[error("ray at angle {angle} is not a descent ray of the exponent")]
    NonDescentRay { angle: f64 },

    #[error("integrand evaluated to a non-finite value near z = {at}")]
    NonFiniteIntegrand { at: Complex64 },

    #[error("quadrature tolerance {requested:.3e} not met (best estimate {achieved:.3e})")]
    ToleranceNotMet {
        requested: f64,
        achieved: f64,
        /// Best results obtained before giving up, one per integrand.
        partial: Vec<PeriodValue>,
    },

    #[error("degree {got} is too small here; at least {min} is required")]
    DegreeTooSmall { got: usize, min: usize },

    #[error("polynomial degrees {0} and {1} must agree")]
    DegreeMismatch(usize, usize),

    #[error(
        "period matrix has numerical rank {rank}, expected {expected}; \
         this points at the quadrature tolerance, not the pairing"
    )]
    RankDeficient { rank: usize, expected: usize },

    #[error(
        "kernel direction is ill-conditioned: smallest singular values \
         {sigma_min:.3e} and {sigma_next:.3e} are not separated"
    )]
    IllConditionedKernel { sigma_min: f64, sigma_next: f64 },

    #[error("tolerance {0} must be positive and finite")]
    InvalidTolerance(f64),

    #[error("invalid curve data: {0}")]
    InvalidCurve(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
}
