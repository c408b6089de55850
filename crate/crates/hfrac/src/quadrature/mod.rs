//! Real-line and contour integration engines.
//!
//! Three entry points:
//!
//! * [`integrate_adaptive`]: adaptive Gauss-Kronrod on a finite interval,
//! * [`integrate_singular`]: tanh-sinh (double-exponential) rule for
//!   integrands with power singularities at either endpoint; the singular
//!   weight is passed separately so it can be evaluated in closed form at
//!   nodes exponentially close to the endpoints,
//! * [`integrate_contour`]: trapezoid sums over a truncated vertical line
//!   for Mellin-Barnes integrals, with a node-doubling ladder.
//!
//! Integrands return [`Complex`]; a non-finite sample aborts the
//! integration with an error rather than poisoning the sum.

mod adaptive;
mod contour;
mod tanh_sinh;

pub use adaptive::integrate_adaptive;
pub use contour::integrate_contour;
pub use tanh_sinh::integrate_singular;
pub(crate) use tanh_sinh::integrate_singular_nodes;

use thiserror::Error;

/// Default absolute tolerance for scalar special-function integrals.
pub const TOL_SCALAR: f64 = 1e-10;
/// Default absolute tolerance for operator applications (two nested
/// integrals).
pub const TOL_OPERATOR: f64 = 1e-8;

/// Errors raised by the integration engines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QuadError {
    #[error("integral did not converge: estimated error {err:.3e} > tol {tol:.3e}")]
    NoConvergence { tol: f64, err: f64 },
    #[error("non-integrable endpoint exponent {0} (must be > -1)")]
    NonIntegrableExponent(f64),
    #[error("contour integrand not negligible at truncation (tail/peak = {0:.3e})")]
    DecayCheck(f64),
    #[error("non-finite integrand sample at t = {0}")]
    NonFiniteSample(f64),
    #[error("invalid integration request: {0}")]
    Invalid(String),
}

/// Endpoint power weights (t-a)^left · (b-t)^right attached to an otherwise
/// smooth integrand. Both exponents must exceed -1 for integrability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularWeight {
    pub left_exponent: f64,
    pub right_exponent: f64,
}

impl SingularWeight {
    pub fn new(left_exponent: f64, right_exponent: f64) -> Result<Self, QuadError> {
        if !(left_exponent > -1.0) || !left_exponent.is_finite() {
            return Err(QuadError::NonIntegrableExponent(left_exponent));
        }
        if !(right_exponent > -1.0) || !right_exponent.is_finite() {
            return Err(QuadError::NonIntegrableExponent(right_exponent));
        }
        Ok(Self { left_exponent, right_exponent })
    }

    /// No endpoint singularity at all.
    pub fn none() -> Self {
        Self { left_exponent: 0.0, right_exponent: 0.0 }
    }
}

/// Discretization of a vertical Mellin-Barnes line Re(s) = abscissa,
/// truncated to |Im(s)| <= half_height with `nodes` trapezoid points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    pub abscissa: f64,
    pub half_height: f64,
    pub nodes: usize,
}

impl ContourSpec {
    pub fn new(abscissa: f64, half_height: f64, nodes: usize) -> Result<Self, QuadError> {
        if !(half_height > 0.0) {
            return Err(QuadError::Invalid(format!(
                "contour half-height must be positive, got {half_height}"
            )));
        }
        if nodes < 33 || nodes.is_multiple_of(2) {
            return Err(QuadError::Invalid(format!(
                "contour nodes must be >= 33 and odd, got {nodes}"
            )));
        }
        Ok(Self { abscissa, half_height, nodes })
    }

    /// Ladder start used throughout the crate: T = 40 with 257 nodes.
    pub fn standard(abscissa: f64) -> Self {
        Self { abscissa, half_height: 40.0, nodes: 257 }
    }
}
