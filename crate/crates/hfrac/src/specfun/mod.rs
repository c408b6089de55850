//! Complex-argument special functions underlying the operator machinery:
//! log-gamma, beta, digamma, Gauss hypergeometric ₂F₁, Mittag-Leffler, and
//! the Macdonald-type λ function.
//!
//! All operations are pure; coefficient tables are compile-time constants.

mod gamma;
mod hyp2f1;
mod lambda;
mod mittag;

pub use gamma::{beta, digamma, gamma, ln_gamma};
pub use hyp2f1::{gauss_2f1, gauss_2f1_near_one};
pub use lambda::{lambda_fn, LambdaParams};
pub use mittag::mittag_leffler;

use crate::Complex;
use thiserror::Error;

/// Errors raised by special-function evaluation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SpecFunError {
    /// Argument landed on (or within ~1e-12 of) a pole of the gamma function.
    #[error("gamma pole at z = {0}")]
    GammaPole(Complex),
    /// A series exceeded its term cap before meeting the tail bound.
    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },
    /// Result would overflow the floating-point range.
    #[error("result overflows f64 range (ln|result| = {0})")]
    Overflow(f64),
    /// Argument outside the supported domain of the routine.
    #[error("argument outside supported domain: {0}")]
    Domain(String),
    /// A quadrature used internally failed to converge.
    #[error("quadrature failure: {0}")]
    Quadrature(#[from] crate::quadrature::QuadError),
}

pub(crate) fn is_nonpositive_integer(z: Complex, tol: f64) -> bool {
    z.im.abs() <= tol && z.re <= 0.5 && (z.re - z.re.round()).abs() <= tol
}
