//! The Fox H-function.
//!
//! Internally the function is always
//!
//!   H(z) = (1/2πi) ∫ θ(s) z^{-s} ds,
//!   θ(s) = Π_{j<=m} Γ(b_j + β_j s) · Π_{j<=n} Γ(1 - a_j - α_j s)
//!        / [Π_{j>m} Γ(1 - b_j - β_j s) · Π_{j>n} Γ(a_j + α_j s)],
//!
//! and every formula written in the ξ-convention (integrand φ(ξ) z^{+ξ})
//! is translated at the boundary through ξ = -s. Mixing the two conventions
//! is the single likeliest correctness hazard in this domain, so the
//! translation lives here and nowhere else.

mod eval;
mod params;
mod reduce;
mod series;
mod theta;

pub use eval::{check_convergence, eval_h, eval_h_contour, Convergence};
pub use params::HParams;
pub use reduce::{reduce_to_known, KnownForm};
pub use series::HEvaluator;
pub use theta::{mellin_theta, MellinTheta};

use crate::Complex;
use thiserror::Error;

/// Errors raised by H-function machinery.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum HError {
    #[error("invalid H-function parameters: {0}")]
    InvalidParams(String),
    #[error("Mellin integrand pole at s = {0}")]
    ThetaPole(Complex),
    #[error("coincident numerator poles near s = {0:.12} (logarithmic case unsupported)")]
    PoleCollision(f64),
    #[error("H-function divergent for this argument")]
    Divergent,
    #[error("H-function evaluation failed: {0}")]
    Eval(String),
    #[error("special function failure: {0}")]
    SpecFun(#[from] crate::specfun::SpecFunError),
    #[error("quadrature failure: {0}")]
    Quad(#[from] crate::quadrature::QuadError),
}
