//! Operator composition machinery: the parameter-shift maps that absorb a
//! fractional integral or derivative into an H-kernel operator, the
//! single-contour kernels for compositions with the weighted integral
//! I^{γ,μ}, and the numerical identity verifier that checks every
//! composition claim as an executable LHS = RHS sweep.

mod kernels;
mod report;
mod shift;
mod verify;

pub use kernels::{
    corollary_kernel, corollary_kernel_integral, theorem1_kernel, theorem1_kernel_integral,
    theorem2_kernel, theorem2_kernel_integral,
};
pub use report::{PointRecord, VerificationReport};
pub use shift::{
    apply_shift, shift_d_after_h, shift_h_after_d, shift_h_after_i, shift_hilfer_after_h,
    shift_i_after_h, shift_rule, ShiftKind, ShiftRule,
};
pub use verify::{verify_identity, IdentityId, IdentityParams};

use thiserror::Error;

/// Errors raised by composition maps and the verifier.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum ComposeError {
    #[error("composition precondition violated: {0}")]
    Condition(String),
    #[error("operator failure: {0}")]
    Frac(#[from] crate::fracops::FracError),
    #[error("H-function failure: {0}")]
    H(#[from] crate::hfunction::HError),
    #[error("special function failure: {0}")]
    SpecFun(#[from] crate::specfun::SpecFunError),
    #[error("quadrature failure: {0}")]
    Quad(#[from] crate::quadrature::QuadError),
}
