//! Fractional integral and derivative operators applied to concrete
//! functions: the Riemann-Liouville pair, the Hilfer derivative, the
//! weighted integral I^{γ,μ}, and the H-kernel integral operator.
//!
//! Every operator exists in two forms: a plain form taking a
//! [`TestFunction`], and a `_g` form taking an [`Integrand`]: a function
//! on (a, x] with a declared endpoint power behaviour: so operators can be
//! nested without losing the weight information the quadrature needs.

mod cheb;
mod hkernel;
mod ops;
mod testfn;

pub use hkernel::{h_kernel_apply, h_kernel_apply_g, HKernelOp, KernelSeries};
pub use ops::{
    caputo_reference, hilfer_derivative, hilfer_derivative_g, ik_integral, ik_integral_g,
    rl_derivative, rl_derivative_g, rl_integral, rl_integral_g,
};
pub use testfn::TestFunction;

use crate::Complex;
use std::cell::RefCell;
use thiserror::Error;

/// Errors raised by operator evaluation.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum FracError {
    #[error("operator precondition violated: {0}")]
    Precondition(String),
    #[error("interpolation residual {resid:.3e} exceeds the 1e-7 budget")]
    InterpolationResidual { resid: f64 },
    #[error("quadrature failure: {0}")]
    Quad(#[from] crate::quadrature::QuadError),
    #[error("special function failure: {0}")]
    SpecFun(#[from] crate::specfun::SpecFunError),
    #[error("H-function failure: {0}")]
    H(#[from] crate::hfunction::HError),
}

type EvalFn<'a> = Box<dyn Fn(f64) -> Result<Complex, FracError> + 'a>;

/// A function on (a, x] with known power behaviour f(t) ~ C·(t-a)^ε at the
/// base point, carried so nested quadratures can weight it correctly.
pub struct Integrand<'a> {
    a: f64,
    left_exponent: f64,
    eval: EvalFn<'a>,
    /// eval(t)/(t-a)^ε when an analytically stable form is available
    smooth: Option<EvalFn<'a>>,
}

impl<'a> Integrand<'a> {
    pub fn new(
        a: f64,
        left_exponent: f64,
        eval: impl Fn(f64) -> Result<Complex, FracError> + 'a,
    ) -> Self {
        Self { a, left_exponent, eval: Box::new(eval), smooth: None }
    }

    pub fn with_smooth(mut self, smooth: impl Fn(f64) -> Result<Complex, FracError> + 'a) -> Self {
        self.smooth = Some(Box::new(smooth));
        self
    }

    pub fn from_test_function(f: &'a TestFunction, a: f64) -> Self {
        Integrand {
            a,
            left_exponent: f.left_exponent(),
            eval: Box::new(move |t| Ok(crate::cplx(f.evaluate(a, t), 0.0))),
            smooth: Some(Box::new(move |t| Ok(crate::cplx(f.smooth_eval(a, t), 0.0)))),
        }
    }

    pub fn base_point(&self) -> f64 {
        self.a
    }

    pub fn left_exponent(&self) -> f64 {
        self.left_exponent
    }

    pub fn eval(&self, t: f64) -> Result<Complex, FracError> {
        (self.eval)(t)
    }

    /// eval(t)·(t-a)^{-ε}; falls back to overflow-guarded division when no
    /// analytic smooth form was supplied.
    pub fn smooth_at(&self, t: f64) -> Result<Complex, FracError> {
        if let Some(s) = &self.smooth {
            return s(t);
        }
        let v = self.eval(t)?;
        Ok(divide_power(v, t - self.a, self.left_exponent))
    }
}

/// val / base^exponent without manufacturing inf·0 when base underflows;
/// falls back to log space for extreme magnitudes.
pub(crate) fn divide_power(val: Complex, base: f64, exponent: f64) -> Complex {
    if exponent == 0.0 {
        return val;
    }
    if val.norm() == 0.0 {
        return Complex::new(0.0, 0.0);
    }
    if base > 1e-30 || exponent.abs() <= 1.0 {
        let f = base.powf(-exponent);
        if f.is_finite() {
            return val * f;
        }
    }
    (val.ln() - exponent * base.ln()).exp()
}

/// Captures the first operator error raised inside a quadrature integrand;
/// the integrand reports NaN to the quadrature, which aborts, and the real
/// error is surfaced afterwards.
pub(crate) struct ErrorTrap(RefCell<Option<FracError>>);

impl ErrorTrap {
    pub fn new() -> Self {
        Self(RefCell::new(None))
    }

    pub fn capture(&self, r: Result<Complex, FracError>) -> Complex {
        match r {
            Ok(v) => v,
            Err(e) => {
                self.0.borrow_mut().get_or_insert(e);
                Complex::new(f64::NAN, f64::NAN)
            }
        }
    }

    pub fn resolve(
        &self,
        r: Result<Complex, crate::quadrature::QuadError>,
    ) -> Result<Complex, FracError> {
        if let Some(e) = self.0.borrow_mut().take() {
            return Err(e);
        }
        r.map_err(FracError::from)
    }
}
