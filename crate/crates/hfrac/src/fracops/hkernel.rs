//! The H-kernel integral operator
//! (𝓗 φ)(x) = ∫ₐˣ (x-t)^{β-1} H^{m,n}_{p,q}[w (x-t)^α] φ(t) dt.

use super::{ErrorTrap, FracError, Integrand, TestFunction};
use crate::hfunction::{HEvaluator, HParams};
use crate::quadrature::{integrate_singular_nodes, SingularWeight, TOL_OPERATOR};
use crate::{cplx, Complex};
use serde::Deserialize;
use std::cell::RefCell;

/// A concrete H-kernel operator: base point, weight w, exponents α and β,
/// plus the H-function parameters.
///
/// Construction enforces w ≠ 0, α > 0, Re(β) > 0 and the kernel
/// integrability margin Re(β) + α·min_{j<=m}(b_j/β_j) > 0.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(try_from = "HKernelOpRaw")]
pub struct HKernelOp {
    a: f64,
    w: Complex,
    alpha: f64,
    beta: Complex,
    h: HParams,
}

/// Raw JSON shape; `w` and `beta` accept either a number or [re, im].
#[derive(Deserialize)]
struct HKernelOpRaw {
    #[serde(default)]
    a: f64,
    w: ComplexDef,
    alpha: f64,
    beta: ComplexDef,
    #[serde(flatten)]
    h: HParams,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ComplexDef {
    Re(f64),
    Pair(f64, f64),
}

impl From<ComplexDef> for Complex {
    fn from(c: ComplexDef) -> Complex {
        match c {
            ComplexDef::Re(re) => cplx(re, 0.0),
            ComplexDef::Pair(re, im) => cplx(re, im),
        }
    }
}

impl TryFrom<HKernelOpRaw> for HKernelOp {
    type Error = FracError;
    fn try_from(raw: HKernelOpRaw) -> Result<Self, FracError> {
        HKernelOp::new(raw.a, raw.w.into(), raw.alpha, raw.beta.into(), raw.h)
    }
}

impl HKernelOp {
    pub fn new(
        a: f64,
        w: Complex,
        alpha: f64,
        beta: Complex,
        h: HParams,
    ) -> Result<Self, FracError> {
        if w.norm() == 0.0 || !w.is_finite() {
            return Err(FracError::Precondition("kernel weight w must be nonzero".into()));
        }
        if !(alpha > 0.0) {
            return Err(FracError::Precondition(format!("alpha must be positive, got {alpha}")));
        }
        if !(beta.re > 0.0) {
            return Err(FracError::Precondition(format!("Re(beta) must be positive, got {beta}")));
        }
        let margin = beta.re + alpha * h.min_lower_ratio();
        if !(margin > 0.0) {
            return Err(FracError::Precondition(format!(
                "kernel integrability margin Re(beta) + alpha·min(b_j/beta_j) = {margin} must be positive"
            )));
        }
        Ok(Self { a, w, alpha, beta, h })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn w(&self) -> Complex {
        self.w
    }
    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn beta(&self) -> Complex {
        self.beta
    }
    pub fn h(&self) -> &HParams {
        &self.h
    }

    /// min_{j<=m} b_j/β_j: the kernel H[w y^α] behaves like y^{α·e_min} at 0.
    pub fn e_min(&self) -> f64 {
        self.h.min_lower_ratio()
    }

    /// Power of y in the kernel at y → 0: Re(β) + α·e_min (positive).
    pub fn kernel_exponent(&self) -> f64 {
        self.beta.re + self.alpha * self.e_min()
    }

    /// Kernel value k(y) = y^{β-1} H[w y^α] for y > 0.
    pub fn kernel(&self, y: f64) -> Result<Complex, FracError> {
        let mut series = KernelSeries::new(self);
        let s = series.smooth(y)?;
        Ok(s * y.powf(self.kernel_exponent() - 1.0))
    }
}

/// Cached evaluation of the kernel's smooth part
/// S(y) = k(y)·y^{1-(Re β + α e_min)} = y^{i·Im β}·w^{e_min}·H̃(w y^α),
/// where H̃ is the residue series with its leading power divided out.
pub struct KernelSeries {
    evaluator: HEvaluator,
    w: Complex,
    alpha: f64,
    beta: Complex,
    e_min: f64,
    w_pow: Complex,
}

impl KernelSeries {
    pub fn new(op: &HKernelOp) -> Self {
        let e_min = op.e_min();
        Self {
            evaluator: HEvaluator::new(&op.h),
            w: op.w,
            alpha: op.alpha,
            beta: op.beta,
            e_min,
            w_pow: op.w.powc(cplx(e_min, 0.0)),
        }
    }

    /// S(y) as above; finite and nonzero as y → 0⁺.
    pub fn smooth(&mut self, y: f64) -> Result<Complex, FracError> {
        let z = self.w * y.powf(self.alpha);
        let h_scaled = self.evaluator.eval_scaled_left(z, self.e_min)?;
        let osc = if self.beta.im == 0.0 {
            cplx(1.0, 0.0)
        } else {
            cplx(0.0, self.beta.im * y.ln()).exp()
        };
        Ok(self.w_pow * osc * h_scaled)
    }

    pub fn evaluator_mut(&mut self) -> &mut HEvaluator {
        &mut self.evaluator
    }
}

/// (𝓗 φ)(x) for a corpus function φ.
pub fn h_kernel_apply(op: &HKernelOp, f: &TestFunction, x: f64) -> Result<Complex, FracError> {
    f.validate().map_err(FracError::Precondition)?;
    h_kernel_apply_g(op, &Integrand::from_test_function(f, op.a), x, TOL_OPERATOR)
}

/// (𝓗 g)(x) for a general integrand with declared base-point behaviour.
pub fn h_kernel_apply_g(
    op: &HKernelOp,
    g: &Integrand,
    x: f64,
    tol: f64,
) -> Result<Complex, FracError> {
    let a = op.a;
    if (g.base_point() - a).abs() > 1e-12 {
        return Err(FracError::Precondition(format!(
            "operand base point {} does not match operator base point {a}",
            g.base_point()
        )));
    }
    if x < a {
        return Err(FracError::Precondition(format!("x = {x} below base point {a}")));
    }
    if x == a {
        return Ok(cplx(0.0, 0.0));
    }
    let weight = SingularWeight::new(g.left_exponent(), op.kernel_exponent() - 1.0)?;
    let series = RefCell::new(KernelSeries::new(op));
    let trap = ErrorTrap::new();
    let smooth = |t: f64, _dl: f64, dr: f64| -> Complex {
        let k = trap.capture(series.borrow_mut().smooth(dr));
        let v = trap.capture(g.smooth_at(t));
        k * v
    };
    trap.resolve(integrate_singular_nodes(&smooth, a, x, weight, tol, 6.7))
}
