//! The numerical identity verifier: each composition claim is executed as
//! a literal nested LHS against its shifted-operator or contour-kernel RHS
//! over a grid, producing a [`VerificationReport`]. Mismatches never raise;
//! the pass flag carries the verdict.

use super::kernels::{theorem1_kernel_integral, theorem2_kernel_integral};
use super::report::{PointRecord, VerificationReport};
use super::shift::{
    shift_d_after_h, shift_h_after_d, shift_h_after_i, shift_hilfer_after_h, shift_i_after_h,
};
use super::ComposeError;
use crate::fracops::{
    caputo_reference, h_kernel_apply, h_kernel_apply_g, hilfer_derivative, ik_integral,
    ik_integral_g, rl_derivative, rl_integral_g, FracError, HKernelOp, Integrand,
    KernelSeries, TestFunction,
};
use crate::quadrature::{integrate_singular_nodes, SingularWeight, TOL_OPERATOR};
use crate::specfun::ln_gamma;
use crate::{cplx, Complex};
use std::fmt;
use std::str::FromStr;

/// The identities the verifier can execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    /// 𝓗 ∘ I^μ = shifted 𝓗 (general template)
    Cor1,
    /// I^μ ∘ 𝓗 = the same shifted 𝓗
    Cor2,
    /// I^μ ∘ 𝓗 for the λ-function template, target orders (2,1;2,3)
    Cor3,
    /// 𝓗 ∘ I^μ for the λ-function template
    Cor4,
    /// 𝓗 ∘ D^μ for the λ-function template, target orders (2,2;3,4)
    Cor5,
    /// D^μ ∘ 𝓗 for the λ-function template
    Cor6,
    /// 𝓗 ∘ I^{γ,μ} against the contour kernel
    Thm1,
    /// I^{γ,μ} ∘ 𝓗 against the contour kernel
    Thm2,
    /// D^μ ∘ 𝓗 = shifted 𝓗
    Thm3,
    /// D^{μ,ν} ∘ 𝓗 = shifted 𝓗
    Thm4,
    /// 𝓗 ∘ D^μ = shifted 𝓗
    Remark2,
    /// Hilfer type endpoints: ν=0 vs the RL derivative, ν=1 vs the Caputo
    /// reference
    HilferReduction,
}

impl IdentityId {
    pub const ALL: [IdentityId; 12] = [
        IdentityId::Cor1,
        IdentityId::Cor2,
        IdentityId::Cor3,
        IdentityId::Cor4,
        IdentityId::Cor5,
        IdentityId::Cor6,
        IdentityId::Thm1,
        IdentityId::Thm2,
        IdentityId::Thm3,
        IdentityId::Thm4,
        IdentityId::Remark2,
        IdentityId::HilferReduction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Cor1 => "cor1",
            IdentityId::Cor2 => "cor2",
            IdentityId::Cor3 => "cor3",
            IdentityId::Cor4 => "cor4",
            IdentityId::Cor5 => "cor5",
            IdentityId::Cor6 => "cor6",
            IdentityId::Thm1 => "thm1",
            IdentityId::Thm2 => "thm2",
            IdentityId::Thm3 => "thm3",
            IdentityId::Thm4 => "thm4",
            IdentityId::Remark2 => "remark2",
            IdentityId::HilferReduction => "hilfer-reductions",
        }
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        IdentityId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| format!("unknown identity '{s}'"))
    }
}

/// Orders used by an identity sweep; unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityParams {
    pub mu: f64,
    pub nu: f64,
    pub gamma: f64,
}

impl Default for IdentityParams {
    fn default() -> Self {
        Self { mu: 0.5, nu: 0.5, gamma: 0.5 }
    }
}

/// Integrand wrapping (𝓗 φ)(t), with the correct base-point exponent.
pub(crate) fn h_conv_integrand<'a>(op: &'a HKernelOp, f: &'a TestFunction) -> Integrand<'a> {
    Integrand::new(op.a(), f.left_exponent() + op.kernel_exponent(), move |t| {
        h_kernel_apply(op, f, t)
    })
}

/// Integrand wrapping (I^{γ,μ} φ)(t); the weighted integral keeps the
/// operand's own power behaviour when a = 0 and lowers it by γ otherwise.
fn ik_integrand<'a>(
    op_a: f64,
    gamma: f64,
    mu: f64,
    f: &'a TestFunction,
) -> Integrand<'a> {
    let e = if op_a == 0.0 { f.left_exponent() } else { f.left_exponent() - gamma };
    Integrand::new(op_a, e, move |t| {
        if t == op_a {
            return Ok(cplx(0.0, 0.0));
        }
        ik_integral(f, op_a, gamma, mu, t)
    })
}

/// d/dt (𝓗 φ)(t) assembled from the term-wise differentiated kernel
/// series. Terms y^ρ with ρ ∈ (-1,0) differentiate into RL derivatives of
/// φ of order -ρ, ρ = 0 terms contribute their coefficient times φ(t), and
/// ρ > 0 terms form a convolution with the differentiated kernel. This is
/// how the verifier evaluates derivative-after-𝓗 compositions: pushing a
/// difference quotient through the outer quadrature would be both noisy
/// and far more expensive. Cross-checked against the interpolation scheme
/// in the tests below.
pub(crate) struct HConvDeriv<'a> {
    op: &'a HKernelOp,
    f: &'a TestFunction,
    /// (coefficient·Γ(ρ+1), -ρ) for ρ ∈ (-1, 0): RL-derivative terms
    neg: Vec<(Complex, f64)>,
    /// Σ coefficients of ρ = 0 terms
    zero: Complex,
    /// (coefficient·ρ, ρ-1) for ρ > 0: differentiated kernel terms
    pos: Vec<(Complex, f64)>,
    min_pos_exp: f64,
}

impl<'a> HConvDeriv<'a> {
    /// `reach`: the largest t - a the integrand will be asked for; controls
    /// series truncation.
    pub fn new(op: &'a HKernelOp, f: &'a TestFunction, reach: f64) -> Result<Self, ComposeError> {
        if op.beta().im.abs() > 1e-12 {
            return Err(ComposeError::Condition(
                "kernel-derivative series requires a real β".into(),
            ));
        }
        if !(f.left_exponent() + op.kernel_exponent() > 0.0) {
            return Err(ComposeError::Condition(
                "(𝓗 φ) must vanish at the base point for the derivative path".into(),
            ));
        }
        let beta = op.beta().re;
        let alpha = op.alpha();
        let ln_w = op.w().ln();
        let mut series = KernelSeries::new(op);
        let ev = series.evaluator_mut();
        let mut neg = Vec::new();
        let mut zero = cplx(0.0, 0.0);
        let mut pos: Vec<(Complex, f64)> = Vec::new();
        let y = reach.max(1e-6);
        for fam in 0..ev.left_families() {
            let mut small = 0;
            let mut scale = 0.0_f64;
            for k in 0..400 {
                let Some((e, lnc)) = ev.left_term(fam, k).map_err(FracError::from)? else {
                    small += 1;
                    if small >= 3 {
                        break;
                    }
                    continue;
                };
                let coeff = (lnc + e * ln_w).exp();
                let rho = beta - 1.0 + alpha * e;
                let mag = coeff.norm() * y.powf(rho);
                scale = scale.max(mag);
                if mag <= 1e-16 * scale.max(1e-300) {
                    small += 1;
                    if small >= 3 {
                        break;
                    }
                } else {
                    small = 0;
                }
                if rho.abs() <= 1e-12 {
                    zero += coeff;
                } else if rho < 0.0 {
                    let g = ln_gamma(cplx(rho + 1.0, 0.0)).map_err(FracError::from)?;
                    neg.push((coeff * g.exp(), -rho));
                } else {
                    pos.push((coeff * rho, rho - 1.0));
                }
            }
        }
        let min_pos_exp =
            pos.iter().map(|&(_, e)| e).fold(f64::INFINITY, f64::min).min(f64::INFINITY);
        Ok(Self { op, f, neg, zero, pos, min_pos_exp })
    }

    pub fn eval(&self, t: f64) -> Result<Complex, FracError> {
        let a = self.op.a();
        let mut acc = cplx(0.0, 0.0);
        if self.zero.norm() > 0.0 {
            acc += self.zero * self.f.evaluate(a, t);
        }
        for &(c, order) in &self.neg {
            acc += c * rl_derivative(self.f, a, cplx(order, 0.0), t)?;
        }
        if !self.pos.is_empty() {
            let weight = SingularWeight::new(self.f.left_exponent(), self.min_pos_exp)?;
            let base = self.min_pos_exp;
            let smooth = |u: f64, _dl: f64, dr: f64| -> Complex {
                let mut k = cplx(0.0, 0.0);
                for &(c, e) in &self.pos {
                    k += c * dr.powf(e - base);
                }
                k * cplx(self.f.smooth_eval(a, u), 0.0)
            };
            acc += integrate_singular_nodes(&smooth, a, t, weight, 1e-11, 6.7)?;
        }
        Ok(acc)
    }

    /// As an [`Integrand`]: (𝓗φ)' ~ (t-a)^{λ + kernel_exponent - 1}.
    pub fn integrand(&'a self) -> Integrand<'a> {
        Integrand::new(
            self.op.a(),
            self.f.left_exponent() + self.op.kernel_exponent() - 1.0,
            move |t| self.eval(t),
        )
    }
}

/// LHS of the derivative-after-𝓗 composition: D^μ(𝓗φ)(x) = I^{1-μ}((𝓗φ)')(x)
/// for 0 < μ < 1, using that (𝓗φ) vanishes at the base point.
fn d_after_h_lhs(
    op: &HKernelOp,
    f: &TestFunction,
    mu: f64,
    x: f64,
) -> Result<Complex, ComposeError> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(ComposeError::Condition(format!(
            "the verifier evaluates D∘𝓗 for 0 < mu < 1 only, got {mu}"
        )));
    }
    let deriv = HConvDeriv::new(op, f, x - op.a())?;
    let g = deriv.integrand();
    Ok(rl_integral_g(&g, cplx(1.0 - mu, 0.0), x, TOL_OPERATOR)?)
}

/// LHS of the Hilfer-after-𝓗 composition:
/// D^{μ,ν}(𝓗φ)(x) = I^{ν(1-μ)}( I^{(1-ν)(1-μ)}((𝓗φ)') )(x).
fn hilfer_after_h_lhs(
    op: &HKernelOp,
    f: &TestFunction,
    mu: f64,
    nu: f64,
    x: f64,
) -> Result<Complex, ComposeError> {
    if !(mu > 0.0 && mu < 1.0) || !(0.0..=1.0).contains(&nu) {
        return Err(ComposeError::Condition(format!(
            "Hilfer sweep needs 0 < mu < 1 and 0 <= nu <= 1, got mu = {mu}, nu = {nu}"
        )));
    }
    let sigma1 = (1.0 - nu) * (1.0 - mu);
    let sigma2 = nu * (1.0 - mu);
    let deriv = HConvDeriv::new(op, f, x - op.a())?;
    let g = deriv.integrand();
    let a = op.a();
    let e1 = g.left_exponent();
    if sigma2 == 0.0 {
        return if sigma1 == 0.0 {
            Ok(g.eval(x)?)
        } else {
            Ok(rl_integral_g(&g, cplx(sigma1, 0.0), x, TOL_OPERATOR)?)
        };
    }
    let mid = Integrand::new(a, e1 + sigma1, |t| {
        if sigma1 == 0.0 {
            g.eval(t)
        } else {
            rl_integral_g(&g, cplx(sigma1, 0.0), t, 1e-10)
        }
    });
    Ok(rl_integral_g(&mid, cplx(sigma2, 0.0), x, TOL_OPERATOR)?)
}

/// Execute `id` on operator `op` and test function `f` across `grid`,
/// collecting per-point LHS/RHS values. Evaluation failures propagate;
/// disagreement only clears the pass flag.
pub fn verify_identity(
    id: IdentityId,
    op: &HKernelOp,
    params: &IdentityParams,
    f: &TestFunction,
    grid: &[f64],
    tol: f64,
) -> Result<VerificationReport, ComposeError> {
    if !(tol > 0.0) {
        return Err(ComposeError::Condition(format!("tolerance must be positive, got {tol}")));
    }
    f.validate().map_err(ComposeError::Condition)?;
    let IdentityParams { mu, nu, gamma } = *params;
    let a = op.a();
    let mut points = Vec::with_capacity(grid.len());
    for &x in grid {
        if !(x > a) {
            return Err(ComposeError::Condition(format!(
                "grid point {x} not inside the operator domain (a = {a})"
            )));
        }
        match id {
            IdentityId::Cor1 | IdentityId::Cor4 => {
                // 𝓗(I^μ φ) vs shifted 𝓗
                let inner = Integrand::new(a, f.left_exponent() + mu, |t| {
                    rl_integral_g(
                        &Integrand::from_test_function(f, a),
                        cplx(mu, 0.0),
                        t,
                        1e-10,
                    )
                });
                let lhs = h_kernel_apply_g(op, &inner, x, TOL_OPERATOR)?;
                let rhs = h_kernel_apply(&shift_h_after_i(op, mu)?, f, x)?;
                points.push(PointRecord::new(x, lhs, rhs));
            }
            IdentityId::Cor2 | IdentityId::Cor3 => {
                // I^μ(𝓗 φ) vs the same shifted 𝓗
                let inner = h_conv_integrand(op, f);
                let lhs = rl_integral_g(&inner, cplx(mu, 0.0), x, TOL_OPERATOR)?;
                let rhs = h_kernel_apply(&shift_i_after_h(op, mu)?, f, x)?;
                points.push(PointRecord::new(x, lhs, rhs));
            }
            IdentityId::Cor5 | IdentityId::Remark2 => {
                // 𝓗(D^μ φ) vs shifted 𝓗
                let inner = Integrand::new(a, f.left_exponent() - mu, |t| {
                    rl_derivative(f, a, cplx(mu, 0.0), t)
                });
                let lhs = h_kernel_apply_g(op, &inner, x, TOL_OPERATOR)?;
                let rhs = h_kernel_apply(&shift_h_after_d(op, mu)?, f, x)?;
                points.push(PointRecord::new(x, lhs, rhs));
            }
            IdentityId::Cor6 | IdentityId::Thm3 => {
                // D^μ(𝓗 φ) vs shifted 𝓗
                let lhs = d_after_h_lhs(op, f, mu, x)?;
                let rhs = h_kernel_apply(&shift_d_after_h(op, mu)?, f, x)?;
                points.push(PointRecord::new(x, lhs, rhs));
            }
            IdentityId::Thm4 => {
                let lhs = hilfer_after_h_lhs(op, f, mu, nu, x)?;
                let rhs = h_kernel_apply(&shift_hilfer_after_h(op, mu, nu)?, f, x)?;
                points.push(PointRecord::new(x, lhs, rhs));
            }
            IdentityId::Thm1 => {
                // 𝓗(I^{γ,μ} φ) vs the contour-kernel integral
                let inner = ik_integrand(a, gamma, mu, f);
                let lhs = h_kernel_apply_g(op, &inner, x, TOL_OPERATOR)?;
                let rhs = theorem1_kernel_integral(op, gamma, mu, f, x, TOL_OPERATOR)?;
                points.push(PointRecord::new(x, lhs, rhs));
            }
            IdentityId::Thm2 => {
                // I^{γ,μ}(𝓗 φ) vs the contour-kernel integral
                let inner = h_conv_integrand(op, f);
                let lhs = ik_integral_g(&inner, gamma, mu, x, TOL_OPERATOR)?;
                let rhs = theorem2_kernel_integral(op, gamma, mu, f, x, TOL_OPERATOR)?;
                points.push(PointRecord::new(x, lhs, rhs));
            }
            IdentityId::HilferReduction => {
                // ν = 0 against the RL derivative, ν = 1 against the Caputo
                // reference; both rows share the grid point
                let h0 = hilfer_derivative(f, a, mu, 0.0, x)?;
                let d = rl_derivative(f, a, cplx(mu, 0.0), x)?;
                points.push(PointRecord::new(x, h0, d));
                let h1 = hilfer_derivative(f, a, mu, 1.0, x)?;
                let c = caputo_reference(f, a, mu, x)?;
                points.push(PointRecord::new(x, h1, c));
            }
        }
    }
    Ok(VerificationReport::from_points(id.name(), tol, points))
}
