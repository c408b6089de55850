//! Single-contour kernels for compositions with the weighted integral
//! I^{γ,μ}: the composition (𝓗 ∘ I^{γ,μ})φ(x) equals ∫ₐˣ K(x,u) φ(u) du
//! with K assembled from a Mellin-Barnes line integral whose integrand
//! carries a beta factor and a Gauss ₂F₁, and likewise for I^{γ,μ} ∘ 𝓗.
//!
//! The ₂F₁ argument is +((x-u)/(x-a)) resp. +((x-u)/x). Re-deriving the
//! inner t-integral through the Euler integral fixes the sign, and the
//! quadrature cross-checks in `inner_integral_identity_*` below pin it
//! down.

use super::ComposeError;
use crate::fracops::{HKernelOp, TestFunction};
use crate::hfunction::mellin_theta;
use crate::quadrature::{
    integrate_contour, integrate_singular_nodes, ContourSpec, SingularWeight,
};
use crate::specfun::{beta as beta_fn, gauss_2f1_near_one, ln_gamma};
use crate::{cplx, Complex};
use std::cell::RefCell;

/// Pick a contour abscissa strictly between the pole families, additionally
/// keeping Re(β - αs) positive (the ₂F₁ and beta factors need it), scored
/// by the caller (e.g. to stay away from integer parameter degeneracies).
fn pick_abscissa(op: &HKernelOp, score: &dyn Fn(f64) -> f64) -> Result<f64, ComposeError> {
    let h = op.h();
    let lo = h.max_left_pole();
    let mut hi = lo + 4.0;
    if let Some(r) = h.min_right_pole() {
        hi = hi.min(r);
    }
    hi = hi.min(op.beta().re / op.alpha());
    if !(hi > lo + 1e-6) {
        return Err(ComposeError::Condition(format!(
            "no admissible contour abscissa in ({lo}, {hi})"
        )));
    }
    let c = [0.5, 0.42, 0.58, 0.36, 0.64, 0.3, 0.7]
        .iter()
        .map(|f| lo + f * (hi - lo))
        .max_by(|a, b| score(*a).total_cmp(&score(*b)))
        .unwrap();
    Ok(c)
}

/// (1/2πi) ∫ θ(s) w^{-s} dr^{μ+β-αs-1-shift} B(μ, β-αs) F(β-αs) ds.
///
/// `shift` divides out the leading small-dr power so callers can sample
/// arbitrarily close to u = x without underflow.
fn kernel_contour(
    op: &HKernelOp,
    mu: f64,
    dr: f64,
    shift: f64,
    abscissa: f64,
    f_factor: &dyn Fn(Complex) -> Result<Complex, ComposeError>,
    tol: f64,
) -> Result<Complex, ComposeError> {
    let trap: RefCell<Option<ComposeError>> = RefCell::new(None);
    let ln_w = op.w().ln();
    let ln_dr = dr.ln();
    let beta = op.beta();
    let alpha = op.alpha();
    let muc = cplx(mu, 0.0);
    let g = |s: Complex| -> Complex {
        let b = beta - alpha * s;
        let r = (|| -> Result<Complex, ComposeError> {
            let th = mellin_theta(op.h(), s)?;
            if th.norm() == 0.0 {
                return Ok(cplx(0.0, 0.0));
            }
            let bf = beta_fn(muc, b)?;
            let ff = f_factor(b)?;
            Ok(th * bf * ff * (-s * ln_w + (muc + beta - alpha * s - 1.0 - shift) * ln_dr).exp())
        })();
        match r {
            Ok(v) => v,
            Err(e) => {
                trap.borrow_mut().get_or_insert(e);
                Complex::new(f64::NAN, f64::NAN)
            }
        }
    };
    let spec = ContourSpec::standard(abscissa);
    let result = integrate_contour(&g, &spec, tol);
    if let Some(e) = trap.borrow_mut().take() {
        return Err(e);
    }
    result.map_err(ComposeError::from)
}

fn check_kernel_args(
    op: &HKernelOp,
    gamma: f64,
    mu: f64,
    x: f64,
    u: f64,
) -> Result<(), ComposeError> {
    if !(gamma > -1.0) || !(mu > 0.0) {
        return Err(ComposeError::Condition(format!(
            "kernel needs gamma > -1 and mu > 0, got gamma = {gamma}, mu = {mu}"
        )));
    }
    if !(op.a() < u && u < x) {
        return Err(ComposeError::Condition(format!(
            "kernel needs a < u < x, got a = {}, u = {u}, x = {x}",
            op.a()
        )));
    }
    Ok(())
}

fn recip_gamma(mu: f64) -> Result<Complex, ComposeError> {
    Ok((-ln_gamma(cplx(mu, 0.0))?).exp())
}

/// Kernel K(x,u) with ∫ₐˣ K(x,u) φ(u) du = (𝓗 ∘ I^{γ,μ} φ)(x):
/// K = u^γ (x-a)^{-μ-γ}/Γ(μ) · (1/2πi)∫ θ(s) w^{-s} (x-u)^{μ+β-αs-1}
///     B(μ, β-αs) ₂F₁(μ+γ, β-αs; μ+β-αs; (x-u)/(x-a)) ds.
pub fn theorem1_kernel(
    op: &HKernelOp,
    gamma: f64,
    mu: f64,
    x: f64,
    u: f64,
) -> Result<Complex, ComposeError> {
    check_kernel_args(op, gamma, mu, x, u)?;
    if u <= 0.0 && gamma.fract() != 0.0 {
        return Err(ComposeError::Condition(format!(
            "u^gamma needs u > 0 for fractional gamma, got u = {u}"
        )));
    }
    let abscissa = pick_abscissa(op, &|_| 0.0)?;
    let omz = (u - op.a()) / (x - op.a());
    let f_factor = |b: Complex| -> Result<Complex, ComposeError> {
        Ok(gauss_2f1_near_one(cplx(mu + gamma, 0.0), b, cplx(mu, 0.0) + b, cplx(omz, 0.0))?)
    };
    let contour = kernel_contour(op, mu, x - u, 0.0, abscissa, &f_factor, 1e-10)?;
    let pre = u.powf(gamma) * (x - op.a()).powf(-mu - gamma) * recip_gamma(mu)?;
    Ok(pre * contour)
}

/// Kernel K(x,u) with ∫ₐˣ K(x,u) φ(u) du = (I^{γ,μ} ∘ 𝓗 φ)(x):
/// K = x^γ (x-a)^{-μ-γ}/Γ(μ) · (1/2πi)∫ θ(s) w^{-s} (x-u)^{μ+β-αs-1}
///     B(μ, β-αs) ₂F₁(-γ, μ; μ+β-αs; (x-u)/x) ds.
pub fn theorem2_kernel(
    op: &HKernelOp,
    gamma: f64,
    mu: f64,
    x: f64,
    u: f64,
) -> Result<Complex, ComposeError> {
    check_kernel_args(op, gamma, mu, x, u)?;
    if x <= 0.0 {
        return Err(ComposeError::Condition(format!("this kernel needs x > 0, got {x}")));
    }
    let abscissa = pick_abscissa(op, &|c| {
        let v: f64 = op.beta().re + gamma - op.alpha() * c;
        (v - v.round()).abs()
    })?;
    let omz = u / x;
    let f_factor = |b: Complex| -> Result<Complex, ComposeError> {
        Ok(gauss_2f1_near_one(cplx(-gamma, 0.0), cplx(mu, 0.0), cplx(mu, 0.0) + b, cplx(omz, 0.0))?)
    };
    let contour = kernel_contour(op, mu, x - u, 0.0, abscissa, &f_factor, 1e-10)?;
    let pre = x.powf(gamma) * (x - op.a()).powf(-mu - gamma) * recip_gamma(mu)?;
    Ok(pre * contour)
}

/// The γ-free kernel of the plain-integral composition, i.e. the contour
/// form of the 𝓗 ∘ I^μ target: K = (1/Γ(μ)) (1/2πi)∫ θ(s) w^{-s}
/// (x-u)^{μ+β-αs-1} B(μ, β-αs) ds. Dual route to the shifted operator.
pub fn corollary_kernel(op: &HKernelOp, mu: f64, x: f64, u: f64) -> Result<Complex, ComposeError> {
    check_kernel_args(op, 0.0, mu, x, u)?;
    let abscissa = pick_abscissa(op, &|_| 0.0)?;
    let one = |_b: Complex| Ok(cplx(1.0, 0.0));
    let contour = kernel_contour(op, mu, x - u, 0.0, abscissa, &one, 1e-10)?;
    Ok(recip_gamma(mu)? * contour)
}

/// Node-depth cap for the outer u-quadrature: nodes may approach the
/// endpoints down to δ with δ^(1+e_min) ~ 1e-20, beyond which the kernel's
/// own contour would need absurd resolution for no contribution.
fn sinh_cap_for(e_min: f64) -> f64 {
    let need = 2.0 * 46.0 / ((1.0 + e_min).max(0.04) * std::f64::consts::PI);
    need.asinh().clamp(3.0, 6.0)
}

struct KernelIntegralParts {
    wl: f64,
    wq: f64,
    cap: f64,
    abscissa: f64,
}

fn kernel_integral_parts(
    op: &HKernelOp,
    gamma_fold: f64,
    mu: f64,
    f: &TestFunction,
    score: &dyn Fn(f64) -> f64,
) -> Result<KernelIntegralParts, ComposeError> {
    let wl = f.left_exponent() + gamma_fold;
    let wq = mu + op.kernel_exponent() - 1.0;
    Ok(KernelIntegralParts {
        wl,
        wq,
        cap: sinh_cap_for(wl.min(wq)),
        abscissa: pick_abscissa(op, score)?,
    })
}

/// ∫ₐˣ K₁(x,u) φ(u) du with K₁ = [`theorem1_kernel`], evaluated as one
/// weighted quadrature whose integrand is the (rescaled) contour kernel.
pub fn theorem1_kernel_integral(
    op: &HKernelOp,
    gamma: f64,
    mu: f64,
    f: &TestFunction,
    x: f64,
    tol: f64,
) -> Result<Complex, ComposeError> {
    f.validate().map_err(ComposeError::Condition)?;
    if !(gamma > -1.0) || !(mu > 0.0) || !(x > op.a()) {
        return Err(ComposeError::Condition(format!(
            "need gamma > -1, mu > 0, x > a; got gamma = {gamma}, mu = {mu}, x = {x}"
        )));
    }
    let a = op.a();
    if a != 0.0 && a < 0.0 {
        return Err(ComposeError::Condition("t^gamma weight needs a >= 0".into()));
    }
    let gamma_fold = if a == 0.0 { gamma } else { 0.0 };
    let parts = kernel_integral_parts(op, gamma_fold, mu, f, &|_| 0.0)?;
    let trap: RefCell<Option<ComposeError>> = RefCell::new(None);
    let xa = x - a;
    let smooth = |u: f64, dl: f64, dr: f64| -> Complex {
        let r = (|| -> Result<Complex, ComposeError> {
            let omz = dl / xa;
            let ff = |b: Complex| -> Result<Complex, ComposeError> {
                Ok(gauss_2f1_near_one(cplx(mu + gamma, 0.0), b, cplx(mu, 0.0) + b, cplx(omz, 0.0))?)
            };
            let c = kernel_contour(op, mu, dr, parts.wq, parts.abscissa, &ff, tol * 0.05)?;
            let ugamma = if a == 0.0 { 1.0 } else { u.powf(gamma) };
            Ok(c * ugamma * f.smooth_eval(a, u))
        })();
        match r {
            Ok(v) => v,
            Err(e) => {
                trap.borrow_mut().get_or_insert(e);
                Complex::new(f64::NAN, f64::NAN)
            }
        }
    };
    let weight = SingularWeight::new(parts.wl, parts.wq)?;
    let integral = integrate_singular_nodes(&smooth, a, x, weight, tol, parts.cap);
    if let Some(e) = trap.borrow_mut().take() {
        return Err(e);
    }
    let pre = xa.powf(-mu - gamma) * recip_gamma(mu)?;
    Ok(pre * integral?)
}

/// ∫ₐˣ K₂(x,u) φ(u) du with K₂ = [`theorem2_kernel`].
pub fn theorem2_kernel_integral(
    op: &HKernelOp,
    gamma: f64,
    mu: f64,
    f: &TestFunction,
    x: f64,
    tol: f64,
) -> Result<Complex, ComposeError> {
    f.validate().map_err(ComposeError::Condition)?;
    if !(gamma > -1.0) || !(mu > 0.0) || !(x > op.a()) || !(x > 0.0) {
        return Err(ComposeError::Condition(format!(
            "need gamma > -1, mu > 0, x > max(a, 0); got gamma = {gamma}, mu = {mu}, x = {x}"
        )));
    }
    let a = op.a();
    let score = |c: f64| {
        let v: f64 = op.beta().re + gamma - op.alpha() * c;
        (v - v.round()).abs()
    };
    let parts = kernel_integral_parts(op, 0.0, mu, f, &score)?;
    let trap: RefCell<Option<ComposeError>> = RefCell::new(None);
    let smooth = |u: f64, dl: f64, dr: f64| -> Complex {
        let r = (|| -> Result<Complex, ComposeError> {
            let omz = (a + dl) / x;
            let ff = |b: Complex| -> Result<Complex, ComposeError> {
                Ok(gauss_2f1_near_one(cplx(-gamma, 0.0), cplx(mu, 0.0), cplx(mu, 0.0) + b, cplx(omz, 0.0))?)
            };
            let c = kernel_contour(op, mu, dr, parts.wq, parts.abscissa, &ff, tol * 0.05)?;
            Ok(c * f.smooth_eval(a, u))
        })();
        match r {
            Ok(v) => v,
            Err(e) => {
                trap.borrow_mut().get_or_insert(e);
                Complex::new(f64::NAN, f64::NAN)
            }
        }
    };
    let weight = SingularWeight::new(parts.wl, parts.wq)?;
    let integral = integrate_singular_nodes(&smooth, a, x, weight, tol, parts.cap);
    if let Some(e) = trap.borrow_mut().take() {
        return Err(e);
    }
    let pre = x.powf(gamma) * (x - a).powf(-mu - gamma) * recip_gamma(mu)?;
    Ok(pre * integral?)
}

/// ∫ₐˣ K(x,u) φ(u) du for the γ-free corollary kernel: the contour-route
/// value of (𝓗 ∘ I^μ φ)(x), compared in tests against the shifted operator.
pub fn corollary_kernel_integral(
    op: &HKernelOp,
    mu: f64,
    f: &TestFunction,
    x: f64,
    tol: f64,
) -> Result<Complex, ComposeError> {
    f.validate().map_err(ComposeError::Condition)?;
    if !(mu > 0.0) || !(x > op.a()) {
        return Err(ComposeError::Condition(format!("need mu > 0 and x > a, got {mu}, {x}")));
    }
    let a = op.a();
    let parts = kernel_integral_parts(op, 0.0, mu, f, &|_| 0.0)?;
    let trap: RefCell<Option<ComposeError>> = RefCell::new(None);
    let smooth = |u: f64, _dl: f64, dr: f64| -> Complex {
        let one = |_b: Complex| Ok(cplx(1.0, 0.0));
        match kernel_contour(op, mu, dr, parts.wq, parts.abscissa, &one, tol * 0.05) {
            Ok(c) => c * f.smooth_eval(a, u),
            Err(e) => {
                trap.borrow_mut().get_or_insert(e);
                Complex::new(f64::NAN, f64::NAN)
            }
        }
    };
    let weight = SingularWeight::new(parts.wl, parts.wq)?;
    let integral = integrate_singular_nodes(&smooth, a, x, weight, tol, parts.cap);
    if let Some(e) = trap.borrow_mut().take() {
        return Err(e);
    }
    Ok(recip_gamma(mu)? * integral?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfunction::HParams;
    use crate::quadrature::integrate_singular;
    use crate::rel_err;
    use crate::specfun::{gamma, gauss_2f1};

    fn exp_op() -> HKernelOp {
        let h = HParams::new(1, 0, vec![], vec![(0.0, 1.0)]).unwrap();
        HKernelOp::new(0.0, cplx(1.0, 0.0), 1.0, cplx(1.0, 0.0), h).unwrap()
    }

    fn ml_op() -> HKernelOp {
        let h = HParams::new(1, 1, vec![(0.0, 1.0)], vec![(0.0, 1.0), (0.0, 0.5)]).unwrap();
        HKernelOp::new(0.0, cplx(1.0, 0.0), 0.5, cplx(1.0, 0.0), h).unwrap()
    }

    /// ∫ᵤˣ (t-u)^{μ-1} (x-t)^{σ-1} (t-a)^{-μ-γ} dt against its closed form
    /// (x-u)^{μ+σ-1} (x-a)^{-μ-γ} B(μ,σ) ₂F₁(μ+γ, σ; μ+σ; (x-u)/(x-a)).
    /// This pins the sign of the ₂F₁ argument.
    #[test]
    fn inner_integral_identity_first_direction() {
        for (mu, gamma_, sigma, x, u) in [
            (0.5, 0.5, 0.7, 1.0, 0.3),
            (1.0, 1.0, 0.5, 1.0, 0.5),
            (0.7, 0.0, 1.2, 2.0, 0.8),
            (0.3, -0.4, 0.9, 1.5, 0.2),
        ] {
            let a = 0.0;
            let w = SingularWeight::new(mu - 1.0, sigma - 1.0).unwrap();
            let smooth = |t: f64| cplx((t - a).powf(-mu - gamma_), 0.0);
            let direct = integrate_singular(&smooth, u, x, w, 1e-12).unwrap();
            let closed = (x - u).powf(mu + sigma - 1.0)
                * (x - a).powf(-mu - gamma_)
                * beta_fn(cplx(mu, 0.0), cplx(sigma, 0.0)).unwrap()
                * gauss_2f1(
                    cplx(mu + gamma_, 0.0),
                    cplx(sigma, 0.0),
                    cplx(mu + sigma, 0.0),
                    cplx((x - u) / (x - a), 0.0),
                )
                .unwrap();
            assert!(
                rel_err(direct, closed) < 1e-9,
                "mu={mu} gamma={gamma_} sigma={sigma}: {direct} vs {closed}"
            );
        }
    }

    /// ∫ᵤˣ t^γ (t-u)^{σ-1} (x-t)^{μ-1} dt against
    /// x^γ (x-u)^{μ+σ-1} B(μ,σ) ₂F₁(-γ, μ; μ+σ; (x-u)/x).
    #[test]
    fn inner_integral_identity_second_direction() {
        for (mu, gamma_, sigma, x, u) in [
            (0.5, 0.5, 0.7, 1.0, 0.3),
            (0.8, 1.0, 1.1, 1.4, 0.6),
            (0.3, -0.3, 0.6, 2.0, 0.5),
        ] {
            let w = SingularWeight::new(sigma - 1.0, mu - 1.0).unwrap();
            let smooth = |t: f64| cplx(t.powf(gamma_), 0.0);
            let direct = integrate_singular(&smooth, u, x, w, 1e-12).unwrap();
            let closed = x.powf(gamma_)
                * (x - u).powf(mu + sigma - 1.0)
                * beta_fn(cplx(mu, 0.0), cplx(sigma, 0.0)).unwrap()
                * gauss_2f1(
                    cplx(-gamma_, 0.0),
                    cplx(mu, 0.0),
                    cplx(mu + sigma, 0.0),
                    cplx((x - u) / x, 0.0),
                )
                .unwrap();
            assert!(
                rel_err(direct, closed) < 1e-9,
                "mu={mu} gamma={gamma_} sigma={sigma}: {direct} vs {closed}"
            );
        }
    }

    #[test]
    fn kernel_vanishes_toward_the_diagonal() {
        // Re(μ+β) > 1 makes K → 0 as u → x⁻
        let op = exp_op();
        let k = theorem1_kernel(&op, 0.5, 0.7, 1.0, 1.0 - 1e-6).unwrap();
        assert!(k.norm() < 1e-3, "{k}");
        let k2 = theorem2_kernel(&op, 0.5, 0.7, 1.0, 1.0 - 1e-6).unwrap();
        assert!(k2.norm() < 1e-3, "{k2}");
    }

    #[test]
    fn gamma_zero_collapses_to_corollary_kernel() {
        // ₂F₁(0,·;·;·) = 1: the second-direction kernel at γ = 0 equals the
        // corollary kernel up to the (x-a)^{-μ} prefactor
        let op = ml_op();
        let (mu, x, u) = (0.5, 1.2, 0.4);
        let k2 = theorem2_kernel(&op, 0.0, mu, x, u).unwrap();
        let kc = corollary_kernel(&op, mu, x, u).unwrap();
        assert!(
            rel_err(k2 * x.powf(mu), kc) < 1e-6,
            "{} vs {kc}",
            k2 * x.powf(mu)
        );
    }

    #[test]
    fn corollary_kernel_matches_shifted_operator_kernel() {
        // dual route: the contour kernel of 𝓗∘I^μ equals the kernel of the
        // shifted operator (orders n+1, p+1, q+1, β+μ) pointwise
        let op = ml_op();
        let mu = 0.5;
        let shifted = super::super::shift_h_after_i(&op, mu).unwrap();
        for (x, u) in [(1.0, 0.3), (1.5, 1.1)] {
            let kc = corollary_kernel(&op, mu, x, u).unwrap();
            let ks = shifted.kernel(x - u).unwrap();
            assert!(rel_err(kc, ks) < 1e-7, "x={x} u={u}: {kc} vs {ks}");
        }
    }

    #[test]
    fn kernel_integral_zero_function() {
        let op = exp_op();
        let zero = TestFunction::Constant { c: 0.0 };
        let v = theorem1_kernel_integral(&op, 0.5, 0.5, &zero, 1.0, 1e-8).unwrap();
        assert_eq!(v, cplx(0.0, 0.0));
    }

    #[test]
    fn condition_checks() {
        let op = exp_op();
        assert!(theorem1_kernel(&op, -1.5, 0.5, 1.0, 0.5).is_err());
        assert!(theorem1_kernel(&op, 0.5, 0.5, 0.5, 0.7).is_err());
        assert!(theorem2_kernel(&op, 0.5, -0.1, 1.0, 0.5).is_err());
    }

    #[test]
    fn first_direction_gamma_one_near_one_argument() {
        // γ = 1 sends the near-diagonal ₂F₁ through the raised-parameter
        // path; spot-check the kernel stays consistent with the direct
        // t-integral there
        let (mu, gamma_, x, u) = (0.5, 1.0, 1.0, 0.02);
        let op = exp_op();
        let k = theorem1_kernel(&op, gamma_, mu, x, u).unwrap();
        // brute force: K = u^γ/Γ(μ) ∫ᵤˣ (t-u)^{μ-1}(x-t)^{β-1}e^{-(x-t)}(t)^{-μ-γ} dt
        let w = SingularWeight::new(mu - 1.0, 0.0).unwrap();
        let smooth = |t: f64| cplx(t.powf(-mu - gamma_) * (-(x - t)).exp(), 0.0);
        let direct = integrate_singular(&smooth, u, x, w, 1e-12).unwrap()
            * u.powf(gamma_)
            / gamma(cplx(mu, 0.0)).unwrap();
        assert!(rel_err(k, direct) < 1e-7, "{k} vs {direct}");
    }
}
