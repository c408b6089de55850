//! Tanh-sinh (double-exponential) quadrature with explicit endpoint power
//! weights.
//!
//! The integral computed is ∫ₐᵇ (t-a)^p (b-t)^q f(t) dt with smooth f. The
//! substitution x = tanh(π/2·sinh(u)) clusters nodes doubly-exponentially at
//! the endpoints; the weight factors (t-a)^p and (b-t)^q are evaluated from
//! the stable complementary forms 1∓tanh(y) = 2/(1+e^{±2y}), so no
//! cancellation occurs even at nodes within 1e-300 of an endpoint.

use super::{QuadError, SingularWeight};
use crate::Complex;
use std::f64::consts::FRAC_PI_2;

const MAX_LEVEL: usize = 12;

/// ∫ₐᵇ (t-a)^p (b-t)^q f(t) dt for smooth `f`, to absolute tolerance `tol`.
pub fn integrate_singular(
    f: &dyn Fn(f64) -> Complex,
    a: f64,
    b: f64,
    weight: SingularWeight,
    tol: f64,
) -> Result<Complex, QuadError> {
    integrate_singular_nodes(&|t, _, _| f(t), a, b, weight, tol, 6.7)
}

/// Variant passing each node as (t, t-a, b-t) with the endpoint distances
/// computed in cancellation-free form: nodes fall doubly-exponentially close
/// to the endpoints, far below where `t - a` or `b - t` survive rounding, so
/// integrands that need the distance (convolution kernels) must take it from
/// here. `sinh_cap` bounds how deep the nodes go; integrands that are
/// themselves expensive integrals use a smaller cap, chosen so the truncated
/// tail δ^(1+min(p,q)) stays below the tolerance.
pub(crate) fn integrate_singular_nodes(
    f: &dyn Fn(f64, f64, f64) -> Complex,
    a: f64,
    b: f64,
    weight: SingularWeight,
    tol: f64,
    sinh_cap: f64,
) -> Result<Complex, QuadError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::Invalid(format!("bad interval [{a}, {b}]")));
    }
    let w = SingularWeight::new(weight.left_exponent, weight.right_exponent)?;
    let (p, q) = (w.left_exponent, w.right_exponent);
    let len = b - a;
    // ((b-a)/2)^{p+q+1} ∫_{-1}^{1} (1+x)^p (1-x)^q f(t(x)) dx
    let scale = (0.5 * len).powf(p + q + 1.0);

    // One term of the transformed integrand at parameter u (node position
    // measured in sinh-argument space).
    let term = |u: f64| -> Result<Complex, QuadError> {
        let y = FRAC_PI_2 * u.sinh();
        // 1+x = 2/(1+e^{-2y}), 1-x = 2/(1+e^{2y}), both in (0, 2)
        let one_plus = 2.0 / (1.0 + (-2.0 * y).exp());
        let one_minus = 2.0 / (1.0 + (2.0 * y).exp());
        // nodes whose endpoint distance underflows contribute nothing but
        // would hand the integrand an exact endpoint; drop them
        if one_plus < 1e-305 || one_minus < 1e-305 {
            return Ok(Complex::new(0.0, 0.0));
        }
        let dxdu = FRAC_PI_2 * u.cosh() / (y.cosh() * y.cosh());
        let wfac = half_pow(one_plus, p) * half_pow(one_minus, q) * dxdu;
        if wfac == 0.0 || !wfac.is_finite() {
            return Ok(Complex::new(0.0, 0.0));
        }
        // anchor t at the nearest endpoint to keep (t-a), (b-t) exact
        let from_left = 0.5 * len * one_plus;
        let from_right = 0.5 * len * one_minus;
        // nodes closer than ~1e-290 to an endpoint would hand nested
        // integrals sub-subnormal interval arithmetic; their contribution
        // is below any representable weight for exponents > -0.95
        if from_left < 1e-290 || from_right < 1e-290 {
            return Ok(Complex::new(0.0, 0.0));
        }
        let t = if y >= 0.0 { b - from_right } else { a + from_left };
        let v = f(t, from_left, from_right);
        if !v.is_finite() {
            return Err(QuadError::NonFiniteSample(t));
        }
        Ok(wfac * v)
    };

    let mut h = 1.0;
    let mut sum = term(0.0)?;
    // level 0: integer nodes
    let mut j = 1;
    while (j as f64) * h <= sinh_cap {
        let u = j as f64 * h;
        sum += term(u)? + term(-u)?;
        j += 1;
    }
    let mut prev = sum * h;

    for level in 1..=MAX_LEVEL {
        h *= 0.5;
        let mut new = Complex::new(0.0, 0.0);
        let mut j = 1;
        while (j as f64) * h <= sinh_cap {
            let u = j as f64 * h;
            new += term(u)? + term(-u)?;
            j += 2; // only the odd multiples are new at this level
        }
        sum += new;
        let estimate = sum * h;
        let abs_diff = (estimate - prev).norm() * scale.abs();
        let floor = 1e-15 * scale.abs() * estimate.norm();
        if level >= 3 && abs_diff <= tol.max(floor) {
            return Ok(scale * estimate);
        }
        prev = estimate;
    }
    // Accept if the last two levels agree to within a small safety factor,
    // otherwise report the failure.
    let diff = (sum * h - prev).norm() * scale.abs();
    if diff <= 10.0 * tol {
        return Ok(scale * (sum * h));
    }
    Err(QuadError::NoConvergence { tol, err: diff })
}

/// x^e with the convention that e = 0 gives exactly 1 (x is always > 0).
fn half_pow(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}
