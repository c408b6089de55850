//! Riemann-Liouville integral/derivative, Hilfer derivative, and the
//! power-weighted integral I^{γ,μ}.

use super::cheb::cheb_derivative;
use super::{ErrorTrap, FracError, Integrand, TestFunction};
use crate::quadrature::{integrate_singular, integrate_singular_nodes, SingularWeight, TOL_OPERATOR};
use crate::specfun::ln_gamma;
use crate::{cplx, Complex};

fn check_base(f: &TestFunction) -> Result<(), FracError> {
    f.validate().map_err(FracError::Precondition)
}

/// (I^μ_{a+} f)(x) = (1/Γ(μ)) ∫ₐˣ (x-t)^{μ-1} f(t) dt, Re(μ) > 0.
pub fn rl_integral(f: &TestFunction, a: f64, mu: Complex, x: f64) -> Result<Complex, FracError> {
    check_base(f)?;
    rl_integral_g(&Integrand::from_test_function(f, a), mu, x, TOL_OPERATOR)
}

pub fn rl_integral_g(g: &Integrand, mu: Complex, x: f64, tol: f64) -> Result<Complex, FracError> {
    let a = g.base_point();
    if !(mu.re > 0.0) {
        return Err(FracError::Precondition(format!("integral order needs Re(mu) > 0, got {mu}")));
    }
    if x < a {
        return Err(FracError::Precondition(format!("x = {x} below base point {a}")));
    }
    if x == a {
        return Ok(cplx(0.0, 0.0));
    }
    let weight = SingularWeight::new(g.left_exponent(), mu.re - 1.0).map_err(FracError::from)?;
    let trap = ErrorTrap::new();
    let osc = mu.im != 0.0;
    let smooth = |t: f64, _dl: f64, dr: f64| -> Complex {
        let mut v = trap.capture(g.smooth_at(t));
        if osc {
            // fold the oscillatory part of (x-t)^{μ-1}
            v *= cplx(0.0, mu.im * dr.ln()).exp();
        }
        v
    };
    let integral = trap.resolve(integrate_singular_nodes(&smooth, a, x, weight, tol, 6.7))?;
    Ok(integral * (-ln_gamma(mu)?).exp())
}

/// (D^μ_{a+} f)(x) = (d/dx)^n (I^{n-μ}_{a+} f)(x), n = ⌊Re μ⌋ + 1.
///
/// The fractional integral is interpolated by a Chebyshev polynomial on a
/// bracketing interval and the fit is differentiated.
pub fn rl_derivative(f: &TestFunction, a: f64, mu: Complex, x: f64) -> Result<Complex, FracError> {
    check_base(f)?;
    rl_derivative_g(&Integrand::from_test_function(f, a), mu, x)
}

pub fn rl_derivative_g(g: &Integrand, mu: Complex, x: f64) -> Result<Complex, FracError> {
    let a = g.base_point();
    if !(mu.re > 0.0) {
        return Err(FracError::Precondition(format!(
            "derivative order needs Re(mu) > 0, got {mu}"
        )));
    }
    if x <= a {
        return Err(FracError::Precondition(format!(
            "derivative needs x > base point, got x = {x}, a = {a}"
        )));
    }
    let n = mu.re.floor() as usize + 1;
    let sigma = cplx(n as f64, 0.0) - mu;
    let inner = |t: f64| rl_integral_g(g, sigma, t, 1e-12);
    let half = bracket_half_width(x - a);
    cheb_derivative(&inner, x, half, n)
}

fn bracket_half_width(dist: f64) -> f64 {
    (0.35 * dist).min(0.6)
}

/// Hilfer derivative of order 0 < μ < 1 and type 0 <= ν <= 1:
/// I^{ν(1-μ)} d/dx I^{(1-ν)(1-μ)} f. At ν = 0 the evaluation path is the
/// same interpolate-then-differentiate scheme as [`rl_derivative`].
pub fn hilfer_derivative(
    f: &TestFunction,
    a: f64,
    mu: f64,
    nu: f64,
    x: f64,
) -> Result<Complex, FracError> {
    check_base(f)?;
    hilfer_derivative_g(&Integrand::from_test_function(f, a), mu, nu, x)
}

pub fn hilfer_derivative_g(g: &Integrand, mu: f64, nu: f64, x: f64) -> Result<Complex, FracError> {
    let a = g.base_point();
    if !(mu > 0.0 && mu < 1.0) {
        return Err(FracError::Precondition(format!("Hilfer order needs 0 < mu < 1, got {mu}")));
    }
    if !(0.0..=1.0).contains(&nu) {
        return Err(FracError::Precondition(format!("Hilfer type needs 0 <= nu <= 1, got {nu}")));
    }
    if x <= a {
        return Err(FracError::Precondition(format!(
            "derivative needs x > base point, got x = {x}, a = {a}"
        )));
    }
    let sigma1 = (1.0 - nu) * (1.0 - mu);
    let sigma2 = nu * (1.0 - mu);
    let lam = g.left_exponent();
    if lam + sigma1 <= 0.0 && lam < 0.0 {
        return Err(FracError::Precondition(format!(
            "inner derivative of order profile (lambda={lam}, sigma1={sigma1}) is not integrable"
        )));
    }
    // d(t) = d/dt (I^{σ1} g)(t), with I^0 the identity
    let deriv_at = |t: f64| -> Result<Complex, FracError> {
        let inner = |u: f64| -> Result<Complex, FracError> {
            if sigma1 == 0.0 {
                g.eval(u)
            } else {
                rl_integral_g(g, cplx(sigma1, 0.0), u, 1e-12)
            }
        };
        cheb_derivative(&inner, t, bracket_half_width(t - a), 1)
    };
    if sigma2 == 0.0 {
        return deriv_at(x);
    }
    // differentiation lowers the leading exponent by one, except when it
    // annihilates the leading term outright (λ + σ1 = 0, e.g. constants
    // at type ν = 1), where the next term is at worst O(1)
    let e_out = if (lam + sigma1).abs() < 1e-12 { 0.0 } else { lam + sigma1 - 1.0 };
    let outer = Integrand::new(a, e_out, deriv_at);
    rl_integral_g(&outer, cplx(sigma2, 0.0), x, TOL_OPERATOR)
}

/// Caputo-style reference value I^{1-μ}(f')(x), built from the analytic
/// derivative of the corpus function. Independent of the Hilfer path, so it
/// serves as its ν = 1 oracle.
pub fn caputo_reference(f: &TestFunction, a: f64, mu: f64, x: f64) -> Result<Complex, FracError> {
    check_base(f)?;
    let mut acc = cplx(0.0, 0.0);
    for (coef, part) in f.derivative_parts() {
        acc += coef * rl_integral(&part, a, cplx(1.0 - mu, 0.0), x)?;
    }
    Ok(acc)
}

/// (I^{γ,μ}_{a+} f)(x) = ((x-a)^{-μ-γ}/Γ(μ)) ∫ₐˣ t^γ (x-t)^{μ-1} f(t) dt,
/// γ > -1, μ > 0. With a = 0 the t^γ factor joins the singular weight.
pub fn ik_integral(
    f: &TestFunction,
    a: f64,
    gamma: f64,
    mu: f64,
    x: f64,
) -> Result<Complex, FracError> {
    check_base(f)?;
    ik_integral_g(&Integrand::from_test_function(f, a), gamma, mu, x, TOL_OPERATOR)
}

pub fn ik_integral_g(
    g: &Integrand,
    gamma: f64,
    mu: f64,
    x: f64,
    tol: f64,
) -> Result<Complex, FracError> {
    let a = g.base_point();
    if !(gamma > -1.0) || !(mu > 0.0) {
        return Err(FracError::Precondition(format!(
            "I^(gamma,mu) needs gamma > -1 and mu > 0, got gamma = {gamma}, mu = {mu}"
        )));
    }
    if a < 0.0 {
        return Err(FracError::Precondition(format!(
            "the t^gamma weight needs a nonnegative base point, got a = {a}"
        )));
    }
    if x < a {
        return Err(FracError::Precondition(format!("x = {x} below base point {a}")));
    }
    if x == a {
        return Ok(cplx(0.0, 0.0));
    }
    if x - a < 1e-30 {
        // leading order (t-a)^{λ+γ_fold}: the (x-a)^{-μ-γ} prefactor would
        // overflow against an underflowing integral; nested quadratures
        // only reach here at nodes whose weight kills the contribution
        let lam = g.left_exponent();
        let (gamma_fold, tpow) = if a == 0.0 { (gamma, 1.0) } else { (0.0, a.powf(gamma)) };
        let head = g.smooth_at(x)?;
        let b = crate::specfun::beta(cplx(gamma_fold + lam + 1.0, 0.0), cplx(mu, 0.0))?;
        let pre = (x - a).powf(if a == 0.0 { lam } else { lam - gamma });
        return Ok(head * b * tpow * pre * (-ln_gamma(cplx(mu, 0.0))?).exp());
    }
    let trap = ErrorTrap::new();
    let integral = if a == 0.0 {
        let weight = SingularWeight::new(g.left_exponent() + gamma, mu - 1.0)?;
        let smooth = |t: f64| trap.capture(g.smooth_at(t));
        trap.resolve(integrate_singular(&smooth, a, x, weight, tol))?
    } else {
        let weight = SingularWeight::new(g.left_exponent(), mu - 1.0)?;
        let smooth = |t: f64| t.powf(gamma) * trap.capture(g.smooth_at(t));
        trap.resolve(integrate_singular(&smooth, a, x, weight, tol))?
    };
    let pre = (x - a).powf(-mu - gamma) * (-ln_gamma(cplx(mu, 0.0))?).exp();
    Ok(pre * integral)
}
