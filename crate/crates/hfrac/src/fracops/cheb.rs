//! Chebyshev interpolation-and-differentiation: fractional derivatives are
//! computed by fitting a degree-20 polynomial to the (smooth) fractional
//! integral on a bracketing interval and differentiating the fit, instead
//! of pushing difference quotients through nested quadrature noise.

use super::FracError;
use crate::Complex;

const DEGREE: usize = 20;
const RESIDUAL_BUDGET: f64 = 1e-7;

/// d^order/dt^order of `f` at `center`, from a Chebyshev fit on
/// [center-half, center+half]. Errors when the trailing coefficients say
/// the polynomial has not resolved the function.
pub(crate) fn cheb_derivative(
    f: &dyn Fn(f64) -> Result<Complex, FracError>,
    center: f64,
    half: f64,
    order: usize,
) -> Result<Complex, FracError> {
    let n = DEGREE;
    // Chebyshev-Lobatto samples t_i = center + half·cos(iπ/N)
    let mut samples = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = (std::f64::consts::PI * i as f64 / n as f64).cos();
        samples.push(f(center + half * x)?);
    }
    // coefficients a_k of Σ a_k T_k interpolating the samples
    let mut coeffs = vec![Complex::new(0.0, 0.0); n + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let mut acc = 0.5 * (samples[0] + samples[n] * if k % 2 == 0 { 1.0 } else { -1.0 });
        for (i, s) in samples.iter().enumerate().skip(1).take(n - 1) {
            acc += s * (std::f64::consts::PI * (k * i) as f64 / n as f64).cos();
        }
        *c = acc * 2.0 / n as f64;
    }
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;

    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    if scale > 1e-280 {
        let resid = coeffs[n - 2..].iter().map(|c| c.norm()).fold(0.0, f64::max) / scale;
        if resid > RESIDUAL_BUDGET {
            return Err(FracError::InterpolationResidual { resid });
        }
    }

    for _ in 0..order {
        coeffs = differentiate(&coeffs, half);
    }
    Ok(clenshaw(&coeffs, 0.0))
}

/// Chebyshev coefficients of p' given those of p (on [-1,1], then scaled by
/// the interval half-width).
fn differentiate(a: &[Complex], half: f64) -> Vec<Complex> {
    let n = a.len() - 1;
    if n == 0 {
        return vec![Complex::new(0.0, 0.0)];
    }
    let mut b = vec![Complex::new(0.0, 0.0); n];
    // b_{k-1} = b_{k+1} + 2k a_k, downward
    for k in (1..=n).rev() {
        let up = if k + 1 < n { b[k + 1] } else { Complex::new(0.0, 0.0) };
        b[k - 1] = up + 2.0 * k as f64 * a[k];
    }
    b[0] *= 0.5;
    for c in &mut b {
        *c /= half;
    }
    b
}

fn clenshaw(a: &[Complex], x: f64) -> Complex {
    let mut b1 = Complex::new(0.0, 0.0);
    let mut b2 = Complex::new(0.0, 0.0);
    for &c in a.iter().skip(1).rev() {
        let tmp = b1;
        b1 = 2.0 * x * b1 - b2 + c;
        b2 = tmp;
    }
    a[0] + x * b1 - b2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx;

    #[test]
    fn differentiates_analytic_functions() {
        let f = |t: f64| Ok(cplx((2.0 * t).sin(), (0.5 * t).exp()));
        let d1 = cheb_derivative(&f, 1.0, 0.4, 1).unwrap();
        assert!((d1.re - 2.0 * (2.0f64).cos()).abs() < 1e-11, "{d1}");
        assert!((d1.im - 0.5 * (0.5f64).exp()).abs() < 1e-11);
        let d2 = cheb_derivative(&f, 1.0, 0.4, 2).unwrap();
        assert!((d2.re + 4.0 * (2.0f64).sin()).abs() < 1e-9, "{d2}");
    }

    #[test]
    fn flags_unresolvable_functions() {
        // |t| has a kink inside the bracket: trailing coefficients stay fat
        let f = |t: f64| Ok(cplx(t.abs(), 0.0));
        let r = cheb_derivative(&f, 0.0, 0.5, 1);
        assert!(matches!(r, Err(FracError::InterpolationResidual { .. })));
    }

    #[test]
    fn zero_function_is_fine() {
        let f = |_t: f64| Ok(cplx(0.0, 0.0));
        let d = cheb_derivative(&f, 1.0, 0.3, 1).unwrap();
        assert_eq!(d, cplx(0.0, 0.0));
    }
}
