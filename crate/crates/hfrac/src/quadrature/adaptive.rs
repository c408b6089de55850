//! Adaptive Gauss-Kronrod (G7, K15) bisection for smooth integrands.

use super::QuadError;
use crate::Complex;

// K15 abscissae (non-negative half, ordered from the center out) and
// weights; the G7 subset consists of the even-indexed nodes.
const XK: [f64; 8] = [
    0.000000000000000000,
    0.207784955007898468,
    0.405845151377397167,
    0.586087235467691130,
    0.741531185599394440,
    0.864864423359769073,
    0.949107912342758525,
    0.991455371120812639,
];
const WK: [f64; 8] = [
    0.209482141084727828,
    0.204432940075298892,
    0.190350578064785410,
    0.169004726639267903,
    0.140653259715525919,
    0.104790010322250184,
    0.063092092629978553,
    0.022935322010529225,
];
const WG: [f64; 4] = [
    0.417959183673469388,
    0.381830050505118945,
    0.279705391489276668,
    0.129484966168869693,
];

fn gk15(f: &dyn Fn(f64) -> Complex, a: f64, b: f64) -> Result<(Complex, f64), QuadError> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut kron = Complex::new(0.0, 0.0);
    let mut gauss = Complex::new(0.0, 0.0);
    for (i, (&x, &wk)) in XK.iter().zip(WK.iter()).enumerate() {
        let (fp, fm) = if i == 0 {
            let v = f(c);
            (v, Complex::new(0.0, 0.0))
        } else {
            (f(c + h * x), f(c - h * x))
        };
        if !fp.is_finite() || !fm.is_finite() {
            return Err(QuadError::NonFiniteSample(c + h * x));
        }
        kron += wk * (fp + fm);
        if i == 0 {
            gauss += WG[0] * fp;
        } else if i % 2 == 0 {
            gauss += WG[i / 2] * (fp + fm);
        }
    }
    kron *= h;
    gauss *= h;
    Ok((kron, (kron - gauss).norm()))
}

/// Integrate a smooth complex-valued function over [a, b] to absolute
/// tolerance `tol` by adaptive bisection. Errors if the subdivision cap is
/// reached before the error estimate drops below `tol`.
pub fn integrate_adaptive(
    f: &dyn Fn(f64) -> Complex,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<Complex, QuadError> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(QuadError::Invalid(format!("bad interval [{a}, {b}]")));
    }
    if !(tol > 0.0) {
        return Err(QuadError::Invalid(format!("bad tolerance {tol}")));
    }
    // Worst-first refinement over a small priority list.
    struct Piece {
        a: f64,
        b: f64,
        val: Complex,
        err: f64,
    }
    let (val, err) = gk15(f, a, b)?;
    let mut pieces = vec![Piece { a, b, val, err }];
    const MAX_PIECES: usize = 4096;
    loop {
        let total_err: f64 = pieces.iter().map(|p| p.err).sum();
        if total_err <= tol {
            return Ok(pieces.iter().map(|p| p.val).sum());
        }
        if pieces.len() >= MAX_PIECES {
            return Err(QuadError::NoConvergence { tol, err: total_err });
        }
        let worst = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap();
        let Piece { a, b, .. } = pieces.swap_remove(worst);
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            return Err(QuadError::NoConvergence { tol, err: total_err });
        }
        let (v1, e1) = gk15(f, a, mid)?;
        let (v2, e2) = gk15(f, mid, b)?;
        pieces.push(Piece { a, b: mid, val: v1, err: e1 });
        pieces.push(Piece { a: mid, b, val: v2, err: e2 });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cplx;

    #[test]
    fn polynomial_and_exponential() {
        let v = integrate_adaptive(&|t| cplx(t, 0.0), 0.0, 1.0, 1e-12).unwrap();
        assert!((v.re - 0.5).abs() < 1e-12);
        let v = integrate_adaptive(&|t| cplx(t.exp(), 0.0), 0.0, 1.0, 1e-12).unwrap();
        assert!((v.re - (std::f64::consts::E - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn sine_over_half_period() {
        let v = integrate_adaptive(&|t| cplx(t.sin(), 0.0), 0.0, std::f64::consts::PI, 1e-13)
            .unwrap();
        assert!((v.re - 2.0).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn complex_linearity() {
        let f = |t: f64| cplx((3.0 * t).cos(), t * t);
        let c = cplx(0.3, -1.7);
        let base = integrate_adaptive(&f, 0.0, 2.0, 1e-12).unwrap();
        let scaled = integrate_adaptive(&|t| c * f(t), 0.0, 2.0, 1e-12).unwrap();
        assert!((scaled - c * base).norm() < 1e-10);
    }

    #[test]
    fn rejects_bad_interval() {
        assert!(integrate_adaptive(&|_| cplx(1.0, 0.0), 1.0, 0.0, 1e-8).is_err());
    }
}
