//! Top-level H-function evaluation: convergence screening, residue series
//! with contour fallback, and the contour path itself.

use super::series::HEvaluator;
use super::theta::mellin_theta;
use super::{HError, HParams};
use crate::quadrature::{integrate_contour, ContourSpec};
use crate::Complex;

/// Which evaluation route converges for a given (params, z).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convergence {
    /// Ascending series over the poles of the first m lower gammas.
    ResidueSeriesLeft,
    /// Descending series over the poles of the first n upper gammas.
    ResidueSeriesRight,
    /// Neither series converges; only the contour integral applies.
    ContourOnly,
    Divergent,
}

/// Classify from Δ = Σβ - Σα and, on the Δ = 0 boundary, from |z| against
/// ρ = Πα^{-α}Πβ^{β}. Conservative: the |z| = ρ boundary is never reported
/// as series-convergent.
pub fn check_convergence(params: &HParams, z: Complex) -> Convergence {
    if z.norm() == 0.0 {
        return Convergence::Divergent;
    }
    let delta = params.delta();
    if delta > 1e-12 {
        return Convergence::ResidueSeriesLeft;
    }
    if delta < -1e-12 {
        return Convergence::ResidueSeriesRight;
    }
    let gap = z.norm().ln() - params.ln_rho();
    if gap < -1e-12 {
        Convergence::ResidueSeriesLeft
    } else if gap > 1e-12 {
        Convergence::ResidueSeriesRight
    } else {
        Convergence::ContourOnly
    }
}

/// H(z) under the internal convention. The residue series is preferred;
/// when it hits coincident poles the Mellin-Barnes contour takes over
/// (that route does not care about pole multiplicity, only separation of
/// the left and right families).
pub fn eval_h(params: &HParams, z: Complex) -> Result<Complex, HError> {
    if z.norm() == 0.0 {
        return Err(HError::Eval("H-function argument must be nonzero".into()));
    }
    match check_convergence(params, z) {
        Convergence::Divergent => Err(HError::Divergent),
        Convergence::ContourOnly => eval_h_contour(params, z),
        Convergence::ResidueSeriesLeft => {
            let mut ev = HEvaluator::new(params);
            match ev.eval_left(z) {
                Err(HError::PoleCollision(_)) => eval_h_contour(params, z),
                other => other,
            }
        }
        Convergence::ResidueSeriesRight => {
            let mut ev = HEvaluator::new(params);
            match ev.eval_right(z) {
                Err(HError::PoleCollision(_)) => eval_h_contour(params, z),
                other => other,
            }
        }
    }
}

/// H(z) by the Mellin-Barnes integral along a separating vertical line.
pub fn eval_h_contour(params: &HParams, z: Complex) -> Result<Complex, HError> {
    let decay = params.decay_exponent();
    if decay <= 0.0 {
        return Err(HError::Eval(format!(
            "contour integrand does not decay (rate {decay})"
        )));
    }
    // z^{-s} grows like e^{|arg z|·|Im s|} against the θ decay e^{-(π/2)·decay·|Im s|}
    if z.arg().abs() >= std::f64::consts::FRAC_PI_2 * decay - 0.05 {
        return Err(HError::Eval(format!(
            "contour diverges for arg z = {:.3} with decay rate {decay}",
            z.arg()
        )));
    }
    let abscissa = params.separating_abscissa()?;
    let ln_z = z.ln();
    let g = |s: Complex| -> Complex {
        match mellin_theta(params, s) {
            Ok(v) => v * (-s * ln_z).exp(),
            Err(_) => Complex::new(f64::NAN, f64::NAN),
        }
    };
    Ok(integrate_contour(&g, &ContourSpec::standard(abscissa), 1e-13)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{lambda_fn, mittag_leffler, LambdaParams};
    use crate::{cplx, rel_err};

    fn exp_template() -> HParams {
        HParams::new(1, 0, vec![], vec![(0.0, 1.0)]).unwrap()
    }

    fn ml_template(alpha: f64, beta: f64) -> HParams {
        HParams::new(1, 1, vec![(0.0, 1.0)], vec![(0.0, 1.0), (1.0 - beta, alpha)]).unwrap()
    }

    fn lambda_template(eta: f64, mu: f64, nu: f64) -> HParams {
        HParams::new(
            2,
            0,
            vec![(1.0 - (nu + 1.0) / eta, 1.0 / eta)],
            vec![(0.0, 1.0), (-mu - nu / eta, 1.0 / eta)],
        )
        .unwrap()
    }

    #[test]
    fn classification() {
        let p = exp_template();
        assert_eq!(check_convergence(&p, cplx(3.0, 1.0)), Convergence::ResidueSeriesLeft);
        assert_eq!(check_convergence(&p, cplx(0.0, 0.0)), Convergence::Divergent);
        let ml = ml_template(0.5, 1.0);
        assert_eq!(check_convergence(&ml, cplx(4.0, 0.0)), Convergence::ResidueSeriesLeft);
        // balanced orders: p = q, matching slope multisets, boundary |z| = 1
        let bal = HParams::new(
            1,
            1,
            vec![(0.2, 1.0), (0.4, 0.5)],
            vec![(0.1, 0.5), (0.3, 1.0)],
        )
        .unwrap();
        assert_eq!(check_convergence(&bal, cplx(1.0, 0.0)), Convergence::ContourOnly);
        assert_eq!(check_convergence(&bal, cplx(0.5, 0.0)), Convergence::ResidueSeriesLeft);
        assert_eq!(check_convergence(&bal, cplx(2.0, 0.0)), Convergence::ResidueSeriesRight);
    }

    #[test]
    fn exponential_value() {
        let v = eval_h(&exp_template(), cplx(1.0, 0.0)).unwrap();
        assert!(rel_err(v, cplx((-1.0f64).exp(), 0.0)) < 1e-12, "{v}");
    }

    #[test]
    fn mittag_leffler_reduction() {
        // E_{1/2,1}(z) = H[-z]: sweep on the negative real axis where both
        // routes are rock solid
        let p = ml_template(0.5, 1.0);
        for zr in [0.3, 1.0, 2.2, 3.0] {
            let series = mittag_leffler(0.5, 1.0, cplx(-zr, 0.0)).unwrap();
            let h = eval_h(&p, cplx(zr, 0.0)).unwrap();
            assert!(rel_err(h, series) < 1e-7, "z = -{zr}: {h} vs {series}");
        }
    }

    #[test]
    fn lambda_reduction_including_collision_fallback() {
        // generic parameters: residue series path
        let (eta, mu, nu) = (2.0, 0.75, 0.3);
        let p = lambda_template(eta, mu, nu);
        for zr in [0.8, 1.5, 3.0] {
            let z = cplx(zr, 0.0);
            let direct = lambda_fn(&LambdaParams::new(eta, mu, nu, z).unwrap()).unwrap();
            let h = eval_h(&p, z).unwrap();
            assert!(rel_err(h, direct) < 1e-6, "λ at {zr}: {h} vs {direct}");
        }
        // degenerate parameters: coincident poles force the contour route
        let (eta, mu, nu) = (2.0, 1.0, 0.0);
        let p = lambda_template(eta, mu, nu);
        let z = cplx(1.0, 0.0);
        let direct = lambda_fn(&LambdaParams::new(eta, mu, nu, z).unwrap()).unwrap();
        let h = eval_h(&p, z).unwrap();
        assert!(rel_err(h, direct) < 1e-6, "degenerate λ: {h} vs {direct}");
    }

    #[test]
    fn contour_agrees_with_residue_series_per_template() {
        // convention self-consistency on a 5-point grid per family
        let cases: Vec<HParams> = vec![
            exp_template(),
            ml_template(0.5, 1.0),
            lambda_template(2.0, 0.75, 0.3),
        ];
        for p in &cases {
            for zr in [0.4, 0.8, 1.3, 2.0, 3.1] {
                let z = cplx(zr, 0.0);
                let series = eval_h(p, z).unwrap();
                let contour = eval_h_contour(p, z).unwrap();
                assert!(
                    (series - contour).norm() <= 1e-7 * series.norm().max(1.0),
                    "orders {:?} at z={zr}: {series} vs {contour}",
                    p.orders()
                );
            }
        }
    }
}
