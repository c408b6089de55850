//! Two-parameter Mittag-Leffler function by its defining series.

use super::gamma::ln_gamma;
use super::{is_nonpositive_integer, SpecFunError};
use crate::{cplx, Complex};

const MAX_TERMS: usize = 10_000;
/// Series-stable argument range; larger |z| needs asymptotic machinery that
/// is deliberately out of scope here.
const MAX_ABS_Z: f64 = 5.0;

/// E_{α,β}(z) = Σ_{k>=0} z^k / Γ(αk + β), for alpha > 0 and |z| <= 5.
pub fn mittag_leffler(alpha: f64, beta: f64, z: Complex) -> Result<Complex, SpecFunError> {
    if !(alpha > 0.0) || !alpha.is_finite() || !beta.is_finite() {
        return Err(SpecFunError::Domain(format!(
            "mittag_leffler requires alpha > 0, got alpha = {alpha}"
        )));
    }
    if z.norm() > MAX_ABS_Z {
        return Err(SpecFunError::Domain(format!(
            "|z| = {:.3} exceeds the series-stable range (<= {MAX_ABS_Z})",
            z.norm()
        )));
    }
    let mut sum = cplx(0.0, 0.0);
    let mut zk = cplx(1.0, 0.0);
    let mut small = 0;
    for k in 0..MAX_TERMS {
        let term = zk * recip_gamma_real(alpha * k as f64 + beta);
        sum += term;
        if term.norm() <= 1e-15 * sum.norm().max(1e-30) && k as f64 * alpha + beta > 1.0 {
            small += 1;
            if small >= 3 {
                return Ok(sum);
            }
        } else {
            small = 0;
        }
        zk *= z;
    }
    Err(SpecFunError::NoConvergence { terms: MAX_TERMS })
}

/// 1/Γ(x) on the real axis, zero at the poles of Γ.
fn recip_gamma_real(x: f64) -> Complex {
    let z = cplx(x, 0.0);
    if is_nonpositive_integer(z, 1e-12) {
        return cplx(0.0, 0.0);
    }
    (-ln_gamma(z).expect("pole excluded above")).exp()
}
