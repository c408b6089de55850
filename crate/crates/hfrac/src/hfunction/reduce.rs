//! Recognition of H-parameter sets that reduce to named special functions.

use super::{HParams, KnownForm::*};

/// Reductions the crate recognizes, with the recovered parameters.
///
/// The value conventions are:
/// * `Exponential`: H(z) = e^{-z},
/// * `MittagLeffler{alpha,beta}`: H(z) = E_{α,β}(-z),
/// * `Lambda{eta,mu,nu}`: H(z) = λ^{(η)}_{μ,ν}(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum KnownForm {
    Exponential,
    MittagLeffler { alpha: f64, beta: f64 },
    Lambda { eta: f64, mu: f64, nu: f64 },
}

const TOL: f64 = 1e-12;

fn close(x: f64, y: f64) -> bool {
    (x - y).abs() <= TOL
}

/// Match `params` against the three stored templates, up to parameter
/// translation. Returns `None` when no template has these orders or the
/// pair lists do not fit.
pub fn reduce_to_known(params: &HParams) -> Option<KnownForm> {
    match params.orders() {
        (1, 0, 0, 1) => {
            let (b, beta) = params.lower()[0];
            (close(b, 0.0) && close(beta, 1.0)).then_some(Exponential)
        }
        (1, 1, 1, 2) => {
            let (a1, al1) = params.upper()[0];
            let (b1, be1) = params.lower()[0];
            let (b2, be2) = params.lower()[1];
            if close(a1, 0.0) && close(al1, 1.0) && close(b1, 0.0) && close(be1, 1.0) {
                Some(MittagLeffler { alpha: be2, beta: 1.0 - b2 })
            } else {
                None
            }
        }
        (2, 0, 1, 2) => {
            let (a1, al1) = params.upper()[0];
            let (b1, be1) = params.lower()[0];
            let (b2, be2) = params.lower()[1];
            if !(close(b1, 0.0) && close(be1, 1.0) && close(al1, be2) && al1 > 0.0) {
                return None;
            }
            let eta = 1.0 / al1;
            let nu = eta * (1.0 - a1) - 1.0;
            let mu = -b2 - nu / eta;
            // only tag when the direct-integral form is valid
            (mu > 1.0 / eta - 1.0).then_some(Lambda { eta, mu, nu })
        }
        _ => None,
    }
}
