//! The gamma-product Mellin integrand θ(s) and its factor bookkeeping.

use super::{HError, HParams};
use crate::specfun::{is_nonpositive_integer, ln_gamma};
use crate::{cplx, Complex};

/// A gamma-factor argument of the affine form c0 + c1·s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct AffineArg {
    pub c0: f64,
    pub c1: f64,
}

impl AffineArg {
    pub fn at(&self, s: Complex) -> Complex {
        self.c0 + self.c1 * s
    }
}

/// Which product a surviving numerator factor came from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum NumOrigin {
    /// Γ(b_j + β_j s), j <= m: poles march left, ascending series.
    LowerM,
    /// Γ(1 - a_j - α_j s), j <= n: poles march right, descending series.
    UpperN,
}

/// Numerator and denominator factor lists with exactly matching pairs
/// cancelled. Cancellation matters because the composition shift maps can
/// insert a numerator/denominator pair with identical affine arguments
/// (order bookkeeping keeps both), and evaluating Γ/Γ at a shared pole
/// would otherwise produce NaN.
pub(crate) fn factor_lists(params: &HParams) -> (Vec<(AffineArg, NumOrigin)>, Vec<AffineArg>) {
    let mut num: Vec<(AffineArg, NumOrigin)> = Vec::new();
    let mut den: Vec<AffineArg> = Vec::new();
    for (j, &(b, beta)) in params.lower().iter().enumerate() {
        if j < params.m() {
            num.push((AffineArg { c0: b, c1: beta }, NumOrigin::LowerM));
        } else {
            den.push(AffineArg { c0: 1.0 - b, c1: -beta });
        }
    }
    for (j, &(a, alpha)) in params.upper().iter().enumerate() {
        if j < params.n() {
            num.push((AffineArg { c0: 1.0 - a, c1: -alpha }, NumOrigin::UpperN));
        } else {
            den.push(AffineArg { c0: a, c1: alpha });
        }
    }
    // cancel identical pairs
    let mut keep_num = Vec::new();
    let mut used = vec![false; den.len()];
    'outer: for (arg, origin) in num {
        for (i, d) in den.iter().enumerate() {
            if !used[i] && (arg.c0 - d.c0).abs() <= 1e-12 && (arg.c1 - d.c1).abs() <= 1e-12 {
                used[i] = true;
                continue 'outer;
            }
        }
        keep_num.push((arg, origin));
    }
    let keep_den: Vec<AffineArg> =
        den.into_iter().zip(used).filter_map(|(d, u)| (!u).then_some(d)).collect();
    (keep_num, keep_den)
}

/// θ(s) under the internal convention H(z) = (1/2πi)∫ θ(s) z^{-s} ds.
///
/// A pole among the numerator gammas is an error; a pole among the
/// denominator gammas makes θ vanish.
pub fn mellin_theta(params: &HParams, s: Complex) -> Result<Complex, HError> {
    MellinTheta::new(params).eval(s)
}

/// The gamma-product Mellin integrand of an H-function, with its pole
/// bookkeeping: the numerator factors from the first m lower pairs spawn
/// the left (ascending) pole families, those from the first n upper pairs
/// the right (descending) ones, and every bounded region contains finitely
/// many of either.
#[derive(Debug, Clone)]
pub struct MellinTheta {
    num: Vec<(AffineArg, NumOrigin)>,
    den: Vec<AffineArg>,
}

impl MellinTheta {
    pub fn new(params: &HParams) -> Self {
        let (num, den) = factor_lists(params);
        Self { num, den }
    }

    pub fn eval(&self, s: Complex) -> Result<Complex, HError> {
        let mut lg = cplx(0.0, 0.0);
        for d in &self.den {
            if is_nonpositive_integer(d.at(s), 1e-13) {
                return Ok(cplx(0.0, 0.0));
            }
        }
        for (a, _) in &self.num {
            let arg = a.at(s);
            if is_nonpositive_integer(arg, 1e-13) {
                return Err(HError::ThetaPole(s));
            }
            lg += ln_gamma(arg)?;
        }
        for d in &self.den {
            lg -= ln_gamma(d.at(s))?;
        }
        if lg.re > 700.0 {
            return Err(HError::Eval(format!("theta overflows at s = {s}")));
        }
        Ok(lg.exp())
    }

    /// Poles of the left families inside [lo, hi] (all real), sorted
    /// ascending. Surviving factors only: a factor cancelled against an
    /// identical denominator factor contributes no poles.
    pub fn left_poles_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.poles_in(NumOrigin::LowerM, lo, hi)
    }

    /// Poles of the right families inside [lo, hi], sorted ascending.
    pub fn right_poles_in(&self, lo: f64, hi: f64) -> Vec<f64> {
        self.poles_in(NumOrigin::UpperN, lo, hi)
    }

    fn poles_in(&self, origin: NumOrigin, lo: f64, hi: f64) -> Vec<f64> {
        let mut poles = Vec::new();
        for (arg, o) in &self.num {
            if *o != origin {
                continue;
            }
            // Γ(c0 + c1 s) has poles at s = -(c0 + k)/c1, k = 0, 1, 2, …
            for k in 0.. {
                let s = -(arg.c0 + k as f64) / arg.c1;
                let past = if arg.c1 > 0.0 { s < lo } else { s > hi };
                if past {
                    break;
                }
                if (lo..=hi).contains(&s) {
                    poles.push(s);
                }
            }
        }
        poles.sort_by(f64::total_cmp);
        poles
    }
}
