//! Parameter model for H^{m,n}_{p,q} with validation.

use super::HError;
use serde::{Deserialize, Serialize};

/// Order quadruple (m, n, p, q) and the parameter pair lists of an
/// H-function; p and q are implied by the list lengths.
///
/// JSON shape: `{"m":…,"n":…,"upper":[[a,alpha],…],"lower":[[b,beta],…]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "HParamsRaw")]
pub struct HParams {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

#[derive(Deserialize)]
struct HParamsRaw {
    m: usize,
    n: usize,
    upper: Vec<(f64, f64)>,
    lower: Vec<(f64, f64)>,
}

impl TryFrom<HParamsRaw> for HParams {
    type Error = HError;
    fn try_from(raw: HParamsRaw) -> Result<Self, HError> {
        HParams::new(raw.m, raw.n, raw.upper, raw.lower)
    }
}

impl HParams {
    pub fn new(
        m: usize,
        n: usize,
        upper: Vec<(f64, f64)>,
        lower: Vec<(f64, f64)>,
    ) -> Result<Self, HError> {
        let p = upper.len();
        let q = lower.len();
        if m < 1 || m > q {
            return Err(HError::InvalidParams(format!("need 1 <= m <= q, got m={m}, q={q}")));
        }
        if n > p {
            return Err(HError::InvalidParams(format!("need n <= p, got n={n}, p={p}")));
        }
        for &(a, alpha) in &upper {
            if !(alpha > 0.0) || !a.is_finite() || !alpha.is_finite() {
                return Err(HError::InvalidParams(format!(
                    "upper pair ({a}, {alpha}) needs finite a and alpha > 0"
                )));
            }
        }
        for &(b, beta) in &lower {
            if !(beta > 0.0) || !b.is_finite() || !beta.is_finite() {
                return Err(HError::InvalidParams(format!(
                    "lower pair ({b}, {beta}) needs finite b and beta > 0"
                )));
            }
        }
        Ok(Self { m, n, upper, lower })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    pub fn upper(&self) -> &[(f64, f64)] {
        &self.upper
    }
    pub fn lower(&self) -> &[(f64, f64)] {
        &self.lower
    }

    pub fn orders(&self) -> (usize, usize, usize, usize) {
        (self.m, self.n, self.p(), self.q())
    }

    /// Δ = Σ β_j − Σ α_j; positive means the ascending residue series
    /// converges for every z ≠ 0.
    pub fn delta(&self) -> f64 {
        let sb: f64 = self.lower.iter().map(|&(_, b)| b).sum();
        let sa: f64 = self.upper.iter().map(|&(_, a)| a).sum();
        sb - sa
    }

    /// ln of the radius ρ = Π α_j^{-α_j} Π β_j^{β_j} separating the two
    /// series regimes when Δ = 0.
    pub fn ln_rho(&self) -> f64 {
        let sb: f64 = self.lower.iter().map(|&(_, b)| b * b.ln()).sum();
        let sa: f64 = self.upper.iter().map(|&(_, a)| a * a.ln()).sum();
        sb - sa
    }

    /// Exponential decay rate of θ along vertical lines, in units of π/2;
    /// must be positive for the contour path to converge.
    pub fn decay_exponent(&self) -> f64 {
        let mut d = 0.0;
        for (j, &(_, beta)) in self.lower.iter().enumerate() {
            d += if j < self.m { beta } else { -beta };
        }
        for (j, &(_, alpha)) in self.upper.iter().enumerate() {
            d += if j < self.n { alpha } else { -alpha };
        }
        d
    }

    /// min_{j<=m} b_j/β_j, controlling the z → 0 power H(z) ~ z^{e_min}.
    pub fn min_lower_ratio(&self) -> f64 {
        self.lower[..self.m]
            .iter()
            .map(|&(b, beta)| b / beta)
            .fold(f64::INFINITY, f64::min)
    }

    /// Rightmost pole of the left (ascending) families.
    pub fn max_left_pole(&self) -> f64 {
        -self.min_lower_ratio()
    }

    /// Leftmost pole of the right (descending) families, if any.
    pub fn min_right_pole(&self) -> Option<f64> {
        self.upper[..self.n]
            .iter()
            .map(|&(a, alpha)| (1.0 - a) / alpha)
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))))
    }

    /// A vertical line separating the two pole families.
    pub fn separating_abscissa(&self) -> Result<f64, HError> {
        let left = self.max_left_pole();
        match self.min_right_pole() {
            None => Ok(left + 1.0),
            Some(right) => {
                if left + 1e-9 >= right {
                    Err(HError::Eval(format!(
                        "pole families interleave: left reach {left}, right reach {right}"
                    )))
                } else {
                    Ok(0.5 * (left + right))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(HParams::new(1, 0, vec![], vec![(0.0, 1.0)]).is_ok());
        // m = 0 rejected
        assert!(HParams::new(0, 0, vec![], vec![(0.0, 1.0)]).is_err());
        // m > q rejected
        assert!(HParams::new(2, 0, vec![], vec![(0.0, 1.0)]).is_err());
        // n > p rejected
        assert!(HParams::new(1, 1, vec![], vec![(0.0, 1.0)]).is_err());
        // nonpositive slope rejected
        assert!(HParams::new(1, 0, vec![], vec![(0.0, -1.0)]).is_err());
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let p = HParams::new(1, 1, vec![(0.0, 1.0)], vec![(0.0, 1.0), (0.0, 0.5)]).unwrap();
        let js = serde_json::to_string(&p).unwrap();
        assert_eq!(
            js,
            r#"{"m":1,"n":1,"upper":[[0.0,1.0]],"lower":[[0.0,1.0],[0.0,0.5]]}"#
        );
        let back: HParams = serde_json::from_str(&js).unwrap();
        assert_eq!(back, p);
        // invalid JSON content is rejected by the same validator
        let bad = r#"{"m":3,"n":0,"upper":[],"lower":[[0.0,1.0]]}"#;
        assert!(serde_json::from_str::<HParams>(bad).is_err());
    }

    #[test]
    fn derived_quantities() {
        let p = HParams::new(2, 0, vec![(0.35, 0.5)], vec![(0.0, 1.0), (-0.9, 0.5)]).unwrap();
        assert!((p.delta() - 1.0).abs() < 1e-14);
        assert!((p.min_lower_ratio() + 1.8).abs() < 1e-14);
        assert!((p.max_left_pole() - 1.8).abs() < 1e-14);
        assert_eq!(p.min_right_pole(), None);
        assert!((p.decay_exponent() - 1.0).abs() < 1e-14);
    }
}
