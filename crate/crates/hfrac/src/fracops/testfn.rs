//! The fixed test-function corpus: constants, powers about the base point,
//! exponentials, and polynomials in (t - a). Every member has closed-form
//! fractional integrals and derivatives, which is what makes the identity
//! sweeps independently checkable.

use serde::{Deserialize, Serialize};

/// JSON shape: `{"tag":"power","lambda":0.5}`, `{"tag":"constant","c":1.0}`,
/// `{"tag":"exponential","k":1.0}`, `{"tag":"polynomial","coeffs":[…]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "lowercase")]
pub enum TestFunction {
    Constant { c: f64 },
    /// (t - a)^λ with λ > -1
    Power { lambda: f64 },
    /// e^{k t}
    Exponential { k: f64 },
    /// Σ coeffs[i] (t - a)^i
    Polynomial { coeffs: Vec<f64> },
}

impl TestFunction {
    /// Check the integrability invariant (power exponent > -1).
    pub fn validate(&self) -> Result<(), String> {
        match self {
            TestFunction::Power { lambda } if !(*lambda > -1.0) => {
                Err(format!("power exponent must exceed -1, got {lambda}"))
            }
            TestFunction::Polynomial { coeffs } if coeffs.is_empty() => {
                Err("polynomial needs at least one coefficient".into())
            }
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, a: f64, t: f64) -> f64 {
        match self {
            TestFunction::Constant { c } => *c,
            TestFunction::Power { lambda } => (t - a).powf(*lambda),
            TestFunction::Exponential { k } => (k * t).exp(),
            TestFunction::Polynomial { coeffs } => {
                let u = t - a;
                coeffs.iter().rev().fold(0.0, |acc, c| acc * u + c)
            }
        }
    }

    /// Exponent ε with f(t) ~ C (t-a)^ε as t → a⁺.
    pub fn left_exponent(&self) -> f64 {
        match self {
            TestFunction::Power { lambda } => *lambda,
            TestFunction::Polynomial { coeffs } => {
                coeffs.iter().position(|c| *c != 0.0).unwrap_or(0) as f64
            }
            _ => 0.0,
        }
    }

    /// f(t)·(t-a)^{-ε}, stable arbitrarily close to the base point.
    pub fn smooth_eval(&self, a: f64, t: f64) -> f64 {
        match self {
            TestFunction::Power { .. } => 1.0,
            TestFunction::Polynomial { coeffs } => {
                let i0 = coeffs.iter().position(|c| *c != 0.0).unwrap_or(0);
                let u = t - a;
                coeffs[i0..].iter().rev().fold(0.0, |acc, c| acc * u + c)
            }
            _ => self.evaluate(a, t),
        }
    }

    /// f' as a linear combination of corpus members (empty for constants).
    pub fn derivative_parts(&self) -> Vec<(f64, TestFunction)> {
        match self {
            TestFunction::Constant { .. } => vec![],
            TestFunction::Power { lambda } => {
                if *lambda == 0.0 {
                    vec![]
                } else {
                    vec![(*lambda, TestFunction::Power { lambda: lambda - 1.0 })]
                }
            }
            TestFunction::Exponential { k } => {
                vec![(*k, TestFunction::Exponential { k: *k })]
            }
            TestFunction::Polynomial { coeffs } => {
                let d: Vec<f64> =
                    coeffs.iter().enumerate().skip(1).map(|(i, c)| i as f64 * c).collect();
                if d.iter().all(|c| *c == 0.0) {
                    vec![]
                } else {
                    vec![(1.0, TestFunction::Polynomial { coeffs: d })]
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_and_smooth_parts() {
        let p = TestFunction::Power { lambda: 0.5 };
        assert!((p.evaluate(1.0, 2.0) - 1.0).abs() < 1e-15);
        assert_eq!(p.left_exponent(), 0.5);
        assert_eq!(p.smooth_eval(1.0, 1.0 + 1e-300), 1.0);

        let q = TestFunction::Polynomial { coeffs: vec![0.0, 2.0, 1.0] };
        assert_eq!(q.left_exponent(), 1.0);
        assert!((q.evaluate(0.0, 3.0) - 15.0).abs() < 1e-12);
        assert!((q.smooth_eval(0.0, 3.0) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn json_schema() {
        let f: TestFunction = serde_json::from_str(r#"{"tag":"power","lambda":0.5}"#).unwrap();
        assert_eq!(f, TestFunction::Power { lambda: 0.5 });
        let js = serde_json::to_string(&TestFunction::Constant { c: 1.0 }).unwrap();
        assert_eq!(js, r#"{"tag":"constant","c":1.0}"#);
    }

    #[test]
    fn derivatives() {
        let e = TestFunction::Exponential { k: 2.0 };
        let parts = e.derivative_parts();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, 2.0);
        let p = TestFunction::Polynomial { coeffs: vec![1.0, 1.0, 0.5] };
        let d = &p.derivative_parts()[0].1;
        assert_eq!(d, &TestFunction::Polynomial { coeffs: vec![1.0, 1.0] });
    }
}
