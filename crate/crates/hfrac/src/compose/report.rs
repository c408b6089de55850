//! Verification reports: per-grid-point LHS/RHS values with error columns,
//! serializable to CSV and JSON with a fixed, reproducible layout.

use crate::Complex;

/// One grid point of an identity check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointRecord {
    pub x: f64,
    pub lhs: Complex,
    pub rhs: Complex,
    pub abs_err: f64,
    pub rel_err: f64,
}

impl PointRecord {
    pub fn new(x: f64, lhs: Complex, rhs: Complex) -> Self {
        let abs_err = (lhs - rhs).norm();
        let denom = lhs.norm().max(rhs.norm());
        // below 1e-8 both sides are numerically zero and the comparison
        // degenerates to an absolute one
        let rel_err = if denom < 1e-8 { abs_err } else { abs_err / denom };
        Self { x, lhs, rhs, abs_err, rel_err }
    }
}

/// Result of one identity sweep. The pass flag is true exactly when the
/// maximum relative error stays within the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity: String,
    pub tol: f64,
    pub points: Vec<PointRecord>,
    pub max_rel_err: f64,
    pub pass: bool,
}

impl VerificationReport {
    pub fn from_points(identity: impl Into<String>, tol: f64, points: Vec<PointRecord>) -> Self {
        let max_rel_err = points.iter().map(|p| p.rel_err).fold(0.0, f64::max);
        Self { identity: identity.into(), tol, points, max_rel_err, pass: max_rel_err <= tol }
    }

    pub const CSV_HEADER: &'static str = "identity,x,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err";

    /// CSV rows (no header), numbers in scientific notation with 17
    /// significant digits so values survive a parse round-trip bit-exactly.
    pub fn csv_rows(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                self.identity, p.x, p.lhs.re, p.lhs.im, p.rhs.re, p.rhs.im, p.abs_err, p.rel_err
            ));
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "identity": self.identity,
            "tol": self.tol,
            "max_rel_err": self.max_rel_err,
            "pass": self.pass,
            "points": self.points.iter().map(|p| serde_json::json!({
                "x": p.x,
                "lhs": [p.lhs.re, p.lhs.im],
                "rhs": [p.rhs.re, p.rhs.im],
                "abs_err": p.abs_err,
                "rel_err": p.rel_err,
            })).collect::<Vec<_>>(),
        })
    }
}
