//! Drives the identity verifier across the configured operators, corpus
//! and grid, in a fixed order so reports are byte-stable across runs.

use crate::config::RunConfig;
use anyhow::{bail, Result};
use hfrac::compose::{verify_identity, IdentityId, IdentityParams, VerificationReport};

/// Which registered operators an identity runs on: the general identities
/// sweep the exponential and Mittag-Leffler templates, the λ-instance
/// corollaries run on the λ template, and the Hilfer reductions need no
/// kernel at all (one placeholder op keeps the call uniform).
fn ops_for(id: IdentityId) -> &'static [&'static str] {
    use IdentityId::*;
    match id {
        Cor1 | Cor2 | Thm1 | Thm2 | Thm3 | Thm4 | Remark2 => &["exp1", "ml"],
        Cor3 | Cor4 | Cor5 | Cor6 => &["lam"],
        HilferReduction => &["exp1"],
    }
}

fn params_for(_id: IdentityId) -> IdentityParams {
    // μ = 0.5 keeps every derivative shift comfortably above the
    // kernel-integrability margin of all three templates
    IdentityParams { mu: 0.5, nu: 0.5, gamma: 0.5 }
}

pub fn select_identities(name: &str) -> Result<Vec<IdentityId>, String> {
    if name == "all" {
        Ok(IdentityId::ALL.to_vec())
    } else {
        name.parse::<IdentityId>().map(|id| vec![id])
    }
}

pub fn run(ids: &[IdentityId], cfg: &RunConfig, tol: f64) -> Result<Vec<VerificationReport>> {
    let mut reports = Vec::new();
    for &id in ids {
        for op_name in ops_for(id) {
            let Some(op) = cfg.ops.get(op_name) else {
                bail!("identity {id} needs the operator '{op_name}', which is not registered");
            };
            for fname in &cfg.corpus {
                let Some(f) = cfg.functions.get(fname) else {
                    bail!("corpus function '{fname}' is not registered");
                };
                let params = params_for(id);
                let report = verify_identity(id, op, &params, f, &cfg.grid, tol)
                    .map_err(|e| anyhow::anyhow!("{id} on {op_name}/{fname}: {e}"))?;
                reports.push(report);
            }
            if id == IdentityId::HilferReduction {
                break; // function sweep only, one op placeholder
            }
        }
    }
    Ok(reports)
}

pub fn to_csv(reports: &[VerificationReport]) -> String {
    let mut out = String::from(VerificationReport::CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_rows());
    }
    out
}

pub fn to_json(reports: &[VerificationReport]) -> String {
    let value = serde_json::Value::Array(reports.iter().map(|r| r.to_json()).collect());
    let mut s = serde_json::to_string_pretty(&value).expect("report JSON");
    s.push('\n');
    s
}
