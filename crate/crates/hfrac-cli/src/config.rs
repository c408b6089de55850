//! Run configuration: a single JSON document, no environment variables, so
//! every run is reproducible from its config alone.
//!
//! ```json
//! {
//!   "ops": { "name": { "m":…, "n":…, "upper":[[a,alpha],…], "lower":[[b,beta],…],
//!                      "w":…, "alpha":…, "beta":…, "a":… } },
//!   "functions": [ { "name":"const1", "tag":"constant", "c":1.0 }, … ],
//!   "grid": [0.5, 1.0, 1.5],
//!   "tol": 1e-4
//! }
//! ```
//!
//! Omitted sections fall back to the built-in operators (`exp1`, `ml`,
//! `lam`), the built-in corpus, grid [0.5, 1.0, 1.5] and tol 1e-4.

use anyhow::{bail, Context, Result};
use hfrac::fracops::{HKernelOp, TestFunction};
use hfrac::opdsl::{builtin_functions, FnRegistry, OpRegistry};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::path::Path;

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    ops: BTreeMap<String, HKernelOp>,
    #[serde(default)]
    functions: Vec<NamedFunction>,
    #[serde(default)]
    grid: Vec<f64>,
    #[serde(default)]
    tol: Option<f64>,
}

#[derive(Debug, Deserialize)]
struct NamedFunction {
    name: String,
    #[serde(flatten)]
    f: TestFunction,
}

/// Resolved configuration used by every subcommand.
pub struct RunConfig {
    pub ops: OpRegistry,
    pub functions: FnRegistry,
    /// corpus order for verification sweeps (registry order is
    /// alphabetical; sweeps follow the config's listing)
    pub corpus: Vec<String>,
    pub grid: Vec<f64>,
    pub tol: f64,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let raw = match path {
            None => RawConfig::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("cannot read config {}", p.display()))?;
                serde_json::from_str(&text)
                    .with_context(|| format!("invalid config {}", p.display()))?
            }
        };
        let mut ops = OpRegistry::builtin();
        for (name, op) in raw.ops {
            ops.insert(name, op);
        }
        let (functions, corpus) = if raw.functions.is_empty() {
            let fns = builtin_functions();
            (fns, vec!["const1".into(), "pow05".into(), "expo".into(), "poly2".into()])
        } else {
            let mut fns = FnRegistry::new();
            let mut corpus = Vec::new();
            for nf in raw.functions {
                nf.f.validate().map_err(anyhow::Error::msg)?;
                corpus.push(nf.name.clone());
                fns.insert(nf.name, nf.f);
            }
            (fns, corpus)
        };
        let grid = if raw.grid.is_empty() { vec![0.5, 1.0, 1.5] } else { raw.grid };
        let tol = raw.tol.unwrap_or(1e-4);
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // rejects NaN too
        if !(tol > 0.0) {
            bail!("tol must be positive, got {tol}");
        }
        let max_base = ops
            .names()
            .filter_map(|n| ops.get(n).map(|op| op.a()))
            .fold(f64::NEG_INFINITY, f64::max);
        for &x in &grid {
            if !x.is_finite() || x <= max_base {
                bail!("grid point {x} is not strictly inside every operator's domain (base points reach {max_base})");
            }
        }
        Ok(Self { ops, functions, corpus, grid, tol })
    }
}
