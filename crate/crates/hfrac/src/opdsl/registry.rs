//! Named H-kernel operators and test functions available to chains.

use crate::fracops::{HKernelOp, TestFunction};
use crate::hfunction::HParams;
use crate::{cplx, Complex};
use std::collections::BTreeMap;

/// Test-function table used by `f:` terms.
pub type FnRegistry = BTreeMap<String, TestFunction>;

/// Registry of named H-kernel operators. BTreeMap keeps every listing
/// deterministic.
#[derive(Debug, Clone, Default)]
pub struct OpRegistry {
    ops: BTreeMap<String, HKernelOp>,
}

impl OpRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// The three built-in kernel templates:
    ///
    /// * `exp1`: H^{1,0}_{0,1}, kernel e^{-(x-t)},
    /// * `ml`: H^{1,1}_{1,2} in the E_{1/2,1} parameterization, kernel
    ///   E_{1/2,1}(-(x-t)^{1/2}),
    /// * `lam`: H^{2,0}_{1,2}, the λ^{(2)}_{0.75,0.3} kernel with β = 1.8.
    pub fn builtin() -> Self {
        let mut reg = Self::new();
        let exp_h = HParams::new(1, 0, vec![], vec![(0.0, 1.0)]).expect("static params");
        reg.insert(
            "exp1",
            HKernelOp::new(0.0, cplx(1.0, 0.0), 1.0, cplx(1.0, 0.0), exp_h).expect("static op"),
        );
        let ml_h = HParams::new(1, 1, vec![(0.0, 1.0)], vec![(0.0, 1.0), (0.0, 0.5)])
            .expect("static params");
        reg.insert(
            "ml",
            HKernelOp::new(0.0, cplx(1.0, 0.0), 0.5, cplx(1.0, 0.0), ml_h).expect("static op"),
        );
        let lam_h = HParams::new(2, 0, vec![(0.35, 0.5)], vec![(0.0, 1.0), (-0.9, 0.5)])
            .expect("static params");
        reg.insert(
            "lam",
            HKernelOp::new(0.0, cplx(1.0, 0.0), 0.5, cplx(1.8, 0.0), lam_h).expect("static op"),
        );
        reg
    }

    pub fn get(&self, name: &str) -> Option<&HKernelOp> {
        self.ops.get(name)
    }

    pub fn insert(&mut self, name: impl Into<String>, op: HKernelOp) {
        self.ops.insert(name.into(), op);
    }

    /// Register a derived operator under `<base>#s<k>` with the smallest
    /// free k, returning the new name.
    pub fn register_derived(&mut self, base: &str, op: HKernelOp) -> String {
        let stem = base.split('#').next().unwrap_or(base);
        for k in 1.. {
            let name = format!("{stem}#s{k}");
            if !self.ops.contains_key(&name) {
                self.ops.insert(name.clone(), op);
                return name;
            }
        }
        unreachable!()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }

    /// Human-facing one-line description of a registered operator.
    pub fn summary(&self, name: &str) -> Option<String> {
        self.ops.get(name).map(|op| {
            let (m, n, p, q) = op.h().orders();
            format!(
                "{name}: orders ({m},{n},{p},{q}), w = {}, alpha = {}, beta = {}, a = {}",
                fmt_c(op.w()),
                op.alpha(),
                fmt_c(op.beta()),
                op.a()
            )
        })
    }
}

fn fmt_c(z: Complex) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{}{}i", z.re, if z.im < 0.0 { "-" } else { "+" }, z.im.abs())
    }
}

/// Built-in test functions: a constant, a linear ramp, a square root, an
/// exponential and a quadratic polynomial.
pub fn builtin_functions() -> FnRegistry {
    let mut fns = FnRegistry::new();
    fns.insert("const1".into(), TestFunction::Constant { c: 1.0 });
    fns.insert("lin".into(), TestFunction::Power { lambda: 1.0 });
    fns.insert("pow05".into(), TestFunction::Power { lambda: 0.5 });
    fns.insert("expo".into(), TestFunction::Exponential { k: 1.0 });
    fns.insert("poly2".into(), TestFunction::Polynomial { coeffs: vec![1.0, 1.0, 0.5] });
    fns
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_resolve() {
        let reg = OpRegistry::builtin();
        for name in ["exp1", "ml", "lam"] {
            assert!(reg.get(name).is_some(), "{name}");
        }
        assert_eq!(reg.names().collect::<Vec<_>>(), vec!["exp1", "lam", "ml"]);
        assert!(builtin_functions().contains_key("const1"));
    }

    #[test]
    fn derived_names_are_fresh() {
        let mut reg = OpRegistry::builtin();
        let op = reg.get("ml").unwrap().clone();
        let n1 = reg.register_derived("ml", op.clone());
        let n2 = reg.register_derived("ml#s1", op);
        assert_eq!(n1, "ml#s1");
        assert_eq!(n2, "ml#s2");
    }
}
