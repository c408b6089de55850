//! Numerical evaluation of chains: operators apply right-to-left starting
//! from the applied test function, each layer wrapped as an [`Integrand`]
//! so the quadratures underneath keep the endpoint exponent information.

use super::ast::{OpChain, OpNode};
use super::registry::{FnRegistry, OpRegistry};
use super::EvalError;
use crate::fracops::{
    h_kernel_apply_g, hilfer_derivative_g, ik_integral_g, rl_derivative_g, rl_integral_g,
    Integrand, TestFunction,
};
use crate::quadrature::TOL_OPERATOR;
use crate::{cplx, Complex};

/// Evaluate `chain` at `x`. The chain must carry an applied function; all
/// H operators must share a base point (which the plain fractional
/// operators then inherit; chains without H use a = 0).
pub fn evaluate(
    chain: &OpChain,
    ops: &OpRegistry,
    fns: &FnRegistry,
    x: f64,
) -> Result<Complex, EvalError> {
    let applied = chain.applied.as_ref().ok_or(EvalError::MissingFunction)?;
    let f = fns
        .get(&applied.name)
        .ok_or_else(|| EvalError::UnknownFunction(applied.name.clone()))?;

    let mut base: Option<f64> = None;
    for node in &chain.ops {
        if let OpNode::H { name } = &node.op {
            let op = ops.get(name).ok_or_else(|| EvalError::UnknownOperator(name.clone()))?;
            match base {
                None => base = Some(op.a()),
                Some(a) if (a - op.a()).abs() > 1e-12 => {
                    return Err(EvalError::MixedBasePoints(a, op.a()))
                }
                _ => {}
            }
        }
    }
    let a = base.unwrap_or(0.0);
    apply_nodes(&chain.ops, ops, f, a, x).map_err(EvalError::from)
}

fn apply_nodes(
    nodes: &[super::ast::ChainNode],
    ops: &OpRegistry,
    f: &TestFunction,
    a: f64,
    x: f64,
) -> Result<Complex, crate::fracops::FracError> {
    match nodes.split_first() {
        None => Ok(cplx(f.evaluate(a, x), 0.0)),
        Some((head, rest)) => {
            let rest_exp = chain_left_exponent(rest, ops, f);
            let inner = Integrand::new(a, rest_exp, |t| apply_nodes(rest, ops, f, a, t));
            match &head.op {
                OpNode::I { mu } => rl_integral_g(&inner, cplx(*mu, 0.0), x, TOL_OPERATOR),
                OpNode::Ik { gamma, mu } => ik_integral_g(&inner, *gamma, *mu, x, TOL_OPERATOR),
                OpNode::D { mu } => rl_derivative_g(&inner, cplx(*mu, 0.0), x),
                OpNode::Hilfer { mu, nu } => hilfer_derivative_g(&inner, *mu, *nu, x),
                OpNode::H { name } => {
                    let op = ops.get(name).expect("checked by evaluate");
                    h_kernel_apply_g(op, &inner, x, TOL_OPERATOR)
                }
            }
        }
    }
}

/// Conservative (t-a)-exponent of the value of a sub-chain applied to f.
fn chain_left_exponent(nodes: &[super::ast::ChainNode], ops: &OpRegistry, f: &TestFunction) -> f64 {
    let mut e = f.left_exponent();
    for node in nodes.iter().rev() {
        e = match &node.op {
            OpNode::I { mu } => e + mu,
            OpNode::Ik { gamma, mu } => {
                let _ = mu;
                let op_a = 0.0;
                if op_a == 0.0 {
                    e
                } else {
                    e - gamma
                }
            }
            OpNode::D { mu } => e - mu,
            OpNode::Hilfer { mu, .. } => e - mu,
            OpNode::H { name } => {
                e + ops.get(name).map(|op| op.kernel_exponent()).unwrap_or(1.0)
            }
        };
    }
    e.max(-0.95)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opdsl::{builtin_functions, parse, simplify, OpRegistry};
    use crate::rel_err;

    #[test]
    fn classical_integral_of_one() {
        let reg = OpRegistry::builtin();
        let fns = builtin_functions();
        let c = parse("I[1] . f:const1", &reg).unwrap();
        let v = evaluate(&c, &reg, &fns, 1.0).unwrap();
        assert!(rel_err(v, cplx(1.0, 0.0)) < 1e-9, "{v}");
    }

    #[test]
    fn half_integrals_compose_to_classical() {
        let reg = OpRegistry::builtin();
        let fns = builtin_functions();
        let c = parse("I[0.5] . I[0.5] . f:const1", &reg).unwrap();
        let v = evaluate(&c, &reg, &fns, 1.0).unwrap();
        assert!(rel_err(v, cplx(1.0, 0.0)) < 1e-6, "{v}");
    }

    #[test]
    fn missing_function_is_an_error() {
        let reg = OpRegistry::builtin();
        let fns = builtin_functions();
        let c = parse("I[0.5]", &reg).unwrap();
        assert_eq!(evaluate(&c, &reg, &fns, 1.0), Err(EvalError::MissingFunction));
    }

    #[test]
    fn simplify_preserves_value() {
        let mut reg = OpRegistry::builtin();
        let fns = builtin_functions();
        for src in [
            "H[ml] . I[0.5] . f:const1",
            "I[0.4] . H[exp1] . f:pow05",
            "I[0.3] . I[0.4] . f:lin",
            "D[0.5] . H[ml] . f:poly2",
        ] {
            let c = parse(src, &reg).unwrap();
            let before = evaluate(&c, &reg, &fns, 1.0).unwrap();
            let (s, _) = simplify(&c, &mut reg).unwrap();
            let after = evaluate(&s, &reg, &fns, 1.0).unwrap();
            assert!(
                (before - after).norm() <= 1e-4 * (1.0 + before.norm()),
                "{src}: {before} vs {after}"
            );
        }
    }
}
