//! Property tests over randomized inputs: functional equations of the
//! special functions, quadrature linearity, and DSL round-trips.

use hfrac::fracops::{rl_integral, TestFunction};
use hfrac::opdsl::{parse, AppliedFn, ChainNode, OpChain, OpNode, OpRegistry, Span};
use hfrac::quadrature::{integrate_singular, SingularWeight};
use hfrac::specfun::{beta, gauss_2f1, ln_gamma, mittag_leffler};
use hfrac::{cplx, rel_err, Complex};
use proptest::prelude::*;

fn finite(c: Complex) -> bool {
    c.is_finite()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gamma_functional_equation(re in 0.5f64..20.0, im in -10.0f64..10.0) {
        let z = cplx(re, im);
        let lhs = ln_gamma(z + 1.0).unwrap().exp();
        let rhs = z * ln_gamma(z).unwrap().exp();
        prop_assert!(rel_err(lhs, rhs) < 1e-12);
    }

    #[test]
    fn beta_symmetry(a in 0.2f64..8.0, b in 0.2f64..8.0, im in -3.0f64..3.0) {
        let x = cplx(a, im);
        let y = cplx(b, -0.5 * im);
        prop_assert_eq!(beta(x, y).unwrap(), beta(y, x).unwrap());
    }

    #[test]
    fn hypergeometric_upper_symmetry(
        a in 0.1f64..3.0,
        b in 0.1f64..3.0,
        c in 0.5f64..4.0,
        z in -0.9f64..0.9,
    ) {
        let (a, b, c, z) = (cplx(a, 0.3), cplx(b, -0.2), cplx(c, 0.0), cplx(z, 0.0));
        let ab = gauss_2f1(a, b, c, z).unwrap();
        let ba = gauss_2f1(b, a, c, z).unwrap();
        prop_assert!(finite(ab));
        prop_assert!(rel_err(ab, ba) < 1e-11);
    }

    #[test]
    fn mittag_leffler_tracks_exponential(re in -3.0f64..3.0, im in -1.5f64..1.5) {
        let z = cplx(re, im);
        prop_assume!(z.norm() <= 3.0);
        let e = mittag_leffler(1.0, 1.0, z).unwrap();
        prop_assert!(rel_err(e, z.exp()) < 1e-10);
    }

    #[test]
    fn weighted_quadrature_is_linear(
        scale_re in -2.0f64..2.0,
        scale_im in -2.0f64..2.0,
        p in -0.8f64..1.0,
        omega in 0.5f64..4.0,
    ) {
        let w = SingularWeight::new(p, 0.0).unwrap();
        let f = move |t: f64| cplx((omega * t).cos(), (0.3 * t).sin());
        let c = cplx(scale_re, scale_im);
        let base = integrate_singular(&f, 0.0, 1.0, w, 1e-11).unwrap();
        let scaled = integrate_singular(&|t| c * f(t), 0.0, 1.0, w, 1e-11).unwrap();
        prop_assert!((scaled - c * base).norm() < 1e-9 * (1.0 + c.norm()));
    }

    #[test]
    fn power_rule_holds(lambda in -0.8f64..2.5, mu in 0.1f64..1.8, x in 0.3f64..2.5) {
        let f = TestFunction::Power { lambda };
        let got = rl_integral(&f, 0.0, cplx(mu, 0.0), x).unwrap();
        let want = (ln_gamma(cplx(lambda + 1.0, 0.0)).unwrap()
            - ln_gamma(cplx(lambda + mu + 1.0, 0.0)).unwrap())
        .exp()
            * x.powf(lambda + mu);
        prop_assert!(rel_err(got, want) < 1e-8);
    }
}

fn op_node() -> impl Strategy<Value = OpNode> {
    prop_oneof![
        (0.05f64..1.9).prop_map(|mu| OpNode::I { mu }),
        (-0.9f64..1.5, 0.05f64..1.4).prop_map(|(gamma, mu)| OpNode::Ik { gamma, mu }),
        (0.05f64..0.95).prop_map(|mu| OpNode::D { mu }),
        (0.05f64..0.95, 0.0f64..=1.0).prop_map(|(mu, nu)| OpNode::Hilfer { mu, nu }),
        prop_oneof![Just("exp1"), Just("ml"), Just("lam")]
            .prop_map(|n| OpNode::H { name: n.to_string() }),
    ]
}

fn chain() -> impl Strategy<Value = OpChain> {
    (proptest::collection::vec(op_node(), 1..5), proptest::option::of(Just("const1")))
        .prop_map(|(nodes, applied)| OpChain {
            ops: nodes
                .into_iter()
                .map(|op| ChainNode { op, span: Span { start: 0, end: 0 } })
                .collect(),
            applied: applied
                .map(|name| AppliedFn { name: name.into(), span: Span { start: 0, end: 0 } }),
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn chain_round_trip(c in chain()) {
        let registry = OpRegistry::builtin();
        let text = c.pretty();
        let reparsed = parse(&text, &registry).expect("printer output reparses");
        prop_assert_eq!(reparsed, c);
    }
}
