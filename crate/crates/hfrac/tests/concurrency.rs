//! Everything public is a pure function of its inputs, so concurrent
//! invocation from independent threads must agree with serial evaluation.

use hfrac::compose::{verify_identity, IdentityId, IdentityParams};
use hfrac::fracops::{rl_integral, TestFunction};
use hfrac::hfunction::{eval_h, HParams};
use hfrac::opdsl::OpRegistry;
use hfrac::{cplx, Complex};

#[test]
fn parallel_evaluations_match_serial() {
    let ml = HParams::new(1, 1, vec![(0.0, 1.0)], vec![(0.0, 1.0), (0.0, 0.5)]).unwrap();
    let f = TestFunction::Exponential { k: 0.7 };

    let serial: Vec<Complex> = (0..8)
        .map(|i| {
            let x = 0.4 + 0.2 * i as f64;
            eval_h(&ml, cplx(x, 0.0)).unwrap() + rl_integral(&f, 0.0, cplx(0.6, 0.0), x).unwrap()
        })
        .collect();

    let handles: Vec<_> = (0..8)
        .map(|i| {
            let ml = ml.clone();
            let f = f.clone();
            std::thread::spawn(move || {
                let x = 0.4 + 0.2 * i as f64;
                eval_h(&ml, cplx(x, 0.0)).unwrap()
                    + rl_integral(&f, 0.0, cplx(0.6, 0.0), x).unwrap()
            })
        })
        .collect();
    for (i, h) in handles.into_iter().enumerate() {
        let got = h.join().unwrap();
        assert_eq!(got, serial[i], "thread {i} diverged");
    }
}

#[test]
fn parallel_identity_sweeps_are_deterministic() {
    let op = OpRegistry::builtin().get("ml").unwrap().clone();
    let f = TestFunction::Constant { c: 1.0 };
    let params = IdentityParams::default();
    let reference =
        verify_identity(IdentityId::Cor1, &op, &params, &f, &[0.5, 1.0], 1e-4).unwrap();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let op = op.clone();
            let f = f.clone();
            std::thread::spawn(move || {
                verify_identity(IdentityId::Cor1, &op, &params, &f, &[0.5, 1.0], 1e-4).unwrap()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), reference);
    }
}
