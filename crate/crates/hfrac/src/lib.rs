//! Numerical engine for fractional integral/derivative operators whose
//! kernels involve the Fox H-function.
//!
//! The crate is organised bottom-up:
//!
//! * [`specfun`]: complex log-gamma, beta, Gauss ₂F₁, Mittag-Leffler and the
//!   Macdonald-type λ function,
//! * [`quadrature`]: adaptive, weighted-endpoint and Mellin-Barnes contour
//!   integration,
//! * [`hfunction`]: the Fox H-function: parameter model, convergence
//!   screening, residue-series and contour evaluation,
//! * [`fracops`]: Riemann-Liouville, Hilfer and H-kernel integral operators
//!   applied to a small corpus of test functions,
//! * [`compose`]: operator composition expressed as parameter-shift maps and
//!   contour kernels, plus the numerical identity verifier,
//! * [`opdsl`]: a tiny expression language for operator chains with a
//!   parser, pretty-printer and rewrite engine.
//!
//! Everything is a pure function of its inputs; there is no global state and
//! all public entry points are safe to call concurrently.

// Preconditions are written as !(x > 0.0) on purpose: the negated form
// rejects NaN, which `x <= 0.0` would wave through.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature node/weight tables keep their published digit counts.
#![allow(clippy::excessive_precision)]

pub mod compose;
pub mod fracops;
pub mod hfunction;
pub mod opdsl;
pub mod quadrature;
pub mod specfun;

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;

/// Shorthand constructor for a [`Complex`] value.
#[inline]
pub fn cplx(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// Relative difference `|a - b| / max(1, |b|)` used by tests and verifiers.
pub fn rel_err(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}
