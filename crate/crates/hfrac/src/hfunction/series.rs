//! Residue-series evaluation of the H-function, with per-parameter-set
//! caching so kernels can be sampled at many arguments cheaply.

use super::theta::{factor_lists, AffineArg, NumOrigin};
use super::{HError, HParams};
use crate::specfun::{is_nonpositive_integer, ln_gamma};
use crate::{cplx, Complex};

const MAX_POLES_PER_FAMILY: usize = 500;
const TERM_CUTOFF: f64 = 1e-14;
/// Two numerator poles closer than this are a logarithmic (multiple-pole)
/// case, which is rejected.
const COLLISION_TOL: f64 = 1e-9;

/// One family of poles: the factor Γ(c0 + c1·s) whose residues are summed.
struct Family {
    arg: AffineArg,
    /// index of this factor in the numerator list (skipped when the
    /// residue coefficient is assembled)
    num_idx: usize,
    /// cached terms; `None` marks a term killed by a denominator zero
    terms: Vec<Option<Term>>,
}

#[derive(Clone, Copy)]
struct Term {
    /// z-exponent of the term (= -s_pole for left families)
    exponent: f64,
    /// term(z) = exp(ln_coeff + exponent·ln z)
    ln_coeff: Complex,
}

/// Residue-series evaluator with cached coefficients.
///
/// Construction caches the cancelled factor lists; term coefficients are
/// computed lazily as the series is pushed deeper. Not `Sync` on purpose:
/// clone one per thread, the underlying data is cheap.
pub struct HEvaluator {
    params: HParams,
    left: Vec<Family>,
    right: Vec<Family>,
    num: Vec<(AffineArg, NumOrigin)>,
    den: Vec<AffineArg>,
    left_checked: bool,
    right_checked: bool,
}

impl HEvaluator {
    pub fn new(params: &HParams) -> Self {
        let (num, den) = factor_lists(params);
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, (a, o)) in num.iter().enumerate() {
            let fam = Family { arg: *a, num_idx: i, terms: Vec::new() };
            match o {
                NumOrigin::LowerM => left.push(fam),
                NumOrigin::UpperN => right.push(fam),
            }
        }
        Self { params: params.clone(), left, right, num, den, left_checked: false, right_checked: false }
    }

    pub fn params(&self) -> &HParams {
        &self.params
    }

    /// Number of left (ascending) pole families.
    pub fn left_families(&self) -> usize {
        self.left.len()
    }

    /// (z-exponent, ln-coefficient) of term k of left family `fam`, so the
    /// term is exp(ln_coeff + exponent·ln z). `None` when a denominator
    /// zero kills the term. Extends the cache on demand.
    pub fn left_term(&mut self, fam: usize, k: usize) -> Result<Option<(f64, Complex)>, HError> {
        self.check_collisions(true)?;
        Ok(self.term(true, fam, k)?.map(|t| (t.exponent, t.ln_coeff)))
    }

    /// H(z) by the residue series over the left (ascending) pole families.
    pub fn eval_left(&mut self, z: Complex) -> Result<Complex, HError> {
        self.eval_scaled_left(z, 0.0)
    }

    /// H(z)·z^{-shift} with the shift folded into every term exponent, so
    /// values stay representable even when z underflows the leading power.
    pub fn eval_scaled_left(&mut self, z: Complex, shift: f64) -> Result<Complex, HError> {
        if z.norm() == 0.0 {
            return Err(HError::Eval("residue series needs z != 0".into()));
        }
        self.check_collisions(true)?;
        let ln_z = z.ln();
        self.sum_families(true, ln_z, shift)
    }

    /// H(z) by the residue series over the right (descending) families.
    pub fn eval_right(&mut self, z: Complex) -> Result<Complex, HError> {
        if z.norm() == 0.0 {
            return Err(HError::Eval("residue series needs z != 0".into()));
        }
        self.check_collisions(false)?;
        let ln_z = z.ln();
        self.sum_families(false, ln_z, 0.0)
    }

    fn sum_families(&mut self, left: bool, ln_z: Complex, shift: f64) -> Result<Complex, HError> {
        let count = if left { self.left.len() } else { self.right.len() };
        if count == 0 {
            return Err(HError::Eval("no pole family on the requested side".into()));
        }
        let mut sum = cplx(0.0, 0.0);
        let mut active = vec![0u8; count]; // consecutive-small counters
        let mut done = vec![false; count];
        for k in 0..MAX_POLES_PER_FAMILY {
            let mut all_done = true;
            for fam in 0..count {
                if done[fam] {
                    continue;
                }
                all_done = false;
                let term = self.term(left, fam, k)?;
                if let Some(t) = term {
                    let v = (t.ln_coeff + (t.exponent - shift) * ln_z).exp();
                    if !v.is_finite() {
                        return Err(HError::Eval(format!(
                            "residue term overflow at pole index {k}"
                        )));
                    }
                    sum += v;
                    if v.norm() <= TERM_CUTOFF * sum.norm().max(1e-280) {
                        active[fam] += 1;
                        if active[fam] >= 3 {
                            done[fam] = true;
                        }
                    } else {
                        active[fam] = 0;
                    }
                } else {
                    // denominator zero killed this term
                    active[fam] += 1;
                    if active[fam] >= 3 {
                        done[fam] = true;
                    }
                }
            }
            if all_done {
                return Ok(sum);
            }
        }
        Err(HError::Eval(format!(
            "residue series did not converge within {MAX_POLES_PER_FAMILY} poles per family"
        )))
    }

    fn term(&mut self, left: bool, fam: usize, k: usize) -> Result<Option<Term>, HError> {
        let family = if left { &self.left[fam] } else { &self.right[fam] };
        if k < family.terms.len() {
            return Ok(family.terms[k]);
        }
        let arg = family.arg;
        let self_idx = family.num_idx;
        // pole of Γ(c0 + c1 s) at index k
        let s0 = -(arg.c0 + k as f64) / arg.c1;
        // residue prefactor: (-1)^k / (k! |c1|); the sign conventions for
        // the two closure directions cancel so both sides share this form
        let mut ln_coeff = cplx(0.0, std::f64::consts::PI * k as f64)
            - ln_gamma(cplx(k as f64 + 1.0, 0.0)).expect("positive integer")
            - cplx(arg.c1.abs().ln(), 0.0);
        let mut killed = false;
        for (i, (other, _)) in self.num.iter().enumerate() {
            if i == self_idx {
                continue;
            }
            let v = other.at(cplx(s0, 0.0));
            if is_nonpositive_integer(v, COLLISION_TOL) {
                return Err(HError::PoleCollision(s0));
            }
            ln_coeff += ln_gamma(v)?;
        }
        for d in &self.den {
            let v = d.at(cplx(s0, 0.0));
            if is_nonpositive_integer(v, 1e-12) {
                killed = true;
                break;
            }
            ln_coeff -= ln_gamma(v)?;
        }
        let term = if killed {
            None
        } else {
            Some(Term { exponent: -s0, ln_coeff })
        };
        let family = if left { &mut self.left[fam] } else { &mut self.right[fam] };
        debug_assert_eq!(family.terms.len(), k);
        family.terms.push(term);
        Ok(term)
    }

    /// Reject parameter sets whose summed pole families collide (the
    /// logarithmic case): pairwise pole gaps below 1e-9.
    fn check_collisions(&mut self, left: bool) -> Result<(), HError> {
        let (families, checked) = if left {
            (&self.left, &mut self.left_checked)
        } else {
            (&self.right, &mut self.right_checked)
        };
        if *checked || families.len() < 2 {
            return Ok(());
        }
        let mut poles: Vec<f64> = Vec::with_capacity(families.len() * MAX_POLES_PER_FAMILY);
        for f in families.iter() {
            for k in 0..MAX_POLES_PER_FAMILY {
                poles.push(-(f.arg.c0 + k as f64) / f.arg.c1);
            }
        }
        poles.sort_by(f64::total_cmp);
        for w in poles.windows(2) {
            if (w[1] - w[0]).abs() < COLLISION_TOL {
                return Err(HError::PoleCollision(w[0]));
            }
        }
        *checked = true;
        Ok(())
    }
}
