//! Parameter-shift maps: composing 𝓗 with I^μ, D^μ or the Hilfer
//! derivative yields another 𝓗 whose Mellin integrand differs by a declared
//! ratio of gamma factors. Each map inserts the gamma pairs realizing that
//! ratio and shifts β.
//!
//! Placement is canonical: new upper pairs go at the end of the first block
//! (position n), new lower pairs at the end of the list. Any placement
//! satisfying the Mellin contract is semantically equal; one canonical
//! choice keeps operator equality syntactic.

use super::ComposeError;
use crate::fracops::HKernelOp;
use crate::hfunction::HParams;
use crate::specfun::{ln_gamma, SpecFunError};
use crate::{cplx, Complex};

/// The five composition directions with a shift form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    /// 𝓗 ∘ I^μ
    HAfterI,
    /// I^μ ∘ 𝓗
    IAfterH,
    /// D^μ ∘ 𝓗
    DAfterH,
    /// 𝓗 ∘ D^μ
    HAfterD,
    /// D^{μ,ν} ∘ 𝓗
    HilferAfterH,
}

impl ShiftKind {
    pub fn name(self) -> &'static str {
        match self {
            ShiftKind::HAfterI => "h-after-i",
            ShiftKind::IAfterH => "i-after-h",
            ShiftKind::DAfterH => "d-after-h",
            ShiftKind::HAfterD => "h-after-d",
            ShiftKind::HilferAfterH => "hilfer-after-h",
        }
    }
}

/// Declarative description of one shift: how the orders move, how β moves,
/// and the gamma-factor ratio the transformed Mellin integrand must show.
/// The ratio is Π Γ(num + αξ)/Γ(den + αξ) in the ξ-convention (ξ = -s), at
/// most three pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRule {
    pub kind: ShiftKind,
    /// (Δn, Δp, Δq); m never changes
    pub order_delta: (usize, usize, usize),
    pub beta_delta: Complex,
    pub gamma_pairs: Vec<(f64, f64)>,
}

impl ShiftRule {
    /// The declared ratio evaluated at ξ.
    pub fn ratio_at(&self, alpha: f64, xi: Complex) -> Result<Complex, SpecFunError> {
        let mut lg = cplx(0.0, 0.0);
        for &(num, den) in &self.gamma_pairs {
            lg += ln_gamma(num + alpha * xi)?;
            lg -= ln_gamma(den + alpha * xi)?;
        }
        Ok(lg.exp())
    }
}

fn real_beta(op: &HKernelOp) -> Result<f64, ComposeError> {
    if op.beta().im.abs() > 1e-12 {
        return Err(ComposeError::Condition(
            "shift maps require a real β (parameter lists are real)".into(),
        ));
    }
    Ok(op.beta().re)
}

/// Rebuild the operator with upper pairs inserted at position n, lower
/// pairs appended, and β replaced.
fn insert_pairs(
    op: &HKernelOp,
    upper_new: &[(f64, f64)],
    lower_new: &[(f64, f64)],
    beta_new: f64,
) -> Result<HKernelOp, ComposeError> {
    let h = op.h();
    let mut upper = h.upper().to_vec();
    for (i, pair) in upper_new.iter().enumerate() {
        upper.insert(h.n() + i, *pair);
    }
    let mut lower = h.lower().to_vec();
    lower.extend_from_slice(lower_new);
    let params = HParams::new(h.m(), h.n() + upper_new.len(), upper, lower)
        .map_err(|e| ComposeError::Condition(e.to_string()))?;
    HKernelOp::new(op.a(), op.w(), op.alpha(), cplx(beta_new, 0.0), params)
        .map_err(|e| ComposeError::Condition(e.to_string()))
}

/// 𝓗 ∘ I^μ → 𝓗 with orders (m, n+1, p+1, q+1) and β+μ.
pub fn shift_h_after_i(op: &HKernelOp, mu: f64) -> Result<HKernelOp, ComposeError> {
    if !(mu > 0.0) {
        return Err(ComposeError::Condition(format!("integral order must be positive, got {mu}")));
    }
    let beta = real_beta(op)?;
    let alpha = op.alpha();
    insert_pairs(op, &[(1.0 - beta, alpha)], &[(1.0 - beta - mu, alpha)], beta + mu)
}

/// I^μ ∘ 𝓗: same target operator as [`shift_h_after_i`], the two
/// composition orders share one contract.
pub fn shift_i_after_h(op: &HKernelOp, mu: f64) -> Result<HKernelOp, ComposeError> {
    shift_h_after_i(op, mu)
}

/// D^μ ∘ 𝓗 → 𝓗 with orders (m, n+2, p+2, q+2) and β-μ, realized as
/// I^{n-μ} followed by n ordinary derivatives.
pub fn shift_d_after_h(op: &HKernelOp, mu: f64) -> Result<HKernelOp, ComposeError> {
    if !(mu > 0.0) {
        return Err(ComposeError::Condition(format!(
            "derivative order must be positive, got {mu}"
        )));
    }
    let beta = real_beta(op)?;
    let alpha = op.alpha();
    let n_int = mu.floor() + 1.0;
    let beta_mid = beta + n_int - mu; // after the I^{n-μ} leg
    insert_pairs(
        op,
        &[(1.0 - beta, alpha), (1.0 - beta_mid, alpha)],
        &[(1.0 - beta_mid, alpha), (1.0 - beta + mu, alpha)],
        beta - mu,
    )
}

/// 𝓗 ∘ D^μ: same target operator as [`shift_d_after_h`].
pub fn shift_h_after_d(op: &HKernelOp, mu: f64) -> Result<HKernelOp, ComposeError> {
    shift_d_after_h(op, mu)
}

/// D^{μ,ν} ∘ 𝓗 → 𝓗 with orders (m, n+3, p+3, q+3) and β-μ, realized as
/// I^{ν(1-μ)} ∘ D^{μ+ν-μν} with the derivative leg expanded as in
/// [`shift_d_after_h`].
pub fn shift_hilfer_after_h(op: &HKernelOp, mu: f64, nu: f64) -> Result<HKernelOp, ComposeError> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(ComposeError::Condition(format!("Hilfer order needs 0 < mu < 1, got {mu}")));
    }
    if !(0.0..=1.0).contains(&nu) {
        return Err(ComposeError::Condition(format!("Hilfer type needs 0 <= nu <= 1, got {nu}")));
    }
    let beta = real_beta(op)?;
    let alpha = op.alpha();
    let sigma1 = (1.0 - nu) * (1.0 - mu);
    let beta_a = beta + sigma1;
    let beta_b = beta_a - 1.0;
    insert_pairs(
        op,
        &[(1.0 - beta, alpha), (1.0 - beta_a, alpha), (1.0 - beta_b, alpha)],
        &[(1.0 - beta_a, alpha), (1.0 - beta_b, alpha), (1.0 - beta + mu, alpha)],
        beta - mu,
    )
}

/// The declarative rule for a shift, used by the Mellin-contract checks and
/// the rewrite trace.
pub fn shift_rule(
    kind: ShiftKind,
    op: &HKernelOp,
    mu: f64,
    nu: f64,
) -> Result<ShiftRule, ComposeError> {
    let beta = real_beta(op)?;
    let rule = match kind {
        ShiftKind::HAfterI | ShiftKind::IAfterH => ShiftRule {
            kind,
            order_delta: (1, 1, 1),
            beta_delta: cplx(mu, 0.0),
            gamma_pairs: vec![(beta, beta + mu)],
        },
        ShiftKind::DAfterH | ShiftKind::HAfterD => {
            let n_int = mu.floor() + 1.0;
            let beta_mid = beta + n_int - mu;
            ShiftRule {
                kind,
                order_delta: (2, 2, 2),
                beta_delta: cplx(-mu, 0.0),
                gamma_pairs: vec![(beta, beta_mid), (beta_mid, beta - mu)],
            }
        }
        ShiftKind::HilferAfterH => {
            let sigma1 = (1.0 - nu) * (1.0 - mu);
            let beta_a = beta + sigma1;
            let beta_b = beta_a - 1.0;
            ShiftRule {
                kind,
                order_delta: (3, 3, 3),
                beta_delta: cplx(-mu, 0.0),
                gamma_pairs: vec![(beta, beta_a), (beta_a, beta_b), (beta_b, beta - mu)],
            }
        }
    };
    Ok(rule)
}

/// Apply the shift named by `kind`.
pub fn apply_shift(
    kind: ShiftKind,
    op: &HKernelOp,
    mu: f64,
    nu: f64,
) -> Result<HKernelOp, ComposeError> {
    match kind {
        ShiftKind::HAfterI => shift_h_after_i(op, mu),
        ShiftKind::IAfterH => shift_i_after_h(op, mu),
        ShiftKind::DAfterH => shift_d_after_h(op, mu),
        ShiftKind::HAfterD => shift_h_after_d(op, mu),
        ShiftKind::HilferAfterH => shift_hilfer_after_h(op, mu, nu),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hfunction::mellin_theta;
    use crate::rel_err;

    fn ml_op() -> HKernelOp {
        let h = HParams::new(1, 1, vec![(0.0, 1.0)], vec![(0.0, 1.0), (0.0, 0.5)]).unwrap();
        HKernelOp::new(0.0, cplx(1.0, 0.0), 0.5, cplx(1.0, 0.0), h).unwrap()
    }

    fn lam_op() -> HKernelOp {
        let h = HParams::new(2, 0, vec![(0.35, 0.5)], vec![(0.0, 1.0), (-0.9, 0.5)]).unwrap();
        HKernelOp::new(0.0, cplx(1.0, 0.0), 0.5, cplx(1.8, 0.0), h).unwrap()
    }

    #[test]
    fn order_bookkeeping_matches_displays() {
        // ML template (1,1,1,2) + integral: (1,2,2,3), β+0.5
        let s = shift_h_after_i(&ml_op(), 0.5).unwrap();
        assert_eq!(s.h().orders(), (1, 2, 2, 3));
        assert!((s.beta().re - 1.5).abs() < 1e-14);
        // λ template (2,0,1,2) + integral: (2,1,2,3)
        let s = shift_i_after_h(&lam_op(), 0.4).unwrap();
        assert_eq!(s.h().orders(), (2, 1, 2, 3));
        // λ template + derivative: (2,2,3,4), β-μ
        let s = shift_d_after_h(&lam_op(), 0.5).unwrap();
        assert_eq!(s.h().orders(), (2, 2, 3, 4));
        assert!((s.beta().re - 1.3).abs() < 1e-14);
        // generic + derivative: (1,3,3,4)
        let s = shift_d_after_h(&ml_op(), 0.5).unwrap();
        assert_eq!(s.h().orders(), (1, 3, 3, 4));
        // Hilfer: (1,4,4,5), β-μ
        let s = shift_hilfer_after_h(&ml_op(), 0.5, 0.5).unwrap();
        assert_eq!(s.h().orders(), (1, 4, 4, 5));
        assert!((s.beta().re - 0.5).abs() < 1e-14);
    }

    #[test]
    fn both_integral_orders_share_the_target() {
        let a = shift_h_after_i(&ml_op(), 0.37).unwrap();
        let b = shift_i_after_h(&ml_op(), 0.37).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn mellin_contract_for_every_rule() {
        let ops = [ml_op(), lam_op()];
        let kinds = [
            ShiftKind::HAfterI,
            ShiftKind::IAfterH,
            ShiftKind::DAfterH,
            ShiftKind::HAfterD,
            ShiftKind::HilferAfterH,
        ];
        for op in &ops {
            for &kind in &kinds {
                let (mu, nu) = (0.5, 0.25);
                let shifted = apply_shift(kind, op, mu, nu).unwrap();
                let rule = shift_rule(kind, op, mu, nu).unwrap();
                for im in [-2.0, 0.7, 5.5] {
                    let s = cplx(0.4, im);
                    let theta0 = mellin_theta(op.h(), s).unwrap();
                    let theta1 = mellin_theta(shifted.h(), s).unwrap();
                    let want = rule.ratio_at(op.alpha(), -s).unwrap();
                    assert!(
                        rel_err(theta1 / theta0, want) < 1e-10,
                        "{kind:?} on {:?} at {s}: {} vs {want}",
                        op.h().orders(),
                        theta1 / theta0,
                    );
                }
            }
        }
    }

    #[test]
    fn vanishing_order_limit_keeps_kernel() {
        // μ → 0⁺: gamma ratio → 1, kernel pointwise unchanged
        let op = ml_op();
        let s = shift_h_after_i(&op, 1e-6).unwrap();
        for y in [0.2, 0.7, 1.3] {
            let k0 = op.kernel(y).unwrap();
            let k1 = s.kernel(y).unwrap();
            assert!((k0 - k1).norm() <= 1e-5 * k0.norm().max(1.0), "y={y}: {k0} vs {k1}");
        }
    }

    #[test]
    fn hilfer_type_extremes_are_valid_operators() {
        // ν = 0 inserts a cancelling pair; ν = 1 with β = 1 puts a
        // removable pole pair on the contour line, both must evaluate
        for nu in [0.0, 1.0] {
            let s = shift_hilfer_after_h(&ml_op(), 0.5, nu).unwrap();
            assert_eq!(s.h().orders(), (1, 4, 4, 5));
            let v = mellin_theta(s.h(), cplx(0.4, 1.0)).unwrap();
            assert!(v.is_finite());
        }
    }

    #[test]
    fn condition_violations_surface() {
        // β - μ <= 0 cannot satisfy the kernel condition
        assert!(matches!(
            shift_d_after_h(&ml_op(), 1.7),
            Err(ComposeError::Condition(_))
        ));
        // λ template margin: β-μ+α·e_min = 1.8-μ-0.9 needs μ < 0.9
        assert!(shift_d_after_h(&lam_op(), 0.85).is_ok());
        assert!(shift_d_after_h(&lam_op(), 0.95).is_err());
        assert!(shift_hilfer_after_h(&ml_op(), 1.2, 0.5).is_err());
        assert!(shift_hilfer_after_h(&ml_op(), 0.5, 1.5).is_err());
    }
}
