use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::poly::eval_with_derivative;
use super::IndexPair;
use crate::quadrature::{composite_gauss, integrate_weighted, QuadratureSpec};
use crate::specfun::{log_gamma, log_mp_weight, ModelParams, Weight};
use crate::{Error, Result};

/// A real number stored as `sign · exp(log_abs)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignedLog {
    pub sign: f64,
    pub log_abs: f64,
}

impl SignedLog {
    pub fn value(&self) -> f64 {
        if self.sign == 0.0 {
            0.0
        } else {
            self.sign * self.log_abs.exp()
        }
    }

    pub fn from_value(v: f64) -> Self {
        Self { sign: if v == 0.0 { 0.0 } else { v.signum() }, log_abs: v.abs().ln() }
    }
}

fn ln_gamma_real(x: f64) -> f64 {
    log_gamma(Complex64::new(x, 0.0)).expect("positive argument").re
}

/// First non-vanishing moment `h^{(j)}_{k₁,k₂} = ∫ x^{k_j} P_{k₁,k₂}(x) w_j(x) dx`
/// from its closed form
///
/// ```text
/// h⁽¹⁾ = Γ(2λ+k) k₁! sin(t₁−t₂)^{k₂} / (2^{2λ+k+k₁} cos^{k+k₁+2λ} t₁ cos^{k₂} t₂)
/// ```
///
/// and the same with indices and `t₁, t₂` exchanged for `j = 2`.
pub fn first_moment(idx: IndexPair, params: &ModelParams, which: Weight) -> SignedLog {
    let (idx, params) = match which {
        Weight::First => (idx, *params),
        Weight::Second => (idx.swapped(), params.swapped()),
    };
    let lambda = params.lambda;
    let (k1, k2) = (idx.k1 as f64, idx.k2 as f64);
    let k = k1 + k2;
    let sin = (params.t1 - params.t2).sin();
    let log_abs = ln_gamma_real(2.0 * lambda + k) + ln_gamma_real(k1 + 1.0) + k2 * sin.abs().ln()
        - (2.0 * lambda + k + k1) * std::f64::consts::LN_2
        - (k + k1 + 2.0 * lambda) * params.t1.cos().ln()
        - k2 * params.t2.cos().ln();
    let sign = if idx.k2 % 2 == 1 { sin.signum() } else { 1.0 };
    SignedLog { sign, log_abs }
}

/// Sub-leading coefficient `γ = −(2λ + k − 1)/2 · (k₁ tan t₁ + k₂ tan t₂)`,
/// i.e. the coefficient of `x^{k−1}` in `P_{k₁,k₂}`.
pub fn subleading_coeff(idx: IndexPair, params: &ModelParams) -> f64 {
    let k = idx.degree() as f64;
    -0.5 * (2.0 * params.lambda + k - 1.0) * (idx.k1 as f64 * params.t1.tan() + idx.k2 as f64 * params.t2.tan())
}

/// `∫ x^m P_{k₁,k₂}(x) w_j(x) dx` and `∫ |x^m P_{k₁,k₂}(x)| w_j(x) dx`
/// by quadrature.
pub fn moment_by_quadrature(idx: IndexPair, params: &ModelParams, which: Weight, power: usize, tol: f64) -> Result<(f64, f64)> {
    let spec = QuadratureSpec::for_params(params, idx.degree() + power, tol)?;
    let f = |x: f64| eval_with_derivative(idx, params, x).0 * x.powi(power as i32);
    let lw = |x: f64| log_mp_weight(x, params, which);
    let value = integrate_weighted(f, lw, &spec)?;
    // |f| has kinks at the zeros, so only a scale is wanted here.
    let (magnitude, _) = composite_gauss(|x| f(x).abs() * lw(x).exp(), -spec.max_halfwidth, spec.max_halfwidth, 2 * spec.panels);
    Ok((value, magnitude))
}

/// Worst orthogonality condition of one polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrthogonalityReport {
    /// `max |∫ x^m P w_j| / ∫ |x^m P| w_j` over all conditions.
    pub residual: f64,
    /// Weight index and power of the worst condition, if any condition exists.
    pub worst: Option<(usize, usize)>,
}

/// Checks `∫ x^m P_{k₁,k₂} w_j = 0` for `m < k_j`, `j = 1, 2`. Each residual
/// is relative to `∫ |x^m P| w_j`, the scale at which cancellation happens.
/// Fails with [`Error::Orthogonality`] when the worst residual exceeds `limit`.
pub fn orthogonality_residual(idx: IndexPair, params: &ModelParams, limit: f64) -> Result<OrthogonalityReport> {
    let mut report = OrthogonalityReport { residual: 0.0, worst: None };
    for which in [Weight::First, Weight::Second] {
        for m in 0..idx.get(which) {
            let (v, mag) = moment_by_quadrature(idx, params, which, m, 1e-13)?;
            let r = v.abs() / mag;
            if report.worst.is_none() || r > report.residual {
                report = OrthogonalityReport { residual: r, worst: Some((which.index(), m)) };
            }
        }
    }
    if let Some((weight, power)) = report.worst {
        if report.residual > limit {
            return Err(Error::Orthogonality { weight, power, residual: report.residual });
        }
    }
    Ok(report)
}
