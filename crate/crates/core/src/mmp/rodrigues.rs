//! Pointwise check of the Rodrigues-type formula
//!
//! ```text
//! L_{t₁}^{k₁} L_{t₂}^{k₂} f_k = (−2i)^k cos^{k₁} t₁ cos^{k₂} t₂ · P_{k₁,k₂} · f_0,
//! ```
//!
//! where `f_m(x) = Γ(λ + m/2 + ix) Γ(λ + m/2 − ix)` and
//! `(L_t f)(x) = e^{it} f(x + i/2) − e^{−it} f(x − i/2)`.
//!
//! The operator product is expanded into its `2^k` shift terms. A term that
//! picks `+` from `p` operators and `−` from `q` shifts the argument by
//! `i(p − q)/2`, and `f_k` stays analytic there because both gamma
//! arguments keep real part at least `λ`.

use num_complex::Complex64;
use serde::Serialize;

use super::poly::{coefficient_vector, eval_poly};
use super::IndexPair;
use crate::specfun::{log_gamma, ModelParams};
use crate::{Error, Result};

/// Largest total degree accepted (the expansion has `2^k` terms).
pub const MAX_RODRIGUES_DEGREE: usize = 12;

/// `(L_{ops[0]} ∘ L_{ops[1]} ∘ ... f_k)(x) / f_0(x)` with `k = ops.len()`.
///
/// Terms are accumulated in the order given by the operator sequence, so
/// two orderings of the same operators sum different term sequences.
pub fn rodrigues_lhs(ops: &[f64], lambda: f64, x: f64) -> Result<Complex64> {
    let k = ops.len();
    if k > MAX_RODRIGUES_DEGREE {
        return Err(Error::InvalidParams(format!("Rodrigues expansion limited to degree {MAX_RODRIGUES_DEGREE}")));
    }
    let half_k = k as f64 / 2.0;
    let log_f0 = 2.0 * log_gamma(Complex64::new(lambda, x))?.re;
    let mut total = Complex64::new(0.0, 0.0);
    for mask in 0..(1u32 << k) {
        let mut phase = Complex64::new(1.0, 0.0);
        let mut shift = 0.0;
        for (bit, &t) in ops.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                phase *= Complex64::from_polar(1.0, t);
                shift += 0.5;
            } else {
                phase *= -Complex64::from_polar(1.0, -t);
                shift -= 0.5;
            }
        }
        // f_k(x + i·shift) = Γ(λ + k/2 − shift + ix) Γ(λ + k/2 + shift − ix)
        let g1 = log_gamma(Complex64::new(lambda + half_k - shift, x))?;
        let g2 = log_gamma(Complex64::new(lambda + half_k + shift, -x))?;
        total += phase * (g1 + g2 - log_f0).exp();
    }
    Ok(total)
}

/// Outcome of [`rodrigues_check`] at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RodriguesReport {
    /// Relative discrepancy with the `t₁` operators applied outermost.
    pub discrepancy: f64,
    /// Relative discrepancy with the `t₂` operators applied outermost.
    pub swapped_discrepancy: f64,
    /// Relative difference between the two operator orders.
    pub order_difference: f64,
}

/// Compares both sides of the Rodrigues formula at `x`.
///
/// The left side divided by `(−2i)^k cos^{k₁} t₁ cos^{k₂} t₂ f_0(x)` should
/// equal `P_{k₁,k₂}(x)`. Differences are measured against
/// `max(|P(x)|, Σ |p_i| |x|^i)`, the natural rounding scale for evaluating
/// `P` at `x`.
pub fn rodrigues_check(idx: IndexPair, params: &ModelParams, x: f64) -> Result<RodriguesReport> {
    let k = idx.degree();
    let mut outer_first = vec![params.t1; idx.k1];
    outer_first.extend(std::iter::repeat(params.t2).take(idx.k2));
    let mut outer_second = vec![params.t2; idx.k2];
    outer_second.extend(std::iter::repeat(params.t1).take(idx.k1));

    let c = Complex64::new(0.0, -2.0).powu(k as u32) * params.t1.cos().powi(idx.k1 as i32) * params.t2.cos().powi(idx.k2 as i32);
    let lhs1 = rodrigues_lhs(&outer_first, params.lambda, x)? / c;
    let lhs2 = rodrigues_lhs(&outer_second, params.lambda, x)? / c;
    let p = eval_poly(idx, params, Complex64::new(x, 0.0));
    let coeffs = coefficient_vector(idx, params)?;
    let rounding_scale: f64 = coeffs.iter().enumerate().map(|(i, c)| c.abs() * x.abs().powi(i as i32)).sum();
    let scale = p.norm().max(rounding_scale);
    Ok(RodriguesReport {
        discrepancy: (lhs1 - p).norm() / scale,
        swapped_discrepancy: (lhs2 - p).norm() / scale,
        order_difference: (lhs1 - lhs2).norm() / scale,
    })
}
