use serde::{Deserialize, Serialize};

use super::IndexPair;
use crate::specfun::{ModelParams, Weight};

/// Coefficients of one recurrence step `x P = P_next + a P + b P_b + c P_c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RecurrenceCoeffs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Closed-form coefficients for the step from `idx` in `direction`.
///
/// For a step in the first direction
///
/// ```text
/// a = (k + k₁ + 2λ)/2 · tan t₁ + k₂/2 · tan t₂
/// b = (k + 2λ − 1)/4 · (k₁/cos² t₁ + k₂/cos² t₂)
/// c = k₁ (k + 2λ − 1)(k + 2λ − 2)(tan t₁ − tan t₂) / (8 cos² t₁)
/// ```
///
/// and the second direction swaps the roles of the indices and of `t₁, t₂`.
/// `c` is reported as 0 when the polynomial it multiplies does not exist
/// (`k₂ = 0` for the first direction, `k₁ = 0` for the second).
pub fn recurrence_coeffs(idx: IndexPair, params: &ModelParams, direction: Weight) -> RecurrenceCoeffs {
    match direction {
        Weight::First => first_direction(idx, params),
        Weight::Second => first_direction(idx.swapped(), &params.swapped()),
    }
}

fn first_direction(idx: IndexPair, params: &ModelParams) -> RecurrenceCoeffs {
    let lambda = params.lambda;
    let (k1, k2) = (idx.k1 as f64, idx.k2 as f64);
    let k = k1 + k2;
    let (tan1, tan2) = (params.t1.tan(), params.t2.tan());
    let sec1 = 1.0 / params.t1.cos().powi(2);
    let sec2 = 1.0 / params.t2.cos().powi(2);
    let a = 0.5 * (k + k1 + 2.0 * lambda) * tan1 + 0.5 * k2 * tan2;
    let b = 0.25 * (k + 2.0 * lambda - 1.0) * (k1 * sec1 + k2 * sec2);
    let c = if idx.k2 == 0 {
        0.0
    } else {
        k1 * (k + 2.0 * lambda - 1.0) * (k + 2.0 * lambda - 2.0) * (tan1 - tan2) * sec1 / 8.0
    };
    RecurrenceCoeffs { a, b, c }
}

/// Index pair of the `k`-th polynomial of the diagonal sequence:
/// `(k/2, k/2)` for even `k`, `((k+1)/2, (k−1)/2)` for odd `k`.
pub fn diagonal_index(k: usize) -> IndexPair {
    if k % 2 == 0 {
        IndexPair::new(k / 2, k / 2)
    } else {
        IndexPair::new(k.div_ceil(2), k / 2)
    }
}

/// Coefficients of the rescaled diagonal sequence `Q_{k,n}(x) = n^{-k} Q_k(n x)`:
/// `x Q_{k,n} = Q_{k+1,n} + a Q_{k,n} + b Q_{k−1,n} + c Q_{k−2,n}`.
///
/// Even `k` steps in the first direction from `(k/2, k/2)`, odd `k` in the
/// second direction from `((k+1)/2, (k−1)/2)`; `a, b, c` carry the factors
/// `1/n, 1/n², 1/n³`.
pub fn scaled_coeffs(k: usize, n: usize, params: &ModelParams) -> RecurrenceCoeffs {
    let idx = diagonal_index(k);
    let direction = if k % 2 == 0 { Weight::First } else { Weight::Second };
    let raw = recurrence_coeffs(idx, params, direction);
    let n = n as f64;
    RecurrenceCoeffs { a: raw.a / n, b: raw.b / (n * n), c: raw.c / (n * n * n) }
}
