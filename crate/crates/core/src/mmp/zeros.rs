//! Zeros of the polynomials, interlacing checks and zero-counting measures.
//!
//! Zeros are never taken from a general eigensolver: the recurrence
//! matrices are far from normal and QR smears their real spectra into the
//! complex plane. Instead every zero is isolated by a sign change, using the
//! interlacing of neighbouring polynomials to supply brackets.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;
use twofloat::TwoFloat;

use super::coeffs::scaled_coeffs;
use super::poly::{diagonal_ratio, eval_with_derivative};
use super::{IndexPair, StaircasePath};
use crate::linalg::{bracketed_newton, build_recurrence_matrix, interlacing_cascade, interlacing_spectrum, BandedMatrix};
use crate::measure::EmpiricalMeasure;
use crate::specfun::ModelParams;
use crate::{Error, Result};

/// Recurrence matrix of the rescaled diagonal sequence `Q_{k,scaling}`,
/// `k < n`; its characteristic polynomial is `Q_{n,scaling}`.
pub fn diagonal_matrix(n: usize, scaling: usize, params: &ModelParams) -> BandedMatrix {
    build_recurrence_matrix(
        |k| {
            let r = scaled_coeffs(k, scaling, params);
            (r.a, r.b, r.c)
        },
        n,
    )
}

/// Zeros of `Q_{n,scaling}(x) = scaling^{-n} Q_n(scaling · x)` in increasing order.
pub fn diagonal_zeros(n: usize, scaling: usize, params: &ModelParams) -> Result<Vec<f64>> {
    if scaling == 0 {
        return Err(Error::InvalidParams("scaling must be positive".into()));
    }
    let z = interlacing_spectrum(&diagonal_matrix(n, scaling, params))?;
    ensure_increasing(&z, n)?;
    Ok(z)
}

/// Zeros of `Q_{k,scaling}` for every `k = 1..=n`.
pub fn diagonal_zeros_cascade(n: usize, scaling: usize, params: &ModelParams) -> Result<Vec<Vec<f64>>> {
    if scaling == 0 {
        return Err(Error::InvalidParams("scaling must be positive".into()));
    }
    interlacing_cascade(&diagonal_matrix(n, scaling, params))
}

fn ensure_increasing(z: &[f64], degree: usize) -> Result<()> {
    for w in z.windows(2) {
        if !(w[0] < w[1]) {
            return Err(Error::Interlacing { degree, lo: w[0], hi: w[1] });
        }
    }
    Ok(())
}

/// Zeros of `P_{idx}` bracketed by the zeros of a neighbour of degree one less.
///
/// Inner brackets come from consecutive neighbour zeros; the outer two are
/// grown geometrically until the sign at infinity is reached.
fn zeros_from_neighbor(idx: IndexPair, params: &ModelParams, neighbor: &[f64]) -> Result<Vec<f64>> {
    let d = idx.degree();
    debug_assert_eq!(neighbor.len() + 1, d);
    let f = |x: f64| eval_with_derivative(idx, params, x);
    let sign_at_minus_inf = if d % 2 == 0 { 1.0 } else { -1.0 };
    let (low_anchor, high_anchor) = match (neighbor.first(), neighbor.last()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => (0.0, 0.0),
    };
    let mut step = 1.0 + 0.5 * (high_anchor - low_anchor);
    let mut hi = high_anchor + step;
    while f(hi).0 <= 0.0 {
        step *= 2.0;
        hi = high_anchor + step;
        if !hi.is_finite() {
            return Err(Error::Interlacing { degree: d, lo: high_anchor, hi });
        }
    }
    let mut step = 1.0 + 0.5 * (high_anchor - low_anchor);
    let mut lo = low_anchor - step;
    while f(lo).0 * sign_at_minus_inf <= 0.0 {
        step *= 2.0;
        lo = low_anchor - step;
        if !lo.is_finite() {
            return Err(Error::Interlacing { degree: d, lo, hi: low_anchor });
        }
    }
    let mut edges = Vec::with_capacity(d + 1);
    edges.push(lo);
    edges.extend_from_slice(neighbor);
    edges.push(hi);
    if d == 1 {
        edges = vec![lo, hi];
    }
    let mut out = Vec::with_capacity(d);
    for w in edges.windows(2) {
        let root = bracketed_newton(f, w[0], w[1]).ok_or(Error::Interlacing { degree: d, lo: w[0], hi: w[1] })?;
        out.push(root);
    }
    ensure_increasing(&out, d)?;
    Ok(out)
}

/// Zeros of `P_{k₁,k₂}` in increasing order, following the canonical path
/// and bracketing each polynomial's zeros by its predecessor's.
pub fn zeros(idx: IndexPair, params: &ModelParams) -> Result<Vec<f64>> {
    let mut current: Vec<f64> = Vec::new();
    for point in StaircasePath::canonical(idx).points().into_iter().skip(1) {
        current = zeros_from_neighbor(point, params, &current)?;
    }
    Ok(current)
}

/// Zeros of every `P_{k₁,k₂}` with `1 ≤ k₁ + k₂ ≤ max_degree`.
#[derive(Debug, Clone, Default)]
pub struct PairZeros {
    pub zeros: BTreeMap<IndexPair, Vec<f64>>,
}

/// Computes [`PairZeros`] degree by degree; each pair is bracketed by the
/// zeros of `(k₁−1, k₂)`, or of `(0, k₂−1)` on the boundary `k₁ = 0`.
pub fn all_pair_zeros(max_degree: usize, params: &ModelParams) -> Result<PairZeros> {
    let mut map: BTreeMap<IndexPair, Vec<f64>> = BTreeMap::new();
    map.insert(IndexPair::new(0, 0), Vec::new());
    for d in 1..=max_degree {
        for k1 in 0..=d {
            let idx = IndexPair::new(k1, d - k1);
            let neighbor = if k1 > 0 { IndexPair::new(k1 - 1, d - k1) } else { IndexPair::new(0, d - 1) };
            let z = zeros_from_neighbor(idx, params, &map[&neighbor])?;
            map.insert(idx, z);
        }
    }
    map.remove(&IndexPair::new(0, 0));
    Ok(PairZeros { zeros: map })
}

/// Smallest gap in the strict interlacing `outer[i] < inner[i] < outer[i+1]`;
/// negative or zero when it fails.
pub fn interlace_margin(outer: &[f64], inner: &[f64]) -> f64 {
    assert_eq!(outer.len(), inner.len() + 1);
    let mut margin = f64::INFINITY;
    for (i, &y) in inner.iter().enumerate() {
        margin = margin.min(y - outer[i]).min(outer[i + 1] - y);
    }
    margin
}

/// Result of comparing `P_{k₁,k₂}`'s zeros with those of its lower neighbours.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterlacingReport {
    pub idx: IndexPair,
    pub interlaces: bool,
    /// Smallest distance between a zero and a neighbour's zero (infinite when
    /// no neighbour has zeros).
    pub margin: f64,
    /// Neighbour whose zeros fail to interlace, if any.
    pub violating_neighbor: Option<IndexPair>,
}

/// Interlacing report for one pair given precomputed zeros.
pub fn interlacing_from_zeros(idx: IndexPair, zeros_of: impl Fn(IndexPair) -> Vec<f64>) -> InterlacingReport {
    let outer = zeros_of(idx);
    let mut report = InterlacingReport { idx, interlaces: true, margin: f64::INFINITY, violating_neighbor: None };
    for neighbor in [idx.back(super::Weight::First), idx.back(super::Weight::Second)].into_iter().flatten() {
        let inner = zeros_of(neighbor);
        let m = interlace_margin(&outer, &inner);
        if m < report.margin {
            report.margin = m;
        }
        if !(m > 0.0) && report.interlaces {
            report.interlaces = false;
            report.violating_neighbor = Some(neighbor);
        }
    }
    report
}

/// Checks that the zeros of `P_{k₁,k₂}` interlace those of `P_{k₁−1,k₂}` and
/// `P_{k₁,k₂−1}`. Each zero set is computed independently.
pub fn interlacing_check(idx: IndexPair, params: &ModelParams) -> Result<InterlacingReport> {
    if idx.degree() == 0 {
        return Err(Error::InvalidParams("interlacing needs degree at least 1".into()));
    }
    let mut cache: BTreeMap<IndexPair, Vec<f64>> = BTreeMap::new();
    for p in [Some(idx), idx.back(super::Weight::First), idx.back(super::Weight::Second)].into_iter().flatten() {
        cache.insert(p, zeros(p, params)?);
    }
    Ok(interlacing_from_zeros(idx, |p| cache[&p].clone()))
}

/// Normalized zero-counting measure of `Q_{n,n}`: atoms at the zeros of
/// `Q_n(n x)`.
pub fn zero_counting_cdf(n: usize, params: &ModelParams) -> Result<EmpiricalMeasure> {
    Ok(EmpiricalMeasure::new(diagonal_zeros(n, n, params)?))
}

/// `Q_{n−r,n}(x) / Q_{n,n}(x)`.
pub fn ratio_asymptotic(n: usize, r: usize, params: &ModelParams, x: Complex64) -> Result<Complex64> {
    if r > n {
        return Err(Error::InvalidParams(format!("ratio offset {r} exceeds degree {n}")));
    }
    Ok(diagonal_ratio(n - r, r, n, params, x))
}

/// Newton refinement of approximate real roots, evaluating the polynomial
/// (constant term first) in double-double arithmetic.
pub fn polish_real_roots(coeffs: &[TwoFloat], guesses: &[f64]) -> Vec<f64> {
    let horner = |x: f64| {
        let x = TwoFloat::from(x);
        let mut p = TwoFloat::from(0.0);
        let mut dp = TwoFloat::from(0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (f64::from(p), f64::from(dp))
    };
    guesses
        .iter()
        .map(|&g| {
            let mut x = g;
            for _ in 0..60 {
                let (p, dp) = horner(x);
                if dp == 0.0 {
                    break;
                }
                let dx = p / dp;
                x -= dx;
                if dx.abs() <= 1e-15 * x.abs().max(1e-300) {
                    break;
                }
            }
            x
        })
        .collect()
}
