//! Evaluation of `P_{k₁,k₂}` on the index lattice.
//!
//! A step in either direction needs polynomials off the walked path, so the
//! whole rectangle `[0,k₁]×[0,k₂]` is filled in order of total degree.
//! Points on the requested path are reached with the path's own step;
//! everything else uses a first-direction step when `k₁ > 0`.

use num_complex::Complex64;
use twofloat::TwoFloat;

use super::coeffs::{recurrence_coeffs, scaled_coeffs, RecurrenceCoeffs};
use super::{IndexPair, StaircasePath};
use crate::specfun::{ModelParams, Weight};
use crate::{Error, Result};

/// Largest degree for the extended-precision coefficient expansion.
pub const MAX_COEFF_DEGREE: usize = 60;

/// Lattice points multiplied by `b` and `c` when stepping from `from` in
/// `direction`.
pub(crate) fn step_partners(from: IndexPair, direction: Weight) -> (Option<IndexPair>, Option<IndexPair>) {
    let (i, j) = (from.k1, from.k2);
    let diag = (i >= 1 && j >= 1).then(|| IndexPair::new(i - 1, j - 1));
    let b = match direction {
        Weight::First if j >= 1 => Some(IndexPair::new(i, j - 1)),
        Weight::First if i >= 1 => Some(IndexPair::new(i - 1, 0)),
        Weight::Second if i >= 1 => Some(IndexPair::new(i - 1, j)),
        Weight::Second if j >= 1 => Some(IndexPair::new(0, j - 1)),
        _ => None,
    };
    (b, diag)
}

/// Fills the lattice rectangle up to `target` and returns the value there.
///
/// `step(prev, coeffs, b_partner, c_partner)` produces the next polynomial
/// in whatever representation `T` uses.
pub(crate) fn lattice<T: Clone>(
    target: IndexPair,
    path: Option<&StaircasePath>,
    params: &ModelParams,
    one: T,
    step: impl Fn(&T, &RecurrenceCoeffs, Option<&T>, Option<&T>) -> T,
) -> T {
    let (n1, n2) = (target.k1 + 1, target.k2 + 1);
    let at = |p: IndexPair| p.k1 * n2 + p.k2;
    // Direction used to reach each point; `None` means the default policy.
    let mut arrival: Vec<Option<Weight>> = vec![None; n1 * n2];
    if let Some(path) = path {
        let mut here = IndexPair::new(0, 0);
        for &d in &path.steps {
            here = here.step(d);
            if here.k1 < n1 && here.k2 < n2 {
                arrival[at(here)] = Some(d);
            }
        }
    }
    let mut table: Vec<Option<T>> = vec![None; n1 * n2];
    table[0] = Some(one);
    for degree in 1..=target.degree() {
        let lo = degree.saturating_sub(target.k2);
        let hi = degree.min(target.k1);
        for i in lo..=hi {
            let here = IndexPair::new(i, degree - i);
            let direction = arrival[at(here)].unwrap_or(if i > 0 { Weight::First } else { Weight::Second });
            let from = here.back(direction).expect("arrival direction has a predecessor");
            let coeffs = recurrence_coeffs(from, params, direction);
            let (b_partner, c_partner) = step_partners(from, direction);
            let get = |p: Option<IndexPair>| p.and_then(|p| table[at(p)].as_ref());
            let prev = table[at(from)].as_ref().expect("filled in degree order");
            let value = step(prev, &coeffs, get(b_partner), if coeffs.c != 0.0 { get(c_partner) } else { None });
            table[at(here)] = Some(value);
        }
    }
    table[at(target)].take().expect("target filled")
}

fn complex_step(x: Complex64) -> impl Fn(&Complex64, &RecurrenceCoeffs, Option<&Complex64>, Option<&Complex64>) -> Complex64 {
    move |p, r, pb, pc| {
        let mut v = (x - r.a) * p;
        if let Some(pb) = pb {
            v -= r.b * pb;
        }
        if let Some(pc) = pc {
            v -= r.c * pc;
        }
        v
    }
}

/// `P_{k₁,k₂}(x)` along the canonical path.
pub fn eval_poly(idx: IndexPair, params: &ModelParams, x: Complex64) -> Complex64 {
    let path = StaircasePath::canonical(idx);
    eval_along(&path, params, x)
}

/// `P(x)` at the terminal point of `path`, generated along that path.
pub fn eval_along(path: &StaircasePath, params: &ModelParams, x: Complex64) -> Complex64 {
    lattice(path.terminal(), Some(path), params, Complex64::new(1.0, 0.0), complex_step(x))
}

/// `(P_{k₁,k₂}(x), P'_{k₁,k₂}(x))` for real `x`, along the canonical path.
pub fn eval_with_derivative(idx: IndexPair, params: &ModelParams, x: f64) -> (f64, f64) {
    let path = StaircasePath::canonical(idx);
    lattice(idx, Some(&path), params, (1.0, 0.0), |&(p, dp), r, pb, pc| {
        let mut v = (x - r.a) * p;
        let mut dv = p + (x - r.a) * dp;
        if let Some(&(q, dq)) = pb {
            v -= r.b * q;
            dv -= r.b * dq;
        }
        if let Some(&(q, dq)) = pc {
            v -= r.c * q;
            dv -= r.c * dq;
        }
        (v, dv)
    })
}

/// Monic coefficients (constant term first) in double-double arithmetic.
pub fn coefficient_vector_dd(idx: IndexPair, params: &ModelParams) -> Result<Vec<TwoFloat>> {
    if idx.degree() > MAX_COEFF_DEGREE {
        return Err(Error::InvalidParams(format!(
            "coefficient expansion is limited to degree {MAX_COEFF_DEGREE}, got {}",
            idx.degree()
        )));
    }
    let path = StaircasePath::canonical(idx);
    let one = vec![TwoFloat::from(1.0)];
    Ok(lattice(idx, Some(&path), params, one, |p, r, pb, pc| {
        let mut next = vec![TwoFloat::from(0.0); p.len() + 1];
        for (i, &v) in p.iter().enumerate() {
            next[i + 1] += v;
            next[i] -= v * r.a;
        }
        if let Some(pb) = pb {
            for (i, &v) in pb.iter().enumerate() {
                next[i] -= v * r.b;
            }
        }
        if let Some(pc) = pc {
            for (i, &v) in pc.iter().enumerate() {
                next[i] -= v * r.c;
            }
        }
        next
    }))
}

/// Monic coefficients (constant term first), rounded to `f64`.
pub fn coefficient_vector(idx: IndexPair, params: &ModelParams) -> Result<Vec<f64>> {
    Ok(coefficient_vector_dd(idx, params)?.into_iter().map(f64::from).collect())
}

/// `Q_{k,n}(x)` for the rescaled diagonal sequence, by its four-term recurrence.
pub fn eval_diagonal_scaled(k: usize, n: usize, params: &ModelParams, x: Complex64) -> Complex64 {
    let (mut q2, mut q1, mut q0) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0));
    for j in 0..k {
        let r = scaled_coeffs(j, n, params);
        let next = (x - r.a) * q0 - r.b * q1 - r.c * q2;
        q2 = q1;
        q1 = q0;
        q0 = next;
    }
    q0
}

/// `Q_{k,n}(x) / Q_{k+r,n}(x)`, with intermediate rescaling so large `k`
/// never overflows.
pub(crate) fn diagonal_ratio(k: usize, r: usize, n: usize, params: &ModelParams, x: Complex64) -> Complex64 {
    let mut values = Vec::with_capacity(k + r + 1);
    values.push(Complex64::new(1.0, 0.0));
    for j in 0..k + r {
        let c = scaled_coeffs(j, n, params);
        let mut next = (x - c.a) * values[j];
        if j >= 1 {
            next -= c.b * values[j - 1];
        }
        if j >= 2 {
            next -= c.c * values[j - 2];
        }
        values.push(next);
        let mag = next.norm();
        if mag > 1e100 {
            for v in values.iter_mut() {
                *v *= 1e-100;
            }
        }
    }
    values[k] / values[k + r]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 0.5, -0.3).unwrap()
    }

    #[test]
    fn low_degree_values() {
        let p = params();
        let x = Complex64::new(0.37, 0.0);
        assert_eq!(eval_poly(IndexPair::new(0, 0), &p, x), Complex64::new(1.0, 0.0));
        let v = eval_poly(IndexPair::new(1, 0), &p, x);
        assert!((v.re - (0.37 - 0.5f64.tan())).abs() < 1e-15);
        let v = eval_poly(IndexPair::new(0, 1), &p, x);
        assert!((v.re - (0.37 + 0.3f64.tan())).abs() < 1e-15);
    }

    #[test]
    fn path_independence() {
        let p = params();
        let a = StaircasePath::from_digits(&[1, 1, 2, 2]).unwrap();
        let b = StaircasePath::from_digits(&[1, 2, 1, 2]).unwrap();
        let c = StaircasePath::from_digits(&[2, 2, 1, 1]).unwrap();
        for i in 0..20 {
            let x = Complex64::new(-3.0 + 0.31 * i as f64, 0.1 * (i % 3) as f64);
            let va = eval_along(&a, &p, x);
            let vb = eval_along(&b, &p, x);
            let vc = eval_along(&c, &p, x);
            let scale = va.norm().max(1.0);
            assert!((va - vb).norm() < 1e-10 * scale && (va - vc).norm() < 1e-10 * scale, "x = {x}");
        }
    }

    #[test]
    fn coefficients_agree_with_evaluation() {
        let p = params();
        let idx = IndexPair::new(4, 3);
        let coeffs = coefficient_vector(idx, &p).unwrap();
        assert_eq!(coeffs.len(), 8);
        assert_eq!(coeffs[7], 1.0);
        for &x in &[-2.0, -0.3, 0.8, 1.9] {
            let horner = coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c);
            let direct = eval_poly(idx, &p, Complex64::new(x, 0.0)).re;
            assert!((horner - direct).abs() < 1e-11 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let p = params();
        let idx = IndexPair::new(3, 2);
        let x = 0.41;
        let h = 1e-6;
        let (_, d) = eval_with_derivative(idx, &p, x);
        let fd = (eval_with_derivative(idx, &p, x + h).0 - eval_with_derivative(idx, &p, x - h).0) / (2.0 * h);
        assert!((d - fd).abs() < 1e-6 * d.abs().max(1.0));
    }

    #[test]
    fn diagonal_sequence_matches_lattice() {
        let p = params();
        let n = 5;
        let x = Complex64::new(0.23, 0.0);
        for k in 0..9 {
            let idx = super::super::coeffs::diagonal_index(k);
            let direct = eval_poly(idx, &p, x * n as f64) / (n as f64).powi(k as i32);
            let scaled = eval_diagonal_scaled(k, n, &p, x);
            assert!((direct - scaled).norm() < 1e-12 * scaled.norm().max(1.0), "k = {k}");
        }
        let ratio = diagonal_ratio(3, 2, n, &p, x);
        let expected = eval_diagonal_scaled(3, n, &p, x) / eval_diagonal_scaled(5, n, &p, x);
        assert!((ratio - expected).norm() < 1e-12 * expected.norm());
    }

    #[test]
    fn degree_cap() {
        assert!(coefficient_vector(IndexPair::new(31, 30), &params()).is_err());
    }
}
