//! Integrals against exponentially decaying weights on ℝ, plus a
//! double-exponential rule for finite intervals with endpoint singularities.
//!
//! [`integrate_weighted`] uses composite 20-point Gauss-Legendre on a
//! truncated interval `[-X, X]`. `X` comes from the weight's known decay
//! rate, so no adaptive search for the tail is needed. Convergence is
//! checked by comparing against the same rule with twice as many panels.

use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::specfun::ModelParams;
use crate::{Error, Result};

const GL_ORDER: usize = 20;

/// Default absolute tolerance, measured against `max(1, ∫|f| w)`.
pub const DEFAULT_TOL: f64 = 1e-12;

/// Truncation and subdivision settings for [`integrate_weighted`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub tol: f64,
    pub max_halfwidth: f64,
    pub panels: usize,
}

impl QuadratureSpec {
    /// Settings for `∫ p(x) w(x) dx` where `w` decays like
    /// `|x|^{2λ-1} e^{-rate |x|}` and `p` has the given degree.
    ///
    /// `pole_distance` is the distance from the real axis to the nearest
    /// singularity of the weight; panels are kept no wider than
    /// `min(1, 2 * pole_distance)` so the Gauss rule stays spectrally accurate.
    pub fn for_decay(rate: f64, lambda: f64, degree: usize, pole_distance: f64, tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidParams(format!("tolerance must be positive, got {tol}")));
        }
        if !(rate > 0.0) {
            return Err(Error::InvalidParams(format!("weight must decay, rate = {rate}")));
        }
        let power = 2.0 * lambda - 1.0 + degree as f64;
        let target = -tol.ln() + 5.0;
        // rate·X − power·ln X = target; the left side is increasing once
        // X > power / rate, so bisect above that point.
        let g = |x: f64| rate * x - power * x.ln() - target;
        let mut lo = (power / rate).max(1.0);
        let mut hi = lo.max(1.0) * 2.0;
        while g(hi) < 0.0 {
            hi *= 2.0;
        }
        if g(lo) >= 0.0 {
            hi = lo;
        }
        for _ in 0..200 {
            if hi - lo <= 1e-9 * hi {
                break;
            }
            let mid = 0.5 * (lo + hi);
            if g(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let max_halfwidth = hi.max(4.0);
        let width = 1f64.min(2.0 * pole_distance);
        let panels = ((2.0 * max_halfwidth / width).ceil() as usize).max(8);
        Ok(Self { tol, max_halfwidth, panels })
    }

    /// Settings for polynomials of the given degree against the
    /// Meixner-Pollaczek weights of `params`.
    pub fn for_params(params: &ModelParams, degree: usize, tol: f64) -> Result<Self> {
        Self::for_decay(params.decay_rate(), params.lambda, degree, params.lambda, tol)
    }

    /// The same spec with the truncation bound scaled by `factor`.
    pub fn widened(&self, factor: f64) -> Self {
        let max_halfwidth = self.max_halfwidth * factor;
        let panels = ((self.panels as f64) * factor).ceil() as usize;
        Self { tol: self.tol, max_halfwidth, panels }
    }
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, computed once.
fn gauss_legendre() -> &'static ([f64; GL_ORDER], [f64; GL_ORDER]) {
    static RULE: OnceLock<([f64; GL_ORDER], [f64; GL_ORDER])> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut nodes = [0.0; GL_ORDER];
        let mut weights = [0.0; GL_ORDER];
        for i in 0..n.div_ceil(2) {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        (nodes, weights)
    })
}

/// Composite Gauss-Legendre on `[a, b]` split into `panels` equal pieces.
/// Returns `(∫ g, ∫ |g|)`; the sum runs in a fixed order.
pub fn composite_gauss<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, panels: usize) -> (f64, f64) {
    let (nodes, weights) = gauss_legendre();
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    let mut total_abs = 0.0;
    for p in 0..panels {
        let left = a + h * p as f64;
        let mid = left + 0.5 * h;
        let mut acc = 0.0;
        let mut acc_abs = 0.0;
        for (x, w) in nodes.iter().zip(weights.iter()) {
            let v = g(mid + 0.5 * h * x);
            acc += w * v;
            acc_abs += w * v.abs();
        }
        total += 0.5 * h * acc;
        total_abs += 0.5 * h * acc_abs;
    }
    (total, total_abs)
}

/// `∫ f(x) w(x) dx` over ℝ, where `log_weight` returns `log w(x)`.
///
/// The integrand is formed as `sign(f)·exp(log|f| + log w)` so large
/// polynomial values never meet tiny weights in floating point. The
/// tolerance is applied to `max(1, ∫|f| w)` so high moments, which can be
/// astronomically large, are held to relative accuracy.
pub fn integrate_weighted<F, W>(f: F, log_weight: W, spec: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
    W: Fn(f64) -> f64,
{
    let g = |x: f64| {
        let v = f(x);
        if v == 0.0 {
            0.0
        } else {
            v.signum() * (v.abs().ln() + log_weight(x)).exp()
        }
    };
    let x = spec.max_halfwidth;
    let (coarse, coarse_abs) = composite_gauss(g, -x, x, spec.panels);
    if coarse_abs == 0.0 {
        return Ok(0.0);
    }
    let (fine, fine_abs) = composite_gauss(g, -x, x, 2 * spec.panels);
    let scale = fine_abs.max(coarse_abs).max(1.0);
    let diff = (fine - coarse).abs();
    if diff > spec.tol * scale {
        return Err(Error::QuadratureNonConvergence { diff, tol: spec.tol * scale });
    }
    Ok(fine)
}

/// `∫_a^b g` by recursive bisection with a Gauss-Legendre panel rule.
///
/// A panel is accepted when it agrees with the sum over its two halves to
/// within its share (by length) of `tol·max(1, ∫|g|)`; otherwise both
/// halves are refined. Localized features such as a narrow peak get
/// refined without touching the rest of the interval. Meant for integrands
/// that are smooth after a substitution has removed endpoint singularities;
/// nodes stay strictly inside `[a, b]`.
pub fn gauss_adaptive<F: Fn(f64) -> f64>(g: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    const MAX_PANELS: usize = 1 << 16;
    let (_, coarse_abs) = composite_gauss(&g, a, b, 8);
    let target = tol * coarse_abs.max(1.0);
    let width = b - a;
    let mut total = 0.0;
    let mut worst = 0.0f64;
    let mut accepted = 0usize;
    let mut stack = vec![(a, b, composite_gauss(&g, a, b, 1).0, 0u32)];
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = 0.5 * (lo + hi);
        let left = composite_gauss(&g, lo, mid, 1).0;
        let right = composite_gauss(&g, mid, hi, 1).0;
        let diff = (left + right - whole).abs();
        let share = target * ((hi - lo) / width).abs();
        if diff <= share || depth >= 48 || accepted + stack.len() >= MAX_PANELS {
            if diff > share {
                worst = worst.max(diff);
            }
            total += left + right;
            accepted += 1;
        } else {
            stack.push((mid, hi, right, depth + 1));
            stack.push((lo, mid, left, depth + 1));
        }
    }
    if worst > target {
        return Err(Error::QuadratureNonConvergence { diff: worst, tol: target });
    }
    Ok(total)
}

/// [`gauss_adaptive`] after the substitution `u = lo + (hi − lo)(3τ² − 2τ³)`.
///
/// The Jacobian `6τ(1 − τ)` vanishes at both ends, which tames inverse
/// square roots, logarithms and `u log u` kinks sitting at either endpoint.
pub fn gauss_clustered<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64, tol: f64) -> Result<f64> {
    let width = hi - lo;
    gauss_adaptive(|t| g(lo + width * t * t * (3.0 - 2.0 * t)) * 6.0 * width * t * (1.0 - t), 0.0, 1.0, tol)
}

/// First error raised inside an integrand that must itself return `f64`.
#[derive(Debug, Default)]
pub struct ErrorSlot(std::cell::RefCell<Option<Error>>);

impl ErrorSlot {
    /// Keeps `e` unless an earlier error is already stored.
    pub fn put(&self, e: Error) {
        self.0.borrow_mut().get_or_insert(e);
    }

    /// Unwraps `r`, storing its error and substituting 0.
    pub fn value(&self, r: Result<f64>) -> f64 {
        r.unwrap_or_else(|e| {
            self.put(e);
            0.0
        })
    }

    /// The stored error if any, else `value`.
    pub fn finish<T>(self, value: Result<T>) -> Result<T> {
        match self.0.into_inner() {
            Some(e) => Err(e),
            None => value,
        }
    }
}

/// Tanh-sinh quadrature of `f` on `[a, b]`.
///
/// Endpoints are never evaluated, so integrable singularities there are
/// fine. Levels are refined until successive estimates agree to `tol`
/// absolutely.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    if b < a {
        return tanh_sinh(f, b, a, tol).map(|v| -v);
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    // Beyond t = 3.5 the offsets from the endpoints are below 1e-40·(b-a).
    let t_max = 3.5;
    let term = |t: f64| -> f64 {
        let u = 0.5 * PI * t.sinh();
        let cu = u.cosh();
        let w = 0.5 * PI * t.cosh() / (cu * cu);
        // Distance from the endpoint approached as t → ±∞.
        let offset = 2.0 * half / ((2.0 * u.abs()).exp() + 1.0);
        let x = if offset == 0.0 {
            return 0.0;
        } else if t > 0.0 {
            b - offset
        } else if t < 0.0 {
            a + offset
        } else {
            mid
        };
        if x <= a || x >= b {
            return 0.0;
        }
        half * w * f(x)
    };

    let mut h = 0.5;
    let mut sum = term(0.0);
    let mut k = 1;
    while k as f64 * h <= t_max {
        let t = k as f64 * h;
        sum += term(t) + term(-t);
        k += 1;
    }
    let mut estimate = h * sum;
    for _level in 0..12 {
        h *= 0.5;
        // Only the new odd-indexed abscissae are added.
        let mut k = 1;
        while k as f64 * h <= t_max {
            let t = k as f64 * h;
            sum += term(t) + term(-t);
            k += 2;
        }
        let next = h * sum;
        let diff = (next - estimate).abs();
        estimate = next;
        if diff <= tol {
            return Ok(estimate);
        }
    }
    let diff = (h * sum - estimate).abs();
    Err(Error::QuadratureNonConvergence { diff: diff.max(tol * 2.0), tol })
}

/// `∫_{y0}^∞ f(y) dy` for `f` decaying at least like `1/y²`, computed by
/// the substitution `y = y0 / v` and [`tanh_sinh`] on `(0, 1]`.
pub fn integrate_to_infinity<F>(f: F, y0: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if !(y0 > 0.0) {
        return Err(Error::InvalidParams(format!("lower limit must be positive, got {y0}")));
    }
    tanh_sinh(|v| f(y0 / v) * y0 / (v * v), 0.0, 1.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{log_mp_weight, Weight};

    #[test]
    fn adaptive_gauss_on_smooth_integrand() {
        let v = gauss_adaptive(|x: f64| x.cos() * (0.3 * x).exp(), 0.0, 7.0, 1e-13).unwrap();
        let exact = ((0.3 * 7.0f64).exp() * (0.3 * 7.0f64.cos() + 7.0f64.sin()) - 0.3) / 1.09;
        assert!((v - exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn clustered_rule_handles_endpoint_singularities() {
        let v = gauss_clustered(|x: f64| x.ln() + 1.0 / (1.0 - x).sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-10, "{v}");
    }

    #[test]
    fn gauss_rule_is_exact_for_polynomials() {
        let (nodes, weights) = gauss_legendre();
        let sum: f64 = weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-14);
        for m in 0..(2 * GL_ORDER) {
            let q: f64 = nodes.iter().zip(weights).map(|(x, w)| w * x.powi(m as i32)).sum();
            let exact = if m % 2 == 1 { 0.0 } else { 2.0 / (m as f64 + 1.0) };
            assert!((q - exact).abs() < 1e-14, "m = {m}");
        }
    }

    fn mp_integral(f: impl Fn(f64) -> f64, lambda: f64, t: f64, degree: usize) -> f64 {
        let p = ModelParams::new(lambda, t, if t == 0.0 { 0.1 } else { -t }).unwrap();
        let spec = QuadratureSpec::for_params(&p, degree, DEFAULT_TOL).unwrap();
        integrate_weighted(f, |x| log_mp_weight(x, &p, Weight::First), &spec).unwrap()
    }

    #[test]
    fn total_mass_of_weight() {
        assert!((mp_integral(|_| 1.0, 0.5, 0.0, 0) - 0.5).abs() < 1e-12);
        // Γ(2λ) / (2 cos t)^{2λ}
        for &(lambda, t) in &[(1.0, 0.3), (0.5, 1.2), (2.5, -0.7), (0.2, 0.4)] {
            let exact = statrs::function::gamma::gamma(2.0 * lambda) / (2.0 * f64::cos(t)).powf(2.0 * lambda);
            let q = mp_integral(|_| 1.0, lambda, t, 0);
            assert!((q - exact).abs() < 1e-10 * exact, "lambda {lambda} t {t}: {q} vs {exact}");
        }
    }

    #[test]
    fn odd_moment_vanishes() {
        assert!(mp_integral(|x| x, 0.7, 0.0, 1).abs() < 1e-13);
        assert!(mp_integral(|x| x.powi(5), 0.5, 0.0, 5).abs() < 1e-9);
    }

    #[test]
    fn second_moment_from_classical_recurrence() {
        // Monic recurrence x p_n = p_{n+1} + (n+λ) tan t p_n + n(n+2λ-1)/(4cos²t) p_{n-1}
        // gives ∫x² w = h₀ (a₀² + b₁) with a₀ = λ tan t and b₁ = 2λ / (4 cos² t).
        let lambda = 1.0;
        for &t in &[0.0, 0.4] {
            let h0 = 1.0 / (2.0 * f64::cos(t)).powi(2);
            let a0 = lambda * f64::tan(t);
            let b1 = 2.0 * lambda / (4.0 * f64::cos(t).powi(2));
            let exact = h0 * (a0 * a0 + b1);
            let q = mp_integral(|x| x * x, lambda, t, 2);
            assert!((q - exact).abs() < 1e-12, "t {t}: {q} vs {exact}");
        }
    }

    #[test]
    fn zero_integrand_is_exact() {
        let p = ModelParams::new(0.5, 0.1, -0.1).unwrap();
        let spec = QuadratureSpec::for_params(&p, 0, 1e-14).unwrap();
        let v = integrate_weighted(|_| 0.0, |x| log_mp_weight(x, &p, Weight::First), &spec).unwrap();
        assert_eq!(v, 0.0);
    }

    #[test]
    fn refinement_and_truncation_invariance() {
        let p = ModelParams::new(0.5, 0.6, -0.6).unwrap();
        let spec = QuadratureSpec::for_params(&p, 12, DEFAULT_TOL).unwrap();
        let lw = |x| log_mp_weight(x, &p, Weight::First);
        let f = |x: f64| x.powi(12) - 3.0 * x.powi(7) + 1.0;
        let base = integrate_weighted(f, lw, &spec).unwrap();
        let doubled = QuadratureSpec { panels: spec.panels * 2, ..spec };
        let wide = spec.widened(1.25);
        let scale = base.abs().max(1.0);
        assert!((integrate_weighted(f, lw, &doubled).unwrap() - base).abs() < 1e-12 * scale);
        assert!((integrate_weighted(f, lw, &wide).unwrap() - base).abs() < 1e-12 * scale);
    }

    #[test]
    fn nonconvergence_is_reported() {
        let spec = QuadratureSpec { tol: 1e-14, max_halfwidth: 50.0, panels: 8 };
        // A narrow spike the coarse rule cannot see.
        let r = integrate_weighted(|_| 1.0, |x: f64| -1e4 * (x - 0.3).powi(2), &spec);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence { .. })));
    }

    #[test]
    fn tanh_sinh_endpoint_singularities() {
        let v = tanh_sinh(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-10);
        let v = tanh_sinh(|x: f64| x.ln(), 0.0, 1.0, 1e-12).unwrap();
        assert!((v + 1.0).abs() < 1e-10);
        let v = tanh_sinh(|x: f64| (1.0 - x * x).sqrt(), -1.0, 1.0, 1e-12).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-11);
        let v = tanh_sinh(|x: f64| x, 2.0, 1.0, 1e-12).unwrap();
        assert!((v + 1.5).abs() < 1e-12);
    }

    #[test]
    fn semi_infinite_tail() {
        let v = integrate_to_infinity(|y| 1.0 / (y * y), 2.0, 1e-12).unwrap();
        assert!((v - 0.5).abs() < 1e-11);
        let v = integrate_to_infinity(|y: f64| 1.0 / (1.0 + y * y), 1.0, 1e-12).unwrap();
        assert!((v - PI / 4.0).abs() < 1e-11);
    }
}
