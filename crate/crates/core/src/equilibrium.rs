//! The constrained vector equilibrium problem solved by the limiting zero
//! distribution in the symmetric case `t₁ = −t₂ = t`, `b = tan t`.
//!
//! The pair `(ν₁, ν₂)` minimizes
//!
//! ```text
//! E(μ, ν) = I(μ, μ) + I(ν, ν) − I(μ, ν) + ∫ (π − 2t)|x| dμ(x)
//! ```
//!
//! over `μ` on ℝ of mass 1 and `ν` on iℝ of mass 1/2 with density at most
//! `σ = 2t/π`. Both components are `s`-averages of the measures on the
//! cuts: `ν_j = ∫₀¹ μ_j^s ds`. Since `μ_j^s(x) = μ̃_j(x/s)/s` with
//! `μ̃_j = μ_j^1`, the averages reduce to one-dimensional integrals over
//! the unit-scale density,
//!
//! ```text
//! ν₁(x)  = ∫_{|x|}^{c₁} μ̃₁(u)/u du,
//! ν₂(iy) = ∫_{max(|y|, c₂)}^{∞} μ̃₂(iu)/u du,
//! σ      = ∫_{c₂}^{∞} μ̃₂(iu)/u du = 2t/π.
//! ```
//!
//! The same exchange of integrals gives the logarithmic potentials of
//! `ν_j` as a single integral of `μ̃_j(u)/u` against the closed-form
//! potential of Lebesgue measure on `[−u, u]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::measure::{MeasureTable, SupportKind};
use crate::quadrature::{gauss_adaptive, gauss_clustered, tanh_sinh, ErrorSlot};
use crate::specfun::Weight;
use crate::toeplitz::{mu_density, mu_mass, roots_z, support_constants};
use crate::{Error, Result};

/// Relative distance from `c₁` inside which a failed branch selection is
/// read as the density having vanished.
const ENDPOINT_SLACK: f64 = 1e-6;

/// `u` beyond which `μ̃₂(iu)` is replaced by its `C/u²` tail.
const TAIL_CUTOFF: f64 = 1e6;

const QUAD_TOL: f64 = 1e-11;

fn check_b(b: f64) -> Result<()> {
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::InvalidParams(format!("b must be finite and positive, got {b}")));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !(t > 0.0 && t < PI / 2.0) {
        return Err(Error::InvalidParams(format!("t must lie in (0, π/2), got {t}")));
    }
    Ok(())
}

/// Density of `ν₁` from the closed form
///
/// ```text
/// dν₁/dx = (1/2π) log |(1 + iw)/(1 − iw)|,
/// w = (4 + z(b²−1))(4 + z(b²+1)) / (16 z |x|),
/// ```
///
/// with `z` the root of `(4 + z(b²+1))²(4 + zb²)/(64z) = x²` for which
/// `Im w < 0`. In terms of `u = 4 + (1+b²)z` this is
/// `w = u((b²−1)u + 8)/(16 (u − 4)|x|)`.
///
/// Writing `w = N/D`, the equation for `z` gives
/// `D² + N² = (1+b²)² u⁴`, so the density equals
/// `(1/π) log(|D + iN| / ((1+b²)|u|²))`, which stays accurate near `x = 0`.
///
/// Returns `+∞` at `x = 0` (logarithmic singularity) and 0 for `|x| ≥ c₁`.
pub fn nu1_density_closed(x: f64, b: f64) -> Result<f64> {
    check_b(b)?;
    let (c1, _) = support_constants(b)?;
    let ax = x.abs();
    if ax >= c1 {
        return Ok(0.0);
    }
    if ax == 0.0 {
        return Ok(f64::INFINITY);
    }
    let r = roots_z(Complex64::new(ax, 0.0), 1.0, b)?;
    let a = 1.0 + b * b;
    let i = Complex64::new(0.0, 1.0);
    // w = N/D with N = u((b²−1)u + 8), D = 16(u − 4)|x|, and u − 4 = Az
    // taken from z to avoid cancellation.
    let branch = r
        .u
        .iter()
        .zip(r.z.iter())
        .map(|(&u, &z)| {
            let n = u * ((b * b - 1.0) * u + 8.0);
            let d = 16.0 * a * z * ax;
            (u, n, d, n / d)
        })
        .filter(|(.., w)| w.im < 0.0)
        .min_by(|p, q| p.3.im.total_cmp(&q.3.im));
    match branch {
        Some((u, n, d, _)) => {
            // On the curve (D − iN)(D + iN) = A²u⁴, so the ratio needs only
            // the larger factor; D − iN itself cancels as x → 0.
            let v = ((d + i * n).norm() / (a * u.norm_sqr())).ln() / PI;
            Ok(v.max(0.0))
        }
        None if ax >= c1 * (1.0 - ENDPOINT_SLACK) => Ok(0.0),
        None => Err(Error::BranchSelection { x }),
    }
}

/// The `t → 0` limit of the density of `ν₁`:
/// `(1/2π) log((1 + √(1−x²))/(1 − √(1−x²)))` on `[−1, 1]`.
pub fn nu1_density_t0(x: f64) -> f64 {
    let ax = x.abs();
    if ax >= 1.0 {
        return 0.0;
    }
    if ax == 0.0 {
        return f64::INFINITY;
    }
    let r = (1.0 - ax * ax).sqrt();
    // 1 − r written without cancellation.
    ((1.0 + r) / (ax * ax / (1.0 + r))).ln() / (2.0 * PI)
}

/// Density of `ν₁` as the average `∫_{|x|/c₁}^1 μ₁^s(x) ds`, an oracle
/// independent of the closed form.
pub fn nu1_density_averaged(x: f64, b: f64) -> Result<f64> {
    check_b(b)?;
    let (c1, _) = support_constants(b)?;
    let ax = x.abs();
    if ax >= c1 {
        return Ok(0.0);
    }
    if ax == 0.0 {
        return Ok(f64::INFINITY);
    }
    let s0 = ax / c1;
    let err = ErrorSlot::default();
    // s = s₀ + (1 − s₀)τ² absorbs the inverse square root at s = s₀,
    // where x sits at the endpoint of Γ₁(s).
    let v = gauss_adaptive(
        |tau| {
            let s = s0 + (1.0 - s0) * tau * tau;
            err.value(mu_density(Complex64::new(ax, 0.0), s, b, Weight::First)) * 2.0 * (1.0 - s0) * tau
        },
        0.0,
        1.0,
        QUAD_TOL,
    );
    err.finish(v)
}

/// `∫_0^{x} dν₁` for `0 ≤ x ≤ c₁`, from the closed-form density.
fn nu1_half_mass(x: f64, b: f64) -> Result<f64> {
    let err = ErrorSlot::default();
    let v = tanh_sinh(|y| err.value(nu1_density_closed(y, b)), 0.0, x, 1e-10);
    err.finish(v)
}

/// Total mass of `ν₁` from the closed-form density.
pub fn nu1_mass(b: f64) -> Result<f64> {
    let (c1, _) = support_constants(b)?;
    Ok(2.0 * nu1_half_mass(c1, b)?)
}

/// Distribution function of `ν₁`, assuming the mass is 1 and symmetric.
pub fn nu1_cdf(x: f64, b: f64) -> Result<f64> {
    check_b(b)?;
    let (c1, _) = support_constants(b)?;
    if x.abs() >= c1 {
        return Ok(if x > 0.0 { 1.0 } else { 0.0 });
    }
    let half = nu1_half_mass(x.abs(), b)?;
    Ok(if x >= 0.0 { 0.5 + half } else { 0.5 - half })
}

/// `∫_{lo}^{∞} μ̃₂(iu)/u du` for `lo ≥ c₂`, substituting `u = c₂ cosh v`
/// (inverse square root at `c₂`) and adding the `C/u²` tail of `μ̃₂`.
fn mu2_over_u_tail(lo: f64, b: f64) -> Result<f64> {
    let (_, c2) = support_constants(b)?;
    let cutoff = TAIL_CUTOFF * c2.max(1.0);
    let dens = |u: f64| mu_density(Complex64::new(0.0, u), 1.0, b, Weight::Second);
    let err = ErrorSlot::default();
    let v0 = (lo / c2).max(1.0).acosh();
    let body = gauss_adaptive(
        |v| {
            let u = c2 * v.cosh();
            err.value(dens(u)) / u * c2 * v.sinh()
        },
        v0,
        (cutoff / c2).acosh(),
        QUAD_TOL,
    );
    let body = err.finish(body)?;
    // ∫_U^∞ C/u³ du = C/(2U²) with C = μ̃₂(iU)U².
    Ok(body + 0.5 * dens(cutoff)?)
}

/// Density of `ν₂` at `iy` with respect to `|dy|`.
pub fn nu2_density(y: f64, b: f64) -> Result<f64> {
    check_b(b)?;
    mu2_over_u_tail(y.abs(), b)
}

/// `V(x) = (π − 2t)|x|`.
pub fn external_field(x: f64, t: f64) -> Result<f64> {
    check_t(t)?;
    Ok((PI - 2.0 * t) * x.abs())
}

/// `V(x) = (1/2) ∫_0^{|x|/c₁} log(|z₂(x,s)|/|z₁(x,s)|) ds` by quadrature.
/// Beyond `s = |x|/c₁` the point is on `Γ₁(s)` and the integrand vanishes.
pub fn external_field_numeric(x: f64, t: f64) -> Result<f64> {
    check_t(t)?;
    let b = t.tan();
    let (c1, _) = support_constants(b)?;
    let ax = x.abs();
    if ax == 0.0 {
        return Ok(0.0);
    }
    let err = ErrorSlot::default();
    let v = tanh_sinh(
        |s| {
            err.value(roots_z(Complex64::new(ax, 0.0), s, b).map(|r| (r.z2().norm() / r.z1().norm()).ln()))
        },
        0.0,
        ax / c1,
        1e-9 * ax.max(1.0),
    );
    Ok(0.5 * err.finish(v)?)
}

/// `2t/π`, the density of the constraint `σ`.
pub fn sigma_density(t: f64) -> Result<f64> {
    check_t(t)?;
    Ok(2.0 * t / PI)
}

/// `σ(iy) = ∫_0^{|y|/c₂} μ₂^s(iy) ds` by quadrature.
pub fn sigma_density_numeric(y: f64, t: f64) -> Result<f64> {
    check_t(t)?;
    let b = t.tan();
    let (_, c2) = support_constants(b)?;
    let ay = y.abs();
    if ay == 0.0 {
        return Err(Error::Domain("the s-range is empty at y = 0".into()));
    }
    let top = ay / c2;
    let err = ErrorSlot::default();
    // s = S(1 − τ²) puts the endpoint of Γ₂(s) at τ = 0.
    let v = gauss_adaptive(
        |tau| {
            let s = top * (1.0 - tau * tau);
            err.value(mu_density(Complex64::new(0.0, ay), s, b, Weight::Second)) * 2.0 * top * tau
        },
        0.0,
        1.0,
        1e-12,
    );
    err.finish(v)
}

/// `½ log(t² + q²)` integrated in `t`, i.e. an antiderivative of
/// `log|p + t − x|` for `x = p + iq`.
fn log_antiderivative(t: f64, q: f64) -> f64 {
    let q = q.abs();
    let r2 = t * t + q * q;
    let tl = if t == 0.0 { 0.0 } else { t * r2.ln() };
    let at = if q == 0.0 { 0.0 } else { 2.0 * q * (t / q).atan() };
    0.5 * (tl - 2.0 * t + at)
}

/// `t · ½ log(t² + q²)` integrated in `t`.
fn t_log_antiderivative(t: f64, q: f64) -> f64 {
    let r2 = t * t + q * q;
    let l = if r2 == 0.0 { 0.0 } else { r2 * r2.ln() };
    0.25 * (l - r2)
}

/// `∫_{−u}^{u} log|p + iq − y| dy` (distance measured within the line of
/// the measure: `p` along it, `q` across it).
fn segment_log_integral(p: f64, q: f64, u: f64) -> f64 {
    log_antiderivative(u - p, q) - log_antiderivative(-u - p, q)
}

/// `(along, across)` coordinates of `x` relative to the line carrying a measure.
fn line_coords(x: Complex64, kind: SupportKind) -> (f64, f64) {
    match kind {
        SupportKind::RealLine => (x.re, x.im),
        SupportKind::ImaginaryLine => (x.im, x.re),
    }
}

/// `U^μ(x) = ∫ log(1/|x − y|) dμ(y)` for a tabulated density, read as
/// piecewise linear between grid points and integrated exactly.
/// Mass outside the grid is ignored.
pub fn log_potential(mu: &MeasureTable, x: Complex64) -> f64 {
    let (p, q) = line_coords(x, mu.support_kind);
    let mut total = 0.0;
    for (g, d) in mu.grid.windows(2).zip(mu.density.windows(2)) {
        let (y0, y1) = (g[0], g[1]);
        let slope = (d[1] - d[0]) / (y1 - y0);
        // density = d₀ + slope (y − y₀) = α + slope·(t + p), t = y − p.
        let alpha = d[0] - slope * y0;
        let (t0, t1) = (y0 - p, y1 - p);
        let f = log_antiderivative(t1, q) - log_antiderivative(t0, q);
        let g = t_log_antiderivative(t1, q) - t_log_antiderivative(t0, q);
        total -= (alpha + slope * p) * f + slope * g;
    }
    total
}

/// `U^{ν₁}(x) = −∫_0^{c₁} (μ̃₁(u)/u) ∫_{−u}^{u} log|x − y| dy du`.
pub fn nu1_potential(x: Complex64, b: f64) -> Result<f64> {
    check_b(b)?;
    let (c1, _) = support_constants(b)?;
    let (p, q) = line_coords(x, SupportKind::RealLine);
    let err = ErrorSlot::default();
    let f = |u: f64| {
        let d = err.value(mu_density(Complex64::new(u, 0.0), 1.0, b, Weight::First));
        d / u * segment_log_integral(p, q, u)
    };
    let v = if q == 0.0 && p != 0.0 && p.abs() < c1 {
        // The inner integral has a u log u kink at u = |p|.
        gauss_clustered(&f, 0.0, p.abs(), QUAD_TOL).and_then(|a| Ok(a + gauss_clustered(&f, p.abs(), c1, QUAD_TOL)?))
    } else {
        gauss_clustered(&f, 0.0, c1, QUAD_TOL)
    };
    Ok(-err.finish(v)?)
}

/// `U^{ν₂}(x) = −∫_{c₂}^{∞} (μ̃₂(iu)/u) ∫_{−u}^{u} log|x − iy| dy du`.
pub fn nu2_potential(x: Complex64, b: f64) -> Result<f64> {
    check_b(b)?;
    let (_, c2) = support_constants(b)?;
    let (p, q) = line_coords(x, SupportKind::ImaginaryLine);
    let cutoff = TAIL_CUTOFF * c2.max(1.0).max(x.norm());
    let dens = |u: f64| mu_density(Complex64::new(0.0, u), 1.0, b, Weight::Second);
    let err = ErrorSlot::default();
    let f = |u: f64| err.value(dens(u)) / u * segment_log_integral(p, q, u);
    let mid = if q == 0.0 && p.abs() > c2 { p.abs() } else { 2.0 * c2 };
    let near = gauss_clustered(&f, c2, mid, QUAD_TOL);
    // u = mid·e^r spreads the 1/u stretch and the decay evenly.
    let far = gauss_adaptive(
        |r| {
            let u = mid * r.exp();
            f(u) * u
        },
        0.0,
        (cutoff / mid).ln(),
        QUAD_TOL,
    );
    let body = err.finish(near.and_then(|a| Ok(a + far?)))?;
    // For u ≫ |x| the inner integral is 2(u log u − u) + O(1) and
    // μ̃₂(iu) = C/u² + O(1/u⁴), so the tail contributes 2C log U / U.
    let c = dens(cutoff)? * cutoff * cutoff;
    Ok(-(body + 2.0 * c * cutoff.ln() / cutoff))
}

/// Tabulated solution of the equilibrium problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumResult {
    pub b: f64,
    pub t: f64,
    pub nu1: MeasureTable,
    pub nu2: MeasureTable,
    pub c1: f64,
    pub c2: f64,
    pub v_slope: f64,
    pub sigma_density: f64,
    /// Fixed by `R₁(0) = 0`.
    pub lagrange_l: f64,
    /// Grid index of `x = 0` in `nu1`, whose density is replaced by its
    /// average over the two neighbouring cells (the true value is infinite).
    pub nu1_capped_index: Option<usize>,
    /// `max |ν₂ − σ|` over grid points inside `(−ic₂, ic₂)`.
    pub saturation_deviation: f64,
    /// `min (σ − ν₂)` over grid points outside `[−ic₂, ic₂]`.
    pub constraint_margin: f64,
}

/// `2m + 1` points on `[−c, c]`: Chebyshev-Lobatto nodes on each half,
/// clustered at `0` and at `±c`.
fn symmetric_chebyshev(c: f64, m: usize) -> Vec<f64> {
    let half: Vec<f64> = (0..=m).map(|k| 0.5 * c * (1.0 - (PI * k as f64 / m as f64).cos())).collect();
    half.iter().rev().map(|x| -x).chain(half.iter().skip(1).copied()).collect()
}

/// Closed-form `ν₁` density on `2m + 1` Chebyshev nodes (`m = (grid − 1)/2`).
/// The value at `x = 0`, where the density is infinite, is replaced by the
/// mean density over the two neighbouring cells.
pub fn nu1_table(b: f64, grid: usize) -> Result<MeasureTable> {
    check_b(b)?;
    if grid < 3 {
        return Err(Error::InvalidParams(format!("grid needs at least 3 points, got {grid}")));
    }
    let (c1, _) = support_constants(b)?;
    let m = (grid - 1) / 2;
    let xs = symmetric_chebyshev(c1, m);
    let mut d1 = Vec::with_capacity(xs.len());
    for &x in &xs {
        d1.push(if x == 0.0 { 0.0 } else { nu1_density_closed(x, b)? });
    }
    let h = xs[m + 1];
    d1[m] = nu1_half_mass(h, b)? / h;
    MeasureTable::new(SupportKind::RealLine, xs, d1, nu1_mass(b)?, (-c1, c1))
}

/// Builds the tables for `ν₁` (closed-form density on `2m + 1` Chebyshev
/// nodes, `grid = 2m + 1`) and `ν₂`, and calibrates `l`.
///
/// The `ν₂` table covers `|y| ≤ y_max`, with nodes log-spaced toward
/// `±c₂` outside the saturated region.
pub fn solve(b: f64, grid: usize, nu2_grid: usize, y_max: f64) -> Result<EquilibriumResult> {
    check_b(b)?;
    if grid < 5 || nu2_grid < 8 {
        return Err(Error::InvalidParams("grids need at least 5 (ν₁) and 8 (ν₂) points".into()));
    }
    let t = b.atan();
    let (c1, c2) = support_constants(b)?;
    if !(y_max > c2) {
        return Err(Error::InvalidParams(format!("y_max must exceed c₂ = {c2}")));
    }

    let m = (grid - 1) / 2;
    let nu1 = nu1_table(b, grid)?;

    let inner = (nu2_grid / 8).max(2);
    let outer = nu2_grid / 2 - inner;
    let mut ys: Vec<f64> = (0..inner).map(|k| c2 * k as f64 / inner as f64).collect();
    let (gap_lo, gap_hi) = (1e-6 * c2, y_max - c2);
    ys.extend((0..outer).map(|k| c2 + gap_lo * (gap_hi / gap_lo).powf(k as f64 / (outer - 1) as f64)));
    let inside = nu2_density(0.0, b)?;
    let mut d2_half = Vec::with_capacity(ys.len());
    for &y in &ys {
        d2_half.push(if y < c2 { inside } else { nu2_density(y, b)? });
    }
    let sigma = sigma_density(t)?;
    let saturation_deviation = (inside - sigma).abs();
    let constraint_margin = ys.iter().zip(&d2_half).filter(|(y, _)| **y > c2).map(|(_, d)| sigma - d).fold(f64::INFINITY, f64::min);
    let grid2: Vec<f64> = ys.iter().rev().map(|y| -y).chain(ys.iter().skip(1).copied()).collect();
    let dens2: Vec<f64> = d2_half.iter().rev().chain(d2_half.iter().skip(1)).copied().collect();
    let nu2 = MeasureTable::new(SupportKind::ImaginaryLine, grid2, dens2, mu_mass(1.0, b, Weight::Second, 1e-10)?, (-y_max, y_max))?;

    let origin = Complex64::new(0.0, 0.0);
    let lagrange_l = 2.0 * nu1_potential(origin, b)? - nu2_potential(origin, b)?;
    Ok(EquilibriumResult {
        b,
        t,
        nu1,
        nu2,
        c1,
        c2,
        v_slope: PI - 2.0 * t,
        sigma_density: sigma,
        lagrange_l,
        nu1_capped_index: Some(m),
        saturation_deviation,
        constraint_margin,
    })
}

/// Euler-Lagrange residuals at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ElResiduals {
    pub x_re: f64,
    pub x_im: f64,
    /// `2U^{ν₁} − U^{ν₂} − l + V`, defined for real `x`.
    pub r1: Option<f64>,
    /// `−U^{ν₁} + 2U^{ν₂}`, defined for imaginary `x`.
    pub r2: Option<f64>,
}

/// Residuals of the variational conditions, with potentials from the
/// accurate integral representations rather than the tables.
pub fn el_residuals(x: Complex64, result: &EquilibriumResult) -> Result<ElResiduals> {
    let b = result.b;
    let u1 = nu1_potential(x, b)?;
    let u2 = nu2_potential(x, b)?;
    let r1 = (x.im == 0.0).then(|| 2.0 * u1 - u2 - result.lagrange_l + result.v_slope * x.re.abs());
    let r2 = (x.re == 0.0).then(|| -u1 + 2.0 * u2);
    Ok(ElResiduals { x_re: x.re, x_im: x.im, r1, r2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_density_at_small_t() {
        let v = nu1_density_closed(0.6, 1e-6).unwrap();
        assert!((v - 9f64.ln() / (2.0 * PI)).abs() < 1e-4, "{v}");
        assert!((nu1_density_t0(0.6) - 9f64.ln() / (2.0 * PI)).abs() < 1e-15);
        assert_eq!(nu1_density_closed(0.6, 1.0).unwrap(), nu1_density_closed(-0.6, 1.0).unwrap());
    }

    #[test]
    fn closed_and_averaged_agree() {
        for b in [0.1, 1.0, 100.0] {
            let (c1, _) = support_constants(b).unwrap();
            for f in [0.05, 0.3, 0.5, 0.9] {
                let x = f * c1;
                let a = nu1_density_closed(x, b).unwrap();
                let s = nu1_density_averaged(x, b).unwrap();
                assert!((a - s).abs() < 1e-7, "b {b}, x {x}: {a} vs {s}");
            }
        }
    }

    #[test]
    fn nu1_mass_and_endpoint() {
        for b in [0.1, 1.0, 100.0] {
            let m = nu1_mass(b).unwrap();
            assert!((m - 1.0).abs() < 1e-8, "b {b}: {m}");
            let (c1, _) = support_constants(b).unwrap();
            assert!(nu1_density_closed(c1 * (1.0 - 1e-9), b).unwrap() < 1e-3);
            assert_eq!(nu1_density_averaged(1.01 * c1, b).unwrap(), 0.0);
        }
    }

    #[test]
    fn external_field_oracle() {
        for (t, x) in [(0.3, 1.7), (PI / 4.0, 1.0), (1.2, 0.1)] {
            let exact = external_field(x, t).unwrap();
            let numeric = external_field_numeric(x, t).unwrap();
            assert!((numeric - exact).abs() < 1e-8 * exact, "t {t}, x {x}: {numeric} vs {exact}");
        }
        assert!((external_field(1.0, PI / 4.0).unwrap() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn sigma_oracle() {
        let v = sigma_density_numeric(0.3, 0.5).unwrap();
        assert!((v - 1.0 / PI).abs() < 1e-6, "{v}");
        let b = 0.5f64.tan();
        assert!((nu2_density(0.0, b).unwrap() - 1.0 / PI).abs() < 1e-6);
        let (_, c2) = support_constants(b).unwrap();
        assert!(nu2_density(1.5 * c2, b).unwrap() < 1.0 / PI);
    }

    #[test]
    fn log_potential_of_uniform_measure() {
        let grid: Vec<f64> = (0..=4).map(|k| -1.0 + 0.5 * k as f64).collect();
        let table = MeasureTable::new(SupportKind::RealLine, grid, vec![0.5; 5], 1.0, (-1.0, 1.0)).unwrap();
        // ½∫_{−1}^{1} log(1/|2 − y|) dy = 1 − (3/2) log 3.
        let exact = 1.0 - 1.5 * 3f64.ln();
        assert!((log_potential(&table, Complex64::new(2.0, 0.0)) - exact).abs() < 1e-14);
        // At the centre: −½∫ log|y| = 1.
        assert!((log_potential(&table, Complex64::new(0.0, 0.0)) - 1.0).abs() < 1e-14);
        let far = Complex64::new(0.0, 1e6);
        assert!((log_potential(&table, far) + 1e6f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn fubini_potential_matches_table() {
        let b = 1.0;
        let x = Complex64::new(2.5, 0.3);
        let direct = nu1_potential(x, b).unwrap();
        let (c1, _) = support_constants(b).unwrap();
        let xs = symmetric_chebyshev(c1, 400);
        let d: Vec<f64> = xs.iter().map(|&x| if x == 0.0 { 0.0 } else { nu1_density_closed(x, b).unwrap() }).collect();
        let table = MeasureTable::new(SupportKind::RealLine, xs, d, 1.0, (-c1, c1)).unwrap();
        assert!((log_potential(&table, x) - direct).abs() < 1e-3);
        let sym = nu1_potential(Complex64::new(-2.5, 0.3), b).unwrap();
        assert!((sym - direct).abs() < 1e-10);
    }
}
