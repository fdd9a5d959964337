//! The 2×2 block symbol of the symmetric case `t₁ = −t₂ = t`, `b = tan t`.
//!
//! The rescaled recurrence coefficients of the diagonal sequence converge
//! (along `k/n → s`, alternating in parity) to the blocks of
//!
//! ```text
//! A_s(z) = A⁽⁻¹⁾ z⁻¹ + A⁽⁰⁾ + A⁽¹⁾ z,
//! A⁽⁻¹⁾ = [[0, 0], [1, 0]],  A⁽⁰⁾ = [[a_s, 1], [b_s, −a_s]],  A⁽¹⁾ = [[c_s, b_s], [0, −c_s]],
//! ```
//!
//! with `a_s = b s/2`, `b_s = (1+b²) s²/4`, `c_s = a_s b_s`. Its spectral
//! curve is `det(A_s(z) − x) = x² − P(z, s)` with
//!
//! ```text
//! P(z, s) = (4 + z s²(1+b²))² (4 + z s² b²) / (64 z).
//! ```
//!
//! For each `x` the cubic `P(z, s) = x²` has roots `z₁, z₂, z₃` ordered by
//! modulus. `Γ₁(s) = [−c₁s, c₁s]` is where `|z₁| = |z₂|` and
//! `Γ₂(s) = iℝ ∖ (−ic₂s, ic₂s)` is where `|z₂| = |z₃|`. The measures `μ_j^s`
//! live on these cuts with density built from the jump of `z_j'/z_j`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::linalg::{eigenvalues, interlacing_spectrum, BandedMatrix, Matrix};
use crate::measure::EmpiricalMeasure;
use crate::quadrature::{gauss_adaptive, ErrorSlot};
use crate::specfun::Weight;
use crate::{Error, Result};

/// Relative modulus difference below which two roots count as tied.
pub const TIE_REL_TOL: f64 = 1e-9;

const MU2_TAIL_CUTOFF: f64 = 1e6;

fn check_sb(s: f64, b: f64) -> Result<()> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::InvalidParams(format!("s must be finite and nonnegative, got {s}")));
    }
    if !(b.is_finite() && b > 0.0) {
        return Err(Error::InvalidParams(format!("b must be finite and positive, got {b}")));
    }
    Ok(())
}

fn check_positive_s(s: f64, b: f64) -> Result<()> {
    check_sb(s, b)?;
    if s == 0.0 {
        return Err(Error::InvalidParams("s must be positive".into()));
    }
    Ok(())
}

/// Limit blocks of the recurrence at scale `s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolData {
    pub s: f64,
    pub b: f64,
    pub a_s: f64,
    pub b_s: f64,
    pub c_s: f64,
    /// `A⁽⁻¹⁾, A⁽⁰⁾, A⁽¹⁾`, each row-major.
    pub blocks: [[[f64; 2]; 2]; 3],
}

impl SymbolData {
    /// The block multiplying `z^p`, `p ∈ {−1, 0, 1}`.
    pub fn block(&self, p: i32) -> [[f64; 2]; 2] {
        self.blocks[(p + 1) as usize]
    }

    /// `A_s(z)` as a complex 2×2 matrix.
    pub fn eval(&self, z: Complex64) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (p, factor) in [(-1, 1.0 / z), (0, Complex64::new(1.0, 0.0)), (1, z)] {
            let blk = self.block(p);
            for i in 0..2 {
                for j in 0..2 {
                    out[i][j] += factor * blk[i][j];
                }
            }
        }
        out
    }

    /// `det(A_s(z) − x I)`.
    pub fn char_det(&self, z: Complex64, x: Complex64) -> Complex64 {
        let m = self.eval(z);
        (m[0][0] - x) * (m[1][1] - x) - m[0][1] * m[1][0]
    }
}

/// Blocks of `A_s` for `b = tan t`.
pub fn symbol_blocks(s: f64, b: f64) -> Result<SymbolData> {
    check_sb(s, b)?;
    let a_s = b * s / 2.0;
    let b_s = (1.0 + b * b) * s * s / 4.0;
    let c_s = a_s * b_s;
    let blocks = [[[0.0, 0.0], [1.0, 0.0]], [[a_s, 1.0], [b_s, -a_s]], [[c_s, b_s], [0.0, -c_s]]];
    Ok(SymbolData { s, b, a_s, b_s, c_s, blocks })
}

/// `P(z, s)`; fails at the pole `z = 0`.
pub fn eval_p(z: Complex64, s: f64, b: f64) -> Result<Complex64> {
    check_sb(s, b)?;
    if z == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("P(z, s) has a pole at z = 0".into()));
    }
    let (a, bb) = (s * s * (1.0 + b * b), s * s * b * b);
    let u = 4.0 + a * z;
    Ok(u * u * (4.0 + bb * z) / (64.0 * z))
}

/// Coefficients, constant term first, of the cubic satisfied by
/// `u = 4 + A z` (`A = s²(1+b²)`, `B = s²b²`) when `P(z, s) = y`:
///
/// ```text
/// B u³ + 4s² u² − 64y u + 256y = 0.
/// ```
///
/// Since `4 + Bz = (Bu + 4s²)/A`, this is `P = y` multiplied out. Unlike
/// the cubic in `z`, whose linear coefficient `16B + 32A − 64y` swamps `y`
/// when `b` is large, every coefficient here carries its own scale.
fn shifted_cubic(y: Complex64, s: f64, b: f64) -> [Complex64; 4] {
    let bb = s * s * b * b;
    [256.0 * y, -64.0 * y, Complex64::new(4.0 * s * s, 0.0), Complex64::new(bb, 0.0)]
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &ci in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + ci;
    }
    (p, dp)
}

fn newton_polish(c: &[Complex64], mut z: Complex64) -> Complex64 {
    let (mut best, _) = horner(c, z);
    for _ in 0..8 {
        let (p, dp) = horner(c, z);
        if p == Complex64::new(0.0, 0.0) || dp == Complex64::new(0.0, 0.0) {
            break;
        }
        let next = z - p / dp;
        let (pn, _) = horner(c, next);
        if !(pn.norm() < best.norm()) {
            break;
        }
        best = pn;
        z = next;
    }
    z
}

/// Roots of `q₂u² + q₁u + q₀`, avoiding cancellation.
fn quadratic_roots(q2: Complex64, q1: Complex64, q0: Complex64) -> [Complex64; 2] {
    let disc = (q1 * q1 - 4.0 * q2 * q0).sqrt();
    let den = if (q1 + disc).norm() >= (q1 - disc).norm() { -(q1 + disc) } else { -(q1 - disc) };
    if den == Complex64::new(0.0, 0.0) {
        return [Complex64::new(0.0, 0.0); 2];
    }
    [den / (2.0 * q2), 2.0 * q0 / den]
}

/// Removes the root `r` from the cubic and returns the other two.
///
/// When `r` has the largest modulus the quotient is built from the
/// constant term upwards (`c₀ = −c₃ r q`, `c₁ = c₃(q − r p)`), otherwise
/// from the leading term down; each direction is stable for that case.
/// This keeps small roots accurate to relative precision even when the
/// roots span many orders of magnitude, which companion eigenvalues alone
/// (accurate only relative to the largest root) do not.
fn deflate(c: &[Complex64; 4], r: Complex64, largest: bool) -> [Complex64; 2] {
    if largest && r != Complex64::new(0.0, 0.0) {
        let q = -c[0] / (c[3] * r);
        let p = (q - c[1] / c[3]) / r;
        quadratic_roots(Complex64::new(1.0, 0.0), p, q)
    } else {
        let q1 = c[2] + r * c[3];
        let q0 = c[1] + r * q1;
        quadratic_roots(c[3], q1, q0)
    }
}

/// Roots of a cubic with the given coefficients (constant term first).
///
/// Companion-matrix eigenvalues locate the roots; a real cubic uses its
/// companion matrix directly, a complex one the real 6×6 embedding
/// `[[Re C, −Im C], [Im C, Re C]]`, whose spectrum is that of `C` together
/// with its conjugate. One root is then polished and deflated (see
/// [`deflate`]) and every root gets guarded Newton steps on the cubic.
fn cubic_roots(c: &[Complex64; 4]) -> Result<[Complex64; 3]> {
    let lead = c[3];
    let monic: Vec<Complex64> = c[..3].iter().map(|&ci| ci / lead).collect();
    if c.iter().all(|ci| ci.im == 0.0) {
        let real: Vec<f64> = monic.iter().map(|z| z.re).collect();
        let spec = eigenvalues(&Matrix::companion(&real))?;
        // There is always a real root; take the largest real one. It is
        // either the largest root overall or, when the other two are a
        // conjugate pair of larger modulus, the smallest.
        let r = spec
            .eigenvalues
            .iter()
            .filter(|z| z.im == 0.0)
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .copied()
            .unwrap_or(spec.eigenvalues[0]);
        let r = Complex64::new(newton_polish(c, Complex64::new(r.re, 0.0)).re, 0.0);
        let largest = spec.eigenvalues.iter().all(|z| z.norm() <= r.norm() * (1.0 + 1e-12) || z.im == 0.0);
        let [p, q] = deflate(c, r, largest);
        let mut out = [r, newton_polish(c, p), newton_polish(c, q)];
        // Keep conjugate pairs exactly conjugate.
        if out[1].im != 0.0 || out[2].im != 0.0 {
            let m = 0.5 * (out[1] + out[2].conj());
            let m = if m.im == 0.0 { Complex64::new(m.re, 0.0) } else { m };
            out[1] = m;
            out[2] = m.conj();
        }
        return Ok(out);
    }
    let embed = Matrix::from_fn(6, 6, |i, j| {
        let (bi, bj) = (i / 3, j / 3);
        let (ri, rj) = (i % 3, j % 3);
        // Companion entries of the monic cubic.
        let entry = if ri == 2 {
            -monic[rj]
        } else if rj == ri + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        };
        match (bi, bj) {
            (0, 0) | (1, 1) => entry.re,
            (0, 1) => -entry.im,
            _ => entry.im,
        }
    });
    let spec = eigenvalues(&embed)?;
    let scale: f64 = c.iter().map(|z| z.norm()).sum();
    let residual = |z: &Complex64| horner(c, *z).0.norm() / (scale * (1.0 + z.norm()).powi(3));
    // Candidates are roots of C or of its conjugate; keep the true ones
    // and take the largest of those.
    let polished: Vec<Complex64> = spec.eigenvalues.iter().map(|&z| newton_polish(c, z)).collect();
    let best = polished.iter().map(residual).fold(f64::INFINITY, f64::min);
    let r = polished
        .iter()
        .filter(|z| residual(z) <= 1e3 * best.max(1e-15))
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .copied()
        .ok_or_else(|| Error::Domain("empty spectrum".into()))?;
    let [p, q] = deflate(c, r, true);
    Ok([r, newton_polish(c, p), newton_polish(c, q)])
}

/// The three roots `z₁, z₂, z₃` of `P(z, s) = x²` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTriple {
    pub x: Complex64,
    pub s: f64,
    /// Ordered by modulus; moduli equal within [`TIE_REL_TOL`] are ordered
    /// by principal argument.
    pub z: [Complex64; 3],
    /// `ties[0]`: `|z₁| = |z₂|`; `ties[1]`: `|z₂| = |z₃|`.
    pub ties: [bool; 2],
    /// `4 + s²(1+b²) z_j`, in the same order, computed directly.
    pub u: [Complex64; 3],
}

impl RootTriple {
    pub fn z1(&self) -> Complex64 {
        self.z[0]
    }
    pub fn z2(&self) -> Complex64 {
        self.z[1]
    }
    pub fn z3(&self) -> Complex64 {
        self.z[2]
    }
}

fn tied(a: Complex64, b: Complex64) -> bool {
    (a.norm() - b.norm()).abs() <= TIE_REL_TOL * a.norm().max(b.norm())
}

fn order_roots(mut zu: [(Complex64, Complex64); 3]) -> ([(Complex64, Complex64); 3], [bool; 2]) {
    zu.sort_by(|a, b| a.0.norm().total_cmp(&b.0.norm()));
    // Within tied runs, order by argument (runs have length at most 3).
    for _ in 0..2 {
        for i in 0..2 {
            if tied(zu[i].0, zu[i + 1].0) && zu[i].0.arg() > zu[i + 1].0.arg() {
                zu.swap(i, i + 1);
            }
        }
    }
    let ties = [tied(zu[0].0, zu[1].0), tied(zu[1].0, zu[2].0)];
    (zu, ties)
}

/// `(z, u)` from a root `u` of the shifted cubic.
///
/// `z = (u − 4)/A` cancels when `u ≈ 4`, i.e. for roots near `z = 0`
/// (large `|x|`). Those are refined by Newton's method on the cubic
/// `u(z)²(4 + Bz)/64 − yz = 0` in `z` itself, where `u = 4 + Az` is then
/// free of cancellation. If `u − 4` underflows entirely, the iteration
/// starts from `z = 1/y`, the leading behaviour of the small root.
fn recover_z(u: Complex64, y: Complex64, s: f64, b: f64) -> (Complex64, Complex64) {
    let a = s * s * (1.0 + b * b);
    let mut z = (u - 4.0) / a;
    if (u - 4.0).norm() >= 2.0 {
        return (z, u);
    }
    let bb = s * s * b * b;
    let g = |z: Complex64| {
        let u = 4.0 + a * z;
        let v = 4.0 + bb * z;
        (u * u * v / 64.0 - y * z, (2.0 * a * u * v + bb * u * u) / 64.0 - y)
    };
    if z == Complex64::new(0.0, 0.0) && y != Complex64::new(0.0, 0.0) {
        z = 1.0 / y;
    }
    let (mut r, _) = g(z);
    for _ in 0..6 {
        let (_, dg) = g(z);
        if dg == Complex64::new(0.0, 0.0) {
            break;
        }
        let next = z - r / dg;
        let (rn, _) = g(next);
        if !(rn.norm() < r.norm()) {
            break;
        }
        z = next;
        r = rn;
    }
    (z, 4.0 + a * z)
}

/// Solves `P(z, s) = x²` and orders the roots by modulus.
pub fn roots_z(x: Complex64, s: f64, b: f64) -> Result<RootTriple> {
    check_positive_s(s, b)?;
    if !(x.re.is_finite() && x.im.is_finite()) {
        return Err(Error::InvalidParams(format!("x must be finite, got {x}")));
    }
    // x² of a point on either axis is real; make it exactly so.
    let y = if x.im == 0.0 {
        Complex64::new(x.re * x.re, 0.0)
    } else if x.re == 0.0 {
        Complex64::new(-x.im * x.im, 0.0)
    } else {
        x * x
    };
    let raw = cubic_roots(&shifted_cubic(y, s, b))?;
    let (zu, ties) = order_roots(raw.map(|u| recover_z(u, y, s, b)));
    Ok(RootTriple { x, s, z: zu.map(|p| p.0), ties, u: zu.map(|p| p.1) })
}

/// Support constants and the critical points of `z ↦ P(z, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SupportData {
    pub s: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    /// `(c₁ s)²`, the local minimum value of `P` at `z_crit_plus`.
    pub y1: f64,
    /// `−(c₂ s)²`, the local minimum value of `P` at `z_crit_minus`.
    pub y2: f64,
    pub z_crit_plus: f64,
    pub z_crit_minus: f64,
    /// Double zero of `P`, a local maximum with value 0.
    pub z_crit_zero: f64,
}

/// `c₁(b)` and `c₂(b)`.
///
/// With `S = √(b²+1)(9b²+1)^{3/2}` and `T = 27b⁴ + 18b² − 1` these are
/// `c₁² = (S+T)/(32b²)` and `c₂² = (S−T)/(32b²) = 2/(S+T)`, using
/// `S² − T² = 64b²`. The second form avoids the cancellation in `S − T`
/// for large `b`; for small `b`, `S + T` is formed as `64b²/(S − T)`.
pub fn support_constants(b: f64) -> Result<(f64, f64)> {
    check_sb(0.0, b)?;
    let b2 = b * b;
    let s_term = (b2 + 1.0).sqrt() * (9.0 * b2 + 1.0).powf(1.5);
    let t_term = 27.0 * b2 * b2 + 18.0 * b2 - 1.0;
    let sum = if t_term >= 0.0 { s_term + t_term } else { 64.0 * b2 / (s_term - t_term) };
    Ok(((sum / (32.0 * b2)).sqrt(), (2.0 / sum).sqrt()))
}

/// Closed-form endpoints of `Γ₁(s)` and `Γ₂(s)` and critical points of `P`.
pub fn supports(s: f64, b: f64) -> Result<SupportData> {
    check_positive_s(s, b)?;
    let (c1, c2) = support_constants(b)?;
    let b2 = b * b;
    let root = ((9.0 * b2 + 1.0) / (b2 + 1.0)).sqrt();
    let s2 = s * s;
    // (root − 1)/b² rewritten without cancellation.
    let z_plus = 8.0 / ((b2 + 1.0) * (root + 1.0)) / s2;
    let z_minus = -(1.0 + root) / (b2 * s2);
    let z_zero = -4.0 / ((1.0 + b2) * s2);
    Ok(SupportData {
        s,
        b,
        c1,
        c2,
        y1: (c1 * s).powi(2),
        y2: -(c2 * s).powi(2),
        z_crit_plus: z_plus,
        z_crit_minus: z_minus,
        z_crit_zero: z_zero,
    })
}

/// Is `x` (strictly) inside `Γ_j(s)` according to the closed-form endpoints?
pub fn in_cut(x: Complex64, s: f64, b: f64, which: Weight) -> Result<bool> {
    let sup = supports(s, b)?;
    Ok(match which {
        Weight::First => x.im == 0.0 && x.re.abs() < sup.c1 * s,
        Weight::Second => x.re == 0.0 && x.im.abs() > sup.c2 * s,
    })
}

/// `(∂z/∂x)/z` along a root of `P(z, s) = x²`, in terms of `u = 4 + Az`:
///
/// ```text
/// z'/z = 2x / (z ∂P/∂z) = 64 x (u − 4) / (u (B u² + (2s² − 6B) u − 16 s²)).
/// ```
fn log_derivative(u: Complex64, x: Complex64, s: f64, b: f64) -> Complex64 {
    let bb = s * s * b * b;
    let s2 = s * s;
    64.0 * x * (u - 4.0) / (u * (bb * u * u + (2.0 * s2 - 6.0 * bb) * u - 16.0 * s2))
}

/// Density of `μ₁^s` at `x = 0`, where `z₁ = z₂` is the double zero
/// `z₀` of `P`: near it `z − z₀ ≈ ±i x √(2/|P''(z₀)|)`.
fn mu1_density_at_origin(s: f64, b: f64) -> f64 {
    let (a, bb) = (s * s * (1.0 + b * b), s * s * b * b);
    let z0 = -4.0 / a;
    let p2 = 2.0 * a * a * (4.0 + bb * z0) / (64.0 * z0);
    let kappa = (2.0 / p2.abs()).sqrt();
    kappa / (2.0 * PI * z0.abs())
}

/// Density of `μ_j^s` at `x`, with respect to arc length on the cut.
///
/// ```text
/// dμ_j^s = (1/2)(1/2πi) (z'_{j+}/z_{j+} − z'_{j−}/z_{j−}) dx
/// ```
///
/// The cuts are oriented left to right (`Γ₁`) and upwards (`Γ₂`); the
/// `+` side is on the left. On either cut `x²` is real, so the two roots
/// that meet there are an exact conjugate pair. The member that is the `+`
/// boundary value is identified by solving at `x + iεd` (`d` the direction
/// of the cut) and pairing with the nearest member; `ε` shrinks until the
/// pairing is unambiguous. Off the cut the density is 0.
pub fn mu_density(x: Complex64, s: f64, b: f64, which: Weight) -> Result<f64> {
    check_positive_s(s, b)?;
    if !in_cut(x, s, b, which)? {
        return Ok(0.0);
    }
    if which == Weight::First && x.re == 0.0 {
        return Ok(mu1_density_at_origin(s, b));
    }
    let exact = roots_z(x, s, b)?;
    let pick = |r: &RootTriple| match which {
        Weight::First => (r.u[0], r.u[1]),
        Weight::Second => (r.u[1], r.u[2]),
    };
    let (p, q) = pick(&exact);
    let separation = (p - q).norm();
    if !(p.im != 0.0 && q == p.conj() && separation > 0.0) {
        return Err(Error::RootMatching { x: format!("{x}") });
    }
    let direction = match which {
        Weight::First => Complex64::new(1.0, 0.0),
        Weight::Second => Complex64::new(0.0, 1.0),
    };
    let left = Complex64::new(0.0, 1.0) * direction;
    let mut eps = 1e-8 * (1.0 + x.norm());
    let mut plus = None;
    for _ in 0..12 {
        // On the + side the root continuing z_j is still the j-th by modulus.
        let target = pick(&roots_z(x + left * eps, s, b)?).0;
        let (dp, dq) = ((target - p).norm(), (target - q).norm());
        let (near, far) = if dp <= dq { (dp, dq) } else { (dq, dp) };
        if near < 0.25 * separation && far > 0.75 * separation {
            plus = Some(if dp <= dq { p } else { q });
            break;
        }
        eps /= 16.0;
    }
    let u_plus = plus.ok_or_else(|| Error::RootMatching { x: format!("{x}") })?;
    let jump = log_derivative(u_plus, x, s, b) - log_derivative(u_plus.conj(), x, s, b);
    let v = jump * direction / Complex64::new(0.0, 4.0 * PI);
    if v.re < -1e-12 * v.norm().max(1e-300) || v.im.abs() > 1e-8 * v.norm().max(1e-300) {
        return Err(Error::RootMatching { x: format!("{x}") });
    }
    Ok(v.re.max(0.0))
}

/// Total mass of `μ_j^s`: 1 for `j = 1`, 1/2 for `j = 2`.
///
/// Both halves of a cut carry the same mass. On `Γ₁` the substitution
/// `x = c₁s(1 − τ²)` removes the inverse square root at the endpoint.
/// On `Γ₂` the substitution `y = c₂s cosh v` does the same and spreads
/// out the logarithmic stretch between `c₂s` and `s` that appears when
/// `c₂` is small; past `y = 10⁶ max(c₂s, s)` the `C/y²` tail is added in
/// closed form.
pub fn mu_mass(s: f64, b: f64, which: Weight, tol: f64) -> Result<f64> {
    let sup = supports(s, b)?;
    let half = match which {
        Weight::First => {
            let e = sup.c1 * s;
            let err = ErrorSlot::default();
            let v = gauss_adaptive(
                |tau| {
                    let x = e * (1.0 - tau * tau);
                    match mu_density(Complex64::new(x, 0.0), s, b, which) {
                        Ok(d) => d * 2.0 * e * tau,
                        Err(e) => {
                            err.put(e);
                            0.0
                        }
                    }
                },
                0.0,
                1.0,
                tol,
            );
            err.finish(v)?
        }
        Weight::Second => {
            let e = sup.c2 * s;
            let cutoff = MU2_TAIL_CUTOFF * e.max(s);
            let err = ErrorSlot::default();
            let v = gauss_adaptive(
                |v| {
                    let y = e * v.cosh();
                    match mu_density(Complex64::new(0.0, y), s, b, which) {
                        Ok(d) => d * e * v.sinh(),
                        Err(e) => {
                            err.put(e);
                            0.0
                        }
                    }
                },
                0.0,
                (cutoff / e).acosh(),
                tol,
            );
            let body = err.finish(v)?;
            // Beyond the cutoff the density is C/y² + O(1/y⁴).
            body + mu_density(Complex64::new(0.0, cutoff), s, b, which)? * cutoff
        }
    };
    Ok(2.0 * half)
}

/// Distribution function of `μ₁^s`, `F(x) = μ₁^s((−∞, x])`.
///
/// Computed as `1 − ∫_x^{c₁s}` for `x ≥ 0` with the substitution
/// `u = c₁s − (c₁s − x)τ²`, and by symmetry for `x < 0`.
pub fn mu1_cdf(x: f64, s: f64, b: f64) -> Result<f64> {
    let sup = supports(s, b)?;
    let e = sup.c1 * s;
    let ax = x.abs();
    if ax >= e {
        return Ok(if x > 0.0 { 1.0 } else { 0.0 });
    }
    let err = ErrorSlot::default();
    let upper = gauss_adaptive(
        |tau| {
            let u = e - (e - ax) * tau * tau;
            match mu_density(Complex64::new(u, 0.0), s, b, Weight::First) {
                Ok(d) => d * 2.0 * (e - ax) * tau,
                Err(e) => {
                    err.put(e);
                    0.0
                }
            }
        },
        0.0,
        1.0,
        1e-10,
    );
    let upper = err.finish(upper)?;
    Ok(if x >= 0.0 { 1.0 - upper } else { upper })
}

/// Smallest `x > 0` with `|z₁(x,s)| ≠ |z₂(x,s)|`, found by bisection on
/// the modulus comparison alone. Should equal `c₁s`.
pub fn gamma1_endpoint_by_bisection(s: f64, b: f64) -> Result<f64> {
    let inside = |x: f64| roots_z(Complex64::new(x, 0.0), s, b).map(|r| r.ties[0]);
    bisect_transition(inside, s)
}

/// Smallest `y > 0` with `|z₂(iy,s)| = |z₃(iy,s)|`, found by bisection.
/// Should equal `c₂s`.
pub fn gamma2_endpoint_by_bisection(s: f64, b: f64) -> Result<f64> {
    let outside = |y: f64| roots_z(Complex64::new(0.0, y), s, b).map(|r| !r.ties[1]);
    bisect_transition(outside, s)
}

/// Locates the point where `pred` switches from true (small arguments) to
/// false (large arguments).
fn bisect_transition(pred: impl Fn(f64) -> Result<bool>, s: f64) -> Result<f64> {
    check_positive_s(s, 1.0)?;
    let mut lo = 1e-3 * s;
    let mut shrinks = 0;
    while !pred(lo)? {
        lo *= 1e-3;
        shrinks += 1;
        if shrinks > 30 {
            return Err(Error::Domain("no starting point below the transition".into()));
        }
    }
    let mut hi = lo * 2.0;
    while pred(hi)? {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Domain("no transition found".into()));
        }
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `T_n(A_s)`: `2n × 2n`, block `(i, j)` equal to `A^{(i−j)}`, zero beyond
/// the three block diagonals. It is a unit-superdiagonal lower-Hessenberg
/// matrix with two subdiagonals.
pub fn block_toeplitz_truncation(sym: &SymbolData, n_blocks: usize) -> Result<BandedMatrix> {
    if n_blocks == 0 {
        return Err(Error::InvalidParams("need at least one block row".into()));
    }
    let n = 2 * n_blocks;
    let mut m = BandedMatrix::unit_hessenberg(n, 2);
    for bi in 0..n_blocks {
        for bj in bi.saturating_sub(1)..(bi + 2).min(n_blocks) {
            let blk = sym.block(bi as i32 - bj as i32);
            for (r, row) in blk.iter().enumerate() {
                for (c, &v) in row.iter().enumerate() {
                    let (i, j) = (2 * bi + r, 2 * bj + c);
                    if j == i + 1 {
                        debug_assert_eq!(v, 1.0);
                    } else if j > i + 1 {
                        debug_assert_eq!(v, 0.0);
                    } else if v != 0.0 {
                        m.set(i, j, v);
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Real eigenvalues of `T_n(A_s)` and their Kolmogorov distance to `μ₁^s`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToeplitzSpectrum {
    pub eigenvalues: Vec<f64>,
    pub kolmogorov: f64,
}

/// Eigenvalues of `T_n(A_s)` (all real: the leading characteristic
/// polynomials interlace) compared with the distribution function of `μ₁^s`.
pub fn toeplitz_spectrum(s: f64, b: f64, n_blocks: usize) -> Result<ToeplitzSpectrum> {
    let sym = symbol_blocks(s, b)?;
    let m = block_toeplitz_truncation(&sym, n_blocks)?;
    let eig = interlacing_spectrum(&m)?;
    let emp = EmpiricalMeasure::new(eig.clone());
    let err = ErrorSlot::default();
    let kolmogorov = emp.kolmogorov_distance(|x| match mu1_cdf(x, s, b) {
        Ok(v) => v,
        Err(e) => {
            err.put(e);
            f64::NAN
        }
    });
    err.finish(Ok(0.0))?;
    Ok(ToeplitzSpectrum { eigenvalues: eig, kolmogorov })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn blocks_at_unit_scale() {
        let d = symbol_blocks(1.0, 1.0).unwrap();
        assert_eq!((d.a_s, d.b_s, d.c_s), (0.5, 0.5, 0.25));
        let z = symbol_blocks(0.0, 2.0).unwrap();
        assert_eq!(z.block(0), [[0.0, 1.0], [0.0, 0.0]]);
        for (s, b) in [(0.3, 0.7), (1.9, 12.0)] {
            let d = symbol_blocks(s, b).unwrap();
            assert_eq!(d.c_s - d.a_s * d.b_s, 0.0);
        }
    }

    #[test]
    fn determinant_identity() {
        let d = symbol_blocks(0.8, 1.3).unwrap();
        for (z, x) in [(c(0.3, -1.1), c(0.7, 0.2)), (c(-2.0, 0.5), c(0.0, 1.4)), (c(5.0, 0.0), c(1.1, 0.0))] {
            let lhs = d.char_det(z, x) + eval_p(z, 0.8, 1.3).unwrap() - x * x;
            assert!(lhs.norm() < 1e-12 * (1.0 + eval_p(z, 0.8, 1.3).unwrap().norm()), "{lhs}");
        }
    }

    #[test]
    fn p_scaling_and_zero() {
        assert!(eval_p(c(-2.0, 0.0), 1.0, 1.0).unwrap().norm() < 1e-15);
        assert!(eval_p(c(0.0, 0.0), 1.0, 1.0).is_err());
        let (b, s) = (0.6, 1.7);
        for z in [c(0.4, 0.9), c(-3.0, 0.1)] {
            let lhs = eval_p(z / (s * s), s, b).unwrap();
            let rhs = s * s * eval_p(z, 1.0, b).unwrap();
            assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
        }
    }

    #[test]
    fn roots_satisfy_cubic_and_vieta() {
        for (x, s, b) in [(c(0.4, 0.0), 1.0, 1.0), (c(0.3, 0.8), 0.7, 2.0), (c(0.0, 5.0), 1.0, 0.1), (c(3.0, -1.0), 1.4, 100.0)] {
            let r = roots_z(x, s, b).unwrap();
            let y = x * x;
            for z in r.z {
                let p = eval_p(z, s, b).unwrap();
                assert!((p - y).norm() < 1e-10 * (1.0 + y.norm()), "{x} {s} {b}: {p} vs {y}");
            }
            let cf = shifted_cubic(y, s, b);
            let sum = r.u[0] + r.u[1] + r.u[2];
            let prod = r.u[0] * r.u[1] * r.u[2];
            assert!((sum + cf[2] / cf[3]).norm() < 1e-10 * (1.0 + sum.norm()));
            assert!((prod + cf[0] / cf[3]).norm() < 1e-10 * (1.0 + prod.norm()));
            assert!(r.z[0].norm() <= r.z[1].norm() * (1.0 + TIE_REL_TOL) && r.z[1].norm() <= r.z[2].norm() * (1.0 + TIE_REL_TOL));
        }
    }

    #[test]
    fn large_x_smallest_root() {
        let r = roots_z(c(100.0, 0.0), 1.0, 1.0).unwrap();
        assert!((r.z1() * 1e4 - 1.0).norm() <= 0.1);
        let r = roots_z(c(1e4, 0.0), 1.0, 3.0).unwrap();
        let p = eval_p(r.z1(), 1.0, 3.0).unwrap();
        assert!((p.re - 1e8).abs() < 1e-12 * 1e8, "{p}");
    }

    #[test]
    fn degenerate_b_root_pair() {
        let x: f64 = 0.6;
        let r = roots_z(c(x, 0.0), 1.0, 1e-8).unwrap();
        let expected = c(8.0 * x * x - 4.0, 8.0 * x * (1.0 - x * x).sqrt());
        let (lo, hi) = (r.z[0], r.z[1]);
        assert!(r.ties[0]);
        assert!((lo - expected.conj()).norm() < 1e-6 && (hi - expected).norm() < 1e-6, "{lo} {hi}");
        assert!((lo.norm() - 4.0).abs() < 1e-6);
    }

    #[test]
    fn far_imaginary_point_is_on_second_cut() {
        let r = roots_z(c(0.0, 10.0), 1.0, 1.0).unwrap();
        assert!(r.ties[1] && !r.ties[0]);
    }

    #[test]
    fn support_constants_at_one() {
        let (c1, c2) = support_constants(1.0).unwrap();
        let e1 = ((44.0 + 2f64.sqrt() * 10f64.powf(1.5)) / 32.0).sqrt();
        let e2 = ((2f64.sqrt() * 10f64.powf(1.5) - 44.0) / 32.0).sqrt();
        assert!((c1 - e1).abs() < 1e-14 && (c2 - e2).abs() < 1e-12);
        assert!((c1 - 1.66510).abs() < 1e-5 && (c2 - 0.150142).abs() < 1e-6);
        let (c1, _) = support_constants(1e-5).unwrap();
        assert!((c1 - 1.0).abs() < 1e-8);
    }

    #[test]
    fn critical_values() {
        for (s, b) in [(1.0, 1.0), (0.5, 0.1), (1.3, 100.0)] {
            let d = supports(s, b).unwrap();
            let p1 = eval_p(c(d.z_crit_plus, 0.0), s, b).unwrap().re;
            let p2 = eval_p(c(d.z_crit_minus, 0.0), s, b).unwrap().re;
            assert!((p1 - d.y1).abs() < 1e-10 * d.y1.abs());
            assert!((p2 - d.y2).abs() < 1e-8 * d.y2.abs().max(1e-300), "{p2} vs {}", d.y2);
            assert!(eval_p(c(d.z_crit_zero, 0.0), s, b).unwrap().norm() < 1e-10);
            let pole = -4.0 / (b * b * s * s);
            assert!(pole < d.z_crit_minus && d.z_crit_minus < d.z_crit_zero);
            assert!(d.c1 > d.c2 && d.c2 > 0.0 || b < 0.2);
        }
    }

    #[test]
    fn bisection_matches_closed_form() {
        for b in [0.1, 1.0, 100.0] {
            let d = supports(1.0, b).unwrap();
            let e1 = gamma1_endpoint_by_bisection(1.0, b).unwrap();
            let e2 = gamma2_endpoint_by_bisection(1.0, b).unwrap();
            assert!((e1 - d.c1).abs() < 1e-6 * d.c1, "b {b}: {e1} vs {}", d.c1);
            assert!((e2 - d.c2).abs() < 1e-6 * d.c2, "b {b}: {e2} vs {}", d.c2);
        }
    }

    #[test]
    fn gamma_dichotomy_and_scaling() {
        let (s, b) = (0.7, 1.0);
        let d = supports(s, b).unwrap();
        for f in [0.1, 0.5, 0.95] {
            assert!(roots_z(c(f * d.c1 * s, 0.0), s, b).unwrap().ties[0]);
        }
        for f in [1.05, 2.0] {
            assert!(!roots_z(c(f * d.c1 * s, 0.0), s, b).unwrap().ties[0]);
        }
        assert!(roots_z(c(0.0, 1.5 * d.c2 * s), s, b).unwrap().ties[1]);
        let x = c(0.37, 0.0);
        let a = roots_z(x, s, b).unwrap();
        let u = roots_z(x / s, 1.0, b).unwrap();
        for j in 0..3 {
            assert!((a.z[j] - u.z[j] / (s * s)).norm() < 1e-10 * a.z[j].norm());
        }
    }

    #[test]
    fn masses_and_symmetry() {
        for b in [0.1, 1.0, 100.0] {
            let m1 = mu_mass(1.0, b, Weight::First, 1e-11).unwrap();
            assert!((m1 - 1.0).abs() < 1e-8, "b {b}: {m1}");
            let m2 = mu_mass(0.8, b, Weight::Second, 1e-10).unwrap();
            assert!((m2 - 0.5).abs() < 1e-6, "b {b}: {m2}");
        }
        let d = supports(1.0, 1.0).unwrap();
        for f in [0.05, 0.4, 0.9] {
            let x = f * d.c1;
            let p = mu_density(c(x, 0.0), 1.0, 1.0, Weight::First).unwrap();
            let m = mu_density(c(-x, 0.0), 1.0, 1.0, Weight::First).unwrap();
            assert!(p > 0.0 && (p - m).abs() < 1e-10 * p);
            let y = (1.0 + 3.0 * f) * d.c2;
            let p = mu_density(c(0.0, y), 1.0, 1.0, Weight::Second).unwrap();
            let m = mu_density(c(0.0, -y), 1.0, 1.0, Weight::Second).unwrap();
            assert!(p > 0.0 && (p - m).abs() < 1e-10 * p);
        }
        assert_eq!(mu_density(c(2.0 * d.c1, 0.0), 1.0, 1.0, Weight::First).unwrap(), 0.0);
    }

    #[test]
    fn origin_density_is_the_limit() {
        let at0 = mu_density(c(0.0, 0.0), 1.0, 0.7, Weight::First).unwrap();
        let near = mu_density(c(1e-5, 0.0), 1.0, 0.7, Weight::First).unwrap();
        assert!((at0 - near).abs() < 1e-6 * at0);
    }

    #[test]
    fn truncation_structure() {
        let d = symbol_blocks(1.0, 1.0).unwrap();
        let m = block_toeplitz_truncation(&d, 1).unwrap();
        let ev = interlacing_spectrum(&m).unwrap();
        let r = (d.a_s * d.a_s + d.b_s).sqrt();
        assert!((ev[0] + r).abs() < 1e-14 && (ev[1] - r).abs() < 1e-14);
        let m = block_toeplitz_truncation(&d, 6).unwrap();
        assert!(m.check_structure());
        for k in 0..5 {
            assert_eq!(m.get(2 * k + 1, 2 * k + 2), 1.0);
            assert_eq!(m.get(2 * k + 2, 2 * k), d.c_s);
            assert_eq!(m.get(2 * k + 3, 2 * k + 1), -d.c_s);
        }
    }
}
