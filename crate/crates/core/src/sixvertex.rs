//! Six-vertex model with domain wall boundary conditions on an `N×N` grid,
//! with rows split into two blocks of spectral differences `t₁`, `t₂`.
//!
//! The partition function is a prefactor times the determinant of a mixed
//! moment matrix against `e^{t_j x} w(x)`, where
//!
//! ```text
//! w(x) = sinh(x(π − 2γ)/2) / sinh(xπ/2).
//! ```
//!
//! On the free fermion line `γ = π/4` the determinant also factors as a
//! product of first non-vanishing moments `h` of multiple Meixner-Pollaczek
//! polynomials with `λ = 1/2`, `t = 2t_j` and the variable scaled by 4.
//! [`transfer_matrix_partition`] sums the configurations directly and is
//! independent of both routes.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::linalg::{leading_minors, log_det, Matrix};
use crate::mmp::{first_moment, IndexPair, SignedLog, StaircasePath, Weight};
use crate::quadrature::{integrate_weighted, QuadratureSpec};
use crate::specfun::ModelParams;
use crate::{Error, Result};

/// Largest lattice for the moment matrix.
pub const MAX_MATRIX_SIZE: usize = 14;
/// Largest lattice for [`partition_function`].
pub const MAX_PARTITION_SIZE: usize = 12;

const MOMENT_TOL: f64 = 1e-14;

/// Lattice size `n = n₁ + n₂`, vertex parameter `γ` and the two row
/// differences `t₁` (first `n₁` rows) and `t₂` (remaining `n₂` rows).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexModelParams {
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub gamma: f64,
    pub t1: f64,
    pub t2: f64,
}

impl VertexModelParams {
    /// Needs `0 < γ < π/2` and `|t_j| < γ`.
    pub fn new(n: usize, n1: usize, gamma: f64, t1: f64, t2: f64) -> Result<Self> {
        if n == 0 || n1 > n {
            return Err(Error::InvalidParams(format!("need 0 <= n1 <= N and N >= 1, got N = {n}, n1 = {n1}")));
        }
        if !(gamma > 0.0 && gamma < FRAC_PI_2) {
            return Err(Error::InvalidParams(format!("gamma = {gamma} outside (0, pi/2)")));
        }
        for (name, t) in [("t1", t1), ("t2", t2)] {
            if !(t.abs() < gamma) {
                return Err(Error::InvalidParams(format!("|{name}| = {} must be below gamma = {gamma}", t.abs())));
            }
        }
        Ok(Self { n, n1, n2: n - n1, gamma, t1, t2 })
    }

    /// All rows share the difference `t`.
    pub fn homogeneous(n: usize, gamma: f64, t: f64) -> Result<Self> {
        Self::new(n, n, gamma, t, t)
    }

    /// `γ = π/4`.
    pub fn free_fermion(n: usize, n1: usize, t1: f64, t2: f64) -> Result<Self> {
        Self::new(n, n1, FRAC_PI_4, t1, t2)
    }

    pub fn is_free_fermion(&self) -> bool {
        (self.gamma - FRAC_PI_4).abs() <= 4.0 * f64::EPSILON
    }

    /// One block only, or equal differences in both blocks.
    pub fn is_homogeneous(&self) -> bool {
        self.n1 == 0 || self.n2 == 0 || self.t1 == self.t2
    }

    /// Collapses an equal-difference pair of blocks into one.
    fn normalized(&self) -> Self {
        if self.n1 == 0 {
            Self { n1: self.n, n2: 0, t1: self.t2, ..*self }
        } else if self.t1 == self.t2 {
            Self { n1: self.n, n2: 0, ..*self }
        } else {
            *self
        }
    }

    fn t(&self, which: Weight) -> f64 {
        match which {
            Weight::First => self.t1,
            Weight::Second => self.t2,
        }
    }

    /// Difference `x_i − y_j` of row `i` (0-based).
    pub fn row_difference(&self, i: usize) -> f64 {
        if i < self.n1 {
            self.t1
        } else {
            self.t2
        }
    }
}

/// `log w(x)` for `w(x) = sinh(x(π − 2γ)/2) / sinh(xπ/2)`, with the value
/// `(π − 2γ)/π` at the origin.
pub fn log_vertex_weight(x: f64, gamma: f64) -> f64 {
    let a = 0.5 * (PI - 2.0 * gamma);
    let b = FRAC_PI_2;
    if x == 0.0 {
        return (a / b).ln();
    }
    // log sinh(c) = c + log(1 − e^{−2c}) − log 2 for c > 0.
    let log_sinh = |c: f64| c + (-(-2.0 * c).exp_m1()).ln() - LN_2;
    let y = x.abs();
    log_sinh(a * y) - log_sinh(b * y)
}

pub fn vertex_weight(x: f64, gamma: f64) -> f64 {
    log_vertex_weight(x, gamma).exp()
}

/// `∫ x^power e^{t x} w(x) dx`.
pub fn weight_moment(power: usize, t: f64, gamma: f64) -> Result<f64> {
    if !(t.abs() < gamma) {
        return Err(Error::Domain(format!("moment needs |t| < gamma, got t = {t}, gamma = {gamma}")));
    }
    // w decays like e^{−γ|x|}; its nearest poles sit at ±2i.
    let spec = QuadratureSpec::for_decay(gamma - t.abs(), 0.5, power, 2.0, MOMENT_TOL)?;
    integrate_weighted(|x| x.powi(power as i32), |x| t * x + log_vertex_weight(x, gamma), &spec)
}

/// Moment matrix with rows ordered along `path`: the `r`-th row that uses
/// weight `j` holds `∫ x^{r+c} e^{t_j x} w(x) dx` in column `c`.
pub fn moment_matrix_along(p: &VertexModelParams, path: &StaircasePath) -> Result<Matrix> {
    let p = p.normalized();
    check_path(&p, path)?;
    if p.n > MAX_MATRIX_SIZE {
        return Err(Error::InvalidParams(format!("moment matrix limited to N <= {MAX_MATRIX_SIZE}, got {}", p.n)));
    }
    let n = p.n;
    let mut cache = [vec![None; 2 * n], vec![None; 2 * n]];
    let mut m = Matrix::zeros(n, n);
    let mut seen = [0usize; 2];
    for (i, &which) in path.steps.iter().enumerate() {
        let slot = which.index() - 1;
        let r = seen[slot];
        seen[slot] += 1;
        for c in 0..n {
            let power = r + c;
            let v = match cache[slot][power] {
                Some(v) => v,
                None => {
                    let v = weight_moment(power, p.t(which), p.gamma)?;
                    cache[slot][power] = Some(v);
                    v
                }
            };
            m[(i, c)] = v;
        }
    }
    Ok(m)
}

/// The moment matrix: rows `1..n₁` use `x^{i+j−2} e^{t₁x} w`, rows
/// `n₁+1..N` use `x^{i+j−n₁−2} e^{t₂x} w`.
pub fn moment_matrix(p: &VertexModelParams) -> Result<Matrix> {
    let p = p.normalized();
    moment_matrix_along(&p, &StaircasePath::canonical(IndexPair::new(p.n1, p.n2)))
}

fn check_path(p: &VertexModelParams, path: &StaircasePath) -> Result<()> {
    let end = path.terminal();
    if end != IndexPair::new(p.n1, p.n2) {
        return Err(Error::InvalidParams(format!("staircase ends at {end}, expected ({},{})", p.n1, p.n2)));
    }
    Ok(())
}

/// Meixner-Pollaczek system equivalent to the free-fermion weights after
/// `x = 4u`. A single block gets a dummy second parameter; its moments
/// never involve it.
fn free_fermion_system(p: &VertexModelParams) -> Result<ModelParams> {
    let p = p.normalized();
    let t2 = if p.n2 == 0 { if p.t1 == 0.0 { 0.25 } else { -p.t1 } } else { p.t2 };
    ModelParams::new(0.5, 2.0 * p.t1, 2.0 * t2)
}

/// Free-fermion `h` along `path`: `h_n = 4^{k + k_j + 1} h^{MP}` at the
/// point the `n`-th step leaves from.
pub fn h_sequence(p: &VertexModelParams, path: &StaircasePath) -> Result<Vec<SignedLog>> {
    if !p.is_free_fermion() {
        return Err(Error::InvalidParams(format!("product formula needs gamma = pi/4, got {}", p.gamma)));
    }
    let p = p.normalized();
    check_path(&p, path)?;
    let mp = free_fermion_system(&p)?;
    let ln4 = 2.0 * LN_2;
    let points = path.points();
    Ok(path
        .steps
        .iter()
        .zip(points)
        .map(|(&which, at)| {
            let h = first_moment(at, &mp, which);
            let power = (at.degree() + at.get(which) + 1) as f64;
            SignedLog { sign: h.sign, log_abs: h.log_abs + power * ln4 }
        })
        .collect())
}

/// `(sign, log|Π h|)` along `path`. This is the determinant of the moment
/// matrix whose rows follow the same path.
pub fn product_along(p: &VertexModelParams, path: &StaircasePath) -> Result<(i8, f64)> {
    let hs = h_sequence(p, path)?;
    let sign = hs.iter().map(|h| h.sign).product::<f64>();
    Ok((sign as i8, hs.iter().map(|h| h.log_abs).sum()))
}

/// `(sign, log|Π h|)` over the staircase with all first-block steps first.
pub fn product_formula(p: &VertexModelParams) -> Result<(i8, f64)> {
    let q = p.normalized();
    product_along(&q, &StaircasePath::canonical(IndexPair::new(q.n1, q.n2)))
}

/// `h_n` recovered by bi-orthogonalizing the rows of the moment matrix in
/// path order: the ratio of consecutive leading principal minors.
pub fn biorthogonal_norms(p: &VertexModelParams, path: &StaircasePath) -> Result<Vec<SignedLog>> {
    let m = moment_matrix_along(p, path)?;
    let minors = leading_minors(&m);
    if minors.len() < m.rows() || minors.iter().any(|&(s, _)| s == 0) {
        return Err(Error::Domain("a leading minor of the moment matrix vanishes".into()));
    }
    let mut prev = (1i8, 0.0);
    Ok(minors
        .into_iter()
        .map(|(s, l)| {
            let h = SignedLog { sign: f64::from(s * prev.0), log_abs: l - prev.1 };
            prev = (s, l);
            h
        })
        .collect())
}

/// Partition function assembled in log space, with the determinant of the
/// moment matrix and, on the free fermion line, the product of `h`'s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PartitionResult {
    /// `log |Z_N|`.
    pub log_z: f64,
    pub sign: i8,
    pub log_det_m: f64,
    pub det_sign: i8,
    /// Present on the free fermion line only.
    pub log_prod_h: Option<f64>,
}

impl PartitionResult {
    pub fn z(&self) -> f64 {
        f64::from(self.sign) * self.log_z.exp()
    }

    /// `|log det M − log Π h| / max(1, |log det M|)`, if both routes ran.
    pub fn route_disagreement(&self) -> Option<f64> {
        self.log_prod_h.map(|l| (self.log_det_m - l).abs() / self.log_det_m.abs().max(1.0))
    }
}

/// `log Π_{k<n} k!`.
fn log_superfactorial(n: usize) -> f64 {
    (1..n).map(|j| (n - j) as f64 * (j as f64).ln()).sum()
}

/// `Z_N` from the determinant formula
///
/// ```text
/// Z = [sin(γ+t₁) sin(γ−t₁)]^{n₁N} [sin(γ+t₂) sin(γ−t₂)]^{n₂N} det M
///     / (Π_{k<n₁} k! · Π_{k<n₂} k! · Π_{k<N} k!)
/// ```
///
/// which for one block is `[sin(γ+t) sin(γ−t)]^{N²} det M / (Π_{k<N} k!)²`.
/// With two blocks this expression is off by exactly
/// `sin(t₂ − t₁)^{n₁n₂}`, sign included, against the configuration sum for
/// every `γ` tried; the factor is divided out here. On the free fermion line
/// `log Π h` stands in for `log det M`.
pub fn partition_function(p: &VertexModelParams) -> Result<PartitionResult> {
    let p = p.normalized();
    if p.n > MAX_PARTITION_SIZE {
        return Err(Error::InvalidParams(format!("partition function limited to N <= {MAX_PARTITION_SIZE}, got {}", p.n)));
    }
    let m = moment_matrix(&p)?;
    let (sign, log_det_m) = log_det(&m);
    if sign == 0 {
        return Err(Error::Domain("moment matrix is singular".into()));
    }
    let log_pair = |t: f64| ((p.gamma + t).sin() * (p.gamma - t).sin()).ln();
    let nf = p.n as f64;
    let mut log_pref = p.n1 as f64 * nf * log_pair(p.t1) - log_superfactorial(p.n1) - log_superfactorial(p.n);
    if p.n2 > 0 {
        log_pref += p.n2 as f64 * nf * log_pair(p.t2) - log_superfactorial(p.n2);
    }
    let det_sign = sign;
    let mut sign = sign;
    if p.n2 > 0 {
        let cross = (p.t2 - p.t1).sin();
        log_pref -= (p.n1 * p.n2) as f64 * cross.abs().ln();
        if cross < 0.0 && (p.n1 * p.n2) % 2 == 1 {
            sign = -sign;
        }
    }
    let log_prod_h = if p.is_free_fermion() { Some(product_formula(&p)?.1) } else { None };
    // Near t₁ = t₂ the two blocks of M become nearly dependent and det M
    // loses digits; the product of closed-form h's does not, so it wins.
    let log_z = log_pref + log_prod_h.unwrap_or(log_det_m);
    Ok(PartitionResult { log_z, sign, log_det_m, det_sign, log_prod_h })
}

/// `Z_N` summed over all configurations by a row transfer matrix.
///
/// Configurations are alternating sign matrices. A `±1` entry is a vertex
/// of weight `sin 2γ`. A `0` entry in row `i` is weighted `sin(γ + t_i)`
/// when the partial sums of its row to the left and of its column above
/// agree, and `sin(γ − t_i)` otherwise. Exchanging the two rules amounts
/// to reflecting the lattice, i.e. `t ↦ −t`.
pub fn transfer_matrix_partition(p: &VertexModelParams) -> Result<f64> {
    let c = (2.0 * p.gamma).sin();
    let rows: Vec<_> = (0..p.n)
        .map(|i| {
            let t = p.row_difference(i);
            RowWeights { same: (p.gamma + t).sin(), diff: (p.gamma - t).sin(), c }
        })
        .collect();
    configuration_sum(&rows)
}

#[derive(Debug, Clone, Copy)]
struct RowWeights {
    same: f64,
    diff: f64,
    c: f64,
}

fn configuration_sum(rows: &[RowWeights]) -> Result<f64> {
    let n = rows.len();
    if n > 16 {
        return Err(Error::InvalidParams(format!("transfer matrix limited to N <= 16, got {n}")));
    }
    let mut states = BTreeMap::new();
    states.insert(0u32, 1.0f64);
    for w in rows {
        let mut next = BTreeMap::new();
        for (&mask, &z) in &states {
            extend_row(n, w, mask, 0, 0, 0, z, &mut next);
        }
        states = next;
    }
    Ok(states.get(&((1u32 << n) - 1)).copied().unwrap_or(0.0))
}

/// Walks one row left to right. `mask` has the column sums above the row,
/// `r` is the running row sum, `out` collects the column sums below.
#[allow(clippy::too_many_arguments)]
fn extend_row(n: usize, w: &RowWeights, mask: u32, col: usize, r: u32, out: u32, z: f64, next: &mut BTreeMap<u32, f64>) {
    if col == n {
        if r == 1 {
            *next.entry(out).or_insert(0.0) += z;
        }
        return;
    }
    let above = (mask >> col) & 1;
    let w0 = if above == r { w.same } else { w.diff };
    extend_row(n, w, mask, col + 1, r, out | (above << col), z * w0, next);
    // +1 needs both partial sums at 0, −1 needs both at 1.
    if above == r {
        let flipped = 1 - above;
        extend_row(n, w, mask, col + 1, flipped, out | (flipped << col), z * w.c, next);
    }
}
