//! Dense real matrices, eigenvalues by Hessenberg reduction and Francis
//! double-shift QR, pivoted LU log-determinants, and a bisection solver for
//! the real spectrum of lower-Hessenberg matrices with unit superdiagonal.

use std::cmp::Ordering;

use num_complex::Complex64;
use crate::{Error, Result};

/// Dense row-major real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            m.data[i * c..(i + 1) * c].copy_from_slice(row);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Companion matrix of the monic polynomial
    /// `x^n + coeffs[n-1] x^{n-1} + ... + coeffs[0]`.
    pub fn companion(coeffs: &[f64]) -> Self {
        let n = coeffs.len();
        let mut m = Self::zeros(n, n);
        for j in 0..n {
            m[(0, j)] = -coeffs[n - 1 - j];
        }
        for i in 1..n {
            m[(i, i - 1)] = 1.0;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows).map(|i| self.row(i).iter().map(|v| v.abs()).sum::<f64>()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Square matrix that is zero below `lower_bandwidth` subdiagonals and,
/// when `unit_superdiagonal` is set, zero above the first superdiagonal
/// with ones on it.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedMatrix {
    pub n: usize,
    pub lower_bandwidth: usize,
    pub entries: Matrix,
    pub unit_superdiagonal: bool,
}

impl BandedMatrix {
    /// Empty lower-Hessenberg matrix with ones on the superdiagonal.
    pub fn unit_hessenberg(n: usize, lower_bandwidth: usize) -> Self {
        let mut entries = Matrix::zeros(n, n);
        for i in 0..n.saturating_sub(1) {
            entries[(i, i + 1)] = 1.0;
        }
        Self { n, lower_bandwidth, entries, unit_superdiagonal: true }
    }

    /// Sets entry `(i, j)`; panics outside the declared band.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(i <= j + self.lower_bandwidth, "({i},{j}) below the band");
        if self.unit_superdiagonal {
            assert!(j <= i, "({i},{j}) is fixed by the unit superdiagonal");
        }
        self.entries[(i, j)] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }

    /// Checks the structural invariants exactly.
    pub fn check_structure(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let v = self.entries[(i, j)];
                if i > j + self.lower_bandwidth && v != 0.0 {
                    return false;
                }
                if self.unit_superdiagonal {
                    if j == i + 1 && v != 1.0 {
                        return false;
                    }
                    if j > i + 1 && v != 0.0 {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn to_dense(&self) -> Matrix {
        self.entries.clone()
    }
}

/// Tridiagonal-plus recurrence matrix: diagonal `a_k`, subdiagonal `b_k`,
/// second subdiagonal `c_k`, ones on the superdiagonal. Its characteristic
/// polynomial is the degree-`n` member of the monic sequence generated by
/// `x q_k = q_{k+1} + a_k q_k + b_k q_{k-1} + c_k q_{k-2}`.
pub fn build_recurrence_matrix(coeffs: impl Fn(usize) -> (f64, f64, f64), n: usize) -> BandedMatrix {
    let mut m = BandedMatrix::unit_hessenberg(n, 2);
    for k in 0..n {
        let (a, b, c) = coeffs(k);
        m.set(k, k, a);
        if k >= 1 {
            m.set(k, k - 1, b);
        }
        if k >= 2 {
            m.set(k, k - 2, c);
        }
    }
    m
}

/// Eigenvalues sorted by real part, then imaginary part.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex64>,
    pub max_imag: f64,
}

impl Spectrum {
    fn new(mut eigenvalues: Vec<Complex64>) -> Self {
        eigenvalues.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let max_imag = eigenvalues.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        Self { eigenvalues, max_imag }
    }

    /// Real parts, provided every imaginary part is at most `tol`;
    /// otherwise the offending eigenvalue is reported.
    pub fn snap_real(&self, tol: f64) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(self.eigenvalues.len());
        for z in &self.eigenvalues {
            if z.im.abs() > tol {
                return Err(Error::NonRealEigenvalue { re: z.re, im: z.im, tol });
            }
            out.push(z.re);
        }
        out.sort_by(f64::total_cmp);
        Ok(out)
    }

    /// Eigenvalues whose imaginary part is at most `tol`, as reals.
    pub fn real_subset(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self.eigenvalues.iter().filter(|z| z.im.abs() <= tol).map(|z| z.re).collect();
        out.sort_by(f64::total_cmp);
        out
    }
}

/// Relative threshold for snapping eigenvalues to the real axis.
pub const SNAP_REL_TOL: f64 = 1e-8;

/// All eigenvalues of a dense real square matrix.
pub fn eigenvalues(m: &Matrix) -> Result<Spectrum> {
    if !m.is_square() || m.rows() == 0 {
        return Err(Error::InvalidParams(format!("eigenvalues need a nonempty square matrix, got {}x{}", m.rows(), m.cols())));
    }
    if !m.is_finite() {
        return Err(Error::InvalidParams("matrix has non-finite entries".into()));
    }
    let mut a = m.clone();
    balance(&mut a);
    hessenberg(&mut a);
    let eig = hqr(&mut a)?;
    Ok(Spectrum::new(eig))
}

/// Real eigenvalues of a banded matrix, snapping imaginary parts below
/// `SNAP_REL_TOL·‖M‖∞` and failing on anything larger.
pub fn real_eigenvalues(m: &BandedMatrix) -> Result<Vec<f64>> {
    let dense = m.to_dense();
    let spec = eigenvalues(&dense)?;
    spec.snap_real(SNAP_REL_TOL * dense.norm_inf().max(f64::MIN_POSITIVE))
}

/// Diagonal similarity scaling by powers of two so row and column norms
/// are comparable.
fn balance(a: &mut Matrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let sqrdx = RADIX * RADIX;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                while c < g {
                    f *= RADIX;
                    c *= sqrdx;
                }
                g = r * RADIX;
                while c > g {
                    f /= RADIX;
                    c /= sqrdx;
                }
                if (c + r) / f < 0.95 * s {
                    done = false;
                    let g = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= g;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
    }
}

/// In-place reduction to upper Hessenberg form by Householder reflectors.
fn hessenberg(a: &mut Matrix) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    let mut v = vec![0.0; n];
    for k in 0..n - 2 {
        let mut norm = 0.0;
        for i in k + 1..n {
            norm += a[(i, k)] * a[(i, k)];
        }
        let norm = norm.sqrt();
        if norm == 0.0 {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let alpha = if x0 >= 0.0 { -norm } else { norm };
        for i in k + 1..n {
            v[i] = a[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm2: f64 = (k + 1..n).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = 2.0 / vnorm2;
        // A ← (I − β v vᵀ) A
        for j in k..n {
            let mut s = 0.0;
            for i in k + 1..n {
                s += v[i] * a[(i, j)];
            }
            s *= beta;
            for i in k + 1..n {
                a[(i, j)] -= s * v[i];
            }
        }
        // A ← A (I − β v vᵀ)
        for i in 0..n {
            let mut s = 0.0;
            for j in k + 1..n {
                s += a[(i, j)] * v[j];
            }
            s *= beta;
            for j in k + 1..n {
                a[(i, j)] -= s * v[j];
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix; eigenvalues only.
fn hqr(a: &mut Matrix) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let eps = f64::EPSILON;
    let mut wr = vec![Complex64::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    let max_sweeps = 40 * n;
    let mut sweeps = 0usize;
    let mut nn = n as isize - 1;
    let mut t = 0.0;
    let (mut p, mut q, mut r): (f64, f64, f64);
    let (mut x, mut y, mut z, mut w, mut s);
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            let mut l = nu;
            while l > 0 {
                s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= eps * s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            x = a[(nu, nu)];
            if l == nu {
                wr[nu] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            y = a[(nu - 1, nu - 1)];
            w = a[(nu, nu - 1)] * a[(nu - 1, nu)];
            if l + 1 == nu {
                p = 0.5 * (y - x);
                q = p * p + w;
                z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + z.copysign(p);
                    wr[nu - 1] = Complex64::new(x + z, 0.0);
                    wr[nu] = Complex64::new(x + z, 0.0);
                    if z != 0.0 {
                        wr[nu] = Complex64::new(x - w / z, 0.0);
                    }
                } else {
                    wr[nu] = Complex64::new(x + p, -z);
                    wr[nu - 1] = Complex64::new(x + p, z);
                }
                nn -= 2;
                break;
            }
            if sweeps >= max_sweeps {
                return Err(Error::IterationLimit { sweeps, n });
            }
            if its > 0 && its % 10 == 0 {
                // Exceptional shift after a run of stalled sweeps.
                t += x;
                for i in 0..=nu {
                    a[(i, i)] -= x;
                }
                s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            sweeps += 1;
            let mut m = nu - 2;
            loop {
                z = a[(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - r - s;
                r = a[(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..nu - 1 {
                a[(i + 2, i)] = 0.0;
                if i != m {
                    a[(i + 2, i - 1)] = 0.0;
                }
            }
            for k in m..nu {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = 0.0;
                    if k + 1 != nu {
                        r = a[(k + 2, k - 1)];
                    }
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s != 0.0 {
                    if k == m {
                        if l != m {
                            a[(k, k - 1)] = -a[(k, k - 1)];
                        }
                    } else {
                        a[(k, k - 1)] = -s * x;
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;
                    for j in k..=nu {
                        p = a[(k, j)] + q * a[(k + 1, j)];
                        if k + 1 != nu {
                            p += r * a[(k + 2, j)];
                            a[(k + 2, j)] -= p * z;
                        }
                        a[(k + 1, j)] -= p * y;
                        a[(k, j)] -= p * x;
                    }
                    let mmin = if nu < k + 3 { nu } else { k + 3 };
                    for i in l..=mmin {
                        p = x * a[(i, k)] + y * a[(i, k + 1)];
                        if k + 1 != nu {
                            p += z * a[(i, k + 2)];
                            a[(i, k + 2)] -= p * r;
                        }
                        a[(i, k + 1)] -= p * q;
                        a[(i, k)] -= p;
                    }
                }
            }
        }
    }
    Ok(wr)
}

/// `(sign, log|det|)` by LU with partial pivoting. `sign` is 0 when a pivot
/// is exactly zero.
pub fn log_det(m: &Matrix) -> (i8, f64) {
    assert!(m.is_square(), "log_det needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut sign = 1i8;
    let mut log_abs = 0.0;
    for k in 0..n {
        let mut piv = k;
        let mut best = a[(k, k)].abs();
        for i in k + 1..n {
            if a[(i, k)].abs() > best {
                best = a[(i, k)].abs();
                piv = i;
            }
        }
        if best == 0.0 {
            return (0, f64::NEG_INFINITY);
        }
        if piv != k {
            for j in 0..n {
                let tmp = a[(k, j)];
                a[(k, j)] = a[(piv, j)];
                a[(piv, j)] = tmp;
            }
            sign = -sign;
        }
        let d = a[(k, k)];
        if d < 0.0 {
            sign = -sign;
        }
        log_abs += d.abs().ln();
        for i in k + 1..n {
            let f = a[(i, k)] / d;
            if f == 0.0 {
                continue;
            }
            for j in k + 1..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    (sign, log_abs)
}

/// Leading principal minors without pivoting, as `(sign, log|minor|)` for
/// sizes `1..=n`. Stops at the first exactly zero pivot.
pub fn leading_minors(m: &Matrix) -> Vec<(i8, f64)> {
    assert!(m.is_square());
    let n = m.rows();
    let mut a = m.clone();
    let mut out = Vec::with_capacity(n);
    let mut sign = 1i8;
    let mut log_abs = 0.0;
    for k in 0..n {
        let d = a[(k, k)];
        if d == 0.0 {
            out.push((0, f64::NEG_INFINITY));
            break;
        }
        if d < 0.0 {
            sign = -sign;
        }
        log_abs += d.abs().ln();
        out.push((sign, log_abs));
        for i in k + 1..n {
            let f = a[(i, k)] / d;
            for j in k + 1..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    out
}

/// Evaluates `p_size` and its derivative at `x`, where `p_m` is the
/// characteristic polynomial of the leading `m×m` block of a
/// unit-superdiagonal lower-Hessenberg matrix:
/// `p_{m+1}(x) = (x − h_mm) p_m − Σ_{j<m} h_mj p_j`.
///
/// Both values carry the same positive rescaling factor, applied whenever
/// they grow large, so signs and the Newton ratio `p/p'` are exact while
/// the magnitudes are not.
fn char_poly_scaled(h: &BandedMatrix, size: usize, x: f64, window: &mut Vec<(f64, f64)>) -> (f64, f64) {
    let bw = h.lower_bandwidth;
    let len = bw + 1;
    window.clear();
    window.resize(len, (0.0, 0.0));
    window[0] = (1.0, 0.0);
    for m in 0..size {
        let (pm, dpm) = window[m % len];
        let shift = x - h.get(m, m);
        let mut p = shift * pm;
        let mut dp = pm + shift * dpm;
        for j in m.saturating_sub(bw)..m {
            let hv = h.get(m, j);
            if hv != 0.0 {
                let (pj, dpj) = window[j % len];
                p -= hv * pj;
                dp -= hv * dpj;
            }
        }
        window[(m + 1) % len] = (p, dp);
        let mag = p.abs().max(dp.abs());
        if mag > 1e150 || (mag < 1e-150 && mag != 0.0) {
            let scale = if mag > 1e150 { 1e-150 } else { 1e150 };
            for v in window.iter_mut() {
                v.0 *= scale;
                v.1 *= scale;
            }
        }
    }
    window[size % len]
}

/// Real spectrum of a unit-superdiagonal lower-Hessenberg matrix whose
/// leading principal submatrices have real, strictly interlacing spectra
/// (as for recurrence matrices of multiple orthogonal polynomials).
///
/// The zeros of each leading characteristic polynomial bracket those of the
/// next, so every eigenvalue is isolated by a sign change and refined by
/// safeguarded Newton. A bracket without a sign change means the
/// interlacing assumption fails and is reported as an error; nothing is
/// silently dropped.
pub fn interlacing_spectrum(h: &BandedMatrix) -> Result<Vec<f64>> {
    Ok(interlacing_cascade(h)?.pop().unwrap_or_default())
}

/// Like [`interlacing_spectrum`] but returns the zeros of every leading
/// characteristic polynomial `p_1, ..., p_n`.
pub fn interlacing_cascade(h: &BandedMatrix) -> Result<Vec<Vec<f64>>> {
    if !h.unit_superdiagonal {
        return Err(Error::InvalidParams("interlacing spectrum needs a unit superdiagonal".into()));
    }
    if !h.entries.is_finite() {
        return Err(Error::InvalidParams("matrix has non-finite entries".into()));
    }
    let n = h.n;
    // Every leading block has row-sum norm at most that of the full matrix.
    let bound = h.entries.norm_inf() * (1.0 + 1e-12) + f64::MIN_POSITIVE;
    let mut window = Vec::new();
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut prev: Vec<f64> = Vec::new();
    for size in 1..=n {
        let mut edges = Vec::with_capacity(size + 1);
        edges.push(-bound);
        edges.extend_from_slice(&prev);
        edges.push(bound);
        let mut current = Vec::with_capacity(size);
        for i in 0..size {
            let (lo, hi) = (edges[i], edges[i + 1]);
            let root = bracketed_newton(|x| char_poly_scaled(h, size, x, &mut window), lo, hi)
                .ok_or(Error::Interlacing { degree: size, lo, hi })?;
            current.push(root);
        }
        levels.push(current.clone());
        prev = current;
    }
    Ok(levels)
}

/// Zero of `f` on `[lo, hi]` given a sign change, by Newton steps that fall
/// back to bisection whenever they leave the bracket or stall. `f` returns
/// the value and derivative, possibly both multiplied by a common positive
/// factor. Returns `None` when the endpoints have the same sign.
pub(crate) fn bracketed_newton(mut f: impl FnMut(f64) -> (f64, f64), lo: f64, hi: f64) -> Option<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo).0;
    let fhi = f(hi).0;
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    let lo_sign = flo.signum();
    let mut x = 0.5 * (lo + hi);
    let mut dx_old = hi - lo;
    let mut dx = dx_old;
    for _ in 0..300 {
        let (v, dv) = f(x);
        if v == 0.0 {
            return Some(x);
        }
        if v.signum() == lo_sign {
            lo = x;
        } else {
            hi = x;
        }
        let newton_ok = dv != 0.0 && {
            let step = v / dv;
            let candidate = x - step;
            candidate > lo && candidate < hi && (2.0 * step).abs() <= dx_old.abs()
        };
        dx_old = dx;
        if newton_ok {
            dx = v / dv;
            x -= dx;
        } else {
            dx = 0.5 * (hi - lo);
            x = lo + dx;
        }
        if dx.abs() <= 2.0 * f64::EPSILON * x.abs() || hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return Some(x);
        }
    }
    Some(x)
}

/// Orders complex numbers by real part, then imaginary part.
pub fn cmp_complex(a: &Complex64, b: &Complex64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_and_swap() {
        let s = eigenvalues(&Matrix::identity(5)).unwrap();
        assert!(s.eigenvalues.iter().all(|z| (z - 1.0).norm() < 1e-14));
        let s = eigenvalues(&Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])).unwrap();
        assert!(close(s.eigenvalues[0].re, -1.0, 1e-14) && close(s.eigenvalues[1].re, 1.0, 1e-14));
        assert_eq!(s.max_imag, 0.0);
    }

    #[test]
    fn cube_roots_of_unity() {
        let s = eigenvalues(&Matrix::companion(&[-1.0, 0.0, 0.0])).unwrap();
        let h = 3f64.sqrt() / 2.0;
        let expected = [Complex64::new(-0.5, -h), Complex64::new(-0.5, h), Complex64::new(1.0, 0.0)];
        for (z, e) in s.eigenvalues.iter().zip(expected.iter()) {
            assert!((z - e).norm() < 1e-14, "{z} vs {e}");
        }
        assert!(close(s.max_imag, h, 1e-14));
    }

    #[test]
    fn permutation_similarity() {
        let n = 12;
        let m = Matrix::from_fn(n, n, |i, j| ((i * 7 + j * 13) % 11) as f64 - 5.0 + if i == j { 3.0 } else { 0.0 });
        let perm: Vec<usize> = (0..n).map(|i| (i * 5) % n).collect();
        let pm = Matrix::from_fn(n, n, |i, j| m[(perm[i], perm[j])]);
        let a = eigenvalues(&m).unwrap();
        let b = eigenvalues(&pm).unwrap();
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            assert!((x - y).norm() < 1e-10, "{x} vs {y}");
        }
    }

    #[test]
    fn symmetric_tridiagonal_closed_form() {
        // Eigenvalues of tridiag(1, 0, 1) are 2 cos(kπ/(n+1)).
        let n = 30;
        let m = Matrix::from_fn(n, n, |i, j| if i.abs_diff(j) == 1 { 1.0 } else { 0.0 });
        let s = eigenvalues(&m).unwrap();
        let mut expected: Vec<f64> = (1..=n).map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos()).collect();
        expected.sort_by(f64::total_cmp);
        for (z, e) in s.eigenvalues.iter().zip(&expected) {
            assert!((z.re - e).abs() < 1e-12 && z.im.abs() < 1e-12);
        }
    }

    #[test]
    fn snapping_policy() {
        let s = Spectrum::new(vec![Complex64::new(1.0, 1e-12), Complex64::new(1.0, -1e-12)]);
        assert_eq!(s.snap_real(1e-8).unwrap(), vec![1.0, 1.0]);
        let s = Spectrum::new(vec![Complex64::new(1.0, 0.1)]);
        assert!(matches!(s.snap_real(1e-8), Err(Error::NonRealEigenvalue { .. })));
    }

    #[test]
    fn log_det_examples() {
        assert_eq!(log_det(&Matrix::identity(4)), (1, 0.0));
        let (s, l) = log_det(&Matrix::from_rows(&[vec![2.0, 0.0], vec![0.0, 3.0]]));
        assert_eq!(s, 1);
        assert!(close(l, 6f64.ln(), 1e-15));
        let hilbert = Matrix::from_fn(3, 3, |i, j| 1.0 / (i + j + 1) as f64);
        let (s, l) = log_det(&hilbert);
        assert_eq!(s, 1);
        assert!(close(l, -(2160f64.ln()), 1e-12));
        let (s, _) = log_det(&Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]));
        assert_eq!(s, 0);
        let (s, l) = log_det(&Matrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]));
        assert_eq!((s, l), (-1, 0.0));
    }

    #[test]
    fn leading_minors_match_log_det() {
        let m = Matrix::from_fn(5, 5, |i, j| 1.0 / (i + j + 1) as f64 + if i == j { 1.0 } else { 0.0 });
        let minors = leading_minors(&m);
        for k in 1..=5 {
            let sub = Matrix::from_fn(k, k, |i, j| m[(i, j)]);
            let (s, l) = log_det(&sub);
            assert_eq!(minors[k - 1].0, s);
            assert!(close(minors[k - 1].1, l, 1e-13));
        }
    }

    #[test]
    fn recurrence_matrix_small_cases() {
        let m = build_recurrence_matrix(|_| (0.7, 0.0, 0.0), 1);
        assert_eq!(m.to_dense(), Matrix::from_rows(&[vec![0.7]]));
        let coeffs = |k: usize| [(0.3, 0.0, 0.0), (-0.2, 1.5, 0.0), (0.1, 0.8, 0.4)][k];
        let m = build_recurrence_matrix(coeffs, 2);
        assert!(m.check_structure());
        // (x − a₀)(x − a₁) − b₁
        let (a0, a1, b1) = (0.3f64, -0.2f64, 1.5f64);
        let disc = ((a0 - a1).powi(2) + 4.0 * b1).sqrt();
        let r = real_eigenvalues(&m).unwrap();
        assert!(close(r[0], 0.5 * (a0 + a1 - disc), 1e-14));
        assert!(close(r[1], 0.5 * (a0 + a1 + disc), 1e-14));
    }

    #[test]
    fn recurrence_matrix_three_term_char_poly() {
        // Expand the recurrence in coefficient space and compare with the
        // characteristic polynomial evaluated through the determinant.
        let coeffs = |k: usize| [(0.3, 0.0, 0.0), (-0.2, 1.5, 0.0), (0.1, 0.8, 0.4)][k];
        let m = build_recurrence_matrix(coeffs, 3);
        let mut q: Vec<Vec<f64>> = vec![vec![1.0]];
        for k in 0..3 {
            let (a, b, c) = coeffs(k);
            let mut next = vec![0.0; k + 2];
            for (i, v) in q[k].iter().enumerate() {
                next[i + 1] += v;
                next[i] -= a * v;
            }
            if k >= 1 {
                for (i, v) in q[k - 1].iter().enumerate() {
                    next[i] -= b * v;
                }
            }
            if k >= 2 {
                for (i, v) in q[k - 2].iter().enumerate() {
                    next[i] -= c * v;
                }
            }
            q.push(next);
        }
        for &x in &[-1.3f64, 0.0, 0.4, 2.2] {
            let poly: f64 = q[3].iter().enumerate().map(|(i, v)| v * x.powi(i as i32)).sum();
            let shifted = Matrix::from_fn(3, 3, |i, j| if i == j { x } else { 0.0 } - m.get(i, j));
            let (s, l) = log_det(&shifted);
            assert!(close(s as f64 * l.exp(), poly, 1e-12), "x = {x}");
        }
    }

    #[test]
    fn interlacing_matches_symmetrized_tridiagonal() {
        // The unit-superdiagonal form is badly non-normal, so QR on it loses
        // the real spectrum; the diagonally similar symmetric matrix keeps it.
        let n = 40;
        let a = |k: usize| 0.1 * k as f64;
        let b = |k: usize| 0.5 + k as f64;
        let m = build_recurrence_matrix(|k| (a(k), b(k), 0.0), n);
        let sym = Matrix::from_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => a(i),
            1 => b(i.max(j)).sqrt(),
            _ => 0.0,
        });
        let bisected = interlacing_spectrum(&m).unwrap();
        let reference = eigenvalues(&sym).unwrap().snap_real(1e-10).unwrap();
        for (x, y) in bisected.iter().zip(&reference) {
            assert!((x - y).abs() < 1e-10 * (1.0 + y.abs()), "{x} vs {y}");
        }
    }

    #[test]
    fn interlacing_reports_complex_spectrum() {
        // Rotation-like block: x² + 1 has no real zeros.
        let m = build_recurrence_matrix(|k| (0.0, if k == 1 { -1.0 } else { 0.0 }, 0.0), 2);
        assert!(matches!(interlacing_spectrum(&m), Err(Error::Interlacing { .. })));
    }

    #[test]
    fn structure_check_rejects_bad_band() {
        let mut m = BandedMatrix::unit_hessenberg(4, 1);
        m.set(2, 1, 3.0);
        assert!(m.check_structure());
        m.entries[(3, 0)] = 1.0;
        assert!(!m.check_structure());
    }
}
