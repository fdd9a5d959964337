//! Complex log-gamma and the weight functions.
//!
//! The Meixner-Pollaczek weight is
//!
//! ```text
//! w_j(x) = (1 / 2π) exp(2 t_j x) |Γ(λ + i x)|²
//! ```
//!
//! and decays like `exp((2|t_j| - π)|x|)`. Every weight is evaluated in log
//! space first and exponentiated last so the far tails never underflow
//! before the caller decides they are negligible.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, LN_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Parameters `λ`, `t₁`, `t₂` of the pair of Meixner-Pollaczek weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub lambda: f64,
    pub t1: f64,
    pub t2: f64,
    /// Set when `t₁ = -t₂ = t` with `t ∈ (0, π/2)`.
    pub symmetric: bool,
}

impl ModelParams {
    pub fn new(lambda: f64, t1: f64, t2: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidParams(format!("lambda must be positive, got {lambda}")));
        }
        for (name, t) in [("t1", t1), ("t2", t2)] {
            if !(t.abs() < FRAC_PI_2) {
                return Err(Error::InvalidParams(format!("{name} = {t} outside (-pi/2, pi/2)")));
            }
        }
        if t1 == t2 {
            return Err(Error::InvalidParams("t1 and t2 must differ".into()));
        }
        Ok(Self { lambda, t1, t2, symmetric: t1 > 0.0 && t1 == -t2 })
    }

    /// Symmetric system `t₁ = -t₂ = t`.
    pub fn symmetric(lambda: f64, t: f64) -> Result<Self> {
        if !(t > 0.0 && t < FRAC_PI_2) {
            return Err(Error::InvalidParams(format!("symmetric t = {t} outside (0, pi/2)")));
        }
        Self::new(lambda, t, -t)
    }

    /// Symmetric system parameterised by `b = tan t > 0`.
    pub fn from_b(lambda: f64, b: f64) -> Result<Self> {
        if !(b > 0.0 && b.is_finite()) {
            return Err(Error::InvalidParams(format!("b must be positive, got {b}")));
        }
        Self::symmetric(lambda, b.atan())
    }

    /// `tan t₁`; for symmetric parameters this is `b`.
    pub fn b(&self) -> f64 {
        self.t1.tan()
    }

    pub fn t(&self, which: Weight) -> f64 {
        match which {
            Weight::First => self.t1,
            Weight::Second => self.t2,
        }
    }

    /// Exponential decay rate shared by both weights.
    pub fn decay_rate(&self) -> f64 {
        PI - 2.0 * self.t1.abs().max(self.t2.abs())
    }

    /// The same system with the roles of the two weights exchanged.
    pub fn swapped(&self) -> Self {
        Self { lambda: self.lambda, t1: self.t2, t2: self.t1, symmetric: self.symmetric }
    }
}

/// Selects `w₁` or `w₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weight {
    First,
    Second,
}

impl Weight {
    pub fn from_index(j: usize) -> Result<Self> {
        match j {
            1 => Ok(Weight::First),
            2 => Ok(Weight::Second),
            _ => Err(Error::InvalidParams(format!("weight index must be 1 or 2, got {j}"))),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Weight::First => 1,
            Weight::Second => 2,
        }
    }

    pub fn other(self) -> Self {
        match self {
            Weight::First => Weight::Second,
            Weight::Second => Weight::First,
        }
    }
}

// Lanczos coefficients for g = 671/128, 14 terms.
const LANCZOS_G_HALF: f64 = 5.242_187_5;
const LANCZOS_SERIES_0: f64 = 0.999_999_999_999_997_1;
const LANCZOS_COEFFS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Principal branch of `log Γ(z)` for `Re z > 0`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.im.is_finite() {
        return Err(Error::Domain(format!("log_gamma needs Re(z) > 0, got {z}")));
    }
    if z.re < 0.5 {
        // Γ(z) = Γ(z + 1) / z keeps the rational part away from its poles.
        return Ok(lanczos(z + 1.0) - z.ln());
    }
    Ok(lanczos(z))
}

fn lanczos(z: Complex64) -> Complex64 {
    let tmp = z + LANCZOS_G_HALF;
    let head = (z + 0.5) * tmp.ln() - tmp;
    let mut ser = Complex64::new(LANCZOS_SERIES_0, 0.0);
    for (j, c) in LANCZOS_COEFFS.iter().enumerate() {
        ser += *c / (z + (j + 1) as f64);
    }
    head + (ser * SQRT_2PI / z).ln()
}

/// `log |Γ(λ + i x)|²`, computed as `2 Re log Γ(λ + i x)`.
pub fn log_abs_gamma_sq(lambda: f64, x: f64) -> Result<f64> {
    Ok(2.0 * log_gamma(Complex64::new(lambda, x))?.re)
}

/// `log w_j(x)`.
pub fn log_mp_weight(x: f64, params: &ModelParams, which: Weight) -> f64 {
    // λ > 0 is guaranteed by ModelParams, so log_gamma cannot fail here.
    let lg = log_abs_gamma_sq(params.lambda, x).expect("lambda > 0");
    2.0 * params.t(which) * x + lg - LN_2PI
}

/// Meixner-Pollaczek weight `w_j(x) = (1/2π) e^{2 t_j x} |Γ(λ+ix)|²`.
pub fn mp_weight(x: f64, params: &ModelParams, which: Weight) -> f64 {
    log_mp_weight(x, params, which).exp()
}

/// `log cosh(y)` without overflow.
pub(crate) fn log_cosh(y: f64) -> f64 {
    let a = y.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

/// `log` of the free-fermion weight `e^{t x} / (2 cosh(π x / 4))`.
pub fn log_ff_weight(x: f64, t: f64) -> Result<f64> {
    if !(t.abs() < FRAC_PI_4) {
        return Err(Error::Domain(format!("free-fermion weight needs |t| < pi/4, got {t}")));
    }
    Ok(t * x - LN_2 - log_cosh(PI * x / 4.0))
}

/// Free-fermion weight `e^{t x} / (2 cosh(π x / 4))`.
pub fn ff_weight(x: f64, t: f64) -> Result<f64> {
    Ok(log_ff_weight(x, t)?.exp())
}
