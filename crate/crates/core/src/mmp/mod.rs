//! Multiple Meixner-Pollaczek polynomials `P_{k₁,k₂}`: the monic polynomial
//! of degree `k₁ + k₂` orthogonal to `x^m w₁` for `m < k₁` and to `x^m w₂`
//! for `m < k₂`.
//!
//! Polynomials are generated by the nearest-neighbour recurrences
//!
//! ```text
//! P_{k₁+1,k₂} = (x − a) P_{k₁,k₂} − b P_{k₁,k₂−1} − c P_{k₁−1,k₂−1}
//! P_{k₁,k₂+1} = (x − a') P_{k₁,k₂} − b P_{k₁−1,k₂} − c' P_{k₁−1,k₂−1}
//! ```
//!
//! with closed-form coefficients. On the boundary `k₂ = 0` (resp. `k₁ = 0`)
//! the `b` term falls back to the classical three-term recurrence of the
//! single weight, i.e. it multiplies `P_{k₁−1,0}` (resp. `P_{0,k₂−1}`).

mod coeffs;
mod moments;
mod poly;
mod rodrigues;
mod zeros;

use serde::{Deserialize, Serialize};

pub use crate::specfun::Weight;
pub use coeffs::{diagonal_index, recurrence_coeffs, scaled_coeffs, RecurrenceCoeffs};
pub use moments::{first_moment, moment_by_quadrature, orthogonality_residual, subleading_coeff, OrthogonalityReport, SignedLog};
pub use poly::{coefficient_vector, coefficient_vector_dd, eval_along, eval_diagonal_scaled, eval_poly, eval_with_derivative};
pub use rodrigues::{rodrigues_check, rodrigues_lhs, RodriguesReport};
pub use zeros::{
    all_pair_zeros, diagonal_matrix, diagonal_zeros, diagonal_zeros_cascade, interlace_margin, interlacing_check, interlacing_from_zeros,
    polish_real_roots, ratio_asymptotic, zero_counting_cdf, zeros, InterlacingReport, PairZeros,
};

use crate::{Error, Result};

/// Multi-index `(k₁, k₂)` with total degree `k = k₁ + k₂`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexPair {
    pub k1: usize,
    pub k2: usize,
}

impl IndexPair {
    pub const fn new(k1: usize, k2: usize) -> Self {
        Self { k1, k2 }
    }

    pub const fn degree(&self) -> usize {
        self.k1 + self.k2
    }

    pub fn get(&self, which: Weight) -> usize {
        match which {
            Weight::First => self.k1,
            Weight::Second => self.k2,
        }
    }

    /// The neighbour reached by one step in `direction`.
    pub fn step(&self, direction: Weight) -> Self {
        match direction {
            Weight::First => Self::new(self.k1 + 1, self.k2),
            Weight::Second => Self::new(self.k1, self.k2 + 1),
        }
    }

    /// The neighbour one step back in `direction`, if it exists.
    pub fn back(&self, direction: Weight) -> Option<Self> {
        match direction {
            Weight::First => self.k1.checked_sub(1).map(|k1| Self::new(k1, self.k2)),
            Weight::Second => self.k2.checked_sub(1).map(|k2| Self::new(self.k1, k2)),
        }
    }

    /// The same pair with the two indices exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.k2, self.k1)
    }
}

impl std::fmt::Display for IndexPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.k1, self.k2)
    }
}

/// Lattice walk from `(0,0)`; each step raises `k₁` or `k₂` by one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StaircasePath {
    pub steps: Vec<Weight>,
}

impl StaircasePath {
    /// All `k₁` steps first, then all `k₂` steps.
    pub fn canonical(target: IndexPair) -> Self {
        let mut steps = vec![Weight::First; target.k1];
        steps.extend(std::iter::repeat(Weight::Second).take(target.k2));
        Self { steps }
    }

    /// Path from a sequence of 1s and 2s.
    pub fn from_digits(digits: &[u8]) -> Result<Self> {
        let steps = digits
            .iter()
            .map(|&d| Weight::from_index(d as usize))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidParams(format!("path digits must be 1 or 2, got {digits:?}")))?;
        Ok(Self { steps })
    }

    /// The lattice points visited, starting at `(0,0)`.
    pub fn points(&self) -> Vec<IndexPair> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut at = IndexPair::new(0, 0);
        out.push(at);
        for &d in &self.steps {
            at = at.step(d);
            out.push(at);
        }
        out
    }

    pub fn terminal(&self) -> IndexPair {
        let k1 = self.steps.iter().filter(|&&d| d == Weight::First).count();
        IndexPair::new(k1, self.steps.len() - k1)
    }
}
