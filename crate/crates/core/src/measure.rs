//! Tabulated densities and empirical (atomic) measures.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Whether grid coordinates are points `x` of ℝ or heights `y` of `iy ∈ iℝ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SupportKind {
    RealLine,
    ImaginaryLine,
}

/// A density sampled on a strictly increasing grid.
///
/// Densities on the imaginary axis are with respect to `|dy|`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureTable {
    pub support_kind: SupportKind,
    pub grid: Vec<f64>,
    pub density: Vec<f64>,
    /// Mass of the measure, computed analytically or by accurate quadrature
    /// rather than from the table.
    pub mass: f64,
    pub endpoints: (f64, f64),
}

impl MeasureTable {
    pub fn new(support_kind: SupportKind, grid: Vec<f64>, density: Vec<f64>, mass: f64, endpoints: (f64, f64)) -> Result<Self> {
        if grid.len() != density.len() || grid.len() < 2 {
            return Err(Error::InvalidParams("grid and density must have equal length of at least 2".into()));
        }
        if grid.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParams("grid must be strictly increasing".into()));
        }
        if density.iter().any(|d| !(d.is_finite() && *d >= 0.0)) {
            return Err(Error::InvalidParams("density must be finite and nonnegative".into()));
        }
        if grid[0] < endpoints.0 || grid[grid.len() - 1] > endpoints.1 {
            return Err(Error::InvalidParams("grid leaves the declared endpoints".into()));
        }
        Ok(Self { support_kind, grid, density, mass, endpoints })
    }

    /// Trapezoidal integral of the tabulated density.
    pub fn trapezoid_mass(&self) -> f64 {
        self.grid.windows(2).zip(self.density.windows(2)).map(|(x, d)| 0.5 * (x[1] - x[0]) * (d[0] + d[1])).sum()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }
}

/// Equal-weight atoms, e.g. the normalized zero-counting measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMeasure {
    /// Atom locations in increasing order.
    pub points: Vec<f64>,
}

impl EmpiricalMeasure {
    pub fn new(mut points: Vec<f64>) -> Self {
        points.sort_by(f64::total_cmp);
        Self { points }
    }

    /// Right-continuous distribution function.
    pub fn cdf(&self, x: f64) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        self.points.partition_point(|&p| p <= x) as f64 / self.points.len() as f64
    }

    /// Distribution function just below `x`.
    pub fn cdf_left(&self, x: f64) -> f64 {
        if self.points.is_empty() {
            return 0.0;
        }
        self.points.partition_point(|&p| p < x) as f64 / self.points.len() as f64
    }

    /// Kolmogorov distance to a continuous distribution function.
    pub fn kolmogorov_distance(&self, cdf: impl Fn(f64) -> f64) -> f64 {
        let n = self.points.len() as f64;
        self.points
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                let f = cdf(x);
                ((i + 1) as f64 / n - f).max(f - i as f64 / n)
            })
            .fold(0.0, f64::max)
    }
}
