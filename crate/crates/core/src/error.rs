use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain where the routine is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// Invalid model or run parameters.
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Successive quadrature refinements disagreed by more than the tolerance.
    #[error("quadrature did not converge: refinements differ by {diff:e} (tolerance {tol:e})")]
    QuadratureNonConvergence { diff: f64, tol: f64 },

    /// The QR iteration exhausted its sweep budget.
    #[error("eigenvalue iteration limit reached after {sweeps} sweeps (dimension {n})")]
    IterationLimit { sweeps: usize, n: usize },

    /// An eigenvalue that should be real has an imaginary part above the snapping threshold.
    #[error("eigenvalue {re} + {im}i is not real within tolerance {tol:e}")]
    NonRealEigenvalue { re: f64, im: f64, tol: f64 },

    /// A bracket in the interlacing cascade showed no sign change.
    #[error("interlacing failure at degree {degree}: no sign change on ({lo}, {hi})")]
    Interlacing { degree: usize, lo: f64, hi: f64 },

    /// No cubic root produced the required sign of Im(w).
    #[error("branch selection failed at x = {x}")]
    BranchSelection { x: f64 },

    /// Boundary values across a cut could not be paired unambiguously.
    #[error("ambiguous root matching across the cut at x = {x}")]
    RootMatching { x: String },

    /// An orthogonality condition was violated beyond tolerance.
    #[error("orthogonality condition (weight {weight}, power {power}) fails: residual {residual:e}")]
    Orthogonality { weight: usize, power: usize, residual: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
