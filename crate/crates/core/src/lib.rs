//! Multiple Meixner-Pollaczek polynomials and the objects that describe
//! their zeros.
//!
//! The crate covers
//!
//! * the two Meixner-Pollaczek weights and their free-fermion relatives
//!   ([`specfun`]),
//! * weighted quadrature on the real line ([`quadrature`]),
//! * dense eigenvalues, log-determinants and interlacing spectra of unit
//!   Hessenberg band matrices ([`linalg`]),
//! * recurrence coefficients, moments, Rodrigues formula and zeros of the
//!   polynomials ([`mmp`]),
//! * the 2x2 block symbol, its roots and the measures living on the
//!   cuts ([`toeplitz`]),
//! * the constrained vector equilibrium problem solved by the limiting zero
//!   distribution ([`equilibrium`]),
//! * determinant identities for the six-vertex model with domain wall
//!   boundary conditions ([`sixvertex`]),
//! * a batch front end producing CSV/JSON ([`cli`]).

pub mod cli;
pub mod equilibrium;
mod error;
pub mod linalg;
pub mod measure;
pub mod mmp;
pub mod quadrature;
pub mod sixvertex;
pub mod specfun;
pub mod toeplitz;

pub use error::{Error, Result};
pub use num_complex::Complex64;
