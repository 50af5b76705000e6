//! Sampling recovery of multivariate periodic functions on anisotropic sparse grids.
//!
//! The crate is `no_std` (with `alloc`). It provides
//!
//! - [`kernels`]: the univariate fundamental interpolants `K^L_{π,j}` built from
//!   products of dilated sinc functions, their Fourier windows and the
//!   modified Dirichlet kernel (`L = 1`),
//! - [`interpolation`]: univariate sampling operators on dyadic equispaced grids
//!   and their exact Fourier coefficients,
//! - [`smolyak`]: downward closed index sets, anisotropic sparse grids, sample
//!   storage and the Smolyak operator with a direct and a coefficient path,
//! - [`analysis`]: error norms, discrete Littlewood-Paley type norms, a test
//!   function catalog, rate fitting and a table of known width exponents.
//!
//! Points live on the torus `[-π, π)^d`; Fourier coefficients use the
//! normalized measure `(2π)^{-d} dx`.

#![no_std]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod exponent;
pub mod fft;
pub mod interpolation;
pub mod kernels;
pub mod smolyak;
pub mod sum;
pub mod trigpoly;

pub use error::{Error, Result};
pub use exponent::Exponent;
pub use num_complex::Complex64;
pub use trigpoly::TrigPoly;

/// `2π`.
pub const TAU: f64 = core::f64::consts::TAU;
