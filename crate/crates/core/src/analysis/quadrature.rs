//! `L_q` error estimates on the torus.

use alloc::vec::Vec;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::functions::TestFunction;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::sum::KahanSum;
use crate::trigpoly::TrigPoly;
use crate::TAU;

/// Grid resolution must exceed the largest frequency by this factor.
pub const ALIAS_FACTOR: usize = 4;
/// Upper limit on tensor grid points.
pub const MAX_GRID_POINTS: usize = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMode {
    /// Equispaced tensor grid, `resolution` points per dimension.
    TensorGrid,
    /// Uniform random points from a seeded generator.
    MonteCarlo { samples: usize },
    /// Maximum over the tensor grid; `q = ∞` only.
    DenseMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    pub mode: QuadratureMode,
    pub resolution: usize,
    pub seed: u64,
}

impl QuadratureSpec {
    pub fn tensor_grid(resolution: usize) -> Self {
        Self {
            mode: QuadratureMode::TensorGrid,
            resolution,
            seed: 0,
        }
    }

    pub fn dense_max(resolution: usize) -> Self {
        Self {
            mode: QuadratureMode::DenseMax,
            resolution,
            seed: 0,
        }
    }

    pub fn monte_carlo(samples: usize, seed: u64) -> Self {
        Self {
            mode: QuadratureMode::MonteCarlo { samples },
            resolution: 0,
            seed,
        }
    }

    /// Same mode with the resolution raised to at least `resolution`.
    pub fn with_min_resolution(mut self, resolution: usize) -> Self {
        self.resolution = self.resolution.max(resolution);
        self
    }

    /// Smallest admissible tensor resolution for `approx`.
    pub fn required_resolution(approx: &TrigPoly) -> usize {
        let kmax = approx.max_frequency().into_iter().max().unwrap_or(0).max(1) as usize;
        (ALIAS_FACTOR * kmax).next_power_of_two()
    }

    /// Checks the anti-alias guard and grid size for `dim`-variate `approx`.
    pub fn validate_for(&self, approx: &TrigPoly) -> Result<()> {
        match self.mode {
            QuadratureMode::MonteCarlo { samples } => {
                if samples == 0 {
                    return Err(Error::InvalidParameter(
                        "monte carlo needs at least one sample".into(),
                    ));
                }
                Ok(())
            }
            QuadratureMode::TensorGrid | QuadratureMode::DenseMax => {
                if !self.resolution.is_power_of_two() {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "resolution {} is not a power of two",
                        self.resolution
                    )));
                }
                for k in approx.max_frequency() {
                    let required = ALIAS_FACTOR * k as usize;
                    if self.resolution < required {
                        return Err(Error::ResolutionGuard {
                            resolution: self.resolution,
                            frequency: k,
                            required,
                        });
                    }
                }
                let total = self.resolution.checked_pow(approx.dim() as u32);
                if total.is_none_or(|t| t > MAX_GRID_POINTS) {
                    return Err(Error::InvalidParameter(alloc::format!(
                        "{}^{} grid points exceed the limit {MAX_GRID_POINTS}",
                        self.resolution,
                        approx.dim()
                    )));
                }
                Ok(())
            }
        }
    }
}

/// `(mean |e|^q)^{1/q}`, or `max |e|` for `q = ∞`.
pub fn lq_mean<I: IntoIterator<Item = f64>>(abs_values: I, q: Exponent) -> f64 {
    if q.is_infinite() {
        return abs_values.into_iter().fold(0.0, f64::max);
    }
    let q = q.value();
    let mut acc = KahanSum::new();
    let mut n = 0usize;
    for a in abs_values {
        acc.add(libm::pow(a, q));
        n += 1;
    }
    if n == 0 {
        return 0.0;
    }
    libm::pow(acc.value() / n as f64, 1.0 / q)
}

/// Estimate of `‖f - approx‖_q` under the normalized measure.
pub fn lq_error(
    f: &TestFunction,
    approx: &TrigPoly,
    q: Exponent,
    quad: &QuadratureSpec,
) -> Result<f64> {
    if f.dim() != approx.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            got: approx.dim(),
        });
    }
    quad.validate_for(approx)?;
    match quad.mode {
        QuadratureMode::DenseMax if !q.is_infinite() => Err(Error::InvalidParameter(
            "dense_max quadrature requires q = inf".into(),
        )),
        QuadratureMode::TensorGrid | QuadratureMode::DenseMax => {
            let fv = f.eval_on_grid(quad.resolution)?;
            let av = approx.eval_on_grid(quad.resolution)?;
            Ok(lq_mean(fv.iter().zip(&av).map(|(a, b)| (a - b).norm()), q))
        }
        QuadratureMode::MonteCarlo { samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(quad.seed);
            let d = f.dim();
            let mut x = alloc::vec![0.0; d];
            let diffs: Vec<f64> = (0..samples)
                .map(|_| {
                    for xi in x.iter_mut() {
                        *xi = TAU * rng.random::<f64>();
                    }
                    (f.eval(&x) - approx.eval(&x)).norm()
                })
                .collect();
            Ok(lq_mean(diffs, q))
        }
    }
}

/// `‖a - b‖_q` for two polynomials on the tensor grid.
pub fn lq_distance(a: &TrigPoly, b: &TrigPoly, q: Exponent, resolution: usize) -> Result<f64> {
    let mut diff = a.clone();
    diff.add_scaled(b, Complex64::new(-1.0, 0.0))?;
    let quad = QuadratureSpec::tensor_grid(resolution);
    quad.validate_for(&diff)?;
    let v = diff.eval_on_grid(resolution)?;
    Ok(lq_mean(v.iter().map(|z| z.norm()), q))
}
