//! Sparse multivariate trigonometric polynomials `Σ_k c_k e^{ik·x}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::sum::ComplexSum;
use crate::TAU;

/// Relative pruning threshold applied by [`TrigPoly::normalize`].
pub const PRUNE_RELATIVE: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TrigPoly {
    dim: usize,
    coeffs: BTreeMap<Vec<i64>, Complex64>,
}

impl TrigPoly {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<i64>, Complex64)>,
    {
        let mut p = Self::new(dim);
        for (k, c) in terms {
            p.add_term(&k, c)?;
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, freq: &[i64]) -> Complex64 {
        self.coeffs.get(freq).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[i64], Complex64)> + '_ {
        self.coeffs.iter().map(|(k, c)| (k.as_slice(), *c))
    }

    pub fn add_term(&mut self, freq: &[i64], c: Complex64) -> Result<()> {
        if freq.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: freq.len(),
            });
        }
        if c == Complex64::default() {
            return Ok(());
        }
        *self.coeffs.entry(freq.to_vec()).or_default() += c;
        Ok(())
    }

    /// `self += alpha * other`.
    pub fn add_scaled(&mut self, other: &TrigPoly, alpha: Complex64) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        for (k, c) in &other.coeffs {
            *self.coeffs.entry(k.clone()).or_default() += c * alpha;
        }
        Ok(())
    }

    pub fn scaled(&self, alpha: Complex64) -> Self {
        Self {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, c)| (k.clone(), c * alpha))
                .collect(),
        }
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drop coefficients with `|c| ≤ PRUNE_RELATIVE · max|c|`.
    pub fn normalize(&mut self) {
        let cut = PRUNE_RELATIVE * self.max_abs_coefficient();
        self.coeffs.retain(|_, c| c.norm() > cut);
    }

    /// Largest `|k_i|` per coordinate.
    pub fn max_frequency(&self) -> Vec<i64> {
        let mut out = vec![0i64; self.dim];
        for k in self.coeffs.keys() {
            for (o, ki) in out.iter_mut().zip(k) {
                *o = (*o).max(ki.abs());
            }
        }
        out
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.dim);
        self.coeffs
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k.iter().zip(x).map(|(ki, xi)| *ki as f64 * xi).sum();
                c * Complex64::cis(phase)
            })
            .collect::<ComplexSum>()
            .value()
    }

    /// `(Σ_k |a_k - b_k|²)^{1/2}`: the normalized `L_2` distance.
    pub fn l2_distance(&self, other: &TrigPoly) -> f64 {
        let mut acc = crate::sum::KahanSum::new();
        for (k, a) in &self.coeffs {
            acc.add((a - other.get(k)).norm_sqr());
        }
        for (k, b) in &other.coeffs {
            if !self.coeffs.contains_key(k) {
                acc.add(b.norm_sqr());
            }
        }
        libm::sqrt(acc.value())
    }

    /// Values at the tensor grid `x_v = 2π v / M`, `v ∈ [0, M)^d`, row-major.
    /// `M` must be a power of two exceeding twice every `|k_i|`.
    pub fn eval_on_grid(&self, resolution: usize) -> Result<Vec<Complex64>> {
        assert!(resolution.is_power_of_two());
        for k in self.max_frequency() {
            if 2 * k as usize >= resolution {
                return Err(Error::ResolutionGuard {
                    resolution,
                    frequency: k,
                    required: 2 * k as usize + 1,
                });
            }
        }
        let shape = vec![resolution; self.dim];
        let total = resolution.pow(self.dim as u32);
        let mut data = vec![Complex64::default(); total];
        let m = resolution as i64;
        for (k, c) in &self.coeffs {
            let idx = k.iter().fold(0usize, |acc, ki| {
                acc * resolution + ki.rem_euclid(m) as usize
            });
            data[idx] += c;
        }
        fft::fft_nd(&mut data, &shape, fft::Direction::Inverse);
        Ok(data)
    }
}

/// Point `x_v = 2π v / M` of a row-major tensor grid index.
pub fn grid_point(mut index: usize, resolution: usize, dim: usize) -> Vec<f64> {
    let mut x = vec![0.0; dim];
    for xi in x.iter_mut().rev() {
        *xi = TAU * (index % resolution) as f64 / resolution as f64;
        index /= resolution;
    }
    x
}
