//! Building blocks `q^L_j` and the Smolyak operator `T = Σ_{j∈Δ} q^L_j`.
//!
//! Two independent evaluation paths are provided. The direct path sums the
//! blocks `q_j = Σ_{b∈{-1,0}^d} (-1)^{|b|} I_{j+b}` pointwise in kernel space;
//! the coefficient path assembles the exact Fourier coefficients through the
//! combination coefficients of `Δ`.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::grid::SampleStore;
use super::index::{IndexSet, MultiIndex};
use crate::error::{Error, Result};
use crate::interpolation::{contract, kernel_vector, tensor_coefficients};
use crate::kernels::Kernel;
use crate::sum::ComplexSum;
use crate::trigpoly::TrigPoly;

/// Smolyak operator over a fixed index set and sample store.
///
/// Level samples are gathered once at construction; evaluation is read-only
/// and may be shared between threads.
#[derive(Debug, Clone)]
pub struct Smolyak<'a> {
    kernel: &'a Kernel,
    set: &'a IndexSet,
    samples: Vec<Vec<Complex64>>,
    finest: Vec<u32>,
}

impl<'a> Smolyak<'a> {
    pub fn new(kernel: &'a Kernel, set: &'a IndexSet, store: &SampleStore) -> Result<Self> {
        if store.grid().dim() != set.dim() {
            return Err(Error::DimensionMismatch {
                expected: set.dim(),
                got: store.grid().dim(),
            });
        }
        let samples = set
            .iter()
            .map(|j| store.level_samples(j.levels()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kernel,
            set,
            samples,
            finest: set.max_levels(),
        })
    }

    pub fn index_set(&self) -> &IndexSet {
        self.set
    }

    fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.set.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.set.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `I_j[f](x)` for every `j ∈ Δ`, in member order.
    pub fn interpolants_at(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        self.check_point(x)?;
        // kernel vectors per direction and level
        let table: Vec<Vec<Vec<Complex64>>> = x
            .iter()
            .zip(&self.finest)
            .map(|(&xi, &top)| {
                (0..=top)
                    .map(|l| kernel_vector(self.kernel, l, xi))
                    .collect()
            })
            .collect();
        Ok(self
            .set
            .iter()
            .zip(&self.samples)
            .map(|(j, values)| {
                let factors: Vec<&[Complex64]> = j
                    .levels()
                    .iter()
                    .enumerate()
                    .map(|(d, &l)| table[d][l as usize].as_slice())
                    .collect();
                contract(values, &factors)
            })
            .collect())
    }

    fn block_from(&self, interpolants: &[Complex64], j: &MultiIndex) -> Result<Complex64> {
        let mut acc = ComplexSum::new();
        for mask in 0..1u32 << j.dim() {
            let Some(k) = j.lower_neighbor(mask) else {
                continue;
            };
            let pos = self.set.members().binary_search(&k).map_err(|_| {
                Error::MissingSample(alloc::format!("level {k} not in the index set"))
            })?;
            let v = interpolants[pos];
            acc.add(if mask.count_ones() % 2 == 0 { v } else { -v });
        }
        Ok(acc.value())
    }

    /// `q^L_j[f](x)`; `j` and its lower neighbours must belong to `Δ`.
    pub fn building_block(&self, j: &MultiIndex, x: &[f64]) -> Result<Complex64> {
        let interpolants = self.interpolants_at(x)?;
        self.block_from(&interpolants, j)
    }

    /// `Σ_{j∈Δ} q^L_j[f](x)`, blocks summed in lexicographic order.
    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        let interpolants = self.interpolants_at(x)?;
        let mut acc = ComplexSum::new();
        for j in self.set.iter() {
            acc.add(self.block_from(&interpolants, j)?);
        }
        Ok(acc.value())
    }

    fn level_coefficients(&self, pos: usize) -> Result<TrigPoly> {
        tensor_coefficients(
            self.kernel,
            self.set.members()[pos].levels(),
            &self.samples[pos],
        )
    }

    /// Exact coefficients of `q^L_j[f]`.
    pub fn block_coefficients(&self, j: &MultiIndex) -> Result<TrigPoly> {
        let mut poly = TrigPoly::new(self.set.dim());
        for mask in 0..1u32 << j.dim() {
            let Some(k) = j.lower_neighbor(mask) else {
                continue;
            };
            let pos = self.set.members().binary_search(&k).map_err(|_| {
                Error::MissingSample(alloc::format!("level {k} not in the index set"))
            })?;
            let sign = if mask.count_ones() % 2 == 0 {
                1.0
            } else {
                -1.0
            };
            poly.add_scaled(&self.level_coefficients(pos)?, Complex64::new(sign, 0.0))?;
        }
        poly.normalize();
        Ok(poly)
    }

    /// Exact coefficients of `T f` via the combination technique.
    pub fn coefficients(&self) -> Result<TrigPoly> {
        let mut poly = TrigPoly::new(self.set.dim());
        for (j, c) in self.set.combination_coefficients() {
            let pos = self
                .set
                .members()
                .binary_search(&j)
                .expect("member of the set");
            poly.add_scaled(
                &self.level_coefficients(pos)?,
                Complex64::new(c as f64, 0.0),
            )?;
        }
        poly.normalize();
        Ok(poly)
    }
}

/// `q^L_j[f](x)` from the samples in `store`.
pub fn building_block_eval(
    kernel: &Kernel,
    j: &MultiIndex,
    store: &SampleStore,
    x: &[f64],
) -> Result<Complex64> {
    let mut acc = ComplexSum::new();
    for mask in 0..1u32 << j.dim() {
        let Some(k) = j.lower_neighbor(mask) else {
            continue;
        };
        let values = store.level_samples(k.levels())?;
        let v = crate::interpolation::tensor_interpolate(kernel, k.levels(), &values, x)?;
        acc.add(if mask.count_ones() % 2 == 0 { v } else { -v });
    }
    Ok(acc.value())
}

/// `T^{L,η}_m f(x)` along the direct path.
pub fn smolyak_eval(
    kernel: &Kernel,
    set: &IndexSet,
    store: &SampleStore,
    x: &[f64],
) -> Result<Complex64> {
    Smolyak::new(kernel, set, store)?.eval(x)
}

/// Coefficients of `T^{L,η}_m f`.
pub fn smolyak_coefficients(
    kernel: &Kernel,
    set: &IndexSet,
    store: &SampleStore,
) -> Result<TrigPoly> {
    Smolyak::new(kernel, set, store)?.coefficients()
}
