//! Sampling operators `I^L_j` on the dyadic equispaced grids
//! `x^j_u = 2πu/2^j`, `u = -2^{j-1}, …, 2^{j-1}-1`, and their tensor products.
//!
//! Sample arrays are stored in ascending `u`, so index `i` holds
//! `u = i - 2^{j-1}` (`u = 0` for `j = 0`). In that layout the Fourier
//! coefficients of the interpolant are
//!
//! ```text
//! ĉ(l) = W(l/2^j) · 2^{-j} Σ_u f(x_u) e^{-i x_u l} = W(l/2^j) · 2^{-j} (-1)^l F[l mod 2^j]
//! ```
//!
//! with `F` the plain forward DFT of the array and `W` the kernel window; the
//! `(-1)^l` factor accounts for the grid starting at `-π` (absent for `j = 0`).

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fft;
use crate::kernels::{check_level, Kernel};
use crate::sum::ComplexSum;
use crate::trigpoly::TrigPoly;
use crate::TAU;

/// Number of grid points on level `j`.
pub fn level_size(level: u32) -> usize {
    1usize << level
}

/// Offset `2^{j-1}` between array index and `u` (0 on level 0).
pub fn level_offset(level: u32) -> i64 {
    if level == 0 {
        0
    } else {
        1i64 << (level - 1)
    }
}

/// `x^j_u = 2πu/2^j`.
pub fn node(level: u32, u: i64) -> f64 {
    TAU * u as f64 / level_size(level) as f64
}

/// Nodes of level `j`, ascending from `-π` (`{0}` for `j = 0`).
pub fn grid_nodes(level: u32) -> Vec<f64> {
    let off = level_offset(level);
    (0..level_size(level) as i64)
        .map(|i| node(level, i - off))
        .collect()
}

/// Samples `f(x^j_u)` on one univariate level.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateSamples {
    level: u32,
    values: Vec<Complex64>,
}

impl UnivariateSamples {
    pub fn new(level: u32, values: Vec<Complex64>) -> Result<Self> {
        check_level(level)?;
        let expected = level_size(level);
        if values.len() != expected {
            return Err(Error::SampleLength {
                level,
                expected,
                got: values.len(),
            });
        }
        Ok(Self { level, values })
    }

    pub fn from_fn<F: FnMut(f64) -> Complex64>(level: u32, mut f: F) -> Result<Self> {
        check_level(level)?;
        let values = grid_nodes(level).into_iter().map(&mut f).collect();
        Ok(Self { level, values })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Sample at `u`, if `u` lies on this level.
    pub fn at(&self, u: i64) -> Option<Complex64> {
        let idx = u + level_offset(self.level);
        usize::try_from(idx)
            .ok()
            .and_then(|i| self.values.get(i).copied())
    }

    /// Samples on level `j - 1`, taken by stride (`x^{j-1}_u = x^j_{2u}`).
    pub fn restrict(&self) -> Option<Self> {
        let coarse = self.level.checked_sub(1)?;
        let values = (0..level_size(coarse) as i64)
            .map(|i| {
                let u = i - level_offset(coarse);
                self.at(2 * u).expect("coarse node lies on the fine grid")
            })
            .collect();
        Some(Self {
            level: coarse,
            values,
        })
    }
}

/// Frequency block `P^L_j = {k : |k| ≤ 2^{j-L}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DyadicBlock {
    pub order: u32,
    pub level: u32,
}

impl DyadicBlock {
    pub fn new(order: u32, level: u32) -> Self {
        Self { order, level }
    }

    pub fn contains(&self, k: i64) -> bool {
        // |k| 2^L ≤ 2^j
        (k.unsigned_abs() as u128) << self.order <= 1u128 << self.level
    }

    /// Largest `|k|` in the block.
    pub fn radius(&self) -> i64 {
        if self.order > self.level {
            0
        } else {
            1i64 << (self.level - self.order)
        }
    }

    pub fn frequencies(&self) -> impl Iterator<Item = i64> {
        let r = self.radius();
        -r..=r
    }
}

/// `I^L_j[f](x)` from univariate samples. Returns the stored sample when `x`
/// is a grid node.
pub fn interpolate_1d(kernel: &Kernel, samples: &UnivariateSamples, x: f64) -> Complex64 {
    let level = samples.level;
    let x = crate::kernels::reduce_angle(x);
    let pos = x * level_size(level) as f64 / TAU;
    let nearest = libm::round(pos);
    if (pos - nearest).abs() < 1e-12 {
        let mut u = nearest as i64;
        if u == level_offset(level) && level > 0 {
            u = -u; // x = π coincides with the node -π
        }
        if let Some(v) = samples.at(u) {
            return v;
        }
    }
    let off = level_offset(level);
    samples
        .values
        .iter()
        .enumerate()
        .map(|(i, f)| f * kernel.eval(level, x - node(level, i as i64 - off)))
        .collect::<ComplexSum>()
        .value()
}

/// Exact Fourier coefficients of `I^L_j[f]`.
pub fn interpolant_coefficients(kernel: &Kernel, samples: &UnivariateSamples) -> TrigPoly {
    tensor_coefficients(kernel, &[samples.level], &samples.values)
        .expect("univariate samples are well formed")
}

/// `(I^L_j - I^L_{j-1})[f](x)`, or `I^L_0[f](x)` when `coarse` is `None` and
/// `fine` is on level 0.
pub fn block_difference(
    kernel: &Kernel,
    fine: &UnivariateSamples,
    coarse: Option<&UnivariateSamples>,
    x: f64,
) -> Result<Complex64> {
    match coarse {
        None if fine.level == 0 => Ok(interpolate_1d(kernel, fine, x)),
        None => Err(Error::LevelMismatch {
            fine: fine.level,
            coarse: fine.level,
        }),
        Some(c) if c.level + 1 != fine.level => Err(Error::LevelMismatch {
            fine: fine.level,
            coarse: c.level,
        }),
        Some(c) => Ok(interpolate_1d(kernel, fine, x) - interpolate_1d(kernel, c, x)),
    }
}

fn check_tensor(levels: &[u32], values: &[Complex64]) -> Result<()> {
    for &l in levels {
        check_level(l)?;
    }
    let expected: usize = levels.iter().map(|&l| level_size(l)).product();
    if values.len() != expected {
        return Err(Error::SampleLength {
            level: levels.iter().sum(),
            expected,
            got: values.len(),
        });
    }
    Ok(())
}

/// Tensor interpolant `I^L_j[f](x)` from a row-major sample tensor on the full
/// grid of level vector `levels`.
pub fn tensor_interpolate(
    kernel: &Kernel,
    levels: &[u32],
    values: &[Complex64],
    x: &[f64],
) -> Result<Complex64> {
    check_tensor(levels, values)?;
    if x.len() != levels.len() {
        return Err(Error::DimensionMismatch {
            expected: levels.len(),
            got: x.len(),
        });
    }
    let factors: Vec<Vec<Complex64>> = levels
        .iter()
        .zip(x)
        .map(|(&l, &xi)| kernel_vector(kernel, l, xi))
        .collect();
    let refs: Vec<&[Complex64]> = factors.iter().map(Vec::as_slice).collect();
    Ok(contract(values, &refs))
}

/// `K^L_{π,j}(x - x^j_u)` for every node of level `j`.
pub fn kernel_vector(kernel: &Kernel, level: u32, x: f64) -> Vec<Complex64> {
    let off = level_offset(level);
    (0..level_size(level) as i64)
        .map(|i| kernel.eval(level, x - node(level, i - off)))
        .collect()
}

/// `Σ_i values[i] Π_d factors[d][i_d]` for a row-major tensor.
pub fn contract(values: &[Complex64], factors: &[&[Complex64]]) -> Complex64 {
    let mut current: Vec<Complex64> = values.to_vec();
    for f in factors.iter().rev() {
        let n = f.len();
        current = current
            .chunks_exact(n)
            .map(|row| {
                row.iter()
                    .zip(f.iter())
                    .map(|(a, b)| a * b)
                    .collect::<ComplexSum>()
                    .value()
            })
            .collect();
    }
    current[0]
}

/// Exact coefficients of the tensor interpolant on level vector `levels`.
pub fn tensor_coefficients(
    kernel: &Kernel,
    levels: &[u32],
    values: &[Complex64],
) -> Result<TrigPoly> {
    check_tensor(levels, values)?;
    let dim = levels.len();
    let shape: Vec<usize> = levels.iter().map(|&l| level_size(l)).collect();
    let mut spectrum = values.to_vec();
    fft::fft_nd(&mut spectrum, &shape, fft::Direction::Forward);

    // per axis: (frequency, bin, multiplier)
    let axes: Vec<Vec<(i64, usize, f64)>> = levels
        .iter()
        .map(|&l| {
            let n = level_size(l) as i64;
            let (lo, hi) = kernel.frequency_range(l);
            (lo..=hi)
                .filter_map(|k| {
                    let w = kernel.frequency_weight(l, k);
                    if w == 0.0 {
                        return None;
                    }
                    let sign = if l > 0 && k.rem_euclid(2) == 1 {
                        -1.0
                    } else {
                        1.0
                    };
                    Some((k, k.rem_euclid(n) as usize, sign * w / n as f64))
                })
                .collect()
        })
        .collect();

    let mut poly = TrigPoly::new(dim);
    if axes.iter().any(|a| a.is_empty()) {
        return Ok(poly);
    }
    let mut cursor = vec![0usize; dim];
    let mut freq = vec![0i64; dim];
    loop {
        let mut index = 0usize;
        let mut factor = 1.0;
        for d in 0..dim {
            let (k, bin, w) = axes[d][cursor[d]];
            freq[d] = k;
            index = index * shape[d] + bin;
            factor *= w;
        }
        let c = spectrum[index] * factor;
        if c != Complex64::default() {
            poly.add_term(&freq, c)?;
        }
        // odometer
        let mut d = dim;
        loop {
            if d == 0 {
                poly.normalize();
                return Ok(poly);
            }
            d -= 1;
            cursor[d] += 1;
            if cursor[d] < axes[d].len() {
                break;
            }
            cursor[d] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn nodes() {
        assert_eq!(grid_nodes(0), vec![0.0]);
        assert_eq!(grid_nodes(1), vec![-PI, 0.0]);
        let g3 = grid_nodes(3);
        assert_eq!(g3.len(), 8);
        assert_eq!(g3[0], -PI);
        for w in g3.windows(2) {
            assert!((w[1] - w[0] - PI / 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn constant_is_reproduced() {
        for order in 1..=3 {
            let k = Kernel::new(order).unwrap();
            for level in 0..=5 {
                let s = UnivariateSamples::from_fn(level, |_| one()).unwrap();
                for x in [0.1, -2.0, 3.0] {
                    assert!((interpolate_1d(&k, &s, x) - one()).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn exponential_is_reproduced() {
        let k = Kernel::new(2).unwrap();
        let s = UnivariateSamples::from_fn(4, Complex64::cis).unwrap();
        assert!((interpolate_1d(&k, &s, 0.3) - Complex64::cis(0.3)).norm() < 1e-12);
    }

    #[test]
    fn restriction_by_stride() {
        let s = UnivariateSamples::from_fn(3, |x| Complex64::new(x, 0.0)).unwrap();
        let c = s.restrict().unwrap();
        assert_eq!(c.values().len(), 4);
        for (v, x) in c.values().iter().zip(grid_nodes(2)) {
            assert_eq!(v.re, x);
        }
        let s1 = UnivariateSamples::from_fn(1, |x| Complex64::new(x + 1.0, 0.0)).unwrap();
        assert_eq!(s1.restrict().unwrap().values(), &[Complex64::new(1.0, 0.0)]);
        assert!(UnivariateSamples::from_fn(0, |_| one())
            .unwrap()
            .restrict()
            .is_none());
    }

    #[test]
    fn zero_samples_give_empty_poly() {
        let k = Kernel::new(2).unwrap();
        let s = UnivariateSamples::new(3, vec![Complex64::default(); 8]).unwrap();
        assert!(interpolant_coefficients(&k, &s).is_empty());
    }

    #[test]
    fn level_mismatch_is_rejected() {
        let k = Kernel::new(2).unwrap();
        let fine = UnivariateSamples::from_fn(3, |_| one()).unwrap();
        let wrong = UnivariateSamples::from_fn(1, |_| one()).unwrap();
        assert!(block_difference(&k, &fine, Some(&wrong), 0.2).is_err());
        assert!(block_difference(&k, &fine, None, 0.2).is_err());
        assert!(UnivariateSamples::new(2, vec![one(); 3]).is_err());
    }

    #[test]
    fn dyadic_block_membership() {
        let b = DyadicBlock::new(2, 4);
        assert!(b.contains(4) && b.contains(-4) && !b.contains(5));
        assert_eq!(DyadicBlock::new(3, 2).radius(), 0);
        assert!(DyadicBlock::new(3, 2).contains(0));
        assert!(!DyadicBlock::new(3, 2).contains(1));
        assert_eq!(DyadicBlock::new(0, 3).frequencies().count(), 17);
    }
}
