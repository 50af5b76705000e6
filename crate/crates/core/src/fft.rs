//! Iterative radix-2 FFT on power-of-two lengths, plus a row-major
//! multi-dimensional driver.
//!
//! `forward` computes `X[k] = Σ_n x[n] e^{-2πi nk/N}` and `inverse` the same
//! sum with `e^{+2πi nk/N}`. Neither is normalized.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Transform `data` in place. Panics if the length is not a power of two.
pub fn fft(data: &mut [Complex64], dir: Direction) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length {n} is not a power of two");
    if n <= 1 {
        return;
    }
    let bits = n.trailing_zeros();
    for i in 0..n {
        let j = i.reverse_bits() >> (usize::BITS - bits);
        if j > i {
            data.swap(i, j);
        }
    }
    let sign = match dir {
        Direction::Forward => -1.0,
        Direction::Inverse => 1.0,
    };
    let mut len = 2;
    while len <= n {
        let half = len / 2;
        // twiddles computed directly per index; avoids drift from repeated multiplication
        let twiddles: Vec<Complex64> = (0..half)
            .map(|k| Complex64::cis(sign * TAU * k as f64 / len as f64))
            .collect();
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let a = data[start + k];
                let b = data[start + k + half] * twiddles[k];
                data[start + k] = a + b;
                data[start + k + half] = a - b;
            }
        }
        len <<= 1;
    }
}

pub fn forward(data: &mut [Complex64]) {
    fft(data, Direction::Forward);
}

pub fn inverse(data: &mut [Complex64]) {
    fft(data, Direction::Inverse);
}

/// Transform a row-major tensor with the given `shape` along every axis.
pub fn fft_nd(data: &mut [Complex64], shape: &[usize], dir: Direction) {
    let total: usize = shape.iter().product();
    assert_eq!(total, data.len(), "shape does not match data length");
    let mut scratch = Vec::new();
    let mut stride = 1;
    for axis in (0..shape.len()).rev() {
        let n = shape[axis];
        if n > 1 {
            let block = n * stride;
            scratch.resize(n, Complex64::new(0.0, 0.0));
            for outer in (0..total).step_by(block) {
                for inner in 0..stride {
                    let base = outer + inner;
                    for (i, s) in scratch.iter_mut().enumerate() {
                        *s = data[base + i * stride];
                    }
                    fft(&mut scratch, dir);
                    for (i, s) in scratch.iter().enumerate() {
                        data[base + i * stride] = *s;
                    }
                }
            }
        }
        stride *= n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(x: &[Complex64], sign: f64) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                x.iter()
                    .enumerate()
                    .map(|(j, v)| v * Complex64::cis(sign * TAU * (j * k) as f64 / n as f64))
                    .sum()
            })
            .collect()
    }

    #[test]
    fn matches_naive_dft() {
        for n in [1usize, 2, 4, 8, 32] {
            let x: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new((i as f64 * 0.7).sin(), (i as f64 * 1.3).cos()))
                .collect();
            let mut y = x.clone();
            forward(&mut y);
            for (a, b) in y.iter().zip(naive(&x, -1.0)) {
                assert!((a - b).norm() < 1e-12);
            }
            let mut z = x.clone();
            inverse(&mut z);
            for (a, b) in z.iter().zip(naive(&x, 1.0)) {
                assert!((a - b).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn nd_is_separable() {
        let shape = [4usize, 8];
        let x: Vec<Complex64> = (0..32)
            .map(|i| Complex64::new(i as f64, -(i as f64) / 3.0))
            .collect();
        let mut y = x.clone();
        fft_nd(&mut y, &shape, Direction::Forward);
        for k0 in 0..4 {
            for k1 in 0..8 {
                let mut s = Complex64::new(0.0, 0.0);
                for n0 in 0..4 {
                    for n1 in 0..8 {
                        let ph = -TAU * ((n0 * k0) as f64 / 4.0 + (n1 * k1) as f64 / 8.0);
                        s += x[n0 * 8 + n1] * Complex64::cis(ph);
                    }
                }
                assert!((s - y[k0 * 8 + k1]).norm() < 1e-10);
            }
        }
    }
}
