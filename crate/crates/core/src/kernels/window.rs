//! The Fourier window `FK^L / √(2π)` of the sinc-product kernel.
//!
//! `K^L(x) = Π_{l=1..L} sinc(2^{-l} x)` is the characteristic function of a
//! sum of independent uniform variables on `[-2^{-l}, 2^{-l}]`, so its Fourier
//! transform (divided by `√(2π)`) is the density of that sum: a piecewise
//! polynomial of degree `L - 1`, equal to 1 on `|ξ| ≤ 2^{-L}` and vanishing on
//! `|ξ| ≥ 1 - 2^{-L}`.
//!
//! The window is built by repeated convolution of box densities. Breakpoints
//! are dyadic rationals stored as integer numerators over `2^L`; each piece
//! carries its polynomial in the local variable `t = ξ - left`.

use alloc::vec;
use alloc::vec::Vec;

use super::cot::horner;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct WindowPiece {
    /// Left breakpoint numerator (denominator `2^L`).
    pub left: i64,
    /// Right breakpoint numerator (denominator `2^L`).
    pub right: i64,
    /// Coefficients in `t = ξ - left/2^L`, ascending.
    pub poly: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FourierWindow {
    order: u32,
    pieces: Vec<WindowPiece>,
}

impl FourierWindow {
    pub fn new(order: u32) -> Result<Self> {
        if !(2..=super::MAX_ORDER).contains(&order) {
            return Err(Error::InvalidOrder(order));
        }
        let denom = 1i64 << order;
        // density of U[-1/2, 1/2]
        let mut pieces = vec![WindowPiece {
            left: -denom / 2,
            right: denom / 2,
            poly: vec![1.0],
        }];
        for level in 2..=order {
            let half_width = 1i64 << (order - level);
            pieces = convolve_box(&pieces, half_width, order);
        }
        Ok(Self { order, pieces })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn pieces(&self) -> &[WindowPiece] {
        &self.pieces
    }

    fn scale(&self) -> f64 {
        (1u64 << self.order) as f64
    }

    /// Breakpoints as reals, ascending.
    pub fn breakpoints(&self) -> Vec<f64> {
        let s = self.scale();
        let mut out: Vec<f64> = self.pieces.iter().map(|p| p.left as f64 / s).collect();
        if let Some(last) = self.pieces.last() {
            out.push(last.right as f64 / s);
        }
        out
    }

    /// Half-width of the support, `1 - 2^{-L}`.
    pub fn support_radius(&self) -> f64 {
        1.0 - 1.0 / self.scale()
    }

    fn locate(&self, xi: f64) -> Option<&WindowPiece> {
        let s = self.scale();
        let first = self.pieces.first()?;
        let last = self.pieces.last()?;
        if xi < first.left as f64 / s || xi >= last.right as f64 / s {
            return None;
        }
        let idx = self.pieces.partition_point(|p| (p.right as f64 / s) <= xi);
        self.pieces.get(idx)
    }

    /// `FK^L(ξ)/√(2π)`.
    pub fn eval(&self, xi: f64) -> f64 {
        match self.locate(xi) {
            Some(p) => horner(&p.poly, xi - p.left as f64 / self.scale()),
            None => 0.0,
        }
    }

    /// `k`-th derivative inside a piece (one-sided at breakpoints: the piece to
    /// the right of `ξ` is used).
    pub fn derivative(&self, k: usize, xi: f64) -> f64 {
        match self.locate(xi) {
            Some(p) => {
                let d = differentiate(&p.poly, k);
                horner(&d, xi - p.left as f64 / self.scale())
            }
            None => 0.0,
        }
    }

    /// Total mass; equals 1 for a probability density.
    pub fn integral(&self) -> f64 {
        let s = self.scale();
        self.pieces
            .iter()
            .map(|p| horner(&antiderivative(&p.poly, 0.0), (p.right - p.left) as f64 / s))
            .sum()
    }
}

fn differentiate(poly: &[f64], k: usize) -> Vec<f64> {
    let mut p = poly.to_vec();
    for _ in 0..k {
        if p.len() <= 1 {
            return vec![0.0];
        }
        p = p
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * i as f64)
            .collect();
    }
    p
}

fn antiderivative(poly: &[f64], constant: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    out.push(constant);
    out.extend(poly.iter().enumerate().map(|(i, a)| a / (i + 1) as f64));
    out
}

/// `q(s) = p(s + δ)`.
fn taylor_shift(poly: &[f64], delta: f64) -> Vec<f64> {
    let n = poly.len();
    let mut out = vec![0.0; n];
    for (m, &a) in poly.iter().enumerate() {
        // binomial expansion of (s + δ)^m
        let mut binom = 1.0;
        for (k, slot) in out.iter_mut().enumerate().take(m + 1) {
            *slot += a * binom * libm::pow(delta, (m - k) as f64);
            binom = binom * (m - k) as f64 / (k + 1) as f64;
        }
    }
    out
}

/// Convolve a piecewise density with the uniform density on `[-h, h]`, `h` a
/// numerator over `2^order`.
fn convolve_box(pieces: &[WindowPiece], h: i64, order: u32) -> Vec<WindowPiece> {
    let scale = (1u64 << order) as f64;
    // continuous antiderivative, piece by piece
    let mut prims = Vec::with_capacity(pieces.len());
    let mut acc = 0.0;
    for p in pieces {
        let prim = antiderivative(&p.poly, acc);
        acc = horner(&prim, (p.right - p.left) as f64 / scale);
        prims.push(prim);
    }
    let total = acc;

    let mut cuts: Vec<i64> = pieces
        .iter()
        .flat_map(|p| [p.left - h, p.left + h, p.right - h, p.right + h])
        .collect();
    cuts.sort_unstable();
    cuts.dedup();

    // primitive (shifted to the local variable of the new piece) of the
    // piece containing the open interval (a + shift, b + shift)
    let primitive_at = |a: i64, b: i64, shift: i64| -> Vec<f64> {
        let mid2 = a + b + 2 * shift; // twice the midpoint, in numerator units
        if mid2 < 2 * pieces[0].left {
            return vec![0.0];
        }
        if mid2 > 2 * pieces[pieces.len() - 1].right {
            return vec![total];
        }
        let i = pieces
            .iter()
            .position(|p| 2 * p.left <= mid2 && mid2 <= 2 * p.right)
            .expect("interval inside support");
        let delta = (a + shift - pieces[i].left) as f64 / scale;
        taylor_shift(&prims[i], delta)
    };

    let inv = scale / (2.0 * h as f64);
    cuts.windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let upper = primitive_at(a, b, h);
            let lower = primitive_at(a, b, -h);
            let len = upper.len().max(lower.len());
            let mut poly: Vec<f64> = (0..len)
                .map(|k| {
                    (upper.get(k).copied().unwrap_or(0.0) - lower.get(k).copied().unwrap_or(0.0))
                        * inv
                })
                .collect();
            while poly.len() > 1 && poly.last().is_some_and(|c| c.abs() < 1e-300) {
                poly.pop();
            }
            WindowPiece {
                left: a,
                right: b,
                poly,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_two_is_trapezoid() {
        let w = FourierWindow::new(2).unwrap();
        assert_eq!(w.eval(0.2), 1.0);
        assert_eq!(w.eval(0.8), 0.0);
        assert!((w.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((w.eval(-0.5) - 0.5).abs() < 1e-15);
        assert!((w.eval(0.3) - 0.9).abs() < 1e-14);
    }

    #[test]
    fn flat_top_and_support() {
        for order in 2..=8u32 {
            let w = FourierWindow::new(order).unwrap();
            let flat = libm::ldexp(1.0, -(order as i32));
            for i in 0..=20 {
                let xi = flat * i as f64 / 20.0;
                assert!((w.eval(xi) - 1.0).abs() < 1e-12, "L={order} ξ={xi}");
                assert!((w.eval(-xi) - 1.0).abs() < 1e-12);
            }
            let r = w.support_radius();
            assert_eq!(w.eval(r), 0.0);
            assert_eq!(w.eval(r + 0.01), 0.0);
            assert!((w.integral() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn taylor_shift_of_cubic() {
        // p(t) = 1 + 2t + 3t^3; p(s + 0.5)
        let q = taylor_shift(&[1.0, 2.0, 0.0, 3.0], 0.5);
        for s in [-1.0, 0.0, 0.3, 2.0] {
            let t: f64 = s + 0.5;
            let expected = 1.0 + 2.0 * t + 3.0 * t * t * t;
            assert!((horner(&q, s) - expected).abs() < 1e-12);
        }
        let z = taylor_shift(&[1.0, 2.0, 5.0], 0.0);
        assert_eq!(z, vec![1.0, 2.0, 5.0]);
    }

    #[test]
    fn rejects_order_one() {
        assert!(FourierWindow::new(1).is_err());
    }
}
