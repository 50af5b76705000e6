//! Exact derivative tables of `½ cot(x/2)`.
//!
//! Every derivative of `½ cot(x/2)` is a polynomial in `c = cot(x/2)`. With
//! `d/dx c = -(1 + c²)/2` the table for order `n + 1` follows from order `n`
//! by `g_{n+1}(c) = -½ (1 + c²) g_n'(c)`.
//!
//! Combined with `½ cot(x/2) = Σ_k 1/(x + 2πk)` this gives the lattice sums
//! `S_L(x) = Σ_k (x + 2πk)^{-L} = (-1)^{L-1} g_{L-1}(c) / (L-1)!`.

use alloc::vec;
use alloc::vec::Vec;
use num_rational::Ratio;

pub type Rational = Ratio<i128>;

/// Coefficients (ascending powers of `cot(x/2)`) of the `order`-th derivative
/// of `½ cot(x/2)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CotDerivTable {
    order: u32,
    coefficients: Vec<Rational>,
}

impl CotDerivTable {
    /// Order zero: `½ c`.
    pub fn base() -> Self {
        Self {
            order: 0,
            coefficients: vec![Rational::from_integer(0), Rational::new(1, 2)],
        }
    }

    pub fn new(order: u32) -> Self {
        let mut t = Self::base();
        while t.order < order {
            t = t.next();
        }
        t
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    /// Table of the next derivative order.
    pub fn next(&self) -> Self {
        // g'(c)
        let deriv: Vec<Rational> = self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, a)| *a * Rational::from_integer(k as i128))
            .collect();
        // -½ (1 + c²) g'(c)
        let mut out = vec![Rational::from_integer(0); deriv.len() + 2];
        let minus_half = Rational::new(-1, 2);
        for (k, a) in deriv.iter().enumerate() {
            out[k] += *a * minus_half;
            out[k + 2] += *a * minus_half;
        }
        while out.len() > 1 && out.last().is_some_and(|a| *a.numer() == 0) {
            out.pop();
        }
        Self {
            order: self.order + 1,
            coefficients: out,
        }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coefficients.iter().map(rational_to_f64).collect()
    }

    pub fn eval(&self, cot: f64) -> f64 {
        horner(&self.to_f64(), cot)
    }
}

pub(crate) fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub(crate) fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, a| acc * x + a)
}

/// Coefficients of `S_L` as a polynomial in `cot(x/2)`.
pub fn lattice_sum_coefficients(order: u32) -> Vec<f64> {
    assert!(order >= 1);
    let table = CotDerivTable::new(order - 1);
    let mut fact: i128 = 1;
    for k in 1..order as i128 {
        fact *= k;
    }
    let sign = if (order - 1).is_multiple_of(2) { 1 } else { -1 };
    let scale = Rational::new(sign, fact);
    table
        .coefficients()
        .iter()
        .map(|a| rational_to_f64(&(*a * scale)))
        .collect()
}
