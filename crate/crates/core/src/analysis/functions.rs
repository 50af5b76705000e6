//! Test functions with known Fourier coefficients and declared smoothness.
//!
//! Korobov and hat functions are tensor products of univariate factors, so
//! grid values, norms and samples are assembled from one dimensional pieces.
//! Korobov factors `g_s(t) = Σ_k max(1,|k|)^{-s} e^{ikt}` have a closed form
//! through Bernoulli polynomials for even integer `s`; other exponents use a
//! truncated series whose tail is bounded by `2 Σ_{k>K} k^{-s}`.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use super::series::{bernoulli_polynomial, power_sum, zeta, zeta_tail};
use super::Space;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::fft;
use crate::kernels::cot::horner;
use crate::kernels::reduce_angle;
use crate::smolyak::{SampleStore, SparseGrid};
use crate::trigpoly::TrigPoly;
use crate::TAU;

/// Margin between coefficient decay and claimed smoothness.
pub const MEMBERSHIP_MARGIN: f64 = 0.05;

/// Terms of the pointwise Korobov series when no closed form exists.
const POINT_TERMS: u64 = 1 << 16;
/// Minimum number of terms folded onto a grid.
const GRID_TERMS: u64 = 1 << 20;
/// Largest even exponent evaluated through Bernoulli polynomials.
const MAX_CLOSED_FORM: u32 = 16;

/// Univariate factor of a tensor product test function.
#[derive(Debug, Clone, PartialEq)]
pub enum Factor {
    /// `ĝ(0) = 1`, `ĝ(k) = |k|^{-s}`.
    Korobov { s: f64 },
    /// `h(x) = 1 - |x|/π` on `[-π, π]`.
    Hat,
}

impl Factor {
    fn closed_form_order(&self) -> Option<u32> {
        match *self {
            Factor::Korobov { s } => {
                let n = s as u32;
                (n as f64 == s && n.is_multiple_of(2) && (2..=MAX_CLOSED_FORM).contains(&n))
                    .then_some(n)
            }
            Factor::Hat => None,
        }
    }

    pub fn coefficient(&self, k: i64) -> f64 {
        match *self {
            Factor::Korobov { s } => {
                if k == 0 {
                    1.0
                } else {
                    libm::pow(k.unsigned_abs() as f64, -s)
                }
            }
            Factor::Hat => {
                if k == 0 {
                    0.5
                } else if k % 2 != 0 {
                    2.0 / (PI * PI * (k * k) as f64)
                } else {
                    0.0
                }
            }
        }
    }

    /// `(c, σ, odd_only)` with `|ĝ(k)|² = c |k|^{-σ}` on the nonzero support.
    pub fn squared_decay(&self) -> (f64, f64, bool) {
        match *self {
            Factor::Korobov { s } => (1.0, 2.0 * s, false),
            Factor::Hat => (4.0 / libm::pow(PI, 4.0), 4.0, true),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Factor::Hat => 1.0 - reduce_angle(x).abs() / PI,
            Factor::Korobov { s } => match self.closed_form_order() {
                Some(n) => korobov_closed(n, x),
                None => {
                    let mut acc = crate::sum::KahanSum::new();
                    for k in (1..=POINT_TERMS).rev() {
                        acc.add(2.0 * libm::cos(k as f64 * x) * libm::pow(k as f64, -s));
                    }
                    1.0 + acc.value()
                }
            },
        }
    }

    /// Bound on `|eval(x) - g(x)|`.
    pub fn truncation_bound(&self) -> f64 {
        match *self {
            Factor::Korobov { s } if self.closed_form_order().is_none() => {
                2.0 * zeta_tail(s, POINT_TERMS)
            }
            _ => 0.0,
        }
    }

    /// `Σ_k |ĝ(k)|`, a bound on `sup |g|`.
    pub fn coefficient_l1(&self) -> f64 {
        match *self {
            Factor::Korobov { s } => 1.0 + 2.0 * zeta(s),
            Factor::Hat => 1.0,
        }
    }

    /// `Σ_k |ĝ(k)|²`.
    pub fn l2_norm_sq(&self) -> f64 {
        match *self {
            Factor::Korobov { s } => 1.0 + 2.0 * zeta(2.0 * s),
            Factor::Hat => 1.0 / 3.0,
        }
    }

    /// Values at `2πv/M`, `v = 0, …, M-1`, and a bound on their error.
    pub fn values_on_grid(&self, resolution: usize) -> (Vec<f64>, f64) {
        if self.closed_form_order().is_some() || *self == Factor::Hat {
            let v = (0..resolution)
                .map(|i| self.eval(TAU * i as f64 / resolution as f64))
                .collect();
            return (v, 0.0);
        }
        let Factor::Korobov { s } = *self else {
            unreachable!()
        };
        let terms = GRID_TERMS.max(16 * resolution as u64);
        let m = resolution as u64;
        let mut folded = vec![Complex64::default(); resolution];
        folded[0] += 1.0;
        for k in (1..=terms).rev() {
            let c = libm::pow(k as f64, -s);
            folded[(k % m) as usize] += c;
            folded[((m - k % m) % m) as usize] += c;
        }
        fft::inverse(&mut folded);
        (
            folded.into_iter().map(|c| c.re).collect(),
            2.0 * zeta_tail(s, terms),
        )
    }

    /// `Σ_{a ≤ |k| < b} |ĝ(k)|²` over `k ≠ 0`.
    pub fn band_energy(&self, a: u64, b: u64) -> f64 {
        let (c, sigma, odd) = self.squared_decay();
        2.0 * c * power_sum(sigma, a.max(1), b, odd)
    }
}

fn korobov_closed(n: u32, x: f64) -> f64 {
    // Σ_{k≥1} cos(2πku)/k^{2m} = (-1)^{m-1} (2π)^{2m} B_{2m}(u) / (2 (2m)!)
    let u = libm::floor(x / TAU);
    let u = x / TAU - u;
    let m = n / 2;
    let fact: f64 = (1..=n).map(|k| k as f64).product();
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    1.0 + sign * libm::pow(TAU, n as f64) * horner(&bernoulli_polynomial(n as usize), u) / fact
}

/// Declared membership in `S^r_{p,θ}X` (`θ` ignored for `W`).
#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub space: Space,
    pub r: Vec<f64>,
    pub p: Exponent,
    pub theta: Exponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunctionKind {
    Korobov,
    HatTensor,
    TrigPoly,
    Constant,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Tensor {
        factors: Vec<Factor>,
        amplitude: f64,
    },
    Poly(TrigPoly),
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    kind: TestFunctionKind,
    repr: Repr,
}

impl TestFunction {
    /// `Π_i g_{s_i}(x_i)`; each `s_i > 1`.
    pub fn korobov(s: Vec<f64>) -> Result<Self> {
        if s.is_empty() || s.iter().any(|v| !(v.is_finite() && *v > 1.0)) {
            return Err(Error::InvalidParameter(alloc::format!(
                "korobov exponents must exceed 1, got {s:?}"
            )));
        }
        Ok(Self {
            kind: TestFunctionKind::Korobov,
            repr: Repr::Tensor {
                factors: s.into_iter().map(|s| Factor::Korobov { s }).collect(),
                amplitude: 1.0,
            },
        })
    }

    pub fn hat_tensor(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidParameter("dimension must be positive".into()));
        }
        Ok(Self {
            kind: TestFunctionKind::HatTensor,
            repr: Repr::Tensor {
                factors: vec![Factor::Hat; dim],
                amplitude: 1.0,
            },
        })
    }

    pub fn trigpoly(poly: TrigPoly) -> Self {
        Self {
            kind: TestFunctionKind::TrigPoly,
            repr: Repr::Poly(poly),
        }
    }

    pub fn constant(dim: usize, value: Complex64) -> Self {
        let mut poly = TrigPoly::new(dim);
        poly.add_term(&vec![0; dim], value)
            .expect("matching dimension");
        Self {
            kind: TestFunctionKind::Constant,
            repr: Repr::Poly(poly),
        }
    }

    pub fn kind(&self) -> TestFunctionKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Tensor { factors, .. } => factors.len(),
            Repr::Poly(p) => p.dim(),
        }
    }

    /// Univariate factors of tensor product functions.
    pub fn factors(&self) -> Option<&[Factor]> {
        match &self.repr {
            Repr::Tensor { factors, .. } => Some(factors),
            Repr::Poly(_) => None,
        }
    }

    /// The polynomial behind `trigpoly` and `constant` functions.
    pub fn polynomial(&self) -> Option<&TrigPoly> {
        match &self.repr {
            Repr::Poly(p) => Some(p),
            Repr::Tensor { .. } => None,
        }
    }

    /// `αf`.
    pub fn scaled(&self, alpha: f64) -> Self {
        match &self.repr {
            Repr::Poly(p) => Self {
                kind: self.kind,
                repr: Repr::Poly(p.scaled(Complex64::new(alpha, 0.0))),
            },
            Repr::Tensor { factors, amplitude } => Self {
                kind: self.kind,
                repr: Repr::Tensor {
                    factors: factors.clone(),
                    amplitude: amplitude * alpha,
                },
            },
        }
    }

    pub fn coefficient(&self, k: &[i64]) -> Complex64 {
        match &self.repr {
            Repr::Tensor { factors, amplitude } => {
                let prod: f64 = factors
                    .iter()
                    .zip(k)
                    .map(|(g, &ki)| g.coefficient(ki))
                    .product();
                Complex64::new(amplitude * prod, 0.0)
            }
            Repr::Poly(p) => p.get(k),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        match &self.repr {
            Repr::Tensor { factors, amplitude } => {
                let prod: f64 = factors.iter().zip(x).map(|(g, &xi)| g.eval(xi)).product();
                Complex64::new(amplitude * prod, 0.0)
            }
            Repr::Poly(p) => p.eval(x),
        }
    }

    /// Certified bound on `|eval(x) - f(x)|`.
    pub fn truncation_bound(&self) -> f64 {
        match &self.repr {
            Repr::Tensor { factors, amplitude } => {
                let exact: f64 = factors.iter().map(Factor::coefficient_l1).product();
                let loose: f64 = factors
                    .iter()
                    .map(|g| g.coefficient_l1() + g.truncation_bound())
                    .product();
                amplitude.abs() * (loose - exact)
            }
            Repr::Poly(_) => 0.0,
        }
    }

    /// `‖f‖_2²` with respect to the normalized measure.
    pub fn l2_norm_sq(&self) -> f64 {
        match &self.repr {
            Repr::Tensor { factors, amplitude } => {
                amplitude * amplitude * factors.iter().map(Factor::l2_norm_sq).product::<f64>()
            }
            Repr::Poly(p) => p.iter().map(|(_, c)| c.norm_sqr()).sum(),
        }
    }

    /// Row-major values at `2πv/M`, `v ∈ [0, M)^d`.
    pub fn eval_on_grid(&self, resolution: usize) -> Result<Vec<Complex64>> {
        match &self.repr {
            Repr::Poly(p) => p.eval_on_grid(resolution),
            Repr::Tensor { factors, amplitude } => {
                let axes: Vec<Vec<f64>> = factors
                    .iter()
                    .map(|g| g.values_on_grid(resolution).0)
                    .collect();
                Ok(outer_product(&axes)
                    .into_iter()
                    .map(|v| v * *amplitude)
                    .collect())
            }
        }
    }

    /// Samples at every node of `grid`.
    pub fn sample(&self, grid: SparseGrid) -> SampleStore {
        match &self.repr {
            Repr::Poly(p) => SampleStore::fill(grid, |x| p.eval(x)),
            Repr::Tensor { factors, amplitude } => {
                let finest = grid.finest_levels().to_vec();
                let axes: Vec<Vec<f64>> = factors
                    .iter()
                    .zip(&finest)
                    .map(|(g, &l)| g.values_on_grid(1usize << l).0)
                    .collect();
                let values = (0..grid.len())
                    .map(|i| {
                        let v = grid.coordinates(i);
                        let prod: f64 = (0..v.len())
                            .map(|d| axes[d][v[d].rem_euclid(1i64 << finest[d]) as usize])
                            .product();
                        Complex64::new(amplitude * prod, 0.0)
                    })
                    .collect();
                SampleStore::from_values(grid, values).expect("one value per node")
            }
        }
    }

    /// Declared memberships; polynomials belong to every space.
    pub fn memberships(&self) -> Vec<Membership> {
        let Repr::Tensor { factors: f, .. } = &self.repr else {
            return Vec::new();
        };
        let inf = Exponent::INFINITY;
        let e = |v: f64| Exponent::new(v).expect("positive");
        let per_dim = |g: fn(&Factor) -> f64| f.iter().map(g).collect::<Vec<f64>>();
        match self.kind {
            TestFunctionKind::Korobov => {
                let besov = per_dim(|g| match g {
                    Factor::Korobov { s } => s - 0.5,
                    Factor::Hat => unreachable!(),
                });
                let sobolev: Vec<f64> = besov.iter().map(|r| r - MEMBERSHIP_MARGIN).collect();
                vec![
                    Membership {
                        space: Space::B,
                        r: besov,
                        p: e(2.0),
                        theta: inf,
                    },
                    Membership {
                        space: Space::W,
                        r: sobolev.clone(),
                        p: e(2.0),
                        theta: e(2.0),
                    },
                    Membership {
                        space: Space::F,
                        r: sobolev,
                        p: e(2.0),
                        theta: e(2.0),
                    },
                ]
            }
            _ => {
                let d = f.len();
                vec![
                    Membership {
                        space: Space::B,
                        r: vec![1.5; d],
                        p: e(2.0),
                        theta: inf,
                    },
                    Membership {
                        space: Space::B,
                        r: vec![2.0; d],
                        p: e(1.0),
                        theta: inf,
                    },
                    Membership {
                        space: Space::B,
                        r: vec![1.0; d],
                        p: inf,
                        theta: inf,
                    },
                    Membership {
                        space: Space::W,
                        r: vec![1.5 - MEMBERSHIP_MARGIN; d],
                        p: e(2.0),
                        theta: e(2.0),
                    },
                    Membership {
                        space: Space::F,
                        r: vec![1.5 - MEMBERSHIP_MARGIN; d],
                        p: e(2.0),
                        theta: e(2.0),
                    },
                ]
            }
        }
    }

    /// Whether `f ∈ S^r_{p,θ}X` follows from a declared membership (or `f`
    /// is a polynomial).
    pub fn is_member(&self, space: Space, r: &[f64], p: Exponent, theta: Exponent) -> bool {
        if matches!(self.repr, Repr::Poly(_)) {
            return true;
        }
        self.memberships().iter().any(|m| {
            let same_scale =
                m.space == space && m.p == p && (space == Space::W || m.theta <= theta);
            let finer = m.r.len() == r.len() && r.iter().zip(&m.r).all(|(a, b)| a <= b);
            // larger θ at strictly smaller smoothness is always contained
            let relaxed = m.space == space
                && m.p == p
                && m.r.len() == r.len()
                && r.iter().zip(&m.r).all(|(a, b)| a < b);
            (same_scale && finer) || relaxed
        })
    }
}

/// Row-major outer product of real axis vectors.
pub(crate) fn outer_product(axes: &[Vec<f64>]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(1.0, 0.0)];
    for axis in axes {
        out = out
            .iter()
            .flat_map(|a| axis.iter().map(move |b| a * b))
            .collect();
    }
    out
}

/// `‖f - approx‖_2` from coefficients: `‖f‖² - Σ_S |f̂|² + Σ_S |f̂ - ĉ|²` with
/// `S` the support of `approx`.
pub fn parseval_l2_error(f: &TestFunction, approx: &TrigPoly) -> f64 {
    let mut captured = crate::sum::KahanSum::new();
    let mut mismatch = crate::sum::KahanSum::new();
    for (k, c) in approx.iter() {
        let fk = f.coefficient(k);
        captured.add(fk.norm_sqr());
        mismatch.add((fk - c).norm_sqr());
    }
    let tail = (f.l2_norm_sq() - captured.value()).max(0.0);
    libm::sqrt(tail + mismatch.value())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hat_coefficients_sum_to_values() {
        let h = Factor::Hat;
        for x in [0.0, 0.7, -2.0, 3.0] {
            let mut s = h.coefficient(0);
            for k in 1..200_001i64 {
                s += 2.0 * h.coefficient(k) * libm::cos(k as f64 * x);
            }
            // tail Σ_{k>K odd} 4/(π²k²) ≤ 2/(π² K)
            assert!((s - h.eval(x)).abs() < 2.0 / (PI * PI * 2e5) + 1e-12);
        }
        assert_eq!(h.coefficient(4), 0.0);
        assert!((h.l2_norm_sq() - (0.25 + h.band_energy(1, 1 << 40))).abs() < 1e-12);
    }

    #[test]
    fn korobov_closed_form_matches_series() {
        for s in [2.0, 4.0, 6.0] {
            let g = Factor::Korobov { s };
            assert!(g.closed_form_order().is_some());
            for x in [0.0, 0.4, -1.3, 3.1] {
                let mut series = 1.0;
                let big_k = 100_000u64;
                for k in 1..=big_k {
                    series += 2.0 * libm::cos(k as f64 * x) * libm::pow(k as f64, -s);
                }
                let bound = 2.0 * zeta_tail(s, big_k);
                assert!((g.eval(x) - series).abs() <= bound + 1e-12, "s={s} x={x}");
            }
        }
        let g2 = Factor::Korobov { s: 2.0 };
        assert!((g2.eval(0.0) - (1.0 + PI * PI / 3.0)).abs() < 1e-13);
    }

    #[test]
    fn folded_grid_values_match_pointwise() {
        let g = Factor::Korobov { s: 3.0 };
        let (vals, bound) = g.values_on_grid(16);
        assert!(bound < 1e-11);
        for (i, v) in vals.iter().enumerate() {
            let x = TAU * i as f64 / 16.0;
            assert!((v - g.eval(x)).abs() < bound + g.truncation_bound() + 1e-12);
        }
    }

    #[test]
    fn samples_use_grid_values() {
        let f = TestFunction::korobov(vec![2.0, 3.0]).unwrap();
        let set = crate::smolyak::build_index_set(&[1.0, 1.0], 4.0).unwrap();
        let store = f.sample(SparseGrid::new(&set).unwrap());
        for (i, x) in store.grid().points().enumerate() {
            assert!((store.values()[i] - f.eval(&x)).norm() < 1e-9);
        }
    }

    #[test]
    fn membership_queries() {
        let h = TestFunction::hat_tensor(2).unwrap();
        let two = Exponent::new(2.0).unwrap();
        assert!(h.is_member(Space::B, &[1.5, 1.5], two, Exponent::INFINITY));
        assert!(!h.is_member(Space::B, &[1.6, 1.5], two, Exponent::INFINITY));
        assert!(h.is_member(Space::W, &[1.2, 1.2], two, two));
        let c = TestFunction::constant(2, Complex64::new(1.0, 0.0));
        assert!(c.is_member(Space::W, &[9.0, 9.0], two, two));
    }

    #[test]
    fn parseval_error_of_zero_approximation() {
        let f = TestFunction::hat_tensor(1).unwrap();
        let zero = TrigPoly::new(1);
        assert!((parseval_l2_error(&f, &zero) - libm::sqrt(1.0 / 3.0)).abs() < 1e-15);
    }
}
