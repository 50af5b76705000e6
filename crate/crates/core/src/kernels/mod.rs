//! Univariate fundamental interpolants `K^L_{π,j}`.
//!
//! For `L ≥ 2` the kernel is the `2π`-periodization of `K^L(2^j ·)` with
//! `K^L(x) = Π_{l=1..L} sinc(2^{-l} x)`. For `L = 1` it is the modified
//! Dirichlet kernel `2^{-j} Σ_{k=-2^{j-1}}^{2^{j-1}-1} e^{ikx}`.
//!
//! Evaluation of the periodized kernel uses one of three routes:
//!
//! - `j ≥ L`: the closed form `Π_l sin(2^{j-l}x) · 2^{L(L+1)/2 - jL} · S_L(x)`
//!   where `S_L(x) = Σ_k (x + 2πk)^{-L}` comes from the exact cot-derivative
//!   tables in [`cot`]; a Taylor branch covers `|x| < 2^{-j}·10^{-6}`.
//! - `j < L`: the closed form does not apply (the phases `2^{j-l+1}πk` are
//!   not multiples of `2π` for `l > j`), and the kernel is summed exactly from
//!   its finitely many Fourier coefficients `2^{-j} FK^L(l/2^j)/√(2π)`.
//! - `L = 1`: `2^{-j} e^{-ix/2} sin(2^{j-1}x) / sin(x/2)`.

pub mod cot;
pub mod window;

use alloc::vec::Vec;
use num_complex::Complex64;

pub use cot::CotDerivTable;
pub use window::FourierWindow;

use crate::error::{Error, Result};
use crate::TAU;

/// Largest supported decay order `L`.
pub const MAX_ORDER: u32 = 12;
/// Largest supported dyadic level `j`.
pub const MAX_LEVEL: u32 = 30;

/// Relative threshold (in units of `2^{-j}`) below which the Taylor branch is used.
const SINGULAR_THRESHOLD: f64 = 1e-6;

/// Decay order `L` and dyadic level `j` of one fundamental interpolant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KernelSpec {
    order: u32,
    level: u32,
}

impl KernelSpec {
    pub fn new(order: u32, level: u32) -> Result<Self> {
        check_order(order)?;
        check_level(level)?;
        Ok(Self { order, level })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// `L = 1`: the complex-valued Dirichlet case.
    pub fn is_dirichlet(&self) -> bool {
        self.order == 1
    }
}

pub(crate) fn check_order(order: u32) -> Result<()> {
    if (1..=MAX_ORDER).contains(&order) {
        Ok(())
    } else {
        Err(Error::InvalidOrder(order))
    }
}

pub(crate) fn check_level(level: u32) -> Result<()> {
    if level <= MAX_LEVEL {
        Ok(())
    } else {
        Err(Error::InvalidLevel(level))
    }
}

/// `sinc(x) = sin(x)/x`, `sinc(0) = 1`.
pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        libm::sin(x) / x
    }
}

/// `K^L(x) = Π_{l=1..L} sinc(2^{-l} x)`.
pub fn eval_sinc_product(order: u32, x: f64) -> f64 {
    (1..=order)
        .map(|l| sinc(libm::ldexp(x, -(l as i32))))
        .product()
}

/// Reduce `x` to `[-π, π]`.
pub fn reduce_angle(x: f64) -> f64 {
    if (-core::f64::consts::PI..=core::f64::consts::PI).contains(&x) {
        return x;
    }
    x - TAU * libm::round(x / TAU)
}

/// Indicator of `l ∈ [-2^{j-1}, 2^{j-1} - 1]` (`{0}` for `j = 0`): the
/// frequency window of the `L = 1` kernel.
pub fn dirichlet_window(level: u32, freq: i64) -> f64 {
    let (lo, hi) = dirichlet_range(level);
    if (lo..=hi).contains(&freq) {
        1.0
    } else {
        0.0
    }
}

fn dirichlet_range(level: u32) -> (i64, i64) {
    if level == 0 {
        (0, 0)
    } else {
        let n = 1i64 << (level - 1);
        (-n, n - 1)
    }
}

/// `FK^L(ξ)/√(2π)` for `L ≥ 2`.
pub fn eval_fourier_window(order: u32, xi: f64) -> Result<f64> {
    Ok(FourierWindow::new(order)?.eval(xi))
}

/// `K^L_{π,j}(x)` for a single spec. Builds the tables on every call; use
/// [`Kernel`] for repeated evaluation.
pub fn eval_periodized_kernel(spec: KernelSpec, x: f64) -> Complex64 {
    Kernel::new(spec.order)
        .expect("KernelSpec holds a valid order")
        .eval(spec.level, x)
}

/// Precomputed tables for one decay order `L`, evaluable at every level.
///
/// Immutable after construction and `Sync`, so one instance can be shared by
/// concurrent evaluators.
#[derive(Debug, Clone)]
pub struct Kernel {
    order: u32,
    /// `S_L` as a polynomial in `cot(x/2)`; empty for `L = 1`.
    lattice: Vec<f64>,
    window: Option<FourierWindow>,
}

impl Kernel {
    pub fn new(order: u32) -> Result<Self> {
        check_order(order)?;
        if order == 1 {
            return Ok(Self {
                order,
                lattice: Vec::new(),
                window: None,
            });
        }
        Ok(Self {
            order,
            lattice: cot::lattice_sum_coefficients(order),
            window: Some(FourierWindow::new(order)?),
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn fourier_window(&self) -> Option<&FourierWindow> {
        self.window.as_ref()
    }

    /// Multiplier applied to the normalized DFT at frequency `freq` on level
    /// `level`: `FK^L(l/2^j)/√(2π)` or the Dirichlet indicator.
    pub fn frequency_weight(&self, level: u32, freq: i64) -> f64 {
        match &self.window {
            None => dirichlet_window(level, freq),
            Some(w) => w.eval(freq as f64 / (1u64 << level) as f64),
        }
    }

    /// Inclusive range of frequencies with non-zero weight on `level`.
    pub fn frequency_range(&self, level: u32) -> (i64, i64) {
        match &self.window {
            None => dirichlet_range(level),
            Some(_) => {
                // |l| 2^L < 2^j (2^L - 1)
                let scaled = (1i128 << level) * ((1i128 << self.order) - 1);
                let hi = ((scaled - 1) >> self.order) as i64;
                (-hi, hi)
            }
        }
    }

    /// `K^L_{π,j}(x)`.
    pub fn eval(&self, level: u32, x: f64) -> Complex64 {
        let x = reduce_angle(x);
        if self.order == 1 {
            return dirichlet_kernel(level, x);
        }
        if level < self.order {
            return Complex64::new(self.fourier_sum(level, x), 0.0);
        }
        if x.abs() < libm::ldexp(SINGULAR_THRESHOLD, -(level as i32)) {
            return Complex64::new(self.taylor(level, x), 0.0);
        }
        Complex64::new(self.closed_form(level, x), 0.0)
    }

    fn closed_form(&self, level: u32, x: f64) -> f64 {
        let l = self.order as i32;
        let j = level as i32;
        let sines: f64 = (1..=l).map(|k| libm::sin(libm::ldexp(x, j - k))).product();
        let half = x / 2.0;
        let cot = libm::cos(half) / libm::sin(half);
        let lattice = cot::horner(&self.lattice, cot);
        libm::ldexp(sines * lattice, l * (l + 1) / 2 - j * l)
    }

    /// Degree-4 expansion around `x = 0` of `Π_l sinc(2^{j-l}x) · (1 + x^L R(x))`,
    /// `R(x) = Σ_{k≠0} (x + 2πk)^{-L}`.
    fn taylor(&self, level: u32, x: f64) -> f64 {
        let j = level as i32;
        let sincs: f64 = (1..=self.order as i32)
            .map(|k| {
                let y = libm::ldexp(x, j - k);
                let y2 = y * y;
                1.0 - y2 / 6.0 + y2 * y2 / 120.0
            })
            .product();
        let x2 = x * x;
        // Σ_{k≠0} (2πk)^{-2} = 1/12, Σ_{k≠0} (2πk)^{-4} = 1/720
        let tail = match self.order {
            2 => x2 / 12.0 + x2 * x2 / 240.0,
            3 => -x2 * x2 / 240.0,
            4 => x2 * x2 / 720.0,
            _ => 0.0,
        };
        sincs * (1.0 + tail)
    }

    fn fourier_sum(&self, level: u32, x: f64) -> f64 {
        let (_, hi) = self.frequency_range(level);
        let mut acc = crate::sum::KahanSum::new();
        acc.add(self.frequency_weight(level, 0));
        for l in 1..=hi {
            acc.add(2.0 * self.frequency_weight(level, l) * libm::cos(l as f64 * x));
        }
        libm::ldexp(acc.value(), -(level as i32))
    }
}

fn dirichlet_kernel(level: u32, x: f64) -> Complex64 {
    if level == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let n = libm::ldexp(1.0, level as i32 - 1);
    let phase = Complex64::cis(-x / 2.0);
    if x.abs() < libm::ldexp(SINGULAR_THRESHOLD, -(level as i32)) {
        return phase * (1.0 - (n * n - 0.25) * x * x / 6.0);
    }
    let ratio = libm::sin(n * x) / libm::sin(x / 2.0);
    phase * libm::ldexp(ratio, -(level as i32))
}
