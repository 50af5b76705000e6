//! Discrete sampling norms built from the blocks `q^L_j` and reference norms
//! from exact Fourier coefficients.
//!
//! Discrete norms:
//!
//! ```text
//! F:  ‖ (Σ_{|j|_∞ ≤ J} 2^{θ r·j} |q_j f|^θ)^{1/θ} ‖_p
//! B:  (Σ_{|j|_∞ ≤ J} 2^{θ r·j} ‖q_j f‖_p^θ)^{1/θ}
//! ```
//!
//! `W^r_p` is treated as `F^r_{p,2}`. Reference norms replace the smooth
//! dyadic decomposition by sharp cutoffs `δ_j = {2^{j-1} ≤ |k| < 2^j}` (and
//! `δ_0 = {0}`); for `p = θ = 2` they reduce to exact weighted coefficient sums,
//! with weight `Π (1 + k_i²)^{r_i}` for `W`.
//!
//! Tensor products (Korobov, hat, single exponentials) factorize: both the
//! blocks `q_j` and the sharp pieces `δ_j` are tensor products, so every norm
//! is a product of univariate norms.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::functions::{Factor, TestFunction};
use super::quadrature::lq_mean;
use super::series::power_sum;
use super::Space;
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::interpolation::{level_offset, level_size, tensor_coefficients};
use crate::kernels::Kernel;
use crate::smolyak::{IndexSet, MultiIndex, SampleStore, Smolyak, SparseGrid};
use crate::sum::KahanSum;
use crate::trigpoly::TrigPoly;
use crate::TAU;

/// Highest sharp dyadic band used by grid-based reference norms.
pub const REFERENCE_LEVELS: u32 = 14;
/// Grid oversampling relative to the largest frequency.
const OVERSAMPLING: usize = 4;
/// Dyadic bands summed exactly before the geometric tail estimate.
const EXACT_BANDS: u32 = 60;

/// Norm of `S^r_{p,θ}X`; `θ` is ignored for `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormSpec {
    pub space: Space,
    pub r: Vec<f64>,
    pub p: Exponent,
    pub theta: Exponent,
}

impl NormSpec {
    pub fn new(space: Space, r: Vec<f64>, p: Exponent, theta: Exponent) -> Result<Self> {
        if r.is_empty() || r.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "invalid smoothness {r:?}"
            )));
        }
        if space == Space::W && p.is_infinite() {
            return Err(Error::InvalidParameter("W requires p < inf".into()));
        }
        Ok(Self { space, r, p, theta })
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    /// `θ` of the block sequence (`2` for `W`).
    pub fn effective_theta(&self) -> Exponent {
        match self.space {
            Space::W => Exponent::new(2.0).expect("positive"),
            _ => self.theta,
        }
    }

    /// Whether the discrete characterization with kernel order `L` is
    /// covered by the equivalence theorems.
    pub fn discrete_in_domain(&self, order: u32) -> bool {
        let l = order as f64;
        let ip = self.p.recip();
        let it = self.effective_theta().recip();
        let rmin = self.r.iter().copied().fold(f64::INFINITY, f64::min);
        match self.space {
            Space::W => ip < 1.0 && ip > 0.0 && l > ip.max(it) && rmin > ip.max(it),
            Space::F => {
                l > ip.max(it) && !(order == 1 && self.theta.is_infinite()) && rmin > ip.max(it)
            }
            Space::B => l > ip && rmin > ip,
        }
    }

    fn weight(&self, j: &[u32]) -> f64 {
        libm::exp2(self.r.iter().zip(j).map(|(r, &ji)| r * ji as f64).sum())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormValue {
    pub value: f64,
    /// False when the parameters lie outside the proven range.
    pub in_domain: bool,
}

fn ell(values: impl IntoIterator<Item = f64>, theta: Exponent) -> f64 {
    if theta.is_infinite() {
        return values.into_iter().fold(0.0, f64::max);
    }
    let t = theta.value();
    let s: KahanSum = values.into_iter().map(|a| libm::pow(a, t)).collect();
    libm::pow(s.value(), 1.0 / t)
}

fn grid_resolution(max_frequency: usize) -> usize {
    (OVERSAMPLING * max_frequency.max(1)).next_power_of_two()
}

/// Combines weighted block grids into an `F` or `B` norm.
struct BlockAccumulator {
    space: Space,
    p: Exponent,
    theta: Exponent,
    pointwise: Vec<f64>,
    block_norms: Vec<f64>,
}

impl BlockAccumulator {
    fn new(spec: &NormSpec, points: usize) -> Self {
        let space = if spec.space == Space::B {
            Space::B
        } else {
            Space::F
        };
        Self {
            space,
            p: spec.p,
            theta: spec.effective_theta(),
            pointwise: if space == Space::F {
                vec![0.0; points]
            } else {
                Vec::new()
            },
            block_norms: Vec::new(),
        }
    }

    fn add(&mut self, weight: f64, values: &[Complex64]) {
        match self.space {
            Space::B => self
                .block_norms
                .push(weight * lq_mean(values.iter().map(|v| v.norm()), self.p)),
            _ if self.theta.is_infinite() => {
                for (a, v) in self.pointwise.iter_mut().zip(values) {
                    *a = a.max(weight * v.norm());
                }
            }
            _ => {
                let t = self.theta.value();
                for (a, v) in self.pointwise.iter_mut().zip(values) {
                    *a += libm::pow(weight * v.norm(), t);
                }
            }
        }
    }

    fn finish(self) -> f64 {
        match self.space {
            Space::B => ell(self.block_norms, self.theta),
            _ if self.theta.is_infinite() => lq_mean(self.pointwise, self.p),
            _ => {
                let inv = 1.0 / self.theta.value();
                lq_mean(
                    self.pointwise.into_iter().map(|a| libm::pow(a, inv)),
                    self.p,
                )
            }
        }
    }
}

/// Univariate factor of a separable function.
#[derive(Debug, Clone)]
enum Univariate<'a> {
    Factor(&'a Factor),
    Character(i64),
}

impl Univariate<'_> {
    fn coefficient(&self, k: i64) -> Complex64 {
        match self {
            Univariate::Factor(g) => Complex64::new(g.coefficient(k), 0.0),
            Univariate::Character(c) => Complex64::new(if k == *c { 1.0 } else { 0.0 }, 0.0),
        }
    }

    /// Values at `2πv/M`.
    fn grid_values(&self, resolution: usize) -> Vec<Complex64> {
        match self {
            Univariate::Factor(g) => g
                .values_on_grid(resolution)
                .0
                .into_iter()
                .map(|v| Complex64::new(v, 0.0))
                .collect(),
            Univariate::Character(k) => (0..resolution)
                .map(|v| Complex64::cis(TAU * (*k * v as i64) as f64 / resolution as f64))
                .collect(),
        }
    }

    /// Samples on level `j` in ascending-`u` order.
    fn level_samples(&self, level: u32) -> Vec<Complex64> {
        let n = level_size(level);
        let grid = self.grid_values(n);
        let off = level_offset(level);
        (0..n as i64)
            .map(|i| grid[(i - off).rem_euclid(n as i64) as usize])
            .collect()
    }

    /// `Σ_{k ∈ δ_j} |ĝ(k)|²`.
    fn band_energy(&self, j: u32) -> f64 {
        match self {
            Univariate::Factor(g) => {
                if j == 0 {
                    g.coefficient(0).powi(2)
                } else {
                    g.band_energy(1u64 << (j - 1), 1u64 << j)
                }
            }
            Univariate::Character(k) => (dyadic_index(*k) == j) as u8 as f64,
        }
    }

    /// `Σ_k (1 + k²)^r |ĝ(k)|²`.
    fn sobolev_energy(&self, r: f64) -> f64 {
        match self {
            Univariate::Character(k) => libm::pow(1.0 + (*k * *k) as f64, r),
            Univariate::Factor(g) => {
                let (c, sigma, odd) = g.squared_decay();
                if sigma - 2.0 * r <= 1.0 {
                    return f64::INFINITY;
                }
                const DIRECT: u64 = 4096;
                let mut acc = KahanSum::new();
                acc.add(g.coefficient(0).powi(2));
                for k in (1..=DIRECT).rev() {
                    let gk = g.coefficient(k as i64);
                    acc.add(2.0 * libm::pow(1.0 + (k * k) as f64, r) * gk * gk);
                }
                // (1 + k²)^r k^{-σ} = Σ_n C(r, n) k^{2r - 2n - σ}, k > DIRECT
                let mut binom = 1.0;
                for n in 0..8u32 {
                    let s = sigma - 2.0 * r + 2.0 * n as f64;
                    acc.add(2.0 * c * binom * power_sum(s, DIRECT + 1, u64::MAX, odd));
                    binom *= (r - n as f64) / (n + 1) as f64;
                }
                acc.value()
            }
        }
    }

    /// `Σ_j 2^{2rj} Σ_{k∈δ_j} |ĝ(k)|²`.
    fn dyadic_energy(&self, r: f64) -> f64 {
        if let Univariate::Character(k) = self {
            return libm::exp2(2.0 * r * dyadic_index(*k) as f64);
        }
        let Univariate::Factor(g) = self else {
            unreachable!()
        };
        let (_, sigma, _) = g.squared_decay();
        // band energies decay like 2^{-j(σ-1)}
        let ratio = libm::exp2(2.0 * r - sigma + 1.0);
        if ratio >= 1.0 {
            return f64::INFINITY;
        }
        let mut acc = KahanSum::new();
        let mut last = 0.0;
        for j in 0..=EXACT_BANDS {
            last = libm::exp2(2.0 * r * j as f64) * self.band_energy(j);
            acc.add(last);
        }
        acc.add(last * ratio / (1.0 - ratio));
        acc.value()
    }

    /// Coefficients of the sharp band `δ_j`, as `(k, ĝ(k))`.
    fn band(&self, j: u32) -> Vec<(i64, Complex64)> {
        match self {
            Univariate::Character(k) => {
                if dyadic_index(*k) == j {
                    vec![(*k, Complex64::new(1.0, 0.0))]
                } else {
                    Vec::new()
                }
            }
            Univariate::Factor(_) => {
                if j == 0 {
                    return vec![(0, self.coefficient(0))];
                }
                let lo = 1i64 << (j - 1);
                let hi = 1i64 << j;
                (lo..hi)
                    .flat_map(|k| [(k, self.coefficient(k)), (-k, self.coefficient(-k))])
                    .filter(|(_, c)| c.norm() > 0.0)
                    .collect()
            }
        }
    }

    fn max_band(&self) -> u32 {
        match self {
            Univariate::Character(k) => dyadic_index(*k),
            Univariate::Factor(_) => REFERENCE_LEVELS,
        }
    }
}

/// `j` with `k ∈ δ_j`.
pub fn dyadic_index(k: i64) -> u32 {
    64 - k.unsigned_abs().leading_zeros()
}

/// Separable view `amplitude · Π g_i(x_i)`.
fn separable(f: &TestFunction) -> Option<(Complex64, Vec<Univariate<'_>>)> {
    if let Some(factors) = f.factors() {
        let amp = f.coefficient(&vec![0; factors.len()]).re
            / factors.iter().map(|g| g.coefficient(0)).product::<f64>();
        return Some((
            Complex64::new(amp, 0.0),
            factors.iter().map(Univariate::Factor).collect(),
        ));
    }
    let poly = f.polynomial()?;
    if poly.len() != 1 {
        return None;
    }
    let (k, c) = poly.iter().next()?;
    Some((c, k.iter().map(|&ki| Univariate::Character(ki)).collect()))
}

fn univariate_poly(terms: &[(i64, Complex64)]) -> TrigPoly {
    TrigPoly::from_terms(1, terms.iter().map(|(k, c)| (vec![*k], *c))).expect("univariate")
}

/// Univariate blocks `q^L_j[g]`, `j = 0..=jmax`, on a grid of `resolution`.
fn univariate_blocks(
    kernel: &Kernel,
    g: &Univariate<'_>,
    jmax: u32,
    resolution: usize,
) -> Result<Vec<Vec<Complex64>>> {
    let mut prev: Option<TrigPoly> = None;
    let mut out = Vec::with_capacity(jmax as usize + 1);
    for j in 0..=jmax {
        let interp = tensor_coefficients(kernel, &[j], &g.level_samples(j))?;
        let mut block = interp.clone();
        if let Some(p) = &prev {
            block.add_scaled(p, Complex64::new(-1.0, 0.0))?;
        }
        out.push(block.eval_on_grid(resolution)?);
        prev = Some(interp);
    }
    Ok(out)
}

fn univariate_discrete(
    kernel: &Kernel,
    g: &Univariate<'_>,
    spec: &NormSpec,
    r: f64,
    jmax: u32,
) -> Result<f64> {
    let resolution = grid_resolution(1 << jmax);
    let blocks = univariate_blocks(kernel, g, jmax, resolution)?;
    let one = NormSpec {
        r: vec![r],
        ..spec.clone()
    };
    let mut acc = BlockAccumulator::new(&one, resolution);
    for (j, b) in blocks.iter().enumerate() {
        acc.add(one.weight(&[j as u32]), b);
    }
    Ok(acc.finish())
}

/// Discrete norm from samples on the full grid of level `(jmax, …, jmax)`.
pub fn discrete_norm_from_samples(
    kernel: &Kernel,
    store: &SampleStore,
    spec: &NormSpec,
    jmax: u32,
) -> Result<NormValue> {
    let d = spec.dim();
    if store.grid().dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: store.grid().dim(),
        });
    }
    let set = IndexSet::full_box(&vec![jmax; d]);
    let op = Smolyak::new(kernel, &set, store)?;
    let resolution = grid_resolution(1 << jmax);
    let points = resolution
        .checked_pow(d as u32)
        .filter(|&n| n <= super::quadrature::MAX_GRID_POINTS)
        .ok_or_else(|| {
            Error::InvalidParameter(alloc::format!("{resolution}^{d} grid points are too many"))
        })?;
    let mut acc = BlockAccumulator::new(spec, points);
    for j in set.iter() {
        let block = op.block_coefficients(j)?;
        if block.is_empty() {
            acc.add(0.0, &[]);
            continue;
        }
        acc.add(spec.weight(j.levels()), &block.eval_on_grid(resolution)?);
    }
    Ok(NormValue {
        value: acc.finish(),
        in_domain: spec.discrete_in_domain(kernel.order()),
    })
}

/// Discrete `F` norm from samples.
pub fn discrete_norm_f(
    kernel: &Kernel,
    store: &SampleStore,
    r: Vec<f64>,
    p: Exponent,
    theta: Exponent,
    jmax: u32,
) -> Result<NormValue> {
    discrete_norm_from_samples(kernel, store, &NormSpec::new(Space::F, r, p, theta)?, jmax)
}

/// Discrete `B` norm from samples.
pub fn discrete_norm_b(
    kernel: &Kernel,
    store: &SampleStore,
    r: Vec<f64>,
    p: Exponent,
    theta: Exponent,
    jmax: u32,
) -> Result<NormValue> {
    discrete_norm_from_samples(kernel, store, &NormSpec::new(Space::B, r, p, theta)?, jmax)
}

/// Full grid of level `(jmax, …, jmax)` sampled from `f`.
pub fn full_grid_samples(f: &TestFunction, jmax: u32) -> Result<SampleStore> {
    let set = IndexSet::full_box(&vec![jmax; f.dim()]);
    Ok(f.sample(SparseGrid::new(&set)?))
}

/// Discrete norm of `f`, by dimension for separable `f`.
pub fn discrete_norm(
    kernel: &Kernel,
    f: &TestFunction,
    spec: &NormSpec,
    jmax: u32,
) -> Result<NormValue> {
    if f.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            got: f.dim(),
        });
    }
    let in_domain = spec.discrete_in_domain(kernel.order());
    match separable(f) {
        Some((amp, factors)) => {
            let mut value = amp.norm();
            for (g, &r) in factors.iter().zip(&spec.r) {
                value *= univariate_discrete(kernel, g, spec, r, jmax)?;
            }
            Ok(NormValue { value, in_domain })
        }
        None => discrete_norm_from_samples(kernel, &full_grid_samples(f, jmax)?, spec, jmax),
    }
}

fn univariate_reference(g: &Univariate<'_>, spec: &NormSpec, r: f64) -> Result<f64> {
    let two = Exponent::new(2.0).expect("positive");
    let theta = spec.effective_theta();
    if spec.p == two && (spec.space == Space::W || theta == two) {
        let energy = if spec.space == Space::W {
            g.sobolev_energy(r)
        } else {
            g.dyadic_energy(r)
        };
        return Ok(libm::sqrt(energy));
    }
    let top = g.max_band();
    let resolution = grid_resolution(1 << top);
    if spec.space == Space::W {
        let terms: Vec<(i64, Complex64)> = (0..=top)
            .flat_map(|j| g.band(j))
            .map(|(k, c)| (k, c * libm::pow(1.0 + (k * k) as f64, r / 2.0)))
            .collect();
        let v = univariate_poly(&terms).eval_on_grid(resolution)?;
        return Ok(lq_mean(v.iter().map(|z| z.norm()), spec.p));
    }
    let one = NormSpec {
        r: vec![r],
        ..spec.clone()
    };
    let mut acc = BlockAccumulator::new(&one, resolution);
    for j in 0..=top {
        let band = g.band(j);
        if band.is_empty() {
            continue;
        }
        acc.add(
            one.weight(&[j]),
            &univariate_poly(&band).eval_on_grid(resolution)?,
        );
    }
    Ok(acc.finish())
}

fn polynomial_reference(poly: &TrigPoly, spec: &NormSpec) -> Result<f64> {
    let two = Exponent::new(2.0).expect("positive");
    let theta = spec.effective_theta();
    if spec.p == two && (spec.space == Space::W || theta == two) {
        let s: KahanSum = poly
            .iter()
            .map(|(k, c)| {
                let w: f64 = match spec.space {
                    Space::W => k
                        .iter()
                        .zip(&spec.r)
                        .map(|(&ki, &r)| libm::pow(1.0 + (ki * ki) as f64, r))
                        .product(),
                    _ => libm::pow(
                        spec.weight(&k.iter().map(|&ki| dyadic_index(ki)).collect::<Vec<_>>()),
                        2.0,
                    ),
                };
                w * c.norm_sqr()
            })
            .collect();
        return Ok(libm::sqrt(s.value()));
    }
    let kmax = poly.max_frequency().into_iter().max().unwrap_or(0) as usize;
    let resolution = grid_resolution(kmax);
    if spec.space == Space::W {
        let lifted = TrigPoly::from_terms(
            poly.dim(),
            poly.iter().map(|(k, c)| {
                let w: f64 = k
                    .iter()
                    .zip(&spec.r)
                    .map(|(&ki, &r)| libm::pow(1.0 + (ki * ki) as f64, r / 2.0))
                    .product();
                (k.to_vec(), c * w)
            }),
        )?;
        let v = lifted.eval_on_grid(resolution)?;
        return Ok(lq_mean(v.iter().map(|z| z.norm()), spec.p));
    }
    let mut pieces: alloc::collections::BTreeMap<Vec<u32>, TrigPoly> = Default::default();
    for (k, c) in poly.iter() {
        let j: Vec<u32> = k.iter().map(|&ki| dyadic_index(ki)).collect();
        pieces
            .entry(j)
            .or_insert_with(|| TrigPoly::new(poly.dim()))
            .add_term(k, c)?;
    }
    let mut acc = BlockAccumulator::new(spec, resolution.pow(poly.dim() as u32));
    for (j, piece) in &pieces {
        acc.add(spec.weight(j), &piece.eval_on_grid(resolution)?);
    }
    Ok(acc.finish())
}

/// Reference norm from exact coefficients with sharp dyadic cutoffs.
pub fn reference_norm(f: &TestFunction, spec: &NormSpec) -> Result<f64> {
    if f.dim() != spec.dim() {
        return Err(Error::DimensionMismatch {
            expected: spec.dim(),
            got: f.dim(),
        });
    }
    match separable(f) {
        Some((amp, factors)) => {
            let mut value = amp.norm();
            for (g, &r) in factors.iter().zip(&spec.r) {
                value *= univariate_reference(g, spec, r)?;
            }
            Ok(value)
        }
        None => polynomial_reference(
            f.polynomial()
                .expect("non-separable functions are polynomials"),
            spec,
        ),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    /// Discrete over reference norm, one per function.
    pub ratios: Vec<f64>,
    pub min: f64,
    pub max: f64,
    pub in_domain: bool,
}

impl EquivalenceReport {
    /// `max / min`.
    pub fn spread(&self) -> f64 {
        self.max / self.min
    }
}

/// Ratios of discrete to reference norms over a function set.
pub fn equivalence_ratio(
    kernel: &Kernel,
    functions: &[TestFunction],
    spec: &NormSpec,
    jmax: u32,
) -> Result<EquivalenceReport> {
    if functions.is_empty() {
        return Err(Error::InvalidParameter("empty function set".into()));
    }
    let mut ratios = Vec::with_capacity(functions.len());
    for f in functions {
        let reference = reference_norm(f, spec)?;
        if !(reference > 0.0 && reference.is_finite()) {
            return Err(Error::InvalidParameter(alloc::format!(
                "reference norm {reference} cannot normalize a ratio"
            )));
        }
        ratios.push(discrete_norm(kernel, f, spec, jmax)?.value / reference);
    }
    let min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max = ratios.iter().copied().fold(0.0, f64::max);
    Ok(EquivalenceReport {
        ratios,
        min,
        max,
        in_domain: spec.discrete_in_domain(kernel.order()),
    })
}

/// `‖q^L_j f‖_2` for every `j` of the full box, from coefficients.
pub fn block_energies(
    kernel: &Kernel,
    store: &SampleStore,
    jmax: u32,
) -> Result<Vec<(MultiIndex, f64)>> {
    let set = IndexSet::full_box(&vec![jmax; store.grid().dim()]);
    let op = Smolyak::new(kernel, &set, store)?;
    set.iter()
        .map(|j| {
            let b = op.block_coefficients(j)?;
            let e: KahanSum = b.iter().map(|(_, c)| c.norm_sqr()).collect();
            Ok((j.clone(), libm::sqrt(e.value())))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    fn character(k: &[i64]) -> TestFunction {
        TestFunction::trigpoly(
            TrigPoly::from_terms(k.len(), [(k.to_vec(), Complex64::new(1.0, 0.0))]).unwrap(),
        )
    }

    #[test]
    fn reference_of_simple_functions() {
        let w = NormSpec::new(Space::W, vec![1.0, 1.0], e(2.0), e(2.0)).unwrap();
        assert!((reference_norm(&character(&[1, 0]), &w).unwrap() - libm::sqrt(2.0)).abs() < 1e-14);
        let one = TestFunction::constant(2, Complex64::new(1.0, 0.0));
        for space in [Space::W, Space::F, Space::B] {
            for (p, t) in [(2.0, 2.0), (1.5, 3.0), (4.0, f64::INFINITY)] {
                let spec = NormSpec::new(
                    space,
                    vec![1.3, 2.0],
                    e(p),
                    Exponent::new(t).unwrap_or(Exponent::INFINITY),
                )
                .unwrap();
                assert!(
                    (reference_norm(&one, &spec).unwrap() - 1.0).abs() < 1e-13,
                    "{space:?} {p} {t}"
                );
            }
        }
    }

    #[test]
    fn korobov_sobolev_norm_matches_partial_sums() {
        // s = 3, r = 2: Σ_k (1 + k²)² max(1,|k|)^{-6}
        let f = TestFunction::korobov(vec![3.0]).unwrap();
        let spec = NormSpec::new(Space::W, vec![2.0], e(2.0), e(2.0)).unwrap();
        let got = reference_norm(&f, &spec).unwrap().powi(2);
        let big_k = 1_000_000u64;
        let mut direct = 1.0;
        for k in (1..=big_k).rev() {
            let kf = k as f64;
            direct += 2.0 * (1.0 + kf * kf).powi(2) / kf.powi(6);
        }
        // tail: 2 Σ_{k>K} (k^{-2} + 2k^{-4} + k^{-6}) ≤ 2/K + 4/(3K³) + 2/(5K⁵)
        let tail = 2.0 / big_k as f64 + 1e-15;
        assert!(
            got - direct > 0.0 && got - direct < tail + 1e-9,
            "{got} {direct}"
        );
    }

    #[test]
    fn separable_and_generic_discrete_norms_agree() {
        let kernel = Kernel::new(2).unwrap();
        let f = TestFunction::hat_tensor(2).unwrap();
        for (space, p, t) in [
            (Space::F, 2.0, 2.0),
            (Space::B, 1.5, 1.0),
            (Space::F, 3.0, f64::INFINITY),
        ] {
            let theta = if t.is_finite() {
                e(t)
            } else {
                Exponent::INFINITY
            };
            let spec = NormSpec::new(space, vec![1.0, 1.2], e(p), theta).unwrap();
            let fast = discrete_norm(&kernel, &f, &spec, 4).unwrap().value;
            let store = full_grid_samples(&f, 4).unwrap();
            let slow = discrete_norm_from_samples(&kernel, &store, &spec, 4)
                .unwrap()
                .value;
            assert!(
                (fast - slow).abs() < 1e-9 * slow,
                "{space:?}: {fast} vs {slow}"
            );
        }
    }

    #[test]
    fn separable_and_generic_references_agree() {
        let p = TrigPoly::from_terms(2, [(vec![3, -1], Complex64::new(0.5, 0.2))]).unwrap();
        let f = TestFunction::trigpoly(p.clone());
        let spec = NormSpec::new(Space::F, vec![1.5, 1.0], e(1.5), e(3.0)).unwrap();
        let a = reference_norm(&f, &spec).unwrap();
        let b = polynomial_reference(&p, &spec).unwrap();
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn constant_has_only_the_zero_block() {
        let kernel = Kernel::new(2).unwrap();
        let one = TestFunction::constant(2, Complex64::new(1.0, 0.0));
        let store = full_grid_samples(&one, 3).unwrap();
        for (j, en) in block_energies(&kernel, &store, 3).unwrap() {
            let expected = if j.norm1() == 0 { 1.0 } else { 0.0 };
            assert!((en - expected).abs() < 1e-10);
        }
        let spec = NormSpec::new(Space::B, vec![2.0, 2.0], e(2.0), e(1.0)).unwrap();
        for jmax in 0..4 {
            let v = discrete_norm(&kernel, &one, &spec, jmax).unwrap();
            assert!((v.value - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn domain_flags() {
        let f = NormSpec::new(Space::F, vec![2.0], e(2.0), Exponent::INFINITY).unwrap();
        assert!(!f.discrete_in_domain(1));
        assert!(f.discrete_in_domain(2));
        let b = NormSpec::new(Space::B, vec![0.4], e(2.0), e(2.0)).unwrap();
        assert!(!b.discrete_in_domain(3));
    }
}
