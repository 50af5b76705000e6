#![allow(dead_code)]

use hypercross_core::smolyak::IndexSet;
use hypercross_core::{Complex64, TrigPoly};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_point(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    (0..dim)
        .map(|_| rng.random_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}

/// Density of `Σ_l U[-2^{-l}, 2^{-l}]`, `l = 1..L`, by the truncated-power
/// formula. Equals the kernel window `FK^L/√(2π)`.
pub fn window_density(order: u32, xi: f64) -> f64 {
    let a: Vec<f64> = (1..=order).map(|l| 0.5f64.powi(l as i32)).collect();
    let norm: f64 = a.iter().map(|v| 2.0 * v).product();
    let fact: f64 = (1..order).map(f64::from).product();
    let mut acc = 0.0;
    for mask in 0..1u32 << order {
        let mut shift = 0.0;
        let mut sign = 1.0;
        for (l, al) in a.iter().enumerate() {
            if mask >> l & 1 == 1 {
                shift -= al;
                sign = -sign;
            } else {
                shift += al;
            }
        }
        let t = xi + shift;
        if t > 0.0 {
            acc += sign * t.powi(order as i32 - 1);
        }
    }
    acc / (norm * fact)
}

/// Window of the interpolant of order `L` at frequency `l` on level `j`.
pub fn window_weight(order: u32, level: u32, l: i64) -> f64 {
    if order == 1 {
        let n = if level == 0 { 0 } else { 1i64 << (level - 1) };
        let inside = if level == 0 {
            l == 0
        } else {
            (-n..n).contains(&l)
        };
        return if inside { 1.0 } else { 0.0 };
    }
    window_density(order, l as f64 / (1u64 << level) as f64)
}

/// Frequencies `P^L_j = [-2^{j-L}, 2^{j-L}]`; with `reproducible` and `L = 1`
/// the top frequency `2^{j-1}` (an alias of `-2^{j-1}`) is left out.
pub fn block_range(order: u32, level: u32, reproducible: bool) -> (i64, i64) {
    if level < order {
        return (0, 0);
    }
    let r = 1i64 << (level - order);
    if reproducible && order == 1 {
        (-r, r - 1)
    } else {
        (-r, r)
    }
}

/// Random polynomial with `terms` frequencies in `∪_{j∈Δ} P^L_j`.
pub fn random_cross_poly(
    rng: &mut ChaCha8Rng,
    set: &IndexSet,
    order: u32,
    terms: usize,
    reproducible: bool,
) -> TrigPoly {
    let mut p = TrigPoly::new(set.dim());
    for _ in 0..terms {
        let j = &set.members()[rng.random_range(0..set.len())];
        let k: Vec<i64> = j
            .levels()
            .iter()
            .map(|&l| {
                let (lo, hi) = block_range(order, l, reproducible);
                rng.random_range(lo..=hi)
            })
            .collect();
        p.add_term(&k, random_complex(rng)).unwrap();
    }
    p
}

/// `Σ_{|k| ≤ cutoff} f(x + 2πk)`.
pub fn lattice_sum<F: Fn(f64) -> f64>(f: F, x: f64, cutoff: i64) -> f64 {
    let tau = std::f64::consts::TAU;
    let mut s = 0.0;
    for k in -cutoff..=cutoff {
        s += f(x + tau * k as f64);
    }
    s
}

/// Midpoint-rule estimate of `Σ_{|k| > cutoff} (x + 2πk)^{-L}`.
pub fn lattice_tail(order: u32, x: f64, cutoff: i64) -> f64 {
    let tau = std::f64::consts::TAU;
    let l = order as i32;
    let edge = tau * (cutoff as f64 + 0.5);
    let right = (x + edge).powi(1 - l);
    let left = (edge - x).powi(1 - l) * if order.is_multiple_of(2) { 1.0 } else { -1.0 };
    (right + left) / (tau * (order - 1) as f64)
}
