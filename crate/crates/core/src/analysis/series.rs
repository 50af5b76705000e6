//! Power sums `Σ k^{-σ}` with Euler-Maclaurin tails, and Bernoulli numbers.

use alloc::vec;
use alloc::vec::Vec;
use num_rational::Ratio;

use crate::kernels::cot::rational_to_f64;

/// Terms summed directly before switching to the asymptotic tail.
const DIRECT_TERMS: u64 = 1024;

/// Bernoulli numbers `B_0 … B_n` (with `B_1 = -1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<Ratio<i128>> {
    let mut b = vec![Ratio::from_integer(0i128); n + 1];
    b[0] = Ratio::from_integer(1);
    for m in 1..=n {
        // Σ_{k=0}^{m} C(m+1, k) B_k = 0
        let mut acc = Ratio::from_integer(0i128);
        let mut binom: i128 = 1;
        for (k, bk) in b.iter().enumerate().take(m) {
            acc += *bk * binom;
            binom = binom * (m as i128 + 1 - k as i128) / (k as i128 + 1);
        }
        b[m] = -acc / binom;
    }
    b
}

/// Coefficients (ascending) of the Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_polynomial(n: usize) -> Vec<f64> {
    let b = bernoulli_numbers(n);
    let mut out = vec![0.0; n + 1];
    let mut binom: i128 = 1;
    for k in 0..=n {
        // C(n, k) B_k x^{n-k}
        out[n - k] = rational_to_f64(&(b[k] * binom));
        binom = binom * (n as i128 - k as i128) / (k as i128 + 1);
    }
    out
}

/// `Σ_{k > K} k^{-σ}` for `σ > 1` and `K ≥ DIRECT_TERMS`.
fn asymptotic_tail(sigma: f64, big_k: f64) -> f64 {
    // ∫_K^∞ t^{-σ} dt - K^{-σ}/2 + Σ_i B_{2i}/(2i)! (σ)_{2i-1} K^{-σ-2i+1}
    const B_OVER_FACT: [f64; 4] = [1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0];
    let mut s = libm::pow(big_k, 1.0 - sigma) / (sigma - 1.0) - 0.5 * libm::pow(big_k, -sigma);
    let mut rising = sigma; // (σ)_1
    let mut power = libm::pow(big_k, -sigma - 1.0);
    for (i, c) in B_OVER_FACT.iter().enumerate() {
        s += c * rising * power;
        let n = (2 * i + 1) as f64;
        rising *= (sigma + n) * (sigma + n + 1.0);
        power /= big_k * big_k;
    }
    s
}

/// `Σ_{k > K} k^{-σ}`, `σ > 1`.
pub fn zeta_tail(sigma: f64, big_k: u64) -> f64 {
    assert!(sigma > 1.0, "power sum diverges for sigma = {sigma}");
    if big_k >= DIRECT_TERMS {
        return asymptotic_tail(sigma, big_k as f64);
    }
    let direct: f64 = (big_k + 1..=DIRECT_TERMS)
        .rev()
        .map(|k| libm::pow(k as f64, -sigma))
        .sum();
    direct + asymptotic_tail(sigma, DIRECT_TERMS as f64)
}

/// `ζ(σ) = Σ_{k ≥ 1} k^{-σ}`.
pub fn zeta(sigma: f64) -> f64 {
    zeta_tail(sigma, 0)
}

/// `Σ_{a ≤ k < b} k^{-σ}` over positive integers, optionally odd `k` only.
pub fn power_sum(sigma: f64, a: u64, b: u64, odd_only: bool) -> f64 {
    let a = a.max(1);
    if b <= a {
        return 0.0;
    }
    let all = if b - a <= 4 * DIRECT_TERMS {
        (a..b).rev().map(|k| libm::pow(k as f64, -sigma)).sum()
    } else {
        zeta_tail(sigma, a - 1) - zeta_tail(sigma, b - 1)
    };
    if !odd_only {
        return all;
    }
    // even k = 2m with a ≤ 2m < b
    all - libm::pow(2.0, -sigma) * power_sum(sigma, a.div_ceil(2), b.div_ceil(2), false)
}
