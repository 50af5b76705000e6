//! Recovery parameters and the choice of the anisotropy vector `η`.

use alloc::format;
use alloc::vec::Vec;

use super::index::{build_index_set, IndexSet};
use crate::error::{Error, Result};
use crate::exponent::Exponent;
use crate::kernels::check_order;

/// Components of `r` closer than this to `r₁` count as minimal.
const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct RecoveryParams {
    r: Vec<f64>,
    p: Exponent,
    q: Exponent,
    theta: Exponent,
    order: u32,
    eta: Vec<f64>,
    m: u32,
}

impl RecoveryParams {
    /// Validates `r₁ = … = r_μ < r_{μ+1} ≤ … ≤ r_d`, `r > 1/p`, `η > 0` with
    /// `η₁` minimal and a supported kernel order.
    pub fn new(
        r: Vec<f64>,
        p: Exponent,
        q: Exponent,
        theta: Exponent,
        order: u32,
        eta: Vec<f64>,
        m: u32,
    ) -> Result<Self> {
        check_order(order)?;
        check_smoothness(&r, p)?;
        if eta.len() != r.len() {
            return Err(Error::DimensionMismatch {
                expected: r.len(),
                got: eta.len(),
            });
        }
        if eta.iter().any(|e| !(e.is_finite() && *e > 0.0)) || eta.iter().any(|e| *e < eta[0]) {
            return Err(Error::InvalidParameter(format!(
                "eta must be positive with eta_1 minimal, got {eta:?}"
            )));
        }
        Ok(Self {
            r,
            p,
            q,
            theta,
            order,
            eta,
            m,
        })
    }

    pub fn dim(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn p(&self) -> Exponent {
        self.p
    }

    pub fn q(&self) -> Exponent {
        self.q
    }

    pub fn theta(&self) -> Exponent {
        self.theta
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn with_m(&self, m: u32) -> Self {
        Self { m, ..self.clone() }
    }

    /// Number of components equal to `r₁`.
    pub fn mu(&self) -> usize {
        multiplicity(&self.r)
    }

    /// `σ_p = max{0, 1/p - 1}`.
    pub fn sigma_p(&self) -> f64 {
        (self.p.recip() - 1.0).max(0.0)
    }

    /// `σ_{p,θ} = max{0, 1/p - 1, 1/θ - 1}`.
    pub fn sigma_p_theta(&self) -> f64 {
        self.sigma_p().max(self.theta.recip() - 1.0)
    }

    /// `{j : η·j ≤ m η₁}`.
    pub fn index_set(&self) -> Result<IndexSet> {
        build_index_set(&self.eta, self.m as f64)
    }
}

fn multiplicity(r: &[f64]) -> usize {
    r.iter()
        .take_while(|v| (**v - r[0]).abs() <= TIE_TOLERANCE)
        .count()
}

fn check_smoothness(r: &[f64], p: Exponent) -> Result<()> {
    if r.is_empty() {
        return Err(Error::InvalidParameter("smoothness vector is empty".into()));
    }
    if r.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter(format!(
            "smoothness must be ascending, got {r:?}"
        )));
    }
    if r.iter().any(|v| !v.is_finite() || *v <= p.recip()) {
        return Err(Error::InvalidParameter(format!(
            "smoothness must exceed 1/p = {}, got {r:?}",
            p.recip()
        )));
    }
    Ok(())
}

/// `ν_s = r_s` for the `μ` minimal components and `(r₁ + r_s)/2` otherwise.
pub fn midpoint_nu(r: &[f64]) -> Vec<f64> {
    let mu = multiplicity(r);
    r.iter()
        .enumerate()
        .map(|(s, &rs)| if s < mu { rs } else { 0.5 * (r[0] + rs) })
        .collect()
}

/// `η = r - 1/p + 1/q` for recovery in `L_q`, `p ≤ q < ∞`.
pub fn eta_for_lq(r: &[f64], p: Exponent, q: Exponent) -> Result<Vec<f64>> {
    check_smoothness(r, p)?;
    if q.is_infinite() || q < p {
        return Err(Error::InvalidParameter(format!(
            "need p <= q < inf, got p={p}, q={q}"
        )));
    }
    Ok(r.iter().map(|v| v - p.recip() + q.recip()).collect())
}

/// `η = ν - 1/p` for recovery in `L_∞`.
pub fn eta_for_linf(r: &[f64], p: Exponent) -> Result<Vec<f64>> {
    check_smoothness(r, p)?;
    Ok(midpoint_nu(r).into_iter().map(|v| v - p.recip()).collect())
}

/// `η = ν - 1/p + 1/q` for the Besov model classes.
pub fn eta_for_besov(r: &[f64], p: Exponent, q: Exponent) -> Result<Vec<f64>> {
    check_smoothness(r, p)?;
    if q < p {
        return Err(Error::InvalidParameter(format!(
            "need p <= q, got p={p}, q={q}"
        )));
    }
    Ok(midpoint_nu(r)
        .into_iter()
        .map(|v| v - p.recip() + q.recip())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn e(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_for_lq(&[2.0, 2.0], e(2.0), e(2.0)).unwrap(), [2.0, 2.0]);
        assert_eq!(
            eta_for_lq(&[1.5, 3.0], e(2.0), e(4.0)).unwrap(),
            [1.25, 2.75]
        );
        assert_eq!(midpoint_nu(&[2.0, 3.0]), [2.0, 2.5]);
        assert_eq!(eta_for_linf(&[2.0, 3.0], e(2.0)).unwrap(), [1.5, 2.0]);
        assert!(eta_for_lq(&[1.0, 3.0], e(1.0), e(2.0)).is_err());
        assert!(eta_for_lq(&[2.0, 3.0], e(4.0), e(2.0)).is_err());
    }

    #[test]
    fn params_validation_and_accessors() {
        let p = RecoveryParams::new(
            vec![2.5, 2.5, 3.0],
            e(0.5),
            e(2.0),
            e(0.25),
            2,
            vec![1.0, 1.0, 2.0],
            4,
        )
        .unwrap();
        assert_eq!(p.mu(), 2);
        assert_eq!(p.sigma_p(), 1.0);
        assert_eq!(p.sigma_p_theta(), 3.0);
        assert!(
            RecoveryParams::new(vec![3.0, 2.0], e(2.0), e(2.0), e(2.0), 2, vec![1.0, 1.0], 4)
                .is_err()
        );
        assert!(
            RecoveryParams::new(vec![2.0, 2.0], e(2.0), e(2.0), e(2.0), 2, vec![2.0, 1.0], 4)
                .is_err()
        );
        assert!(
            RecoveryParams::new(vec![2.0, 2.0], e(2.0), e(2.0), e(2.0), 0, vec![1.0, 1.0], 4)
                .is_err()
        );
    }
}
