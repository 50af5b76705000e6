//! Convergence sweeps over the refinement level `m` and log-log rate fits.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::atlas::{atlas_lookup, AtlasEntry, AtlasQuery, WidthKind};
use super::functions::{parseval_l2_error, TestFunction};
use super::quadrature::{lq_error, QuadratureMode, QuadratureSpec};
use super::Space;
use crate::error::{Error, Result};
use crate::kernels::Kernel;
use crate::smolyak::{RecoveryParams, Smolyak, SparseGrid};

/// Minimal number of consecutive levels entering a fit.
pub const MIN_SWEEP: usize = 4;
/// Window length of the rolling exponent.
pub const ROLLING_WINDOW: usize = 4;
/// Errors below this multiple of `max(1, ‖f‖_2)` count as exact recovery.
pub const EXACT_RELATIVE: f64 = 1e-12;

/// Least-squares fit `log₂ e ≈ intercept − α x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub alpha: f64,
    pub stderr: f64,
    pub intercept: f64,
}

/// Fits `log₂ e_m ≈ c − α m`. Needs at least [`MIN_SWEEP`] positive errors.
pub fn fit_rate(ms: &[f64], errors: &[f64]) -> Result<RateFit> {
    if ms.len() != errors.len() {
        return Err(Error::DimensionMismatch {
            expected: ms.len(),
            got: errors.len(),
        });
    }
    let usable = errors.iter().filter(|e| e.is_finite() && **e > 0.0).count();
    if usable < MIN_SWEEP || usable != errors.len() {
        return Err(Error::InsufficientSweep {
            needed: MIN_SWEEP,
            got: usable.min(errors.len()),
        });
    }
    let ys: Vec<f64> = errors.iter().map(|e| libm::log2(*e)).collect();
    let n = ms.len() as f64;
    let mx = ms.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = ms.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidParameter(
            "rate fit needs distinct abscissae".into(),
        ));
    }
    let sxy: f64 = ms.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = ms
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - intercept - slope * x;
            r * r
        })
        .sum();
    let stderr = libm::sqrt(rss / (n - 2.0) / sxx);
    Ok(RateFit {
        alpha: -slope,
        stderr,
        intercept,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub m: u32,
    /// Number of sparse-grid nodes.
    pub nodes: usize,
    pub error: f64,
}

/// Recovers `f` at level `params.m()` and measures `‖f − T_m f‖_q`.
///
/// For `q = 2` with tensor-grid quadrature the error is taken from the
/// coefficients, which that quadrature reproduces up to aliasing of `f`.
/// Otherwise the quadrature resolution is raised to the anti-alias minimum.
pub fn convergence_row(
    kernel: &Kernel,
    f: &TestFunction,
    params: &RecoveryParams,
    quad: &QuadratureSpec,
) -> Result<ConvergenceRow> {
    if f.dim() != params.dim() {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            got: f.dim(),
        });
    }
    let set = params.index_set()?;
    let grid = SparseGrid::new(&set)?;
    let nodes = grid.len();
    let store = f.sample(grid);
    let approx = Smolyak::new(kernel, &set, &store)?.coefficients()?;
    let q = params.q();
    let error = if q.value() == 2.0 && quad.mode == QuadratureMode::TensorGrid {
        parseval_l2_error(f, &approx)
    } else {
        let quad = quad.with_min_resolution(QuadratureSpec::required_resolution(&approx));
        lq_error(f, &approx, q, &quad)?
    };
    Ok(ConvergenceRow {
        m: params.m(),
        nodes,
        error,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct RateReport {
    pub rows: Vec<ConvergenceRow>,
    /// Exponent fitted over the window of [`ROLLING_WINDOW`] rows ending at
    /// each row.
    pub rolling: Vec<Option<f64>>,
    /// Fit against `m`; `None` when recovery is exact.
    pub fit: Option<RateFit>,
    /// Fit of `log₂ e` against `log₂(n / log₂^{μ-1} n)`.
    pub fit_nodes: Option<RateFit>,
    pub exact: bool,
    /// `r₁ − 1/p + 1/q` (`r₁ − 1/p` for `q = ∞`).
    pub alpha_theory: f64,
    /// Log exponent of the linear sampling widths, when known.
    pub beta_theory: Option<f64>,
    pub atlas: AtlasEntry,
}

impl RateReport {
    /// Assembles the report from measured rows in ascending `m`.
    pub fn from_rows(
        rows: Vec<ConvergenceRow>,
        f: &TestFunction,
        space: Space,
        params: &RecoveryParams,
    ) -> Result<Self> {
        let (p, q) = (params.p(), params.q());
        let r1 = params.r()[0];
        let alpha_theory = r1 - p.recip() + q.recip();
        let atlas = atlas_lookup(&AtlasQuery {
            space,
            width: WidthKind::RhoLin,
            p,
            q,
            theta: params.theta(),
            r: r1,
            mu: params.mu(),
        });
        let beta_theory = atlas.rate.or(atlas.bounds.map(|b| b.upper)).map(|r| r.beta);
        let tol = EXACT_RELATIVE * libm::sqrt(f.l2_norm_sq()).max(1.0);
        let exact = rows.last().is_some_and(|r| r.error <= tol);
        // fits through round-off carry no information
        let rolling = if exact {
            vec![None; rows.len()]
        } else {
            rolling_alpha(&rows)
        };
        let (fit, fit_nodes) = if exact {
            (None, None)
        } else {
            let start = rows
                .iter()
                .rposition(|r| r.error <= tol)
                .map_or(0, |i| i + 1);
            let tail = &rows[start..];
            if tail.len() < MIN_SWEEP || tail.windows(2).any(|w| w[1].m != w[0].m + 1) {
                return Err(Error::InsufficientSweep {
                    needed: MIN_SWEEP,
                    got: tail.len(),
                });
            }
            let ms: Vec<f64> = tail.iter().map(|r| r.m as f64).collect();
            let es: Vec<f64> = tail.iter().map(|r| r.error).collect();
            let mu = params.mu() as f64;
            let ns: Vec<f64> = tail
                .iter()
                .map(|r| {
                    let n = r.nodes as f64;
                    libm::log2(n) - (mu - 1.0) * libm::log2(libm::log2(n).max(1.0))
                })
                .collect();
            (Some(fit_rate(&ms, &es)?), fit_rate(&ns, &es).ok())
        };
        Ok(Self {
            rows,
            rolling,
            fit,
            fit_nodes,
            exact,
            alpha_theory,
            beta_theory,
            atlas,
        })
    }

    /// `|α̂ − α| ≤ tolerance`; exact recovery always passes.
    pub fn within(&self, tolerance: f64) -> bool {
        match self.fit {
            Some(fit) => (fit.alpha - self.alpha_theory).abs() <= tolerance,
            None => self.exact,
        }
    }
}

fn rolling_alpha(rows: &[ConvergenceRow]) -> Vec<Option<f64>> {
    (0..rows.len())
        .map(|i| {
            let start = (i + 1).checked_sub(ROLLING_WINDOW)?;
            let window = &rows[start..=i];
            let ms: Vec<f64> = window.iter().map(|r| r.m as f64).collect();
            let es: Vec<f64> = window.iter().map(|r| r.error).collect();
            fit_rate(&ms, &es).ok().map(|f| f.alpha)
        })
        .collect()
}

/// Checks that `f` declares membership in `S^r_{p,θ}X` for the sweep's parameters.
pub fn check_membership(f: &TestFunction, space: Space, params: &RecoveryParams) -> Result<()> {
    if f.is_member(space, params.r(), params.p(), params.theta()) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "test function {:?} is not declared in {:?} with r={:?}, p={}, theta={}",
            f.kind(),
            space,
            params.r(),
            params.p(),
            params.theta()
        )))
    }
}

/// Runs the sweep `ms` (ascending, consecutive) and fits the rate.
pub fn run_convergence(
    kernel: &Kernel,
    f: &TestFunction,
    space: Space,
    params: &RecoveryParams,
    ms: core::ops::RangeInclusive<u32>,
    quad: &QuadratureSpec,
) -> Result<RateReport> {
    check_membership(f, space, params)?;
    let count = ms.clone().count();
    if count < MIN_SWEEP {
        return Err(Error::InsufficientSweep {
            needed: MIN_SWEEP,
            got: count,
        });
    }
    let rows = ms
        .map(|m| convergence_row(kernel, f, &params.with_m(m), quad))
        .collect::<Result<Vec<_>>>()?;
    RateReport::from_rows(rows, f, space, params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exponent::Exponent;
    use alloc::vec;

    fn e(v: f64) -> Exponent {
        Exponent::new(v).unwrap()
    }

    #[test]
    fn fit_recovers_exact_slope() {
        let ms = [3.0, 4.0, 5.0, 6.0, 7.0];
        let es: Vec<f64> = ms.iter().map(|m| 5.0 * libm::exp2(-1.7 * m)).collect();
        let fit = fit_rate(&ms, &es).unwrap();
        assert!((fit.alpha - 1.7).abs() < 1e-12);
        assert!(fit.stderr < 1e-12);
        assert!((fit.intercept - libm::log2(5.0)).abs() < 1e-12);
    }

    #[test]
    fn fit_needs_four_points() {
        assert!(matches!(
            fit_rate(&[1.0, 2.0, 3.0], &[0.5, 0.25, 0.125]),
            Err(Error::InsufficientSweep { .. })
        ));
        assert!(fit_rate(&[1.0, 2.0, 3.0, 4.0], &[0.5, 0.25, 0.0, 0.1]).is_err());
    }

    #[test]
    fn rolling_window_starts_at_fourth_row() {
        let rows: Vec<ConvergenceRow> = (1..=6)
            .map(|m| ConvergenceRow {
                m,
                nodes: 1 << m,
                error: libm::exp2(-2.0 * m as f64),
            })
            .collect();
        let r = rolling_alpha(&rows);
        assert_eq!(r[..3], [None, None, None]);
        assert!(r[3..].iter().all(|a| (a.unwrap() - 2.0).abs() < 1e-12));
    }

    #[test]
    fn non_member_is_rejected() {
        let f = TestFunction::hat_tensor(2).unwrap();
        let params =
            RecoveryParams::new(vec![3.0, 3.0], e(2.0), e(2.0), e(2.0), 2, vec![1.0, 1.0], 4)
                .unwrap();
        let kernel = Kernel::new(2).unwrap();
        let quad = QuadratureSpec::tensor_grid(64);
        assert!(run_convergence(&kernel, &f, Space::W, &params, 2..=6, &quad).is_err());
    }

    #[test]
    fn korobov_univariate_rate() {
        // f̂(k) = |k|^{-3}: L_2 error² ~ Σ_{|k|>2^m} k^{-6} ~ 2^{-5m}, α = 2.5
        let f = TestFunction::korobov(vec![3.0]).unwrap();
        let r = 2.5 - crate::analysis::functions::MEMBERSHIP_MARGIN;
        let params = RecoveryParams::new(vec![r], e(2.0), e(2.0), e(2.0), 3, vec![1.0], 4).unwrap();
        let kernel = Kernel::new(3).unwrap();
        let quad = QuadratureSpec::tensor_grid(64);
        let report = run_convergence(&kernel, &f, Space::W, &params, 4..=9, &quad).unwrap();
        let fit = report.fit.unwrap();
        assert!((fit.alpha - 2.5).abs() < 0.2, "alpha {}", fit.alpha);
        assert!(report.within(0.2));
    }
}
