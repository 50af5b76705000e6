//! Known asymptotic orders of sampling and approximation widths for the
//! embeddings `S^r_{p,θ}X → L_q`, encoded as data.
//!
//! Rates take the form `((log n)^{μ-1}/n)^α (log n)^{(μ-1)β}` with `r` the
//! smallest smoothness component and `μ` its multiplicity. A region is a
//! predicate on `(p, q, θ, r)`; regions of one `(space, width)` pair never
//! overlap, and tuples outside every region are reported as open.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::Space;
use crate::error::Error;
use crate::exponent::Exponent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WidthKind {
    /// Linear sampling widths `ϱ^lin_n`.
    RhoLin,
    /// Sampling widths with arbitrary reconstruction `ϱ_n`.
    Rho,
    /// Linear widths `λ_n`.
    Lambda,
    /// Gelfand widths `c_n`.
    Gelfand,
    /// Kolmogorov widths `d_n`.
    Kolmogorov,
}

impl WidthKind {
    pub const ALL: [WidthKind; 5] = [
        WidthKind::RhoLin,
        WidthKind::Rho,
        WidthKind::Lambda,
        WidthKind::Gelfand,
        WidthKind::Kolmogorov,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            WidthKind::RhoLin => "rho_lin",
            WidthKind::Rho => "rho",
            WidthKind::Lambda => "lambda",
            WidthKind::Gelfand => "gelfand",
            WidthKind::Kolmogorov => "kolmogorov",
        }
    }
}

impl fmt::Display for WidthKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for WidthKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        WidthKind::ALL
            .into_iter()
            .find(|w| w.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(alloc::format!("unknown width kind {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// Matching upper and lower bounds.
    Sharp,
    /// Only the upper bound is known.
    UpperOnly,
    /// Order unknown.
    Open,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Sharp => "sharp",
            Status::UpperOnly => "upper_only",
            Status::Open => "open",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exponents of `((log n)^{μ-1}/n)^α (log n)^{(μ-1)β}`. A bound `n^{-a}` without
/// logarithm is `α = a`, `β = -a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rate {
    pub alpha: f64,
    pub beta: f64,
}

/// One-sided information in open regions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: Rate,
    pub upper: Rate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtlasQuery {
    pub space: Space,
    pub width: WidthKind,
    pub p: Exponent,
    pub q: Exponent,
    /// Ignored for `W`.
    pub theta: Exponent,
    /// Smallest smoothness component.
    pub r: f64,
    /// Multiplicity of `r`.
    pub mu: usize,
}

impl AtlasQuery {
    fn ip(&self) -> f64 {
        self.p.recip()
    }

    fn iq(&self) -> f64 {
        self.q.recip()
    }

    fn it(&self) -> f64 {
        self.theta.recip()
    }

    /// `1 < p < ∞`.
    fn p_banach(&self) -> bool {
        let ip = self.ip();
        ip > 0.0 && ip < 1.0
    }

    /// `p < q < ∞`.
    fn p_below_finite_q(&self) -> bool {
        self.iq() > 0.0 && self.ip() > self.iq()
    }

    fn small(&self) -> bool {
        // 1 < p < q ≤ 2
        self.p_banach() && self.p_below_finite_q() && self.iq() >= 0.5
    }

    fn large(&self) -> bool {
        // 2 ≤ p < q < ∞
        self.ip() <= 0.5 && self.ip() > 0.0 && self.p_below_finite_q()
    }

    fn cross(&self) -> bool {
        // 1 < p < 2 < q < ∞
        self.p_banach() && self.ip() > 0.5 && self.iq() < 0.5 && self.iq() > 0.0
    }

    /// `1 < q < 2 < p < ∞`.
    fn reversed_cross(&self) -> bool {
        let (ip, iq) = (self.ip(), self.iq());
        ip > 0.0 && ip < 0.5 && iq > 0.5 && iq < 1.0
    }

    fn theta_at_least(&self, t: f64) -> bool {
        self.it() <= 1.0 / t
    }

    fn main_alpha(&self) -> f64 {
        self.r - self.ip() + self.iq()
    }

    /// Smoothness threshold of the cross region with `1/p + 1/q` on the
    /// boundary assigned to the first case.
    fn cross_threshold(&self) -> f64 {
        if self.ip() + self.iq() >= 1.0 {
            self.ip()
        } else {
            self.ip().max(1.0 - self.iq())
        }
    }
}

/// A region of the atlas.
pub struct Region {
    pub id: &'static str,
    pub space: Space,
    pub width: WidthKind,
    pub status: Status,
    pub citation: &'static str,
    pub applies: fn(&AtlasQuery) -> bool,
    pub rate: fn(&AtlasQuery) -> Option<Rate>,
    pub bounds: fn(&AtlasQuery) -> Option<Bounds>,
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Region").field("id", &self.id).finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtlasEntry {
    pub region: &'static str,
    pub status: Status,
    pub rate: Option<Rate>,
    pub bounds: Option<Bounds>,
    pub citation: &'static str,
}

impl AtlasEntry {
    pub const UNCLASSIFIED: AtlasEntry = AtlasEntry {
        region: "unclassified",
        status: Status::Open,
        rate: None,
        bounds: None,
        citation: "",
    };
}

pub const CITE_W_LIN: &str =
    "Galeev 1987, 1996 (linear widths, lower bound); sparse-grid interpolation upper bound";
pub const CITE_F_LIN: &str =
    "Galeev 1996, Romanyuk 2001 (linear widths, lower bound); sparse-grid interpolation upper bound";
pub const CITE_B_LIN: &str =
    "Dinh Dung 1991 (upper bound); Galeev 1996, Malykhin-Ryutin 2016 (linear widths, lower bound)";
pub const CITE_B_LIN_THETA: &str =
    "Dinh Dung, Temlyakov, Ullrich 2016 (Hyperbolic Cross Approximation, Besov sampling recovery)";
pub const CITE_CROSS: &str =
    "Novak-Triebel 2005 (univariate sampling lower bound); Galeev 1996 (linear widths)";
pub const CITE_LINF_CROSS: &str =
    "Nguyen 2016 (linear widths in L_inf); Novak-Triebel 2005 (univariate sampling lower bound)";
pub const CITE_UPPER: &str = "sparse-grid interpolation upper bound";
pub const CITE_LAMBDA_W: &str =
    "Galeev 1987, 1996; Romanyuk 2008 (linear widths of mixed Sobolev classes)";
pub const CITE_LAMBDA_LINF: &str = "Nguyen 2016 (linear widths in L_inf)";
pub const CITE_LAMBDA_F: &str =
    "Galeev 1996, Romanyuk 2001 via embeddings (linear widths of Triebel-Lizorkin classes)";
pub const CITE_LAMBDA_B: &str =
    "Galeev 1996, Malykhin-Ryutin 2016 (linear widths of Nikol'skij classes)";
pub const CITE_RHO_W: &str =
    "Gelfand widths by duality with Kolmogorov widths; sparse-grid interpolation upper bound";
pub const CITE_RHO_B: &str =
    "Malykhin-Ryutin 2016 (Gelfand widths, lower bound); sparse-grid interpolation upper bound";
pub const CITE_RHO_CROSS: &str =
    "Novak-Triebel 2005 (zero-sample lower bound); Gelfand widths of mixed classes";
pub const CITE_GELFAND_W: &str =
    "duality with Kolmogorov widths (Dinh Dung, Temlyakov, Ullrich 2016)";
pub const CITE_GELFAND_B: &str = "Malykhin-Ryutin 2016 (lower bound); Galeev 1996 (upper bound)";
pub const CITE_KOLMOGOROV: &str =
    "Dinh Dung, Temlyakov, Ullrich 2016 (survey of Kolmogorov widths)";
pub const CITE_QUESTION: &str = "upper bounds in the literature; order unknown";

fn rate(alpha: f64, beta: f64) -> Option<Rate> {
    Some(Rate { alpha, beta })
}

fn none_rate(_: &AtlasQuery) -> Option<Rate> {
    None
}

fn no_bounds(_: &AtlasQuery) -> Option<Bounds> {
    None
}

fn main_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.main_alpha(), 0.0)
}

fn main_rate_beta_q(q: &AtlasQuery) -> Option<Rate> {
    rate(q.main_alpha(), q.iq())
}

fn linf_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.r - q.ip(), (1.0 - q.ip()).max(0.0))
}

/// Lower bound `n^{-(r - 1/p + 1/q)}`, upper bound from the sparse grid.
fn cross_bounds(q: &AtlasQuery, upper_beta: f64) -> Option<Bounds> {
    let a = q.main_alpha();
    Some(Bounds {
        lower: Rate { alpha: a, beta: -a },
        upper: Rate {
            alpha: a,
            beta: upper_beta,
        },
    })
}

fn cross_bounds_f(q: &AtlasQuery) -> Option<Bounds> {
    cross_bounds(q, 0.0)
}

fn cross_bounds_b(q: &AtlasQuery) -> Option<Bounds> {
    cross_bounds(q, q.iq())
}

fn linf_cross_bounds(q: &AtlasQuery) -> Option<Bounds> {
    let a = q.r - q.ip();
    Some(Bounds {
        lower: Rate { alpha: a, beta: -a },
        upper: Rate {
            alpha: a,
            beta: 1.0 - q.ip(),
        },
    })
}

fn w_lin_sharp_small(q: &AtlasQuery) -> bool {
    q.small() && q.r > q.ip()
}

fn w_lin_sharp_large(q: &AtlasQuery) -> bool {
    q.large() && q.r > q.ip()
}

fn w_lin_cross(q: &AtlasQuery) -> bool {
    q.cross() && q.r > q.cross_threshold()
}

fn w_lin_cross_low(q: &AtlasQuery) -> bool {
    q.cross() && q.r > q.ip() && q.r <= q.cross_threshold()
}

fn w_linf_cross(q: &AtlasQuery) -> bool {
    q.q.is_infinite() && q.p_banach() && q.ip() > 0.5 && q.r > 1.0
}

fn w_linf_upper(q: &AtlasQuery) -> bool {
    q.q.is_infinite() && q.p_banach() && q.r > q.ip() && !w_linf_cross(q)
}

fn question(q: &AtlasQuery) -> bool {
    q.reversed_cross() && q.r > q.ip()
}

fn f_lin_small(q: &AtlasQuery) -> bool {
    w_lin_sharp_small(q) && q.theta_at_least(1.0)
}

fn f_lin_large(q: &AtlasQuery) -> bool {
    w_lin_sharp_large(q) && q.theta_at_least(2.0)
}

fn f_lin_cross(q: &AtlasQuery) -> bool {
    w_lin_cross(q) && q.theta_at_least(1.0)
}

fn f_lin_upper(q: &AtlasQuery) -> bool {
    q.p_below_finite_q() && q.r > q.ip() && !f_lin_small(q) && !f_lin_large(q) && !f_lin_cross(q)
}

fn f_linf_upper(q: &AtlasQuery) -> bool {
    q.q.is_infinite() && q.ip() > 0.0 && q.r > q.ip()
}

fn b_lin_sharp_inf(q: &AtlasQuery) -> bool {
    q.theta.is_infinite() && (q.small() || q.large()) && q.r > q.ip()
}

fn b_lin_cross_inf(q: &AtlasQuery) -> bool {
    // second case of the threshold is strict in 1/p + 1/q < 1
    q.theta.is_infinite() && w_lin_cross(q)
}

fn b_lin_sharp_theta(q: &AtlasQuery) -> bool {
    !q.theta.is_infinite() && q.theta_at_least(1.0) && q.small() && q.r > q.ip()
}

fn b_lin_upper(q: &AtlasQuery) -> bool {
    q.p_below_finite_q()
        && q.r > q.ip()
        && !b_lin_sharp_inf(q)
        && !b_lin_cross_inf(q)
        && !b_lin_sharp_theta(q)
}

fn b_lin_rate_theta(q: &AtlasQuery) -> Option<Rate> {
    rate(q.main_alpha(), (q.iq() - q.it()).max(0.0))
}

fn lambda_w_first(q: &AtlasQuery) -> bool {
    q.p_banach()
        && q.iq() > 0.0
        && q.iq() <= 1.0
        && (q.iq() >= 0.5 || q.ip() <= 0.5)
        && q.r > (q.ip() - q.iq()).max(0.0)
}

fn lambda_w_second(q: &AtlasQuery) -> bool {
    q.p_banach() && q.iq() > 0.0 && q.iq() < 0.5 && q.ip() + q.iq() >= 1.0 && q.r > q.ip()
}

fn lambda_w_third(q: &AtlasQuery) -> bool {
    q.p_banach()
        && q.iq() > 0.0
        && q.ip() > 0.5
        && q.ip() + q.iq() < 1.0
        && q.r > 1.0 - q.iq()
        && q.r > (q.ip() - q.iq()).max(0.0)
}

fn lambda_w_linf(q: &AtlasQuery) -> bool {
    q.q.is_infinite() && q.p_banach() && q.ip() >= 0.5 && q.r > 1.0
}

fn rho_w_cross(q: &AtlasQuery) -> bool {
    q.cross() && q.r > q.ip().max(1.0 - q.iq())
}

fn rho_w_upper(q: &AtlasQuery) -> bool {
    q.p_banach() && q.p_below_finite_q() && q.r > q.ip() && !w_lin_sharp_large(q) && !rho_w_cross(q)
}

fn rho_b_sharp(q: &AtlasQuery) -> bool {
    q.theta.is_infinite() && w_lin_sharp_large(q)
}

fn rho_b_cross(q: &AtlasQuery) -> bool {
    q.theta.is_infinite() && rho_w_cross(q)
}

fn rho_b_upper(q: &AtlasQuery) -> bool {
    q.theta.is_infinite() && rho_w_upper(q)
}

fn gelfand_w_threshold(q: &AtlasQuery) -> f64 {
    let (ip, iq) = (q.ip(), q.iq());
    if ip > iq && iq >= 0.5 {
        0.5
    } else if ip > 0.5 && iq < 0.5 {
        1.0 - iq
    } else {
        (ip - iq).max(0.0)
    }
}

fn gelfand_w(q: &AtlasQuery) -> bool {
    q.p_banach() && q.iq() > 0.0 && q.iq() < 1.0 && q.r > gelfand_w_threshold(q)
}

fn gelfand_w_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.r - (q.ip().min(0.5) - q.iq()).max(0.0), 0.0)
}

fn gelfand_b_first(q: &AtlasQuery) -> bool {
    q.theta.is_infinite()
        && q.p_banach()
        && q.p_below_finite_q()
        && q.ip() > 0.5
        && q.ip() + q.iq() < 1.0
        && q.r > 1.0 - q.iq()
}

fn gelfand_b_second(q: &AtlasQuery) -> bool {
    q.theta.is_infinite() && q.large() && q.r > q.ip() - q.iq()
}

fn gelfand_b_first_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.r - 0.5 + q.iq(), q.iq())
}

fn kolmogorov_threshold(q: &AtlasQuery) -> f64 {
    let (ip, iq) = (q.ip(), q.iq());
    let p_le_q_le_2 = ip >= iq && iq >= 0.5;
    if p_le_q_le_2 || iq >= ip {
        (ip - iq).max(0.0)
    } else {
        ip.max(0.5)
    }
}

fn kolmogorov_w(q: &AtlasQuery) -> bool {
    q.p_banach() && q.iq() > 0.0 && q.iq() < 1.0 && q.r > kolmogorov_threshold(q)
}

fn kolmogorov_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.r - (q.ip() - q.iq().max(0.5)).max(0.0), 0.0)
}

fn lambda_w_first_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.r - (q.ip() - q.iq()).max(0.0), 0.0)
}

fn lambda_w_second_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.r - q.ip() + 0.5, 0.0)
}

fn lambda_w_third_rate(q: &AtlasQuery) -> Option<Rate> {
    rate(q.r - 0.5 + q.iq(), 0.0)
}

fn lambda_linf_rate(q: &AtlasQuery) -> Option<Rate> {
    // n^{-(r-1/2)} (log n)^{(μ-1) r}
    rate(q.r - 0.5, 0.5)
}

fn rho_w_linf(q: &AtlasQuery) -> bool {
    q.q.is_infinite() && q.p_banach() && q.r > q.ip()
}

fn rho_b_linf(q: &AtlasQuery) -> bool {
    q.theta.is_infinite() && rho_w_linf(q)
}

macro_rules! region {
    ($id:expr, $space:ident, $width:ident, $status:ident, $cite:expr, $applies:expr, $rate:expr) => {
        region!($id, $space, $width, $status, $cite, $applies, $rate, no_bounds)
    };
    ($id:expr, $space:ident, $width:ident, $status:ident, $cite:expr, $applies:expr, $rate:expr, $bounds:expr) => {
        Region {
            id: $id,
            space: Space::$space,
            width: WidthKind::$width,
            status: Status::$status,
            citation: $cite,
            applies: $applies,
            rate: $rate,
            bounds: $bounds,
        }
    };
}

/// Every encoded region.
pub static REGIONS: &[Region] = &[
    // Sobolev, linear sampling
    region!(
        "W.rho_lin.small",
        W,
        RhoLin,
        Sharp,
        CITE_W_LIN,
        w_lin_sharp_small,
        main_rate
    ),
    region!(
        "W.rho_lin.large",
        W,
        RhoLin,
        Sharp,
        CITE_W_LIN,
        w_lin_sharp_large,
        main_rate
    ),
    region!(
        "W.rho_lin.cross",
        W,
        RhoLin,
        Open,
        CITE_CROSS,
        w_lin_cross,
        none_rate,
        cross_bounds_f
    ),
    region!(
        "W.rho_lin.cross_low",
        W,
        RhoLin,
        UpperOnly,
        CITE_UPPER,
        w_lin_cross_low,
        main_rate
    ),
    region!(
        "W.rho_lin.question",
        W,
        RhoLin,
        Open,
        CITE_QUESTION,
        question,
        none_rate
    ),
    region!(
        "W.rho_lin.linf_cross",
        W,
        RhoLin,
        Open,
        CITE_LINF_CROSS,
        w_linf_cross,
        none_rate,
        linf_cross_bounds
    ),
    region!(
        "W.rho_lin.linf",
        W,
        RhoLin,
        UpperOnly,
        CITE_UPPER,
        w_linf_upper,
        linf_rate
    ),
    // Triebel-Lizorkin, linear sampling
    region!(
        "F.rho_lin.small",
        F,
        RhoLin,
        Sharp,
        CITE_F_LIN,
        f_lin_small,
        main_rate
    ),
    region!(
        "F.rho_lin.large",
        F,
        RhoLin,
        Sharp,
        CITE_F_LIN,
        f_lin_large,
        main_rate
    ),
    region!(
        "F.rho_lin.cross",
        F,
        RhoLin,
        Open,
        CITE_CROSS,
        f_lin_cross,
        none_rate,
        cross_bounds_f
    ),
    region!(
        "F.rho_lin.upper",
        F,
        RhoLin,
        UpperOnly,
        CITE_UPPER,
        f_lin_upper,
        main_rate
    ),
    region!(
        "F.rho_lin.linf",
        F,
        RhoLin,
        UpperOnly,
        CITE_UPPER,
        f_linf_upper,
        linf_rate
    ),
    // Besov, linear sampling
    region!(
        "B.rho_lin.nikolskij",
        B,
        RhoLin,
        Sharp,
        CITE_B_LIN,
        b_lin_sharp_inf,
        main_rate_beta_q
    ),
    region!(
        "B.rho_lin.cross",
        B,
        RhoLin,
        Open,
        CITE_CROSS,
        b_lin_cross_inf,
        none_rate,
        cross_bounds_b
    ),
    region!(
        "B.rho_lin.small_theta",
        B,
        RhoLin,
        Sharp,
        CITE_B_LIN_THETA,
        b_lin_sharp_theta,
        b_lin_rate_theta
    ),
    region!(
        "B.rho_lin.upper",
        B,
        RhoLin,
        UpperOnly,
        CITE_UPPER,
        b_lin_upper,
        b_lin_rate_theta
    ),
    // linear widths
    region!(
        "W.lambda.first",
        W,
        Lambda,
        Sharp,
        CITE_LAMBDA_W,
        lambda_w_first,
        lambda_w_first_rate
    ),
    region!(
        "W.lambda.second",
        W,
        Lambda,
        Sharp,
        CITE_LAMBDA_W,
        lambda_w_second,
        lambda_w_second_rate
    ),
    region!(
        "W.lambda.third",
        W,
        Lambda,
        Sharp,
        CITE_LAMBDA_W,
        lambda_w_third,
        lambda_w_third_rate
    ),
    region!(
        "W.lambda.linf",
        W,
        Lambda,
        Sharp,
        CITE_LAMBDA_LINF,
        lambda_w_linf,
        lambda_linf_rate
    ),
    region!(
        "F.lambda.small",
        F,
        Lambda,
        Sharp,
        CITE_LAMBDA_F,
        f_lin_small,
        main_rate
    ),
    region!(
        "F.lambda.large",
        F,
        Lambda,
        Sharp,
        CITE_LAMBDA_F,
        f_lin_large,
        main_rate
    ),
    region!(
        "B.lambda.nikolskij",
        B,
        Lambda,
        Sharp,
        CITE_LAMBDA_B,
        b_lin_sharp_inf,
        main_rate_beta_q
    ),
    // sampling with arbitrary reconstruction
    region!(
        "W.rho.large",
        W,
        Rho,
        Sharp,
        CITE_RHO_W,
        w_lin_sharp_large,
        main_rate
    ),
    region!(
        "W.rho.cross",
        W,
        Rho,
        Open,
        CITE_RHO_CROSS,
        rho_w_cross,
        none_rate,
        cross_bounds_f
    ),
    region!(
        "W.rho.upper",
        W,
        Rho,
        UpperOnly,
        CITE_UPPER,
        rho_w_upper,
        main_rate
    ),
    region!(
        "W.rho.question",
        W,
        Rho,
        Open,
        CITE_QUESTION,
        question,
        none_rate
    ),
    region!(
        "W.rho.linf",
        W,
        Rho,
        UpperOnly,
        CITE_UPPER,
        rho_w_linf,
        linf_rate
    ),
    region!(
        "B.rho.large",
        B,
        Rho,
        Sharp,
        CITE_RHO_B,
        rho_b_sharp,
        main_rate_beta_q
    ),
    region!(
        "B.rho.cross",
        B,
        Rho,
        Open,
        CITE_RHO_CROSS,
        rho_b_cross,
        none_rate,
        cross_bounds_b
    ),
    region!(
        "B.rho.upper",
        B,
        Rho,
        UpperOnly,
        CITE_UPPER,
        rho_b_upper,
        main_rate_beta_q
    ),
    region!(
        "B.rho.linf",
        B,
        Rho,
        UpperOnly,
        CITE_UPPER,
        rho_b_linf,
        linf_rate
    ),
    // Gelfand and Kolmogorov widths
    region!(
        "W.gelfand",
        W,
        Gelfand,
        Sharp,
        CITE_GELFAND_W,
        gelfand_w,
        gelfand_w_rate
    ),
    region!(
        "B.gelfand.first",
        B,
        Gelfand,
        Sharp,
        CITE_GELFAND_B,
        gelfand_b_first,
        gelfand_b_first_rate
    ),
    region!(
        "B.gelfand.large",
        B,
        Gelfand,
        Sharp,
        CITE_GELFAND_B,
        gelfand_b_second,
        main_rate_beta_q
    ),
    region!(
        "W.kolmogorov",
        W,
        Kolmogorov,
        Sharp,
        CITE_KOLMOGOROV,
        kolmogorov_w,
        kolmogorov_rate
    ),
];

/// Regions of `query`'s space and width kind whose predicate holds.
pub fn matching_regions(query: &AtlasQuery) -> Vec<&'static Region> {
    REGIONS
        .iter()
        .filter(|r| r.space == query.space && r.width == query.width && (r.applies)(query))
        .collect()
}

/// The entry covering `query`, or [`AtlasEntry::UNCLASSIFIED`].
pub fn atlas_lookup(query: &AtlasQuery) -> AtlasEntry {
    match matching_regions(query).first() {
        Some(region) => AtlasEntry {
            region: region.id,
            status: region.status,
            rate: (region.rate)(query),
            bounds: (region.bounds)(query),
            citation: region.citation,
        },
        None => AtlasEntry::UNCLASSIFIED,
    }
}
