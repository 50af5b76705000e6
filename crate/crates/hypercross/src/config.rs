//! Flat key-value experiment configuration.
//!
//! Exponents accept a number or the string `"inf"`. Empty vectors and zero
//! `mu` are resolved from the other fields by [`ExperimentConfig::resolve`].

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use clap::ValueEnum;
use hypercross_core::analysis::atlas::WidthKind;
use hypercross_core::analysis::functions::TestFunction;
use hypercross_core::analysis::quadrature::QuadratureSpec;
use hypercross_core::analysis::Space;
use hypercross_core::smolyak::{eta_for_linf, eta_for_lq, RecoveryParams};
use hypercross_core::{Complex64, Exponent, TrigPoly};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum CommandKind {
    Grid,
    Interpolate,
    Convergence,
    Norms,
    Atlas,
}

impl fmt::Display for CommandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CommandKind::Grid => "grid",
            CommandKind::Interpolate => "interpolate",
            CommandKind::Convergence => "convergence",
            CommandKind::Norms => "norms",
            CommandKind::Atlas => "atlas",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FunctionKind {
    Korobov,
    HatTensor,
    Trigpoly,
    Constant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpaceName {
    W,
    F,
    B,
}

impl From<SpaceName> for Space {
    fn from(s: SpaceName) -> Self {
        match s {
            SpaceName::W => Space::W,
            SpaceName::F => Space::F,
            SpaceName::B => Space::B,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureName {
    TensorGrid,
    MonteCarlo,
    DenseMax,
}

/// Integrability exponent in `(0, ∞]`, serialized as a number or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exp(pub f64);

impl Exp {
    pub const INF: Exp = Exp(f64::INFINITY);

    pub fn exponent(self) -> Result<Exponent, CliError> {
        if self.0.is_infinite() && self.0 > 0.0 {
            Ok(Exponent::INFINITY)
        } else {
            Ok(Exponent::new(self.0)?)
        }
    }
}

impl fmt::Display for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Exp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Exp {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Exp(v)),
            Raw::Int(v) => Ok(Exp(v as f64)),
            Raw::Str(s) if matches!(s.as_str(), "inf" | "infinity" | "Inf") => Ok(Exp::INF),
            Raw::Str(s) => s
                .parse::<f64>()
                .map(Exp)
                .map_err(|_| serde::de::Error::custom(format!("invalid exponent {s:?}"))),
        }
    }
}

/// One experiment. Every field has an explicit default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ExperimentConfig {
    pub command: Option<CommandKind>,
    pub dim: usize,
    pub function: FunctionKind,
    /// Decay exponents of the Korobov function, one per dimension.
    pub korobov_s: Vec<f64>,
    /// Polynomial terms `[k_1, …, k_d, re, im]`.
    pub trigpoly: Vec<Vec<f64>>,
    pub constant: f64,
    pub space: SpaceName,
    pub r: Vec<f64>,
    pub p: Exp,
    pub q: Exp,
    pub theta: Exp,
    /// Kernel decay order `L`.
    pub order: u32,
    pub eta: Vec<f64>,
    /// Level of the `grid` node list and of `interpolate`.
    pub m: u32,
    pub m_min: u32,
    pub m_max: u32,
    pub quadrature: QuadratureName,
    /// Tensor-grid points per dimension.
    pub resolution: usize,
    /// Monte Carlo sample count.
    pub samples: usize,
    pub seed: u64,
    pub tolerance: f64,
    /// Largest block level of the discrete norms.
    pub jmax: u32,
    pub width: String,
    /// Multiplicity of `r₁`; 0 derives it from `r`.
    pub mu: usize,
    /// Worker threads; 0 uses all cores.
    pub threads: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            command: None,
            dim: 2,
            function: FunctionKind::HatTensor,
            korobov_s: Vec::new(),
            trigpoly: Vec::new(),
            constant: 1.0,
            space: SpaceName::B,
            r: Vec::new(),
            p: Exp(2.0),
            q: Exp(2.0),
            theta: Exp::INF,
            order: 3,
            eta: Vec::new(),
            m: 6,
            m_min: 4,
            m_max: 9,
            quadrature: QuadratureName::TensorGrid,
            resolution: 64,
            samples: 1 << 16,
            seed: 0,
            tolerance: 0.2,
            jmax: 6,
            width: "rho_lin".into(),
            mu: 0,
            threads: 0,
        }
    }
}

impl FromStr for ExperimentConfig {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        toml::from_str(s).map_err(|e| CliError::Config(e.to_string()))
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        text.parse()
            .map_err(|e: CliError| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is always representable")
    }

    /// Fills `r`, `eta`, `mu`, `korobov_s` and `trigpoly` from the other fields.
    pub fn resolve(mut self) -> Result<Self, CliError> {
        if self.dim == 0 {
            return Err(CliError::Config("dim must be positive".into()));
        }
        let d = self.dim;
        if self.r.is_empty() {
            self.r = vec![1.5; d];
        }
        if self.korobov_s.is_empty() {
            self.korobov_s = vec![3.0; d];
        }
        if self.trigpoly.is_empty() {
            let mut row = vec![0.0; d + 2];
            row[0] = 1.0;
            row[d] = 1.0;
            self.trigpoly = vec![row];
        }
        for (name, len) in [("r", self.r.len()), ("korobov_s", self.korobov_s.len())] {
            if len != d {
                return Err(CliError::Config(format!(
                    "{name} has {len} entries, dim is {d}"
                )));
            }
        }
        if let Some(row) = self.trigpoly.iter().find(|row| row.len() != d + 2) {
            return Err(CliError::Config(format!(
                "trigpoly row {row:?} needs {} entries",
                d + 2
            )));
        }
        if self.eta.is_empty() {
            let (p, q) = (self.p.exponent()?, self.q.exponent()?);
            self.eta = if q.is_infinite() {
                eta_for_linf(&self.r, p)?
            } else {
                eta_for_lq(&self.r, p, q)?
            };
        }
        if self.mu == 0 {
            self.mu = self
                .r
                .iter()
                .take_while(|v| (**v - self.r[0]).abs() <= 1e-12)
                .count();
        }
        if self.m_min > self.m_max {
            return Err(CliError::Config(format!(
                "m_min {} exceeds m_max {}",
                self.m_min, self.m_max
            )));
        }
        self.width_kind()?;
        Ok(self)
    }

    pub fn width_kind(&self) -> Result<WidthKind, CliError> {
        Ok(self.width.parse()?)
    }

    pub fn test_function(&self) -> Result<TestFunction, CliError> {
        Ok(match self.function {
            FunctionKind::Korobov => TestFunction::korobov(self.korobov_s.clone())?,
            FunctionKind::HatTensor => TestFunction::hat_tensor(self.dim)?,
            FunctionKind::Constant => {
                TestFunction::constant(self.dim, Complex64::new(self.constant, 0.0))
            }
            FunctionKind::Trigpoly => TestFunction::trigpoly(self.polynomial()?),
        })
    }

    pub fn polynomial(&self) -> Result<TrigPoly, CliError> {
        let d = self.dim;
        let mut p = TrigPoly::new(d);
        for row in &self.trigpoly {
            if row[..d].iter().any(|k| k.fract() != 0.0) {
                return Err(CliError::Config(format!(
                    "non-integer frequency in {row:?}"
                )));
            }
            let k: Vec<i64> = row[..d].iter().map(|k| *k as i64).collect();
            p.add_term(&k, Complex64::new(row[d], row[d + 1]))?;
        }
        Ok(p)
    }

    /// Recovery parameters at level `m`.
    pub fn params(&self, m: u32) -> Result<RecoveryParams, CliError> {
        Ok(RecoveryParams::new(
            self.r.clone(),
            self.p.exponent()?,
            self.q.exponent()?,
            self.theta.exponent()?,
            self.order,
            self.eta.clone(),
            m,
        )?)
    }

    pub fn quadrature_spec(&self) -> QuadratureSpec {
        match self.quadrature {
            QuadratureName::TensorGrid => QuadratureSpec::tensor_grid(self.resolution),
            QuadratureName::DenseMax => QuadratureSpec::dense_max(self.resolution),
            QuadratureName::MonteCarlo => QuadratureSpec::monte_carlo(self.samples, self.seed),
        }
    }
}
