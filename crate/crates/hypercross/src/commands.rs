//! The five experiment commands. Each writes its files under `out` together
//! with `manifest.json` and reports whether the run passed.

use std::path::{Path, PathBuf};

use hypercross_core::analysis::atlas::{atlas_lookup, AtlasEntry, AtlasQuery, Status};
use hypercross_core::analysis::functions::{parseval_l2_error, TestFunction};
use hypercross_core::analysis::norms::{discrete_norm, reference_norm, NormSpec};
use hypercross_core::analysis::rate::{check_membership, convergence_row, RateReport, MIN_SWEEP};
use hypercross_core::analysis::Space;
use hypercross_core::kernels::Kernel;
use hypercross_core::smolyak::{build_index_set, Smolyak, SparseGrid};
use hypercross_core::{Complex64, Error};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{CommandKind, ExperimentConfig};
use crate::error::CliError;
use crate::output::{json_atlas, json_num, num, write_text, Manifest, Table, MANIFEST};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub command: CommandKind,
    pub passed: bool,
    /// Written files, manifest last.
    pub files: Vec<PathBuf>,
    /// Text for stdout.
    pub summary: String,
}

impl Outcome {
    /// 0 on pass, 2 on a tolerance failure.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }
}

/// Resolves `config` and runs `command`, or the config's own command.
pub fn run(
    config: ExperimentConfig,
    command: Option<CommandKind>,
    out: &Path,
) -> Result<Outcome, CliError> {
    let mut config = config.resolve()?;
    let command = command.or(config.command).ok_or(CliError::NoCommand)?;
    config.command = Some(command);
    crate::output::create_dir(out)?;
    let result = match command {
        CommandKind::Grid => grid(&config)?,
        CommandKind::Interpolate => interpolate(&config)?,
        CommandKind::Convergence => convergence(&config)?,
        CommandKind::Norms => norms(&config)?,
        CommandKind::Atlas => atlas(&config)?,
    };
    let mut files = Vec::new();
    for (name, table) in &result.tables {
        let path = out.join(name);
        table.write(&path)?;
        files.push(path);
    }
    for (name, text) in &result.texts {
        let path = out.join(name);
        write_text(&path, text)?;
        files.push(path);
    }
    let names: Vec<String> = result
        .tables
        .iter()
        .map(|(n, _)| n.to_string())
        .chain(result.texts.iter().map(|(n, _)| n.to_string()))
        .collect();
    let manifest = Manifest {
        schema: crate::output::SCHEMA,
        command,
        passed: result.passed,
        config: &config,
        files: names,
        results: result.results,
    };
    let path = out.join(MANIFEST);
    write_text(&path, &manifest.to_json())?;
    files.push(path);
    Ok(Outcome {
        command,
        passed: result.passed,
        files,
        summary: result.summary,
    })
}

struct CommandResult {
    tables: Vec<(&'static str, Table)>,
    texts: Vec<(&'static str, String)>,
    results: Value,
    passed: bool,
    summary: String,
}

fn kernel(config: &ExperimentConfig) -> Result<Kernel, CliError> {
    Ok(Kernel::new(config.order)?)
}

fn grid(config: &ExperimentConfig) -> Result<CommandResult, CliError> {
    let d = config.dim;
    let set = build_index_set(&config.eta, config.m as f64)?;
    let nodes = SparseGrid::new(&set)?;
    let header = std::iter::once("index".to_string())
        .chain((1..=d).map(|i| format!("x_{i}")))
        .chain((1..=d).map(|i| format!("level_{i}")));
    let mut node_table = Table::new(header);
    for i in 0..nodes.len() {
        let mut row = vec![i.to_string()];
        row.extend(nodes.point(i).into_iter().map(num));
        row.extend(nodes.node_levels(i).into_iter().map(|l| l.to_string()));
        node_table.push(row);
    }

    let mu = config.mu as i32;
    let counts = (config.m_min..=config.m_max)
        .into_par_iter()
        .map(|m| {
            let set = build_index_set(&config.eta, m as f64)?;
            let n = SparseGrid::new(&set)?.len();
            let scale = (m.max(1) as f64).powi(mu - 1) * 2f64.powi(m as i32);
            Ok((m, set.len(), n, scale))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut count_table = Table::new(["m", "index_set", "nodes", "scale", "ratio"]);
    for &(m, s, n, scale) in &counts {
        count_table.push(vec![
            m.to_string(),
            s.to_string(),
            n.to_string(),
            num(scale),
            num(n as f64 / scale),
        ]);
    }
    let ratios: Vec<f64> = counts.iter().map(|c| c.2 as f64 / c.3).collect();
    let spread = ratios.iter().copied().fold(0.0, f64::max)
        / ratios.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(CommandResult {
        tables: vec![("nodes.csv", node_table), ("counts.csv", count_table)],
        texts: Vec::new(),
        results: json!({
            "nodes": nodes.len(),
            "index_set": set.len(),
            "ratio_spread": json_num(spread),
        }),
        passed: true,
        summary: format!(
            "m={} nodes={} ratio spread {}",
            config.m,
            nodes.len(),
            num(spread)
        ),
    })
}

fn interpolate(config: &ExperimentConfig) -> Result<CommandResult, CliError> {
    let f = config.test_function()?;
    let kernel = kernel(config)?;
    let set = build_index_set(&config.eta, config.m as f64)?;
    let grid = SparseGrid::new(&set)?;
    let nodes = grid.len();
    let store = f.sample(grid);
    let approx = Smolyak::new(&kernel, &set, &store)?.coefficients()?;
    let header = (1..=config.dim)
        .map(|i| format!("k_{i}"))
        .chain(["re".to_string(), "im".to_string()]);
    let mut table = Table::new(header);
    for (k, c) in approx.iter() {
        let mut row: Vec<String> = k.iter().map(|v| v.to_string()).collect();
        row.push(num(c.re));
        row.push(num(c.im));
        table.push(row);
    }
    let l2 = parseval_l2_error(&f, &approx);
    Ok(CommandResult {
        tables: vec![("coefficients.csv", table)],
        texts: Vec::new(),
        results: json!({ "nodes": nodes, "terms": approx.len(), "l2_error": json_num(l2) }),
        passed: true,
        summary: format!(
            "m={} nodes={nodes} terms={} l2 error {}",
            config.m,
            approx.len(),
            num(l2)
        ),
    })
}

fn convergence(config: &ExperimentConfig) -> Result<CommandResult, CliError> {
    let f = config.test_function()?;
    let kernel = kernel(config)?;
    let space: Space = config.space.into();
    let params = config.params(config.m_min)?;
    check_membership(&f, space, &params)?;
    let count = (config.m_min..=config.m_max).count();
    if count < MIN_SWEEP {
        return Err(Error::InsufficientSweep {
            needed: MIN_SWEEP,
            got: count,
        }
        .into());
    }
    let quad = config.quadrature_spec();
    let rows = (config.m_min..=config.m_max)
        .into_par_iter()
        .map(|m| convergence_row(&kernel, &f, &params.with_m(m), &quad))
        .collect::<Result<Vec<_>, Error>>()?;
    let report = RateReport::from_rows(rows, &f, space, &params)?;

    let mut table = Table::new(["m", "n", "error", "alpha_rolling"]);
    for (row, rolling) in report.rows.iter().zip(&report.rolling) {
        table.push(vec![
            row.m.to_string(),
            row.nodes.to_string(),
            num(row.error),
            rolling.map(num).unwrap_or_default(),
        ]);
    }
    let within = report.within(config.tolerance);
    let passed = report.atlas.status != Status::Sharp || within;
    let fit = |f: Option<hypercross_core::analysis::rate::RateFit>| {
        f.map(|f| {
            json!({
                "alpha": json_num(f.alpha),
                "stderr": json_num(f.stderr),
                "intercept": json_num(f.intercept),
            })
        })
    };
    let results = json!({
        "exact": report.exact,
        "fit": fit(report.fit),
        "fit_nodes": fit(report.fit_nodes),
        "alpha_theory": json_num(report.alpha_theory),
        "beta_theory": report.beta_theory.map(json_num),
        "within_tolerance": within,
        "mu": params.mu(),
        "atlas": json_atlas(&report.atlas),
    });
    let summary = match report.fit {
        _ if report.exact => "exact recovery, zero error".to_string(),
        Some(fit) => format!(
            "alpha_hat={} alpha={} ({}; {})",
            num(fit.alpha),
            num(report.alpha_theory),
            report.atlas.status.as_str(),
            if within {
                "within tolerance"
            } else {
                "outside tolerance"
            }
        ),
        None => "no fit".to_string(),
    };
    Ok(CommandResult {
        tables: vec![("convergence.csv", table)],
        texts: Vec::new(),
        results,
        passed,
        summary,
    })
}

/// Functions of the norm catalog, with their names.
pub fn catalog(config: &ExperimentConfig) -> Result<Vec<(&'static str, TestFunction)>, CliError> {
    let d = config.dim;
    Ok(vec![
        ("korobov_3", TestFunction::korobov(vec![3.0; d])?),
        ("korobov_4", TestFunction::korobov(vec![4.0; d])?),
        ("hat_tensor", TestFunction::hat_tensor(d)?),
        (
            "constant",
            TestFunction::constant(d, Complex64::new(config.constant, 0.0)),
        ),
        ("trigpoly", TestFunction::trigpoly(config.polynomial()?)),
    ])
}

struct NormRow {
    name: &'static str,
    member: bool,
    in_domain: bool,
    coarse: f64,
    fine: f64,
    reference: f64,
}

impl NormRow {
    fn ratio(&self) -> f64 {
        self.fine / self.reference
    }

    fn stability(&self) -> f64 {
        (self.fine - self.coarse).abs() / self.fine
    }

    /// Finite positive reference and a member of the space.
    fn usable(&self) -> bool {
        self.member && self.reference.is_finite() && self.reference > 0.0
    }
}

fn norms(config: &ExperimentConfig) -> Result<CommandResult, CliError> {
    let kernel = kernel(config)?;
    let spec = NormSpec::new(
        config.space.into(),
        config.r.clone(),
        config.p.exponent()?,
        config.theta.exponent()?,
    )?;
    let jmax = config.jmax;
    let rows = catalog(config)?
        .into_par_iter()
        .map(|(name, f)| {
            let coarse = discrete_norm(&kernel, &f, &spec, jmax)?;
            let fine = discrete_norm(&kernel, &f, &spec, jmax + 1)?;
            Ok(NormRow {
                name,
                member: f.is_member(
                    config.space.into(),
                    &config.r,
                    config.p.exponent()?,
                    config.theta.exponent()?,
                ),
                in_domain: fine.in_domain,
                coarse: coarse.value,
                fine: fine.value,
                reference: reference_norm(&f, &spec)?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;

    let mut table = Table::new([
        "function",
        "member",
        "in_domain",
        "discrete_jmax",
        "discrete_jmax1",
        "reference",
        "ratio",
        "stability",
    ]);
    for row in &rows {
        table.push(vec![
            row.name.to_string(),
            row.member.to_string(),
            row.in_domain.to_string(),
            num(row.coarse),
            num(row.fine),
            num(row.reference),
            num(row.ratio()),
            num(row.stability()),
        ]);
    }
    let usable: Vec<&NormRow> = rows.iter().filter(|r| r.usable()).collect();
    let max = usable.iter().map(|r| r.ratio()).fold(0.0, f64::max);
    let min = usable
        .iter()
        .map(|r| r.ratio())
        .fold(f64::INFINITY, f64::min);
    let stability = usable.iter().map(|r| r.stability()).fold(0.0, f64::max);
    let in_domain = rows.iter().all(|r| r.in_domain);
    let results = json!({
        "ratio_min": json_num(min),
        "ratio_max": json_num(max),
        "spread": json_num(max / min),
        "stability": json_num(stability),
        "in_domain": in_domain,
        "reference": "sharp dyadic cutoffs",
    });
    let flag = if in_domain {
        ""
    } else {
        " (outside the valid parameter domain)"
    };
    Ok(CommandResult {
        tables: vec![("norms.csv", table)],
        texts: Vec::new(),
        results,
        passed: true,
        summary: format!(
            "ratio spread {} stability {}{flag}",
            num(max / min),
            num(stability)
        ),
    })
}

pub fn atlas_query(config: &ExperimentConfig) -> Result<AtlasQuery, CliError> {
    Ok(AtlasQuery {
        space: config.space.into(),
        width: config.width_kind()?,
        p: config.p.exponent()?,
        q: config.q.exponent()?,
        theta: config.theta.exponent()?,
        r: config.r.iter().copied().fold(f64::INFINITY, f64::min),
        mu: config.mu,
    })
}

/// One line: `alpha beta status citation`, or `open` with any bounds.
pub fn atlas_line(entry: &AtlasEntry) -> String {
    match (entry.status, entry.rate, entry.bounds) {
        (Status::Open, _, Some(b)) => format!(
            "open lower=({}, {}) upper=({}, {}) {}",
            num(b.lower.alpha),
            num(b.lower.beta),
            num(b.upper.alpha),
            num(b.upper.beta),
            entry.citation
        ),
        (Status::Open, _, None) => "open".to_string(),
        (status, Some(r), _) => format!(
            "{} {} {} {}",
            num(r.alpha),
            num(r.beta),
            status.as_str(),
            entry.citation
        ),
        (status, None, _) => format!("{} {}", status.as_str(), entry.citation),
    }
}

fn atlas(config: &ExperimentConfig) -> Result<CommandResult, CliError> {
    let entry = atlas_lookup(&atlas_query(config)?);
    let results = json_atlas(&entry);
    let mut text = serde_json::to_string_pretty(&results).expect("atlas entry is serializable");
    text.push('\n');
    Ok(CommandResult {
        tables: Vec::new(),
        texts: vec![("atlas.json", text.clone())],
        results,
        passed: true,
        summary: format!("{}\n{}", atlas_line(&entry), text.trim_end()),
    })
}
