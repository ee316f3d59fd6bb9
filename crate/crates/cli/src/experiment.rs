//! Batch compiles over an angle × ε grid, written as CSV.
//!
//! Run `i` always draws from `CompileRng::for_run(seed, i)`, so the output
//! depends only on the arguments (and, for `elapsed_ms`, the clock) — never on how
//! rayon schedules the work.

use std::io::Write;
use std::time::Instant;

use clap::ValueEnum;
use fibcomp::approx::{compile_rz_with, compile_rzx_with, working_precision, CompileOptions, Target};
use fibcomp::oracle::OracleDb;
use fibcomp::rings::BigFloat;
use fibcomp::rng::CompileRng;
use fibcomp::stats::linear_fit;
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::{CliError, Epsilon};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Rz,
    Rzx,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Rz => "rz",
            Kind::Rzx => "rzx",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub kind: Kind,
    /// φ_k = 2πk/denominator for k = 1..=angles.
    pub angles: u64,
    pub denominator: u64,
    pub eps: Vec<Epsilon>,
    pub seed: u64,
    /// When false `elapsed_ms` is left empty.
    pub timing: bool,
}

#[derive(Serialize)]
struct Row {
    row: String,
    kind: &'static str,
    k: Option<u64>,
    angle: Option<f64>,
    log10_inv_eps: String,
    epsilon: String,
    sigma_count: String,
    trials: String,
    distance: String,
    elapsed_ms: Option<String>,
}

/// One compile's measurements.
#[derive(Clone, Debug)]
pub struct Run {
    pub sigma_count: usize,
    pub trials: u64,
    pub distance: f64,
    pub elapsed_ms: u64,
}

/// Per-ε means, for the fits.
#[derive(Clone, Debug, Default)]
pub struct Summary {
    /// (log₁₀(1/ε), mean σ count, mean trials)
    pub means: Vec<(f64, f64, f64)>,
}

impl Summary {
    /// `sigma_count ≈ a·log10(1/eps) + b` (and the same for trials) when at
    /// least two ε values were run.
    pub fn fit_lines(&self) -> Vec<String> {
        if self.means.len() < 2 {
            return Vec::new();
        }
        let fit =
            |f: fn(&(f64, f64, f64)) -> f64| linear_fit(&self.means.iter().map(|m| (m.0, f(m))).collect::<Vec<_>>());
        let (a, b) = fit(|m| m.1);
        let (c, d) = fit(|m| m.2);
        vec![
            format!("fit: sigma_count = {a:.3} * log10(1/eps) + {b:.3}"),
            format!("fit: trials = {c:.3} * log10(1/eps) + {d:.3}"),
        ]
    }
}

fn log10_inv(eps: &Epsilon) -> f64 {
    -eps.value.log2_approx() * std::f64::consts::LOG10_2
}

fn compile_one(
    spec: &ExperimentSpec,
    db: Option<&OracleDb>,
    eps: &BigFloat,
    k: u64,
    index: u64,
) -> Result<Run, CliError> {
    let prec = working_precision(eps);
    let phi = &(&BigFloat::pi(prec) * &BigFloat::from_bigint(&BigInt::from(2 * k), prec))
        / &BigFloat::from_bigint(&BigInt::from(spec.denominator), prec);
    let mut rng = CompileRng::for_run(spec.seed, index);
    let opts = CompileOptions::default();
    let start = Instant::now();
    let (mut result, target) = match spec.kind {
        Kind::Rz => (compile_rz_with(&phi, eps, &opts, &mut rng)?, Target::Rz(phi)),
        Kind::Rzx => (compile_rzx_with(&phi, eps, &opts, &mut rng)?, Target::RzX(phi)),
    };
    if let Some(db) = db {
        result.peephole(db, &target, prec);
    }
    Ok(Run {
        sigma_count: result.sigma_count,
        trials: result.trials,
        distance: result.achieved_distance.to_f64(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_experiment(spec: &ExperimentSpec, db: Option<&OracleDb>, out: &mut dyn Write) -> Result<Summary, CliError> {
    let runs = collect_runs(spec, db)?;
    write_csv(spec, &runs, out)
}

/// Every compile of the grid, ε-major, on the current rayon pool.
pub fn collect_runs(spec: &ExperimentSpec, db: Option<&OracleDb>) -> Result<Vec<Run>, CliError> {
    if spec.denominator == 0 {
        return Err(CliError::Usage("denominator must be positive".into()));
    }
    let jobs: Vec<(usize, u64)> = (0..spec.eps.len())
        .flat_map(|e| (1..=spec.angles).map(move |k| (e, k)))
        .collect();
    jobs.par_iter()
        .enumerate()
        .map(|(i, &(e, k))| compile_one(spec, db, &spec.eps[e].value, k, i as u64))
        .collect()
}

/// Writes the runs from [`collect_runs`] plus per-ε mean/min/max rows.
pub fn write_csv(spec: &ExperimentSpec, runs: &[Run], out: &mut dyn Write) -> Result<Summary, CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let io = |e: csv::Error| CliError::Io(e.to_string());
    // written by hand so an empty grid still gets a header
    w.write_record([
        "row",
        "kind",
        "k",
        "angle",
        "log10_inv_eps",
        "epsilon",
        "sigma_count",
        "trials",
        "distance",
        "elapsed_ms",
    ])
    .map_err(io)?;
    let kind = spec.kind.name();
    let mut summary = Summary::default();
    let per_eps = spec.angles as usize;
    for (e, eps) in spec.eps.iter().enumerate() {
        if per_eps == 0 {
            break;
        }
        let l = log10_inv(eps);
        let chunk = &runs[e * per_eps..(e + 1) * per_eps];
        for (j, r) in chunk.iter().enumerate() {
            let k = j as u64 + 1;
            let row = Row {
                row: (e * per_eps + j).to_string(),
                kind,
                k: Some(k),
                angle: Some(2.0 * std::f64::consts::PI * k as f64 / spec.denominator as f64),
                log10_inv_eps: format!("{l:.3}"),
                epsilon: eps.text.clone(),
                sigma_count: r.sigma_count.to_string(),
                trials: r.trials.to_string(),
                distance: format!("{:.6e}", r.distance),
                elapsed_ms: spec.timing.then(|| r.elapsed_ms.to_string()),
            };
            w.serialize(row).map_err(io)?;
        }
        let n = chunk.len() as f64;
        let stat = |f: &dyn Fn(&Run) -> f64| {
            let xs: Vec<f64> = chunk.iter().map(f).collect();
            let mean = xs.iter().sum::<f64>() / n;
            let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
            let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            [mean, min, max]
        };
        let sigma = stat(&|r| r.sigma_count as f64);
        let trials = stat(&|r| r.trials as f64);
        let dist = stat(&|r| r.distance);
        let ms = stat(&|r| r.elapsed_ms as f64);
        for (i, name) in ["mean", "min", "max"].into_iter().enumerate() {
            w.serialize(Row {
                row: name.to_string(),
                kind,
                k: None,
                angle: None,
                log10_inv_eps: format!("{l:.3}"),
                epsilon: eps.text.clone(),
                sigma_count: format!("{:.2}", sigma[i]),
                trials: format!("{:.2}", trials[i]),
                distance: format!("{:.6e}", dist[i]),
                elapsed_ms: spec.timing.then(|| format!("{:.2}", ms[i])),
            })
            .map_err(io)?;
        }
        summary.means.push((l, sigma[0], trials[0]));
    }
    w.flush()?;
    Ok(summary)
}
