//! The `fibcomp` command line: argument parsing and subcommand dispatch.
//!
//! `main` only wires [`parse_args`] and [`run`] to the process; everything
//! here writes to caller-supplied streams so it can be tested in-process.

pub mod angle;
pub mod experiment;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use fibcomp::approx::{
    compile_rz_with, compile_rzx_with, compile_unitary_with, working_precision, CompileOptions, CompileResult, Target,
    DEFAULT_TRIAL_CAP,
};
use fibcomp::circuit::{distance, evaluate_braid, to_json, BraidWord, CompileReport, Matrix2};
use fibcomp::error::{ApproxError, OracleError};
use fibcomp::exact::{exact_synthesize, ft_to_braid, ExactUnitary};
use fibcomp::numtheory::{easy_factor, solve_norm_equation};
use fibcomp::oracle::{build_database_with_budget, census_growth_exponent, OracleDb, DEFAULT_BUDGET};
use fibcomp::rings::{BigComplex, BigFloat, ZOmega, ZTau};
use fibcomp::rng::CompileRng;

pub use angle::Angle;
pub use experiment::{run_experiment, ExperimentSpec, Kind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPILE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Default oracle database for peephole optimization.
pub const ORACLE_ENV: &str = "FIBCOMP_ORACLE";

#[derive(Parser, Debug)]
#[command(
    name = "fibcomp",
    version,
    about = "Compile single-qubit gates into Fibonacci-anyon braids"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Approximate R_z(φ) = diag(e^{-iφ/2}, e^{iφ/2}).
    CompileRz(RotationArgs),
    /// Approximate R_z(φ)·X.
    CompileRzx(RotationArgs),
    /// Approximate an arbitrary 2×2 unitary.
    CompileUnitary(UnitaryArgs),
    /// Exact synthesis of U[u,v,k].
    SynthesizeExact(ExactArgs),
    /// Solve |x|² = ξ over Z[ω] for ξ in Z[τ].
    SolveNorm(SolveArgs),
    /// Enumerate optimal braids up to a depth and save them.
    OracleBuild(BuildArgs),
    /// Print the census of a saved database.
    OracleStats(StatsArgs),
    /// Distance between a braid and a target.
    Verify(VerifyArgs),
    /// Batch compiles over an angle × ε grid, as CSV.
    Experiment(ExperimentArgs),
}

/// ε in (0, 1), kept with its original spelling.
#[derive(Clone, Debug)]
pub struct Epsilon {
    pub text: String,
    pub value: BigFloat,
}

impl Epsilon {
    pub fn as_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl FromStr for Epsilon {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let value = BigFloat::parse_decimal(s, 128).map_err(|e| format!("bad epsilon {s:?}: {}", e.message))?;
        if value.signum() <= 0 || value >= BigFloat::one(128) {
            return Err(format!("epsilon must lie in (0, 1), got {s}"));
        }
        Ok(Epsilon {
            text: s.trim().to_string(),
            value,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Braid,
    Ft,
    Json,
}

#[derive(Args, Debug)]
pub struct CompileFlags {
    #[arg(long)]
    pub eps: Epsilon,
    /// Generated and printed to stderr when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Braid)]
    pub format: Format,
    /// Oracle database for peephole optimization (default: $FIBCOMP_ORACLE).
    #[arg(long)]
    pub oracle: Option<PathBuf>,
    /// Skip peephole optimization even if a database is configured.
    #[arg(long)]
    pub no_peephole: bool,
    /// Working precision in bits (default: derived from ε).
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_TRIAL_CAP)]
    pub max_trials: u64,
}

#[derive(Args, Debug)]
pub struct RotationArgs {
    /// `pi/128`, `3pi/7`, `-1/2pi`, `0.45`, ...
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Angle,
    #[command(flatten)]
    pub flags: CompileFlags,
}

/// Eight reals, row-major (re, im) pairs.
#[derive(Clone, Debug)]
pub struct MatrixText(pub Vec<String>);

impl FromStr for MatrixText {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
        if parts.len() != 8 {
            return Err(format!("expected 8 comma-separated reals, got {}", parts.len()));
        }
        for p in &parts {
            BigFloat::parse_decimal(p, 64).map_err(|e| format!("bad matrix entry {p:?}: {}", e.message))?;
        }
        Ok(MatrixText(parts))
    }
}

impl MatrixText {
    pub fn eval(&self, prec: u32) -> Matrix2 {
        let x: Vec<BigFloat> = self
            .0
            .iter()
            .map(|p| BigFloat::parse_decimal(p, prec).unwrap())
            .collect();
        let c = |i: usize| BigComplex::new(x[2 * i].clone(), x[2 * i + 1].clone());
        Matrix2::new(c(0), c(1), c(2), c(3))
    }
}

/// Named single-qubit gates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Gate {
    H,
    X,
    Y,
    Z,
    S,
    /// diag(1, e^{iπ/4})
    T,
    /// The Fibonacci F matrix.
    F,
}

impl Gate {
    pub fn matrix(self, prec: u32) -> Matrix2 {
        let zero = || BigComplex::zero(prec);
        let one = || BigComplex::one(prec);
        match self {
            Gate::H => {
                let h = BigComplex::from_real(BigFloat::from_i64(2, prec).sqrt().recip());
                Matrix2::new(h.clone(), h.clone(), h.clone(), -h)
            }
            Gate::X => Matrix2::x(prec),
            Gate::Y => Matrix2::new(zero(), -BigComplex::i(prec), BigComplex::i(prec), zero()),
            Gate::Z => Matrix2::diag(one(), -one()),
            Gate::S => Matrix2::diag(one(), BigComplex::i(prec)),
            Gate::T => Matrix2::diag(one(), BigComplex::cis(&BigFloat::pi(prec).mul_pow2(-2))),
            Gate::F => Matrix2::f(prec),
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["matrix", "gate"])))]
pub struct UnitaryArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<MatrixText>,
    #[arg(long, value_enum, ignore_case = true)]
    pub gate: Option<Gate>,
    #[command(flatten)]
    pub flags: CompileFlags,
}

#[derive(Args, Debug)]
pub struct ExactArgs {
    /// Element of Z[ω], e.g. `1+2*w-w3`.
    #[arg(long, allow_hyphen_values = true)]
    pub u: ZOmega,
    #[arg(long, allow_hyphen_values = true)]
    pub v: ZOmega,
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    /// Element of Z[τ], e.g. `760-780*t`.
    #[arg(long, allow_hyphen_values = true)]
    pub xi: ZTau,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub depth: u32,
    #[arg(long)]
    pub out: PathBuf,
    /// Largest depth allowed.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u32,
    /// Also write a JSON export here.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    pub path: PathBuf,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("target").required(true).args(["angle", "rzx_angle", "matrix", "gate"])))]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub braid: BraidWord,
    /// Target R_z(φ).
    #[arg(long, allow_hyphen_values = true)]
    pub angle: Option<Angle>,
    /// Target R_z(φ)·X.
    #[arg(long, allow_hyphen_values = true)]
    pub rzx_angle: Option<Angle>,
    #[arg(long, allow_hyphen_values = true)]
    pub matrix: Option<MatrixText>,
    #[arg(long, value_enum, ignore_case = true)]
    pub gate: Option<Gate>,
    /// Fail (exit 1) if the distance exceeds this.
    #[arg(long)]
    pub eps: Option<Epsilon>,
    #[arg(long, default_value_t = 256)]
    pub precision: u32,
}

#[derive(Args, Debug)]
pub struct ExperimentArgs {
    #[arg(long, value_enum, default_value_t = Kind::Rz)]
    pub kind: Kind,
    /// Angles φ_k = 2πk/denominator for k = 1..=angles.
    #[arg(long, default_value_t = 100)]
    pub angles: u64,
    #[arg(long, default_value_t = 4000)]
    pub denominator: u64,
    /// Comma-separated list, e.g. `1e-2,1e-5,1e-10`.
    #[arg(long, value_delimiter = ',', default_value = "1e-2,1e-5,1e-10")]
    pub eps: Vec<Epsilon>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// CSV destination (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Leave elapsed_ms empty so repeated runs are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    #[arg(long)]
    pub oracle: Option<PathBuf>,
    #[arg(long)]
    pub no_peephole: bool,
    /// Worker threads (default: rayon's choice).
    #[arg(long)]
    pub threads: Option<usize>,
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    RunConfig::try_parse_from(argv)
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Compile(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Compile(_) => EXIT_COMPILE,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Compile(m) | CliError::Io(m) => m,
        }
    }
}

impl From<ApproxError> for CliError {
    fn from(e: ApproxError) -> Self {
        match e {
            ApproxError::TrialLimitExceeded(_) | ApproxError::VerificationFailed { .. } => {
                CliError::Compile(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Io(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

/// Runs one command; returns the process exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cfg, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match &cfg.command {
        Command::CompileRz(a) => compile_rotation(a, false, out, err),
        Command::CompileRzx(a) => compile_rotation(a, true, out, err),
        Command::CompileUnitary(a) => compile_unitary_cmd(a, out, err),
        Command::SynthesizeExact(a) => synthesize_exact(a, out),
        Command::SolveNorm(a) => solve_norm(a, out, err),
        Command::OracleBuild(a) => oracle_build(a, out),
        Command::OracleStats(a) => oracle_stats(&a.path, out),
        Command::Verify(a) => verify(a, out),
        Command::Experiment(a) => experiment_cmd(a, out, err),
    }
}

/// The given seed, or a fresh one announced on `err`.
pub fn resolve_seed(seed: Option<u64>, err: &mut dyn Write) -> u64 {
    seed.unwrap_or_else(|| {
        let nanos = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_nanos() as u64)
            .unwrap_or(0);
        let s = nanos ^ u64::from(std::process::id()).rotate_left(32);
        let _ = writeln!(err, "seed: {s}");
        s
    })
}

/// The explicit path, else $FIBCOMP_ORACLE, else none.
pub fn load_oracle(path: Option<&Path>, disabled: bool) -> Result<Option<OracleDb>, CliError> {
    if disabled {
        return Ok(None);
    }
    let env = std::env::var_os(ORACLE_ENV)
        .filter(|v| !v.is_empty())
        .map(PathBuf::from);
    match path.map(Path::to_path_buf).or(env) {
        Some(p) => OracleDb::load(&p)
            .map(Some)
            .map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
        None => Ok(None),
    }
}

fn options(flags: &CompileFlags) -> CompileOptions {
    CompileOptions {
        precision: flags.precision,
        max_trials: flags.max_trials,
    }
}

fn emit(
    result: &CompileResult,
    target_text: &str,
    flags: &CompileFlags,
    seed: u64,
    elapsed_ms: u64,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    match flags.format {
        Format::Braid => writeln!(out, "{}", result.braid)?,
        Format::Ft => writeln!(out, "{}", result.ft)?,
        Format::Json => {
            let report = CompileReport::new(target_text, flags.eps.as_f64(), seed, result, elapsed_ms);
            writeln!(out, "{}", to_json(&report))?
        }
    }
    Ok(EXIT_OK)
}

fn compile_rotation(a: &RotationArgs, rzx: bool, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let db = load_oracle(a.flags.oracle.as_deref(), a.flags.no_peephole)?;
    let seed = resolve_seed(a.flags.seed, err);
    let eps = &a.flags.eps.value;
    let prec = a.flags.precision.unwrap_or_else(|| working_precision(eps));
    let phi = a.angle.eval(prec);
    let mut rng = CompileRng::from_seed(seed);
    let start = Instant::now();
    let opts = options(&a.flags);
    let (mut result, target) = if rzx {
        (compile_rzx_with(&phi, eps, &opts, &mut rng)?, Target::RzX(phi))
    } else {
        (compile_rz_with(&phi, eps, &opts, &mut rng)?, Target::Rz(phi))
    };
    if let Some(db) = &db {
        result.peephole(db, &target, prec);
    }
    let name = if rzx { "rzx" } else { "rz" };
    emit(
        &result,
        &format!("{name}({})", a.angle),
        &a.flags,
        seed,
        start.elapsed().as_millis() as u64,
        out,
    )
}

fn compile_unitary_cmd(a: &UnitaryArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let db = load_oracle(a.flags.oracle.as_deref(), a.flags.no_peephole)?;
    let seed = resolve_seed(a.flags.seed, err);
    let eps = &a.flags.eps.value;
    let finest = eps / &BigFloat::from_i64(6, eps.prec());
    let prec = a.flags.precision.unwrap_or_else(|| working_precision(&finest)) + 32;
    let (u, text) = match (&a.matrix, a.gate) {
        (Some(m), _) => (m.eval(prec), format!("matrix({})", m.0.join(","))),
        (None, Some(g)) => (g.matrix(prec), format!("gate({g:?})")),
        (None, None) => unreachable!("clap enforces the group"),
    };
    let mut rng = CompileRng::from_seed(seed);
    let start = Instant::now();
    let mut result = compile_unitary_with(&u, eps, &options(&a.flags), &mut rng)?;
    if let Some(db) = &db {
        result.peephole(db, &Target::Unitary(u), prec);
    }
    emit(&result, &text, &a.flags, seed, start.elapsed().as_millis() as u64, out)
}

fn synthesize_exact(a: &ExactArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let e = ExactUnitary::new(a.u.clone(), a.v.clone(), a.k).map_err(|e| CliError::Usage(e.to_string()))?;
    let ft = exact_synthesize(&e).map_err(|e| CliError::Compile(e.to_string()))?;
    let braid = ft_to_braid(&ft);
    writeln!(out, "ft: {ft}")?;
    writeln!(out, "braid: {braid}")?;
    writeln!(out, "sigma_count: {}", braid.sigma_count())?;
    Ok(EXIT_OK)
}

fn solve_norm(a: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let seed = resolve_seed(a.seed, err);
    let mut rng = CompileRng::from_seed(seed);
    if !a.xi.is_zero() {
        writeln!(out, "factors: {}", easy_factor(&a.xi).to_json())?;
    }
    match solve_norm_equation(&a.xi, &mut rng) {
        Some(x) => {
            writeln!(out, "x: {x}")?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "UNSOLVED")?;
            Ok(EXIT_COMPILE)
        }
    }
}

fn oracle_build(a: &BuildArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let db = build_database_with_budget(a.depth, a.budget)?;
    db.save(&a.out)?;
    if let Some(p) = &a.json {
        std::fs::write(p, serde_json::to_string_pretty(&db.to_json()).expect("serializable"))?;
    }
    write_census(&db, out)?;
    Ok(EXIT_OK)
}

fn write_census(db: &OracleDb, out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "depth\tcount\tcumulative")?;
    let mut total = 0;
    for (n, c) in db.census().iter().enumerate() {
        total += c;
        writeln!(out, "{n}\t{c}\t{total}")?;
    }
    if db.max_depth() >= 8 {
        let e = census_growth_exponent(db.census(), 6..=db.max_depth() as usize);
        writeln!(out, "growth exponent (depths 6-{}): {e:.4}", db.max_depth())?;
    }
    Ok(())
}

fn oracle_stats(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let db = OracleDb::load(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    write_census(&db, out)?;
    Ok(EXIT_OK)
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = a.precision;
    let target = match (&a.angle, &a.rzx_angle, &a.matrix, a.gate) {
        (Some(phi), ..) => Target::Rz(phi.eval(p)).matrix(p),
        (_, Some(phi), ..) => Target::RzX(phi.eval(p)).matrix(p),
        (_, _, Some(m), _) => m.eval(p),
        (_, _, _, Some(g)) => g.matrix(p),
        _ => unreachable!("clap enforces the group"),
    };
    let d = distance(&evaluate_braid(&a.braid, p), &target);
    writeln!(out, "sigma_count: {}", a.braid.sigma_count())?;
    writeln!(out, "distance: {}", d.to_sci_string(12))?;
    match &a.eps {
        Some(eps) if d > eps.value.with_prec(p) => {
            writeln!(out, "FAIL")?;
            Ok(EXIT_COMPILE)
        }
        Some(_) => {
            writeln!(out, "PASS")?;
            Ok(EXIT_OK)
        }
        None => Ok(EXIT_OK),
    }
}

fn experiment_cmd(a: &ExperimentArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    let db = load_oracle(a.oracle.as_deref(), a.no_peephole)?;
    let spec = ExperimentSpec {
        kind: a.kind,
        angles: a.angles,
        denominator: a.denominator,
        eps: a.eps.clone(),
        seed: resolve_seed(a.seed, err),
        timing: !a.no_timing,
    };
    let runs = match a.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .install(|| experiment::collect_runs(&spec, db.as_ref()))?,
        None => experiment::collect_runs(&spec, db.as_ref())?,
    };
    let summary = match &a.out {
        Some(path) => {
            let mut f = std::fs::File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            experiment::write_csv(&spec, &runs, &mut f)?
        }
        None => experiment::write_csv(&spec, &runs, out)?,
    };
    for line in summary.fit_lines() {
        writeln!(err, "{line}")?;
    }
    Ok(EXIT_OK)
}
