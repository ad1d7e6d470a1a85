//! Command-line front end. [`run`] does all the work and returns the exit
//! code together with what should go to stdout and stderr, so the binary is
//! a thin wrapper and the commands can be tested in-process.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a mathematical invariant
//! failed (always a bug).

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::cube::{Cube, InducedSubgraph};
use crate::error::{Error, Result};
use crate::exhaustive::{enumerate_and_verify, EnumerationPlan, Strategy, DEFAULT_BUDGET};
use crate::exterior::WeightConfig;
use crate::operator::{build_matrix, spectral_report, verify_square_identity, SpectralReport, SquareIdentityReport};
use crate::scalars::{parse_rational, QuadraticScalar, Rational, Scalar, ScalarMode, DEFAULT_TAU};
use crate::witness::{default_mode, weighted_scan, witness};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sensitivity",
    version,
    about = "Operator identities, eigenvector witnesses and exhaustive checks on the boolean cube"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the matrix of A and check A² = λ(v)·I, trace and eigenspace split.
    VerifyOperator(VerifyOperatorArgs),
    /// Extract an eigenvector witness for a large induced subgraph.
    Witness(WitnessArgs),
    /// Enumerate subsets of a small cube and record max induced degrees.
    Exhaustive(ExhaustiveArgs),
    /// Run the witness pipeline for each weight ratio C in a grid.
    WeightedScan(WeightedScanArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Auto,
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Args)]
pub struct Common {
    #[arg(long, value_enum, default_value = "auto")]
    pub mode: ModeArg,
    /// Relative tolerance in float mode.
    #[arg(long, default_value_t = DEFAULT_TAU)]
    pub tau: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

impl Common {
    fn mode(&self, n: u32) -> Result<ScalarMode> {
        let mode = match self.mode {
            ModeArg::Auto => match default_mode(n) {
                ScalarMode::Float { .. } => ScalarMode::Float { tau: self.tau },
                exact => exact,
            },
            ModeArg::Exact => ScalarMode::Exact,
            ModeArg::Float => ScalarMode::Float { tau: self.tau },
        };
        mode.validate()?;
        Ok(mode)
    }
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Vector coordinates v_1..v_n, comma separated rationals.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "lambda", conflicts_with_all = ["a", "b", "c"])]
    pub v: Option<Vec<String>>,
    /// Covector coordinates λ_1..λ_n.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "v")]
    pub lambda: Option<Vec<String>>,
    /// Uniform covector weight (λ_k = a).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "c")]
    pub a: Option<String>,
    /// Uniform vector weight (v_ℓ = b).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "c")]
    pub b: Option<String>,
    /// Weight ratio: a = C, b = 1/C.
    #[arg(long = "C", id = "c", allow_hyphen_values = true)]
    pub c: Option<String>,
}

impl WeightArgs {
    fn dimension_hint(&self) -> Option<u32> {
        self.v.as_ref().map(|v| v.len() as u32)
    }

    fn resolve(&self, n: u32) -> Result<WeightConfig> {
        if let (Some(v), Some(lambda)) = (&self.v, &self.lambda) {
            let v = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            let lambda = lambda.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            if v.len() as u32 != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() as u32 });
            }
            return WeightConfig::new(v, lambda);
        }
        if let Some(c) = &self.c {
            return WeightConfig::with_ratio(n, &parse_rational(c)?);
        }
        let a = self.a.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| crate::scalars::integer(1));
        let b = self.b.as_deref().map(parse_rational).transpose()?.unwrap_or_else(|| crate::scalars::integer(1));
        WeightConfig::uniform(n, a, b)
    }
}

#[derive(Debug, Args)]
pub struct VerifyOperatorArgs {
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub weights: WeightArgs,
    /// Random probe vectors for the projector identities.
    #[arg(long, default_value_t = 20)]
    pub probes: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the matrix as `row col value` triplets to this file.
    #[arg(long)]
    pub dump_matrix: Option<PathBuf>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Subgraph file, inline list `00,01,11`, or `random:<size>:<seed>`.
    #[arg(long)]
    pub subgraph: String,
    #[arg(long)]
    pub n: Option<u32>,
    #[command(flatten)]
    pub weights: WeightArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ExhaustiveArgs {
    #[arg(long)]
    pub n: u32,
    /// Subset size; defaults to 2^{n−1} + 1.
    #[arg(long)]
    pub size: Option<usize>,
    /// `exhaustive` or `random:<count>:<seed>`.
    #[arg(long, default_value = "exhaustive")]
    pub strategy: String,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct WeightedScanArgs {
    #[arg(long)]
    pub subgraph: String,
    #[arg(long)]
    pub n: Option<u32>,
    /// Comma separated positive ratios C.
    #[arg(long = "C-grid", value_delimiter = ',', required = true)]
    pub c_grid: Vec<String>,
    #[command(flatten)]
    pub common: Common,
}

/// Result of one CLI invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl Into<String>) -> Self {
        Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: message.into() }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome::usage(text)
            };
        }
    };
    match execute(&cli.command) {
        Ok(outcome) => outcome,
        Err(e) => {
            let mut msg = format!("error: {e}\n");
            if matches!(e, Error::RankDetectionFailed { .. } | Error::ResidualTooLarge { .. }) {
                msg.push_str("hint: rerun with --mode exact\n");
            }
            Outcome::usage(msg)
        }
    }
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::VerifyOperator(args) => verify_operator(args),
        Command::Witness(args) => run_witness(args),
        Command::Exhaustive(args) => run_exhaustive(args),
        Command::WeightedScan(args) => run_weighted_scan(args),
    }
}

fn render<T: Serialize>(value: &T, format: Format) -> String {
    let json = serde_json::to_value(value).expect("reports serialise");
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("valid json");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            flatten_text(&json, "", &mut out);
            out
        }
    }
}

fn flatten_text(value: &Value, prefix: &str, out: &mut String) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten_text(v, &join(k), out);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_text(v, &join(&i.to_string()), out);
            }
        }
        Value::String(s) if s.contains('\n') => {
            out.push_str(&format!("{prefix}: {}\n", s.trim_end().replace('\n', " ")));
        }
        Value::String(s) => out.push_str(&format!("{prefix}: {s}\n")),
        other => out.push_str(&format!("{prefix}: {other}\n")),
    }
}

fn finish<T: Serialize>(value: &T, format: Format, ok: bool) -> Outcome {
    Outcome {
        code: if ok { EXIT_OK } else { EXIT_INVARIANT },
        stdout: render(value, format),
        stderr: if ok { String::new() } else { "invariant failure: this is a bug\n".into() },
    }
}

#[derive(Debug, Serialize)]
struct OperatorOutput {
    n: u32,
    mode: &'static str,
    pairing: String,
    square_identity: SquareIdentityReport,
    spectral: SpectralReport,
    ok: bool,
}

fn operator_checks<S: Scalar>(args: &VerifyOperatorArgs, w: &WeightConfig, mode: ScalarMode) -> Result<OperatorOutput> {
    let matrix = build_matrix::<S>(w)?;
    if let Some(path) = &args.dump_matrix {
        write_file(path, &matrix.dump())?;
    }
    let square = verify_square_identity(&matrix, w, mode.tau())?;
    let spectral = spectral_report(&matrix, w, args.probes, args.seed, mode.tau())?;
    Ok(OperatorOutput {
        n: w.dim(),
        mode: mode.name(),
        pairing: square.pairing.clone(),
        ok: square.holds && spectral.ok,
        square_identity: square,
        spectral,
    })
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))
}

fn verify_operator(args: &VerifyOperatorArgs) -> Result<Outcome> {
    let n = match (args.n, args.weights.dimension_hint()) {
        (Some(n), _) => n,
        (None, Some(n)) => n,
        (None, None) => return Err(Error::Parse("--n is required unless --v is given".into())),
    };
    let w = args.weights.resolve(n)?;
    let mode = args.common.mode(n)?;
    let output = match mode {
        ScalarMode::Exact => operator_checks::<QuadraticScalar>(args, &w, mode)?,
        ScalarMode::Float { .. } => operator_checks::<f64>(args, &w, mode)?,
    };
    Ok(finish(&output, args.common.format, output.ok))
}

/// Resolves a subgraph source: `random:<size>:<seed>`, a file path, or an
/// inline comma separated vertex list.
pub fn load_subgraph(source: &str, n: Option<u32>) -> Result<InducedSubgraph> {
    if let Some(spec) = source.strip_prefix("random:") {
        let n = n.ok_or_else(|| Error::Parse("random subgraphs need --n".into()))?;
        let (size, seed) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected random:<size>:<seed>, got {source:?}")))?;
        let size: usize = size.parse().map_err(|_| Error::Parse(format!("bad size {size:?}")))?;
        let seed: u64 = seed.parse().map_err(|_| Error::Parse(format!("bad seed {seed:?}")))?;
        return InducedSubgraph::random(Cube::new(n)?, size, seed);
    }
    let path = Path::new(source);
    let h = if path.is_file() {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        InducedSubgraph::parse_text(&text, n)?
    } else {
        InducedSubgraph::parse_text(&source.replace(',', "\n"), n)?
    };
    if h.is_empty() {
        return Err(Error::EmptySubgraph);
    }
    Ok(h)
}

fn run_witness(args: &WitnessArgs) -> Result<Outcome> {
    let h = load_subgraph(&args.subgraph, args.n.or(args.weights.dimension_hint()))?;
    let w = args.weights.resolve(h.dim())?;
    let report = witness(&w, &h, args.common.mode(h.dim())?)?;
    Ok(finish(&report, args.common.format, report.certified))
}

fn run_weighted_scan(args: &WeightedScanArgs) -> Result<Outcome> {
    let h = load_subgraph(&args.subgraph, args.n)?;
    let grid: Vec<Rational> = args.c_grid.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
    let reports = weighted_scan(&h, &grid, args.common.mode(h.dim())?)?;
    let ok = reports.iter().all(|r| r.certified);
    Ok(finish(&reports, args.common.format, ok))
}

fn parse_strategy(s: &str) -> Result<Strategy> {
    if s == "exhaustive" {
        return Ok(Strategy::Exhaustive);
    }
    let bad = || Error::Parse(format!("expected exhaustive or random:<count>:<seed>, got {s:?}"));
    let rest = s.strip_prefix("random:").ok_or_else(bad)?;
    let (count, seed) = match rest.split_once(':') {
        Some((c, seed)) => (c, Some(seed.parse::<u64>().map_err(|_| bad())?)),
        None => (rest, None),
    };
    Ok(Strategy::RandomSample { count: count.parse().map_err(|_| bad())?, seed })
}

fn run_exhaustive(args: &ExhaustiveArgs) -> Result<Outcome> {
    let mut plan = EnumerationPlan::exhaustive(args.n).with_shards(args.shards).with_budget(args.budget);
    plan.strategy = parse_strategy(&args.strategy)?;
    if let Some(size) = args.size {
        plan.subset_size = size;
    }
    let report = enumerate_and_verify(&plan)?;
    Ok(finish(&report, args.format, report.violations == 0))
}
