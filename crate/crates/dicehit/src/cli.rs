use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use dicehit_core::certify::{self, CertifyError};
use dicehit_core::hitprob::{self, HitProbError, HitProbSeries, EXACT_MAX_N};
use dicehit_core::numerics::{NumericsError, PrecisionContext};
use dicehit_core::oracle::{self, McConfig, OracleError};
use dicehit_core::walkmodel::{self, DieModel, TargetKind, WalkError};

use crate::report::{
    self, CertificationReport, EverHitReport, RootsReport, SimulationReport, SolveReport, SCHEMA,
};
use crate::target::{self, TargetError};

/// Overrides the default working precision when `--precision` is absent.
pub const PRECISION_ENV: &str = "DICEHIT_PRECISION";
const DEFAULT_DIGITS: u32 = 50;
const PN_CSV_DIGITS: usize = 15;

#[derive(Debug, Parser)]
#[command(name = "dicehit", version, about = "Expected hitting times of dice-sum walks, with certified bounds for the perfect squares")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certified enclosure of E(s) for the perfect squares with a six-sided die
    Certify(CertifyArgs),
    /// Truncated expectation E_N(s) and overshoot probability P_s(A_N)
    Solve(SolveArgs),
    /// Table of p_n, the probability that the partial sums ever equal n
    Pn(PnArgs),
    /// Roots of the p_n recurrence's characteristic polynomial
    Roots(RootsArgs),
    /// Monte Carlo simulation of the raw process
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Cutoff root; the cutoff is N = K^2
    #[arg(long = "K")]
    pub k: u64,
    #[arg(long = "s", default_value_t = 0)]
    pub s: u64,
    /// Working decimal digits (default: ceil(0.15 K) + 60)
    #[arg(long)]
    pub precision: Option<u32>,
    #[arg(long, default_value = "squares")]
    pub target: String,
    #[arg(long, default_value_t = 6)]
    pub die: u32,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("cutoff").required(true).args(["k", "n"])))]
pub struct SolveArgs {
    /// `squares`, `file:PATH` or `list:A,B,...`
    #[arg(long, default_value = "squares")]
    pub target: String,
    #[arg(long = "K")]
    pub k: Option<u64>,
    #[arg(long = "N")]
    pub n: Option<u64>,
    #[arg(long = "s", default_value_t = 0)]
    pub s: u64,
    #[arg(long, default_value_t = 6)]
    pub die: u32,
    #[arg(long)]
    pub precision: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PnArgs {
    /// Largest n in the table
    #[arg(long)]
    pub max: u64,
    /// Exact fractions (n <= 64)
    #[arg(long)]
    pub exact: bool,
    #[arg(long)]
    pub precision: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub precision: Option<u32>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value = "squares")]
    pub target: String,
    #[arg(long, default_value_t = 1_000_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long = "s", default_value_t = 0)]
    pub s: u64,
    #[arg(long, default_value_t = 6)]
    pub die: u32,
    #[arg(long, default_value_t = oracle::DEFAULT_MAX_STEPS)]
    pub max_steps: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    pub threads: Option<usize>,
    /// Estimate p_n for this n instead of the hitting time
    #[arg(long)]
    pub ever_hit: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precision(String),
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Precision(_) => 3,
            Self::Numeric(_) => 4,
        }
    }
}

impl From<TargetError> for CliError {
    fn from(e: TargetError) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::PrecisionTooLow { .. } | NumericsError::GuardTooLow { .. } => {
                Self::Precision(e.to_string())
            }
            _ => Self::Numeric(e.to_string()),
        }
    }
}

impl From<HitProbError> for CliError {
    fn from(e: HitProbError) -> Self {
        match e {
            HitProbError::NonConvergence { .. } => Self::Numeric(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<CertifyError> for CliError {
    fn from(e: CertifyError) -> Self {
        match e {
            CertifyError::KTooSmall { .. } | CertifyError::CutoffOverflow | CertifyError::Walk(_) => {
                Self::Usage(e.to_string())
            }
            CertifyError::PrecisionInsufficient { .. } => Self::Precision(e.to_string()),
            CertifyError::Roots(inner) => inner.into(),
            _ => Self::Numeric(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::AllCapped { .. } => Self::Numeric(e.to_string()),
            OracleError::Walk(w) => w.into(),
            _ => Self::Usage(e.to_string()),
        }
    }
}

fn precision(explicit: Option<u32>, fallback: u32) -> Result<PrecisionContext, CliError> {
    let digits = match explicit {
        Some(d) => d,
        None => match std::env::var(PRECISION_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{PRECISION_ENV}={v} is not a digit count")))?,
            Err(_) => fallback,
        },
    };
    Ok(PrecisionContext::new(digits)?)
}

fn die(sides: u32) -> Result<DieModel, CliError> {
    Ok(DieModel::new(sides)?)
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Usage(format!("writing {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Usage(format!("writing output: {e}")))
        }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Prints the sweep rate to standard error every few seconds.
struct Progress {
    total: u64,
    done: u64,
    started: Instant,
    last: Instant,
}

impl Progress {
    fn new(total: u64) -> Self {
        let now = Instant::now();
        Self {
            total,
            done: 0,
            started: now,
            last: now,
        }
    }

    fn tick(&mut self) {
        self.done += 1;
        if self.done & 0xffff != 0 || self.last.elapsed().as_secs() < 5 {
            return;
        }
        self.last = Instant::now();
        let secs = self.started.elapsed().as_secs_f64();
        eprintln!(
            "swept {}/{} states ({:.0} states/s)",
            self.done,
            self.total,
            self.done as f64 / secs
        );
    }
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Certify(a) => cmd_certify(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Pn(a) => cmd_pn(a),
        Command::Roots(a) => cmd_roots(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

pub fn cmd_certify(a: CertifyArgs) -> Result<(), CliError> {
    if a.target != "squares" || a.die != 6 {
        return Err(CliError::Usage(
            "certify supports only --target squares with --die 6".to_string(),
        ));
    }
    if a.k < certify::MIN_K {
        return Err(CertifyError::KTooSmall { k: a.k }.into());
    }
    let ctx = precision(a.precision, certify::recommended_digits(a.k))?;
    let started = Instant::now();
    let mut progress = Progress::new(a.k.saturating_mul(a.k).saturating_sub(a.s) + 1);
    let est = certify::certify_squares_with(a.k, &ctx, a.s, |_| progress.tick())?;
    let report = CertificationReport::new(&est, started.elapsed().as_secs_f64());
    let text = match a.out.format.unwrap_or(Format::Json) {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
        Format::Csv => return Err(CliError::Usage("certify writes json or text".to_string())),
    };
    emit(&a.out, &text)
}

pub fn cmd_solve(a: SolveArgs) -> Result<(), CliError> {
    let target = target::parse_target_spec(&a.target)?;
    let die = die(a.die)?;
    let (cutoff, root) = match (a.k, a.n) {
        (Some(k), None) => (
            k.checked_mul(k)
                .ok_or_else(|| CliError::Usage("K^2 does not fit in 64 bits".to_string()))?,
            k,
        ),
        (None, Some(n)) => (n, n.isqrt() + 1),
        _ => return Err(CliError::Usage("give exactly one of --K and --N".to_string())),
    };
    let ctx = precision(a.precision, certify::recommended_digits(root))?;
    let started = Instant::now();
    let mut progress = Progress::new(cutoff.saturating_sub(a.s) + 1);
    let sol = walkmodel::solve_pair_with(&target, &die, cutoff, a.s, &ctx, |_, _, _| progress.tick())?;
    let digits = ctx.working_digits() as usize;
    let certifiable = target.kind() == TargetKind::PerfectSquares && die.sides() == 6;
    let report = SolveReport {
        schema: SCHEMA,
        target: a.target.clone(),
        n: cutoff,
        s: a.s,
        die: die.sides(),
        precision_digits: ctx.working_digits(),
        e_n: report::real(&sol.e_n_value, digits),
        p_overshoot: report::real(&sol.overshoot_prob, digits),
        label: (!certifiable).then(|| "UNCERTIFIED".to_string()),
        runtime_seconds: format!("{:.2}", started.elapsed().as_secs_f64()),
    };
    let text = match a.out.format.unwrap_or(Format::Text) {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
        Format::Csv => return Err(CliError::Usage("solve writes json or text".to_string())),
    };
    emit(&a.out, &text)
}

#[derive(Serialize)]
struct PnRow {
    n: u64,
    p_n: String,
}

pub fn cmd_pn(a: PnArgs) -> Result<(), CliError> {
    if a.max == 0 {
        return Err(CliError::Usage("--max must be at least 1".to_string()));
    }
    let rows: Vec<PnRow> = if a.exact {
        if a.max > EXACT_MAX_N {
            return Err(CliError::Usage(format!("--exact supports --max up to {EXACT_MAX_N}")));
        }
        let series = HitProbSeries::exact(a.max)?;
        (1..=a.max)
            .map(|n| PnRow {
                n,
                p_n: series.get(n).expect("in range").to_string(),
            })
            .collect()
    } else {
        let ctx = precision(a.precision, DEFAULT_DIGITS)?;
        hitprob::pn_table(a.max, &ctx)?
            .into_iter()
            .map(|(n, p)| PnRow {
                n,
                p_n: report::real(&p, PN_CSV_DIGITS),
            })
            .collect()
    };
    let text = match a.out.format.unwrap_or(Format::Csv) {
        Format::Json => json(&rows),
        Format::Csv | Format::Text => report::csv_table(rows.iter().map(|r| (r.n, r.p_n.as_str()))),
    };
    emit(&a.out, &text)
}

pub fn cmd_roots(a: RootsArgs) -> Result<(), CliError> {
    let ctx = precision(a.precision, DEFAULT_DIGITS)?;
    let roots = hitprob::compute_roots(&ctx)?;
    let report = RootsReport::new(&roots, ctx.working_digits());
    let text = match a.out.format.unwrap_or(Format::Text) {
        Format::Json => json(&report),
        Format::Text => report.to_text(),
        Format::Csv => return Err(CliError::Usage("roots writes json or text".to_string())),
    };
    emit(&a.out, &text)
}

pub fn cmd_simulate(a: SimulateArgs) -> Result<(), CliError> {
    let die = die(a.die)?;
    let format = a.out.format.unwrap_or(Format::Text);
    if format == Format::Csv {
        return Err(CliError::Usage("simulate writes json or text".to_string()));
    }
    if let Some(n) = a.ever_hit {
        let est = oracle::simulate_ever_hit(n, a.trials, a.seed, &die)?;
        let report = EverHitReport {
            schema: SCHEMA,
            n,
            seed: a.seed,
            trials: a.trials,
            hits: est.hits,
            estimate: format!("{:.10}", est.estimate),
            std_error: format!("{:.10}", est.std_error),
        };
        let text = match format {
            Format::Json => json(&report),
            _ => format!(
                "n          {}\nestimate   {}\nstd_error  {}\nhits       {}/{}\n",
                n, report.estimate, report.std_error, est.hits, a.trials
            ),
        };
        return emit(&a.out, &text);
    }
    let target = target::parse_target_spec(&a.target)?;
    let cfg = McConfig {
        trials: a.trials,
        seed: a.seed,
        die,
        target,
        start: a.s,
        max_steps: a.max_steps,
    };
    let workers = a
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let result = oracle::simulate_hitting_parallel(&cfg, workers)?;
    let report = SimulationReport::new(&a.target, a.s, die.sides(), a.seed, a.trials, &result);
    let text = match format {
        Format::Json => json(&report),
        _ => report.to_text(),
    };
    emit(&a.out, &text)
}
