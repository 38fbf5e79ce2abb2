//! `twochoice` command line.
//!
//! Exit codes: 0 on success, 1 when a simulated point hit the step cap or
//! failed, 2 on usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;
use twochoice_core::analysis::{self, DEFAULT_ROOT_TOL};
use twochoice_core::montecarlo::{sweep, DegreeRule, EdgeRule, GraphRule, LogBase, SweepSpec};
use twochoice_core::protocol::DEFAULT_STEP_CAP;
use twochoice_core::ModelParams;

use crate::executor::{default_jobs, ParallelExecutor};
use crate::report::{write_csv, ExactRow, ResultRow, ThresholdJson, EXACT_HEADER, SIMULATE_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CAPPED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "TWOCHOICE_JOBS";

#[derive(Debug, Parser)]
#[command(name = "twochoice", version, about = "Biased 2-choices opinion dynamics: simulation and exact analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Monte Carlo consensus times over a ladder of network sizes (CSV).
    Simulate(SimulateArgs),
    /// Exact mean consensus time on complete graphs (CSV).
    Exact(ExactArgs),
    /// Drift-ratio thresholds and the critical initial fraction (JSON).
    Threshold(ThresholdArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphArg {
    Complete,
    Regular,
    Er,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DegreeRuleArg {
    Fixed,
    CeilLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeRuleArg {
    Fixed,
    Conn,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogBaseArg {
    #[value(name = "e")]
    E,
    #[value(name = "2")]
    Two,
    #[value(name = "10")]
    Ten,
}

impl From<LogBaseArg> for LogBase {
    fn from(b: LogBaseArg) -> Self {
        match b {
            LogBaseArg::E => LogBase::Natural,
            LogBaseArg::Two => LogBase::Two,
            LogBaseArg::Ten => LogBase::Ten,
        }
    }
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub graph: GraphArg,
    /// Comma-separated, strictly increasing network sizes.
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long, default_value_t = 500)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed degree for regular graphs.
    #[arg(long)]
    pub d: Option<usize>,
    /// Degree rule for regular graphs; defaults to `fixed` when --d is given, else `ceil-log`.
    #[arg(long, value_enum)]
    pub d_rule: Option<DegreeRuleArg>,
    /// Fixed edge probability for Erdős–Rényi graphs.
    #[arg(long)]
    pub pedge: Option<f64>,
    /// Edge-probability rule; defaults to `fixed` when --pedge is given, else `conn` (log n / n).
    #[arg(long, value_enum)]
    pub pedge_rule: Option<EdgeRuleArg>,
    #[arg(long, default_value_t = DEFAULT_STEP_CAP)]
    pub step_cap: u64,
    #[arg(long, value_enum, default_value = "e")]
    pub log_base: LogBaseArg,
    /// Draw one random graph per point instead of one per trial.
    #[arg(long)]
    pub reuse_graph: bool,
    #[arg(long, env = JOBS_ENV)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub p: f64,
    #[arg(long, value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
    pub tol: f64,
    /// Classify the regime for this initial fraction.
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            _ => EXIT_CAPPED,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(text.as_bytes()) } else { stdout.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Simulate(a) => cmd_simulate(a, stdout, stderr),
        Command::Exact(a) => cmd_exact(a, stdout),
        Command::Threshold(a) => cmd_threshold(a, stdout),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn with_output<F>(out: &Option<PathBuf>, stdout: &mut dyn Write, f: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> Result<(), CliError>,
{
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn check_n_list(ns: &[usize]) -> Result<(), CliError> {
    if ns.is_empty() {
        return Err(usage("--n-list must name at least one size"));
    }
    if ns.contains(&0) {
        return Err(usage("network sizes must be positive"));
    }
    if ns.windows(2).any(|w| w[0] >= w[1]) {
        return Err(usage("--n-list must be strictly increasing"));
    }
    Ok(())
}

fn graph_rule(a: &SimulateArgs) -> Result<GraphRule, CliError> {
    let base = LogBase::from(a.log_base);
    let regular_flags = a.d.is_some() || a.d_rule.is_some();
    let er_flags = a.pedge.is_some() || a.pedge_rule.is_some();
    match a.graph {
        GraphArg::Complete => {
            if regular_flags || er_flags {
                return Err(usage("complete graphs take no --d/--d-rule/--pedge/--pedge-rule"));
            }
            Ok(GraphRule::Complete)
        }
        GraphArg::Regular => {
            if er_flags {
                return Err(usage("--pedge/--pedge-rule apply only to --graph er"));
            }
            let rule = a.d_rule.unwrap_or(if a.d.is_some() { DegreeRuleArg::Fixed } else { DegreeRuleArg::CeilLog });
            match (rule, a.d) {
                (DegreeRuleArg::Fixed, Some(d)) => Ok(GraphRule::RandomRegular(DegreeRule::Fixed(d))),
                (DegreeRuleArg::Fixed, None) => Err(usage("--d-rule fixed requires --d")),
                (DegreeRuleArg::CeilLog, None) => Ok(GraphRule::RandomRegular(DegreeRule::CeilLog(base))),
                (DegreeRuleArg::CeilLog, Some(_)) => Err(usage("--d conflicts with --d-rule ceil-log")),
            }
        }
        GraphArg::Er => {
            if regular_flags {
                return Err(usage("--d/--d-rule apply only to --graph regular"));
            }
            let rule = a.pedge_rule.unwrap_or(if a.pedge.is_some() { EdgeRuleArg::Fixed } else { EdgeRuleArg::Conn });
            match (rule, a.pedge) {
                (EdgeRuleArg::Fixed, Some(p)) if (0.0..=1.0).contains(&p) => {
                    Ok(GraphRule::ErdosRenyi(EdgeRule::Fixed(p)))
                }
                (EdgeRuleArg::Fixed, Some(p)) => Err(usage(format!("--pedge {p} is outside [0, 1]"))),
                (EdgeRuleArg::Fixed, None) => Err(usage("--pedge-rule fixed requires --pedge")),
                (EdgeRuleArg::Conn, None) => Ok(GraphRule::ErdosRenyi(EdgeRule::ConnectivityThreshold(base))),
                (EdgeRuleArg::Conn, Some(_)) => Err(usage("--pedge conflicts with --pedge-rule conn")),
            }
        }
    }
}

pub fn cmd_simulate(a: &SimulateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let params = ModelParams::new(a.alpha, a.p).map_err(|e| usage(e.to_string()))?;
    check_n_list(&a.n_list)?;
    if a.trials == 0 {
        return Err(usage("--trials must be at least 1"));
    }
    if a.step_cap == 0 {
        return Err(usage("--step-cap must be positive"));
    }
    let rule = graph_rule(a)?;
    let jobs = match a.jobs {
        Some(0) => return Err(usage("--jobs must be at least 1")),
        Some(j) => j,
        None => default_jobs(),
    };
    let executor = ParallelExecutor::new(jobs).map_err(|e| CliError::Io(io::Error::other(e)))?;

    let mut spec = SweepSpec::new(rule, params, a.trials, a.seed);
    spec.step_cap = a.step_cap;
    spec.regenerate_graph_per_trial = !a.reuse_graph;
    writeln!(
        stderr,
        "# log_base={} step_cap={} regenerate_graph_per_trial={} jobs={}",
        LogBase::from(a.log_base),
        spec.step_cap,
        spec.regenerate_graph_per_trial,
        executor.threads()
    )?;

    let points = sweep(&spec, &a.n_list, &executor).map_err(|e| usage(e.to_string()))?;
    let mut code = EXIT_OK;
    let mut rows = Vec::with_capacity(points.len());
    for point in &points {
        match &point.result {
            Ok(stats) => {
                if stats.capped_count > 0 {
                    code = EXIT_CAPPED;
                    writeln!(stderr, "warning: n={} {} of {} trials hit the step cap", point.n, stats.capped_count, a.trials)?;
                }
                rows.push(ResultRow::new(&spec, point.n, point.graph, stats).fields());
            }
            Err(e) => {
                code = EXIT_CAPPED;
                writeln!(stderr, "warning: n={} ({}) failed: {e}", point.n, point.graph)?;
            }
        }
    }
    with_output(&a.out, stdout, |w| Ok(write_csv(w, SIMULATE_HEADER, rows)?))?;
    Ok(code)
}

pub fn cmd_exact(a: &ExactArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    ModelParams::new(a.alpha, a.p).map_err(|e| usage(e.to_string()))?;
    check_n_list(&a.n_list)?;
    let rows = a
        .n_list
        .iter()
        .map(|&n| {
            let time = analysis::exact_consensus_time(n, a.alpha, a.p)?;
            let lower_bound = analysis::lower_bound(n, a.alpha, a.p)?;
            Ok(ExactRow { n, alpha: a.alpha, p: a.p, time, lower_bound }.fields())
        })
        .collect::<Result<Vec<_>, analysis::AnalysisError>>()
        .map_err(|e| usage(e.to_string()))?;
    with_output(&a.out, stdout, |w| Ok(write_csv(w, EXACT_HEADER, rows)?))?;
    Ok(EXIT_OK)
}

pub fn cmd_threshold(a: &ThresholdArgs, stdout: &mut dyn Write) -> Result<i32, CliError> {
    if !(a.alpha > 0.0 && a.alpha < 1.0) {
        return Err(usage(format!("--alpha {} must lie in (0, 1)", a.alpha)));
    }
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(usage("--tol must be positive"));
    }
    if let Some(p) = a.p {
        if !(0.0..1.0).contains(&p) {
            return Err(usage(format!("--p {p} must lie in [0, 1)")));
        }
    }
    let report = analysis::threshold_report(a.alpha, a.tol).map_err(|e| usage(e.to_string()))?;
    let json = ThresholdJson::new(&report, a.p);
    with_output(&a.out, stdout, |w| {
        serde_json::to_writer_pretty(&mut *w, &json)?;
        writeln!(w)?;
        Ok(())
    })?;
    Ok(EXIT_OK)
}
