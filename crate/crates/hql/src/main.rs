use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hql::args::{self, Function, Model};
use hql::commands::{self, BesovCommand, SvdOptions, SweepCommand, TreeOptions};
use hql::error::{CliError, EXIT_OK, EXIT_PARSE};
use hql::pool::worker_count;
use hql_core::asymptotics::Precision;
use hql_core::besov::{
    BesovOptions, GridMetric, SweepOptions, DEFAULT_DIVERGE_RATIO, DEFAULT_PAIR_BUDGET, DEFAULT_STABILIZE_TOL,
};
use hql_core::invariants::Exponent;

/// Quasi-isometry invariants of purely real Heintze groups.
///
/// Exit codes: 0 success, 1 failed check or IO error, 2 validation failure,
/// 3 numerical guard tripped, 4 parse error. `classify` also uses 5
/// (distinguished) and 6 (inconclusive).
#[derive(Parser, Debug)]
#[command(name = "hql", version)]
struct Cli {
    /// Seed for every random draw. HQL_SEED, when set, takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a spec and report its invariants as JSON.
    Analyze {
        spec: PathBuf,
        /// Exponent `p,kappa` for the spectrum table; repeatable. Rationals like 3/2 are fine.
        #[arg(short, long = "exponent", value_parser = args::exponent)]
        exponents: Vec<Exponent>,
        #[command(flatten)]
        out: Out,
    },
    /// Compare two specs. Exit 0 isomorphic, 5 distinguished, 6 inconclusive.
    Classify {
        a: PathBuf,
        b: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Singular values of Exp(tJ): pairing, asymptotic and coefficient checks as CSV.
    SvdVerify {
        /// Block sizes, `a..b` inclusive.
        #[arg(long, default_value = "1..5", value_parser = args::inclusive_range)]
        m: (usize, usize),
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', default_value = "1,10,100", value_parser = args::finite)]
        t: Vec<f64>,
        #[arg(long, value_enum, default_value_t = PrecisionArg::Auto)]
        precision: PrecisionArg,
        /// Ratio, alignment and coefficient checks apply from this t on.
        #[arg(long, default_value_t = 1000.0)]
        asymptotic_min_t: f64,
        #[arg(long, default_value_t = 0.02)]
        ratio_tol: f64,
        #[arg(long, default_value_t = 0.999)]
        alignment_min: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Inequality checks on the rooted b-ary tree, as JSON.
    Tree {
        #[arg(long, default_value_t = 2)]
        branching: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// `p,kappa`; repeatable. Defaults to 1,0 2,0 2,1 3,2.
        #[arg(long = "phi", value_parser = args::exponent)]
        phis: Vec<Exponent>,
        /// Random functions per inequality.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Random boundary functions for the shadow-average extension.
        #[arg(long, default_value_t = 10)]
        shadow_trials: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Besov seminorm of one function across refinement levels, as CSV.
    Besov {
        /// x3, diag:MU or custom-csv.
        #[arg(long, value_parser = args::model)]
        model: Model,
        /// pi1, pi2 or csv.
        #[arg(long, value_parser = args::function)]
        function: Function,
        /// `p,kappa` of the Young function.
        #[arg(long, value_parser = args::exponent)]
        phi: Exponent,
        /// Levels `a..b` inclusive.
        #[arg(long, default_value = "4..8", value_parser = args::inclusive_range)]
        levels: (usize, usize),
        /// Points for custom-csv: coordinate columns and a weight column.
        #[arg(long)]
        grid: Option<PathBuf>,
        /// Function values for --function csv, one per grid point.
        #[arg(long)]
        values: Option<PathBuf>,
        /// Quasi-metric for custom-csv: x3, diag:MU, chebyshev or euclidean.
        #[arg(long, default_value = "chebyshev", value_parser = args::grid_metric)]
        metric: GridMetric,
        /// Ahlfors dimension for custom-csv.
        #[arg(long, default_value_t = 2.0)]
        q: f64,
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: Out,
    },
    /// Separation sweep of both coordinate functions over several exponents, as CSV.
    Sweep {
        /// x3 or diag:MU.
        #[arg(long, value_parser = args::model)]
        model: Model,
        /// `p,kappa`; repeatable.
        #[arg(long = "phi", required = true, value_parser = args::exponent)]
        phis: Vec<Exponent>,
        #[arg(long, default_value = "4..8", value_parser = args::inclusive_range)]
        levels: (usize, usize),
        #[command(flatten)]
        sweep: SweepArgs,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Debug)]
struct Out {
    /// Write to this file instead of stdout.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Unordered pairs summed in full before stratified sampling.
    #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
    pair_budget: usize,
    /// Relative change below which the last two levels count as stable.
    #[arg(long, default_value_t = DEFAULT_STABILIZE_TOL)]
    stabilize_tol: f64,
    /// Growth factor of the last level that, with monotone growth, counts as divergence.
    #[arg(long, default_value_t = DEFAULT_DIVERGE_RATIO)]
    diverge_ratio: f64,
}

impl SweepArgs {
    fn options(&self, seed: u64) -> SweepOptions {
        SweepOptions {
            stabilize_tol: self.stabilize_tol,
            diverge_ratio: self.diverge_ratio,
            besov: BesovOptions { pair_budget: self.pair_budget, seed },
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PrecisionArg {
    Double,
    Extended,
    Auto,
}

fn seed(flag: u64) -> Result<u64, CliError> {
    match std::env::var("HQL_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| CliError::Parse(format!("HQL_SEED: not an unsigned integer: {s:?}"))),
        Err(_) => Ok(flag),
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let seed = seed(cli.seed)?;
    let threads = worker_count(cli.threads);
    let (output, out) = match cli.command {
        Command::Analyze { spec, exponents, out } => {
            let e = (!exponents.is_empty()).then_some(exponents.as_slice());
            (commands::analyze(&spec, e)?, out)
        }
        Command::Classify { a, b, out } => (commands::classify(&a, &b)?, out),
        Command::SvdVerify { m, t, precision, asymptotic_min_t, ratio_tol, alignment_min, out } => {
            let precision = match precision {
                PrecisionArg::Double => Precision::Double,
                PrecisionArg::Extended => Precision::Extended,
                PrecisionArg::Auto => Precision::Auto,
            };
            let opts = SvdOptions { m, t, precision, asymptotic_min_t, ratio_tol, alignment_min };
            (commands::svd_verify(&opts)?, out)
        }
        Command::Tree { branching, depth, phis, trials, shadow_trials, out } => {
            let mut opts = TreeOptions { branching, depth, trials, shadow_trials, seed, threads, ..Default::default() };
            if !phis.is_empty() {
                opts.phis = phis.iter().map(args::exponent_f64).collect();
            }
            (commands::tree(&opts)?, out)
        }
        Command::Besov { model, function, phi, levels, grid, values, metric, q, sweep, out } => {
            let cmd = BesovCommand {
                model,
                function,
                phi: args::exponent_f64(&phi),
                levels,
                grid_csv: grid,
                values_csv: values,
                metric,
                q,
                sweep: sweep.options(seed),
            };
            (commands::besov(&cmd)?, out)
        }
        Command::Sweep { model, phis, levels, sweep, out } => {
            let cmd = SweepCommand { model, phis, levels, sweep: sweep.options(seed), threads };
            (commands::sweep(&cmd)?, out)
        }
    };
    commands::emit(&output.stdout, out.output.as_deref())?;
    eprint!("{}", output.stderr);
    Ok(output.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { EXIT_OK as u8 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hql: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
