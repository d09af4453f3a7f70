// SPDX-License-Identifier: MIT OR Apache-2.0

//! `pelt`: changepoint detection, simulation and benchmarking from the
//! command line.

mod bench;
mod detect;
mod error;
mod input;
mod simulate;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pelt_core::simeval::{Growth, SegmentLaw, SimDesign};
use pelt_core::{CostModel, MeanSpec};

use error::{CliError, CliResult};
use input::Column;

/// Reported changepoint `tau` means the change happens after the
/// 1-based observation `tau`.
pub const CONVENTION: &str = "change-after-index";

#[derive(Debug, Parser)]
#[command(name = "pelt", version, about = "Exact changepoint detection with pruned dynamic programming")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Detect changepoints in a series read from CSV.
    Detect(DetectArgs),
    /// Generate a series with known changepoints.
    Simulate(SimulateArgs),
    /// Time and score algorithms over simulated scenarios.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelName {
    Mean,
    Var,
    Meanvar,
    #[value(name = "ar-mdl")]
    ArMdl,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Mu {
    Auto,
    Value(f64),
}

impl FromStr for Mu {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(Self::Auto);
        }
        match s.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(Self::Value(v)),
            _ => Err(format!("expected a finite number or 'auto', got '{s}'")),
        }
    }
}

#[derive(Debug, Clone, Args)]
struct ModelArgs {
    /// Segment cost model.
    #[arg(long, value_enum, default_value = "meanvar")]
    model: ModelName,
    /// Largest AR order considered by ar-mdl.
    #[arg(long = "p-max", default_value_t = 7)]
    p_max: usize,
    /// Fixed mean for the var model; `auto` uses the series mean.
    #[arg(long, default_value = "auto")]
    mu: Mu,
    /// Minimum segment length (at least the model's own minimum).
    #[arg(long = "min-seg")]
    min_seg: Option<usize>,
    /// Penalty: sic, aic, manual:<beta>, concave:<sqrt|log|mdl>[:<beta>].
    #[arg(long, default_value = "sic")]
    penalty: String,
}

impl ModelArgs {
    fn build(&self) -> CliResult<CostModel> {
        let model = match self.model {
            ModelName::Mean => CostModel::mean(),
            ModelName::Var => CostModel::var(match self.mu {
                Mu::Auto => MeanSpec::SeriesMean,
                Mu::Value(v) => MeanSpec::Fixed(v),
            }),
            ModelName::Meanvar => CostModel::mean_var(),
            ModelName::ArMdl => CostModel::ar_mdl(self.p_max)?,
        };
        match self.min_seg {
            Some(l) => Ok(model.with_min_segment_length(l)?),
            None => Ok(model),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgorithmName {
    Pelt,
    Op,
    Bs,
    Sn,
}

#[derive(Debug, Args)]
struct DetectArgs {
    /// Input CSV file, or `-` for stdin.
    input: PathBuf,
    /// Column holding the series: header name or zero-based index.
    #[arg(long)]
    column: Option<Column>,
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_enum, default_value = "pelt")]
    algorithm: AlgorithmName,
    /// Largest changepoint count searched by segment neighbourhood.
    #[arg(long = "Q", default_value_t = 20)]
    q: usize,
    /// Difference the series this many times before detection.
    #[arg(long, default_value_t = 0)]
    diff: usize,
    /// Sample this many triples to test the pruning constant (PELT only).
    #[arg(long = "verify-pruning", default_value_t = 0)]
    verify_pruning: usize,
    /// Seed for the pruning check.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GrowthName {
    /// m = n / 100
    Linear,
    /// m = floor(sqrt(n) / 4)
    Sqrt,
    /// m = 2
    Fixed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LawName {
    /// Zero-mean Gaussian segments with log-normal variances.
    Variance,
    /// Autoregressive segments of random order.
    Ar,
}

#[derive(Debug, Clone, Args)]
struct DesignArgs {
    #[arg(long, value_enum, default_value = "linear")]
    growth: GrowthName,
    /// Exact number of changepoints; overrides --growth.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, value_enum, default_value = "variance")]
    law: LawName,
    /// Minimum distance between changepoints (default 30 for variance, 50 for ar).
    #[arg(long = "min-gap")]
    min_gap: Option<usize>,
    /// Largest AR order drawn by the ar law.
    #[arg(long = "max-order", default_value_t = 3)]
    max_order: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl DesignArgs {
    fn design(&self, n: usize) -> SimDesign {
        let growth = match (self.m, self.growth) {
            (Some(m), _) => Growth::Count(m),
            (None, GrowthName::Linear) => Growth::Linear,
            (None, GrowthName::Sqrt) => Growth::Sqrt,
            (None, GrowthName::Fixed) => Growth::Fixed,
        };
        let mut design = match self.law {
            LawName::Variance => SimDesign::variance(n, growth, self.seed),
            LawName::Ar => SimDesign {
                law: SegmentLaw::Autoregressive { max_order: self.max_order },
                ..SimDesign::autoregressive(n, growth, self.seed)
            },
        };
        if let Some(gap) = self.min_gap {
            design.min_gap = gap;
        }
        design
    }
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Series length.
    #[arg(long)]
    n: usize,
    #[command(flatten)]
    design: DesignArgs,
    /// Series CSV path; the truth goes to `<stem>.truth.json` beside it.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// Series lengths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<usize>,
    #[command(flatten)]
    design: DesignArgs,
    /// Algorithms, comma separated: pelt, op, bs, subbs.
    #[arg(long, value_delimiter = ',', default_value = "pelt,bs")]
    algorithms: Vec<String>,
    #[arg(long, value_enum, default_value = "var")]
    model: ModelName,
    #[arg(long = "p-max", default_value_t = 7)]
    p_max: usize,
    /// Fixed mean for the var model; `auto` uses each series' mean.
    #[arg(long, default_value = "0")]
    mu: Mu,
    #[arg(long = "min-seg")]
    min_seg: Option<usize>,
    /// Linear penalty: sic, aic or manual:<beta>.
    #[arg(long, default_value = "sic")]
    penalty: String,
    #[arg(long, default_value_t = 10)]
    reps: usize,
    /// Distance within which a detection counts as true.
    #[arg(long, default_value_t = 10)]
    window: usize,
    /// Run repetitions in parallel (noisier timings).
    #[arg(long)]
    parallel: bool,
    /// Per-run CSV output path.
    #[arg(long)]
    out: PathBuf,
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Output(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Output(e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Detect(args) => detect::run(&args),
        Command::Simulate(args) => simulate::run(&args),
        Command::Bench(args) => bench::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
