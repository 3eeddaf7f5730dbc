//! Command-line front end: parameter sweeps, exponent fits and figure data.

mod config;
mod figure;
mod fit;
mod output;
mod sweep;

use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, SweepConfig};

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Unreadable or invalid configuration or input (exit 2).
    Config(String),
    /// Filesystem or serialization failure (exit 1).
    Io(String),
    /// Every row of a run failed to solve (exit 4).
    Solver(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Config(_) => 2,
            CliError::Solver(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "configuration error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Solver(m) => write!(f, "solver error: {m}"),
        }
    }
}

#[derive(Parser)]
#[command(name = "dicke-hp", version, about = "Uncertainty products and entanglement entropy of Dicke-type models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Overrides {
    /// Seed for the Lanczos start vectors.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Largest Hamiltonian (stored nonzeros) a single ED point may build.
    #[arg(long)]
    budget_nnz: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a grid of couplings described by a TOML or JSON file.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        /// Output file (default: the config's, else stdout).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// Fit a power law to a column of a sweep output.
    Fit {
        #[arg(long)]
        input: PathBuf,
        /// Ordinate column.
        #[arg(long, default_value = "hp")]
        column: String,
        /// Abscissa column.
        #[arg(long)]
        x: String,
        /// Use |x - center| as the abscissa.
        #[arg(long, allow_hyphen_values = true)]
        center: Option<f64>,
        /// Abscissa window `lo:hi`.
        #[arg(long)]
        window: Option<String>,
        /// Restrict to the largest decade of abscissae.
        #[arg(long)]
        top_decade: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce the data files behind one figure.
    Figure {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        id: u8,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Cap on the spin count of finite-size curves.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Check a configuration and print it normalized, with its hash.
    ValidateConfig {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn load(path: &Path, o: &Overrides) -> Result<SweepConfig, CliError> {
    let mut cfg = SweepConfig::load(path)?;
    if let Some(seed) = o.seed {
        cfg.ed.seed = seed;
    }
    if let Some(b) = o.budget_nnz {
        cfg.ed.budget_nnz = b;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn set_workers(o: &Overrides) -> Result<(), CliError> {
    if let Some(n) = o.workers {
        if n == 0 {
            return Err(CliError::Config("--workers must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Io(e.to_string()))?;
    }
    Ok(())
}

fn parse_window(s: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Config(format!("window `{s}` is not of the form lo:hi"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (f64, f64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if !(lo < hi) {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn json_bytes(v: &serde_json::Value) -> Result<Vec<u8>, CliError> {
    let mut b = serde_json::to_vec_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    b.push(b'\n');
    Ok(b)
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Sweep {
            config,
            overrides,
            out,
            format,
        } => {
            set_workers(&overrides)?;
            let mut cfg = load(&config, &overrides)?;
            if let Some(f) = format {
                cfg.output.format = f;
            }
            let path = out.or_else(|| cfg.output.path.as_ref().map(PathBuf::from));
            let result = sweep::run_sweep(&cfg)?;
            output::emit(path.as_deref(), &result.table.render(cfg.output.format)?)?;
            eprintln!("{} rows, {} warnings", result.table.rows.len(), result.warnings());
            Ok(result.exit_code() as u8)
        }
        Command::Fit {
            input,
            column,
            x,
            center,
            window,
            top_decade,
            out,
        } => {
            let req = fit::FitRequest {
                column,
                x,
                center,
                window: window.as_deref().map(parse_window).transpose()?,
                top_decade,
            };
            let report = fit::run_fit(&input, &req)?;
            output::emit(out.as_deref(), &json_bytes(&report)?)?;
            Ok(0)
        }
        Command::Figure {
            id,
            out,
            overrides,
            format,
            max_n,
        } => {
            set_workers(&overrides)?;
            let opts = figure::FigureOptions {
                seed: overrides.seed,
                budget_nnz: overrides.budget_nnz,
                format,
                max_n,
            };
            let code = figure::reproduce_figure(id, &out, &opts)?;
            eprintln!("figure {id} written to {}", out.display());
            Ok(code as u8)
        }
        Command::ValidateConfig { config, overrides } => {
            let cfg = load(&config, &overrides)?;
            let doc = serde_json::json!({ "config": cfg, "hash": format!("sha256:{}", cfg.hash()) });
            output::emit(None, &json_bytes(&doc)?)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("dicke-hp: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
