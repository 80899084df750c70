//! `usptrace`: trace laws on USp(2g), alcove geometry and genus-2 Frobenius
//! statistics from the command line.
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical-accuracy failure,
//! 4 internal-consistency failure (e.g. a point count rejected by Weil
//! validation), 1 anything else (I/O).

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Format;

#[derive(Debug, Parser)]
#[command(name = "usptrace", version, about = "Trace distributions on USp(2g) and genus-2 Frobenius statistics")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Output file (default: standard output).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

/// Which random variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Trace on USp(2g).
    Tau,
    /// Trace on SU(2)×SU(2) ⊂ USp(4).
    Rho,
    /// Second elementary symmetric function on USp(4).
    Tau2,
    /// tau2 + 1.
    Chi2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Auto,
    Hypergeometric,
    Legendre,
    Elliptic,
    Meijer,
    Slice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Sample,
}

#[derive(Debug, Clone, Args)]
pub struct Law {
    #[arg(long, value_enum, default_value = "tau")]
    pub which: Which,
    /// Rank g (1, 2 or 3 for tau; 2 for the others).
    #[arg(long, default_value_t = 2)]
    pub g: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density on a uniform grid (CSV columns x,f).
    Density {
        #[command(flatten)]
        law: Law,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Grid start (default: left end of the support).
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        /// Grid end (default: right end of the support).
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        /// Number of grid points, ends included.
        #[arg(long, default_value_t = 401)]
        n: usize,
    },
    /// Cumulative distribution function on a uniform grid (x,F).
    Cdf {
        #[command(flatten)]
        law: Law,
        #[arg(long, allow_hyphen_values = true)]
        xmin: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        xmax: Option<f64>,
        #[arg(long, default_value_t = 401)]
        n: usize,
    },
    /// Characteristic function E[cos tX] on a grid of t (t,phi).
    Charfn {
        #[command(flatten)]
        law: Law,
        #[arg(long, default_value_t = 0.0)]
        tmin: f64,
        #[arg(long, default_value_t = 10.0)]
        tmax: f64,
        #[arg(long, default_value_t = 101)]
        n: usize,
    },
    /// Exact moments M_0, …, M_{count−1}.
    Moments {
        #[command(flatten)]
        law: Law,
        #[arg(long, default_value_t = 11)]
        count: usize,
    },
    /// Exact samples from the Weyl measure: θ_j, t_j = 2cos θ_j and the trace.
    Sample {
        #[arg(long, default_value_t = 2)]
        g: usize,
        #[arg(long, default_value_t = 1000)]
        n: usize,
    },
    /// Membership of s = (s_1, …, s_g) in the symmetric alcove.
    Alcove {
        #[arg(long)]
        g: usize,
        /// Comma-separated s_1,…,s_g.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        s: Vec<f64>,
    },
    /// Validate a genus-2 Weil polynomial from a curve, from point counts, or
    /// from unitarised coefficients.
    WeilValidate(WeilArgs),
    /// Scan genus-2 curves over F_p and compare with the USp(4) law.
    Curves {
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value = "sample")]
        mode: Mode,
        /// Number of sampled models (sample mode).
        #[arg(long, default_value_t = 100_000)]
        n: u64,
        /// With --format csv: also write the JSON summary here.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Test hook: perturb N1 of the first model by this amount.
        #[arg(long, hide = true, default_value_t = 0, allow_hyphen_values = true)]
        inject_corrupt_count: i64,
    },
}

#[derive(Debug, Clone, Args)]
pub struct WeilArgs {
    #[arg(long)]
    pub p: Option<u64>,
    /// f_0,…,f_d of y² = f(x) (needs --p).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub curve: Option<Vec<i64>>,
    #[arg(long, allow_hyphen_values = true)]
    pub n1: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub n2: Option<i64>,
    /// Unitarised coefficients (floating-point route, no --p needed).
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a2: Option<f64>,
}

/// Errors that carry their own exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
}

impl std::error::Error for CliError {}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    use usptrace::Error as E;
    if err.downcast_ref::<CliError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<E>() {
        Some(E::Accuracy { .. }) => 3,
        Some(E::CountingBug { .. }) => 4,
        Some(_) => 2,
        None => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = exit_code(&e);
            match e.downcast_ref::<usptrace::Error>() {
                Some(usptrace::Error::CountingBug { .. }) => {
                    eprintln!("error: Weil validation failed: {e:#}");
                }
                _ => eprintln!("error: {e:#}"),
            }
            ExitCode::from(code)
        }
    }
}
