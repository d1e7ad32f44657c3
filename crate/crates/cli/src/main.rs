use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

/// Exact verification of Poincaré operators for BGG complexes.
#[derive(Parser, Debug)]
#[command(name = "bgg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a verification suite; exit 1 if any identity fails.
    Verify {
        #[arg(value_enum)]
        target: Target,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Apply one operator to an element read as JSON.
    Apply {
        #[arg(value_enum)]
        operator: OperatorName,
        /// Builtin diagram name or path to a diagram JSON file.
        #[arg(long, default_value = "elasticity")]
        diagram: String,
        /// Input JSON file; stdin when omitted or `-`.
        #[arg(long)]
        input: Option<String>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Slot dimensions, ranks and cohomology of a polynomial sequence.
    Dims {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 4)]
        r: u32,
        /// Last degree of the range (defaults to `--r`).
        #[arg(long)]
        rmax: Option<u32>,
        #[command(flatten)]
        out: OutputOpts,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Target {
    Derham,
    Twisted,
    Bgg,
    Abstract,
    Polyseq,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorName {
    /// Exterior derivative of a polynomial form.
    D,
    /// Koszul operator of a polynomial form.
    Koszul,
    TwistedD,
    TwistedP,
    BggD,
    BggP,
    /// `A = I − G d_V`
    A,
    /// `B = Π(I − d_V G)`
    B,
    /// `F = Σ (PS)^l`
    F,
    FInv,
    Project,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputOpts {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyOpts {
    /// Builtin diagram name or path to a diagram JSON file.
    #[arg(long, default_value = "elasticity")]
    diagram: String,
    /// Sequence name for `polyseq`.
    #[arg(long)]
    name: Option<String>,
    /// Polynomial degree for `polyseq`.
    #[arg(long)]
    r: Option<u32>,
    /// Maximal coefficient degree.
    #[arg(long, default_value_t = 3)]
    rmax: u32,
    /// Space dimension for `derham`.
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random instances for `abstract`.
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Finite complex JSON file for `abstract`.
    #[arg(long)]
    complex: Option<String>,
    #[command(flatten)]
    out: OutputOpts,
}

/// Usage errors exit with 2, failed identities with 1.
pub enum Failure {
    Usage(anyhow::Error),
    Identity,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Usage(e.into())
    }
}

fn num_threads() -> anyhow::Result<usize> {
    match std::env::var("BGG_NUM_THREADS") {
        Ok(s) => {
            let n: usize = s.trim().parse().map_err(|_| {
                anyhow::anyhow!("BGG_NUM_THREADS must be a positive integer, got {s:?}")
            })?;
            anyhow::ensure!(n > 0, "BGG_NUM_THREADS must be positive");
            Ok(n)
        }
        Err(_) => Ok(1),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(num_threads()?)
        .build_global()?;
    match cli.command {
        Command::Verify { target, opts } => commands::verify(target, &opts),
        Command::Apply {
            operator,
            diagram,
            input,
            out,
        } => commands::apply(operator, &diagram, input.as_deref(), &out),
        Command::Dims { name, r, rmax, out } => commands::dims(&name, r, rmax.unwrap_or(r), &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Identity) => ExitCode::from(1),
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
