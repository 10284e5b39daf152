//! `entdis` command-line front end.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use entdis::certify::Direction;
use entdis::search::OptimizerConfig;

#[derive(Parser, Debug)]
#[command(
    name = "entdis",
    version,
    about = "One-way LOCC distinguishability of maximally entangled states"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Base seed; restart r uses seed XOR r.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random restarts of the witness search.
    #[arg(long, global = true, default_value_t = 64)]
    pub restarts: usize,
    /// Residual below which a witness counts as exact.
    #[arg(long, global = true, default_value_t = 1e-12)]
    pub tol_success: f64,
    /// Residual above which the search is a clear failure.
    #[arg(long, global = true, default_value_t = 1e-6)]
    pub tol_floor: f64,
    /// Descent iterations per restart.
    #[arg(long, global = true, default_value_t = 2000)]
    pub max_iterations: usize,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Output format; csv is available for `sweep` only (its default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

impl Global {
    pub fn optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            restarts: self.restarts,
            max_iterations: self.max_iterations,
            success_tol: self.tol_success,
            failure_floor: self.tol_floor,
            seed: self.seed,
        }
    }
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq)]
pub enum DirectionArg {
    AToB,
    BToA,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Direction {
        match d {
            DirectionArg::AToB => Direction::AToB,
            DirectionArg::BToA => Direction::BToA,
        }
    }
}

#[derive(ValueEnum, Copy, Clone, Debug, PartialEq, Eq)]
pub enum GenKind {
    Theorem1,
    Theorem2,
    Bell,
    Explicit,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write a set file.
    Gen {
        kind: GenKind,
        #[arg(long)]
        d: Option<usize>,
        /// Block-construction phases as `re,im`.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        gamma: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<String>,
        /// Labels `m,n` for `bell`.
        #[arg(long, num_args = 1..)]
        indices: Vec<String>,
        /// Set file to rewrite as explicit unitaries (for `explicit`).
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Certify or search in both directions and report verdicts.
    Decide { set: PathBuf },
    /// Run the exact provers in one direction.
    Certify {
        set: PathBuf,
        #[arg(long, value_enum, default_value = "a-to-b")]
        direction: DirectionArg,
    },
    /// Run the witness search in one direction.
    Search {
        set: PathBuf,
        #[arg(long, value_enum, default_value = "a-to-b")]
        direction: DirectionArg,
    },
    /// Monte-Carlo success rate of the protocol defined by a measurement.
    Simulate {
        set: PathBuf,
        /// Measurement file, or a `search` report that contains one.
        #[arg(long, conflicts_with = "witness", required_unless_present = "witness")]
        povm: Option<PathBuf>,
        /// Witness file, or a `search` report; expanded to its orbit measurement.
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long, value_enum, default_value = "a-to-b")]
        direction: DirectionArg,
    },
    /// Size table of the cover construction against `⌈d/2⌉ + 2`.
    Sweep {
        #[arg(long, default_value_t = 4)]
        d_min: usize,
        #[arg(long, default_value_t = 60)]
        d_max: usize,
    },
    /// Re-check a certificate against a set; exit 1 if it does not hold.
    Verify { certificate: PathBuf, set: PathBuf },
}

/// Why a command did not finish with exit code 0.
pub enum Failure {
    /// The input was malformed or rejected (exit 2).
    Input(anyhow::Error),
    /// A verification ran and came out false (exit 1).
    Refuted(String),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

fn configure_threads() -> anyhow::Result<()> {
    let n = match std::env::var("ENTDIS_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| anyhow::anyhow!("ENTDIS_THREADS must be an integer, got {v:?}"))?,
        Err(_) => 0,
    };
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    let g = &cli.global;
    if g.format == Some(Format::Csv) && !matches!(cli.command, Command::Sweep { .. }) {
        return Err(Failure::Input(anyhow::anyhow!(
            "--format csv is only available for sweep"
        )));
    }
    match cli.command {
        Command::Gen {
            kind,
            d,
            omega,
            gamma,
            sigma,
            indices,
            input,
        } => commands::gen(
            g,
            kind,
            d,
            [omega, gamma, sigma],
            &indices,
            input.as_deref(),
        ),
        Command::Decide { set } => commands::decide(g, &set),
        Command::Certify { set, direction } => commands::certify(g, &set, direction.into()),
        Command::Search { set, direction } => commands::search(g, &set, direction.into()),
        Command::Simulate {
            set,
            povm,
            witness,
            trials,
            direction,
        } => commands::simulate(
            g,
            &set,
            povm.as_deref(),
            witness.as_deref(),
            trials,
            direction.into(),
        ),
        Command::Sweep { d_min, d_max } => commands::sweep(g, d_min, d_max),
        Command::Verify { certificate, set } => commands::verify(g, &certificate, &set),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refuted(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
