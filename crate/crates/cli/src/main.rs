use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use evt_accompany_cli::{exit_code, run, Command, Flags, RunConfig};

/// Exact maxima in the Gumbel domain, accompanying laws and their rates.
#[derive(Parser)]
#[command(name = "evt-accompany", version, allow_negative_numbers = true)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact law, approximants and γ_n on an x grid for one n.
    Table(Opts),
    /// Error curve over n with PowerInN and PowerInLogN fits.
    Rates(Opts),
    /// Exact versus closed-form norming constants.
    Norming(Opts),
    /// Check F^n = exp(-e^{-γ}) exp(-Σ/n) on the guarded grid.
    CheckIdentity(Opts),
    /// Monte Carlo maxima in scaled coordinates.
    Simulate(Opts),
}

#[derive(Args)]
struct Opts {
    /// Distribution, e.g. `exp`, `weibull:c=1,p=2,alpha=0,ell=const:1`, `iterlog:k=2,a=1,C=1`.
    #[arg(long)]
    dist: String,
    /// Comma-separated sample sizes.
    #[arg(long)]
    n: Option<String>,
    /// Geometric sample sizes `start:stop:count`.
    #[arg(long = "n-geom")]
    n_geom: Option<String>,
    /// Grid `lo:hi:steps`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Approximants: exact, gumbel, accompanying, two_term, first_order, second_order.
    #[arg(long)]
    approx: Option<String>,
    /// Single evaluation point for `rates` (default: sup over the grid).
    #[arg(long)]
    at: Option<f64>,
    /// CSV output path (default: standard output).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    replications: Option<usize>,
    /// Tolerance for `check-identity`.
    #[arg(long)]
    tol: Option<f64>,
    /// Second-order index ρ ≤ 0.
    #[arg(long)]
    rho: Option<f64>,
    /// Second-order rate `logn:K` or `pow:K:theta`.
    #[arg(long = "a-n")]
    a_n: Option<String>,
}

impl From<Opts> for Flags {
    fn from(o: Opts) -> Self {
        Flags {
            dist: o.dist,
            n: o.n,
            n_geom: o.n_geom,
            x: o.x,
            approx: o.approx,
            at: o.at,
            out: o.out,
            seed: o.seed,
            replications: o.replications,
            tol: o.tol,
            rho: o.rho,
            a_n: o.a_n,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, opts) = match cli.command {
        Cmd::Table(o) => (Command::Table, o),
        Cmd::Rates(o) => (Command::Rates, o),
        Cmd::Norming(o) => (Command::Norming, o),
        Cmd::CheckIdentity(o) => (Command::CheckIdentity, o),
        Cmd::Simulate(o) => (Command::Simulate, o),
    };
    let result = RunConfig::from_flags(command, opts.into()).and_then(|config| run(&config).map(|r| (config, r)));
    match result {
        Ok((config, report)) => {
            let mut stdout = std::io::stdout().lock();
            let written = if config.out.is_some() {
                stdout.write_all(report.summary.as_bytes())
            } else {
                eprint!("{}", report.summary);
                stdout.write_all(report.csv.as_bytes())
            };
            if written.is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()) as u8)
        }
    }
}
