use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use phibvp::cli::{run_check, run_degree, run_solve, DegreeArgs, SolveArgs};
use phibvp::solver::Backend;

#[derive(Parser)]
#[command(name = "phibvp", version, about = "Boundary value problems for (phi(u'))' = f(t, u, u') with three-point conditions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    FixedPoint,
    Shooting,
    Both,
}

impl From<BackendArg> for Backend {
    fn from(b: BackendArg) -> Self {
        match b {
            BackendArg::FixedPoint => Backend::FixedPoint,
            BackendArg::Shooting => Backend::Shooting,
            BackendArg::Both => Backend::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve the problem and write the solution table as CSV.
    Solve {
        file: PathBuf,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        backend: Option<BackendArg>,
        /// Refuse to solve unless every hypothesis check passes.
        #[arg(long)]
        require_hypotheses: bool,
    },
    /// Compute the a priori constants and check the hypotheses.
    Check {
        file: PathBuf,
        /// Seed for the sampling checks.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Brouwer degree of the reduced planar map on the domain (rho, kappa).
    Degree {
        file: PathBuf,
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long)]
        kappa: Option<f64>,
        /// Boundary samples (at least 64).
        #[arg(long)]
        samples: Option<usize>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 4 } else { 0 });
        }
    };
    let (mut out, mut err) = (io::stdout().lock(), io::stderr().lock());
    let code = match cli.command {
        Command::Solve { file, out: path, backend, require_hypotheses } => run_solve(
            &SolveArgs { file, out: path, backend: backend.map(Into::into), require_hypotheses },
            &mut out,
            &mut err,
        ),
        Command::Check { file, seed } => run_check(&file, seed, &mut out, &mut err),
        Command::Degree { file, rho, kappa, samples } => {
            run_degree(&DegreeArgs { file, rho, kappa, samples }, &mut out, &mut err)
        }
    };
    ExitCode::from(code as u8)
}
