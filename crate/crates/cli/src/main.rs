mod commands;
mod report;
mod scenario;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use report::{CliError, EXIT_INPUT};
use scenario::{resolve, CommonArgs, Extras, Scenario};

/// Steady radially symmetric isothermal flows with swirl in an annulus.
#[derive(Debug, Parser)]
#[command(name = "radflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the smooth flow pattern generated by the boundary data
    Classify(CommonArgs),
    /// Tabulate the smooth flow on a uniform radial grid
    Profile(GridArgs),
    /// Fit a radial shock to an exit pressure or place it at a radius
    Shock(ShockArgs),
    /// Sweep the shock position across the annulus
    Sweep(GridArgs),
    /// Check coefficient identities and energy-estimate multipliers
    Stability(StabilityArgs),
}

#[derive(Debug, Args)]
struct GridArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Number of rows
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct ShockArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Prescribed exit pressure
    #[arg(long, conflicts_with = "rb")]
    pex: Option<f64>,
    /// Shock radius
    #[arg(long)]
    rb: Option<f64>,
    /// Rows in each profile
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Debug, Args)]
struct StabilityArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Slope parameter of the inner boundary condition
    #[arg(long, allow_hyphen_values = true)]
    w0: Option<f64>,
    /// Right side of the radial multiplier equation
    #[arg(long)]
    sigma1: Option<f64>,
    /// Multiplier grid points
    #[arg(long)]
    n: Option<usize>,
}

fn run(cli: Cli) -> Result<i32, CliError> {
    let scenario = |common: &CommonArgs, extras: Extras| -> Result<Scenario, CliError> { resolve(common, extras) };
    match cli.command {
        Command::Classify(c) => commands::classify(&scenario(&c, Extras::default())?),
        Command::Profile(g) => commands::profile(&scenario(&g.common, Extras { n: g.n, ..Default::default() })?),
        Command::Sweep(g) => commands::sweep(&scenario(&g.common, Extras { n: g.n, ..Default::default() })?),
        Command::Shock(a) => {
            let extras = Extras { pex: a.pex, rb: a.rb, n: a.n, ..Default::default() };
            commands::shock(&scenario(&a.common, extras)?)
        }
        Command::Stability(a) => {
            let extras = Extras { w0: a.w0, sigma1: a.sigma1, n: a.n, ..Default::default() };
            commands::stability(&scenario(&a.common, extras)?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT as u8);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            if e.code == EXIT_INPUT {
                eprintln!("run `radflow help` for usage");
            }
            e.code
        }
    };
    ExitCode::from(code as u8)
}
