use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fiberphase::scenario::{self, Scenario};
use fiberphase::{Error, Result};

#[derive(Parser)]
#[command(
    name = "fiberphase",
    version,
    about = "Photon geometric phases along a curved fiber"
)]
struct Cli {
    /// Output directory; overrides `output_dir` from the config.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print nothing on stdout.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write results.csv, summary.json and plot_*.dat.
    Run { config: PathBuf },
    /// Run the scenario's `sweep` block and write sweep.csv and sweep_summary.json.
    Sweep { config: PathBuf },
    /// Run the built-in self-checks.
    Check,
}

fn load(config: &Path, out: Option<PathBuf>) -> Result<Scenario> {
    let mut s = Scenario::load(config).map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(
            io.kind(),
            format!("{}: {io}", config.display()),
        )),
        other => other,
    })?;
    if let Some(out) = out {
        s.output_dir = out;
    }
    Ok(s)
}

fn execute(cli: Cli) -> Result<bool> {
    let say = |line: &str| {
        if !cli.quiet {
            println!("{line}");
        }
    };
    match &cli.command {
        Command::Run { config } => {
            let s = load(config, cli.out.clone())?;
            let report = scenario::run(&s)?;
            for w in report.warnings() {
                eprintln!("warning: {w}");
            }
            for file in scenario::write_outputs(&report, &s.output_dir)? {
                say(&file.display().to_string());
            }
            for h in &report.summary.helicities {
                say(&format!(
                    "sigma {:+}: geometric {:.9} analytic {:.9}",
                    h.sigma, h.phase_geometric, h.phase_analytic
                ));
            }
            Ok(true)
        }
        Command::Sweep { config } => {
            let s = load(config, cli.out.clone())?;
            let report = scenario::sweep(&s)?;
            for w in &report.summary.warnings {
                eprintln!("warning: {w}");
            }
            for file in scenario::write_sweep(&report, &s.output_dir)? {
                say(&file.display().to_string());
            }
            Ok(true)
        }
        Command::Check => {
            let outcomes = scenario::self_check()?;
            for o in &outcomes {
                say(&format!(
                    "{} {}: {}",
                    if o.passed { "PASS" } else { "FAIL" },
                    o.name,
                    o.detail
                ));
            }
            Ok(outcomes.iter().all(|o| o.passed))
        }
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(scenario::exit_code(&e) as u8)
        }
    }
}
