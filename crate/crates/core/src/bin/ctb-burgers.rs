use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ctb_burgers::cli::{reproduce_all, run, CliError, RunArgs, RunConfig, Target};

/// Trigonometric B-spline collocation solver for Burgers' equation.
///
/// Without a subcommand the flags describe a single run.
#[derive(Debug, Parser)]
#[command(name = "ctb-burgers", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one configuration and write the requested outputs.
    Run(Box<RunArgs>),
    /// Re-run published benchmark configurations and compare.
    Reproduce {
        /// Targets to run; all of them when omitted.
        #[arg(value_enum)]
        targets: Vec<Target>,
        /// Directory for tables, profiles and per-target reports.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
}

fn run_once(args: &RunArgs) -> Result<(), CliError> {
    let config = RunConfig::from_map(&args.merged()?)?;
    let summary = run(&config)?;
    if let Some(table) = &summary.table {
        print!("{table}");
    }
    for path in &summary.files {
        eprintln!("wrote {}", path.display());
    }
    Ok(())
}

fn reproduce_targets(targets: &[Target], output_dir: Option<&std::path::Path>) -> Result<(), CliError> {
    let targets = if targets.is_empty() { &Target::ALL[..] } else { targets };
    let mut failed = Vec::new();
    for (target, result) in targets.iter().zip(reproduce_all(targets, output_dir)) {
        let rep = result?;
        print!("{rep}");
        if !rep.passed {
            failed.push(target.name());
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Reproduction(failed.join(", ")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        None => run_once(&cli.run),
        Some(Command::Run(args)) => run_once(args),
        Some(Command::Reproduce {
            targets,
            output_dir,
        }) => reproduce_targets(targets, output_dir.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
