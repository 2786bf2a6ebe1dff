use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use otto_cli::{configure_threads, parse_config, run, CliError, Mode, ValidationLevel};

#[derive(Clone, Copy, ValueEnum)]
enum Command {
    Simulate,
    Sweep,
    Ldf,
    Histogram,
}

impl From<Command> for Mode {
    fn from(c: Command) -> Self {
        match c {
            Command::Simulate => Mode::Simulate,
            Command::Sweep => Mode::Sweep,
            Command::Ldf => Mode::Ldf,
            Command::Histogram => Mode::Histogram,
        }
    }
}

/// Finite-time quantum Otto engine with a squeezed hot reservoir.
///
/// Exit status: 0 ok, 1 i/o, 2 schema, 3 range, 4 numerical, 5 regime.
#[derive(Parser)]
#[command(name = "otto", version)]
struct Args {
    #[arg(value_enum)]
    command: Command,
    /// Flat TOML run document.
    #[arg(long)]
    config: PathBuf,
    /// Output file (stdout when absent); overrides `output`.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Monte Carlo seed; overrides `seed`.
    #[arg(long)]
    seed: Option<u64>,
    /// Strict invariant checks on the base configuration.
    #[arg(long)]
    check: bool,
}

fn execute(args: Args) -> Result<(), CliError> {
    configure_threads(std::env::var("OTTO_THREADS").ok().as_deref())?;
    let text = std::fs::read_to_string(&args.config)?;
    let mut spec = parse_config(&text)?;
    let mode = Mode::from(args.command);
    if text
        .parse::<toml::Table>()
        .is_ok_and(|t| t.contains_key("mode"))
        && spec.mode != mode
    {
        return Err(CliError::schema(
            "mode",
            format!(
                "document says {} but the command is {}",
                spec.mode.as_str(),
                mode.as_str()
            ),
        ));
    }
    spec.mode = mode;
    if mode == Mode::Sweep && spec.sweep.is_none() {
        return Err(CliError::schema("sweep_axis", "required in sweep mode"));
    }
    if let Some(out) = args.out {
        spec.output_path = Some(out);
    }
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    if args.check {
        spec.validation = ValidationLevel::Strict;
    }
    if let Some(summary) = run(&spec)? {
        eprintln!("{summary}");
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Args::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("otto: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
