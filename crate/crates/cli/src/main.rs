use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gwzeta_cli::commands::{cmd_cellular, cmd_check, cmd_euler, cmd_fit, cmd_zeta};
use gwzeta_cli::{CliError, Format, Options, Outcome, EXIT_IO, EXIT_PARSE};

#[derive(Parser)]
#[command(name = "gwzeta", version, about = "Enriched logarithmic zeta functions with GW(F_q) coefficients")]
struct Cli {
    /// Field size; a comma-separated list for `check`.
    #[arg(long, global = true, value_delimiter = ',')]
    q: Vec<u64>,
    /// Number of series coefficients.
    #[arg(long, global = true, default_value_t = 12)]
    order: usize,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enriched series from point counts.
    Zeta { spec: String },
    /// Closed form from cell data, compared with the point-count series.
    Cellular { spec: String },
    /// Recover a dlog-rational closed form from the series.
    Fit { spec: String },
    /// Run invariant suites: all, rings, newton, motivic, signs, closed-forms, ranks, discs, traces, fe, fit.
    Check {
        #[arg(default_value = "all")]
        suite: String,
    },
    /// Compactly supported Euler characteristic from cell data.
    Euler { spec: String },
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let opts = Options {
        q: cli.q.clone(),
        order: cli.order,
        format: match cli.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
    };
    match &cli.command {
        Command::Zeta { spec } => cmd_zeta(spec, &opts),
        Command::Cellular { spec } => cmd_cellular(spec, &opts),
        Command::Fit { spec } => cmd_fit(spec, &opts),
        Command::Check { suite } => cmd_check(suite, &opts),
        Command::Euler { spec } => cmd_euler(spec, &opts),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_PARSE as u8 } else { 0 });
        }
    };
    let outcome = match run(&cli) {
        Ok(outcome) => outcome,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(EXIT_IO as u8);
            }
        }
        None => print!("{}", outcome.output),
    }
    ExitCode::from(outcome.code as u8)
}
