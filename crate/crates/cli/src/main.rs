use std::process::ExitCode;

use bbgroups::series::DEFAULT_ORDER;
use bbgroups::triangulation::{BuildScript, TriangulationKind};
use bbgroups_cli::commands::{self, ExportKind, GenerateSource, Outcome};
use bbgroups_cli::report::Settings;
use bbgroups_cli::{CliError, GraphDocument};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(version, about = "Invariants of right-angled Artin and Bestvina-Brady groups", long_about = None)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Special,
    ExtraSpecial,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full invariant report as JSON.
    Report {
        path: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
        /// `q` or `p<prime>`.
        #[arg(long, default_value = "q")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sample points per component in the oracle cross-check.
        #[arg(long, default_value_t = 5)]
        points: usize,
        #[arg(long)]
        max_subset_size: Option<usize>,
        #[arg(long)]
        assume_simply_connected: bool,
    },
    /// Build a special or extra-special disk triangulation.
    Generate {
        #[arg(value_enum)]
        kind: Kind,
        /// JSON build script.
        #[arg(long, conflicts_with = "seed")]
        steps: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of random gluing steps.
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Emit not_artin and not_arrangement certificates.
    Distinguish {
        path: String,
        #[arg(long)]
        assume_simply_connected: bool,
    },
    /// Compare claimed jump loci with independent membership oracles.
    Crosscheck {
        path: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long)]
        assume_simply_connected: bool,
    },
    /// Print a presentation or Alexander matrix.
    Export {
        path: String,
        #[arg(value_enum)]
        what: ExportKind,
        #[arg(long)]
        assume_simply_connected: bool,
    },
}

fn run(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Report {
            path,
            order,
            field,
            seed,
            points,
            max_subset_size,
            assume_simply_connected,
        } => commands::report(
            &GraphDocument::read(&path)?,
            Settings {
                order,
                field,
                seed,
                points,
                max_subset_size,
                assume_simply_connected,
            },
        ),
        Command::Generate {
            kind,
            steps,
            seed,
            count,
            out,
        } => {
            let source = match (steps, seed) {
                (Some(p), _) => {
                    let text = std::fs::read_to_string(&p).map_err(|e| CliError::Input(format!("{p}: {e}")))?;
                    let script: BuildScript = serde_json::from_str(&text).map_err(|e| {
                        CliError::Input(format!("{p}: line {}, column {}: {e}", e.line(), e.column()))
                    })?;
                    GenerateSource::Script(script)
                }
                (None, Some(seed)) => GenerateSource::Random { seed, count },
                (None, None) => return Err(CliError::Input("pass --steps or --seed".into())),
            };
            let kind = match kind {
                Kind::Special => TriangulationKind::Special,
                Kind::ExtraSpecial => TriangulationKind::ExtraSpecial,
            };
            let json = commands::generate(kind, &source)?.to_json();
            match out {
                Some(path) => {
                    std::fs::write(&path, json).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
                    Ok(Outcome { stdout: String::new(), code: 0 })
                }
                None => Ok(Outcome { stdout: json, code: 0 }),
            }
        }
        Command::Distinguish {
            path,
            assume_simply_connected,
        } => commands::distinguish_outcome(&GraphDocument::read(&path)?, assume_simply_connected),
        Command::Crosscheck {
            path,
            seed,
            points,
            assume_simply_connected,
        } => commands::crosscheck_outcome(&GraphDocument::read(&path)?, seed, points, assume_simply_connected),
        Command::Export {
            path,
            what,
            assume_simply_connected,
        } => commands::export(&GraphDocument::read(&path)?, what, assume_simply_connected),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    match run(args.command) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            if outcome.code == 3 {
                eprintln!("error: oracle disagreement; see \"disagreements\" for the failing points");
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
