//! `orthorook` — battleship diagrams, orbit dimensions, atlases and
//! verification suites for rook placements in orthogonal root systems.
//!
//! Exit codes: 0 all checks pass, 1 a check found a counterexample,
//! 2 argument or token parse error, 3 structurally invalid input
//! (bad placement, too-small prime, exceeded caps).

mod atlas;
mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use orthorook::placement::RookPlacement;
use orthorook::roots::{parse_root_list, Family, RootSystem};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "orthorook", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TextOrJson {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CsvOrJson {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Render the battleship diagram of a placement.
    Diagram {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        /// Comma-separated root tokens, e.g. "e1, e2+e5, e3-e6".
        #[arg(long, default_value = "")]
        placement: String,
        #[arg(long, value_enum, default_value = "text")]
        format: TextOrJson,
    },
    /// Print both orbit dimension computations and the length statistics.
    Dim {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value = "")]
        placement: String,
    },
    /// Tabulate every placement of a system with its statistics.
    Atlas {
        #[arg(long)]
        family: String,
        #[arg(long)]
        rank: usize,
        /// Output file; written atomically. Stdout when absent.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: CsvOrJson,
        /// Combinatorial budget guard.
        #[arg(long, default_value_t = 8)]
        max_rank: usize,
    },
    /// Run a verification suite; summary on stderr, JSON report on stdout.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[arg(long, default_value = "B")]
        family: String,
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 5)]
        prime: u64,
        /// Sample size for the mackey suite; exhaustive when absent.
        #[arg(long)]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads; the output is identical for any value.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

/// Failures carrying their intended process exit code.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(msg: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: msg.into(),
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: msg.into(),
        }
    }

    pub fn counterexample(msg: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: msg.into(),
        }
    }
}

pub fn build_placement(
    family: &str,
    rank: usize,
    placement: &str,
) -> Result<RookPlacement, CliError> {
    let family: Family = family
        .parse()
        .map_err(|e| CliError::parse(format!("{e}")))?;
    let system = RootSystem::new(family, rank)
        .map_err(|e| CliError::invalid(format!("{e}")))?;
    let roots = parse_root_list(placement).map_err(|e| CliError::parse(format!("{e}")))?;
    RookPlacement::new(&system, &roots).map_err(|e| CliError::invalid(format!("{e}")))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Diagram {
            family,
            rank,
            placement,
            format,
        } => {
            let placement = build_placement(&family, rank, &placement)?;
            let diagram = placement
                .battleship()
                .map_err(|e| CliError::invalid(format!("{e}")))?;
            match format {
                TextOrJson::Text => print!("{}", diagram.render_text()),
                TextOrJson::Json => println!("{}", diagram.render_json()),
            }
            Ok(())
        }
        Command::Dim {
            family,
            rank,
            placement,
        } => {
            let placement = build_placement(&family, rank, &placement)?;
            let diagram = placement
                .battleship()
                .map_err(|e| CliError::invalid(format!("{e}")))?;
            let stats = placement.involution_stats();
            let via_diagram = diagram.plus_count() + diagram.minus_count();
            println!(
                "family {} rank {} placement [{}]",
                placement.system().family(),
                placement.system().rank(),
                placement.tokens()
            );
            println!(
                "l = {}, s = {}, d = {}",
                stats.length, stats.support_size, stats.d_stat
            );
            println!(
                "dim (diagram) = {} [{} plus, {} minus]",
                via_diagram,
                diagram.plus_count(),
                diagram.minus_count()
            );
            println!("dim (weyl)    = {}", stats.dim());
            if stats.dim() != via_diagram as i64 {
                return Err(CliError::counterexample(format!(
                    "dimension formulas disagree: diagram {} vs weyl {}",
                    via_diagram,
                    stats.dim()
                )));
            }
            Ok(())
        }
        Command::Atlas {
            family,
            rank,
            out,
            format,
            max_rank,
        } => atlas::run(&family, rank, out.as_deref(), format == CsvOrJson::Json, max_rank),
        Command::Verify {
            suite,
            family,
            rank,
            prime,
            sample,
            seed,
            jobs,
        } => verify::run(suite, &family, rank, prime, sample, seed, jobs),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
