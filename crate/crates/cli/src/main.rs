//! `kcontact`: build the surgery ledger, run the Seifert construction over
//! it and decide the Kähler obstruction, passing JSON reports between steps.
//!
//! Exit status is 0 on success, 1 when a check fails and 2 on bad input or
//! an unmet hypothesis.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kcontact_core::seifert::DEFAULT_TWIST_BOUND;

use commands::HomologySource;
use report::{write_report, CliError, RunReport};

#[derive(Parser)]
#[command(
    name = "kcontact",
    version,
    about = "Exact surgery, Seifert and Kähler-obstruction calculator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stage {
    Z,
}

#[derive(Subcommand)]
enum Command {
    /// Build the 36-generator manifold X and emit its manifest.
    BuildX {
        #[command(flatten)]
        out: Output,
        /// Stop after the intermediate manifold.
        #[arg(long, value_enum)]
        stop_after: Option<Stage>,
        /// Append the exact Lagrangian configuration check.
        #[arg(long)]
        verify_lagrangian: bool,
    },
    /// Put isotropy p^i on the base surfaces and compute the total space homology.
    Seifert {
        /// build-x report or bare manifest; standard input when omitted.
        manifest: Option<PathBuf>,
        #[arg(short, long)]
        p: String,
        #[arg(long, default_value_t = DEFAULT_TWIST_BOUND)]
        twist_bound: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Decide whether the homology rules out a semi-regular Sasakian structure.
    CheckSasakian {
        /// seifert report or homology report; standard input when omitted.
        input: Option<PathBuf>,
        /// Free rank k of H2, instead of reading a report.
        #[arg(long, requires = "torsion")]
        rank: Option<u64>,
        /// Torsion summands as m:e pairs, e.g. 2:2,4:6.
        #[arg(long, requires = "rank")]
        torsion: Option<String>,
        /// Accept configurations made only of genus-1 curves.
        #[arg(long)]
        genus_one: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Classify the quotient point of C^2 by Z_m acting with exponents j1, j2.
    ClassifyLocalModel {
        m: u64,
        j1: u64,
        j2: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Run the curve-count obstruction for the given genera.
    Obstruct {
        /// Comma-separated genera of the disjoint curves.
        #[arg(long, value_delimiter = ',', required = true)]
        genera: Vec<u32>,
        /// Number of curves, checked against the genera list.
        #[arg(short)]
        b: Option<u64>,
        #[arg(long)]
        genus_one: bool,
        #[command(flatten)]
        out: Output,
    },
}

fn run(cli: Cli) -> Result<(RunReport, Option<PathBuf>), CliError> {
    Ok(match cli.command {
        Command::BuildX {
            out,
            stop_after,
            verify_lagrangian,
        } => (commands::build_x(stop_after.is_some(), verify_lagrangian), out.output),
        Command::Seifert {
            manifest,
            p,
            twist_bound,
            out,
        } => (commands::seifert(manifest.as_deref(), &p, twist_bound)?, out.output),
        Command::CheckSasakian {
            input,
            rank,
            torsion,
            genus_one,
            out,
        } => {
            let src = HomologySource {
                input: input.as_deref(),
                rank,
                torsion: torsion.as_deref(),
            };
            (commands::check_sasakian(src, genus_one)?, out.output)
        }
        Command::ClassifyLocalModel { m, j1, j2, out } => (commands::classify(m, j1, j2)?, out.output),
        Command::Obstruct {
            genera,
            b,
            genus_one,
            out,
        } => (commands::obstruct(&genera, b, genus_one)?, out.output),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (report, output) = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = write_report(&report, output.as_deref()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed checks: {}", report.failed().join(", "));
        ExitCode::from(1)
    }
}
