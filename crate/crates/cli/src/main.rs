use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand, ValueEnum};
use killing_core::algebra::{build_killing_algebra, import_structure_constants, JacobiMode, TripleClass};
use killing_core::report::{
    build_report, geometry_report, identify_report, jacobi_report, rep_report, run_all, RepCase,
    RunAllOptions, VerificationReport,
};
use killing_core::Error;

/// Exact verification of the Killing superalgebras of S^7, S^8 and S^15.
#[derive(Parser, Debug)]
#[command(name = "killing", version)]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Cap on worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SphereArg {
    #[arg(long, value_parser = PossibleValuesParser::new(["7", "8", "15"]).map(|s| s.parse::<usize>().unwrap()))]
    sphere: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the structure constants of an algebra.
    Build {
        #[command(flatten)]
        sphere: SphereArg,
        /// Export the table as text.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Verify algebraic identities.
    #[command(subcommand)]
    Verify(Verify),
    /// Identify the algebra from its root system.
    Identify {
        #[command(flatten)]
        sphere: SphereArg,
        /// Use this structure-constant file instead of building.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
    /// Representation-theory checks.
    #[command(subcommand)]
    Rep(Rep),
    /// Killing spinor checks on the sphere.
    #[command(subcommand)]
    Geometry(Geometry),
    /// Aggregate reports.
    #[command(subcommand)]
    Report(Report),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Spinor,
    Sample,
    K0k0k0,
    K0k0k1,
    K0k1k1,
    K1k1k1,
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Check the Jacobi identity on basis triples.
    Jacobi {
        #[command(flatten)]
        sphere: SphereArg,
        #[arg(long, value_enum, default_value = "exhaustive")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        count: u64,
        /// Use this structure-constant file instead of building.
        #[arg(long)]
        algebra: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Case {
    D4,
    B4,
    D8,
}

#[derive(Subcommand, Debug)]
enum Rep {
    /// Evaluate the shipped decomposition fixtures.
    Check {
        #[arg(long, value_enum)]
        case: Case,
    },
}

#[derive(Subcommand, Debug)]
enum Geometry {
    /// Killing equation, squaring and Lie derivative at sampled points.
    Check {
        #[command(flatten)]
        sphere: SphereArg,
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum Report {
    /// Run the whole suite.
    All {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        points: usize,
        /// Structure-constant files replacing the built algebras.
        #[arg(long)]
        algebra: Vec<PathBuf>,
    },
}

fn load(n: usize, file: Option<&PathBuf>) -> Result<killing_core::algebra::KillingAlgebra, Error> {
    match file {
        None => build_killing_algebra(n),
        Some(path) => {
            let ka = import_structure_constants(path)?;
            if ka.sphere() != n {
                return Err(Error::Unsupported {
                    what: "algebra file for this sphere",
                    value: path.display().to_string(),
                });
            }
            Ok(ka)
        }
    }
}

fn execute(command: Command) -> Result<VerificationReport, Error> {
    Ok(match command {
        Command::Build { sphere, export } => {
            let start = Instant::now();
            let ka = build_killing_algebra(sphere.sphere)?;
            build_report(&ka, export.as_deref(), start)?
        }
        Command::Verify(Verify::Jacobi {
            sphere,
            mode,
            seed,
            count,
            algebra,
        }) => {
            let ka = load(sphere.sphere, algebra.as_ref())?;
            let mode = match mode {
                Mode::Exhaustive => JacobiMode::Exhaustive,
                Mode::Spinor => JacobiMode::SpinorTriples,
                Mode::Sample => JacobiMode::Sampled { seed, count },
                Mode::K0k0k0 => JacobiMode::Class(TripleClass::EvenEvenEven),
                Mode::K0k0k1 => JacobiMode::Class(TripleClass::EvenEvenOdd),
                Mode::K0k1k1 => JacobiMode::Class(TripleClass::EvenOddOdd),
                Mode::K1k1k1 => JacobiMode::Class(TripleClass::OddOddOdd),
            };
            jacobi_report(&ka, mode)
        }
        Command::Identify { sphere, algebra } => identify_report(&load(sphere.sphere, algebra.as_ref())?),
        Command::Rep(Rep::Check { case }) => rep_report(match case {
            Case::D4 => RepCase::D4,
            Case::B4 => RepCase::B4,
            Case::D8 => RepCase::D8,
        }),
        Command::Geometry(Geometry::Check { sphere, points, seed }) => {
            geometry_report(sphere.sphere, points, seed)
        }
        Command::Report(Report::All { seed, points, algebra }) => {
            let algebras = algebra
                .iter()
                .map(|p| import_structure_constants(p))
                .collect::<Result<Vec<_>, _>>()?;
            run_all(&RunAllOptions {
                seed,
                points,
                algebras,
            })
        }
    })
}

fn summarize(report: &VerificationReport) {
    if let Some(sections) = report.payload.get("sections").and_then(|s| s.as_array()) {
        for s in sections {
            eprintln!(
                "  {:<16} {:<40} {}",
                s["command"].as_str().unwrap_or(""),
                s["inputs"].to_string(),
                s["status"].as_str().unwrap_or("")
            );
        }
    }
    eprintln!("{}: {} ({} ms)", report.command, report.status, report.wall_ms);
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: --threads: {e}");
            return ExitCode::from(2);
        }
    }
    let report = match execute(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let json = report.to_json();
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, json + "\n") {
                eprintln!("error: --out {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{json}"),
    }
    summarize(&report);
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
