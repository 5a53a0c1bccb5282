use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use abck::d6::{PairM, PolyhedronRow};
use abck::export::{mesh_json, patch_json, write_obj, write_off, DEFAULT_PRECISION};
use abck::lift::{format_table, printed_vs_resolved};
use abck::polyhedra::{abck_polyhedron, octahedron_mesh, orbit_polyhedron, tile_mesh, PolyMesh};
use abck::substitution::{format_counts, inflate_n};
use abck::verify::{run_suite, standard_pairs, Suite};
use abck::{Error, TileKind};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "abck", version, about = "Icosahedral polyhedra and ABCK tile inflation in exact golden arithmetic")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Off,
    Obj,
    Json,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value = "off")]
    format: Format,
    /// Write to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits for OFF/OBJ coordinates.
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit polyhedron of one catalog row at scale (m1, m2).
    Polyhedron {
        #[arg(long)]
        row: PolyhedronRow,
        #[arg(long, allow_negative_numbers = true)]
        m1: i64,
        #[arg(long, allow_negative_numbers = true)]
        m2: i64,
        #[command(flatten)]
        output: Output,
    },
    /// A canonical tile, or the octahedron assembled from its copies.
    Tile {
        #[arg(long)]
        kind: TileKind,
        #[arg(long)]
        octahedron: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Inflate a single tile `depth` times.
    Inflate {
        #[arg(long)]
        seed: TileKind,
        #[arg(long)]
        depth: u32,
        /// Print only the per-kind counts.
        #[arg(long)]
        counts_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Union of the 120 group images of a tile: B-, C-polyhedron or triacontahedron.
    AbckPoly {
        #[arg(long)]
        kind: TileKind,
        #[command(flatten)]
        output: Output,
    },
    /// Run verification suites; exits non-zero on any failure.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::NAMES)]
        suite: String,
    },
    /// Rotation and translation lifts to D6.
    Lift {
        #[arg(long)]
        print: bool,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parity(..) | Error::ZeroPair | Error::Unknown { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn emit_mesh(mesh: &PolyMesh, o: &Output) -> Result<(), Failure> {
    let text = match o.format {
        Format::Off => write_off(mesh, o.precision),
        Format::Obj => write_obj(mesh, o.precision),
        Format::Json => mesh_json(mesh) + "\n",
    };
    emit(&text, o.out.as_ref())
}

/// Returns whether every check passed.
fn run(cmd: Command) -> Result<bool, Failure> {
    match cmd {
        Command::Polyhedron { row, m1, m2, output } => {
            let p = PairM::nonzero(m1, m2)?;
            emit_mesh(&orbit_polyhedron(row, p)?, &output)?;
        }
        Command::Tile { kind, octahedron, output } => {
            let mesh = if octahedron { octahedron_mesh(kind)? } else { tile_mesh(kind) };
            emit_mesh(&mesh, &output)?;
        }
        Command::Inflate { seed, depth, counts_only, out } => {
            let patch = inflate_n(seed, depth);
            let text = if counts_only {
                format_counts(&patch.counts()) + "\n"
            } else {
                patch_json(&patch.sorted()) + "\n"
            };
            emit(&text, out.as_ref())?;
        }
        Command::AbckPoly { kind, output } => {
            if kind == TileKind::A {
                return Err(Failure::Usage("abck-poly takes B, C or K".into()));
            }
            emit_mesh(&abck_polyhedron(kind)?, &output)?;
        }
        Command::Verify { suite } => {
            let rep = run_suite(suite.parse::<Suite>()?);
            println!("{rep}");
            return Ok(rep.passed());
        }
        Command::Lift { print } => {
            let rep = run_suite(Suite::Lifts);
            if print {
                print!("{}", format_table(&standard_pairs()));
                println!("corrected entries:");
                for (label, (printed, resolved)) in printed_vs_resolved() {
                    println!("  {label}: printed form {printed:?}, corrected form {resolved:?}");
                }
            }
            let failed = rep.failures().count();
            println!("{} lift checks, {failed} failed", rep.checks.len());
            return Ok(rep.passed());
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
