//! Command-line front end.
//!
//! Five subcommands over the JSON document formats:
//!
//! * `decompose <flux.json> [--mode divfree|general] [--out curves.json]`
//! * `verify <flux.json> <curves.json>`
//! * `rigidity <polycurves.json> [--c <constant>]`
//! * `gen <kind> [--seed N] [--size N] [--out flux.json]`
//! * `render <curves.json> [--out picture.svg]`
//!
//! The scalar backend defaults to exact rationals; `--scalar float` or the
//! `LOOPFLOW_SCALAR` environment variable select the tolerance-based
//! float backend (the flag wins over the environment).
//!
//! Exit codes: 0 success (clean decomposition / zero verdict), 1 a
//! verification defect or failed rigidity hypothesis, 2 malformed input,
//! 3 divergence-free decomposition of a divergent flux, 4 grid mismatch,
//! 5 invalid parameters (size, constants).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::coarea::{decompose_divfree, verify_decomposition};
use crate::curves::CurveSuperposition;
use crate::error::Error;
use crate::flow::decompose_general;
use crate::generate::{generate, GenKind, MAX_GEN_SIZE};
use crate::grid::EdgeFlux;
use crate::io::{read_curves, read_edge_flux, read_polycurves, write_curves, write_edge_flux};
use crate::render::render_svg;
use crate::rigidity::{check_hypotheses, RigidityInput, RigidityVerdict};
use crate::scalar::{Rational, Scalar, ScalarMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DEFECT: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_NOT_DIVFREE: i32 = 3;
pub const EXIT_GRID_MISMATCH: i32 = 4;
pub const EXIT_BAD_PARAMS: i32 = 5;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum ScalarChoice {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum Mode {
    /// Closed loops only; fails on divergent input.
    Divfree,
    /// Simple paths for the acyclic part, loops for the rest.
    General,
}

#[derive(Parser, Debug)]
#[command(
    name = "loopflow",
    version,
    about = "Decompose lattice fluxes into weighted loops and paths"
)]
struct Cli {
    /// Numeric backend: exact rationals or tolerance-based floats.
    /// Defaults to the LOOPFLOW_SCALAR environment variable, then rational.
    #[arg(long, global = true, value_enum)]
    scalar: Option<ScalarChoice>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decompose a flux document into weighted curves.
    Decompose {
        /// Input edgeflux/1 document.
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Divfree)]
        mode: Mode,
        /// Write the curves/1 document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a curve family against a flux and report the defects.
    Verify {
        /// edgeflux/1 document.
        flux: PathBuf,
        /// curves/1 document.
        decomposition: PathBuf,
    },
    /// Check the rigidity hypotheses for a polycurves/1 measure.
    Rigidity {
        /// polycurves/1 document.
        curves: PathBuf,
        /// Override the cone constant from the document.
        #[arg(long, allow_negative_numbers = true)]
        c: Option<f64>,
    },
    /// Generate a deterministic input flux.
    Gen {
        /// pixel, vortex, random-potential, dipole or shear.
        kind: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Grid side length (1..=512).
        #[arg(long, default_value_t = 8)]
        size: u32,
        /// Write the edgeflux/1 document here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a curves/1 document as SVG.
    Render {
        /// curves/1 document.
        decomposition: PathBuf,
        /// Write the SVG here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Parse(_) => EXIT_PARSE,
        Error::NotDivergenceFree { .. } | Error::InconsistentCirculation { .. } => {
            EXIT_NOT_DIVFREE
        }
        Error::GridMismatch(..) => EXIT_GRID_MISMATCH,
        Error::NonPositiveConstant(_) => EXIT_BAD_PARAMS,
        _ => EXIT_DEFECT,
    }
}

fn read_file(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

/// Write to the file when given, otherwise to the stream.
fn emit(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| {
            Error::PreconditionFailed(format!("cannot write {}: {e}", path.display()))
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|e| {
            Error::PreconditionFailed(format!("cannot write to stdout: {e}"))
        }),
    }
}

fn resolve_scalar(
    flag: Option<ScalarChoice>,
    stderr: &mut dyn Write,
) -> Result<ScalarMode, i32> {
    if let Some(choice) = flag {
        return Ok(match choice {
            ScalarChoice::Rational => ScalarMode::Rational,
            ScalarChoice::Float => ScalarMode::Float,
        });
    }
    match std::env::var("LOOPFLOW_SCALAR") {
        Ok(value) => match value.as_str() {
            "rational" => Ok(ScalarMode::Rational),
            "float" => Ok(ScalarMode::Float),
            other => {
                let _ = writeln!(
                    stderr,
                    "invalid LOOPFLOW_SCALAR {other:?} (expected \"rational\" or \"float\")"
                );
                Err(EXIT_BAD_PARAMS)
            }
        },
        Err(_) => Ok(ScalarMode::Rational),
    }
}

fn cmd_decompose<S: Scalar>(
    input: &Path,
    mode: Mode,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Error> {
    let mu: EdgeFlux<S> = read_edge_flux(&read_file(input)?)?;
    let eta = match mode {
        Mode::Divfree => decompose_divfree(&mu)?,
        Mode::General => decompose_general(&mu)?,
    };
    let report = verify_decomposition(&mu, &eta);
    emit(out, &write_curves(&eta), stdout)?;
    let _ = writeln!(stderr, "{report}");
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_DEFECT })
}

fn cmd_verify<S: Scalar>(
    flux: &Path,
    decomposition: &Path,
    stdout: &mut dyn Write,
) -> Result<i32, Error> {
    let mu: EdgeFlux<S> = read_edge_flux(&read_file(flux)?)?;
    let eta: CurveSuperposition<S> = read_curves(&read_file(decomposition)?)?;
    mu.grid().check_same(&eta.grid())?;
    let report = verify_decomposition(&mu, &eta);
    let _ = writeln!(stdout, "{report}");
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_DEFECT })
}

fn cmd_rigidity(curves: &Path, c: Option<f64>, stdout: &mut dyn Write) -> Result<i32, Error> {
    let mut input = read_polycurves(&read_file(curves)?)?;
    if let Some(c) = c {
        input = RigidityInput::new(input.items, c)?;
    }
    match check_hypotheses(&input) {
        RigidityVerdict::Zero => {
            let _ = writeln!(
                stdout,
                "verdict: zero (all hypotheses hold; mass {})",
                input.mass()
            );
            Ok(EXIT_OK)
        }
        RigidityVerdict::HypothesisFails(violation) => {
            let _ = writeln!(stdout, "verdict: hypothesis fails ({violation})");
            Ok(EXIT_DEFECT)
        }
    }
}

fn cmd_gen<S: Scalar>(
    kind: &str,
    seed: u64,
    size: u32,
    out: Option<&Path>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Error> {
    let kind: GenKind = kind.parse()?;
    if size < 1 || size > MAX_GEN_SIZE {
        let _ = writeln!(
            stderr,
            "size must be between 1 and {MAX_GEN_SIZE}, got {size}"
        );
        return Ok(EXIT_BAD_PARAMS);
    }
    let mu: EdgeFlux<S> = generate(kind, seed, size)?;
    emit(out, &write_edge_flux(&mu), stdout)?;
    Ok(EXIT_OK)
}

fn cmd_render<S: Scalar>(
    decomposition: &Path,
    out: Option<&Path>,
    stdout: &mut dyn Write,
) -> Result<i32, Error> {
    let eta: CurveSuperposition<S> = read_curves(&read_file(decomposition)?)?;
    emit(out, &render_svg(&eta), stdout)?;
    Ok(EXIT_OK)
}

fn dispatch<S: Scalar>(
    command: &Command,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Error> {
    match command {
        Command::Decompose { input, mode, out } => {
            cmd_decompose::<S>(input, *mode, out.as_deref(), stdout, stderr)
        }
        Command::Verify { flux, decomposition } => {
            cmd_verify::<S>(flux, decomposition, stdout)
        }
        Command::Rigidity { curves, c } => cmd_rigidity(curves, *c, stdout),
        Command::Gen { kind, seed, size, out } => {
            cmd_gen::<S>(kind, *seed, *size, out.as_deref(), stdout, stderr)
        }
        Command::Render { decomposition, out } => {
            cmd_render::<S>(decomposition, out.as_deref(), stdout)
        }
    }
}

/// Run with explicit arguments and streams; returns the exit code.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_PARSE,
            };
            if code == EXIT_OK {
                let _ = write!(stdout, "{e}");
            } else {
                let _ = write!(stderr, "{e}");
            }
            return code;
        }
    };
    let mode = match resolve_scalar(cli.scalar, stderr) {
        Ok(mode) => mode,
        Err(code) => return code,
    };
    let outcome = match mode {
        ScalarMode::Rational => dispatch::<Rational>(&cli.command, stdout, stderr),
        ScalarMode::Float => dispatch::<f64>(&cli.command, stdout, stderr),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            let _ = writeln!(stderr, "error: {err}");
            exit_code_for(&err)
        }
    }
}

/// Entry point for the binary: reads `std::env::args`.
pub fn run() -> i32 {
    run_from(
        std::env::args_os(),
        &mut std::io::stdout(),
        &mut std::io::stderr(),
    )
}
