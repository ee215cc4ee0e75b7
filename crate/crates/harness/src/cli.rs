//! The `upward` command line.
//!
//! Reports go to stdout as documents, diagnostics to stderr. Exit codes:
//! 0/1 for the yes/no answer of `validate`, `equiv` and `verify-chain`,
//! 2 for incomparable drawings, 3 for any input error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use upward_core::embedding::{extract_polarization, signature};
use upward_core::equivalence::{equivalent, extended_signature, make_chain, verify_chain};
use upward_core::geometry::rational::{parse_rational, Rational};
use upward_core::geometry::validate_drawing;
use upward_core::npp::{
    default_stub_scale, npp_extend, npp_extend_auto, polarization_via_npp, virtualize_drawing,
};

use crate::document::{
    parse_chain, parse_drawing, serialize_chain, serialize_drawing, to_canonical,
    ChainReportDocument, DrawingFile, EquivalenceDocument, PolarizationDocument, SignatureDocument,
    ValidationDocument, FORMAT_VERSION,
};
use crate::error::{HarnessError, Result};
use crate::generate::{generate, GeneratorConfig};
use crate::svg::{render_svg, SvgOptions};

pub const EXIT_INPUT_ERROR: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "upward",
    version,
    about = "Upward planar drawings: validation, invariants and deformation equivalence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check every drawing invariant; exit 1 when any fails.
    Validate { file: PathBuf },
    /// Embedding signature of the drawing, or of its stub extension with --npp.
    Signature {
        file: PathBuf,
        #[arg(long)]
        npp: bool,
    },
    /// Left-to-right in and out orders at every vertex.
    Polarization {
        file: PathBuf,
        /// Read the orders off the stub extension instead of the geometry.
        #[arg(long)]
        via_npp: bool,
    },
    /// Add vertical stubs at non-leaf sources and sinks.
    Extend {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Fraction of the clearance used for stub length, strictly in (0, 1).
        #[arg(long, value_parser = rational_arg)]
        stub_scale: Option<Rational>,
        /// Fail on isolated vertices instead of replacing them by virtual edges.
        #[arg(long)]
        no_auto_virtualize: bool,
    },
    /// Replace isolated vertices by short vertical virtual edges.
    Virtualize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decide deformation equivalence: exit 0 equivalent, 1 not, 2 incomparable.
    Equiv { a: PathBuf, b: PathBuf },
    Render {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Number in and out edges at every vertex.
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        ids: bool,
    },
    /// Seeded random straight-line drawing.
    Gen {
        #[arg(long)]
        vertices: usize,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value_t = 200)]
        max_attempts: usize,
        #[arg(long, default_value_t = 64)]
        coordinate_range: i64,
    },
    /// Random deformation chain starting at the drawing.
    Perturb {
        file: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a chain frame by frame; exit 1 at the first broken link.
    VerifyChain { chain: PathBuf },
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| HarnessError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load(path: &Path) -> Result<DrawingFile> {
    parse_drawing(&read(path)?).map_err(|e| match e {
        HarnessError::Parse {
            line,
            column,
            message,
        } => HarnessError::Parse {
            line,
            column,
            message: format!("{}: {message}", path.display()),
        },
        HarnessError::Format(m) => HarnessError::Format(format!("{}: {m}", path.display())),
        other => other,
    })
}

/// Runs one command; returns the exit code.
fn execute(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let mut emit = |text: String| {
        let _ = stdout.write_all(text.as_bytes());
    };
    match command {
        Command::Validate { file } => {
            let report = validate_drawing(&load(&file)?.drawing);
            let code = if report.ok { 0 } else { 1 };
            emit(to_canonical(&ValidationDocument {
                format_version: FORMAT_VERSION,
                report,
            }));
            Ok(code)
        }
        Command::Signature { file, npp } => {
            let d = load(&file)?.drawing;
            let sig = if npp {
                extended_signature(&d)?
            } else {
                signature(&d)?
            };
            emit(to_canonical(&SignatureDocument::new(sig)));
            Ok(0)
        }
        Command::Polarization { file, via_npp } => {
            let d = load(&file)?.drawing;
            let p = if via_npp {
                polarization_via_npp(&d)?
            } else {
                let report = validate_drawing(&d);
                if !report.ok {
                    return Err(upward_core::Error::InvalidDrawing(Box::new(report)).into());
                }
                extract_polarization(&d)
            };
            emit(to_canonical(&PolarizationDocument::new(&p)));
            Ok(0)
        }
        Command::Extend {
            file,
            output,
            stub_scale,
            no_auto_virtualize,
        } => {
            let d = load(&file)?.drawing;
            let scale = stub_scale.unwrap_or_else(default_stub_scale);
            let out = if no_auto_virtualize {
                let ext = npp_extend(&d, &scale)?;
                DrawingFile {
                    drawing: ext.drawing,
                    extension_mapping: Some(ext.mapping),
                    virtualization_mapping: None,
                }
            } else {
                let (ext, vmap) = npp_extend_auto(&d, &scale)?;
                DrawingFile {
                    drawing: ext.drawing,
                    extension_mapping: Some(ext.mapping),
                    virtualization_mapping: Some(vmap),
                }
            };
            write(&output, &serialize_drawing(&out))?;
            let _ = writeln!(stderr, "wrote {}", output.display());
            Ok(0)
        }
        Command::Virtualize { file, output } => {
            let (d, vmap) = virtualize_drawing(&load(&file)?.drawing)?;
            let out = DrawingFile {
                drawing: d,
                extension_mapping: None,
                virtualization_mapping: Some(vmap),
            };
            write(&output, &serialize_drawing(&out))?;
            let _ = writeln!(stderr, "wrote {}", output.display());
            Ok(0)
        }
        Command::Equiv { a, b } => {
            let report = equivalent(&load(&a)?.drawing, &load(&b)?.drawing)?;
            let code = report.verdict.exit_code();
            emit(to_canonical(&EquivalenceDocument {
                format_version: FORMAT_VERSION,
                report,
            }));
            Ok(code)
        }
        Command::Render {
            file,
            output,
            labels,
            ids,
        } => {
            let d = load(&file)?.drawing;
            let svg = render_svg(
                &d,
                &SvgOptions {
                    show_ids: ids,
                    show_polarization_labels: labels,
                },
            );
            write(&output, &svg)?;
            let _ = writeln!(stderr, "wrote {}", output.display());
            Ok(0)
        }
        Command::Gen {
            vertices,
            edges,
            seed,
            output,
            max_attempts,
            coordinate_range,
        } => {
            let config = GeneratorConfig {
                vertices,
                edges,
                seed,
                max_attempts,
                coordinate_range,
            };
            let g = generate(&config)?;
            write(&output, &serialize_drawing(&g.drawing.into()))?;
            emit(to_canonical(&serde_json::json!({
                "format_version": FORMAT_VERSION,
                "requested_edges": edges,
                "achieved_edges": g.achieved_edges,
                "vertices": vertices,
                "seed": seed,
            })));
            Ok(0)
        }
        Command::Perturb {
            file,
            steps,
            seed,
            output,
        } => {
            let chain = make_chain(&load(&file)?.drawing, steps, seed)?;
            write(&output, &serialize_chain(&chain))?;
            let fallbacks = chain.steps.iter().filter(|s| s.fallback).count();
            let _ = writeln!(
                stderr,
                "wrote {} ({} frames, {fallbacks} identity steps)",
                output.display(),
                chain.frames.len()
            );
            Ok(0)
        }
        Command::VerifyChain { chain } => {
            let c = parse_chain(&read(&chain)?)?;
            let v = verify_chain(&c);
            emit(to_canonical(&ChainReportDocument::new(c.frames.len(), &v)));
            Ok(if v.ok { 0 } else { 1 })
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_INPUT_ERROR
                }
            };
        }
    };
    match execute(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            if let HarnessError::Core(upward_core::Error::InvalidDrawing(report)) = &e {
                for v in &report.violations {
                    let _ = writeln!(stderr, "  {}: {}", v.code, v.message);
                }
            }
            EXIT_INPUT_ERROR
        }
    }
}
