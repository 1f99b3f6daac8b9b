//! `gonil`: analyze metric nilpotent Lie algebras from JSON spec files.
//!
//! Exit codes: 0 success, 1 a certified property failed re-verification,
//! 2 malformed input or a violated precondition.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use gonil::analysis::{analyze, AnalysisCertificate, AnalysisOptions};
use gonil::double_extension::{base_go_report, build, decompose, roundtrip_matches, Decomposition, DoubleExtensionError};
use gonil::geodesic::GoVerdict;
use gonil::io::{AlgebraSpecFile, DoubleExtensionFile};
use gonil::presets::{family_double_extension_data, preset, shift_matrix};
use gonil::Execution;

#[derive(Parser)]
#[command(name = "gonil", version, about = "Exact geodesic-orbit analysis of metric nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Sampling {
    /// Number of random vectors for GO sampling.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Seed for GO sampling.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Run every stage on one thread.
    #[arg(long)]
    sequential: bool,
}

impl Sampling {
    fn options(self) -> AnalysisOptions {
        let exec = if self.sequential { Execution::Sequential } else { Execution::default() };
        AnalysisOptions { samples: self.samples, seed: self.seed, exec }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze an algebra spec file and print its certificate.
    Analyze {
        file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        /// Also write the certificate to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Emit or analyze a built-in example (family, kaplan6, nonnatred).
    Example {
        name: String,
        /// Shift-matrix parameter for family and nonnatred.
        #[arg(long, default_value_t = 2)]
        d: usize,
        /// Write the algebra spec file instead of analyzing.
        #[arg(long)]
        emit: Option<PathBuf>,
        /// Write the double-extension data of the family example.
        #[arg(long)]
        emit_extension: Option<PathBuf>,
        #[command(flatten)]
        sampling: Sampling,
        /// Also write the certificate to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Lorentz double extensions.
    #[command(subcommand)]
    Doubleext(DoubleExt),
}

#[derive(Subcommand)]
enum DoubleExt {
    /// Decompose a Lorentz algebra with degenerate metric on [n,n].
    Decompose {
        file: PathBuf,
        #[command(flatten)]
        sampling: Sampling,
        /// Write the recovered double-extension data to this path.
        #[arg(long)]
        emit_data: Option<PathBuf>,
    },
    /// Build the algebra described by a double-extension data file.
    Build {
        file: PathBuf,
        /// Write the resulting spec file here instead of stdout.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

enum Outcome {
    Ok,
    ReverificationFailed,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ReverificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Analyze { file, sampling, json } => {
            let spec = AlgebraSpecFile::load(&file)?;
            let cert = analyze(&spec, None, &sampling.options())?;
            report(&cert, json.as_deref())
        }
        Command::Example { name, d, emit, emit_extension, sampling, json } => {
            let p = preset(&name, d)?;
            let spec = AlgebraSpecFile::from_metric(&p.metric, &p.name, &p.description);
            if let Some(path) = &emit_extension {
                if name != "family" {
                    return Err(anyhow!("--emit-extension is only available for the family example"));
                }
                let data = family_double_extension_data(&shift_matrix(d)?);
                DoubleExtensionFile::from_data(&data, &p.name).save(path)?;
                eprintln!("wrote {} (double-extension data, base dim {})", path.display(), data.base.dim());
            }
            if let Some(path) = &emit {
                spec.save(path)?;
                eprintln!("wrote {} (dim {})", path.display(), spec.dim);
            }
            if emit.is_some() || emit_extension.is_some() {
                return Ok(Outcome::Ok);
            }
            let cert = analyze(&spec, p.graph.as_deref(), &sampling.options())?;
            report(&cert, json.as_deref())
        }
        Command::Doubleext(DoubleExt::Decompose { file, sampling, emit_data }) => {
            decompose_cmd(&file, sampling.options(), emit_data.as_deref())
        }
        Command::Doubleext(DoubleExt::Build { file, emit }) => {
            let data = DoubleExtensionFile::load(&file)?.to_data()?;
            let m = build(&data).map_err(|e| anyhow!("build failed: {e}"))?;
            let name = format!("double-extension of {}", data_name(&file));
            let out = AlgebraSpecFile::from_metric(&m, &name, "built from double-extension data");
            match emit {
                Some(path) => {
                    out.save(&path)?;
                    eprintln!("wrote {} (dim {})", path.display(), out.dim);
                }
                None => print_out(&out.to_json()),
            }
            Ok(Outcome::Ok)
        }
    }
}

/// Prints to stdout; a closed pipe (`gonil ... | head`) is not an error.
fn print_out(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn data_name(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn report(cert: &AnalysisCertificate, json_out: Option<&Path>) -> Result<Outcome> {
    let text = cert.to_json();
    if let Some(path) = json_out {
        std::fs::write(path, format!("{text}\n")).with_context(|| format!("cannot write {}", path.display()))?;
    }
    print_out(&text);
    if cert.reverified() {
        Ok(Outcome::Ok)
    } else {
        for f in &cert.reverification_failures {
            eprintln!("re-verification failed: {f}");
        }
        Ok(Outcome::ReverificationFailed)
    }
}

fn precondition(e: &DoubleExtensionError) -> String {
    match e {
        DoubleExtensionError::NondegenerateDerived => "precondition violated: the metric restricted to [n,n] is \
             nondegenerate, so the Lorentz double-extension theorem does not apply"
            .to_string(),
        DoubleExtensionError::NotLorentz(_) => format!("precondition violated: {e}; decompose needs Lorentz signature"),
        DoubleExtensionError::NotNilpotent => "precondition violated: the algebra is not nilpotent".to_string(),
        other => format!("decompose failed: {other}"),
    }
}

fn decompose_cmd(file: &Path, opts: AnalysisOptions, emit_data: Option<&Path>) -> Result<Outcome> {
    let spec = AlgebraSpecFile::load(file)?;
    let m = spec.to_metric()?;
    let result = decompose(&m).map_err(|e| anyhow!(precondition(&e)))?;
    let out = match result {
        Decomposition::NotCentral { e, x } => json!({
            "operation": "decompose",
            "outcome": "e-not-central",
            "e": e,
            "noncentral_witness": x,
            "note": "e does not commute with e-perp, so the metric is not geodesic orbit",
        }),
        Decomposition::Extension(r) => {
            let base = &r.data.base;
            let go = base_go_report(&r, opts.samples, opts.seed, opts.exec)?;
            let roundtrip = roundtrip_matches(&r);
            if let Some(path) = emit_data {
                DoubleExtensionFile::from_data(&r.data, &data_name(file)).save(path)?;
            }
            let columns: Vec<_> = (0..r.adapted_basis.cols()).map(|c| r.adapted_basis.column(c)).collect();
            json!({
                "operation": "decompose",
                "outcome": "double-extension",
                "e": r.e,
                "f": r.f,
                "adapted_basis": columns,
                "e_central_in_m1": true,
                "base": {
                    "dim": base.dim(),
                    "signature": base.signature(),
                    "step": r.base_step,
                    "abelian": base.algebra().is_abelian(),
                },
                "base_go": {
                    "operation": "go_sample_report on the base",
                    "verdict": GoVerdict::from_samples(&go),
                    "tested": go.tested,
                    "feasible": go.feasible,
                    "seed": go.seed,
                },
                "roundtrip": roundtrip,
            })
        }
    };
    print_out(&serde_json::to_string_pretty(&out)?);
    Ok(Outcome::Ok)
}
