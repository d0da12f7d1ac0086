//! `e7forge`: build and export E7 generator sets, run verification suites,
//! sample Haar elements, and compute volumes and integrals.
//!
//! Exit codes: 0 on success, 1 when a build or verification fails, 2 on a
//! usage error. `E7_FORGE_THREADS` caps the worker threads.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use e7forge::e7mat::{E7Mat, ScalarMode};
use e7forge::generators::{Construction, GeneratorSet};
use e7forge::measures::{integral_closed, integral_quadrature, render_rational, VolumeTarget};
use e7forge::model::Model;
use e7forge::rep133::{build_adjoint_133, Normalization};
use e7forge::sparse::SparseMatrix;
use e7forge::verify::{self, Suite, VerifyOptions};
use num_traits::ToPrimitive;

#[derive(Parser)]
#[command(name = "e7forge", version, about = "Compact E7 in three explicit matrix realizations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructionArg {
    Tits,
    Split,
    Evi,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::Tits => Construction::Tits,
            ConstructionArg::Split => Construction::Split,
            ConstructionArg::Evi => Construction::Evi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    All,
    Structure,
    Jacobi,
    Roots,
    Volumes,
    Euler,
    Center,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Structure => Suite::Structure,
            SuiteArg::Jacobi => Suite::Jacobi,
            SuiteArg::Roots => Suite::Roots,
            SuiteArg::Volumes => Suite::Volumes,
            SuiteArg::Euler => Suite::Euler,
            SuiteArg::Center => Suite::Center,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    E7,
    E6,
    #[value(name = "SO8")]
    So8,
    U,
    #[value(name = "E7modU")]
    E7ModU,
}

impl From<TargetArg> for VolumeTarget {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::E7 => VolumeTarget::E7,
            TargetArg::E6 => VolumeTarget::E6,
            TargetArg::So8 => VolumeTarget::So8,
            TargetArg::U => VolumeTarget::U,
            TargetArg::E7ModU => VolumeTarget::E7ModU,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a generator set and write it as an E7MAT file.
    Build {
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long, default_value_t = 56)]
        rep: usize,
        #[arg(long, value_enum, default_value = "exact")]
        scalar: ScalarArg,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite and write a JSON report.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "tits")]
        construction: ConstructionArg,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long)]
        report: Option<PathBuf>,
        /// Check every Jacobi triple instead of the seeded sample.
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Haar draws in the euler suite.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Draw Haar elements of the split construction.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Print a Macdonald volume.
    Volume {
        #[arg(long, value_enum)]
        target: TargetArg,
    },
    /// Print I(a,b,c) (and 8·I for a = b = c = 9) with a quadrature estimate.
    Integral {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        #[arg(long)]
        c: u32,
        /// Gauss–Legendre nodes per axis.
        #[arg(long, default_value_t = 64)]
        n: usize,
    },
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure { code: 2, error: anyhow::anyhow!(msg.into()) }
}

fn failed(error: anyhow::Error) -> Failure {
    let code = match error.downcast_ref::<e7forge::Error>() {
        Some(e7forge::Error::InvalidArgument(_)) => 2,
        _ => 1,
    };
    Failure { code, error }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        failed(e)
    }
}

impl From<e7forge::Error> for Failure {
    fn from(e: e7forge::Error) -> Self {
        failed(e.into())
    }
}

/// Writes through a temporary sibling file and renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let name = path.file_name().context("output path has no file name")?.to_string_lossy();
    let tmp = path.with_file_name(format!(".{name}.tmp"));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn configure_threads() -> std::result::Result<(), Failure> {
    if let Ok(v) = std::env::var("E7_FORGE_THREADS") {
        let n: usize = v.parse().map_err(|_| usage(format!("E7_FORGE_THREADS must be a positive integer, got {v:?}")))?;
        if n == 0 {
            return Err(usage("E7_FORGE_THREADS must be a positive integer"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| failed(e.into()))?;
    }
    Ok(())
}

fn build(construction: Construction, rep: usize, scalar: ScalarMode, out: &Path) -> std::result::Result<(), Failure> {
    let model = Model::new();
    let set: GeneratorSet = match (construction, rep) {
        (Construction::Tits, 133) => build_adjoint_133(model.basis(), Normalization::Orthonormal),
        (c, 56) => model.rep56(c)?.clone(),
        (Construction::Tits, r) => return Err(usage(format!("--rep must be 56 or 133, got {r}"))),
        (c, r) => return Err(usage(format!("construction {c} supports only --rep 56, got {r}"))),
    };
    let text = E7Mat::from_set(&set, scalar)?.write();
    write_atomic(out, &text)?;
    println!("wrote {} generators ({}x{}) to {}", set.len(), set.rep_dim, set.rep_dim, out.display());
    Ok(())
}

fn run_verify(suite: Suite, opts: VerifyOptions, report: Option<&Path>) -> std::result::Result<(), Failure> {
    let model = Model::new();
    let rep = verify::run(&model, suite, &opts)?;
    let json = serde_json::to_string_pretty(&rep).map_err(|e| failed(e.into()))?;
    match report {
        Some(p) => write_atomic(p, &(json + "\n"))?,
        None => println!("{json}"),
    }
    for r in &rep.records {
        eprintln!("{:<4} {:<44} {:.3e}", if r.passed() { "ok" } else { "FAIL" }, r.name, r.residual);
    }
    if rep.pass {
        Ok(())
    } else {
        let worst = rep.worst_offender().map_or_else(String::new, |r| format!("{} (residual {:e}, {})", r.name, r.residual, r.detail));
        Err(Failure { code: 1, error: anyhow::anyhow!("verification failed; worst offender: {worst}") })
    }
}

fn sample(n: usize, seed: u64, out: &Path) -> std::result::Result<(), Failure> {
    if n == 0 {
        return Err(usage("--n must be at least 1"));
    }
    let model = Model::new();
    let sampler = model.sampler()?;
    let draws = sampler.sample_seeded(seed, n)?;
    let worst = draws.iter().map(|h| h.element.unitarity_residual()).fold(0.0, f64::max);
    let file = E7Mat {
        construction: Construction::Split,
        rep: 56,
        dim: 56,
        labels: (1..=n).map(|k| format!("g{k}")).collect(),
        matrices: e7forge::e7mat::Matrices::Float(draws.iter().map(|h| SparseMatrix::from_dense(&h.element.matrix, 0.0)).collect()),
        manifest: vec![format!("manifest seed={seed} max_unitarity_residual={worst:.16e}")],
    };
    write_atomic(out, &file.write())?;
    println!("wrote {n} samples to {} (max unitarity residual {worst:e})", out.display());
    Ok(())
}

fn integral(a: u32, b: u32, c: u32, n: usize) -> std::result::Result<(), Failure> {
    if a == 0 || b == 0 || c == 0 {
        return Err(usage("--a, --b and --c must be at least 1"));
    }
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let exact = integral_closed(a, b, c)?;
    let approx = integral_quadrature(a, b, c, n)?;
    let x = exact.to_f64().unwrap_or(f64::NAN);
    println!("I({a},{b},{c}) = {}", render_rational(&exact));
    if (a, b, c) == (9, 9, 9) {
        println!("8·I = {}", render_rational(&(&exact * num_rational::BigRational::from_integer(8.into()))));
    }
    println!("gauss-legendre n={n}: {approx:.16e} (relative discrepancy {:.3e})", (approx / x - 1.0).abs());
    Ok(())
}

fn dispatch(cli: Cli) -> std::result::Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Build { construction, rep, scalar, out } => {
            let mode = match scalar {
                ScalarArg::Exact => ScalarMode::Exact,
                ScalarArg::Float => ScalarMode::Float,
            };
            build(construction.into(), rep, mode, &out)
        }
        Command::Verify { suite, construction, tol, report, exhaustive, seed, samples } => {
            if tol.is_nan() || tol <= 0.0 {
                return Err(usage("--tol must be positive"));
            }
            if samples < 2 {
                return Err(usage("--samples must be at least 2"));
            }
            let opts = VerifyOptions { construction: construction.into(), tol, exhaustive, seed, samples };
            run_verify(suite.into(), opts, report.as_deref())
        }
        Command::Sample { n, seed, out } => sample(n, seed, &out),
        Command::Volume { target } => {
            println!("{}", VolumeTarget::from(target).volume());
            Ok(())
        }
        Command::Integral { a, b, c, n } => integral(a, b, c, n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
