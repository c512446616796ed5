mod converge;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use maxwell_core::forms::{axial_projected_qd, matrix_market};
use maxwell_core::kd::{kd_analytic_d2, kd_value, leading_order_free_energy};
use maxwell_core::lattice::{asymptotic_free_edge_count, expected_counts};
use maxwell_core::periodic::{kernel_dimension, periodic_free_energy};
use maxwell_core::{
    analytic_spectrum, assemble_sigma, torus_operator, AxialGauge, Error, Lattice, SpectrumReport,
    SymmetricOperator,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "maxwell",
    version,
    about = "Lattice Maxwell free energies in the axial gauge"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the invariant suites at one lattice size.
    Verify(VerifyArgs),
    /// Sweep n and tabulate the axial, periodic and closed-formula densities.
    Converge(ConvergeArgs),
    /// Evaluate K_d and optionally the leading-order free energy.
    Kd(KdArgs),
    /// Lattice and gauge counts.
    Summary(SizeArgs),
    /// Spectrum report of one operator.
    Spectrum(SpectrumArgs),
    /// Plane-wave spectrum of the torus operator.
    Analytic(TorusArgs),
    /// Write an operator as Matrix Market text.
    Export(ExportArgs),
}

#[derive(Args, Clone)]
struct SizeArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    n: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random fields per check.
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, default_value_t = 8000)]
    max_dim: usize,
    /// Empty sites on each side of the box inside the torus.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    margin: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ConvergeArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
    /// Ascending side lengths, each at least 2.
    #[arg(long, value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    /// Riemann grid for K_d; defaults to m = n on each row.
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    m: Option<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 8000)]
    max_dim: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output path; CSV output also writes `<stem>.long.csv` and `<stem>.meta.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct KdArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
    #[arg(long, default_value_t = 4096, value_parser = clap::value_parser!(u32).range(2..))]
    m: u32,
    /// Exact value for d = 2.
    #[arg(long)]
    analytic: bool,
    /// Leading-order free energy for group rank N, coupling g, side n.
    #[arg(long, num_args = 3, value_names = ["N", "G", "N_SIDE"])]
    predict: Option<Vec<String>>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OperatorKind {
    /// Plaquette matrix on all edges.
    Sigma,
    /// Plaquette matrix on the free edges of the axial gauge.
    Sigma0,
    /// Q_d compressed to axial one-forms.
    ProjectedQ,
    /// Periodic operator on the torus of side n.
    Torus,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, value_enum, default_value_t = OperatorKind::Sigma0)]
    operator: OperatorKind,
    /// Include the full eigenvalue list.
    #[arg(long)]
    eigenvalues: bool,
    #[arg(long, default_value_t = 8000)]
    max_dim: usize,
}

#[derive(Args)]
struct TorusArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    d: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    n: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    size: SizeArgs,
    #[arg(long, value_enum, default_value_t = OperatorKind::Sigma0)]
    operator: OperatorKind,
}

/// Failure modes mapped to exit codes.
enum Outcome {
    Ok,
    ChecksFailed,
}

struct Usage(String);

impl std::fmt::Debug for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_json(out: Option<&Path>, v: &Value) -> anyhow::Result<()> {
    emit(out, &(serde_json::to_string_pretty(v)? + "\n"))
}

fn build_operator(kind: OperatorKind, d: usize, n: usize) -> anyhow::Result<SymmetricOperator> {
    Ok(match kind {
        OperatorKind::Sigma => {
            assemble_sigma(&Lattice::new(d, n)?).to_operator(format!("sigma d={d} n={n}"))
        }
        OperatorKind::Sigma0 => {
            let lat = Lattice::new(d, n)?;
            assemble_sigma(&lat).restrict_to_axial(&AxialGauge::new(&lat))
        }
        OperatorKind::ProjectedQ => {
            let lat = Lattice::new(d, n)?;
            axial_projected_qd(&lat, &AxialGauge::new(&lat))?
        }
        OperatorKind::Torus => torus_operator(d, n)?,
    })
}

fn operator_dim(kind: OperatorKind, d: usize, n: usize) -> usize {
    let (v, e, _) = expected_counts(d, n);
    match kind {
        OperatorKind::Sigma => e,
        OperatorKind::Sigma0 | OperatorKind::ProjectedQ => e + 1 - v,
        OperatorKind::Torus => (d - 1) * n.pow(d as u32),
    }
}

fn cmd_verify(a: &VerifyArgs) -> anyhow::Result<Outcome> {
    let spec = verify::VerifySpec {
        d: a.size.d as usize,
        n: a.size.n as usize,
        seed: a.seed,
        trials: a.trials,
        max_dim: a.max_dim,
        margin: a.margin as usize,
    };
    let results = verify::run(&spec)?;
    let failed = results.iter().any(|r| r.status == verify::Status::Fail);
    let report = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "spec": {
            "command": "verify",
            "d": spec.d,
            "n": spec.n,
            "seed": spec.seed,
            "rng": "ChaCha8Rng (rand_chacha), seed_from_u64",
            "trials": spec.trials,
            "max_dim": spec.max_dim,
            "margin": spec.margin,
        },
        "results": results,
    });
    emit_json(a.size.out.as_deref(), &report)?;
    Ok(if failed {
        Outcome::ChecksFailed
    } else {
        Outcome::Ok
    })
}

fn sidecar(path: &Path, suffix: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .map_or_else(|| "converge".into(), |s| s.to_string_lossy().into_owned());
    path.with_file_name(format!("{stem}{suffix}"))
}

fn cmd_converge(a: &ConvergeArgs) -> anyhow::Result<Outcome> {
    if let Some(&bad) = a.n_list.iter().find(|&&n| n < 2) {
        return Err(usage(format!(
            "--n-list entries must be at least 2, got {bad}"
        )));
    }
    if a.n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage("--n-list must be strictly ascending"));
    }
    let spec = converge::ConvergeSpec {
        d: a.d as usize,
        n_list: a.n_list.clone(),
        m: a.m.map(|m| m as usize),
        max_dim: a.max_dim,
    };
    let sweep = converge::run(&spec)?;
    for s in &sweep.skipped {
        eprintln!("skipping n={}: {}", s.n, s.reason);
    }
    let meta = converge::metadata(&spec, a.seed, &sweep);
    match a.format {
        Format::Csv => {
            emit(a.out.as_deref(), &converge::csv_text(&sweep.rows)?)?;
            if let Some(p) = &a.out {
                emit(
                    Some(&sidecar(p, ".long.csv")),
                    &converge::long_csv_text(&sweep.rows)?,
                )?;
                emit_json(Some(&sidecar(p, ".meta.json")), &meta)?;
            }
        }
        Format::Json => {
            let mut v = meta;
            v["rows"] = json!(sweep.rows);
            emit_json(a.out.as_deref(), &v)?;
        }
    }
    Ok(Outcome::Ok)
}

fn cmd_kd(a: &KdArgs) -> anyhow::Result<Outcome> {
    let d = a.d as usize;
    let estimate = if a.analytic {
        if d != 2 {
            return Err(usage("--analytic is only available for d = 2"));
        }
        kd_analytic_d2()
    } else {
        kd_value(d, a.m as usize)?
    };
    let mut v = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "estimate": estimate,
    });
    if let Some(p) = &a.predict {
        let rank: usize = p[0]
            .parse()
            .map_err(|_| usage(format!("N must be a positive integer, got {}", p[0])))?;
        let g: f64 = p[1]
            .parse()
            .map_err(|_| usage(format!("g must be a number, got {}", p[1])))?;
        let n: usize = p[2]
            .parse()
            .map_err(|_| usage(format!("n must be a positive integer, got {}", p[2])))?;
        v["prediction"] = json!(leading_order_free_energy(d, n, rank, g, estimate.value)?);
    }
    emit_json(a.out.as_deref(), &v)?;
    Ok(Outcome::Ok)
}

fn cmd_summary(a: &SizeArgs) -> anyhow::Result<Outcome> {
    let (d, n) = (a.d as usize, a.n as usize);
    let lat = Lattice::new(d, n)?;
    let gauge = AxialGauge::new(&lat);
    let v = json!({
        "lattice": lat.summary(),
        "gauge": gauge.summary(),
        "asymptotic_free_edge_count": asymptotic_free_edge_count(d, n),
    });
    emit_json(a.out.as_deref(), &v)?;
    Ok(Outcome::Ok)
}

fn cmd_spectrum(a: &SpectrumArgs) -> anyhow::Result<Outcome> {
    let (d, n) = (a.size.d as usize, a.size.n as usize);
    if matches!(a.operator, OperatorKind::Torus) && n < 2 {
        return Err(usage("the torus operator needs n >= 2"));
    }
    let dim = operator_dim(a.operator, d, n);
    if dim > a.max_dim {
        return Err(usage(format!(
            "operator dimension {dim} exceeds --max-dim {}",
            a.max_dim
        )));
    }
    let op = build_operator(a.operator, d, n)?;
    let report = SpectrumReport::new(&op, d, n)?;
    emit_json(a.size.out.as_deref(), &report.to_json(a.eigenvalues))?;
    Ok(Outcome::Ok)
}

fn cmd_analytic(a: &TorusArgs) -> anyhow::Result<Outcome> {
    let (d, n) = (a.d as usize, a.n as usize);
    let s = analytic_spectrum(d, n)?;
    let v = json!({
        "d": d,
        "n": n,
        "kernel_dimension": kernel_dimension(d, n),
        "smallest_positive": s.smallest_positive(),
        "trace": s.trace(),
        "free_energy_density": periodic_free_energy(d, n)?,
        "spectrum": s.to_json(),
    });
    emit_json(a.out.as_deref(), &v)?;
    Ok(Outcome::Ok)
}

fn cmd_export(a: &ExportArgs) -> anyhow::Result<Outcome> {
    let (d, n) = (a.size.d as usize, a.size.n as usize);
    if matches!(a.operator, OperatorKind::Torus) && n < 2 {
        return Err(usage("the torus operator needs n >= 2"));
    }
    let op = build_operator(a.operator, d, n)?;
    emit(a.size.out.as_deref(), &matrix_market(&op, d, n))?;
    Ok(Outcome::Ok)
}

fn is_usage(e: &anyhow::Error) -> bool {
    e.downcast_ref::<Usage>().is_some()
        || matches!(
            e.downcast_ref::<Error>(),
            Some(
                Error::Dimension(_)
                    | Error::Side { .. }
                    | Error::Margin(_)
                    | Error::Grid(_)
                    | Error::Parameter(_)
            )
        )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Kd(a) => cmd_kd(a),
        Command::Summary(a) => cmd_summary(a),
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Analytic(a) => cmd_analytic(a),
        Command::Export(a) => cmd_export(a),
    };
    match result {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::ChecksFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_usage(&e) { 2 } else { 1 })
        }
    }
}
