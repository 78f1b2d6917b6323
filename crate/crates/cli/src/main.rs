//! `lftlab`: classification, truncated blocks, defect probes, spectra and
//! scenario runs for weighted composition operators.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use lftlab_core::opmat::{default_internal_order, operator_norm_estimate};
use lftlab_core::probes::QUASINORMAL_HEADROOM;
use lftlab_core::scenarios::{self, Overrides, ScenarioReport, Verdict};
use lftlab_core::series::fmt_sig;
use lftlab_core::spectra::{
    self, default_beta_grid, eigen_residual, rotation_spectrum, spiral_curve, RotationSpectrum, SpiralCurve,
    DEFAULT_K_MAX,
};
use lftlab_core::{build_block, defect_report, ErrorKind, MoebiusMap, OperatorSpec};

use config::Settings;
use output::{complex, emit, Table};

#[derive(Parser)]
#[command(name = "lftlab", version, about = "Weighted composition operators with linear fractional symbols")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug, Default)]
pub struct Global {
    /// hardy | bergman:<alpha>
    #[arg(long, global = true)]
    space: Option<String>,
    /// Compression order N.
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Internal order M.
    #[arg(long, global = true)]
    tail: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write JSON here ("-" for stdout).
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Write CSV here ("-" for stdout).
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
    /// JSON file with defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a map given as JSON (inline or a file path).
    Classify { map: String },
    /// Build the truncated matrix of an operator.
    Block { op: String },
    /// Self-commutator, quasinormal, self-adjoint and unitary defects.
    Probe { op: String },
    #[command(subcommand)]
    Spectrum(SpectrumCmd),
    #[command(subcommand)]
    Scenario(ScenarioCmd),
}

#[derive(Subcommand)]
enum SpectrumCmd {
    /// Truncation eigenvalues and the Gelfand sequence of an operator.
    Op {
        op: String,
        #[arg(long, default_value_t = DEFAULT_K_MAX)]
        k_max: usize,
    },
    /// Spiral of eigenvalues and eigenfunction residuals of a parabolic map.
    Parabolic {
        /// Translation number, e.g. 1 or 1+2i.
        #[arg(long)]
        t: Complex64,
        /// Boundary fixed point.
        #[arg(long, default_value = "1")]
        zeta: Complex64,
        #[arg(long, default_value_t = 4.0)]
        beta_max: f64,
        #[arg(long, default_value_t = 64)]
        samples: usize,
        /// Taylor order of the residual table.
        #[arg(long, default_value_t = 400)]
        residual_order: usize,
    },
    /// Closure of the powers of a rotation-dilation `lambda`.
    Rotation {
        #[arg(long)]
        lambda: Complex64,
    },
}

#[derive(Subcommand)]
enum ScenarioCmd {
    List,
    Run {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// Scale every built-in order by this factor.
        #[arg(long)]
        multiplier: Option<usize>,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Core(lftlab_core::Error),
    Io(std::io::Error),
    ScenarioFailed(Vec<String>),
}

impl From<lftlab_core::Error> for CliError {
    fn from(e: lftlab_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) => match e.kind() {
                ErrorKind::InvalidInput => 2,
                ErrorKind::Constraint => 3,
                ErrorKind::Io => 1,
            },
            CliError::Io(_) => 1,
            CliError::ScenarioFailed(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "invalid input: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
            CliError::ScenarioFailed(ids) => write!(f, "scenario failed: {}", ids.join(", ")),
        }
    }
}

/// Inline JSON or a path to a JSON file.
fn parse_input<T: DeserializeOwned>(arg: &str, what: &str) -> Result<T, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('{') || trimmed.starts_with('[') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Input(format!("cannot read {what} file {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| CliError::Input(format!("bad {what} JSON: {e}")))
}

fn classify(s: &Settings, arg: &str) -> Result<(), CliError> {
    let map: MoebiusMap = parse_input(arg, "map")?;
    if !map.is_self_map(s.tol) {
        return Err(CliError::Input(format!("{map} does not map the unit disk into itself")));
    }
    let report = map.report(s.tol)?;
    let mut t = Table::new();
    t.text("map", &report.map.to_string());
    t.text("class", &format!("{:?}", report.class));
    t.text("borderline", &report.borderline.to_string());
    if let Some(fp) = &report.fixed_points {
        for p in &fp.points {
            let loc = p.location.finite().map(complex).unwrap_or_else(|| "infinity".into());
            t.text("fixed_point", &format!("{loc} (multiplicity {})", p.multiplicity));
        }
    }
    if let Some(dw) = &report.denjoy_wolff {
        t.complex("denjoy_wolff", dw.location);
        t.complex("dw_derivative", dw.derivative);
    }
    for z in &report.boundary_fixed_points {
        t.complex("boundary_fixed_point", *z);
    }
    if let Some(tn) = report.translation_number {
        t.complex("translation_number", tn);
    }
    emit(s, &report, Some(&t), |w| t.write_csv(w))
}

/// Block dump: the header plus the `(M+1) x (N+1)` entries.
fn block(s: &Settings, arg: &str) -> Result<(), CliError> {
    let op: OperatorSpec = parse_input(arg, "operator")?;
    let n = s.n(16);
    let m = s.m(n, default_internal_order(n, op.boundary_symbol()), n)?;
    let b = build_block(&op, &s.space, n, m)?;
    let mut t = Table::new();
    t.text("space", &s.space.to_string());
    t.text("n", &n.to_string());
    t.text("m", &m.to_string());
    t.text("tail_flag", &b.tail_flag.to_string());
    t.real("tail_estimate", b.tail_estimate);
    t.real("norm_estimate", operator_norm_estimate(&b));
    for i in 0..=n {
        for j in 0..=n {
            t.complex(&format!("a[{i},{j}]"), b.entry(i, j));
        }
    }
    emit(s, &b, Some(&t), |w| b.write_csv(w))
}

fn probe(s: &Settings, arg: &str) -> Result<(), CliError> {
    let op: OperatorSpec = parse_input(arg, "operator")?;
    let n = s.n(16);
    let min = 2 * n + QUASINORMAL_HEADROOM;
    let m = s.m(n, default_internal_order(n, op.boundary_symbol()), min)?;
    let r = defect_report(&op, &s.space, n, m, s.tol)?;
    let mut t = Table::new();
    t.text("space", &s.space.to_string());
    t.text("n", &r.n.to_string());
    t.text("m", &r.m.to_string());
    t.real("min_eig_selfcomm", r.min_eig_selfcomm);
    t.real("norm_selfcomm", r.norm_selfcomm);
    t.real("quasinormal_defect", r.quasinormal_defect);
    t.real("selfadjoint_defect", r.selfadjoint_defect);
    t.real("unitary_defect", r.unitary_defect);
    t.real("tail_bound", r.tail_bound);
    t.text("flags", &r.flags.join(" "));
    emit(s, &r, Some(&t), |w| t.write_csv(w))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OperatorSpectrum {
    pub n: usize,
    pub m: usize,
    /// Eigenvalues of the `(N+1)`-compression, by decreasing modulus.
    pub eigenvalues: Vec<Complex64>,
    /// `‖P_N A^k P_N‖^{1/k}`, `k = 1..=k_max`.
    pub gelfand: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ResidualRow {
    pub beta: f64,
    pub residual: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ParabolicSpectrum {
    pub map: MoebiusMap,
    pub spiral: SpiralCurve,
    pub residual_order: usize,
    pub residuals: Vec<ResidualRow>,
}

fn spectrum(s: &Settings, cmd: &SpectrumCmd) -> Result<(), CliError> {
    match cmd {
        SpectrumCmd::Op { op, k_max } => {
            let op: OperatorSpec = parse_input(op, "operator")?;
            if *k_max == 0 {
                return Err(CliError::Input("--k-max must be >= 1".into()));
            }
            let n = s.n(16);
            let m = s.m(n, default_internal_order(n, op.boundary_symbol()), 2 * n)?;
            let b = build_block(&op, &s.space, n, n)?;
            let report = OperatorSpectrum {
                n,
                m,
                eigenvalues: spectra::truncation_eigenvalues(&b),
                gelfand: spectra::spectral_radius_estimate(&op, &s.space, n, m, *k_max)?,
            };
            let mut t = Table::new();
            for z in &report.eigenvalues {
                t.complex("eigenvalue", *z);
            }
            for (k, r) in report.gelfand.iter().enumerate() {
                t.real(&format!("gelfand[{}]", k + 1), *r);
            }
            emit(s, &report, Some(&t), |w| spectra::write_points_csv(&report.eigenvalues, w))
        }
        SpectrumCmd::Parabolic { t, zeta, beta_max, samples, residual_order } => {
            let map = MoebiusMap::parabolic_from(*zeta, *t)?;
            let spiral = spiral_curve(*t, *beta_max, *samples)?;
            let residuals = default_beta_grid()
                .into_iter()
                .map(|beta| Ok(ResidualRow { beta, residual: eigen_residual(*zeta, *t, beta, *residual_order)? }))
                .collect::<lftlab_core::Result<Vec<_>>>()?;
            let report = ParabolicSpectrum { map, spiral, residual_order: *residual_order, residuals };
            let mut tab = Table::new();
            tab.text("map", &map.to_string());
            for r in &report.residuals {
                tab.real(&format!("residual[beta={}]", fmt_sig(r.beta)), r.residual);
            }
            for (b, z) in report.spiral.betas.iter().zip(&report.spiral.samples) {
                tab.complex(&format!("spiral[beta={}]", fmt_sig(*b)), *z);
            }
            emit(s, &report, Some(&tab), |w| report.spiral.write_csv(w))
        }
        SpectrumCmd::Rotation { lambda } => {
            let spec = rotation_spectrum(*lambda, s.tol)?;
            let points: Vec<Complex64> = match &spec {
                RotationSpectrum::Cyclic { points } => points.clone(),
                RotationSpectrum::Geometric { leading, .. } => leading.clone(),
                RotationSpectrum::Circle => (0..64).map(|k| lambda.powu(k)).collect(),
            };
            let mut t = Table::new();
            let kind = match spec {
                RotationSpectrum::Cyclic { .. } => "cyclic",
                RotationSpectrum::Circle => "circle",
                RotationSpectrum::Geometric { .. } => "geometric (with 0)",
            };
            t.text("kind", kind);
            for z in &points {
                t.complex("point", *z);
            }
            emit(s, &spec, Some(&t), |w| spectra::write_points_csv(&points, w))
        }
    }
}

fn scenario(s: &Settings, cmd: &ScenarioCmd) -> Result<(), CliError> {
    match cmd {
        ScenarioCmd::List => {
            let infos = scenarios::list();
            let mut t = Table::new();
            for i in &infos {
                let tag = if i.exploratory { " [exploratory]" } else { "" };
                t.text(&i.id, &format!("{}{tag}", i.claim));
            }
            emit(s, &infos, Some(&t), |w| t.write_csv(w))
        }
        ScenarioCmd::Run { id, all, multiplier } => {
            let overrides = Overrides { order: s.order, internal_order: s.tail, multiplier: *multiplier, tol: Some(s.tol) };
            let reports = if *all {
                scenarios::run_all(&overrides)?
            } else {
                vec![scenarios::run(id.as_deref().unwrap_or_default(), &overrides)?]
            };
            let table = output::scenario_table(&reports);
            let csv = |w: &mut dyn std::io::Write| output::scenario_csv(&reports, w);
            if *all {
                emit(s, &reports, Some(&table), csv)?;
            } else {
                emit(s, &reports[0], Some(&table), csv)?;
            }
            let failed: Vec<String> =
                reports.iter().filter(|r| r.verdict == Verdict::Fail).map(|r: &ScenarioReport| r.id.clone()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::ScenarioFailed(failed))
            }
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let s = Settings::resolve(&cli.global)?;
    match &cli.command {
        Command::Classify { map } => classify(&s, map),
        Command::Block { op } => block(&s, op),
        Command::Probe { op } => probe(&s, op),
        Command::Spectrum(cmd) => spectrum(&s, cmd),
        Command::Scenario(cmd) => scenario(&s, cmd),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("lftlab: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(1),
    }
}
