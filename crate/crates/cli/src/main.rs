#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod emit;
mod svg;
mod verify;

use std::f64::consts::PI;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use imcf_soliton::classifier::{completeness_all, shape_class_with};
use imcf_soliton::diffgeo::sample_curve;
use imcf_soliton::phaseplane::{fixed_directions, integrate_trajectory, FixedDirection};
use imcf_soliton::{
    validate_with, Branch, BranchCurve, CompletenessReport, DerivativeMode, PhaseState,
    PhaseTrajectory, RegimeKind, ShapeClass, SolitonError, SolitonParams, ThetaWindow, Tolerances,
};
use serde::Serialize;

use config::ToleranceArgs;
use verify::{verify_generated, verify_input, InputOptions, VerifyReport};

#[derive(Parser)]
#[command(
    name = "imcf-soliton",
    version,
    about = "Plane curves that move under inverse mean curvature flow by rotation and scaling"
)]
struct Cli {
    #[command(flatten)]
    tol: ToleranceArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Regime, spiral rates, shape class and per-branch completeness
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = TextFormat::Text)]
        format: TextFormat,
    },
    /// Sample one branch to CSV or JSON
    Generate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        branch: Branch,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
        format: DataFormat,
        #[arg(long, value_enum, default_value_t = Derivatives::Analytic)]
        derivatives: Derivatives,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check residuals, flow law and cusps of generated branches or a curve file
    Verify(VerifyArgs),
    /// Phase-plane trajectories and fixed directions
    Phase {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = PhaseFormat::Csv)]
        format: PhaseFormat,
        /// Number of starting points on the unit circle
        #[arg(long, default_value_t = 16)]
        trajectories: usize,
        /// Integrate over sbar in [-span, span]
        #[arg(long, default_value_t = 3.0)]
        span: f64,
        #[arg(long, default_value_t = 1e-2)]
        step: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw branches (or the phase portrait with --phase) as SVG
    Plot {
        #[command(flatten)]
        params: ParamArgs,
        /// Plot a single branch; all admissible branches otherwise
        #[arg(long)]
        branch: Option<Branch>,
        #[command(flatten)]
        window: WindowArgs,
        #[arg(long)]
        phase: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    /// Rotation speed
    #[arg(long, allow_hyphen_values = true)]
    c: f64,
    /// Expansion rate
    #[arg(long, allow_hyphen_values = true)]
    d: f64,
}

impl ParamArgs {
    fn get(self) -> Result<SolitonParams> {
        let p = SolitonParams::new(self.c, self.d);
        if !p.is_finite() {
            bail!("--c and --d must be finite");
        }
        Ok(p)
    }
}

#[derive(Args, Clone, Copy)]
struct WindowArgs {
    #[arg(long, allow_hyphen_values = true)]
    theta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta_max: Option<f64>,
    #[arg(long, default_value_t = 2000)]
    samples: usize,
}

impl WindowArgs {
    fn window_or(self, default: ThetaWindow) -> Result<ThetaWindow> {
        Ok(ThetaWindow::new(
            self.theta_min.unwrap_or(default.min),
            self.theta_max.unwrap_or(default.max),
        )?)
    }
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    /// Check one branch; all admissible branches otherwise
    #[arg(long)]
    branch: Option<Branch>,
    #[command(flatten)]
    window: WindowArgs,
    /// Curve CSV to check instead of generating
    #[arg(long)]
    input: Option<PathBuf>,
    /// Check the input against upward translation
    #[arg(long)]
    translation: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum TextFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DataFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum PhaseFormat {
    Csv,
    Json,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Derivatives {
    Analytic,
    FiniteDifference,
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(io::BufWriter::new(
            fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout().lock())),
    })
}

#[derive(Serialize)]
struct Classification {
    params: SolitonParams,
    regime: RegimeKind,
    discriminant: f64,
    k: f64,
    alpha: Option<f64>,
    beta: Option<f64>,
    shape_class: Option<ShapeClass>,
    fixed_directions: Vec<FixedDirection<f64>>,
    branches: Vec<CompletenessReport>,
}

fn classify(params: SolitonParams, tol: &Tolerances) -> Result<Classification> {
    let regime = validate_with(params, tol.discriminant)?;
    Ok(Classification {
        params,
        regime: regime.kind,
        discriminant: params.discriminant(),
        k: regime.k,
        alpha: regime.alpha,
        beta: regime.beta,
        shape_class: match regime.kind {
            RegimeKind::Undercritical => Some(shape_class_with(params, tol.discriminant)?),
            _ => None,
        },
        fixed_directions: fixed_directions(params)?,
        branches: completeness_all(params, tol.discriminant)?,
    })
}

fn print_classification(mut out: impl Write, c: &Classification) -> Result<()> {
    writeln!(out, "params        c = {}, d = {}", c.params.c, c.params.d)?;
    writeln!(out, "regime        {}", c.regime)?;
    writeln!(out, "discriminant  {}", c.discriminant)?;
    writeln!(out, "K             {}", c.k)?;
    if let (Some(a), Some(b)) = (c.alpha, c.beta) {
        writeln!(out, "alpha         {a}")?;
        writeln!(out, "beta          {b}")?;
    }
    if let Some(s) = c.shape_class {
        writeln!(
            out,
            "shape class   {}",
            serde_json::to_value(s)?.as_str().unwrap_or_default()
        )?;
    }
    for f in &c.fixed_directions {
        writeln!(
            out,
            "fixed line    tan(phi) = {} (multiplicity {})",
            f.tan_phi, f.multiplicity
        )?;
    }
    writeln!(out, "branches")?;
    for b in &c.branches {
        let embedded = match b.embedded {
            Some(true) => "embedded",
            Some(false) => "not embedded",
            None => "embeddedness unknown",
        };
        writeln!(
            out,
            "  {:<20} {}, {}, {}, {}: {}",
            b.branch.name(),
            if b.complete { "complete" } else { "incomplete" },
            if b.compact { "compact" } else { "non-compact" },
            embedded,
            if b.smooth { "smooth" } else { "singular" },
            b.notes
        )?;
    }
    Ok(())
}

fn admissible(params: SolitonParams, tol: &Tolerances) -> Result<Vec<Branch>> {
    let kind = validate_with(params, tol.discriminant)?.kind;
    Ok(Branch::for_regime(kind).to_vec())
}

/// Plot window: wide enough to show the cusps, narrow enough that the
/// fastest spiral term grows by at most `e^4`.
fn plot_window(
    params: SolitonParams,
    branches: &[Branch],
    tol: &Tolerances,
) -> Result<ThetaWindow> {
    let mut half: f64 = 3.0 * PI;
    let mut need: f64 = 0.0;
    for &b in branches {
        let curve = BranchCurve::with_tolerance(params, b, tol.discriminant)?;
        if curve.max_growth() > 0.0 {
            half = half.min(4.0 / curve.max_growth());
        }
        if let Some(r) = curve
            .regime()
            .filter(|r| r.kind == RegimeKind::Undercritical)
        {
            need = need.max(1.6 * PI / r.k);
        }
        let cusps = curve.cusps_in(ThetaWindow::symmetric(6.0 * PI)?);
        if let Some(nearest) = cusps.iter().map(|c| c.abs()).reduce(f64::min) {
            need = need.max(nearest + 0.5);
        }
    }
    Ok(ThetaWindow::symmetric(half.max(need))?)
}

fn phase_trajectories(
    params: SolitonParams,
    n: usize,
    span: f64,
    step: f64,
) -> Result<Vec<PhaseTrajectory>> {
    if !(span > 0.0) {
        bail!("--span must be positive");
    }
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        let phi = (j as f64 + 0.5) * 2.0 * PI / n as f64;
        let start = PhaseState::from_polar(1.0, phi);
        for dir in [1.0, -1.0] {
            let mut reach = span;
            let traj = loop {
                match integrate_trajectory(params, start, (0.0, dir * reach), step) {
                    Err(SolitonError::Range { .. }) if reach > step => reach /= 2.0,
                    other => break other?,
                }
            };
            out.push(traj);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct PhaseDoc<'a> {
    params: SolitonParams,
    regime: RegimeKind,
    fixed_directions: &'a [FixedDirection<f64>],
    trajectories: &'a [PhaseTrajectory],
}

fn write_phase_csv(
    mut out: impl Write,
    params: SolitonParams,
    fixed: &[FixedDirection<f64>],
    trajs: &[PhaseTrajectory],
) -> Result<()> {
    writeln!(out, "# imcf-soliton phase plane")?;
    writeln!(out, "# params c={} d={}", params.c, params.d)?;
    let tans: Vec<String> = fixed.iter().map(|f| f.tan_phi.to_string()).collect();
    writeln!(
        out,
        "# fixed-directions {}",
        if tans.is_empty() {
            "none".to_string()
        } else {
            tans.join(" ")
        }
    )?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["trajectory", "sbar", "tau", "nu", "r", "phi"])?;
    for (i, t) in trajs.iter().enumerate() {
        for (s, st) in t.sbar_grid.iter().zip(&t.states) {
            w.write_record([
                i.to_string(),
                emit::num(*s),
                emit::num(st.tau),
                emit::num(st.nu),
                emit::num(st.r),
                emit::num(st.phi),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let tol = cli.tol.resolve()?;
    match cli.command {
        Command::Classify { params, format } => {
            let report = classify(params.get()?, &tol)?;
            let mut out = sink(&None)?;
            match format {
                TextFormat::Text => print_classification(&mut out, &report)?,
                TextFormat::Json => {
                    serde_json::to_writer_pretty(&mut out, &report)?;
                    writeln!(out)?;
                }
            }
            out.flush()?;
        }
        Command::Generate {
            params,
            branch,
            window,
            format,
            derivatives,
            out,
        } => {
            let params = params.get()?;
            let w = window.window_or(ThetaWindow::default_window())?;
            let mode = match derivatives {
                Derivatives::Analytic => DerivativeMode::Analytic,
                Derivatives::FiniteDifference => {
                    DerivativeMode::FiniteDifference { step: tol.fd_step }
                }
            };
            let curve = sample_curve(params, branch, w, window.samples, &tol, mode)?;
            let mut sink = sink(&out)?;
            match format {
                DataFormat::Csv => emit::write_csv(&mut sink, &curve, w, window.samples)?,
                DataFormat::Json => emit::write_json(&mut sink, &curve, w)?,
            }
            sink.flush()?;
        }
        Command::Verify(args) => {
            let params = match (args.c, args.d) {
                (Some(c), Some(d)) => Some(SolitonParams::new(c, d)),
                (None, None) => None,
                _ => bail!("--c and --d must be given together"),
            };
            let report = if let Some(path) = &args.input {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("cannot read {}", path.display()))?;
                let file = emit::read_csv(&text)?;
                let opts = InputOptions {
                    params,
                    branch: args.branch,
                    translation: args.translation,
                };
                let r = verify_input(&file, &opts, &tol)?;
                VerifyReport::new(params.or(file.params), vec![r])
            } else {
                let Some(params) = params else {
                    bail!("verify needs --c and --d, or --input");
                };
                let w = args.window.window_or(ThetaWindow::default_window())?;
                let branches = match args.branch {
                    Some(b) => vec![b],
                    None => admissible(params, &tol)?,
                };
                let reports = branches
                    .into_iter()
                    .map(|b| verify_generated(params, b, w, args.window.samples, &tol))
                    .collect::<Result<Vec<_>>>()?;
                VerifyReport::new(Some(params), reports)
            };
            let mut out = sink(&None)?;
            serde_json::to_writer_pretty(&mut out, &report)?;
            writeln!(out)?;
            out.flush()?;
            if !report.pass {
                for r in report.reports.iter().filter(|r| !r.pass) {
                    let name = r.branch.map_or("input", |b| b.name());
                    eprintln!("verification failed for {name}: {}", r.failures.join("; "));
                    if !r.offending_rows.is_empty() {
                        let rows: Vec<String> =
                            r.offending_rows.iter().map(u64::to_string).collect();
                        eprintln!("  offending rows: {}", rows.join(", "));
                    }
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Phase {
            params,
            format,
            trajectories,
            span,
            step,
            out,
        } => {
            let params = params.get()?;
            let regime = validate_with(params, tol.discriminant)?;
            let fixed = fixed_directions(params)?;
            let trajs = phase_trajectories(params, trajectories, span, step)?;
            let mut sink = sink(&out)?;
            match format {
                PhaseFormat::Csv => write_phase_csv(&mut sink, params, &fixed, &trajs)?,
                PhaseFormat::Json => {
                    let doc = PhaseDoc {
                        params,
                        regime: regime.kind,
                        fixed_directions: &fixed,
                        trajectories: &trajs,
                    };
                    serde_json::to_writer_pretty(&mut sink, &doc)?;
                    writeln!(sink)?;
                }
                PhaseFormat::Svg => {
                    sink.write_all(svg::phase_svg(params, &fixed, &trajs).as_bytes())?
                }
            }
            sink.flush()?;
        }
        Command::Plot {
            params,
            branch,
            window,
            phase,
            out,
        } => {
            let params = params.get()?;
            let doc = if phase {
                validate_with(params, tol.discriminant)?;
                let fixed = fixed_directions(params)?;
                let trajs = phase_trajectories(params, 16, 3.0, 1e-2)?;
                svg::phase_svg(params, &fixed, &trajs)
            } else {
                let branches = match branch {
                    Some(b) => vec![b],
                    None => admissible(params, &tol)?,
                };
                let w = window.window_or(plot_window(params, &branches, &tol)?)?;
                let mut plots = Vec::new();
                for b in branches {
                    let sampled =
                        sample_curve(params, b, w, window.samples, &tol, DerivativeMode::Analytic)?;
                    let curve = BranchCurve::with_tolerance(params, b, tol.discriminant)?;
                    let cusps = sampled
                        .cusps
                        .iter()
                        .map(|&t| curve.eval(t))
                        .collect::<imcf_soliton::Result<Vec<_>>>()?;
                    plots.push(svg::CurvePlot {
                        branch: b,
                        points: sampled.samples.iter().map(|s| s.position).collect(),
                        cusps,
                    });
                }
                svg::curve_svg(params, &plots)
            };
            let mut sink = sink(&out)?;
            sink.write_all(doc.as_bytes())?;
            sink.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<SolitonError>() {
                Some(SolitonError::DegenerateMotion) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
