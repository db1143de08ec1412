//! Command-line surface: `analyze | bounds | extremal | verify`.
//!
//! Every command reads one matrix file, prints a single
//! [`ReportDocument`](crate::report::ReportDocument) as compact JSON on
//! standard output, and (under `--verbose`) a human-readable summary on
//! standard error.
//!
//! Exit codes:
//!
//! | code | meaning                                             |
//! |------|-----------------------------------------------------|
//! | 0    | success                                             |
//! | 1    | `verify` found violations                           |
//! | 2    | usage, parse or IO error                            |
//! | 3    | numeric failure (not positive definite, eigensolver)|
//! | 4    | zero or dependent input vectors                     |
//! | 5    | degenerate (proportional) pencil                    |

use crate::angles::full_report;
use crate::bounds::{
    cos_interval, evaluate_pair, gw_householder_angle, tan_bounds, yan_bound, yeh_bound,
    BoundName,
};
use crate::error::{Error, Result};
use crate::extremal::{classify, construct_kolotilina, construct_main, Side};
use crate::input::{parse_scalar, parse_vector, MatrixFile};
use crate::linalg::Complex64;
use crate::oracle::{run_suite_with_spectrum, OracleConfig, SuiteReport};
use crate::report::{IntervalReport, Payload, ReportDocument};
use crate::spectrum::{analyze, GramPair, Mode, SpectralData, DEFAULT_TOL_MEMBER};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "wielandt",
    version,
    about = "Norm-ratio interval and sharp angle-distortion bounds for a pair of inner products"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the spectral summary of a pair: m, M, kappa, chi, mu,
    /// pencil eigenvalues and extreme-subspace dimensions.
    Analyze(AnalyzeArgs),
    /// Evaluate the angle-distortion bounds, either for a concrete
    /// vector pair (--u/--v) or for an abstract input angle (--phi).
    Bounds(BoundsArgs),
    /// Construct vectors attaining equality: the tangent bound
    /// (--angle/--side) or the modulus bound (--kolotilina --cos-phi).
    Extremal(ExtremalArgs),
    /// Run the randomized verification suite against the pair.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Input matrix file (JSON).
    input: PathBuf,
    /// Human-readable summary on standard error.
    #[arg(long)]
    verbose: bool,
    /// Relative tolerance for extreme-eigenvalue cluster membership.
    #[arg(long, default_value_t = DEFAULT_TOL_MEMBER)]
    tol_member: f64,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BoundsArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// First vector: comma-separated entries, complex as re:im.
    #[arg(long, requires = "v", conflicts_with = "phi")]
    u: Option<String>,
    /// Second vector: comma-separated entries, complex as re:im.
    #[arg(long, requires = "u", conflicts_with = "phi")]
    v: Option<String>,
    /// Abstract input angle in radians, in [0, pi].
    #[arg(long)]
    phi: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Right => Side::Right,
            SideArg::Left => Side::Left,
        }
    }
}

#[derive(Args)]
struct ExtremalArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Vector angle under the first product, in the open interval (0, pi).
    #[arg(long, conflicts_with = "kolotilina")]
    angle: Option<f64>,
    /// Which tangent equality to attain.
    #[arg(long, value_enum, default_value_t = SideArg::Right)]
    side: SideArg,
    /// Construct the eigenvector mixture attaining the modulus bound.
    #[arg(long)]
    kolotilina: bool,
    /// Target cosine of the line angle under the first product, in [0, 1).
    #[arg(long = "cos-phi", requires = "kolotilina")]
    cos_phi: Option<f64>,
    /// Unit phase for the second constructed vector (re:im, default 1).
    #[arg(long, requires = "kolotilina")]
    epsilon: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Root seed for all randomness.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random trials per sampled property.
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    /// Resolution of the deterministic section grid.
    #[arg(long, default_value_t = 256)]
    grid: usize,
    /// Worker threads for the sampling stages (default: all cores;
    /// WIELANDT_THREADS is consulted when the flag is absent).
    #[arg(long)]
    threads: Option<usize>,
    /// Scale the analyzed minimum ratio by this factor before
    /// verification. Any factor other than 1 corrupts the spectrum, so
    /// the suite must fail: a self-test of the oracle's teeth.
    #[arg(long)]
    inject_fault: Option<f64>,
}

/// Entry point for the binary: parse `std::env::args`, run, return the
/// process exit code.
pub fn run() -> i32 {
    run_from(std::env::args_os())
}

/// Testable entry point over explicit arguments.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Maps library errors onto the documented exit codes.
fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::DimensionMismatch(_)
        | Error::NotHermitian { .. }
        | Error::OutOfRange(_)
        | Error::NonFinite(_) => 2,
        Error::NotPositiveDefinite { .. } | Error::EigFailure { .. } => 3,
        Error::ZeroVector | Error::DependentVectors => 4,
        Error::DegeneratePencil => 5,
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Bounds(a) => cmd_bounds(a),
        Command::Extremal(a) => cmd_extremal(a),
        Command::Verify(a) => cmd_verify(a),
    }
}

fn load(common: &CommonArgs) -> Result<(MatrixFile, GramPair, SpectralData)> {
    if !common.tol_member.is_finite() || !(0.0..1.0).contains(&common.tol_member) {
        return Err(Error::OutOfRange(format!(
            "tol-member {} outside [0, 1)",
            common.tol_member
        )));
    }
    let text = std::fs::read_to_string(&common.input).map_err(|e| {
        Error::Parse(format!("cannot read {}: {e}", common.input.display()))
    })?;
    let file = MatrixFile::parse_str(&text)?;
    let pair = file.to_pair()?;
    let spec = analyze(&pair, common.tol_member)?;
    Ok((file, pair, spec))
}

fn verbose_spectrum(spec: &SpectralData) {
    eprintln!(
        "spectrum: m={:.6e} M={:.6e} kappa={:.6e} chi={:.6e} mu={:.6e} \
         min_dim={} max_dim={} proportional={}",
        spec.m_min,
        spec.m_max,
        spec.kappa,
        spec.chi,
        spec.mu,
        spec.min_basis.len(),
        spec.max_basis.len(),
        spec.proportional,
    );
}

fn cmd_analyze(a: AnalyzeArgs) -> Result<i32> {
    let (file, _pair, spec) = load(&a.common)?;
    let note = spec
        .proportional
        .then(|| "proportional inner products: both norms agree up to one scale".to_string());
    let doc = ReportDocument::new("analyze", file.echo(), &spec, Payload::Analyze { note });
    println!("{}", doc.to_json());
    if a.common.verbose {
        verbose_spectrum(&spec);
        eprintln!("pencil eigenvalues: {:?}", spec.pencil_evals);
    }
    Ok(0)
}

fn cmd_bounds(a: BoundsArgs) -> Result<i32> {
    let (file, pair, spec) = load(&a.common)?;
    let payload = match (&a.u, &a.v, a.phi) {
        (Some(u), Some(v), None) => {
            let u = parse_vector(u, file.mode, file.n)?;
            let v = parse_vector(v, file.mode, file.n)?;
            let angles = full_report(&pair, &u, &v)?;
            let bounds = evaluate_pair(&spec, &pair, &u, &v)?;
            let classification = classify(&spec, &pair, &u, &v)?;
            if a.common.verbose {
                verbose_spectrum(&spec);
                for b in &bounds {
                    eprintln!(
                        "{:>14?}: [{}, {}] observed {:.9e} -> {}",
                        b.name,
                        b.lower.map_or("-inf".into(), |x| format!("{x:.9e}")),
                        b.upper.map_or("+inf".into(), |x| format!("{x:.9e}")),
                        b.observed,
                        if b.holds { "holds" } else { "VIOLATED" },
                    );
                }
                eprintln!(
                    "equality: main_right={} main_left={} lines_right={} lines_left={} phase={:?}",
                    classification.main_right,
                    classification.main_left,
                    classification.lines_right,
                    classification.lines_left,
                    classification.phase_condition,
                );
            }
            Payload::BoundsPair { u, v, angles, bounds, classification }
        }
        (None, None, Some(phi)) => {
            let intervals = angle_intervals(&spec, phi)?;
            if a.common.verbose {
                verbose_spectrum(&spec);
                for i in &intervals {
                    eprintln!(
                        "{:>14?}: [{}, {}]",
                        i.name,
                        i.lower.map_or("-inf".into(), |x| format!("{x:.9e}")),
                        i.upper.map_or("+inf".into(), |x| format!("{x:.9e}")),
                    );
                }
            }
            Payload::BoundsAngle { phi, intervals }
        }
        _ => {
            return Err(Error::Parse(
                "give exactly one of --u/--v or --phi".into(),
            ))
        }
    };
    let doc = ReportDocument::new("bounds", file.echo(), &spec, payload);
    println!("{}", doc.to_json());
    Ok(0)
}

/// Interval-only bound evaluations for an abstract input angle. Line-angle
/// estimates are included when the angle is a valid line angle.
fn angle_intervals(spec: &SpectralData, phi: f64) -> Result<Vec<IntervalReport>> {
    let (lo, hi) = tan_bounds(spec, phi)?;
    let mut out = vec![IntervalReport {
        name: BoundName::Tan,
        lower: Some(lo),
        upper: Some(hi),
    }];
    let (lo, hi) = cos_interval(spec, phi.cos())?;
    out.push(IntervalReport { name: BoundName::Cos, lower: Some(lo), upper: Some(hi) });

    if phi <= FRAC_PI_2 + 1e-12 {
        let (lo, hi) = tan_bounds(spec, phi)?;
        out.push(IntervalReport { name: BoundName::Tan2, lower: Some(lo), upper: Some(hi) });
        let c = phi.cos().clamp(0.0, 1.0);
        let yeh = yeh_bound(spec, c)?;
        if yeh.applicable {
            out.push(IntervalReport {
                name: BoundName::Yeh,
                lower: None,
                upper: Some(yeh.bound),
            });
        }
        out.push(IntervalReport {
            name: BoundName::Yan,
            lower: None,
            upper: Some(yan_bound(&spec.pencil_evals, c)?),
        });
        let lo = gw_householder_angle(spec.kappa, phi)?;
        let hi = (2.0 * ((phi / 2.0).tan() * spec.kappa).atan()).min(FRAC_PI_2);
        out.push(IntervalReport {
            name: BoundName::GwHouseholder,
            lower: Some(lo),
            upper: Some(hi),
        });
    }
    Ok(out)
}

fn cmd_extremal(a: ExtremalArgs) -> Result<i32> {
    let (file, pair, spec) = load(&a.common)?;
    let payload = if a.kolotilina {
        let c = a.cos_phi.ok_or_else(|| {
            Error::Parse("--kolotilina needs --cos-phi".into())
        })?;
        let eps = match &a.epsilon {
            Some(text) => parse_scalar(text)?,
            None => Complex64::ONE,
        };
        if matches!(file.mode, Mode::Real) && eps.im != 0.0 {
            return Err(Error::OutOfRange(
                "complex epsilon with a real-mode input".into(),
            ));
        }
        // construct in reduced coordinates, map back through the
        // first product's Cholesky factor
        let chol = pair.g1().cholesky()?;
        let s = chol.reduce(pair.g2());
        let (xt, yt) = construct_kolotilina(&s, c, eps)?;
        let x = chol.solve_adjoint(&xt);
        let y = chol.solve_adjoint(&yt);
        let equality_lhs = pair.ip2(&x, &y)?.norm();
        let sharp = (spec.chi + c) / (1.0 + spec.chi * c);
        let equality_rhs = sharp * pair.norm2(&x)? * pair.norm2(&y)?;
        let classification = classify(&spec, &pair, &x, &y)?;
        if a.common.verbose {
            verbose_spectrum(&spec);
            eprintln!(
                "modulus equality: |<x,y>_2| = {equality_lhs:.12e}, bound side = {equality_rhs:.12e}"
            );
        }
        Payload::Kolotilina {
            x,
            y,
            cos_phi: c,
            epsilon: [eps.re, eps.im],
            equality_lhs,
            equality_rhs,
            classification,
        }
    } else {
        let angle = a.angle.ok_or_else(|| {
            Error::Parse("give --angle (or --kolotilina --cos-phi)".into())
        })?;
        let ep = construct_main(&spec, &pair, angle, a.side.into())?;
        let angles = full_report(&pair, &ep.u, &ep.v)?;
        let classification = classify(&spec, &pair, &ep.u, &ep.v)?;
        if a.common.verbose {
            verbose_spectrum(&spec);
            eprintln!(
                "constructed pair: achieved tan ratio {:.12e} (target side {:?})",
                ep.achieved_ratio, ep.target,
            );
        }
        Payload::Extremal { pair: ep, angles, classification }
    };
    let doc = ReportDocument::new("extremal", file.echo(), &spec, payload);
    println!("{}", doc.to_json());
    Ok(0)
}

fn configure_threads(flag: Option<usize>) -> Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("WIELANDT_THREADS") {
            Ok(text) => Some(text.parse().map_err(|_| {
                Error::Parse(format!("WIELANDT_THREADS \"{text}\" is not a thread count"))
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(Error::OutOfRange("thread count must be at least 1".into()));
        }
        // A pool may already exist when run() is called twice in one
        // process; results are thread-count independent either way.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn verbose_suite(suite: &SuiteReport) {
    for e in &suite.entries {
        eprintln!(
            "{} {} (worst {:.3e}, tolerance {:.3e}, {} trials){}",
            if e.passed { "pass" } else { "FAIL" },
            e.name,
            e.worst,
            e.tolerance,
            e.trials,
            e.note.as_deref().map(|n| format!(" — {n}")).unwrap_or_default(),
        );
    }
    eprintln!(
        "ratio portrait: empirical [{:.9e}, {:.9e}] vs theoretical [{:.9e}, {:.9e}], {} violations",
        suite.ratio.empirical_min,
        suite.ratio.empirical_max,
        suite.ratio.theoretical_min,
        suite.ratio.theoretical_max,
        suite.ratio.violation_count,
    );
}

fn cmd_verify(a: VerifyArgs) -> Result<i32> {
    configure_threads(a.threads)?;
    let (file, pair, spec) = load(&a.common)?;
    if let Some(factor) = a.inject_fault {
        if !(factor > 0.0) || !factor.is_finite() {
            return Err(Error::OutOfRange(format!(
                "fault factor {factor} must be positive"
            )));
        }
    }
    let cfg = OracleConfig {
        seed: a.seed,
        trials: a.trials,
        grid_steps: a.grid,
        dims: vec![file.n],
        tol: 1e-9,
    };
    let spec_used = match a.inject_fault {
        Some(factor) => spec.with_m_scaled(factor),
        None => spec.clone(),
    };
    let suite = run_suite_with_spectrum(&pair, &spec_used, &cfg)?;
    let code = if suite.passed { 0 } else { 1 };
    if a.common.verbose {
        verbose_spectrum(&spec_used);
        verbose_suite(&suite);
    }
    let doc = ReportDocument::new(
        "verify",
        file.echo(),
        &spec_used,
        Payload::Verify { config: cfg, fault_factor: a.inject_fault, suite },
    )
    .with_seed(a.seed);
    println!("{}", doc.to_json());
    Ok(code)
}
