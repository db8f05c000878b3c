//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 domain error.

pub mod args;
pub mod report;

use std::f64::consts::PI;
use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::bipartite::{
    canonical_matrix, concurrence_closed_form, normalization_constant, OverlapState,
};
use crate::classify::{classify, Tolerances, DEFAULT_TOL};
use crate::coherent::{
    as_overlap_state, coherent_overlap_checked, relative_phase, theorem2_check, CoherentLabel,
    QuartetMember, Sign,
};
use crate::error::Error;
use crate::fock::{
    fock_coefficients, fock_coefficients_auto, geometric_alphas, limit_convergence_scan,
    LimitSource, ScanRow,
};
use crate::matrix::{binary_entropy_from_concurrence, concurrence_oracle, entanglement_entropy};
use crate::registry::{EstimatorRegistry, FamilyArgs, FamilyRegistry};

use self::args::ComplexArg;
use self::report::{complex_json, fmt_f64, write_csv_row, ReportEnvelope};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Largest grid `sweep` accepts.
pub const MAX_GRID_POINTS: usize = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "entlab", version, about = "Entanglement of nonorthogonal bipartite and coherent states")]
pub struct Cli {
    /// Emit a JSON report instead of text or CSV.
    #[arg(long, global = true)]
    pub json: bool,

    /// Tolerance for MES and disentanglement decisions.
    #[arg(long, global = true, env = "ENTLAB_TOL")]
    pub tol: Option<f64>,

    /// Override the automatic Fock truncation.
    #[arg(long, global = true)]
    pub cutoff: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct StateArgs {
    #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
    pub mu: ComplexArg,
    #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
    pub nu: ComplexArg,
    /// Overlap ⟨α|γ⟩.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
    pub p: ComplexArg,
    /// Overlap ⟨β|δ⟩.
    #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
    pub q: ComplexArg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Concurrence, normalization and entropy of μ|α⟩|β⟩ + ν|γ⟩|δ⟩.
    Concurrence(StateArgs),
    /// Maximal-entanglement verdict.
    Classify(StateArgs),
    /// Build a maximally entangled coherent-state family member.
    Construct {
        #[command(subcommand)]
        family: FamilyCmd,
    },
    /// Infidelity against a Bell-like state as |α| shrinks.
    LimitScan(LimitScanArgs),
    /// Concurrence over a parameter grid.
    Sweep(SweepArgs),
    /// Overlap ⟨α|γ⟩ of two coherent states.
    Overlap {
        #[arg(long, allow_hyphen_values = true)]
        alpha: ComplexArg,
        #[arg(long, allow_hyphen_values = true)]
        gamma: ComplexArg,
    },
    /// Randomized closed-form vs SVD consistency check.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FamilyCmd {
    /// |α⟩|β⟩ − |β⟩|α⟩
    Antisym {
        #[arg(long, allow_hyphen_values = true)]
        alpha: ComplexArg,
        #[arg(long, allow_hyphen_values = true)]
        beta: ComplexArg,
    },
    /// Same-phase family with real λ′.
    SamePhase {
        #[arg(long, allow_hyphen_values = true)]
        alpha: ComplexArg,
        #[arg(long, allow_hyphen_values = true)]
        beta: ComplexArg,
        #[arg(long, allow_hyphen_values = true)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        sign: String,
    },
    /// Quarter-phase family; needs |α|² + |γ|² = |β|² + |δ|².
    QuarterPhase {
        #[arg(long, allow_hyphen_values = true)]
        alpha: ComplexArg,
        #[arg(long, allow_hyphen_values = true)]
        beta: ComplexArg,
        #[arg(long)]
        gamma_mod: f64,
        #[arg(long)]
        delta_mod: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "+")]
        sign: String,
    },
    /// One of the four equal-modulus states.
    Quartet {
        #[arg(long, allow_hyphen_values = true, default_value = "1,0")]
        alpha: ComplexArg,
        #[arg(long)]
        which: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SourceKind {
    Quartet,
    Wellknown,
    ThreeAlpha,
}

#[derive(Debug, Args)]
pub struct LimitScanArgs {
    /// Quartet member (1-4) when --source is quartet.
    #[arg(long, default_value_t = 1)]
    pub which: u32,
    #[arg(long, value_enum, default_value_t = SourceKind::Quartet)]
    pub source: SourceKind,
    /// Bell-like state compared against; defaults to the stated limit.
    #[arg(long)]
    pub target: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    pub alpha_start: f64,
    #[arg(long, default_value_t = 0.01)]
    pub alpha_end: f64,
    #[arg(long, default_value_t = 9)]
    pub steps: usize,
    /// CSV output (the default unless --json).
    #[arg(long)]
    pub csv: bool,
    /// Worker threads; 0 uses the rayon default.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    P,
    Q,
    Theta,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = SweepParam::Q)]
    pub over: SweepParam,
    #[command(flatten)]
    pub state: StateArgs,
    /// First grid axis: Re of the overlap, or θ.
    #[arg(long, allow_hyphen_values = true)]
    pub min1: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub max1: Option<f64>,
    #[arg(long, default_value_t = 41)]
    pub steps1: usize,
    /// Second grid axis: Im of the overlap, or k = |μ/ν|.
    #[arg(long, allow_hyphen_values = true)]
    pub min2: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub max2: Option<f64>,
    #[arg(long)]
    pub steps2: Option<usize>,
    #[arg(long)]
    pub csv: bool,
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

/// Failure of a command, mapped onto an exit code.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("output error: {e}"))
    }
}

type CmdResult = Result<(), CliError>;

/// Parses `argv` and runs the command, returning the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if code == EXIT_OK {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn tolerance(cli: &Cli) -> Result<f64, CliError> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Usage(format!("--tol must be in (0, 1), got {tol}")));
    }
    Ok(tol)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let tol = tolerance(cli)?;
    match &cli.command {
        Command::Concurrence(s) => cmd_concurrence(cli, s, out),
        Command::Classify(s) => cmd_classify(cli, s, tol, out),
        Command::Construct { family } => cmd_construct(cli, family, tol, out),
        Command::LimitScan(a) => cmd_limit_scan(cli, a, out),
        Command::Sweep(a) => cmd_sweep(cli, a, tol, out),
        Command::Overlap { alpha, gamma } => cmd_overlap(cli, *alpha, *gamma, out),
        Command::Selftest { seed, samples } => cmd_selftest(cli, *seed, *samples, out),
    }
}

fn emit(cli: &Cli, env: &ReportEnvelope, out: &mut dyn Write) -> CmdResult {
    if cli.json {
        env.write_json(out)?;
    } else {
        env.write_text(out)?;
    }
    Ok(())
}

fn state_inputs(s: &StateArgs) -> Value {
    json!({
        "mu": complex_json(s.mu.0),
        "nu": complex_json(s.nu.0),
        "p": complex_json(s.p.0),
        "q": complex_json(s.q.0),
    })
}

fn overlap_state(s: &StateArgs) -> Result<OverlapState, Error> {
    OverlapState::new(s.mu.0, s.nu.0, s.p.0, s.q.0)
}

/// Entropy from the Gram–Schmidt matrix, or from the concurrence when the
/// kets are numerically dependent.
fn entropy_of(state: &OverlapState, concurrence: f64, warnings: &mut Vec<String>) -> Result<f64, Error> {
    match canonical_matrix(state) {
        Ok(m) => entanglement_entropy(&m),
        Err(Error::LinearlyDependent(why)) => {
            warnings.push(format!("entropy from concurrence ({why})"));
            Ok(binary_entropy_from_concurrence(concurrence))
        }
        Err(e) => Err(e),
    }
}

fn cmd_concurrence(cli: &Cli, s: &StateArgs, out: &mut dyn Write) -> CmdResult {
    let state = overlap_state(s)?;
    let concurrence = concurrence_closed_form(&state)?;
    let normalization = normalization_constant(&state)?;
    let mut warnings = Vec::new();
    let entropy = entropy_of(&state, concurrence, &mut warnings)?;
    let env = ReportEnvelope::new(
        "concurrence",
        state_inputs(s),
        json!({
            "concurrence": concurrence,
            "normalization": normalization,
            "entropy": entropy,
        }),
        warnings,
    );
    emit(cli, &env, out)
}

fn cmd_classify(cli: &Cli, s: &StateArgs, tol: f64, out: &mut dyn Write) -> CmdResult {
    let state = overlap_state(s)?;
    let report = classify(&state, Tolerances::uniform(tol))?;
    let mut inputs = state_inputs(s);
    inputs["tol"] = json!(tol);
    let params = report.params;
    let env = ReportEnvelope::new(
        "classify",
        inputs,
        json!({
            "verdict": report.verdict.as_str(),
            "theta": params.map(|p| p.theta),
            "residual": report.residual,
            "concurrence": report.concurrence,
            "reason": report.reason.map(|r| r.as_str()),
            "k": params.map(|p| p.k),
            "a": params.map(|p| p.a),
            "b": params.map(|p| p.b),
            "theta1": params.map(|p| p.theta1),
            "theta2": params.map(|p| p.theta2),
        }),
        Vec::new(),
    );
    emit(cli, &env, out)
}

fn label(z: ComplexArg) -> Result<CoherentLabel, Error> {
    CoherentLabel::new(z.0)
}

fn cmd_construct(cli: &Cli, family: &FamilyCmd, tol: f64, out: &mut dyn Write) -> CmdResult {
    let (name, args, inputs) = match family {
        FamilyCmd::Antisym { alpha, beta } => (
            "antisym",
            FamilyArgs {
                alpha: Some(label(*alpha)?),
                beta: Some(label(*beta)?),
                ..Default::default()
            },
            json!({"alpha": complex_json(alpha.0), "beta": complex_json(beta.0)}),
        ),
        FamilyCmd::SamePhase {
            alpha,
            beta,
            lambda,
            sign,
        } => (
            "same-phase",
            FamilyArgs {
                alpha: Some(label(*alpha)?),
                beta: Some(label(*beta)?),
                lambda: Some(*lambda),
                sign: Some(Sign::parse(sign).map_err(|e| CliError::Usage(e.to_string()))?),
                ..Default::default()
            },
            json!({"alpha": complex_json(alpha.0), "beta": complex_json(beta.0), "lambda": lambda, "sign": sign}),
        ),
        FamilyCmd::QuarterPhase {
            alpha,
            beta,
            gamma_mod,
            delta_mod,
            sign,
        } => (
            "quarter-phase",
            FamilyArgs {
                alpha: Some(label(*alpha)?),
                beta: Some(label(*beta)?),
                gamma_mod: Some(*gamma_mod),
                delta_mod: Some(*delta_mod),
                sign: Some(Sign::parse(sign).map_err(|e| CliError::Usage(e.to_string()))?),
                ..Default::default()
            },
            json!({
                "alpha": complex_json(alpha.0),
                "beta": complex_json(beta.0),
                "gamma_mod": gamma_mod,
                "delta_mod": delta_mod,
                "sign": sign,
            }),
        ),
        FamilyCmd::Quartet { alpha, which } => (
            "quartet",
            FamilyArgs {
                alpha: Some(label(*alpha)?),
                which: Some(*which),
                ..Default::default()
            },
            json!({"alpha": complex_json(alpha.0), "which": which}),
        ),
    };

    let built = FamilyRegistry::default().construct(name, &args)?;
    let s = built.state;
    let mut warnings = built.notes;
    let overlap = as_overlap_state(&s)?;
    let t2 = theorem2_check(s.alpha, s.beta, s.gamma, s.delta, tol)?;

    let mut concurrence = serde_json::Map::new();
    for e in EstimatorRegistry::standard(cli.cutoff).iter() {
        match e.estimate(&s) {
            Ok(c) => {
                concurrence.insert(e.name().to_string(), json!(c));
            }
            Err(err) => {
                warnings.push(format!("{} unavailable: {err}", e.name()));
                concurrence.insert(e.name().to_string(), Value::Null);
            }
        }
    }
    let fock = match cli.cutoff {
        Some(n) => fock_coefficients(&s, n),
        None => fock_coefficients_auto(&s),
    };
    let (cutoff, captured) = match fock {
        Ok(t) => (json!(t.cutoff), json!(t.captured_norm)),
        Err(_) => (Value::Null, Value::Null),
    };

    let env = ReportEnvelope::new(
        "construct",
        json!({"family": name, "params": inputs}),
        json!({
            "family": name,
            "alpha": complex_json(s.alpha.value()),
            "beta": complex_json(s.beta.value()),
            "gamma": complex_json(s.gamma.value()),
            "delta": complex_json(s.delta.value()),
            "mu": complex_json(s.mu),
            "nu": complex_json(s.nu),
            "theta": relative_phase(&s),
            "theorem2": {
                "real_part_gap": t2.real_part_gap,
                "theta": t2.theta,
                "satisfiable": t2.satisfiable,
            },
            "concurrence": Value::Object(concurrence),
            "normalization": normalization_constant(&overlap)?,
            "cutoff": cutoff,
            "captured_norm": captured,
        }),
        warnings,
    );
    emit(cli, &env, out)
}

fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    if threads == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn cmd_limit_scan(cli: &Cli, a: &LimitScanArgs, out: &mut dyn Write) -> CmdResult {
    let alphas = geometric_alphas(a.alpha_start, a.alpha_end, a.steps)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let source = match a.source {
        SourceKind::Quartet => LimitSource::Quartet(
            QuartetMember::from_index(a.which).map_err(|e| CliError::Usage(e.to_string()))?,
        ),
        SourceKind::Wellknown => LimitSource::WellKnown,
        SourceKind::ThreeAlpha => LimitSource::ThreeAlpha,
    };
    let target = a.target.unwrap_or_else(|| source.stated_limit());
    if !(1..=4).contains(&target) {
        return Err(CliError::Usage(format!("--target must be 1-4, got {target}")));
    }
    let cutoff = cli.cutoff;
    let rows: Vec<ScanRow> = with_threads(a.threads, || {
        alphas
            .par_iter()
            .map(|&x| limit_convergence_scan(source, target, &[x], cutoff).map(|r| r[0]))
            .collect::<Result<Vec<_>, _>>()
    })??;

    if cli.json {
        let env = ReportEnvelope::new(
            "limit-scan",
            json!({
                "source": source.name(),
                "target": target,
                "alpha_start": a.alpha_start,
                "alpha_end": a.alpha_end,
                "steps": a.steps,
                "cutoff": cutoff,
            }),
            json!({ "rows": rows }),
            Vec::new(),
        );
        return emit(cli, &env, out);
    }
    write_csv_row(out, &["alpha,infidelity,concurrence,captured_norm".into()])?;
    for r in &rows {
        write_csv_row(
            out,
            &[
                fmt_f64(r.alpha),
                fmt_f64(r.infidelity),
                fmt_f64(r.concurrence),
                fmt_f64(r.captured_norm),
            ],
        )?;
    }
    Ok(())
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

#[derive(Debug, Clone, Copy)]
struct SweepPoint {
    param1: f64,
    param2: f64,
    concurrence: f64,
    is_mes: bool,
}

fn cmd_sweep(cli: &Cli, a: &SweepArgs, tol: f64, out: &mut dyn Write) -> CmdResult {
    let (d1, d2) = match a.over {
        SweepParam::P | SweepParam::Q => ((-1.0, 1.0), (-1.0, 1.0, 41)),
        SweepParam::Theta => ((-PI, PI), (1.0, 1.0, 1)),
    };
    let (min1, max1) = (a.min1.unwrap_or(d1.0), a.max1.unwrap_or(d1.1));
    let (min2, max2) = (a.min2.unwrap_or(d2.0), a.max2.unwrap_or(d2.1));
    let steps2 = a.steps2.unwrap_or(d2.2);
    if a.steps1 == 0 || steps2 == 0 {
        return Err(CliError::Usage("grid steps must be positive".into()));
    }
    let points = a.steps1.saturating_mul(steps2);
    if points > MAX_GRID_POINTS {
        return Err(CliError::Usage(format!(
            "grid of {points} points exceeds the limit of {MAX_GRID_POINTS}"
        )));
    }
    if ![min1, max1, min2, max2].iter().all(|x| x.is_finite()) {
        return Err(CliError::Usage("grid bounds must be finite".into()));
    }
    let axis1 = linspace(min1, max1, a.steps1);
    let axis2 = linspace(min2, max2, steps2);
    let grid: Vec<(f64, f64)> = axis1
        .iter()
        .flat_map(|&x| axis2.iter().map(move |&y| (x, y)))
        .collect();

    let base = a.state.clone();
    let over = a.over;
    let tols = Tolerances::uniform(tol);
    let eval = move |(x, y): (f64, f64)| -> Option<SweepPoint> {
        let (mu, nu, p, q) = (base.mu.0, base.nu.0, base.p.0, base.q.0);
        let state = match over {
            SweepParam::P => OverlapState::new(mu, nu, Complex64::new(x, y), q),
            SweepParam::Q => OverlapState::new(mu, nu, p, Complex64::new(x, y)),
            SweepParam::Theta => OverlapState::new(nu * Complex64::from_polar(y, x), nu, p, q),
        }
        .ok()?;
        let report = classify(&state, tols).ok()?;
        Some(SweepPoint {
            param1: x,
            param2: y,
            concurrence: report.concurrence,
            is_mes: report.verdict.is_mes(),
        })
    };
    let results: Vec<Option<SweepPoint>> =
        with_threads(a.threads, || grid.par_iter().map(|&g| eval(g)).collect())?;
    let skipped = results.iter().filter(|r| r.is_none()).count();
    let rows: Vec<SweepPoint> = results.into_iter().flatten().collect();
    let warnings: Vec<String> = if skipped > 0 {
        vec![format!("{skipped} grid points outside the valid domain were skipped")]
    } else {
        Vec::new()
    };

    if cli.json {
        let mut inputs = state_inputs(&a.state);
        inputs["over"] = json!(format!("{:?}", a.over).to_lowercase());
        inputs["axis1"] = json!([min1, max1, a.steps1]);
        inputs["axis2"] = json!([min2, max2, steps2]);
        inputs["tol"] = json!(tol);
        let json_rows: Vec<Value> = rows
            .iter()
            .map(|r| json!({"param1": r.param1, "param2": r.param2, "concurrence": r.concurrence, "is_mes": r.is_mes}))
            .collect();
        let env = ReportEnvelope::new("sweep", inputs, json!({ "rows": json_rows }), warnings);
        return emit(cli, &env, out);
    }
    write_csv_row(out, &["param1,param2,concurrence,is_mes".into()])?;
    for r in &rows {
        write_csv_row(
            out,
            &[
                fmt_f64(r.param1),
                fmt_f64(r.param2),
                fmt_f64(r.concurrence),
                r.is_mes.to_string(),
            ],
        )?;
    }
    Ok(())
}

fn cmd_overlap(cli: &Cli, alpha: ComplexArg, gamma: ComplexArg, out: &mut dyn Write) -> CmdResult {
    let (z, underflow) = coherent_overlap_checked(label(alpha)?, label(gamma)?);
    let warnings = if underflow {
        vec!["overlap underflowed to zero".to_string()]
    } else {
        Vec::new()
    };
    let env = ReportEnvelope::new(
        "overlap",
        json!({"alpha": complex_json(alpha.0), "gamma": complex_json(gamma.0)}),
        json!({"overlap": complex_json(z), "modulus": z.norm(), "underflow": underflow}),
        warnings,
    );
    emit(cli, &env, out)
}

/// Seeded random overlap state with `|μ|, |ν| ≤ 10` and `|p|, |q| ≤ 0.99`.
pub fn random_overlap_state(rng: &mut impl Rng) -> OverlapState {
    let mut coeff = |max: f64| Complex64::from_polar(max * rng.gen::<f64>().sqrt(), rng.gen_range(-PI..PI));
    let mu = coeff(10.0);
    let nu = coeff(10.0);
    let p = coeff(0.99);
    let q = coeff(0.99);
    OverlapState::new(mu, nu, p, q).expect("sampled inside the valid domain")
}

fn cmd_selftest(cli: &Cli, seed: u64, samples: usize, out: &mut dyn Write) -> CmdResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..samples {
        let s = random_overlap_state(&mut rng);
        let closed = concurrence_closed_form(&s)?;
        let oracle = concurrence_oracle(&canonical_matrix(&s)?)?;
        worst = worst.max((closed - oracle).abs());
    }
    let pass = worst < 1e-12;
    let env = ReportEnvelope::new(
        "selftest",
        json!({"seed": seed, "samples": samples}),
        json!({"max_abs_diff": worst, "pass": pass}),
        Vec::new(),
    );
    emit(cli, &env, out)?;
    if pass {
        Ok(())
    } else {
        Err(CliError::Domain(Error::Inconsistent(format!(
            "closed form and SVD differ by {worst:e}"
        ))))
    }
}
