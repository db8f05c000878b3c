//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use entlab::bipartite::{canonical_matrix, concurrence_closed_form, normalization_constant, OverlapState};
use entlab::classify::{classify, is_disentangled, DisentangledReason, Tolerances, DEFAULT_TOL};
use entlab::cli::random_overlap_state;
use entlab::coherent::{
    antisymmetric_mes, as_overlap_state, quarter_phase_family, quartet, quartet_normalization,
    same_phase_family, CoherentLabel, CoherentPairState, QuartetMember, Sign,
};
use entlab::fock::{
    bell_like_limit, fock_coefficients, fock_coefficients_auto, fock_parity, numeric_concurrence,
    observed_bell_limit, LimitSource,
};
use entlab::matrix::{concurrence_oracle, fidelity};

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn polar(r: f64, phi: f64) -> Complex64 {
    Complex64::from_polar(r, phi)
}

fn random_label(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> CoherentLabel {
    CoherentLabel::new(polar(rng.gen_range(lo..=hi), rng.gen_range(-PI..PI))).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let s = random_overlap_state(&mut rng);
        let closed = concurrence_closed_form(&s).map_err(|e| e.to_string())?;
        let m = canonical_matrix(&s).map_err(|e| e.to_string())?;
        let oracle = concurrence_oracle(&m).map_err(|e| e.to_string())?;
        worst = worst.max((closed - oracle).abs());
    }
    let detail = format!("10000 states, max |closed - oracle| = {worst:e}");
    if worst < 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

/// `p = sin a·e^{iθ₁}`, `q = −p*e^{iθ}`, `μ = νe^{iθ}`.
fn case_one(rng: &mut ChaCha8Rng, min_overlap: f64) -> OverlapState {
    let p = polar(rng.gen_range(min_overlap..0.99), rng.gen_range(-PI..PI));
    let theta = rng.gen_range(-PI..PI);
    let nu = polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI));
    OverlapState::new(nu * polar(1.0, theta), nu, p, -p.conj() * polar(1.0, theta)).unwrap()
}

fn orthogonal_mes(rng: &mut ChaCha8Rng) -> OverlapState {
    let nu = polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI));
    let mu = nu * polar(1.0, rng.gen_range(-PI..PI));
    OverlapState::new(mu, nu, c(0.0, 0.0), c(0.0, 0.0)).unwrap()
}

/// Pushes an MES state off the manifold by a modulus ratio or a phase kick
/// of at least `1e-3`.
fn perturbed(rng: &mut ChaCha8Rng) -> OverlapState {
    let s = case_one(rng, 0.3);
    let size = 10f64.powf(rng.gen_range(-3.0..-1.0));
    match rng.gen_range(0..3) {
        0 => s.with_coefficients(s.mu() * (1.0 + size), s.nu()).unwrap(),
        1 => OverlapState::new(s.mu(), s.nu(), s.p(), s.q() * polar(1.0, 10.0 * size)).unwrap(),
        _ => {
            let o = orthogonal_mes(rng);
            o.with_coefficients(o.mu() * (1.0 - size), o.nu()).unwrap()
        }
    }
}

fn mes_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let tol = DEFAULT_TOL;
    let mut states = Vec::with_capacity(10_000);
    for i in 0..10_000 {
        states.push(match i % 5 {
            0 | 1 => random_overlap_state(&mut rng),
            2 => case_one(&mut rng, 0.0),
            3 => orthogonal_mes(&mut rng),
            _ => perturbed(&mut rng),
        });
    }
    let mut mismatches = 0;
    let mut mes_count = 0;
    for s in &states {
        let r = classify(s, Tolerances::uniform(tol)).map_err(|e| e.to_string())?;
        mes_count += r.verdict.is_mes() as usize;
        if r.verdict.is_mes() != (r.concurrence > 1.0 - 10.0 * tol) {
            mismatches += 1;
        }
    }
    let mut case_one_worst: f64 = 0.0;
    let mut case_one_non_mes = 0;
    for _ in 0..1_000 {
        let s = case_one(&mut rng, 1e-3);
        let r = classify(&s, Tolerances::uniform(tol)).map_err(|e| e.to_string())?;
        case_one_non_mes += (!r.verdict.is_mes()) as usize;
        case_one_worst = case_one_worst.max((r.concurrence - 1.0).abs());
    }
    let detail = format!(
        "10000 states ({mes_count} MES), {mismatches} verdict/concurrence mismatches; \
         case-1: {case_one_non_mes} non-MES, max |C - 1| = {case_one_worst:e}"
    );
    if mismatches == 0 && case_one_non_mes == 0 && case_one_worst < 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

#[derive(Clone, Copy)]
enum Family {
    Antisymmetric,
    SamePhase,
    QuarterPhase,
    Quartet,
}

fn draw_family(rng: &mut ChaCha8Rng, family: Family) -> CoherentPairState {
    match family {
        Family::Antisymmetric => loop {
            let a = random_label(rng, 0.2, 2.0);
            let b = random_label(rng, 0.2, 2.0);
            if (a.value() - b.value()).norm() >= 0.2 {
                return antisymmetric_mes(a, b).unwrap();
            }
        },
        Family::SamePhase => {
            let a = random_label(rng, 0.2, 2.0);
            let b = random_label(rng, 0.2, 2.0);
            let lambda = rng.gen_range(0.2..=2.0) * if rng.gen() { 1.0 } else { -1.0 };
            let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
            same_phase_family(a, b, lambda, sign).unwrap().state
        }
        Family::QuarterPhase => loop {
            let a = random_label(rng, 0.2, 2.0);
            let b = random_label(rng, 0.2, 2.0);
            let gm: f64 = rng.gen_range(0.2..=2.0);
            let d2 = a.modulus().powi(2) + gm * gm - b.modulus().powi(2);
            if d2 >= 0.04 {
                let sign = if rng.gen() { Sign::Plus } else { Sign::Minus };
                return quarter_phase_family(a, b, gm, d2.sqrt(), sign).unwrap();
            }
        },
        Family::Quartet => {
            let a = random_label(rng, 0.2, 2.0);
            let w = QuartetMember::ALL[rng.gen_range(0..4)];
            quartet(a, w).unwrap()
        }
    }
}

fn family_concurrence() -> Outcome {
    let families = [
        ("antisymmetric", Family::Antisymmetric),
        ("same-phase", Family::SamePhase),
        ("quarter-phase", Family::QuarterPhase),
        ("quartet", Family::Quartet),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (k, (name, family)) in families.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(30 + k as u64);
        let states: Vec<CoherentPairState> = (0..1_000).map(|_| draw_family(&mut rng, *family)).collect();
        let errs: Vec<(f64, f64)> = states
            .par_iter()
            .map(|s| {
                let closed = concurrence_closed_form(&as_overlap_state(s)?)?;
                let fock = numeric_concurrence(&fock_coefficients_auto(s)?)?;
                Ok(((closed - 1.0).abs(), (fock - 1.0).abs()))
            })
            .collect::<entlab::Result<_>>()
            .map_err(|e: entlab::Error| format!("{name}: {e}"))?;
        let closed = errs.iter().map(|e| e.0).fold(0.0, f64::max);
        let fock = errs.iter().map(|e| e.1).fold(0.0, f64::max);
        ok &= closed < 1e-12 && fock < 1e-8;
        parts.push(format!("{name}: closed {closed:.1e}, fock {fock:.1e}"));
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn quartet_normalization_paths() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in [0.1, 1.0, 3.0] {
        for phase in [0.0, 0.7, -2.3] {
            let a = CoherentLabel::new(polar(m, phase)).unwrap();
            let closed = quartet_normalization(a).map_err(|e| e.to_string())?;
            for w in QuartetMember::ALL {
                let s = quartet(a, w).map_err(|e| e.to_string())?;
                let general = normalization_constant(&as_overlap_state(&s).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                worst = worst.max((general - closed).abs() / closed);
            }
        }
    }
    let detail = format!("|alpha| in {{0.1, 1, 3}}, max relative gap = {worst:e}");
    if worst < 1e-13 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn parity_mapping() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in [0.1, 0.5, 1.0, 2.0, 3.0] {
        for phase in [0.0, 1.1] {
            let a = CoherentLabel::new(polar(m, phase)).unwrap();
            for (from, to) in [(QuartetMember::First, QuartetMember::Third), (QuartetMember::Second, QuartetMember::Fourth)] {
                let src = fock_coefficients_auto(&quartet(a, from).unwrap()).map_err(|e| e.to_string())?;
                let n = src.cutoff;
                let dst = fock_coefficients(&quartet(a, to).unwrap(), n).map_err(|e| e.to_string())?;
                let flipped = fock_parity(&src).amps.normalized();
                let target = dst.amps.normalized();
                for (x, y) in flipped.entries().iter().zip(target.entries()) {
                    worst = worst.max((x - y).norm());
                }
            }
        }
    }
    let detail = format!("quartets 1,2 -> 3,4, max entrywise gap = {worst:e}");
    if worst < 1e-12 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn bell_limits() -> Outcome {
    let alphas = [0.3, 0.1, 0.03, 0.01];
    let mut ok = true;
    let mut lines = Vec::new();
    for w in QuartetMember::ALL {
        let target = bell_like_limit(w.index()).unwrap().to_matrix();
        let mut row = Vec::new();
        let mut pass = true;
        for &x in &alphas {
            let s = quartet(CoherentLabel::real(x).unwrap(), w).unwrap();
            let t = fock_coefficients_auto(&s).map_err(|e| e.to_string())?;
            let inf = 1.0 - fidelity(&t.amps, &target).map_err(|e| e.to_string())?;
            pass &= inf < 2.0 * x * x;
            row.push(format!("{:.2}", inf / (x * x)));
        }
        let (seen, f) = observed_bell_limit(LimitSource::Quartet(w), 0.01).map_err(|e| e.to_string())?;
        ok &= pass;
        lines.push(format!(
            "    quartet {} vs Bell {}: {} (infidelity/|a|^2 = {}); closest Bell state at |a|=0.01 is {} (F = {:.6})",
            w.index(),
            w.index(),
            if pass { "ok" } else { "exceeds 2|a|^2" },
            row.join(", "),
            seen,
            f,
        ));
    }
    for w in [QuartetMember::First, QuartetMember::Third] {
        for &x in &alphas {
            let s = quartet(CoherentLabel::real(x).unwrap(), w).unwrap();
            let v = fock_coefficients_auto(&s).map_err(|e| e.to_string())?.amps.get(0, 0);
            let exact = v == c(0.0, 0.0);
            ok &= exact;
            if !exact {
                lines.push(format!("    quartet {} vacuum amplitude {v} at |a|={x}", w.index()));
            }
        }
    }
    lines.push("    vacuum amplitude of quartets 1 and 3 is exactly zero".into());
    for source in [LimitSource::WellKnown, LimitSource::ThreeAlpha] {
        let s = source.state(CoherentLabel::real(0.01).unwrap()).unwrap();
        let t = fock_coefficients_auto(&s).map_err(|e| e.to_string())?;
        let f = fidelity(&t.amps, &bell_like_limit(4).unwrap().to_matrix()).map_err(|e| e.to_string())?;
        let (seen, fs) = observed_bell_limit(source, 0.01).map_err(|e| e.to_string())?;
        ok &= f > 0.999;
        lines.push(format!(
            "    {} vs Bell 4 at |a|=0.01: F = {f:.6} ({}); closest Bell state is {seen} (F = {fs:.6})",
            source.name(),
            if f > 0.999 { "ok" } else { "below 0.999" },
        ));
    }
    let detail = format!("\n{}", lines.join("\n"));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn disentanglement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut wrong = 0;
    for _ in 0..1_000 {
        let base = random_overlap_state(&mut rng);
        let phase = polar(1.0, rng.gen_range(-PI..PI));
        let cases = [
            (base.with_coefficients(c(0.0, 0.0), base.nu()), DisentangledReason::MuZero),
            (base.with_coefficients(base.mu(), c(0.0, 0.0)), DisentangledReason::NuZero),
            (OverlapState::new(base.mu(), base.nu(), phase, base.q()), DisentangledReason::Subsystem1Parallel),
            (OverlapState::new(base.mu(), base.nu(), base.p(), phase), DisentangledReason::Subsystem2Parallel),
        ];
        for (s, expected) in cases {
            let s = s.map_err(|e| e.to_string())?;
            let conc = concurrence_closed_form(&s).map_err(|e| e.to_string())?;
            worst = worst.max(conc);
            let (flag, reason) = is_disentangled(&s, DEFAULT_TOL);
            let report = classify(&s, Tolerances::default()).map_err(|e| e.to_string())?;
            if !flag || reason != Some(expected) || report.reason != Some(expected) {
                wrong += 1;
            }
        }
    }
    let mut zero = 0;
    for _ in 0..10_000 {
        let s = random_overlap_state(&mut rng);
        if concurrence_closed_form(&s).map_err(|e| e.to_string())? <= 0.0 {
            zero += 1;
        }
    }
    let detail = format!(
        "4000 product states: max C = {worst:e}, {wrong} wrong reasons; 10000 random states: {zero} with C = 0"
    );
    if worst < 1e-12 && wrong == 0 && zero == 0 {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn entlab(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_entlab"))
        .args(args)
        .env_remove("ENTLAB_TOL")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("entlab {args:?} exited with {}", out.status));
    }
    Ok(out.stdout)
}

fn cli_determinism() -> Outcome {
    let invocations: [&[&str]; 5] = [
        &["sweep", "--over", "q", "--mu", "1,0.5", "--nu", "-0.3,1", "--p", "0.4,-0.2", "--steps1", "61", "--steps2", "61"],
        &["sweep", "--over", "theta", "--p", "0.5,0", "--q", "-0.5,0", "--steps1", "101", "--min2", "0.5", "--max2", "2", "--steps2", "31"],
        &["limit-scan", "--which", "2", "--alpha-start", "2", "--alpha-end", "0.01", "--steps", "25"],
        &["limit-scan", "--source", "three-alpha", "--steps", "25"],
        &["--json", "sweep", "--over", "p", "--steps1", "21", "--steps2", "21"],
    ];
    let mut bytes = 0;
    for args in invocations {
        let reference = entlab(args)?;
        if reference.is_empty() {
            return Err(format!("entlab {args:?} printed nothing"));
        }
        for run in [entlab(args)?, threads(args, "1")?, threads(args, "4")?, threads(args, "7")?] {
            if run != reference {
                return Err(format!("entlab {args:?} output differs between runs"));
            }
        }
        bytes += reference.len();
    }
    Ok(format!("5 invocations x (2 runs, 1/4/7 threads) byte-identical, {bytes} bytes each pass"))
}

fn threads(args: &[&str], n: &str) -> Result<Vec<u8>, String> {
    let mut v = args.to_vec();
    v.extend(["--threads", n]);
    entlab(&v)
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "oracle equivalence", budget: Some(Duration::from_secs(5)), run: oracle_equivalence },
        Criterion { id: 2, name: "MES verdict soundness and completeness", budget: Some(Duration::from_secs(5)), run: mes_soundness },
        Criterion { id: 3, name: "family constructors reach C = 1", budget: Some(Duration::from_secs(60)), run: family_concurrence },
        Criterion { id: 4, name: "quartet normalization paths agree", budget: None, run: quartet_normalization_paths },
        Criterion { id: 5, name: "parity maps quartets 1,2 onto 3,4", budget: None, run: parity_mapping },
        Criterion { id: 6, name: "Bell-limit convergence", budget: None, run: bell_limits },
        Criterion { id: 7, name: "disentanglement conditions", budget: None, run: disentanglement },
        Criterion { id: 8, name: "CLI determinism", budget: None, run: cli_determinism },
    ];
    let mut failed = Vec::new();
    for k in &criteria {
        let start = Instant::now();
        let outcome = (k.run)();
        let elapsed = start.elapsed();
        let slow = k.budget.is_some_and(|b| elapsed > b);
        let (pass, detail) = match outcome {
            Ok(d) if !slow => (true, d),
            Ok(d) => (false, format!("{d}; over the {:?} budget", k.budget.unwrap())),
            Err(d) => (false, d),
        };
        println!(
            "criterion {} {:<40} {} ({:.2}s) {}",
            k.id,
            k.name,
            if pass { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            detail
        );
        if !pass {
            failed.push(k.id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
