//! Maximal-entanglement and disentanglement classification of
//! [`OverlapState`]s.
//!
//! A state is maximally entangled iff either
//! * `μ = νe^{iθ}` and `p = −q*e^{iθ}` (nonorthogonal case), or
//! * `|μ| = |ν|` and `p = q = 0` (orthogonal case).
//!
//! Phase conditions are compared as complex numbers, never by subtracting
//! angles, so there is no branch bookkeeping.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::bipartite::{concurrence_closed_form, OverlapState};
use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Principal argument in `(−π, π]`, with `arg 0 = 0`.
pub fn principal_arg(z: Complex64) -> f64 {
    if z.re == 0.0 && z.im == 0.0 {
        return 0.0;
    }
    wrap_angle(z.im.atan2(z.re))
}

/// Maps an angle into `(−π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x % (2.0 * PI);
    if y <= -PI {
        y += 2.0 * PI;
    } else if y > PI {
        y -= 2.0 * PI;
    }
    y
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseParameters {
    pub k: f64,
    pub theta: f64,
    pub a: f64,
    pub b: f64,
    pub theta1: f64,
    pub theta2: f64,
}

/// `μ = kνe^{iθ}`, `p = sin a·e^{iθ₁}`, `q = sin b·e^{iθ₂}`.
pub fn phase_parameters(s: &OverlapState) -> Result<PhaseParameters> {
    let (mu, nu) = (s.mu(), s.nu());
    if nu.norm() == 0.0 || nu.norm() < 1e-12 * mu.norm() {
        return Err(Error::NuZero);
    }
    let ratio = mu / nu;
    Ok(PhaseParameters {
        k: ratio.norm(),
        theta: principal_arg(ratio),
        a: s.p().norm().min(1.0).asin(),
        b: s.q().norm().min(1.0).asin(),
        theta1: principal_arg(s.p()),
        theta2: principal_arg(s.q()),
    })
}

/// `k' = (k² + 1)/k`; never below 2.
pub fn k_prime(k: f64) -> f64 {
    (k * k + 1.0) / k
}

/// `k' − 2 = (k − 1)²/k`, exact zero only at `k = 1`.
pub fn k_prime_excess(k: f64) -> f64 {
    (k - 1.0) * (k - 1.0) / k
}

/// Tolerances for the MES conditions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Relative tolerance on `|μ| = |ν|`.
    pub modulus_rel: f64,
    /// Absolute tolerance on the overlap equations.
    pub overlap_abs: f64,
}

impl Tolerances {
    pub fn uniform(tol: f64) -> Self {
        Self {
            modulus_rel: tol,
            overlap_abs: tol,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.modulus_rel > 0.0 && self.overlap_abs > 0.0) {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(())
    }

    fn largest(&self) -> f64 {
        self.modulus_rel.max(self.overlap_abs)
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::uniform(DEFAULT_TOL)
    }
}

/// Distances from the two MES branches.
#[derive(Debug, Clone, Copy, PartialEq)]
struct BranchResiduals {
    modulus: f64,
    nonorthogonal_phase: f64,
    orthogonal_overlap: f64,
}

fn branch_residuals(s: &OverlapState) -> BranchResiduals {
    let (mu, nu) = (s.mu(), s.nu());
    let big = mu.norm().max(nu.norm());
    let modulus = (mu.norm() - nu.norm()).abs() / big;
    // e^{iθ} with θ = arg(μ/ν); taken as 1 when ν vanishes.
    let phase = if nu.norm() == 0.0 || mu.norm() == 0.0 {
        Complex64::new(1.0, 0.0)
    } else {
        let r = mu / nu;
        r / r.norm()
    };
    BranchResiduals {
        modulus,
        nonorthogonal_phase: (s.p() + s.q().conj() * phase).norm(),
        orthogonal_overlap: s.p().norm().max(s.q().norm()),
    }
}

/// Distance from the MES conditions: the smaller of the nonorthogonal
/// branch residual `max(‖μ|−|ν‖/max, |p + q*e^{iθ}|)` and the orthogonal
/// branch residual `max(‖μ|−|ν‖/max, |p|, |q|)`.
pub fn mes_residual(s: &OverlapState) -> f64 {
    let r = branch_residuals(s);
    r.modulus.max(r.nonorthogonal_phase.min(r.orthogonal_overlap))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    MesNonorthogonal,
    MesOrthogonal,
    Disentangled,
    Partial,
}

impl Verdict {
    pub fn is_mes(self) -> bool {
        matches!(self, Verdict::MesNonorthogonal | Verdict::MesOrthogonal)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::MesNonorthogonal => "mes_nonorthogonal",
            Verdict::MesOrthogonal => "mes_orthogonal",
            Verdict::Disentangled => "disentangled",
            Verdict::Partial => "partial",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which product-state condition made the state disentangled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DisentangledReason {
    MuZero,
    NuZero,
    /// `|α⟩ = ±|γ⟩` up to phase, i.e. `|p| = 1`.
    Subsystem1Parallel,
    /// `|β⟩ = ±|δ⟩` up to phase, i.e. `|q| = 1`.
    Subsystem2Parallel,
    /// Concurrence under tolerance without any exact condition holding.
    BelowTolerance,
}

impl DisentangledReason {
    pub fn as_str(self) -> &'static str {
        match self {
            DisentangledReason::MuZero => "mu_zero",
            DisentangledReason::NuZero => "nu_zero",
            DisentangledReason::Subsystem1Parallel => "subsystem1_parallel",
            DisentangledReason::Subsystem2Parallel => "subsystem2_parallel",
            DisentangledReason::BelowTolerance => "below_tolerance",
        }
    }
}

impl fmt::Display for DisentangledReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub concurrence: f64,
    pub params: Option<PhaseParameters>,
    pub residual: f64,
    pub reason: Option<DisentangledReason>,
}

/// Checks the four product-state conditions in order: `μ = 0`, `ν = 0`,
/// `|p| > 1 − tol`, `|q| > 1 − tol`. Coefficient checks are relative to the
/// larger coefficient.
pub fn is_disentangled(s: &OverlapState, tol: f64) -> (bool, Option<DisentangledReason>) {
    let big = s.mu().norm().max(s.nu().norm());
    let reason = if s.mu().norm() <= tol * big {
        Some(DisentangledReason::MuZero)
    } else if s.nu().norm() <= tol * big {
        Some(DisentangledReason::NuZero)
    } else if s.p().norm() > 1.0 - tol {
        Some(DisentangledReason::Subsystem1Parallel)
    } else if s.q().norm() > 1.0 - tol {
        Some(DisentangledReason::Subsystem2Parallel)
    } else {
        None
    };
    (reason.is_some(), reason)
}

pub fn is_mes(s: &OverlapState, tol: f64) -> Result<ClassificationReport> {
    classify(s, Tolerances::uniform(tol))
}

/// Full classification. The verdict follows the MES conditions at the
/// given tolerances; orthogonal wins when both branches hold. A
/// `Disentangled` verdict is issued iff the concurrence is under the
/// larger tolerance.
pub fn classify(s: &OverlapState, tol: Tolerances) -> Result<ClassificationReport> {
    tol.validate()?;
    let concurrence = concurrence_closed_form(s)?;
    let residual = mes_residual(s);
    let zero = Complex64::new(0.0, 0.0);

    if s.mu() == zero || s.nu() == zero {
        let reason = if s.mu() == zero {
            DisentangledReason::MuZero
        } else {
            DisentangledReason::NuZero
        };
        return Ok(ClassificationReport {
            verdict: Verdict::Disentangled,
            concurrence,
            params: None,
            residual,
            reason: Some(reason),
        });
    }

    let params = phase_parameters(s).ok();
    let r = branch_residuals(s);
    let moduli_match = r.modulus < tol.modulus_rel;
    let verdict = if moduli_match && r.orthogonal_overlap < tol.overlap_abs {
        Verdict::MesOrthogonal
    } else if moduli_match && r.nonorthogonal_phase < tol.overlap_abs {
        Verdict::MesNonorthogonal
    } else if concurrence < tol.largest() {
        Verdict::Disentangled
    } else {
        Verdict::Partial
    };

    if verdict.is_mes() && (concurrence - 1.0).abs() >= tol.largest() {
        return Err(Error::Inconsistent(format!(
            "MES conditions hold to tolerance but concurrence is {concurrence}"
        )));
    }

    let reason = (verdict == Verdict::Disentangled).then(|| {
        is_disentangled(s, tol.largest())
            .1
            .unwrap_or(DisentangledReason::BelowTolerance)
    });

    Ok(ClassificationReport {
        verdict,
        concurrence,
        params,
        residual,
        reason,
    })
}
