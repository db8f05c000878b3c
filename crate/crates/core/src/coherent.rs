//! Entangled coherent states `μ|α⟩⊗|β⟩ + ν|γ⟩⊗|δ⟩` and the explicit
//! maximally entangled families built from them.
//!
//! A coherent state multiplied by a phase is not a coherent label, so any
//! ket phase is folded into `μ` or `ν`.

use num_complex::Complex64;
use serde::Serialize;

use crate::bipartite::{check_finite, OverlapState};
use crate::classify::{principal_arg, wrap_angle};
use crate::error::{Error, Result};

/// Largest admissible label modulus.
pub const MAX_LABEL_MODULUS: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct CoherentLabel(#[serde(serialize_with = "crate::cli::report::ser_complex")] Complex64);

impl CoherentLabel {
    pub fn new(value: Complex64) -> Result<Self> {
        let value = check_finite(value, "coherent label")?;
        if value.norm() > MAX_LABEL_MODULUS {
            return Err(Error::LabelTooLarge(value.norm()));
        }
        Ok(Self(value))
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(Complex64::new(x, 0.0))
    }

    pub fn value(self) -> Complex64 {
        self.0
    }

    pub fn modulus(self) -> f64 {
        self.0.norm()
    }

    /// Label of the parity image `(−1)^{a†a}|α⟩ = |−α⟩`.
    pub fn negated(self) -> Self {
        Self(-self.0)
    }
}

/// `⟨a|g⟩ = exp[−(|a|² + |g|² − 2a*g)/2]`.
///
/// Far-apart labels underflow to exactly zero; use
/// [`coherent_overlap_checked`] to learn when that happened.
pub fn coherent_overlap(a: CoherentLabel, g: CoherentLabel) -> Complex64 {
    coherent_overlap_checked(a, g).0
}

/// Overlap plus a flag set when the modulus underflowed to zero.
pub fn coherent_overlap_checked(a: CoherentLabel, g: CoherentLabel) -> (Complex64, bool) {
    if a == g {
        return (Complex64::new(1.0, 0.0), false);
    }
    let (a, g) = (a.0, g.0);
    let cross = a.conj() * g;
    let log_re = -0.5 * (a.norm_sqr() + g.norm_sqr()) + cross.re;
    let log_im = cross.im;
    // Re of the exponent is −|a − g|²/2 ≤ 0 analytically.
    let log_re = log_re.min(0.0);
    if log_re < f64::MIN_POSITIVE.ln() {
        return (Complex64::new(0.0, 0.0), true);
    }
    (Complex64::from_polar(log_re.exp(), log_im), false)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoherentPairState {
    #[serde(serialize_with = "crate::cli::report::ser_complex")]
    pub mu: Complex64,
    #[serde(serialize_with = "crate::cli::report::ser_complex")]
    pub nu: Complex64,
    pub alpha: CoherentLabel,
    pub beta: CoherentLabel,
    pub gamma: CoherentLabel,
    pub delta: CoherentLabel,
}

impl CoherentPairState {
    /// Builds a state from finite coefficients. Linear independence of the
    /// branches is checked by [`as_overlap_state`], so product states with
    /// coincident labels remain representable.
    pub fn new(
        mu: Complex64,
        nu: Complex64,
        alpha: CoherentLabel,
        beta: CoherentLabel,
        gamma: CoherentLabel,
        delta: CoherentLabel,
    ) -> Result<Self> {
        let mu = check_finite(mu, "mu")?;
        let nu = check_finite(nu, "nu")?;
        if mu == Complex64::new(0.0, 0.0) && nu == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroCoefficients);
        }
        Ok(Self {
            mu,
            nu,
            alpha,
            beta,
            gamma,
            delta,
        })
    }

    pub fn labels(&self) -> [CoherentLabel; 4] {
        [self.alpha, self.beta, self.gamma, self.delta]
    }

    pub fn max_label_modulus(&self) -> f64 {
        self.labels()
            .iter()
            .map(|l| l.modulus())
            .fold(0.0, f64::max)
    }

    /// `(p, q)` without the independence check.
    pub fn overlaps(&self) -> (Complex64, Complex64) {
        (
            coherent_overlap(self.alpha, self.gamma),
            coherent_overlap(self.beta, self.delta),
        )
    }

    /// Exact squared norm of the unnormalized state.
    pub fn squared_norm(&self) -> Result<f64> {
        let (p, q) = self.overlaps();
        crate::bipartite::squared_norm(self.mu, self.nu, p, q)
    }
}

/// Abstract view with `p = ⟨α|γ⟩`, `q = ⟨β|δ⟩`.
pub fn as_overlap_state(s: &CoherentPairState) -> Result<OverlapState> {
    if s.gamma == s.alpha {
        return Err(Error::LinearlyDependent("gamma equals alpha"));
    }
    if s.delta == s.beta {
        return Err(Error::LinearlyDependent("delta equals beta"));
    }
    let (p, q) = s.overlaps();
    OverlapState::new(s.mu, s.nu, p, q)
}

/// Parity `1 ⊗ (−1)^{a†a}` on subsystem 2: `β → −β`, `δ → −δ`.
pub fn parity_transform(s: &CoherentPairState) -> CoherentPairState {
    CoherentPairState {
        beta: s.beta.negated(),
        delta: s.delta.negated(),
        ..*s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem2Report {
    pub real_part_gap: f64,
    pub theta: f64,
    pub satisfiable: bool,
}

/// MES condition on the labels alone: the two exponents
/// `|α|²+|γ|²−2α*γ` and `|β|²+|δ|²−2βδ*` must share their real part,
/// and the relative phase is `θ = Im(α*γ) − Im(βδ*) − π`.
pub fn theorem2_check(
    alpha: CoherentLabel,
    beta: CoherentLabel,
    gamma: CoherentLabel,
    delta: CoherentLabel,
    tol: f64,
) -> Result<Theorem2Report> {
    if gamma == alpha {
        return Err(Error::LinearlyDependent("gamma equals alpha"));
    }
    if delta == beta {
        return Err(Error::LinearlyDependent("delta equals beta"));
    }
    let (a, b, g, d) = (alpha.0, beta.0, gamma.0, delta.0);
    let ag = a.conj() * g;
    let bd = b * d.conj();
    let lhs = a.norm_sqr() + g.norm_sqr() - 2.0 * ag.re;
    let rhs = b.norm_sqr() + d.norm_sqr() - 2.0 * bd.re;
    let real_part_gap = lhs - rhs;
    Ok(Theorem2Report {
        real_part_gap,
        theta: wrap_angle(ag.im - bd.im - std::f64::consts::PI),
        satisfiable: real_part_gap.abs() < tol,
    })
}

/// A constructed family member plus notes about parameter folds.
#[derive(Debug, Clone, PartialEq)]
pub struct Constructed {
    pub state: CoherentPairState,
    pub notes: Vec<String>,
}

fn nonzero(label: CoherentLabel, name: &str) -> Result<()> {
    if label.modulus() == 0.0 {
        return Err(Error::ConstraintViolated(format!("{name} must be nonzero")));
    }
    Ok(())
}

fn unit(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `|α⟩⊗|β⟩ − |β⟩⊗|α⟩`.
pub fn antisymmetric_mes(alpha: CoherentLabel, beta: CoherentLabel) -> Result<CoherentPairState> {
    if alpha == beta {
        return Err(Error::LinearlyDependent("alpha equals beta"));
    }
    CoherentPairState::new(unit(1.0, 0.0), unit(-1.0, 0.0), alpha, beta, beta, alpha)
}

/// Sign choice `±` in the family formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "1" | "+1" => Ok(Sign::Plus),
            "-" | "minus" | "-1" => Ok(Sign::Minus),
            other => Err(Error::InvalidArgument(format!("sign must be + or -, got {other:?}"))),
        }
    }
}

/// `|α⟩⊗|β⟩ − |(1−λ′/|α|)α⟩⊗|(1∓λ′/|β|)β⟩`, with `θ = −π`.
///
/// Negative scale factors are allowed: the label then points opposite to
/// α (or β), the exponents still match, and a note records the fold.
pub fn same_phase_family(
    alpha: CoherentLabel,
    beta: CoherentLabel,
    lambda_prime: f64,
    sign: Sign,
) -> Result<Constructed> {
    nonzero(alpha, "alpha")?;
    nonzero(beta, "beta")?;
    if !lambda_prime.is_finite() {
        return Err(Error::NonFinite("lambda'"));
    }
    if lambda_prime == 0.0 {
        return Err(Error::LinearlyDependent("lambda' = 0 makes gamma equal alpha"));
    }
    let ca = 1.0 - lambda_prime / alpha.modulus();
    let cb = 1.0 - sign.value() * lambda_prime / beta.modulus();
    let gamma = CoherentLabel::new(alpha.0 * ca)?;
    let delta = CoherentLabel::new(beta.0 * cb)?;
    let mut notes = Vec::new();
    if ca < 0.0 {
        notes.push(format!("gamma folded to the opposite phase of alpha (factor {ca})"));
    }
    if cb < 0.0 {
        notes.push(format!("delta folded to the opposite phase of beta (factor {cb})"));
    }
    let state = CoherentPairState::new(unit(1.0, 0.0), unit(-1.0, 0.0), alpha, beta, gamma, delta)?;
    Ok(Constructed { state, notes })
}

/// Relative tolerance on `|α|² + |γ|² = |β|² + |δ|²`.
pub const BALANCE_TOL: f64 = 1e-9;

/// `|α⟩⊗|β⟩ − e^{−i(|αγ|±|βδ|)}|i|γ|α/|α|⟩⊗|±i|δ|β/|β|⟩`.
///
/// `Sign::Minus` selects `δ = −i|δ|β/|β|` together with the phase
/// `|αγ| − |βδ|`; this is the reading under which the quartet members come
/// out exactly.
pub fn quarter_phase_family(
    alpha: CoherentLabel,
    beta: CoherentLabel,
    gamma_mod: f64,
    delta_mod: f64,
    sign: Sign,
) -> Result<CoherentPairState> {
    nonzero(alpha, "alpha")?;
    nonzero(beta, "beta")?;
    if !(gamma_mod > 0.0 && delta_mod > 0.0) || !gamma_mod.is_finite() || !delta_mod.is_finite() {
        return Err(Error::ConstraintViolated(
            "gamma and delta moduli must be positive".into(),
        ));
    }
    let lhs = alpha.0.norm_sqr() + gamma_mod * gamma_mod;
    let rhs = beta.0.norm_sqr() + delta_mod * delta_mod;
    if (lhs - rhs).abs() > BALANCE_TOL * lhs.max(rhs) {
        return Err(Error::ConstraintViolated(format!(
            "|alpha|^2 + |gamma|^2 = {lhs} differs from |beta|^2 + |delta|^2 = {rhs}"
        )));
    }
    let i = unit(0.0, 1.0);
    let gamma = CoherentLabel::new(i * gamma_mod * alpha.0 / alpha.modulus())?;
    let delta = CoherentLabel::new(i * sign.value() * delta_mod * beta.0 / beta.modulus())?;
    let phase = alpha.modulus() * gamma_mod + sign.value() * beta.modulus() * delta_mod;
    let nu = -Complex64::from_polar(1.0, -phase);
    CoherentPairState::new(unit(1.0, 0.0), nu, alpha, beta, gamma, delta)
}

/// One of the four equal-modulus quarter-phase states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuartetMember {
    /// `|α⟩|−α⟩ − |iα⟩|iα⟩`
    First,
    /// `|α⟩|−α⟩ − e^{−2i|α|²}|iα⟩|−iα⟩`
    Second,
    /// `|α⟩|α⟩ − |iα⟩|−iα⟩`
    Third,
    /// `|α⟩|α⟩ − e^{−2i|α|²}|iα⟩|iα⟩`
    Fourth,
}

impl QuartetMember {
    pub const ALL: [QuartetMember; 4] = [
        QuartetMember::First,
        QuartetMember::Second,
        QuartetMember::Third,
        QuartetMember::Fourth,
    ];

    pub fn from_index(which: u32) -> Result<Self> {
        match which {
            1 => Ok(QuartetMember::First),
            2 => Ok(QuartetMember::Second),
            3 => Ok(QuartetMember::Third),
            4 => Ok(QuartetMember::Fourth),
            other => Err(Error::InvalidVariant(format!("quartet member {other}"))),
        }
    }

    pub fn index(self) -> u32 {
        match self {
            QuartetMember::First => 1,
            QuartetMember::Second => 2,
            QuartetMember::Third => 3,
            QuartetMember::Fourth => 4,
        }
    }

    /// Image under the subsystem-2 parity: 1 ↔ 3, 2 ↔ 4.
    pub fn parity_partner(self) -> Self {
        match self {
            QuartetMember::First => QuartetMember::Third,
            QuartetMember::Second => QuartetMember::Fourth,
            QuartetMember::Third => QuartetMember::First,
            QuartetMember::Fourth => QuartetMember::Second,
        }
    }
}

pub fn quartet(alpha: CoherentLabel, which: QuartetMember) -> Result<CoherentPairState> {
    nonzero(alpha, "alpha")?;
    let (beta, sign) = match which {
        QuartetMember::First => (alpha.negated(), Sign::Minus),
        QuartetMember::Second => (alpha.negated(), Sign::Plus),
        QuartetMember::Third => (alpha, Sign::Minus),
        QuartetMember::Fourth => (alpha, Sign::Plus),
    };
    let m = alpha.modulus();
    quarter_phase_family(alpha, beta, m, m, sign)
}

/// `1/√(2(1 − e^{−2|α|²}))`, shared by all four quartet members.
pub fn quartet_normalization(alpha: CoherentLabel) -> Result<f64> {
    nonzero(alpha, "alpha")?;
    let x = -(-2.0 * alpha.0.norm_sqr()).exp_m1();
    Ok(1.0 / (2.0 * x).sqrt())
}

/// Phase `θ` with `μ = νe^{iθ}` for a state with unit-modulus ratio.
pub fn relative_phase(s: &CoherentPairState) -> Option<f64> {
    if s.nu.norm() == 0.0 {
        return None;
    }
    Some(principal_arg(s.mu / s.nu))
}
