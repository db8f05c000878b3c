//! Truncated Fock-space expansion of two-mode coherent superpositions and
//! the small-amplitude Bell limits.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64;
use serde::Serialize;

use crate::coherent::{
    quartet, same_phase_family, CoherentLabel, CoherentPairState, QuartetMember, Sign,
};
use crate::error::{Error, Result};
use crate::matrix::{concurrence_oracle, fidelity, CoefficientMatrix};

/// Largest label modulus the truncation supports.
pub const MAX_CUTOFF_MODULUS: f64 = 30.0;

/// Default tail mass target for [`truncation_cutoff`].
pub const DEFAULT_TAIL_EPS: f64 = 1e-12;

const MIN_CUTOFF: usize = 20;

/// `N = max(20, ⌈M² + 10M + 10⌉)` with `M` the largest label modulus.
///
/// Mean `M²` plus ten Poisson standard deviations plus slack; keeps the tail
/// beyond `N` under `eps` for `eps ≥ 1e−12` and `M ≤ 30`.
pub fn truncation_cutoff(labels: &[CoherentLabel], eps: f64) -> Result<usize> {
    if labels.is_empty() {
        return Err(Error::InvalidArgument("no labels given".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("eps must be in (0, 1), got {eps}")));
    }
    let m = labels.iter().map(|l| l.modulus()).fold(0.0, f64::max);
    if m > MAX_CUTOFF_MODULUS {
        return Err(Error::CutoffOverflow { modulus: m });
    }
    let n = (m * m + 10.0 * m + 10.0).ceil() as usize;
    Ok(n.max(MIN_CUTOFF))
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedFockState {
    pub cutoff: usize,
    pub amps: CoefficientMatrix,
    /// Fraction of the exact squared norm kept by the truncation.
    pub captured_norm: f64,
}

/// `e^{−|α|²/2} αⁿ/√n!` for `n = 0..=cutoff`, by the recurrence
/// `cₙ = cₙ₋₁·α/√n`.
pub fn coherent_amplitudes(label: CoherentLabel, cutoff: usize) -> Vec<Complex64> {
    let a = label.value();
    let mut out = Vec::with_capacity(cutoff + 1);
    let mut cur = Complex64::new((-0.5 * a.norm_sqr()).exp(), 0.0);
    out.push(cur);
    for n in 1..=cutoff {
        cur = cur * a / (n as f64).sqrt();
        out.push(cur);
    }
    out
}

/// Amplitudes `⟨m,n|ψ⟩` for `0 ≤ m, n ≤ N` of the unnormalized state.
pub fn fock_coefficients(s: &CoherentPairState, cutoff: usize) -> Result<TruncatedFockState> {
    if cutoff < 1 {
        return Err(Error::InvalidArgument("cutoff must be at least 1".into()));
    }
    if s.max_label_modulus() > MAX_CUTOFF_MODULUS {
        return Err(Error::CutoffOverflow {
            modulus: s.max_label_modulus(),
        });
    }
    let a = coherent_amplitudes(s.alpha, cutoff);
    let b = coherent_amplitudes(s.beta, cutoff);
    let g = coherent_amplitudes(s.gamma, cutoff);
    let d = coherent_amplitudes(s.delta, cutoff);
    let amps = CoefficientMatrix::from_fn(cutoff + 1, cutoff + 1, |m, n| {
        s.mu * a[m] * b[n] + s.nu * g[m] * d[n]
    })?;
    let exact = s.squared_norm()?;
    if !(exact > 0.0) {
        return Err(Error::DegenerateState {
            squared_norm: exact,
        });
    }
    let captured_norm = (amps.norm_sqr() / exact).min(1.0);
    Ok(TruncatedFockState {
        cutoff,
        amps,
        captured_norm,
    })
}

/// Expansion at [`truncation_cutoff`] with the default tail target.
pub fn fock_coefficients_auto(s: &CoherentPairState) -> Result<TruncatedFockState> {
    let n = truncation_cutoff(&s.labels(), DEFAULT_TAIL_EPS)?;
    fock_coefficients(s, n)
}

pub fn numeric_concurrence(t: &TruncatedFockState) -> Result<f64> {
    concurrence_oracle(&t.amps)
}

/// `1 ⊗ (−1)ⁿ` on the grid: odd-`n` columns negated.
pub fn fock_parity(t: &TruncatedFockState) -> TruncatedFockState {
    let amps = CoefficientMatrix::from_fn(t.amps.rows(), t.amps.cols(), |m, n| {
        if n % 2 == 1 {
            -t.amps.get(m, n)
        } else {
            t.amps.get(m, n)
        }
    })
    .expect("parity preserves the norm");
    TruncatedFockState { amps, ..t.clone() }
}

/// Two-qubit state over `{|0⟩,|1⟩}⊗{|0⟩,|1⟩}`, unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitPairState {
    amps: [[Complex64; 2]; 2],
}

impl QubitPairState {
    pub fn new(amps: [[Complex64; 2]; 2]) -> Result<Self> {
        let norm: f64 = amps.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
        if (norm - 1.0).abs() > 1e-15 {
            return Err(Error::InvalidArgument(format!(
                "qubit pair state must have unit norm, got {norm}"
            )));
        }
        Ok(Self { amps })
    }

    pub fn amp(&self, m: usize, n: usize) -> Complex64 {
        self.amps[m][n]
    }

    pub fn to_matrix(&self) -> CoefficientMatrix {
        CoefficientMatrix::from_fn(2, 2, |m, n| self.amps[m][n]).expect("unit norm")
    }
}

/// The four orthogonal Bell-like states
/// `(e^{iπ/4}|01⟩ ∓ e^{−iπ/4}|10⟩)/√2` and `(|01⟩ ∓ |10⟩)/√2`.
pub fn bell_like_limit(which: u32) -> Result<QubitPairState> {
    let (a01, a10) = match which {
        1 => (Complex64::from_polar(1.0, FRAC_PI_4), -Complex64::from_polar(1.0, -FRAC_PI_4)),
        2 => (Complex64::from_polar(1.0, FRAC_PI_4), Complex64::from_polar(1.0, -FRAC_PI_4)),
        3 => (Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)),
        4 => (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
        other => return Err(Error::InvalidVariant(format!("Bell-like state {other}"))),
    };
    let zero = Complex64::new(0.0, 0.0);
    QubitPairState::new([
        [zero, a01 * FRAC_1_SQRT_2],
        [a10 * FRAC_1_SQRT_2, zero],
    ])
}

/// States whose `|α| → 0` limit is a Bell-like state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LimitSource {
    Quartet(QuartetMember),
    /// `|α⟩|−α⟩ − |−α⟩|α⟩`
    WellKnown,
    /// `|α⟩|−α⟩ − |−α⟩|−3α⟩`
    ThreeAlpha,
}

impl LimitSource {
    pub fn state(self, alpha: CoherentLabel) -> Result<CoherentPairState> {
        match self {
            LimitSource::Quartet(w) => quartet(alpha, w),
            LimitSource::WellKnown => {
                Ok(same_phase_family(alpha, alpha.negated(), 2.0 * alpha.modulus(), Sign::Plus)?.state)
            }
            LimitSource::ThreeAlpha => {
                Ok(same_phase_family(alpha, alpha.negated(), 2.0 * alpha.modulus(), Sign::Minus)?.state)
            }
        }
    }

    /// The Bell-like state each source is stated to approach: quartet member
    /// `w` pairs with state `w`, the two same-phase states with state 4.
    pub fn stated_limit(self) -> u32 {
        match self {
            LimitSource::Quartet(w) => w.index(),
            LimitSource::WellKnown | LimitSource::ThreeAlpha => 4,
        }
    }

    pub fn name(self) -> String {
        match self {
            LimitSource::Quartet(w) => format!("quartet-{}", w.index()),
            LimitSource::WellKnown => "wellknown".into(),
            LimitSource::ThreeAlpha => "three-alpha".into(),
        }
    }
}

/// Bell-like index with the highest fidelity to the source at `|α| = alpha`.
pub fn observed_bell_limit(source: LimitSource, alpha: f64) -> Result<(u32, f64)> {
    let t = fock_coefficients_auto(&source.state(CoherentLabel::real(alpha)?)?)?;
    let mut best = (0, -1.0);
    for which in 1..=4 {
        let f = fidelity(&t.amps, &bell_like_limit(which)?.to_matrix())?;
        if f > best.1 {
            best = (which, f);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScanRow {
    pub alpha: f64,
    pub infidelity: f64,
    pub concurrence: f64,
    pub captured_norm: f64,
}

/// Infidelity against a Bell-like target and the Fock-numeric concurrence
/// at each real amplitude. `alphas` must be positive, at most 30, and
/// sorted descending. `cutoff` overrides the automatic truncation.
pub fn limit_convergence_scan(
    source: LimitSource,
    target: u32,
    alphas: &[f64],
    cutoff: Option<usize>,
) -> Result<Vec<ScanRow>> {
    let bell = bell_like_limit(target)?.to_matrix();
    if alphas.windows(2).any(|w| !(w[0] >= w[1])) {
        return Err(Error::InvalidArgument("alphas must be sorted descending".into()));
    }
    alphas
        .iter()
        .map(|&alpha| {
            if !(alpha > 0.0 && alpha <= MAX_CUTOFF_MODULUS) {
                return Err(Error::InvalidArgument(format!(
                    "alpha must be in (0, 30], got {alpha}"
                )));
            }
            let s = source.state(CoherentLabel::real(alpha)?)?;
            let t = match cutoff {
                Some(n) => fock_coefficients(&s, n)?,
                None => fock_coefficients_auto(&s)?,
            };
            Ok(ScanRow {
                alpha,
                infidelity: 1.0 - fidelity(&t.amps, &bell)?,
                concurrence: numeric_concurrence(&t)?,
                captured_norm: t.captured_norm,
            })
        })
        .collect()
}

/// `count` points from `start` down to `end` with constant ratio.
pub fn geometric_alphas(start: f64, end: f64, count: usize) -> Result<Vec<f64>> {
    if !(end > 0.0 && end < start && start <= MAX_CUTOFF_MODULUS) || count < 2 {
        return Err(Error::InvalidArgument(format!(
            "need 0 < end < start <= 30 and at least 2 steps (start {start}, end {end}, steps {count})"
        )));
    }
    let ratio = (end / start).ln();
    Ok((0..count)
        .map(|i| {
            if i == 0 {
                start
            } else if i == count - 1 {
                end
            } else {
                start * (ratio * i as f64 / (count - 1) as f64).exp()
            }
        })
        .collect())
}
