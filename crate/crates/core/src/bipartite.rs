//! The rank-two bipartite state `μ|α⟩⊗|β⟩ + ν|γ⟩⊗|δ⟩`, described only by
//! its coefficients and the two overlaps `p = ⟨α|γ⟩`, `q = ⟨β|δ⟩`.
//!
//! Coefficients are stored unnormalized; the normalization constant is
//! computed on demand.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CoefficientMatrix;

/// Default threshold on `1 − |p|` below which kets count as dependent.
pub const DEFAULT_DEPENDENCE_EPS: f64 = 1e-12;

/// Slack above 1 tolerated for overlap moduli (roundoff in `exp`).
const OVERLAP_SLACK: f64 = 1e-14;

/// Relative size of the imaginary residue allowed in the cross term.
const REALITY_TOL: f64 = 1e-15;

pub(crate) fn check_finite(z: Complex64, what: &'static str) -> Result<Complex64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapState {
    mu: Complex64,
    nu: Complex64,
    p: Complex64,
    q: Complex64,
}

impl OverlapState {
    pub fn new(mu: Complex64, nu: Complex64, p: Complex64, q: Complex64) -> Result<Self> {
        let mu = check_finite(mu, "mu")?;
        let nu = check_finite(nu, "nu")?;
        let p = check_finite(p, "p")?;
        let q = check_finite(q, "q")?;
        for (which, z) in [("p", p), ("q", q)] {
            let modulus = z.norm();
            if modulus > 1.0 + OVERLAP_SLACK {
                return Err(Error::OverlapExceedsUnity { which, modulus });
            }
        }
        if mu == Complex64::new(0.0, 0.0) && nu == Complex64::new(0.0, 0.0) {
            return Err(Error::ZeroCoefficients);
        }
        Ok(Self { mu, nu, p, q })
    }

    /// Convenience constructor for real parameters.
    pub fn real(mu: f64, nu: f64, p: f64, q: f64) -> Result<Self> {
        Self::new(
            Complex64::new(mu, 0.0),
            Complex64::new(nu, 0.0),
            Complex64::new(p, 0.0),
            Complex64::new(q, 0.0),
        )
    }

    pub fn mu(&self) -> Complex64 {
        self.mu
    }

    pub fn nu(&self) -> Complex64 {
        self.nu
    }

    pub fn p(&self) -> Complex64 {
        self.p
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    /// Same overlaps, coefficients replaced.
    pub fn with_coefficients(&self, mu: Complex64, nu: Complex64) -> Result<Self> {
        Self::new(mu, nu, self.p, self.q)
    }

    /// Subsystems exchanged, i.e. `(p, q) → (q, p)`.
    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
            ..*self
        }
    }

    /// Squared norm `|μ|² + |ν|² + μν*p*q* + μ*νpq` of the unnormalized state.
    pub fn squared_norm(&self) -> Result<f64> {
        squared_norm(self.mu, self.nu, self.p, self.q)
    }

    /// Squared norm checked to be positive.
    fn positive_squared_norm(&self) -> Result<f64> {
        let n = self.squared_norm()?;
        let scale = self.mu.norm_sqr() + self.nu.norm_sqr();
        if !(n > scale * 1e-14) {
            return Err(Error::DegenerateState { squared_norm: n });
        }
        Ok(n)
    }
}

/// Squared norm of `μ|a⟩|b⟩ + ν|c⟩|d⟩` given `p = ⟨a|c⟩`, `q = ⟨b|d⟩`.
///
/// Both cross terms are formed explicitly and the imaginary residue of
/// their sum is checked rather than discarded.
pub(crate) fn squared_norm(mu: Complex64, nu: Complex64, p: Complex64, q: Complex64) -> Result<f64> {
    let t1 = mu * nu.conj() * p.conj() * q.conj();
    let t2 = mu.conj() * nu * p * q;
    let cross = t1 + t2;
    let scale = mu.norm_sqr() + nu.norm_sqr();
    if cross.im.abs() > REALITY_TOL * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::Inconsistent(format!(
            "cross term has imaginary part {:e}",
            cross.im
        )));
    }
    Ok(scale + cross.re)
}

/// `[|μ|² + |ν|² + μν*p*q* + μ*νpq]^(−1/2)`.
pub fn normalization_constant(s: &OverlapState) -> Result<f64> {
    Ok(1.0 / s.positive_squared_norm()?.sqrt())
}

/// Moduli this close to one are rounding noise on a unit-modulus overlap.
const UNIT_MODULUS_SLACK: f64 = 4.0 * f64::EPSILON;

/// `1 − |z|²` evaluated as `(1 − |z|)(1 + |z|)`.
pub(crate) fn one_minus_abs_sqr(z: Complex64) -> f64 {
    let r = z.norm();
    if r >= 1.0 - UNIT_MODULUS_SLACK {
        return 0.0;
    }
    (1.0 - r) * (1.0 + r)
}

/// Closed-form concurrence
/// `2|μν|√((1−|p|²)(1−|q|²)) / (|μ|²+|ν|²+μν*p*q*+μ*νpq)`.
pub fn concurrence_closed_form(s: &OverlapState) -> Result<f64> {
    let denom = s.positive_squared_norm()?;
    let num = 2.0
        * s.mu.norm()
        * s.nu.norm()
        * (one_minus_abs_sqr(s.p) * one_minus_abs_sqr(s.q)).sqrt();
    Ok((num / denom).clamp(0.0, 1.0))
}

/// Gram–Schmidt embedding into a 2×2 coefficient matrix with the default
/// dependence threshold.
pub fn canonical_matrix(s: &OverlapState) -> Result<CoefficientMatrix> {
    canonical_matrix_with(s, DEFAULT_DEPENDENCE_EPS)
}

/// Rows use the basis `{|α⟩, (|γ⟩ − p|α⟩)/√(1−|p|²)}`, columns the
/// analogous basis built from `|β⟩, |δ⟩`.
pub fn canonical_matrix_with(s: &OverlapState, eps: f64) -> Result<CoefficientMatrix> {
    if s.p.norm() >= 1.0 - eps {
        return Err(Error::LinearlyDependent("|p| reaches 1"));
    }
    if s.q.norm() >= 1.0 - eps {
        return Err(Error::LinearlyDependent("|q| reaches 1"));
    }
    let sp = one_minus_abs_sqr(s.p).sqrt();
    let sq = one_minus_abs_sqr(s.q).sqrt();
    let (mu, nu, p, q) = (s.mu, s.nu, s.p, s.q);
    CoefficientMatrix::new(
        2,
        2,
        vec![mu + nu * p * q, nu * p * sq, nu * q * sp, nu * sp * sq],
    )
}
