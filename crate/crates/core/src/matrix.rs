//! Amplitude grids over an orthonormal product basis and the
//! singular-value route to entanglement.
//!
//! Entry `(m, n)` of a [`CoefficientMatrix`] is the amplitude of
//! `|m⟩⊗|n⟩`. Its singular values are the (unnormalized) Schmidt
//! coefficients, which is all the entanglement measures here need.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Squared Frobenius norms at or below this are treated as the zero vector.
pub const ZERO_NORM_SQR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl CoefficientMatrix {
    /// Builds a grid from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "grid {rows}x{cols} with {} entries",
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite("coefficient matrix"));
        }
        let m = Self {
            rows,
            cols,
            entries,
        };
        if m.norm_sqr() <= ZERO_NORM_SQR {
            return Err(Error::ZeroState);
        }
        Ok(m)
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows * cols);
        for m in 0..rows {
            for n in 0..cols {
                entries.push(f(m, n));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, m: usize, n: usize) -> Complex64 {
        self.entries[m * self.cols + n]
    }

    /// Entry with zero padding outside the stored grid.
    pub fn get_padded(&self, m: usize, n: usize) -> Complex64 {
        if m < self.rows && n < self.cols {
            self.get(m, n)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Squared Frobenius norm, summed in row-major order.
    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Copy scaled to unit Frobenius norm.
    pub fn normalized(&self) -> Self {
        let s = 1.0 / self.norm();
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scaled(&self, c: Complex64) -> Result<Self> {
        Self::new(
            self.rows,
            self.cols,
            self.entries.iter().map(|z| z * c).collect(),
        )
    }

    /// Determinant of a 2×2 grid.
    pub fn det2(&self) -> Option<Complex64> {
        if self.dims() != (2, 2) {
            return None;
        }
        Some(self.get(0, 0) * self.get(1, 1) - self.get(0, 1) * self.get(1, 0))
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let m = DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j));
        let mut sv: Vec<f64> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Normalized squared Schmidt coefficients λᵢ², summing to one.
    pub fn schmidt_weights(&self) -> Result<Vec<f64>> {
        let sv = self.singular_values();
        let total: f64 = sv.iter().map(|s| s * s).sum();
        if total <= ZERO_NORM_SQR {
            return Err(Error::ZeroState);
        }
        Ok(sv.iter().map(|s| s * s / total).collect())
    }
}

/// Generalized (I-)concurrence `√(2(1 − Σλ⁴))` from the Schmidt weights.
///
/// Evaluated as `2√(Σ_{i<j} λᵢ²λⱼ²)`, the same quantity without the
/// cancellation in `1 − Σλ⁴` for weakly entangled grids. For a 2×2 grid
/// this is the spin-flip concurrence `2|det m|/‖m‖²`.
pub fn concurrence_oracle(m: &CoefficientMatrix) -> Result<f64> {
    let w = m.schmidt_weights()?;
    let mut prefix = 0.0;
    let mut pairs = 0.0;
    for &x in &w {
        pairs += x * prefix;
        prefix += x;
    }
    Ok((2.0 * pairs.sqrt()).min(1.0))
}

/// Base-2 Shannon entropy of the Schmidt weights.
pub fn entanglement_entropy(m: &CoefficientMatrix) -> Result<f64> {
    let w = m.schmidt_weights()?;
    let h: f64 = w
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    Ok(h.max(0.0))
}

/// Entropy of a Schmidt-rank-two state with concurrence `c`, from
/// `λ₁², λ₂² = (1 ± √(1 − c²))/2`.
pub fn binary_entropy_from_concurrence(c: f64) -> f64 {
    let c = c.clamp(0.0, 1.0);
    let r = ((1.0 - c) * (1.0 + c)).sqrt();
    let hi = 0.5 * (1.0 + r);
    let lo = 0.25 * c * c / hi;
    [hi, lo]
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum::<f64>()
        .max(0.0)
}

/// Global-phase-invariant squared overlap `|⟨a|b⟩|²/(‖a‖²‖b‖²)`.
///
/// Grids of different size are compared as if the smaller one were
/// zero-padded.
pub fn fidelity(a: &CoefficientMatrix, b: &CoefficientMatrix) -> Result<f64> {
    let na = a.norm_sqr();
    let nb = b.norm_sqr();
    if na <= ZERO_NORM_SQR || nb <= ZERO_NORM_SQR {
        return Err(Error::ZeroState);
    }
    let rows = a.rows.min(b.rows);
    let cols = a.cols.min(b.cols);
    let mut inner = Complex64::new(0.0, 0.0);
    for m in 0..rows {
        for n in 0..cols {
            inner += a.get(m, n).conj() * b.get(m, n);
        }
    }
    Ok((inner.norm_sqr() / (na * nb)).min(1.0))
}
