//! Entanglement of bipartite pure states `μ|α⟩⊗|β⟩ + ν|γ⟩⊗|δ⟩` built from
//! nonorthogonal kets, with entangled coherent states as the concrete
//! realization.
//!
//! * [`bipartite`]: overlap-parameterized states, normalization, the
//!   closed-form concurrence and the Gram–Schmidt 2×2 embedding.
//! * [`matrix`]: amplitude grids and the singular-value route (generalized
//!   concurrence, entropy, fidelity).
//! * [`classify`]: maximal-entanglement and product-state criteria.
//! * [`coherent`]: coherent overlaps, the label-level MES condition and
//!   every explicit MES family.
//! * [`fock`]: truncated Fock expansion and the small-amplitude Bell limits.
//! * [`registry`]: name-keyed family constructors and concurrence estimators.
//! * [`cli`]: the `entlab` command line.

pub mod bipartite;
pub mod classify;
pub mod cli;
pub mod coherent;
pub mod error;
pub mod fock;
pub mod matrix;
pub mod registry;

pub use bipartite::{
    canonical_matrix, concurrence_closed_form, normalization_constant, OverlapState,
};
pub use classify::{classify, is_disentangled, is_mes, ClassificationReport, Verdict};
pub use coherent::{as_overlap_state, CoherentLabel, CoherentPairState, QuartetMember, Sign};
pub use error::{Error, Result};
pub use matrix::{concurrence_oracle, entanglement_entropy, fidelity, CoefficientMatrix};
