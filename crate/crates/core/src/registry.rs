//! Name-keyed registries of interchangeable strategies: MES family
//! constructors and concurrence estimators for coherent pair states.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bipartite::{canonical_matrix, concurrence_closed_form};
use crate::coherent::{
    antisymmetric_mes, as_overlap_state, quarter_phase_family, quartet, same_phase_family,
    CoherentLabel, CoherentPairState, Constructed, QuartetMember, Sign,
};
use crate::error::{Error, Result};
use crate::fock::{fock_coefficients, fock_coefficients_auto, numeric_concurrence};
use crate::matrix::concurrence_oracle;

/// Union of the parameters the family constructors read. Each family
/// reports a missing field as `InvalidArgument`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FamilyArgs {
    pub alpha: Option<CoherentLabel>,
    pub beta: Option<CoherentLabel>,
    pub lambda: Option<f64>,
    pub gamma_mod: Option<f64>,
    pub delta_mod: Option<f64>,
    pub sign: Option<Sign>,
    pub which: Option<u32>,
}

fn need<T: Copy>(v: Option<T>, family: &str, field: &str) -> Result<T> {
    v.ok_or_else(|| Error::InvalidArgument(format!("{family} needs --{field}")))
}

pub trait FamilyConstructor: Send + Sync {
    fn name(&self) -> &'static str;
    fn construct(&self, args: &FamilyArgs) -> Result<Constructed>;
}

struct Antisymmetric;

impl FamilyConstructor for Antisymmetric {
    fn name(&self) -> &'static str {
        "antisym"
    }

    fn construct(&self, args: &FamilyArgs) -> Result<Constructed> {
        let state = antisymmetric_mes(
            need(args.alpha, self.name(), "alpha")?,
            need(args.beta, self.name(), "beta")?,
        )?;
        Ok(Constructed {
            state,
            notes: Vec::new(),
        })
    }
}

struct SamePhase;

impl FamilyConstructor for SamePhase {
    fn name(&self) -> &'static str {
        "same-phase"
    }

    fn construct(&self, args: &FamilyArgs) -> Result<Constructed> {
        same_phase_family(
            need(args.alpha, self.name(), "alpha")?,
            need(args.beta, self.name(), "beta")?,
            need(args.lambda, self.name(), "lambda")?,
            args.sign.unwrap_or(Sign::Plus),
        )
    }
}

struct QuarterPhase;

impl FamilyConstructor for QuarterPhase {
    fn name(&self) -> &'static str {
        "quarter-phase"
    }

    fn construct(&self, args: &FamilyArgs) -> Result<Constructed> {
        let state = quarter_phase_family(
            need(args.alpha, self.name(), "alpha")?,
            need(args.beta, self.name(), "beta")?,
            need(args.gamma_mod, self.name(), "gamma-mod")?,
            need(args.delta_mod, self.name(), "delta-mod")?,
            args.sign.unwrap_or(Sign::Plus),
        )?;
        Ok(Constructed {
            state,
            notes: Vec::new(),
        })
    }
}

struct Quartet;

impl FamilyConstructor for Quartet {
    fn name(&self) -> &'static str {
        "quartet"
    }

    fn construct(&self, args: &FamilyArgs) -> Result<Constructed> {
        let which = QuartetMember::from_index(need(args.which, self.name(), "which")?)?;
        let state = quartet(need(args.alpha, self.name(), "alpha")?, which)?;
        Ok(Constructed {
            state,
            notes: Vec::new(),
        })
    }
}

#[derive(Clone)]
pub struct FamilyRegistry {
    families: BTreeMap<&'static str, Arc<dyn FamilyConstructor>>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self {
            families: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, family: Arc<dyn FamilyConstructor>) {
        self.families.insert(family.name(), family);
    }

    pub fn get(&self, name: &str) -> Result<&Arc<dyn FamilyConstructor>> {
        self.families
            .get(name)
            .ok_or_else(|| Error::InvalidVariant(format!("unknown family {name:?}")))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.families.keys().copied()
    }

    pub fn construct(&self, name: &str, args: &FamilyArgs) -> Result<Constructed> {
        self.get(name)?.construct(args)
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Antisymmetric));
        r.register(Arc::new(SamePhase));
        r.register(Arc::new(QuarterPhase));
        r.register(Arc::new(Quartet));
        r
    }
}

/// A way of computing the concurrence of a coherent pair state.
pub trait ConcurrenceEstimator: Send + Sync {
    fn name(&self) -> &'static str;
    fn estimate(&self, s: &CoherentPairState) -> Result<f64>;
}

/// Closed form on the overlaps.
pub struct ClosedForm;

impl ConcurrenceEstimator for ClosedForm {
    fn name(&self) -> &'static str {
        "closed_form"
    }

    fn estimate(&self, s: &CoherentPairState) -> Result<f64> {
        concurrence_closed_form(&as_overlap_state(s)?)
    }
}

/// Singular values of the 2×2 Gram–Schmidt embedding.
pub struct GramSchmidtSvd;

impl ConcurrenceEstimator for GramSchmidtSvd {
    fn name(&self) -> &'static str {
        "gram_schmidt_svd"
    }

    fn estimate(&self, s: &CoherentPairState) -> Result<f64> {
        concurrence_oracle(&canonical_matrix(&as_overlap_state(s)?)?)
    }
}

/// Singular values of the truncated Fock grid.
pub struct FockSvd {
    pub cutoff: Option<usize>,
}

impl ConcurrenceEstimator for FockSvd {
    fn name(&self) -> &'static str {
        "fock_numeric"
    }

    fn estimate(&self, s: &CoherentPairState) -> Result<f64> {
        let t = match self.cutoff {
            Some(n) => fock_coefficients(s, n)?,
            None => fock_coefficients_auto(s)?,
        };
        numeric_concurrence(&t)
    }
}

#[derive(Clone)]
pub struct EstimatorRegistry {
    estimators: Vec<Arc<dyn ConcurrenceEstimator>>,
}

impl EstimatorRegistry {
    /// Closed form, Gram–Schmidt SVD and Fock SVD, in that order.
    pub fn standard(cutoff: Option<usize>) -> Self {
        Self {
            estimators: vec![
                Arc::new(ClosedForm),
                Arc::new(GramSchmidtSvd),
                Arc::new(FockSvd { cutoff }),
            ],
        }
    }

    pub fn register(&mut self, e: Arc<dyn ConcurrenceEstimator>) {
        self.estimators.retain(|x| x.name() != e.name());
        self.estimators.push(e);
    }

    pub fn get(&self, name: &str) -> Result<&Arc<dyn ConcurrenceEstimator>> {
        self.estimators
            .iter()
            .find(|e| e.name() == name)
            .ok_or_else(|| Error::InvalidVariant(format!("unknown estimator {name:?}")))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn ConcurrenceEstimator>> {
        self.estimators.iter()
    }

    /// Every estimator's value, in registration order.
    pub fn estimate_all(&self, s: &CoherentPairState) -> Result<Vec<(&'static str, f64)>> {
        self.estimators
            .iter()
            .map(|e| Ok((e.name(), e.estimate(s)?)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn l(x: f64) -> CoherentLabel {
        CoherentLabel::real(x).unwrap()
    }

    #[test]
    fn default_registry_names() {
        let r = FamilyRegistry::default();
        let names: Vec<_> = r.names().collect();
        assert_eq!(names, ["antisym", "quarter-phase", "quartet", "same-phase"]);
        assert!(matches!(r.get("cat"), Err(Error::InvalidVariant(_))));
    }

    #[test]
    fn dispatch_by_name() {
        let r = FamilyRegistry::default();
        let args = FamilyArgs {
            alpha: Some(l(1.0)),
            which: Some(1),
            ..Default::default()
        };
        let c = r.construct("quartet", &args).unwrap();
        assert_eq!(c.state, quartet(l(1.0), QuartetMember::First).unwrap());

        let bad = FamilyArgs {
            which: Some(5),
            ..args.clone()
        };
        assert!(matches!(r.construct("quartet", &bad), Err(Error::InvalidVariant(_))));
        assert!(matches!(
            r.construct("same-phase", &args),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn estimators_agree_on_mes() {
        let s = quartet(l(0.8), QuartetMember::Second).unwrap();
        let all = EstimatorRegistry::standard(None).estimate_all(&s).unwrap();
        assert_eq!(all.len(), 3);
        for (name, c) in all {
            assert_abs_diff_eq!(c, 1.0, epsilon = 1e-8);
            assert!(!name.is_empty());
        }
    }
}
