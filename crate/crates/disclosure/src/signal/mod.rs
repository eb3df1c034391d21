//! Two-state signal structures: continuous belief densities, discrete atom
//! tables, precision-indexed families, and construction from a target
//! nondisclosure curve.

mod continuous;
mod curve;
mod discrete;
mod precision;

pub use continuous::{ContinuousSignalModel, State};
pub use curve::{model_from_target_curve, TargetCurveModel};
pub use discrete::{DiscreteAtom, DiscreteSignalModel};
pub use precision::{beta_precision_model, precision_nd_derivative, PrecisionDerivative, PrecisionFamily};

use crate::error::ModelError;

/// Which side of a threshold a conditional expectation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Below,
    Above,
}

/// A two-state signal model; continuous and discrete kinds are separate
/// (mixed continuous/atomic structures are unsupported).
#[derive(Debug, Clone)]
pub enum SignalModel {
    Continuous(ContinuousSignalModel),
    Discrete(DiscreteSignalModel),
}

impl From<ContinuousSignalModel> for SignalModel {
    fn from(m: ContinuousSignalModel) -> Self {
        SignalModel::Continuous(m)
    }
}

impl From<DiscreteSignalModel> for SignalModel {
    fn from(m: DiscreteSignalModel) -> Self {
        SignalModel::Discrete(m)
    }
}

impl SignalModel {
    pub fn prior(&self) -> f64 {
        match self {
            SignalModel::Continuous(m) => m.prior(),
            SignalModel::Discrete(m) => m.prior(),
        }
    }

    pub fn support(&self) -> (f64, f64) {
        match self {
            SignalModel::Continuous(m) => m.support(),
            SignalModel::Discrete(m) => m.support(),
        }
    }

    /// F_belief(s): the signal CDF under an arbitrary belief over the state.
    pub fn cdf_at_belief(&self, belief: f64, s: f64) -> Result<f64, ModelError> {
        check_belief(belief)?;
        let (lo, hi) = self.support();
        if s < lo - 1e-12 || s > hi + 1e-12 {
            return Err(ModelError::OutsideSupport { s, lo, hi });
        }
        Ok(match self {
            SignalModel::Continuous(m) => m.mixture_cdf(belief, s),
            SignalModel::Discrete(m) => m.mixture_cdf(belief, s),
        })
    }

    /// E_belief[t | t < s] or E_belief[t | t > s] over signal labels.
    ///
    /// Errors when the conditioning event has zero probability, which callers
    /// must handle for thresholds at the support boundary.
    pub fn truncated_mean(&self, belief: f64, s: f64, side: Side) -> Result<f64, ModelError> {
        check_belief(belief)?;
        let (lo, hi) = self.support();
        if s < lo - 1e-12 || s > hi + 1e-12 {
            return Err(ModelError::OutsideSupport { s, lo, hi });
        }
        let (mass, partial) = match self {
            SignalModel::Continuous(m) => {
                let (f, m1) = (m.mixture_cdf(belief, s), m.mixture_m1(belief, s));
                match side {
                    Side::Below => (f, m1),
                    Side::Above => (1.0 - f, m.mixture_mean(belief) - m1),
                }
            }
            SignalModel::Discrete(m) => {
                let mut mass = 0.0;
                let mut partial = 0.0;
                for (k, a) in m.atoms().iter().enumerate() {
                    let take = match side {
                        Side::Below => a.value < s - 1e-12,
                        Side::Above => a.value > s + 1e-12,
                    };
                    if take {
                        let w = m.mass_at_belief(belief, k);
                        mass += w;
                        partial += w * a.value;
                    }
                }
                (mass, partial)
            }
        };
        if mass <= 1e-14 {
            return Err(ModelError::EmptyEvent { s });
        }
        Ok(partial / mass)
    }

    /// The model with s -> 1 - s, prior -> 1 - prior and states relabeled;
    /// applying twice is the identity. All downward-bias solves are routed
    /// through this transform so the core handles upward bias only.
    pub fn mirror(&self) -> Self {
        match self {
            SignalModel::Continuous(m) => SignalModel::Continuous(m.mirror()),
            SignalModel::Discrete(m) => SignalModel::Discrete(m.mirror()),
        }
    }

    pub fn as_continuous(&self) -> Option<&ContinuousSignalModel> {
        match self {
            SignalModel::Continuous(m) => Some(m),
            SignalModel::Discrete(_) => None,
        }
    }

    pub fn as_discrete(&self) -> Option<&DiscreteSignalModel> {
        match self {
            SignalModel::Discrete(m) => Some(m),
            SignalModel::Continuous(_) => None,
        }
    }
}

fn check_belief(belief: f64) -> Result<(), ModelError> {
    if !(belief.is_finite() && (0.0..=1.0).contains(&belief)) {
        return Err(ModelError::Domain { name: "belief", value: belief });
    }
    Ok(())
}
