//! Discrete two-state signal models given as an atom table.

use crate::error::ModelError;
use crate::signal::continuous::{check_probability, State};

/// One signal atom: its private-belief value and conditional probabilities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscreteAtom {
    pub value: f64,
    pub prob_given_0: f64,
    pub prob_given_1: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSignalModel {
    prior: f64,
    atoms: Vec<DiscreteAtom>,
}

impl DiscreteSignalModel {
    /// Validates the table: conditional columns sum to one, signal values are
    /// strictly increasing, and each value equals the Bayesian posterior its
    /// conditional probabilities induce (0/0 only at boundary beliefs).
    pub fn new(prior: f64, atoms: Vec<DiscreteAtom>) -> Result<Self, ModelError> {
        check_probability("prior", prior)?;
        if atoms.len() < 2 {
            return Err(ModelError::InvalidTable("need at least two atoms".into()));
        }
        let (mut c0, mut c1) = (0.0, 0.0);
        for (k, a) in atoms.iter().enumerate() {
            if !(0.0..=1.0).contains(&a.value) {
                return Err(ModelError::InvalidTable(format!("row {k}: signal {} not in [0,1]", a.value)));
            }
            if a.prob_given_0 < 0.0 || a.prob_given_1 < 0.0 {
                return Err(ModelError::InvalidTable(format!("row {k}: negative probability")));
            }
            if k > 0 && atoms[k - 1].value >= a.value {
                return Err(ModelError::InvalidTable(format!(
                    "row {k}: signal values must be strictly increasing"
                )));
            }
            let denom = prior * a.prob_given_1 + (1.0 - prior) * a.prob_given_0;
            if denom <= 0.0 {
                return Err(ModelError::InvalidTable(format!("row {k}: atom has zero probability")));
            }
            let posterior = prior * a.prob_given_1 / denom;
            if (posterior - a.value).abs() > 1e-9 {
                return Err(ModelError::InvalidTable(format!(
                    "row {k}: signal {} is not the posterior {posterior} its conditionals induce",
                    a.value
                )));
            }
            c0 += a.prob_given_0;
            c1 += a.prob_given_1;
        }
        if (c0 - 1.0).abs() > 1e-9 || (c1 - 1.0).abs() > 1e-9 {
            return Err(ModelError::InvalidTable(format!(
                "conditional columns must sum to 1 (got {c0} and {c1})"
            )));
        }
        Ok(Self { prior, atoms })
    }

    /// The four-signal symmetric family at prior 1/2: signal values
    /// {0, 1-gamma, gamma, 1} with mixing weights gamma and delta.
    pub fn symmetric_four_point(gamma: f64, delta: f64) -> Result<Self, ModelError> {
        if !(0.5 < gamma && gamma < 1.0) {
            return Err(ModelError::Domain { name: "gamma", value: gamma });
        }
        if !(0.0 < delta && delta < 1.0) {
            return Err(ModelError::Domain { name: "delta", value: delta });
        }
        Self::new(
            0.5,
            vec![
                DiscreteAtom { value: 0.0, prob_given_0: 1.0 - delta, prob_given_1: 0.0 },
                DiscreteAtom { value: 1.0 - gamma, prob_given_0: gamma * delta, prob_given_1: (1.0 - gamma) * delta },
                DiscreteAtom { value: gamma, prob_given_0: (1.0 - gamma) * delta, prob_given_1: gamma * delta },
                DiscreteAtom { value: 1.0, prob_given_0: 0.0, prob_given_1: 1.0 - delta },
            ],
        )
    }

    pub fn prior(&self) -> f64 {
        self.prior
    }

    pub fn atoms(&self) -> &[DiscreteAtom] {
        &self.atoms
    }

    pub fn support(&self) -> (f64, f64) {
        (self.atoms[0].value, self.atoms[self.atoms.len() - 1].value)
    }

    pub fn cond_mass(&self, k: usize, state: State) -> f64 {
        match state {
            State::High => self.atoms[k].prob_given_1,
            State::Low => self.atoms[k].prob_given_0,
        }
    }

    /// Atom mass under an arbitrary belief over the state.
    pub fn mass_at_belief(&self, belief: f64, k: usize) -> f64 {
        belief * self.atoms[k].prob_given_1 + (1.0 - belief) * self.atoms[k].prob_given_0
    }

    pub fn prior_mass(&self, k: usize) -> f64 {
        self.mass_at_belief(self.prior, k)
    }

    /// Right-continuous CDF of the signal under an arbitrary belief.
    pub fn mixture_cdf(&self, belief: f64, s: f64) -> f64 {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, a)| a.value <= s)
            .map(|(k, _)| self.mass_at_belief(belief, k))
            .sum()
    }

    /// Mean signal label under an arbitrary belief.
    pub fn mixture_mean(&self, belief: f64) -> f64 {
        (0..self.atoms.len())
            .map(|k| self.atoms[k].value * self.mass_at_belief(belief, k))
            .sum()
    }

    /// The mirrored model: values 1 - s in reversed order, states swapped.
    pub fn mirror(&self) -> Self {
        let atoms = self
            .atoms
            .iter()
            .rev()
            .map(|a| DiscreteAtom {
                value: 1.0 - a.value,
                prob_given_0: a.prob_given_1,
                prob_given_1: a.prob_given_0,
            })
            .collect();
        Self { prior: 1.0 - self.prior, atoms }
    }

    /// Index of the atom at `value`, treating values within 1e-12 as equal.
    pub fn atom_index(&self, value: f64) -> Option<usize> {
        self.atoms.iter().position(|a| (a.value - value).abs() <= 1e-12)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn four_point_table_is_consistent() {
        let m = DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap();
        assert_eq!(m.atoms().len(), 4);
        assert_abs_diff_eq!(m.atoms()[1].value, 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(m.prior_mass(0), 0.15, epsilon = 1e-15);
        assert_abs_diff_eq!(m.prior_mass(1), 0.35, epsilon = 1e-15);
    }

    #[test]
    fn mirror_relabels_table() {
        let m = DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap();
        let mir = m.mirror();
        // The symmetric table maps onto itself.
        assert_eq!(m, mir);
        let mm = mir.mirror();
        assert_eq!(m, mm);
    }

    #[test]
    fn inconsistent_posterior_rejected() {
        let err = DiscreteSignalModel::new(
            0.5,
            vec![
                DiscreteAtom { value: 0.2, prob_given_0: 0.5, prob_given_1: 0.5 },
                DiscreteAtom { value: 0.8, prob_given_0: 0.5, prob_given_1: 0.5 },
            ],
        );
        assert!(matches!(err, Err(ModelError::InvalidTable(_))));
    }
}
