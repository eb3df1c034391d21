//! Bayesian machinery: nondisclosure beliefs, the posterior transform between
//! heterogeneous interim beliefs, per-sender message kernels, and the payoff a
//! sender expects when concealing while another sender's message arrives.
//!
//! Everything here is a pure function of immutable models; downward bias is
//! handled exclusively by evaluating the upward formulas on mirrored models.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::signal::{ContinuousSignalModel, DiscreteSignalModel, SignalModel, State};

/// Direction of a sender's bias over the decision maker's belief.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bias {
    Up,
    Down,
}

impl Bias {
    pub fn flip(self) -> Self {
        match self {
            Bias::Up => Bias::Down,
            Bias::Down => Bias::Up,
        }
    }
}

/// A sender: the probability he is informed and his bias direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SenderSpec {
    pub informed_prob: f64,
    pub bias: Bias,
}

impl SenderSpec {
    pub fn up(informed_prob: f64) -> Self {
        Self { informed_prob, bias: Bias::Up }
    }

    pub fn down(informed_prob: f64) -> Self {
        Self { informed_prob, bias: Bias::Down }
    }

    /// p must lie in (0, 1]; p = 1 is admissible only under a disclosure cost
    /// (with c <= 0 a surely-informed sender would fully unravel).
    pub fn validate(&self, cost: f64) -> Result<(), ModelError> {
        if !(self.informed_prob > 0.0 && self.informed_prob <= 1.0) {
            return Err(ModelError::Domain { name: "informed_prob", value: self.informed_prob });
        }
        if self.informed_prob == 1.0 && cost <= 0.0 {
            return Err(ModelError::Domain { name: "informed_prob (p = 1 requires c > 0)", value: 1.0 });
        }
        Ok(())
    }
}

/// A threshold strategy. An upward sender discloses signals above
/// `threshold`, a downward sender those below it. `marginal_weight` is the
/// disclosure probability of a discrete atom sitting exactly at the
/// threshold (continuous models ignore it).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cut {
    pub threshold: f64,
    pub marginal_weight: f64,
}

impl Cut {
    pub fn at(threshold: f64) -> Self {
        Self { threshold, marginal_weight: 1.0 }
    }

    pub fn with_weight(threshold: f64, marginal_weight: f64) -> Self {
        Self { threshold, marginal_weight }
    }

    pub fn mirror(self) -> Self {
        Self { threshold: 1.0 - self.threshold, marginal_weight: self.marginal_weight }
    }
}

/// Posterior from `prior` given a likelihood ratio supplied as the pair of
/// state-conditional probabilities (l1, l0) of the observed event.
pub(crate) fn posterior_from_lr(prior: f64, l1: f64, l0: f64) -> f64 {
    if prior <= 0.0 {
        return 0.0;
    }
    if prior >= 1.0 {
        return 1.0;
    }
    let num = prior * l1;
    let den = num + (1.0 - prior) * l0;
    if den <= 0.0 {
        // The event has zero probability from this vantage; beliefs are
        // absorbing, so return the prior unchanged.
        return prior;
    }
    num / den
}

/// The transform carrying one agent's posterior into another's when they
/// share an experiment but hold interim beliefs `mu_i` and `mu_dm`.
///
/// Strictly increasing in `beta_i` and `mu_dm`; T(b, m, m) = b; certainty is
/// a fixed point.
pub fn transform_posterior(beta_i: f64, mu_dm: f64, mu_i: f64) -> Result<f64, ModelError> {
    if !(0.0..=1.0).contains(&beta_i) {
        return Err(ModelError::Domain { name: "beta_i", value: beta_i });
    }
    if beta_i == 0.0 || beta_i == 1.0 {
        return Ok(beta_i);
    }
    if mu_i <= 0.0 || mu_i >= 1.0 {
        return Err(ModelError::UndefinedTransform { interim: mu_i });
    }
    if mu_dm <= 0.0 || mu_dm >= 1.0 {
        return Ok(mu_dm.clamp(0.0, 1.0));
    }
    // In odds form: odds(T) = odds(beta_i) * odds(mu_dm) / odds(mu_i).
    let num = beta_i * mu_dm * (1.0 - mu_i);
    let den = num + (1.0 - beta_i) * (1.0 - mu_dm) * mu_i;
    Ok(num / den)
}

/// Unchecked transform for hot paths where the operands are known interior.
#[inline]
pub(crate) fn transform_unchecked(beta_i: f64, mu_dm: f64, mu_i: f64) -> f64 {
    let num = beta_i * mu_dm * (1.0 - mu_i);
    let den = num + (1.0 - beta_i) * (1.0 - mu_dm) * mu_i;
    if den <= 0.0 {
        mu_dm
    } else {
        num / den
    }
}

/// The probability an upward sender with `cut` conceals, conditional on the
/// state (signals strictly below the threshold, plus the withheld share of a
/// marginal atom).
fn conceal_prob_up(model: &SignalModel, cut: Cut, state: State) -> f64 {
    match model {
        SignalModel::Continuous(m) => m.cond_cdf(cut.threshold, state),
        SignalModel::Discrete(m) => {
            let mut mass = 0.0;
            for (k, a) in m.atoms().iter().enumerate() {
                if a.value < cut.threshold - 1e-12 {
                    mass += m.cond_mass(k, state);
                } else if (a.value - cut.threshold).abs() <= 1e-12 {
                    mass += (1.0 - cut.marginal_weight) * m.cond_mass(k, state);
                }
            }
            mass
        }
    }
}

/// The DM's posterior following nondisclosure by an upward-biased sender:
/// the mixture of the interim prior (sender uninformed) and the concealed
/// region's posterior (sender informed below the cut), by Bayes' rule.
///
/// At the support boundaries it returns the interim prior, and it does so as
/// well for absorbing interim beliefs 0 and 1.
pub fn nondisclosure_belief(model: &SignalModel, cut: Cut, p: f64, interim_prior: f64) -> f64 {
    let n1 = 1.0 - p + p * conceal_prob_up(model, cut, State::High);
    let n0 = 1.0 - p + p * conceal_prob_up(model, cut, State::Low);
    posterior_from_lr(interim_prior, n1, n0)
}

/// Downward-sender analog, routed through the mirror transform:
/// eta_down(m, cut, p, mu) = 1 - eta(mirror(m), mirror(cut), p, 1 - mu).
pub fn nondisclosure_belief_down(model: &SignalModel, cut: Cut, p: f64, interim_prior: f64) -> f64 {
    1.0 - nondisclosure_belief(&model.mirror(), cut.mirror(), p, 1.0 - interim_prior)
}

/// Precomputed message structure of one sender at a fixed strategy: the
/// state-conditional nondisclosure probabilities plus access to the
/// disclosure branch. Downward senders are represented by the mirrored model
/// so the disclosure region is always an upper set in view coordinates.
#[derive(Clone)]
pub struct MessageKernel {
    p: f64,
    /// P(message = nondisclosure | state), in original state labels.
    nd1: f64,
    nd0: f64,
    view: KernelView,
}

#[derive(Clone)]
enum KernelView {
    Continuous {
        model: ContinuousSignalModel,
        cut: Cut,
        /// View coordinates are mirrored relative to the game frame.
        mirrored: bool,
    },
    Discrete {
        model: DiscreteSignalModel,
        /// (atom index in the game-frame model, disclosure probability).
        disclosed: Vec<(usize, f64)>,
    },
}

impl MessageKernel {
    pub fn new(model: &SignalModel, cut: Cut, spec: SenderSpec) -> Self {
        let p = spec.informed_prob;
        match (model, spec.bias) {
            (SignalModel::Discrete(m), bias) => {
                let mut disclosed = Vec::new();
                for (k, a) in m.atoms().iter().enumerate() {
                    let w = match bias {
                        Bias::Up => {
                            if a.value > cut.threshold + 1e-12 {
                                1.0
                            } else if (a.value - cut.threshold).abs() <= 1e-12 {
                                cut.marginal_weight
                            } else {
                                0.0
                            }
                        }
                        Bias::Down => {
                            if a.value < cut.threshold - 1e-12 {
                                1.0
                            } else if (a.value - cut.threshold).abs() <= 1e-12 {
                                cut.marginal_weight
                            } else {
                                0.0
                            }
                        }
                    };
                    if w > 0.0 {
                        disclosed.push((k, w));
                    }
                }
                let nd = |state: State| -> f64 {
                    let disclosed_mass: f64 =
                        disclosed.iter().map(|&(k, w)| w * m.cond_mass(k, state)).sum();
                    1.0 - p * disclosed_mass
                };
                Self {
                    p,
                    nd1: nd(State::High),
                    nd0: nd(State::Low),
                    view: KernelView::Discrete { model: m.clone(), disclosed },
                }
            }
            (SignalModel::Continuous(m), Bias::Up) => {
                let nd1 = 1.0 - p + p * m.cond_cdf(cut.threshold, State::High);
                let nd0 = 1.0 - p + p * m.cond_cdf(cut.threshold, State::Low);
                Self { p, nd1, nd0, view: KernelView::Continuous { model: m.clone(), cut, mirrored: false } }
            }
            (SignalModel::Continuous(m), Bias::Down) => {
                let mm = m.mirror();
                let mc = cut.mirror();
                // Mirrored view swaps the state labels.
                let nd0 = 1.0 - p + p * mm.cond_cdf(mc.threshold, State::High);
                let nd1 = 1.0 - p + p * mm.cond_cdf(mc.threshold, State::Low);
                Self { p, nd1, nd0, view: KernelView::Continuous { model: mm, cut: mc, mirrored: true } }
            }
        }
    }

    /// State-conditional nondisclosure probabilities (original labels).
    pub fn nd_probs(&self) -> (f64, f64) {
        (self.nd1, self.nd0)
    }

    /// Probability of nondisclosure from a given vantage belief.
    pub fn nd_mass(&self, vantage: f64) -> f64 {
        vantage * self.nd1 + (1.0 - vantage) * self.nd0
    }

    /// Integrates `g` over the disclosure branch from a vantage belief:
    /// E[g(t) 1{disclosed}] where t is the game-frame signal label.
    pub fn expect_disclosure<G: Fn(f64) -> f64>(&self, vantage: f64, g: G) -> f64 {
        match &self.view {
            KernelView::Discrete { model, disclosed } => disclosed
                .iter()
                .map(|&(k, w)| {
                    self.p * w * model.mass_at_belief(vantage, k) * g(model.atoms()[k].value)
                })
                .sum(),
            KernelView::Continuous { model, cut, mirrored } => {
                let v = if *mirrored { 1.0 - vantage } else { vantage };
                let to_frame = |u: f64| if *mirrored { 1.0 - u } else { u };
                let (_, hi) = model.support();
                let integrand = |u: f64| g(to_frame(u)) * model.mixture_density(v, u);
                self.p * model.scan_rule().integrate_from(&integrand, cut.threshold.min(hi))
            }
        }
    }

    /// Same expectation at adaptive precision (used by certification paths).
    pub fn expect_disclosure_precise<G: Fn(f64) -> f64>(&self, vantage: f64, g: G, tol: f64) -> f64 {
        match &self.view {
            KernelView::Discrete { .. } => self.expect_disclosure(vantage, g),
            KernelView::Continuous { model, cut, mirrored } => {
                let v = if *mirrored { 1.0 - vantage } else { vantage };
                let to_frame = |u: f64| if *mirrored { 1.0 - u } else { u };
                let (lo, hi) = model.support();
                let integrand = |u: f64| g(to_frame(u)) * model.mixture_density(v, u);
                self.p * crate::num::quad::integrate(&integrand, cut.threshold.clamp(lo, hi), hi, tol)
            }
        }
    }

    /// Disclosed atoms as (value, p w q1, p w q0): state-conditional message
    /// masses in the game frame. Empty for continuous kernels.
    pub fn disclosed_atom_conditionals(&self) -> Vec<(f64, f64, f64)> {
        match &self.view {
            KernelView::Discrete { model, disclosed } => disclosed
                .iter()
                .map(|&(k, w)| {
                    (
                        model.atoms()[k].value,
                        self.p * w * model.cond_mass(k, State::High),
                        self.p * w * model.cond_mass(k, State::Low),
                    )
                })
                .collect(),
            KernelView::Continuous { .. } => Vec::new(),
        }
    }

    /// Enumerates disclosed atoms as (game-frame value, disclosure prob at
    /// vantage). Empty for continuous kernels.
    pub fn disclosed_atoms(&self, vantage: f64) -> Vec<(f64, f64)> {
        match &self.view {
            KernelView::Discrete { model, disclosed } => disclosed
                .iter()
                .map(|&(k, w)| (model.atoms()[k].value, self.p * w * model.mass_at_belief(vantage, k)))
                .collect(),
            KernelView::Continuous { .. } => Vec::new(),
        }
    }
}

/// The distribution of one sender's message from a vantage belief: the
/// nondisclosure mass plus the disclosure branch.
pub struct MessageDistribution {
    pub nondisclosure_mass: f64,
    pub branch: DisclosureBranch,
}

pub enum DisclosureBranch {
    /// Sub-density f(t) weight(t) over disclosed game-frame signal values.
    Continuous {
        region: (f64, f64),
        model: ContinuousSignalModel,
        weight: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    },
    /// (signal value, mass) pairs.
    Discrete(Vec<(f64, f64)>),
}

impl DisclosureBranch {
    /// Message density at a disclosed value (continuous branches).
    pub fn density_at(&self, t: f64) -> f64 {
        match self {
            DisclosureBranch::Continuous { model, weight, .. } => weight(t) * model.density_at(t),
            DisclosureBranch::Discrete(_) => 0.0,
        }
    }
}

impl MessageDistribution {
    pub fn disclosure_mass(&self) -> f64 {
        match &self.branch {
            DisclosureBranch::Discrete(atoms) => atoms.iter().map(|&(_, m)| m).sum(),
            DisclosureBranch::Continuous { region, model, weight } => {
                let (qa, qb) = (model.cdf_prior(region.0), model.cdf_prior(region.1));
                crate::num::quad::integrate(&|q| weight(model.quantile_prior(q)), qa, qb, 1e-12)
            }
        }
    }
}

/// The law of a sender's message from an arbitrary vantage belief.
pub fn message_distribution(
    model: &SignalModel,
    spec: SenderSpec,
    cut: Cut,
    vantage: f64,
) -> Result<MessageDistribution, ModelError> {
    if !(0.0..=1.0).contains(&vantage) {
        return Err(ModelError::Domain { name: "vantage", value: vantage });
    }
    let kernel = MessageKernel::new(model, cut, spec);
    let nondisclosure_mass = kernel.nd_mass(vantage);
    let branch = match (model, spec.bias) {
        (SignalModel::Discrete(_), _) => DisclosureBranch::Discrete(kernel.disclosed_atoms(vantage)),
        (SignalModel::Continuous(m), bias) => {
            let (lo, hi) = m.support();
            let region = match bias {
                Bias::Up => (cut.threshold.clamp(lo, hi), hi),
                Bias::Down => (lo, cut.threshold.clamp(lo, hi)),
            };
            let p = spec.informed_prob;
            let prior = m.prior();
            let weight = Arc::new(move |t: f64| {
                p * (vantage * t / prior + (1.0 - vantage) * (1.0 - t) / (1.0 - prior))
            });
            DisclosureBranch::Continuous { region, model: m.clone(), weight }
        }
    };
    Ok(MessageDistribution { nondisclosure_mass, branch })
}

/// Both computational routes to the concealment payoff; they must agree.
#[derive(Debug, Clone, Copy)]
pub struct ConcealmentPayoff {
    /// Transform route: j's effect on i's posterior carried through T.
    pub t_form: f64,
    /// Direct route: the DM's own composed nondisclosure updates.
    pub direct_form: f64,
}

impl ConcealmentPayoff {
    pub fn value(&self) -> f64 {
        self.t_form
    }

    pub fn spread(&self) -> f64 {
        (self.t_form - self.direct_form).abs()
    }
}

/// Sender i's expected DM posterior should he conceal signal `s_i` while the
/// DM conjectures threshold `cut_i` for him and sender j plays `cut_j`.
///
/// Sender i must be upward in the frame of `model`; downward-i games are
/// mirrored by the callers. Sender j may have either bias.
pub fn concealment_payoff(
    model: &SignalModel,
    s_i: f64,
    cut_i: Cut,
    p_i: f64,
    cut_j: Cut,
    sender_j: SenderSpec,
    prior: f64,
) -> Result<ConcealmentPayoff, ModelError> {
    let (lo, hi) = model.support();
    if s_i < lo - 1e-12 || s_i > hi + 1e-12 {
        return Err(ModelError::OutsideSupport { s: s_i, lo, hi });
    }
    let eta_i = nondisclosure_belief(model, cut_i, p_i, prior);
    let kernel_i = MessageKernel::new(model, cut_i, SenderSpec::up(p_i));
    let kernel_j = MessageKernel::new(model, cut_j, sender_j);
    let (i1, i0) = kernel_i.nd_probs();
    let (j1, j0) = kernel_j.nd_probs();
    let nd_mass = kernel_j.nd_mass(s_i);

    // Transform route (Eq. of the concealment payoff): i's posterior after
    // m_j, pushed to the DM through T with interim beliefs (eta_i, s_i).
    let beta_phi = posterior_from_lr(s_i, j1, j0);
    let t_phi = transform_unchecked(beta_phi, eta_i, s_i);
    let t_branch = kernel_j.expect_disclosure_precise(
        s_i,
        |t| {
            let beta_t = transform_unchecked(t, s_i, prior);
            transform_unchecked(beta_t, eta_i, s_i)
        },
        1e-10,
    );
    let t_form = nd_mass * t_phi + t_branch;

    // Direct route: the DM's joint updates. On j's disclosure of t the DM
    // holds eta(cut_i, p_i, t); on joint nondisclosure eta(cut_j, p_j, eta_i).
    let d_phi = posterior_from_lr(eta_i, j1, j0);
    let d_branch =
        kernel_j.expect_disclosure_precise(s_i, |t| posterior_from_lr(t, i1, i0), 1e-10);
    let direct_form = nd_mass * d_phi + d_branch;

    Ok(ConcealmentPayoff { t_form, direct_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{ContinuousSignalModel, DiscreteSignalModel};
    use approx::assert_abs_diff_eq;

    fn uniform() -> SignalModel {
        ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into()
    }

    fn four_point() -> SignalModel {
        DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap().into()
    }

    /// Fixed point of the uniform-model nondisclosure belief: the root of
    /// p s^2 + 2(1-p)s - (1-p) = 0 in (0, 1/2).
    pub(crate) fn uniform_fixed_point(p: f64) -> f64 {
        let (a, b, c) = (p, 2.0 * (1.0 - p), -(1.0 - p));
        (-b + (b * b - 4.0 * a * c).sqrt()) / (2.0 * a)
    }

    #[test]
    fn nd_belief_boundaries_equal_interim() {
        let m = uniform();
        for interim in [0.2, 0.5, 0.9] {
            assert_abs_diff_eq!(nondisclosure_belief(&m, Cut::at(0.0), 0.8, interim), interim);
            assert_abs_diff_eq!(nondisclosure_belief(&m, Cut::at(1.0), 0.8, interim), interim);
        }
    }

    #[test]
    fn nd_belief_reproduces_four_point_value() {
        // Disclose-set {s_h, s_bar}: threshold 1/2, p = 0.8, prior 1/2.
        let m = four_point();
        let eta = nondisclosure_belief(&m, Cut::at(0.5), 0.8, 0.5);
        assert_abs_diff_eq!(eta, 0.368 / 1.2, epsilon = 1e-12);
        assert_abs_diff_eq!(eta, 0.3067, epsilon = 5e-5);
    }

    #[test]
    fn nd_belief_uniform_fixed_point() {
        let m = uniform();
        let s = uniform_fixed_point(0.8);
        assert_abs_diff_eq!(s, 0.30902, epsilon = 1e-5);
        assert_abs_diff_eq!(nondisclosure_belief(&m, Cut::at(s), 0.8, 0.5), s, epsilon = 1e-12);
    }

    #[test]
    fn downward_belief_mirror_identity() {
        let m = four_point();
        // Downward sender concealing {s_h, s_bar} means his cut sits at 0.7
        // with zero weight (value 0.7 itself concealed).
        let cut = Cut::with_weight(0.7, 0.0);
        let direct = nondisclosure_belief_down(&m, cut, 0.8, 0.5);
        let mirrored = 1.0 - nondisclosure_belief(&m.mirror(), cut.mirror(), 0.8, 0.5);
        assert_abs_diff_eq!(direct, mirrored, epsilon = 1e-12);
        // Symmetric model, cut at 1/2: downward belief is 1 - upward belief.
        let up = nondisclosure_belief(&m, Cut::at(0.5), 0.8, 0.5);
        let down = nondisclosure_belief_down(&m, Cut::at(0.5), 0.8, 0.5);
        assert_abs_diff_eq!(down, 1.0 - up, epsilon = 1e-12);
    }

    #[test]
    fn nd_belief_shape_and_informedness_monotonicity() {
        // Slope sign matches the sign of (cut - eta); the fixed point is
        // unique and sits strictly between the support bottom and the prior.
        let models = [
            uniform(),
            SignalModel::Continuous(
                crate::signal::ContinuousSignalModel::from_belief_density(
                    |s: f64| (0.4 * (6.0 * s).sin() + 0.2 * s).exp(),
                    0.05,
                    0.95,
                    None,
                )
                .unwrap(),
            ),
        ];
        for m in &models {
            let (lo, hi) = m.support();
            let prior = m.prior();
            let p = 0.7;
            let eta_at = |s: f64| nondisclosure_belief(m, Cut::at(s), p, prior);
            let h = (hi - lo) * 1e-6;
            let mut crossings = 0;
            let mut prev_gap = lo - eta_at(lo);
            for k in 1..100 {
                let s = lo + (hi - lo) * k as f64 / 100.0;
                let slope = (eta_at(s + h) - eta_at(s - h)) / (2.0 * h);
                let gap = s - eta_at(s);
                if gap.abs() > 1e-4 {
                    assert!(slope * gap > 0.0, "slope sign violated at {s}");
                }
                if prev_gap < 0.0 && gap >= 0.0 {
                    crossings += 1;
                    assert!(s > lo && s < prior, "fixed point {s} outside (lo, prior)");
                }
                prev_gap = gap;
            }
            assert_eq!(crossings, 1);
            // Weakly decreasing in p, strictly for interior cuts.
            let mid = 0.5 * (lo + hi);
            for s in [lo, mid, hi] {
                let low_p = nondisclosure_belief(m, Cut::at(s), 0.4, prior);
                let high_p = nondisclosure_belief(m, Cut::at(s), 0.9, prior);
                assert!(high_p <= low_p + 1e-12);
                if s > lo && s < hi {
                    assert!(high_p < low_p - 1e-9);
                }
            }
        }
    }

    #[test]
    fn transform_examples() {
        // Equal interim beliefs: identity.
        for (b, m) in [(0.3, 0.2), (0.5, 0.5), (0.9, 0.7)] {
            assert_abs_diff_eq!(transform_posterior(b, m, m).unwrap(), b, epsilon = 1e-14);
        }
        // Likelihood-ratio hand computation.
        assert_abs_diff_eq!(transform_posterior(0.5, 0.25, 0.75).unwrap(), 0.1, epsilon = 1e-14);
        // Certainty is a fixed point.
        assert_abs_diff_eq!(transform_posterior(1.0, 0.3, 0.6).unwrap(), 1.0);
        assert!(transform_posterior(0.5, 0.3, 0.0).is_err());
    }

    #[test]
    fn transform_monotone_in_each_argument() {
        let mut prev = 0.0;
        for k in 1..20 {
            let b = k as f64 / 20.0;
            let t = transform_posterior(b, 0.3, 0.6).unwrap();
            assert!(t > prev);
            prev = t;
        }
        let mut prev = 0.0;
        for k in 1..20 {
            let mu = k as f64 / 20.0;
            let t = transform_posterior(0.4, mu, 0.6).unwrap();
            assert!(t > prev);
            prev = t;
        }
    }

    #[test]
    fn message_distribution_mass_sums_to_one() {
        let m = uniform();
        for (cut, bias, p) in [
            (Cut::at(0.3), Bias::Up, 0.8),
            (Cut::at(0.7), Bias::Down, 0.5),
            (Cut::at(0.0), Bias::Up, 1.0),
        ] {
            let d = message_distribution(&m, SenderSpec { informed_prob: p, bias }, cut, 0.4).unwrap();
            assert_abs_diff_eq!(d.nondisclosure_mass + d.disclosure_mass(), 1.0, epsilon = 1e-10);
        }
        // Never discloses at the top cut.
        let d = message_distribution(&m, SenderSpec::up(0.8), Cut::at(1.0), 0.5).unwrap();
        assert_abs_diff_eq!(d.nondisclosure_mass, 1.0, epsilon = 1e-12);
        // Always discloses when surely informed at the bottom cut.
        let d = message_distribution(&m, SenderSpec::up(1.0), Cut::at(0.0), 0.5).unwrap();
        assert_abs_diff_eq!(d.nondisclosure_mass, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn message_distribution_four_point_extreme_vantage() {
        // Downward sender disclosing only the lowest signal, seen from
        // vantage 1: the lowest signal has zero mass in the high state.
        let m = four_point();
        let d = message_distribution(&m, SenderSpec::down(0.8), Cut::with_weight(0.0, 1.0), 1.0)
            .unwrap();
        assert_abs_diff_eq!(d.disclosure_mass(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.nondisclosure_mass, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn concealment_payoff_routes_agree() {
        let m = uniform();
        for (s, xi, yj, c_bias) in [
            (0.4, 0.4, 0.4, Bias::Up),
            (0.2, 0.35, 0.6, Bias::Up),
            (0.7, 0.5, 0.3, Bias::Down),
            (0.55, 0.3, 0.8, Bias::Down),
        ] {
            let u = concealment_payoff(
                &m,
                s,
                Cut::at(xi),
                0.8,
                Cut::at(yj),
                SenderSpec { informed_prob: 0.7, bias: c_bias },
                0.5,
            )
            .unwrap();
            assert!(u.spread() < 2e-8, "spread {} at s={s}", u.spread());
        }
    }

    #[test]
    fn concealment_payoff_boundary_cases() {
        let m = uniform();
        // Opponent at the top cut never discloses: U equals eta itself.
        let u = concealment_payoff(&m, 0.4, Cut::at(0.4), 0.8, Cut::at(1.0), SenderSpec::up(0.7), 0.5)
            .unwrap();
        let eta = nondisclosure_belief(&m, Cut::at(0.4), 0.8, 0.5);
        assert_abs_diff_eq!(u.value(), eta, epsilon = 1e-10);
        // At the fixed point of eta, U equals the signal itself.
        let fp = uniform_fixed_point(0.8);
        let u = concealment_payoff(&m, fp, Cut::at(fp), 0.8, Cut::at(0.5), SenderSpec::up(0.7), 0.5)
            .unwrap();
        assert_abs_diff_eq!(u.value(), fp, epsilon = 1e-9);
    }

    #[test]
    fn vantage_mean_of_disclosure_is_martingale() {
        // If i discloses, his expectation of the DM's posterior (over m_j)
        // equals his own signal.
        let m = uniform();
        let s_i = 0.45;
        let kernel_j = MessageKernel::new(&m, Cut::at(0.3), SenderSpec::up(0.7));
        let (j1, j0) = kernel_j.nd_probs();
        let phi_term = kernel_j.nd_mass(s_i) * posterior_from_lr(s_i, j1, j0);
        let branch = kernel_j.expect_disclosure_precise(s_i, |t| transform_unchecked(t, s_i, 0.5), 1e-11);
        assert_abs_diff_eq!(phi_term + branch, s_i, epsilon = 1e-9);
    }
}
