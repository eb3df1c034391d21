//! The DM's induced distribution over posteriors, welfare evaluation,
//! equilibrium verification by deviation scan, and the golden table of the
//! four-signal welfare examples.

use std::sync::Arc;

use crate::belief::{Bias, Cut, MessageKernel, SenderSpec};
use crate::error::{ModelError, SolveError};
use crate::multi::sequential::ThresholdPolicy;
use crate::multi::{deviation_violation, TwoSenderGame};
use crate::num::quad::{self, CompositeRule};
use crate::num::roots;
use crate::signal::{SignalModel, State};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type RealFn2 = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type TailFn = Arc<dyn Fn(&dyn Fn(f64) -> f64) -> f64 + Send + Sync>;

/// One continuous component: a disclosed-signal region whose message
/// density is f(t) weight(t) with the model's belief density f and a smooth
/// weight, together with the DM posterior the event induces. Expectations
/// substitute t = Q(q) so integrable density singularities never meet the
/// quadrature.
#[derive(Clone)]
pub struct PosteriorBranch {
    pub region: (f64, f64),
    model: crate::signal::ContinuousSignalModel,
    weight: RealFn,
    posterior: RealFn,
}

impl PosteriorBranch {
    /// Message density at a disclosed signal value.
    pub fn density_at(&self, t: f64) -> f64 {
        (self.weight)(t) * self.model.density_at(t)
    }
}

/// Joint disclosure branch of a two-sender game, integrated lazily on a
/// tensorized 256 x 256 rule laid out in CDF space, so integrable density
/// singularities are absorbed into the measure. The joint message density is
/// f(t) f(u) weight(t, u) with a smooth weight.
#[derive(Clone)]
pub struct JointBranch {
    model: crate::signal::ContinuousSignalModel,
    x_region: (f64, f64),
    y_region: (f64, f64),
    weight: RealFn2,
    posterior: RealFn2,
}

/// The DM's induced distribution over posteriors: atoms, one-dimensional
/// density branches, an optional joint branch, and an optional recursive
/// tail used by game forms whose event space is higher-dimensional.
#[derive(Clone, Default)]
pub struct PosteriorDistribution {
    pub prior: f64,
    pub atoms: Vec<(f64, f64)>,
    pub branches: Vec<PosteriorBranch>,
    pub joint: Option<JointBranch>,
    tail: Option<TailFn>,
}

impl PosteriorDistribution {
    /// E[g(posterior)] over all components.
    pub fn expect(&self, g: &dyn Fn(f64) -> f64) -> f64 {
        let mut acc = 0.0;
        for &(mu, mass) in &self.atoms {
            acc += mass * g(mu);
        }
        for b in &self.branches {
            let (lo, hi) = b.region;
            if hi > lo {
                let m = &b.model;
                let weight = &b.weight;
                let posterior = &b.posterior;
                let (qa, qb) = (m.cdf_prior(lo), m.cdf_prior(hi));
                acc += quad::integrate(
                    &|q| {
                        let t = m.quantile_prior(q);
                        weight(t) * g(posterior(t))
                    },
                    qa,
                    qb,
                    1e-12,
                );
            }
        }
        if let Some(j) = &self.joint {
            acc += tensor_expect(j, g);
        }
        if let Some(t) = &self.tail {
            acc += t(&g);
        }
        acc
    }

    pub fn total_mass(&self) -> f64 {
        self.expect(&|_| 1.0)
    }

    pub fn mean(&self) -> f64 {
        self.expect(&|mu| mu)
    }

    /// Mass and martingale invariants, checked on construction.
    fn validate(self) -> Result<Self, ModelError> {
        let mass = self.total_mass();
        if (mass - 1.0).abs() > 1e-9 {
            return Err(ModelError::Invariant(format!("posterior masses sum to {mass}")));
        }
        let mean = self.mean();
        if (mean - self.prior).abs() > 1e-8 {
            return Err(ModelError::Invariant(format!(
                "posterior mean {mean} differs from prior {}",
                self.prior
            )));
        }
        Ok(self)
    }
}

fn tensor_expect(j: &JointBranch, g: &dyn Fn(f64) -> f64) -> f64 {
    if j.x_region.1 <= j.x_region.0 || j.y_region.1 <= j.y_region.0 {
        return 0.0;
    }
    let m = &j.model;
    let axis = |region: (f64, f64)| -> (Vec<f64>, Vec<f64>) {
        let rule = CompositeRule::new(m.cdf_prior(region.0), m.cdf_prior(region.1), 32);
        let signals = rule.nodes.iter().map(|&q| m.quantile_prior(q)).collect();
        (signals, rule.weights.clone())
    };
    let (ts, wts) = axis(j.x_region);
    let (us, wus) = axis(j.y_region);
    let mut acc = 0.0;
    for (t, &wt) in ts.iter().zip(&wts) {
        let mut inner = 0.0;
        for (u, &wu) in us.iter().zip(&wus) {
            inner += wu * (j.weight)(*t, *u) * g((j.posterior)(*t, *u));
        }
        acc += wt * inner;
    }
    acc
}

/// -E[mu (1 - mu)]: the DM's expected payoff under quadratic loss.
pub fn dm_welfare_quadratic(dist: &PosteriorDistribution) -> f64 {
    -dist.expect(&|mu| mu * (1.0 - mu))
}

/// A decision problem for welfare evaluation beyond quadratic loss.
pub enum ActionProblem {
    QuadraticLoss,
    /// Closed-form value of holding posterior mu.
    ClosedForm(RealFn),
    /// Action grid with utility u(a, omega); the maximum is taken on a
    /// 1024-point grid between the bounds (a documented approximation).
    Grid { action_lo: f64, action_hi: f64, utility: Arc<dyn Fn(f64, u8) -> f64 + Send + Sync> },
}

/// E over posteriors of the DM's optimal action value.
pub fn dm_welfare_general(dist: &PosteriorDistribution, problem: &ActionProblem) -> f64 {
    match problem {
        ActionProblem::QuadraticLoss => dm_welfare_quadratic(dist),
        ActionProblem::ClosedForm(v) => dist.expect(&|mu| v(mu)),
        ActionProblem::Grid { action_lo, action_hi, utility } => {
            let actions = roots::grid(*action_lo, *action_hi, 1024);
            dist.expect(&|mu| {
                actions
                    .iter()
                    .map(|&a| mu * utility(a, 1) + (1.0 - mu) * utility(a, 0))
                    .fold(f64::NEG_INFINITY, f64::max)
            })
        }
    }
}

/// Distribution induced by a single sender playing `cut`.
pub fn single_posterior_distribution(
    model: &SignalModel,
    sender: SenderSpec,
    cut: Cut,
) -> Result<PosteriorDistribution, ModelError> {
    let prior = model.prior();
    let kernel = MessageKernel::new(model, cut, sender);
    let (n1, n0) = kernel.nd_probs();
    let nd_mass = kernel.nd_mass(prior);
    let mut atoms = vec![(crate::belief::posterior_from_lr(prior, n1, n0), nd_mass)];
    let mut branches = Vec::new();
    match model {
        SignalModel::Discrete(_) => {
            for (value, mass) in kernel.disclosed_atoms(prior) {
                atoms.push((value, mass));
            }
        }
        SignalModel::Continuous(m) => {
            let (lo, hi) = m.support();
            let region = match sender.bias {
                Bias::Up => (cut.threshold.clamp(lo, hi), hi),
                Bias::Down => (lo, cut.threshold.clamp(lo, hi)),
            };
            let p = sender.informed_prob;
            branches.push(PosteriorBranch {
                region,
                model: m.clone(),
                weight: Arc::new(move |_| p),
                posterior: Arc::new(|t| t),
            });
        }
    }
    PosteriorDistribution { prior, atoms, branches, joint: None, tail: None }.validate()
}

/// Distribution induced by two senders with conditionally independent
/// signals playing game-frame cuts.
pub fn two_sender_posterior_distribution(
    model: &SignalModel,
    senders: [SenderSpec; 2],
    cuts: [Cut; 2],
) -> Result<PosteriorDistribution, ModelError> {
    let prior = model.prior();
    let kernels =
        [MessageKernel::new(model, cuts[0], senders[0]), MessageKernel::new(model, cuts[1], senders[1])];
    let nd: Vec<(f64, f64)> = kernels.iter().map(|k| k.nd_probs()).collect();

    let mut atoms = Vec::new();
    let mut branches = Vec::new();
    let mut joint = None;

    // Joint nondisclosure.
    let (a, b) = (nd[0].0 * nd[1].0, nd[0].1 * nd[1].1);
    atoms.push((
        crate::belief::posterior_from_lr(prior, a, b),
        prior * a + (1.0 - prior) * b,
    ));

    match model {
        SignalModel::Discrete(_) => {
            // One sender disclosing, then both.
            for idx in 0..2 {
                let other = &nd[1 - idx];
                for (_, m1, m0) in kernels[idx].disclosed_atom_conditionals() {
                    let (l1, l0) = (m1 * other.0, m0 * other.1);
                    atoms.push((
                        crate::belief::posterior_from_lr(prior, l1, l0),
                        prior * l1 + (1.0 - prior) * l0,
                    ));
                }
            }
            let first: Vec<(f64, f64, f64)> = kernels[0].disclosed_atom_conditionals();
            for (_, m1a, m0a) in first {
                for (_, m1b, m0b) in kernels[1].disclosed_atom_conditionals() {
                    let (l1, l0) = (m1a * m1b, m0a * m0b);
                    atoms.push((
                        crate::belief::posterior_from_lr(prior, l1, l0),
                        prior * l1 + (1.0 - prior) * l0,
                    ));
                }
            }
        }
        SignalModel::Continuous(m) => {
            let (lo, hi) = m.support();
            let region = |idx: usize| match senders[idx].bias {
                Bias::Up => (cuts[idx].threshold.clamp(lo, hi), hi),
                Bias::Down => (lo, cuts[idx].threshold.clamp(lo, hi)),
            };
            for idx in 0..2 {
                let (n1_o, n0_o) = nd[1 - idx];
                let p = senders[idx].informed_prob;
                branches.push(PosteriorBranch {
                    region: region(idx),
                    model: m.clone(),
                    weight: Arc::new(move |t| p * (t * n1_o + (1.0 - t) * n0_o)),
                    posterior: Arc::new(move |t| crate::belief::posterior_from_lr(t, n1_o, n0_o)),
                });
            }
            let (p0, p1) = (senders[0].informed_prob, senders[1].informed_prob);
            let prior_c = m.prior();
            joint = Some(JointBranch {
                model: m.clone(),
                x_region: region(0),
                y_region: region(1),
                // pi f(t|1) f(u|1) + (1-pi) f(t|0) f(u|0), with the belief
                // densities f(t) f(u) factored into the measure.
                weight: Arc::new(move |t, u| {
                    p0 * p1 * (t * u / prior_c + (1.0 - t) * (1.0 - u) / (1.0 - prior_c))
                }),
                posterior: Arc::new(move |t, u| {
                    crate::belief::transform_unchecked(u, t, prior_c)
                }),
            });
        }
    }
    PosteriorDistribution { prior, atoms, branches, joint, tail: None }.validate()
}

/// Distribution for K + 2 conditionally independent senders, evaluated
/// through a recursive tail expectation.
pub fn many_sender_posterior_distribution(
    model: &SignalModel,
    senders: Vec<SenderSpec>,
    cuts: Vec<Cut>,
) -> Result<PosteriorDistribution, ModelError> {
    assert_eq!(senders.len(), cuts.len());
    let prior = model.prior();
    let kernels: Vec<MessageKernel> = senders
        .iter()
        .zip(&cuts)
        .map(|(s, c)| MessageKernel::new(model, *c, *s))
        .collect();
    // Tabulated branches per sender: nondisclosure likelihoods plus
    // (label, m1, m0) rows on a composite rule.
    let mut tables: Vec<SenderTable> = Vec::new();
    for (k, kernel) in kernels.iter().enumerate() {
        let (n1, n0) = kernel.nd_probs();
        let mut rows = kernel.disclosed_atom_conditionals();
        if let SignalModel::Continuous(m) = model {
            let (lo, hi) = m.support();
            let region = match senders[k].bias {
                Bias::Up => (cuts[k].threshold.clamp(lo, hi), hi),
                Bias::Down => (lo, cuts[k].threshold.clamp(lo, hi)),
            };
            if region.1 > region.0 {
                // Nodes in CDF space absorb the density into the measure.
                let rule =
                    CompositeRule::new(m.cdf_prior(region.0), m.cdf_prior(region.1), 24);
                let p = senders[k].informed_prob;
                let prior_m = m.prior();
                for (&q, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let t = m.quantile_prior(q);
                    rows.push((
                        t,
                        p * w * t / prior_m,
                        p * w * (1.0 - t) / (1.0 - prior_m),
                    ));
                }
            }
        }
        tables.push((n1, n0, rows));
    }
    let tail: TailFn = Arc::new(move |g: &dyn Fn(f64) -> f64| {
        fn recurse(
            tables: &[SenderTable],
            k: usize,
            l1: f64,
            l0: f64,
            prior: f64,
            g: &dyn Fn(f64) -> f64,
        ) -> f64 {
            if k == tables.len() {
                let mass = prior * l1 + (1.0 - prior) * l0;
                return mass * g(crate::belief::posterior_from_lr(prior, l1, l0));
            }
            let (n1, n0, rows) = &tables[k];
            let mut acc = recurse(tables, k + 1, l1 * n1, l0 * n0, prior, g);
            for &(_, m1, m0) in rows {
                acc += recurse(tables, k + 1, l1 * m1, l0 * m0, prior, g);
            }
            acc
        }
        recurse(&tables, 0, 1.0, 1.0, prior, g)
    });
    PosteriorDistribution { prior, atoms: Vec::new(), branches: Vec::new(), joint: None, tail: Some(tail) }
        .validate()
}

/// Distribution of the sequential game: the second sender's threshold
/// follows the tabulated policy after each first-sender message.
pub fn sequential_posterior_distribution(
    model: &SignalModel,
    first: SenderSpec,
    second: SenderSpec,
    first_cut: Cut,
    policy: &ThresholdPolicy,
) -> Result<PosteriorDistribution, ModelError> {
    let m = model
        .as_continuous()
        .ok_or_else(|| ModelError::Invariant("sequential welfare needs a continuous model".into()))?
        .clone();
    let prior = m.prior();
    let (lo, hi) = m.support();
    let k1 = MessageKernel::new(model, first_cut, first);
    let (f1, f0) = k1.nd_probs();

    // Nondisclosure branch of the first sender: the second sender plays the
    // after-nondisclosure cut (the policy is tabulated in game-frame
    // coordinates).
    let cut2_nd = Cut::at(policy.after_nondisclosure);
    let k2_nd = MessageKernel::new(model, cut2_nd, second);
    let (s1, s0) = k2_nd.nd_probs();
    let atoms = vec![(
        crate::belief::posterior_from_lr(prior, f1 * s1, f0 * s0),
        prior * f1 * s1 + (1.0 - prior) * f0 * s0,
    )];
    let mut branches = Vec::new();
    // (phi, disclose u).
    {
        let p2 = second.informed_prob;
        let region = match second.bias {
            Bias::Up => (cut2_nd.threshold.clamp(lo, hi), hi),
            Bias::Down => (lo, cut2_nd.threshold.clamp(lo, hi)),
        };
        branches.push(PosteriorBranch {
            region,
            model: m.clone(),
            weight: Arc::new(move |u| p2 * (u * f1 + (1.0 - u) * f0)),
            posterior: Arc::new(move |u| crate::belief::posterior_from_lr(u, f1, f0)),
        });
    }
    // (disclose t, phi) and (disclose t, disclose u): the second-sender cut
    // varies with t, so both live in a tail expectation.
    let model_c = m.clone();
    let pol = policy.clone();
    let p1 = first.informed_prob;
    let p2 = second.informed_prob;
    let first_region = match first.bias {
        Bias::Up => (first_cut.threshold.clamp(lo, hi), hi),
        Bias::Down => (lo, first_cut.threshold.clamp(lo, hi)),
    };
    let second_bias = second.bias;
    let tail: TailFn = Arc::new(move |g: &dyn Fn(f64) -> f64| {
        if first_region.1 <= first_region.0 {
            return 0.0;
        }
        let m = &model_c;
        let (lo, hi) = m.support();
        let outer = |t: f64| -> f64 {
            let c2 = pol.threshold_after(t).clamp(lo, hi);
            let (r_lo, r_hi) = match second_bias {
                Bias::Up => (c2, hi),
                Bias::Down => (lo, c2),
            };
            // State-conditional nondisclosure for the second sender at cut2.
            let (d1, d0) = (m.cond_cdf(c2, State::High), m.cond_cdf(c2, State::Low));
            let (n1, n0) = match second_bias {
                Bias::Up => (1.0 - p2 + p2 * d1, 1.0 - p2 + p2 * d0),
                Bias::Down => (1.0 - p2 + p2 * (1.0 - d1), 1.0 - p2 + p2 * (1.0 - d0)),
            };
            let (t1, t0) = (p1 * m.cond_density(t, State::High), p1 * m.cond_density(t, State::Low));
            let prior = m.prior();
            // (t, phi)
            let mut acc = (prior * t1 * n1 + (1.0 - prior) * t0 * n0)
                * g(crate::belief::posterior_from_lr(
                    crate::belief::posterior_from_lr(prior, t1, t0),
                    n1,
                    n0,
                ));
            // (t, u)
            if r_hi > r_lo {
                acc += quad::integrate(
                    &|u: f64| {
                        let (u1, u0) =
                            (p2 * m.cond_density(u, State::High), p2 * m.cond_density(u, State::Low));
                        (prior * t1 * u1 + (1.0 - prior) * t0 * u0)
                            * g(crate::belief::posterior_from_lr(prior, t1 * u1, t0 * u0))
                    },
                    r_lo,
                    r_hi,
                    1e-11,
                );
            }
            acc
        };
        quad::integrate(&outer, first_region.0, first_region.1, 1e-9)
    });
    PosteriorDistribution { prior, atoms, branches, joint: None, tail: Some(tail) }.validate()
}

/// Distribution with one perfectly shared signal: disclosure by anyone
/// reveals it, so the branch posterior is the signal itself.
pub fn correlated_posterior_distribution(
    model: &SignalModel,
    senders: [SenderSpec; 2],
    cuts: [Cut; 2],
) -> Result<PosteriorDistribution, ModelError> {
    let m = model
        .as_continuous()
        .ok_or_else(|| ModelError::Invariant("correlated welfare needs a continuous model".into()))?
        .clone();
    let prior = m.prior();
    let (lo, hi) = m.support();
    // Disclosure probability given the signal value, piecewise constant.
    let discloses = move |idx: usize, t: f64| -> bool {
        match senders[idx].bias {
            Bias::Up => t >= cuts[idx].threshold,
            Bias::Down => t <= cuts[idx].threshold,
        }
    };
    let reveal_prob = move |t: f64| -> f64 {
        let q1 = if discloses(0, t) { senders[0].informed_prob } else { 0.0 };
        let q2 = if discloses(1, t) { senders[1].informed_prob } else { 0.0 };
        1.0 - (1.0 - q1) * (1.0 - q2)
    };
    // The reveal probability is piecewise constant, so the nondisclosure
    // masses are exact sums of conditional CDF differences.
    let (n1, n0) = piecewise_keep_mass(&m, &[cuts[0].threshold, cuts[1].threshold], &|t| {
        1.0 - reveal_prob(t)
    });
    let atoms = vec![(
        crate::belief::posterior_from_lr(prior, n1, n0),
        prior * n1 + (1.0 - prior) * n0,
    )];
    let branches = vec![PosteriorBranch {
        region: (lo, hi),
        model: m.clone(),
        weight: Arc::new(reveal_prob),
        posterior: Arc::new(|t| t),
    }];
    PosteriorDistribution { prior, atoms, branches, joint: None, tail: None }.validate()
}

/// Distribution for the uncertain-bias single-sender game.
pub fn uncertain_bias_posterior_distribution(
    model: &SignalModel,
    p: f64,
    lambda: f64,
    up_threshold: f64,
    down_threshold: f64,
) -> Result<PosteriorDistribution, ModelError> {
    let m = model
        .as_continuous()
        .ok_or_else(|| ModelError::Invariant("uncertain-bias welfare needs a continuous model".into()))?
        .clone();
    let prior = m.prior();
    let (lo, hi) = m.support();
    let disclose_prob = move |t: f64| -> f64 {
        let up = if t >= up_threshold { lambda } else { 0.0 };
        let down = if t <= down_threshold { 1.0 - lambda } else { 0.0 };
        p * (up + down)
    };
    let (n1, n0) = piecewise_keep_mass(&m, &[up_threshold, down_threshold], &|t| {
        1.0 - disclose_prob(t)
    });
    let atoms = vec![(
        crate::belief::posterior_from_lr(prior, n1, n0),
        prior * n1 + (1.0 - prior) * n0,
    )];
    let branches = vec![PosteriorBranch {
        region: (lo, hi),
        model: m.clone(),
        weight: Arc::new(disclose_prob),
        posterior: Arc::new(|t| t),
    }];
    PosteriorDistribution { prior, atoms, branches, joint: None, tail: None }.validate()
}

/// Per-sender message table of the many-sender recursion.
type SenderTable = (f64, f64, Vec<(f64, f64, f64)>);

/// State-conditional expectation of a piecewise-constant retention
/// probability, taken exactly as CDF differences between the breakpoints.
fn piecewise_keep_mass(
    m: &crate::signal::ContinuousSignalModel,
    breaks: &[f64],
    keep: &dyn Fn(f64) -> f64,
) -> (f64, f64) {
    let (lo, hi) = m.support();
    let mut edges: Vec<f64> = vec![lo];
    let mut sorted: Vec<f64> = breaks.iter().copied().filter(|&b| b > lo && b < hi).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    edges.extend(sorted);
    edges.push(hi);
    let (mut n1, mut n0) = (0.0, 0.0);
    for w in edges.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        let k = keep(mid);
        n1 += k * (m.cond_cdf(w[1], State::High) - m.cond_cdf(w[0], State::High));
        n0 += k * (m.cond_cdf(w[1], State::Low) - m.cond_cdf(w[0], State::Low));
    }
    (n1, n0)
}

/// Per-sender deviation diagnostics at a conjectured profile.
#[derive(Debug, Clone)]
pub struct DeviationReport {
    pub per_sender: Vec<SenderDeviation>,
}

#[derive(Debug, Clone)]
pub struct SenderDeviation {
    pub max_violation: f64,
    pub worst_signal: f64,
}

impl DeviationReport {
    pub fn max_violation(&self) -> f64 {
        self.per_sender.iter().map(|s| s.max_violation).fold(0.0, f64::max)
    }

    pub fn is_equilibrium(&self, tol: f64) -> bool {
        self.max_violation() <= tol
    }
}

/// Scans the disclose-minus-conceal payoff gap over a signal grid for each
/// sender, holding the DM conjecture at the profile. A profile is an
/// equilibrium iff no violation exceeds 1e-7.
pub fn verify_two_sender(
    game: &TwoSenderGame,
    cuts: [Cut; 2],
    grid_size: usize,
) -> Result<DeviationReport, SolveError> {
    let mut per_sender = Vec::with_capacity(2);
    for idx in 0..2 {
        let solver = game.br_solver(idx);
        let frame = game.frame_model(idx);
        let cut_i = game.to_game_frame(idx, cuts[idx]); // to oriented frame
        let opp_oriented = game.to_game_frame(1 - idx, cuts[1 - idx]);
        let prep = solver.prepare(opponent_cut(game, idx, opp_oriented));
        let signals: Vec<f64> = match frame {
            SignalModel::Discrete(m) => m.atoms().iter().map(|a| a.value).collect(),
            SignalModel::Continuous(_) => {
                let (lo, hi) = frame.support();
                roots::grid(lo, hi, grid_size.max(3))
            }
        };
        let mut worst = SenderDeviation { max_violation: 0.0, worst_signal: signals[0] };
        for &s in &signals {
            let gap = (s - game.cost) - solver.u_at(s, cut_i, &prep);
            let v = deviation_violation(gap, s, cut_i);
            if v > worst.max_violation {
                worst = SenderDeviation { max_violation: v, worst_signal: s };
            }
        }
        per_sender.push(worst);
    }
    Ok(DeviationReport { per_sender })
}

fn opponent_cut(game: &TwoSenderGame, idx: usize, opp_oriented: Cut) -> Cut {
    if game.senders[idx].bias == game.senders[1 - idx].bias {
        opp_oriented
    } else {
        opp_oriented.mirror()
    }
}

/// Single-sender deviation scan against the nondisclosure belief.
pub fn verify_single(
    model: &SignalModel,
    sender: SenderSpec,
    cost: f64,
    cut: Cut,
    grid_size: usize,
) -> Result<DeviationReport, SolveError> {
    let (frame, cut_f) = match sender.bias {
        Bias::Up => (model.clone(), cut),
        Bias::Down => (model.mirror(), cut.mirror()),
    };
    let eta = crate::belief::nondisclosure_belief(&frame, cut_f, sender.informed_prob, frame.prior());
    let signals: Vec<f64> = match &frame {
        SignalModel::Discrete(m) => m.atoms().iter().map(|a| a.value).collect(),
        SignalModel::Continuous(_) => {
            let (lo, hi) = frame.support();
            roots::grid(lo, hi, grid_size.max(3))
        }
    };
    let mut worst = SenderDeviation { max_violation: 0.0, worst_signal: signals[0] };
    for &s in &signals {
        let gap = (s - cost) - eta;
        let v = deviation_violation(gap, s, cut_f);
        if v > worst.max_violation {
            worst = SenderDeviation { max_violation: v, worst_signal: s };
        }
    }
    Ok(DeviationReport { per_sender: vec![worst] })
}

/// One line of the golden-example report.
#[derive(Debug, Clone)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub kind: CheckKind,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    /// |value - target| <= tolerance.
    Matches,
    /// value > target (strictly), tolerance unused.
    Exceeds,
    /// value < target (strictly).
    Below,
}

#[derive(Debug, Clone)]
pub struct GoldenReport {
    pub checks: Vec<GoldenCheck>,
}

impl GoldenReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

const GOLDEN_TOL: f64 = 5e-5;

/// Reproduces the worked four-signal welfare examples end to end through the
/// solver machinery: the single-sender benchmark, the opposing-bias game at
/// disclosure cost 0.36, and the same game at cost 0.38.
pub fn worked_examples_report() -> Result<GoldenReport, SolveError> {
    let model: SignalModel =
        crate::signal::DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap().into();
    let mut checks = Vec::new();
    fn matches_target(checks: &mut Vec<GoldenCheck>, name: &'static str, value: f64, target: f64) {
        checks.push(GoldenCheck {
            name,
            value,
            target,
            tolerance: GOLDEN_TOL,
            kind: CheckKind::Matches,
            pass: (value - target).abs() <= GOLDEN_TOL,
        });
    }

    // Single-sender benchmark at c = 0.36: the DM-best equilibrium reveals
    // the two favorable signals.
    let single = crate::single::solve_single(&model, SenderSpec::up(0.8), 0.36)?;
    let best = &single[0];
    matches_target(&mut checks, "single_best_nd_belief", best.nondisclosure_belief, 0.3067);
    matches_target(&mut checks, "single_best_dm_welfare", best.dm_welfare, -0.1864);

    // Opposing-bias two-sender game at c = 0.36.
    let game =
        TwoSenderGame::new(model.clone(), [SenderSpec::up(0.8), SenderSpec::down(0.8)], 0.36)?;
    let solver0 = game.br_solver(0);

    // Concealment payoff of the top signal when the DM expects sender 0 to
    // conceal everything and the opponent reveals his two favorable signals.
    let conceal_all = Cut::with_weight(1.0, 0.0);
    let opp_low_two = Cut::with_weight(0.3, 1.0); // down-sender disclosing {0, 0.3}
    let prep = solver0.prepare(opp_low_two);
    let u_top = solver0.u_at(1.0, conceal_all, &prep);
    matches_target(&mut checks, "conceal_top_signal_payoff", u_top, 0.6273);
    checks.push(GoldenCheck {
        name: "top_signal_prefers_disclosure",
        value: u_top,
        target: 1.0 - 0.36,
        tolerance: 0.0,
        kind: CheckKind::Below,
        pass: u_top < 1.0 - 0.36,
    });

    // Concealment payoff of the high signal when the DM expects sender 0 to
    // reveal both favorable signals and the opponent reveals only his most
    // favorable one (his least revealing admissible strategy).
    let reveal_two = Cut::with_weight(0.7, 1.0);
    let opp_lowest_only = Cut::with_weight(0.0, 1.0);
    let prep = solver0.prepare(opp_lowest_only);
    let u_high = solver0.u_at(0.7, reveal_two, &prep);
    matches_target(&mut checks, "conceal_high_signal_payoff", u_high, 0.3414);
    checks.push(GoldenCheck {
        name: "high_signal_prefers_concealment",
        value: u_high,
        target: 0.7 - 0.36,
        tolerance: 0.0,
        kind: CheckKind::Exceeds,
        pass: u_high > 0.7 - 0.36,
    });

    // At the equilibrium profile (each reveals only his most favorable
    // signal), the high signal still prefers concealment.
    let eq_own = Cut::with_weight(1.0, 1.0);
    let eq_opp = Cut::with_weight(0.0, 1.0);
    let prep = solver0.prepare(eq_opp);
    let u_eq = solver0.u_at(0.7, eq_own, &prep);
    matches_target(&mut checks, "equilibrium_conceal_high_payoff", u_eq, 0.464);
    checks.push(GoldenCheck {
        name: "equilibrium_high_prefers_concealment",
        value: u_eq,
        target: 0.7 - 0.36,
        tolerance: 0.0,
        kind: CheckKind::Exceeds,
        pass: u_eq > 0.7 - 0.36,
    });

    // Equilibrium welfare of the unique profile.
    let dist = two_sender_posterior_distribution(
        &model,
        [SenderSpec::up(0.8), SenderSpec::down(0.8)],
        [Cut::with_weight(1.0, 1.0), Cut::with_weight(0.0, 1.0)],
    )?;
    matches_target(&mut checks, "two_sender_dm_welfare", dm_welfare_quadratic(&dist), -0.19);

    // Raising the cost to 0.38 supports one-sided revelation: sender 1's
    // payoff from concealing his most favorable signal, evaluated in his
    // own frame, beats disclosing it.
    let game38 =
        TwoSenderGame::new(model.clone(), [SenderSpec::up(0.8), SenderSpec::down(0.8)], 0.38)?;
    let solver1 = game38.br_solver(1);
    // Opponent (sender 0, upward, revealing {0.7, 1}) seen from sender 1's
    // mirrored frame; sender 1 conceals everything.
    let prep = solver1.prepare(Cut::with_weight(0.3, 1.0));
    let u_opp = solver1.u_at(1.0, Cut::with_weight(1.0, 0.0), &prep);
    matches_target(&mut checks, "higher_cost_conceal_favorable_payoff", u_opp, 0.6273);
    checks.push(GoldenCheck {
        name: "higher_cost_prefers_concealment",
        value: u_opp,
        target: 1.0 - 0.38,
        tolerance: 0.0,
        kind: CheckKind::Exceeds,
        pass: u_opp > 1.0 - 0.38,
    });
    let eta = crate::belief::nondisclosure_belief(&model, reveal_two, 0.8, 0.5);
    matches_target(&mut checks, "higher_cost_nd_belief", eta, 0.3067);
    checks.push(GoldenCheck {
        name: "higher_cost_high_signal_disclosed",
        value: eta,
        target: 0.7 - 0.38,
        tolerance: 0.0,
        kind: CheckKind::Below,
        pass: eta < 0.7 - 0.38,
    });
    let dist38 = two_sender_posterior_distribution(
        &model,
        [SenderSpec::up(0.8), SenderSpec::down(0.8)],
        [Cut::with_weight(0.7, 1.0), Cut::with_weight(0.0, 0.0)],
    )?;
    matches_target(&mut checks, "higher_cost_dm_welfare", dm_welfare_quadratic(&dist38), -0.1864);

    Ok(GoldenReport { checks })
}
