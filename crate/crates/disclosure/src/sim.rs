//! Seeded Monte Carlo oracle: draws states, informedness, and signals,
//! applies the threshold strategies, composes the DM's posterior from the
//! same likelihood-ratio updates as the analytic side, and reports empirical
//! moments with standard errors.
//!
//! Draws run in a fixed number of independent sub-streams derived from the
//! master seed; the reduction order is fixed, so a report is bit-stable for
//! a given seed regardless of host parallelism.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::belief::{Bias, Cut, SenderSpec};
use crate::error::ModelError;
use crate::multi::sequential::ThresholdPolicy;
use crate::num::{rng_stream, roots, SeededRng};
use crate::signal::{SignalModel, State};

/// Number of deterministic sub-streams per report.
const STREAMS: u64 = 16;

/// A game form paired with the strategy profile to simulate.
pub enum SimulatedPlay<'a> {
    Single { sender: SenderSpec, cut: Cut },
    Two { senders: [SenderSpec; 2], cuts: [Cut; 2] },
    Many { senders: &'a [SenderSpec], cuts: &'a [Cut] },
    Sequential { first: SenderSpec, second: SenderSpec, first_cut: Cut, policy: &'a ThresholdPolicy },
    Correlated { senders: [SenderSpec; 2], cuts: [Cut; 2] },
    UncertainBias { p: f64, lambda: f64, up_threshold: f64, down_threshold: f64 },
}

/// Empirical moments of one simulation run.
#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub n_draws: u64,
    pub seed: u64,
    pub mean_posterior: f64,
    pub se_mean_posterior: f64,
    /// Empirical E[mu (1 - mu)]; the DM's quadratic welfare is its negative.
    pub mean_dispersion: f64,
    pub se_dispersion: f64,
    /// Per-sender empirical payoff (bias-oriented belief net of costs).
    pub sender_payoff: Vec<f64>,
    pub se_sender_payoff: Vec<f64>,
}

/// Inverse-CDF sampler for the state-conditional signal laws.
struct Sampler {
    grid: Vec<f64>,
    cdf_high: Vec<f64>,
    cdf_low: Vec<f64>,
}

impl Sampler {
    fn new(model: &SignalModel) -> Self {
        match model {
            SignalModel::Continuous(m) => {
                let (lo, hi) = m.support();
                let grid = roots::grid(lo, hi, 4097);
                let cdf_high = grid.iter().map(|&s| m.cond_cdf(s, State::High)).collect();
                let cdf_low = grid.iter().map(|&s| m.cond_cdf(s, State::Low)).collect();
                Self { grid, cdf_high, cdf_low }
            }
            SignalModel::Discrete(m) => {
                // Step the cumulative at atom values; sampling snaps to them.
                let mut grid = Vec::new();
                let (mut ch, mut cl) = (Vec::new(), Vec::new());
                let (mut ah, mut al) = (0.0, 0.0);
                for a in m.atoms() {
                    grid.push(a.value);
                    ah += a.prob_given_1;
                    al += a.prob_given_0;
                    ch.push(ah);
                    cl.push(al);
                }
                Self { grid, cdf_high: ch, cdf_low: cl }
            }
        }
    }

    fn draw(&self, rng: &mut SeededRng, state: State, discrete: bool) -> f64 {
        let u: f64 = rng.gen();
        let cdf = match state {
            State::High => &self.cdf_high,
            State::Low => &self.cdf_low,
        };
        let k = cdf.partition_point(|&c| c < u);
        if discrete {
            return self.grid[k.min(self.grid.len() - 1)];
        }
        if k == 0 {
            return self.grid[0];
        }
        if k >= self.grid.len() {
            return *self.grid.last().unwrap();
        }
        let (c0, c1) = (cdf[k - 1], cdf[k]);
        let t = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
        self.grid[k - 1] + t * (self.grid[k] - self.grid[k - 1])
    }
}

struct Accumulator {
    n: u64,
    sum_mu: f64,
    sum_mu2: f64,
    sum_disp: f64,
    sum_disp2: f64,
    sum_pay: Vec<f64>,
    sum_pay2: Vec<f64>,
}

impl Accumulator {
    fn new(senders: usize) -> Self {
        Self {
            n: 0,
            sum_mu: 0.0,
            sum_mu2: 0.0,
            sum_disp: 0.0,
            sum_disp2: 0.0,
            sum_pay: vec![0.0; senders],
            sum_pay2: vec![0.0; senders],
        }
    }

    fn push(&mut self, mu: f64, payoffs: &[f64]) {
        self.n += 1;
        self.sum_mu += mu;
        self.sum_mu2 += mu * mu;
        let d = mu * (1.0 - mu);
        self.sum_disp += d;
        self.sum_disp2 += d * d;
        for (k, &p) in payoffs.iter().enumerate() {
            self.sum_pay[k] += p;
            self.sum_pay2[k] += p * p;
        }
    }

    fn merge(&mut self, other: &Accumulator) {
        self.n += other.n;
        self.sum_mu += other.sum_mu;
        self.sum_mu2 += other.sum_mu2;
        self.sum_disp += other.sum_disp;
        self.sum_disp2 += other.sum_disp2;
        for k in 0..self.sum_pay.len() {
            self.sum_pay[k] += other.sum_pay[k];
            self.sum_pay2[k] += other.sum_pay2[k];
        }
    }
}

fn mean_se(sum: f64, sum2: f64, n: f64) -> (f64, f64) {
    let mean = sum / n;
    let var = (sum2 / n - mean * mean).max(0.0);
    (mean, (var / n).sqrt())
}

/// Runs the oracle: `n` draws with the given 64-bit seed. `cost` is the
/// message cost entering sender payoffs.
pub fn monte_carlo(
    model: &SignalModel,
    play: &SimulatedPlay,
    cost: f64,
    n: u64,
    seed: u64,
) -> Result<SimReport, ModelError> {
    if n == 0 {
        return Err(ModelError::Domain { name: "n_draws", value: 0.0 });
    }
    let sampler = Sampler::new(model);
    let discrete = matches!(model, SignalModel::Discrete(_));
    let prior = model.prior();
    let n_senders = match play {
        SimulatedPlay::Single { .. } | SimulatedPlay::UncertainBias { .. } => 1,
        SimulatedPlay::Two { .. } | SimulatedPlay::Correlated { .. } | SimulatedPlay::Sequential { .. } => 2,
        SimulatedPlay::Many { senders, .. } => senders.len(),
    };

    // Fixed-cut senders have constant nondisclosure likelihoods.
    let nd_pairs: Vec<(f64, f64)> = match play {
        SimulatedPlay::Single { sender, cut } => vec![nd_probs(model, *sender, *cut)],
        SimulatedPlay::Two { senders, cuts } => {
            (0..2).map(|k| nd_probs(model, senders[k], cuts[k])).collect()
        }
        SimulatedPlay::Many { senders, cuts } => {
            (0..senders.len()).map(|k| nd_probs(model, senders[k], cuts[k])).collect()
        }
        SimulatedPlay::Sequential { first, first_cut, .. } => {
            vec![nd_probs(model, *first, *first_cut)]
        }
        _ => Vec::new(),
    };

    // Shared-signal games have one composite nondisclosure event whose
    // state-conditional masses are fixed; precompute them once.
    let nd_lr: Option<(f64, f64)> = match play {
        SimulatedPlay::Correlated { senders, cuts } => {
            let m = model
                .as_continuous()
                .ok_or(ModelError::Invariant("correlated simulation needs a continuous model".into()))?;
            let (lo, hi) = m.support();
            let conceal = |state: State| {
                crate::num::quad::integrate(
                    &|t: f64| {
                        let mut keep = 1.0;
                        for k in 0..2 {
                            let d = match senders[k].bias {
                                Bias::Up => t >= cuts[k].threshold,
                                Bias::Down => t <= cuts[k].threshold,
                            };
                            keep *= 1.0 - if d { senders[k].informed_prob } else { 0.0 };
                        }
                        m.cond_density(t, state) * keep
                    },
                    lo,
                    hi,
                    1e-11,
                )
            };
            Some((conceal(State::High), conceal(State::Low)))
        }
        SimulatedPlay::UncertainBias { p, lambda, up_threshold, down_threshold } => {
            let m = model
                .as_continuous()
                .ok_or(ModelError::Invariant("uncertain-bias simulation needs a continuous model".into()))?;
            let mass = |state: State| {
                let fu = m.cond_cdf(*up_threshold, state);
                let fd = m.cond_cdf(*down_threshold, state);
                1.0 - p + p * (lambda * fu + (1.0 - lambda) * (1.0 - fd))
            };
            Some((mass(State::High), mass(State::Low)))
        }
        _ => None,
    };

    let per_stream: Vec<u64> = (0..STREAMS)
        .map(|k| n / STREAMS + u64::from(k < n % STREAMS))
        .collect();
    let accs: Vec<Accumulator> = per_stream
        .par_iter()
        .enumerate()
        .map(|(stream, &draws)| {
            let mut rng = rng_stream(seed, stream as u64);
            let mut acc = Accumulator::new(n_senders);
            let mut payoffs = vec![0.0; n_senders];
            for _ in 0..draws {
                let omega = if rng.gen::<f64>() < prior { State::High } else { State::Low };
                let mu = draw_posterior(
                    model, play, cost, &nd_pairs, nd_lr, &sampler, discrete, omega, &mut rng,
                    &mut payoffs,
                );
                acc.push(mu, &payoffs);
            }
            acc
        })
        .collect();

    let mut total = Accumulator::new(n_senders);
    for acc in &accs {
        total.merge(acc);
    }
    let nf = total.n as f64;
    let (mean_posterior, se_mean_posterior) = mean_se(total.sum_mu, total.sum_mu2, nf);
    let (mean_dispersion, se_dispersion) = mean_se(total.sum_disp, total.sum_disp2, nf);
    let mut sender_payoff = Vec::with_capacity(n_senders);
    let mut se_sender_payoff = Vec::with_capacity(n_senders);
    for k in 0..n_senders {
        let (m, s) = mean_se(total.sum_pay[k], total.sum_pay2[k], nf);
        sender_payoff.push(m);
        se_sender_payoff.push(s);
    }
    Ok(SimReport {
        n_draws: n,
        seed,
        mean_posterior,
        se_mean_posterior,
        mean_dispersion,
        se_dispersion,
        sender_payoff,
        se_sender_payoff,
    })
}

/// Whether an informed sender with the given cut and bias discloses `s`.
fn discloses(rng: &mut SeededRng, cut: Cut, bias: Bias, s: f64) -> bool {
    if (s - cut.threshold).abs() <= 1e-12 {
        return rng.gen::<f64>() < cut.marginal_weight;
    }
    match bias {
        Bias::Up => s > cut.threshold,
        Bias::Down => s < cut.threshold,
    }
}

/// Likelihood-ratio pair of one sender's nondisclosure event. Allocation
/// free so the sequential game can re-derive it per draw; agreement with the
/// kernel route is unit-tested.
fn nd_probs(model: &SignalModel, spec: SenderSpec, cut: Cut) -> (f64, f64) {
    let p = spec.informed_prob;
    match model {
        SignalModel::Continuous(m) => {
            let (lo, hi) = m.support();
            let t = cut.threshold.clamp(lo, hi);
            let (d1, d0) = (m.cond_cdf(t, State::High), m.cond_cdf(t, State::Low));
            match spec.bias {
                Bias::Up => (1.0 - p + p * d1, 1.0 - p + p * d0),
                Bias::Down => (1.0 - p + p * (1.0 - d1), 1.0 - p + p * (1.0 - d0)),
            }
        }
        SignalModel::Discrete(m) => {
            let (mut c1, mut c0) = (0.0, 0.0);
            for a in m.atoms() {
                let w = if (a.value - cut.threshold).abs() <= 1e-12 {
                    cut.marginal_weight
                } else {
                    let above = a.value > cut.threshold;
                    let disclosed = match spec.bias {
                        Bias::Up => above,
                        Bias::Down => !above,
                    };
                    if disclosed { 1.0 } else { 0.0 }
                };
                c1 += w * a.prob_given_1;
                c0 += w * a.prob_given_0;
            }
            (1.0 - p * c1, 1.0 - p * c0)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn draw_posterior(
    model: &SignalModel,
    play: &SimulatedPlay,
    cost: f64,
    nd_pairs: &[(f64, f64)],
    nd_lr: Option<(f64, f64)>,
    sampler: &Sampler,
    discrete: bool,
    omega: State,
    rng: &mut SeededRng,
    payoffs: &mut [f64],
) -> f64 {
    let prior = model.prior();
    // Accumulates the likelihood ratio of the realized message profile.
    let mut l1 = 1.0;
    let mut l0 = 1.0;
    let mut costs = vec![false; payoffs.len()];

    match play {
        SimulatedPlay::Single { sender, cut } => {
            simulate_one(model, sampler, discrete, omega, rng, *sender, *cut, nd_pairs[0], &mut l1, &mut l0, &mut costs[0]);
        }
        SimulatedPlay::Two { senders, cuts } => {
            for k in 0..2 {
                simulate_one(model, sampler, discrete, omega, rng, senders[k], cuts[k], nd_pairs[k], &mut l1, &mut l0, &mut costs[k]);
            }
        }
        SimulatedPlay::Many { senders, cuts } => {
            for k in 0..senders.len() {
                simulate_one(model, sampler, discrete, omega, rng, senders[k], cuts[k], nd_pairs[k], &mut l1, &mut l0, &mut costs[k]);
            }
        }
        SimulatedPlay::Sequential { first, second, first_cut, policy } => {
            let disclosed = simulate_one(
                model, sampler, discrete, omega, rng, *first, *first_cut, nd_pairs[0], &mut l1,
                &mut l0, &mut costs[0],
            );
            let cut2 = match disclosed {
                Some(t) => Cut::at(policy.threshold_after(t)),
                None => Cut::at(policy.after_nondisclosure),
            };
            let nd2 = nd_probs(model, *second, cut2);
            simulate_one(model, sampler, discrete, omega, rng, *second, cut2, nd2, &mut l1, &mut l0, &mut costs[1]);
        }
        SimulatedPlay::Correlated { senders, cuts } => {
            let s = sampler.draw(rng, omega, discrete);
            let mut revealed = None;
            for k in 0..2 {
                let informed = rng.gen::<f64>() < senders[k].informed_prob;
                if informed && discloses(rng, cuts[k], senders[k].bias, s) {
                    revealed = Some(s);
                    costs[k] = true;
                }
            }
            // The DM update is over the composite event; with a shared
            // signal, any disclosure reveals it exactly.
            if let Some(s) = revealed {
                return finish(prior, payoffs, &costs, play, cost, s, 1.0, 0.0, true);
            }
            // Nondisclosure: the precomputed composite-event masses.
            let (n1, n0) = nd_lr.expect("precomputed for correlated play");
            l1 = n1;
            l0 = n0;
            return finish(prior, payoffs, &costs, play, cost, f64::NAN, l1, l0, false);
        }
        SimulatedPlay::UncertainBias { p, lambda, up_threshold, down_threshold } => {
            let informed = rng.gen::<f64>() < *p;
            let up_type = rng.gen::<f64>() < *lambda;
            let mut disclosed = None;
            if informed {
                let s = sampler.draw(rng, omega, discrete);
                let cut = if up_type { Cut::at(*up_threshold) } else { Cut::at(*down_threshold) };
                let bias = if up_type { Bias::Up } else { Bias::Down };
                if discloses(rng, cut, bias, s) {
                    disclosed = Some(s);
                    costs[0] = true;
                }
            }
            match disclosed {
                Some(s) => return finish(prior, payoffs, &costs, play, cost, s, 1.0, 0.0, true),
                None => {
                    let (n1, n0) = nd_lr.expect("precomputed for uncertain-bias play");
                    l1 = n1;
                    l0 = n0;
                    return finish(prior, payoffs, &costs, play, cost, f64::NAN, l1, l0, false);
                }
            }
        }
    }
    finish(prior, payoffs, &costs, play, cost, f64::NAN, l1, l0, false)
}

/// One conditionally independent sender: draws informedness and the signal,
/// multiplies the message's likelihood ratio into (l1, l0), and returns the
/// disclosed value if any.
#[allow(clippy::too_many_arguments)]
fn simulate_one(
    model: &SignalModel,
    sampler: &Sampler,
    discrete: bool,
    omega: State,
    rng: &mut SeededRng,
    spec: SenderSpec,
    cut: Cut,
    nd: (f64, f64),
    l1: &mut f64,
    l0: &mut f64,
    paid: &mut bool,
) -> Option<f64> {
    let informed = rng.gen::<f64>() < spec.informed_prob;
    if informed {
        let s = sampler.draw(rng, omega, discrete);
        if discloses(rng, cut, spec.bias, s) {
            *paid = true;
            // Disclosure of s has likelihood ratio proportional to
            // (s / prior, (1-s) / (1-prior)).
            let prior = model.prior();
            *l1 *= s / prior;
            *l0 *= (1.0 - s) / (1.0 - prior);
            return Some(s);
        }
    }
    *l1 *= nd.0;
    *l0 *= nd.1;
    None
}

#[allow(clippy::too_many_arguments)]
fn finish(
    prior: f64,
    payoffs: &mut [f64],
    costs: &[bool],
    play: &SimulatedPlay,
    cost: f64,
    revealed: f64,
    l1: f64,
    l0: f64,
    exact: bool,
) -> f64 {
    let mu = if exact { revealed } else { crate::belief::posterior_from_lr(prior, l1, l0) };
    let biases = play_biases(play);
    for k in 0..payoffs.len() {
        let oriented = match biases[k] {
            Bias::Up => mu,
            Bias::Down => 1.0 - mu,
        };
        payoffs[k] = oriented - if costs[k] { cost } else { 0.0 };
    }
    mu
}

fn play_biases(play: &SimulatedPlay) -> Vec<Bias> {
    match play {
        SimulatedPlay::Single { sender, .. } => vec![sender.bias],
        SimulatedPlay::Two { senders, .. } | SimulatedPlay::Correlated { senders, .. } => {
            senders.iter().map(|s| s.bias).collect()
        }
        SimulatedPlay::Many { senders, .. } => senders.iter().map(|s| s.bias).collect(),
        SimulatedPlay::Sequential { first, second, .. } => vec![first.bias, second.bias],
        SimulatedPlay::UncertainBias { .. } => vec![Bias::Up],
    }
}

/// Simulates the concealment payoff of a threshold type directly: draws the
/// opponent's message from the vantage of the type's own signal and averages
/// the DM posterior, for comparison against the analytic payoff.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_concealment_payoff(
    model: &SignalModel,
    s_i: f64,
    cut_i: Cut,
    p_i: f64,
    cut_j: Cut,
    spec_j: SenderSpec,
    n: u64,
    seed: u64,
) -> (f64, f64) {
    let sampler = Sampler::new(model);
    let discrete = matches!(model, SignalModel::Discrete(_));
    let (i1, i0) = nd_probs(model, SenderSpec::up(p_i), cut_i);
    let nd_j = nd_probs(model, spec_j, cut_j);
    let (mut sum, mut sum2) = (0.0, 0.0);
    for stream in 0..STREAMS {
        let mut rng = rng_stream(seed, stream);
        let draws = n / STREAMS + u64::from(stream < n % STREAMS);
        for _ in 0..draws {
            // From the vantage of belief s_i over the state.
            let omega = if rng.gen::<f64>() < s_i { State::High } else { State::Low };
            let (mut l1, mut l0) = (i1, i0);
            let mut paid = false;
            simulate_one(model, &sampler, discrete, omega, &mut rng, spec_j, cut_j, nd_j, &mut l1, &mut l0, &mut paid);
            let mu = crate::belief::posterior_from_lr(model.prior(), l1, l0);
            sum += mu;
            sum2 += mu * mu;
        }
    }
    let nf = n as f64;
    mean_se(sum, sum2, nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::concealment_payoff;
    use crate::signal::ContinuousSignalModel;

    fn uniform() -> SignalModel {
        ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into()
    }

    #[test]
    fn fast_nd_probs_agree_with_kernel_route() {
        let models: [SignalModel; 2] = [
            ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into(),
            crate::signal::DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap().into(),
        ];
        for m in &models {
            for bias in [Bias::Up, Bias::Down] {
                for t in [0.0, 0.3, 0.55, 1.0] {
                    let spec = SenderSpec { informed_prob: 0.8, bias };
                    let cut = Cut::with_weight(t, 0.4);
                    let fast = nd_probs(m, spec, cut);
                    let kernel = crate::belief::MessageKernel::new(m, cut, spec).nd_probs();
                    assert!((fast.0 - kernel.0).abs() < 1e-12);
                    assert!((fast.1 - kernel.1).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn martingale_within_three_standard_errors() {
        let m = uniform();
        let play = SimulatedPlay::Two {
            senders: [SenderSpec::up(0.8), SenderSpec::down(0.6)],
            cuts: [Cut::at(0.35), Cut::at(0.6)],
        };
        let rep = monte_carlo(&m, &play, 0.02, 200_000, 7).unwrap();
        assert!((rep.mean_posterior - 0.5).abs() < 3.0 * rep.se_mean_posterior);
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let m = uniform();
        let play = SimulatedPlay::Single { sender: SenderSpec::up(0.8), cut: Cut::at(0.4) };
        let a = monte_carlo(&m, &play, 0.0, 50_000, 42).unwrap();
        let b = monte_carlo(&m, &play, 0.0, 50_000, 42).unwrap();
        assert_eq!(a.mean_posterior.to_bits(), b.mean_posterior.to_bits());
        assert_eq!(a.mean_dispersion.to_bits(), b.mean_dispersion.to_bits());
        let c = monte_carlo(&m, &play, 0.0, 50_000, 43).unwrap();
        assert_ne!(a.mean_posterior.to_bits(), c.mean_posterior.to_bits());
    }

    #[test]
    fn analytic_payoff_within_three_standard_errors() {
        let m = uniform();
        let (mc, se) = monte_carlo_concealment_payoff(
            &m,
            0.4,
            Cut::at(0.4),
            0.8,
            Cut::at(0.4),
            SenderSpec::up(0.8),
            400_000,
            11,
        );
        let exact = concealment_payoff(&m, 0.4, Cut::at(0.4), 0.8, Cut::at(0.4), SenderSpec::up(0.8), 0.5)
            .unwrap()
            .value();
        assert!((mc - exact).abs() < 3.0 * se, "mc {mc} vs exact {exact} (se {se})");
        // The payoff sits strictly between eta and the signal.
        let eta = crate::belief::nondisclosure_belief(&m, Cut::at(0.4), 0.8, 0.5);
        assert!(exact > eta && exact < 0.4);
    }

    #[test]
    fn welfare_against_analytic_distribution() {
        let m = uniform();
        let cuts = [Cut::at(0.35), Cut::at(0.55)];
        let senders = [SenderSpec::up(0.8), SenderSpec::up(0.6)];
        let play = SimulatedPlay::Two { senders, cuts };
        let rep = monte_carlo(&m, &play, 0.0, 400_000, 3).unwrap();
        let dist = crate::welfare::two_sender_posterior_distribution(&m, senders, cuts).unwrap();
        let analytic = -crate::welfare::dm_welfare_quadratic(&dist);
        assert!(
            (rep.mean_dispersion - analytic).abs() < 3.0 * rep.se_dispersion,
            "dispersion {} vs analytic {}",
            rep.mean_dispersion,
            analytic
        );
    }
}
