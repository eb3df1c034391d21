//! Sequential reporting: the first sender's message is public before the
//! second sender moves, so the second sender faces a single-sender problem at
//! a common interim prior that is an equilibrium object.

use serde::Serialize;

use crate::belief::{nondisclosure_belief, transform_unchecked, Bias, Cut, MessageKernel, SenderSpec};
use crate::error::SolveError;
use crate::num::roots;
use crate::signal::SignalModel;
use crate::single::{ROOT_TOL, TANGENT_TOL};

use super::post_lr;

/// The second sender's equilibrium threshold after each first-sender
/// message, tabulated on a disclosure grid. All thresholds are in
/// game-frame coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdPolicy {
    /// Threshold after nondisclosure by the first sender.
    pub after_nondisclosure: f64,
    /// (disclosed first-sender signal, second-sender threshold) samples.
    pub after_disclosure: Vec<(f64, f64)>,
}

impl ThresholdPolicy {
    /// Piecewise-linear evaluation on the tabulated disclosure grid.
    pub fn threshold_after(&self, disclosed: f64) -> f64 {
        let pts = &self.after_disclosure;
        if pts.is_empty() {
            return self.after_nondisclosure;
        }
        if disclosed <= pts[0].0 {
            return pts[0].1;
        }
        if disclosed >= pts[pts.len() - 1].0 {
            return pts[pts.len() - 1].1;
        }
        let k = pts.partition_point(|&(t, _)| t <= disclosed).saturating_sub(1);
        let (x0, y0) = pts[k];
        let (x1, y1) = pts[k + 1];
        y0 + (y1 - y0) * (disclosed - x0) / (x1 - x0)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SequentialEquilibrium {
    /// First sender's cut in game-frame coordinates.
    pub first_cut: Cut,
    pub first_nd_belief: f64,
    pub policy: ThresholdPolicy,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SequentialSolution {
    pub lowest: SequentialEquilibrium,
    pub highest: SequentialEquilibrium,
}

/// Solves the second sender's single-sender game at interim prior `mu`
/// (both the DM and the second sender hold `mu` before his signal),
/// returning his lowest equilibrium threshold in his own oriented frame
/// against frame signal labels.
fn second_threshold(model: &SignalModel, p2: f64, mu: f64, c: f64) -> f64 {
    let (lo, hi) = model.support();
    let prior = model.prior();
    if mu <= 0.0 || mu >= 1.0 {
        // Degenerate interim belief: disclosure is informationally moot; the
        // threshold is payoff-irrelevant, pick no disclosure.
        return hi;
    }
    // Disclosure of signal s moves the DM to T(s, mu, prior); concealment to
    // the nondisclosure update of mu.
    let g = |s: f64| {
        nondisclosure_belief(model, Cut::at(s), p2, mu) - transform_unchecked(s, mu, prior) + c
    };
    if mu <= transform_unchecked(lo, mu, prior) - c {
        return lo;
    }
    let rts = roots::scan_roots(&g, lo, hi, 513, ROOT_TOL, TANGENT_TOL);
    if let Some(r) = rts.iter().find(|r| r.x > lo + 1e-9 && r.x < hi - 1e-9) {
        return r.x;
    }
    hi
}

/// The first sender's concealment payoff at own signal `s` when the DM
/// conjectures `cut1` (all in the frame where the first sender is upward).
fn first_conceal_payoff(
    model: &SignalModel,
    p1: f64,
    second: SenderSpec,
    c: f64,
    s: f64,
    cut1: Cut,
) -> f64 {
    let prior = model.prior();
    let mu_phi = nondisclosure_belief(model, cut1, p1, prior);
    let cut2 = second_cut_in_frame(model, second, mu_phi, c);
    let kernel = MessageKernel::new(model, cut2, second);
    let (k1, k0) = kernel.nd_probs();
    let phi_term = kernel.nd_mass(s) * post_lr(mu_phi, k1, k0);
    let branch = kernel
        .expect_disclosure_precise(s, |u| transform_unchecked(u, mu_phi, prior), 1e-10);
    phi_term + branch
}

/// Second sender's frame cut given the common interim prior, handling his
/// bias by mirroring his subgame.
fn second_cut_in_frame(model: &SignalModel, second: SenderSpec, mu: f64, c: f64) -> Cut {
    match second.bias {
        Bias::Up => Cut::at(second_threshold(model, second.informed_prob, mu, c)),
        Bias::Down => {
            let t = second_threshold(&model.mirror(), second.informed_prob, 1.0 - mu, c);
            Cut::at(t).mirror()
        }
    }
}

/// Solves the sequential game. The first sender must be upward biased in the
/// game frame; a downward first sender is handled by mirroring the whole
/// game. The second sender plays his lowest (most informative) subgame
/// equilibrium after every message.
pub fn solve_sequential(
    model: &SignalModel,
    cost: f64,
    first: SenderSpec,
    second: SenderSpec,
) -> Result<SequentialSolution, SolveError> {
    first.validate(cost)?;
    second.validate(cost)?;
    if first.bias == Bias::Down {
        let mirrored = model.mirror();
        let sol = solve_sequential(
            &mirrored,
            cost,
            SenderSpec::up(first.informed_prob),
            SenderSpec { informed_prob: second.informed_prob, bias: second.bias.flip() },
        )?;
        return Ok(SequentialSolution {
            lowest: mirror_sequential(sol.highest),
            highest: mirror_sequential(sol.lowest),
        });
    }

    let (lo, hi) = model.support();
    let h = |x: f64| first_conceal_payoff(model, first.informed_prob, second, cost, x, Cut::at(x))
        - x
        + cost;
    let mut thresholds: Vec<(f64, f64)> = Vec::new();
    for r in roots::scan_roots(&h, lo, hi, 513, ROOT_TOL, TANGENT_TOL) {
        if r.x > lo + 1e-9 && r.x < hi - 1e-9 {
            thresholds.push((r.x, 0.0));
        }
    }
    if h(lo) <= 0.0 {
        thresholds.insert(0, (lo, h(lo).max(0.0)));
    }
    if h(hi) >= 0.0 {
        thresholds.push((hi, (-h(hi)).max(0.0)));
    }
    if thresholds.is_empty() {
        return Err(SolveError::Convergence { iterations: 0, deltas: vec![] });
    }
    let build = |t: f64, residual: f64| -> SequentialEquilibrium {
        let cut = Cut::at(t);
        let mu_phi = nondisclosure_belief(model, cut, first.informed_prob, model.prior());
        let policy = tabulate_policy(model, second, cost, t, mu_phi);
        SequentialEquilibrium { first_cut: cut, first_nd_belief: mu_phi, policy, residual }
    };
    let lowest = thresholds.first().unwrap();
    let highest = thresholds.last().unwrap();
    Ok(SequentialSolution {
        lowest: build(lowest.0, lowest.1),
        highest: build(highest.0, highest.1),
    })
}

fn tabulate_policy(
    model: &SignalModel,
    second: SenderSpec,
    cost: f64,
    first_threshold: f64,
    mu_phi: f64,
) -> ThresholdPolicy {
    let (_, hi) = model.support();
    let after_nd = second_cut_in_frame(model, second, mu_phi, cost);
    let mut after_disclosure = Vec::new();
    if first_threshold < hi {
        for k in 0..64 {
            let t = first_threshold + (hi - first_threshold) * k as f64 / 63.0;
            let cut2 = second_cut_in_frame(model, second, t, cost);
            after_disclosure.push((t, cut2.threshold));
        }
    }
    ThresholdPolicy { after_nondisclosure: after_nd.threshold, after_disclosure }
}

fn mirror_sequential(eq: SequentialEquilibrium) -> SequentialEquilibrium {
    SequentialEquilibrium {
        first_cut: eq.first_cut.mirror(),
        first_nd_belief: 1.0 - eq.first_nd_belief,
        policy: ThresholdPolicy {
            after_nondisclosure: 1.0 - eq.policy.after_nondisclosure,
            after_disclosure: eq
                .policy
                .after_disclosure
                .iter()
                .rev()
                .map(|&(t, y)| (1.0 - t, 1.0 - y))
                .collect(),
        },
        residual: eq.residual,
    }
}
