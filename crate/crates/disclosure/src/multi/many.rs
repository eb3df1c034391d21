//! More than two senders: the concealment payoff nests one expectation per
//! other sender, evaluated by recursive one-dimensional integration over the
//! message of one sender at a time (conditional independence makes the order
//! irrelevant).

use crate::belief::{Bias, Cut, SenderSpec};
use crate::error::SolveError;
use crate::num::{quad, roots};
use crate::signal::{SignalModel, State};
use crate::single::ROOT_TOL;

use super::{deviation_violation, post_lr, ThresholdProfile, ITERATION_TOL, MAX_ITERATIONS};

/// A certified many-sender threshold equilibrium.
#[derive(Debug, Clone)]
pub struct ManySenderEquilibrium {
    pub profile: ThresholdProfile,
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

pub struct ManySenderGame {
    pub model: SignalModel,
    pub cost: f64,
    pub senders: Vec<SenderSpec>,
    mirrored: SignalModel,
}

/// One other-sender's disclosure branch tabulated for the recursion:
/// (frame label, state-conditional message masses) plus nondisclosure
/// probabilities, all in a fixed observer frame.
struct BranchTable {
    nd1: f64,
    nd0: f64,
    labels: Vec<f64>,
    wa: Vec<f64>,
    wb: Vec<f64>,
}

impl ManySenderGame {
    pub fn new(model: SignalModel, cost: f64, senders: Vec<SenderSpec>) -> Result<Self, SolveError> {
        if senders.len() < 2 {
            return Err(SolveError::Config("need at least two senders".into()));
        }
        for s in &senders {
            s.validate(cost)?;
        }
        let mirrored = model.mirror();
        Ok(Self { model, cost, senders, mirrored })
    }

    fn frame_model(&self, idx: usize) -> &SignalModel {
        match self.senders[idx].bias {
            Bias::Up => &self.model,
            Bias::Down => &self.mirrored,
        }
    }

    /// Oriented cut of sender `other` expressed in sender `idx`'s frame.
    fn cut_in_frame(&self, idx: usize, other: usize, oriented: Cut) -> Cut {
        if self.senders[idx].bias == self.senders[other].bias {
            oriented
        } else {
            oriented.mirror()
        }
    }

    /// Tabulates sender `other`'s message structure in `idx`'s frame.
    fn branch_table(&self, idx: usize, other: usize, oriented: Cut, panels: usize) -> BranchTable {
        let frame = self.frame_model(idx);
        let cut = self.cut_in_frame(idx, other, oriented);
        // In idx's frame, `other` is upward iff the biases agree.
        let up_in_frame = self.senders[idx].bias == self.senders[other].bias;
        let p = self.senders[other].informed_prob;
        match frame {
            SignalModel::Discrete(m) => {
                let mut labels = Vec::new();
                let (mut wa, mut wb) = (Vec::new(), Vec::new());
                let (mut c1, mut c0) = (0.0, 0.0);
                for a in m.atoms() {
                    let w = if (a.value - cut.threshold).abs() <= 1e-12 {
                        cut.marginal_weight
                    } else if (a.value > cut.threshold) == up_in_frame {
                        1.0
                    } else {
                        0.0
                    };
                    if w > 0.0 {
                        labels.push(a.value);
                        wa.push(p * w * a.prob_given_1);
                        wb.push(p * w * a.prob_given_0);
                    }
                    c1 += w * a.prob_given_1;
                    c0 += w * a.prob_given_0;
                }
                BranchTable { nd1: 1.0 - p * c1, nd0: 1.0 - p * c0, labels, wa, wb }
            }
            SignalModel::Continuous(m) => {
                let (lo, hi) = m.support();
                let t = cut.threshold.clamp(lo, hi);
                let region = if up_in_frame { (t, hi) } else { (lo, t) };
                let (d1, d0) = (m.cond_cdf(t, State::High), m.cond_cdf(t, State::Low));
                let (nd1, nd0) = if up_in_frame {
                    (1.0 - p + p * d1, 1.0 - p + p * d0)
                } else {
                    (1.0 - p + p * (1.0 - d1), 1.0 - p + p * (1.0 - d0))
                };
                let mut labels = Vec::new();
                let (mut wa, mut wb) = (Vec::new(), Vec::new());
                if region.1 > region.0 {
                    // CDF-space nodes absorb the belief density.
                    let rule = quad::CompositeRule::new(
                        m.cdf_prior(region.0),
                        m.cdf_prior(region.1),
                        panels,
                    );
                    let prior_m = m.prior();
                    for (&q, &w) in rule.nodes.iter().zip(&rule.weights) {
                        let u = m.quantile_prior(q);
                        labels.push(u);
                        wa.push(p * w * u / prior_m);
                        wb.push(p * w * (1.0 - u) / (1.0 - prior_m));
                    }
                }
                BranchTable { nd1, nd0, labels, wa, wb }
            }
        }
    }

    /// Concealment payoff of sender `idx` at signal `s` (frame coordinates),
    /// DM conjecture `cut_i`, others playing `tables`: recursive expectation
    /// over one other sender at a time, accumulating each state's joint
    /// message likelihood.
    fn u_nested(&self, idx: usize, s: f64, cut_i: Cut, tables: &[BranchTable]) -> f64 {
        let frame = self.frame_model(idx);
        let prior = frame.prior();
        let kernel = crate::belief::MessageKernel::new(
            frame,
            cut_i,
            SenderSpec::up(self.senders[idx].informed_prob),
        );
        let (i1, i0) = kernel.nd_probs();
        // recurse(k, a, b): a and b multiply the likelihoods of the messages
        // fixed so far; expectation over the remaining senders' messages.
        #[allow(clippy::too_many_arguments)]
        fn recurse(
            tables: &[BranchTable],
            k: usize,
            a: f64,
            b: f64,
            s: f64,
            prior: f64,
            i1: f64,
            i0: f64,
        ) -> f64 {
            if k == tables.len() {
                // DM updates the prior on every fixed message, then on idx's
                // nondisclosure; weight is idx's subjective event probability.
                let weight = s * a + (1.0 - s) * b;
                let post = post_lr(post_lr(prior, a, b), i1, i0);
                return weight * post;
            }
            let t = &tables[k];
            let mut acc = recurse(tables, k + 1, a * t.nd1, b * t.nd0, s, prior, i1, i0);
            for j in 0..t.labels.len() {
                acc += recurse(tables, k + 1, a * t.wa[j], b * t.wb[j], s, prior, i1, i0);
            }
            acc
        }
        recurse(tables, 0, 1.0, 1.0, s, prior, i1, i0)
    }

    fn tables_for(&self, idx: usize, oriented: &[Cut], panels: usize) -> Vec<BranchTable> {
        (0..self.senders.len())
            .filter(|&k| k != idx)
            .map(|k| self.branch_table(idx, k, oriented[k], panels))
            .collect()
    }

    /// Best-response residual of sender `idx` (violation form) on a signal
    /// grid, at certification precision.
    pub fn residual(&self, idx: usize, oriented: &[Cut]) -> f64 {
        let tables = self.tables_for(idx, oriented, 24);
        let frame = self.frame_model(idx);
        let cut_i = oriented[idx];
        let mut worst: f64 = 0.0;
        match frame {
            SignalModel::Discrete(m) => {
                for a in m.atoms() {
                    let gap = (a.value - self.cost) - self.u_nested(idx, a.value, cut_i, &tables);
                    worst = worst.max(deviation_violation(gap, a.value, cut_i));
                }
            }
            SignalModel::Continuous(_) => {
                let x = cut_i.threshold;
                let (lo, hi) = frame.support();
                let r = self.u_nested(idx, x, cut_i, &tables) - x + self.cost;
                worst = if x <= lo + 1e-12 {
                    r.max(0.0)
                } else if x >= hi - 1e-12 {
                    (-r).max(0.0)
                } else {
                    r.abs()
                };
            }
        }
        worst
    }

    fn smallest_br(&self, idx: usize, oriented: &[Cut], panels: usize, scan: usize) -> Cut {
        let frame = self.frame_model(idx);
        let tables = self.tables_for(idx, oriented, panels);
        match frame {
            SignalModel::Discrete(m) => {
                let gap = |cut: Cut, s: f64| (s - self.cost) - self.u_nested(idx, s, cut, &tables);
                let mut set = crate::single::discrete_threshold_solutions(m, &gap, 1e-10);
                crate::single::dedup_cuts(&mut set);
                set.first().copied().unwrap_or(Cut::at(frame.support().1))
            }
            SignalModel::Continuous(_) => {
                let (lo, hi) = frame.support();
                let h = |x: f64| self.u_nested(idx, x, Cut::at(x), &tables) - x + self.cost;
                if h(lo) <= 0.0 {
                    return Cut::at(lo);
                }
                let xs = roots::grid(lo, hi, scan);
                let mut prev = (lo, h(lo));
                for &x in &xs[1..] {
                    let hx = h(x);
                    if hx <= 0.0 {
                        return Cut::at(roots::brent(&h, prev.0, x, prev.1, hx, ROOT_TOL));
                    }
                    prev = (x, hx);
                }
                Cut::at(hi)
            }
        }
    }
}

/// Simultaneous best-response iteration for K + 2 senders. Under c <= 0 the
/// iteration ascends monotonically from the most disclosing profile; under a
/// disclosure cost it starts from the single-sender profile and is certified
/// at the end like every other solver output.
pub fn solve_many_senders(
    model: &SignalModel,
    cost: f64,
    senders: &[SenderSpec],
) -> Result<ManySenderEquilibrium, SolveError> {
    let game = ManySenderGame::new(model.clone(), cost, senders.to_vec())?;
    let n = senders.len();
    let mut oriented: Vec<Cut> = if cost <= 0.0 {
        (0..n)
            .map(|i| {
                let (lo, hi) = game.frame_model(i).support();
                match game.frame_model(i) {
                    SignalModel::Continuous(_) => Cut::at(lo),
                    SignalModel::Discrete(_) => {
                        let _ = hi;
                        Cut::with_weight(lo, 1.0)
                    }
                }
            })
            .collect()
    } else {
        let mut start = Vec::with_capacity(n);
        for (i, sender) in senders.iter().enumerate() {
            let eqs = crate::single::solve_single(
                game.frame_model(i),
                SenderSpec::up(sender.informed_prob),
                cost,
            )?;
            start.push(eqs[0].cut);
        }
        start
    };

    let (panels, scan) = (12, 129);
    for iteration in 1..=MAX_ITERATIONS {
        let mut next = oriented.clone();
        let mut delta: f64 = 0.0;
        for idx in 0..n {
            next[idx] = game.smallest_br(idx, &oriented, panels, scan);
            delta = delta.max((next[idx].threshold - oriented[idx].threshold).abs());
            delta = delta.max((next[idx].marginal_weight - oriented[idx].marginal_weight).abs());
        }
        oriented = next;
        if delta < ITERATION_TOL.max(1e-8) {
            let residuals: Vec<f64> = (0..n).map(|i| game.residual(i, &oriented)).collect();
            if residuals.iter().cloned().fold(0.0, f64::max) > 5e-6 {
                return Err(SolveError::Convergence { iterations: iteration, deltas: residuals });
            }
            let cuts = (0..n)
                .map(|i| match senders[i].bias {
                    Bias::Up => oriented[i],
                    Bias::Down => oriented[i].mirror(),
                })
                .collect();
            return Ok(ManySenderEquilibrium {
                profile: ThresholdProfile::new(cuts),
                residuals,
                iterations: iteration,
            });
        }
    }
    Err(SolveError::Convergence { iterations: MAX_ITERATIONS, deltas: vec![] })
}
