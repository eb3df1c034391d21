//! Multi-sender equilibrium machinery: best-response correspondences,
//! extremal equilibria via monotone fixed-point iteration, brute-force grid
//! enumeration, many senders, sequential reporting, the correlated-signal
//! variant, and nonlinear-utility best responses.
//!
//! All solvers work in per-sender oriented coordinates: each sender's
//! threshold is expressed in the frame where that sender is upward biased
//! (the mirrored model for downward senders), so the upward formulas are the
//! only ones ever evaluated.

pub mod correlated;
pub mod grid;
pub mod many;
pub mod nonlinear;
pub mod sequential;
mod tarski;

pub use tarski::{solve_extremal_complements, solve_extremal_substitutes};

use serde::Serialize;

use crate::belief::{
    concealment_payoff, nondisclosure_belief, Bias, Cut, MessageKernel, SenderSpec,
};
use crate::error::SolveError;
use crate::num::roots;
use crate::signal::{SignalModel, State};
use crate::single::{discrete_threshold_solutions, ROOT_TOL, SCAN_POINTS, TANGENT_TOL};
use crate::welfare;

/// Residual level at which a profile counts as a certified equilibrium.
pub const CERTIFY_TOL: f64 = 1e-7;
/// Sup-norm change at which monotone iteration is considered converged.
pub const ITERATION_TOL: f64 = 1e-9;
/// Iteration cap; monotone bounded iterations that hit it indicate a bug or
/// tolerance mismatch, so the solver fails loudly.
pub const MAX_ITERATIONS: usize = 500;

/// One disclosure threshold per sender, plus the discrete-model marginal
/// disclosure weight (1 by default), all in game-frame coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdProfile {
    pub cuts: Vec<Cut>,
}

impl ThresholdProfile {
    pub fn new(cuts: Vec<Cut>) -> Self {
        Self { cuts }
    }

    pub fn thresholds(&self) -> Vec<f64> {
        self.cuts.iter().map(|c| c.threshold).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquilibriumLabel {
    Smallest,
    Largest,
    IMaximal,
    JMaximal,
    GridCell,
    FixedPoint,
}

/// A certified two-sender equilibrium.
#[derive(Debug, Clone, Serialize)]
pub struct TwoSenderEquilibrium {
    pub profile: ThresholdProfile,
    pub label: EquilibriumLabel,
    /// Per-sender best-response residuals at the certification pass.
    pub residuals: [f64; 2],
    /// The DM's nondisclosure belief per sender (other sender integrated out
    /// is not applied here; these are the single-message interim beliefs).
    pub nondisclosure_beliefs: [f64; 2],
    pub dm_welfare: f64,
    pub sender_welfare: [f64; 2],
    pub iterations: usize,
    /// Oriented thresholds along the monotone iteration, when produced by
    /// the fixed-point solvers.
    #[serde(skip)]
    pub oriented_trace: Vec<[f64; 2]>,
}

/// A two-sender game bundle; callers hold the model and specs immutable.
#[derive(Debug, Clone)]
pub struct TwoSenderGame {
    pub model: SignalModel,
    pub cost: f64,
    pub senders: [SenderSpec; 2],
    mirrored: SignalModel,
}

impl TwoSenderGame {
    pub fn new(model: SignalModel, senders: [SenderSpec; 2], cost: f64) -> Result<Self, SolveError> {
        for s in &senders {
            s.validate(cost)?;
        }
        let mirrored = model.mirror();
        Ok(Self { model, cost, senders, mirrored })
    }

    /// The model in sender `idx`'s oriented frame.
    pub fn frame_model(&self, idx: usize) -> &SignalModel {
        match self.senders[idx].bias {
            Bias::Up => &self.model,
            Bias::Down => &self.mirrored,
        }
    }

    /// Support of sender `idx`'s oriented frame.
    pub fn frame_support(&self, idx: usize) -> (f64, f64) {
        self.frame_model(idx).support()
    }

    /// Converts sender `idx`'s oriented cut to game-frame coordinates.
    pub fn to_game_frame(&self, idx: usize, cut: Cut) -> Cut {
        match self.senders[idx].bias {
            Bias::Up => cut,
            Bias::Down => cut.mirror(),
        }
    }

    /// The opponent's cut expressed in sender `idx`'s frame, given the
    /// opponent's own oriented cut.
    fn opponent_cut_in_frame(&self, idx: usize, opp_oriented: Cut) -> Cut {
        if self.senders[idx].bias == self.senders[1 - idx].bias {
            opp_oriented
        } else {
            opp_oriented.mirror()
        }
    }

    /// The opponent's bias as seen from sender `idx`'s frame.
    fn opponent_bias_in_frame(&self, idx: usize) -> Bias {
        match self.senders[idx].bias {
            Bias::Up => self.senders[1 - idx].bias,
            Bias::Down => self.senders[1 - idx].bias.flip(),
        }
    }

    /// Scan-grade best-response solver for sender `idx`.
    pub(crate) fn br_solver(&self, idx: usize) -> BrSolver {
        BrSolver::new(
            self.frame_model(idx),
            self.senders[idx].informed_prob,
            SenderSpec {
                informed_prob: self.senders[1 - idx].informed_prob,
                bias: self.opponent_bias_in_frame(idx),
            },
        )
    }

    /// Full-precision Eq.-5 residual of sender `idx` at an oriented profile,
    /// re-verified through the direct-form concealment payoff.
    pub fn residual(&self, idx: usize, oriented: [Cut; 2]) -> Result<f64, SolveError> {
        let model = self.frame_model(idx);
        let (lo, hi) = model.support();
        let cut_i = oriented[idx];
        let cut_j = self.opponent_cut_in_frame(idx, oriented[1 - idx]);
        let spec_j = SenderSpec {
            informed_prob: self.senders[1 - idx].informed_prob,
            bias: self.opponent_bias_in_frame(idx),
        };
        if let SignalModel::Discrete(m) = model {
            // Violation form: worst wrong-side deviation over atoms.
            let mut worst: f64 = 0.0;
            for a in m.atoms() {
                let u = concealment_payoff(
                    model,
                    a.value,
                    cut_i,
                    self.senders[idx].informed_prob,
                    cut_j,
                    spec_j,
                    model.prior(),
                )?;
                let gap = (a.value - self.cost) - u.direct_form;
                let v = deviation_violation(gap, a.value, cut_i);
                worst = worst.max(v);
            }
            return Ok(worst);
        }
        let x = cut_i.threshold;
        let u = concealment_payoff(
            model,
            x,
            cut_i,
            self.senders[idx].informed_prob,
            cut_j,
            spec_j,
            model.prior(),
        )?;
        let r = u.direct_form - x + self.cost;
        Ok(if x <= lo + 1e-12 {
            r.max(0.0) // lo requires U <= lo - c
        } else if x >= hi - 1e-12 {
            (-r).max(0.0) // hi requires U >= hi - c
        } else {
            r.abs()
        })
    }

    /// Packages an oriented fixed point into a certified equilibrium.
    pub(crate) fn certify(
        &self,
        oriented: [Cut; 2],
        label: EquilibriumLabel,
        iterations: usize,
    ) -> Result<TwoSenderEquilibrium, SolveError> {
        let residuals = [self.residual(0, oriented)?, self.residual(1, oriented)?];
        if residuals[0].max(residuals[1]) > CERTIFY_TOL {
            return Err(SolveError::Convergence {
                iterations,
                deltas: residuals.to_vec(),
            });
        }
        let cuts = [self.to_game_frame(0, oriented[0]), self.to_game_frame(1, oriented[1])];
        let dist = welfare::two_sender_posterior_distribution(
            &self.model,
            [self.senders[0], self.senders[1]],
            cuts,
        )?;
        let nd = [
            nondisclosure_belief(self.frame_model(0), oriented[0], self.senders[0].informed_prob, self.frame_model(0).prior()),
            nondisclosure_belief(self.frame_model(1), oriented[1], self.senders[1].informed_prob, self.frame_model(1).prior()),
        ];
        Ok(TwoSenderEquilibrium {
            profile: ThresholdProfile::new(cuts.to_vec()),
            label,
            residuals,
            nondisclosure_beliefs: nd,
            dm_welfare: welfare::dm_welfare_quadratic(&dist),
            sender_welfare: [
                crate::single::sender_welfare(&self.model, cuts[0], self.senders[0], self.cost),
                crate::single::sender_welfare(&self.model, cuts[1], self.senders[1], self.cost),
            ],
            iterations,
            oriented_trace: Vec::new(),
        })
    }
}

/// Wrong-side deviation violation at a signal, given the conjectured cut:
/// disclosed signals need gap >= 0, concealed ones gap <= 0, the marginal
/// atom is measured by |gap| when its weight is interior.
pub(crate) fn deviation_violation(gap: f64, s: f64, cut: Cut) -> f64 {
    if (s - cut.threshold).abs() <= 1e-12 {
        if cut.marginal_weight >= 1.0 - 1e-12 {
            (-gap).max(0.0)
        } else if cut.marginal_weight <= 1e-12 {
            gap.max(0.0)
        } else {
            gap.abs()
        }
    } else if s > cut.threshold {
        (-gap).max(0.0)
    } else {
        gap.max(0.0)
    }
}

/// Scan-grade evaluator of the concealment payoff for one sender (upward in
/// its own frame) against one opponent, with the opponent's disclosure
/// branch pre-tabulated on a composite rule in CDF space.
pub struct BrSolver {
    model: SignalModel,
    prior: f64,
    p_i: f64,
    p_j: f64,
    opp_bias: Bias,
    /// Continuous opponents: node data over the view support.
    cont: Option<ContOpponent>,
}

struct ContOpponent {
    /// View model: the frame model, mirrored once more when the opponent is
    /// downward within this frame.
    view: SignalModel,
    view_mirrored: bool,
    /// Panel edges of the composite rule, in view CDF space (nodes there
    /// absorb the belief density into the measure, so integrable density
    /// singularities never meet the rule).
    edges: Vec<f64>,
    /// Node positions in view CDF space.
    nodes: Vec<f64>,
    /// Node labels mapped back to frame coordinates.
    labels: Vec<f64>,
    /// weight * p_j * (conditional mass of label | frame state), per node.
    wa: Vec<f64>,
    wb: Vec<f64>,
}

/// Opponent state prepared for a fixed opponent cut: nondisclosure
/// probabilities by frame state plus the disclosure-branch node range.
pub struct PreparedOpponent {
    pub j1: f64,
    pub j0: f64,
    start: usize,
    extra: Vec<(f64, f64, f64)>,
    /// Discrete opponents: (frame label, p_j w q1, p_j w q0).
    atoms: Vec<(f64, f64, f64)>,
}

impl BrSolver {
    pub fn is_continuous(&self) -> bool {
        self.cont.is_some()
    }

    pub fn new(frame_model: &SignalModel, p_i: f64, opp: SenderSpec) -> Self {
        let prior = frame_model.prior();
        let cont = match frame_model {
            SignalModel::Discrete(_) => None,
            SignalModel::Continuous(_) => {
                let view_mirrored = opp.bias == Bias::Down;
                let view = if view_mirrored { frame_model.mirror() } else { frame_model.clone() };
                let vm = view.as_continuous().unwrap();
                let rule = crate::num::quad::CompositeRule::new(0.0, 1.0, 96);
                let nodes = rule.nodes.clone();
                let pv = vm.prior();
                let mut labels = Vec::with_capacity(nodes.len());
                let mut wa = Vec::with_capacity(nodes.len());
                let mut wb = Vec::with_capacity(nodes.len());
                for (&q, &w) in nodes.iter().zip(&rule.weights) {
                    let u = vm.quantile_prior(q);
                    let label = if view_mirrored { 1.0 - u } else { u };
                    // Conditional masses of the label per frame state, with
                    // the view states swapped when mirrored.
                    let (da, db) = if view_mirrored {
                        ((1.0 - u) / (1.0 - pv), u / pv)
                    } else {
                        (u / pv, (1.0 - u) / (1.0 - pv))
                    };
                    labels.push(label);
                    wa.push(w * opp.informed_prob * da);
                    wb.push(w * opp.informed_prob * db);
                }
                let panels = nodes.len() / 8;
                let edges = (0..=panels)
                    .map(|k| {
                        0.5 * (1.0 - (std::f64::consts::PI * k as f64 / panels as f64).cos())
                    })
                    .collect();
                Some(ContOpponent { edges, view, view_mirrored, nodes, labels, wa, wb })
            }
        };
        Self { model: frame_model.clone(), prior, p_i, p_j: opp.informed_prob, opp_bias: opp.bias, cont }
    }

    pub fn support(&self) -> (f64, f64) {
        self.model.support()
    }

    /// Fixes the opponent's cut (in this sender's frame coordinates).
    pub fn prepare(&self, cut_j: Cut) -> PreparedOpponent {
        match &self.cont {
            None => {
                let kernel = MessageKernel::new(
                    &self.model,
                    cut_j,
                    SenderSpec { informed_prob: self.p_j, bias: self.opp_bias },
                );
                let (j1, j0) = kernel.nd_probs();
                let atoms = kernel.disclosed_atom_conditionals();
                PreparedOpponent { j1, j0, start: usize::MAX, extra: Vec::new(), atoms }
            }
            Some(c) => {
                let vm = c.view.as_continuous().unwrap();
                let (vlo, vhi) = vm.support();
                let vc = if c.view_mirrored { cut_j.mirror() } else { cut_j };
                let t = vc.threshold.clamp(vlo, vhi);
                let (s1, s0) = (vm.cond_cdf(t, State::High), vm.cond_cdf(t, State::Low));
                // Frame-state nondisclosure probabilities.
                let (c1, c0) = if c.view_mirrored { (s0, s1) } else { (s1, s0) };
                let j1 = 1.0 - self.p_j + self.p_j * c1;
                let j0 = 1.0 - self.p_j + self.p_j * c0;
                // Node range strictly above the cut (in CDF space) plus a
                // partial panel bridging from the cut itself.
                let qt = vm.cdf_prior(t);
                let panel = match c.edges.binary_search_by(|e| e.partial_cmp(&qt).unwrap()) {
                    Ok(k) => k,
                    Err(k) => k.saturating_sub(1),
                }
                .min(c.edges.len() - 2);
                let start = (panel + 1) * 8;
                let mut extra = Vec::with_capacity(8);
                if qt < c.edges[panel + 1] {
                    let gl = crate::num::quad::rule8();
                    let half = 0.5 * (c.edges[panel + 1] - qt);
                    let mid = 0.5 * (c.edges[panel + 1] + qt);
                    let pv = vm.prior();
                    for (&x, &w) in gl.nodes_weights() {
                        let q = mid + half * x;
                        let u = vm.quantile_prior(q);
                        let wq = w * half * self.p_j;
                        let label = if c.view_mirrored { 1.0 - u } else { u };
                        let (da, db) = if c.view_mirrored {
                            ((1.0 - u) / (1.0 - pv), u / pv)
                        } else {
                            (u / pv, (1.0 - u) / (1.0 - pv))
                        };
                        extra.push((label, wq * da, wq * db));
                    }
                }
                PreparedOpponent { j1, j0, start, extra, atoms: Vec::new() }
            }
        }
    }

    /// Own nondisclosure probabilities at a conjectured cut.
    fn own_nd(&self, cut_i: Cut) -> (f64, f64) {
        match &self.model {
            SignalModel::Continuous(m) => (
                1.0 - self.p_i + self.p_i * m.cond_cdf(cut_i.threshold, State::High),
                1.0 - self.p_i + self.p_i * m.cond_cdf(cut_i.threshold, State::Low),
            ),
            SignalModel::Discrete(_) => {
                MessageKernel::new(&self.model, cut_i, SenderSpec::up(self.p_i)).nd_probs()
            }
        }
    }

    /// Concealment payoff of own signal `s` when the DM conjectures `cut_i`
    /// and the opponent is as prepared (direct-form route).
    pub fn u_at(&self, s: f64, cut_i: Cut, prep: &PreparedOpponent) -> f64 {
        let (i1, i0) = self.own_nd(cut_i);
        let eta_i = post_lr(self.prior, i1, i0);
        let nd = s * prep.j1 + (1.0 - s) * prep.j0;
        let phi = post_lr(eta_i, prep.j1, prep.j0);
        let mut branch = 0.0;
        if let Some(c) = &self.cont {
            if prep.start < c.nodes.len() {
                for k in prep.start..c.nodes.len() {
                    let post = post_lr(c.labels[k], i1, i0);
                    branch += post * (s * c.wa[k] + (1.0 - s) * c.wb[k]);
                }
            }
            for &(label, a, b) in &prep.extra {
                branch += post_lr(label, i1, i0) * (s * a + (1.0 - s) * b);
            }
        }
        for &(label, a, b) in &prep.atoms {
            branch += post_lr(label, i1, i0) * (s * a + (1.0 - s) * b);
        }
        nd * phi + branch
    }

    /// Diagonal payoff U(x) with the conjectured cut at the signal itself.
    pub fn u_diag(&self, x: f64, prep: &PreparedOpponent) -> f64 {
        self.u_at(x, Cut::at(x), prep)
    }

    /// Smallest best response: min{ x : U(x) <= x - c }, with the Eq.-5
    /// boundary conventions at the support ends.
    pub fn smallest_br(&self, prep: &PreparedOpponent, c: f64, scan: usize) -> f64 {
        let (lo, hi) = self.support();
        let h = |x: f64| self.u_diag(x, prep) - x + c;
        if h(lo) <= 0.0 {
            return lo;
        }
        let xs = roots::grid(lo, hi, scan);
        let mut prev = (lo, h(lo));
        for &x in &xs[1..] {
            let hx = h(x);
            if hx <= 0.0 {
                return roots::brent(&h, prev.0, x, prev.1, hx, ROOT_TOL);
            }
            prev = (x, hx);
        }
        hi
    }

    /// Largest best response: sup{ x : U(x) >= x - c }.
    pub fn largest_br(&self, prep: &PreparedOpponent, c: f64, scan: usize) -> f64 {
        let (lo, hi) = self.support();
        let h = |x: f64| self.u_diag(x, prep) - x + c;
        if h(hi) >= 0.0 {
            return hi;
        }
        let xs = roots::grid(lo, hi, scan);
        let mut prev = (hi, h(hi));
        for &x in xs.iter().rev().skip(1) {
            let hx = h(x);
            if hx >= 0.0 {
                return roots::brent(&h, x, prev.0, hx, prev.1, ROOT_TOL);
            }
            prev = (x, hx);
        }
        lo
    }

    /// Discrete-model best responses as cuts, ordered by concealment.
    pub fn discrete_best_responses(&self, prep: &PreparedOpponent, c: f64) -> Vec<Cut> {
        let m = match &self.model {
            SignalModel::Discrete(m) => m,
            SignalModel::Continuous(_) => unreachable!("continuous models use threshold scans"),
        };
        let gap = |cut: Cut, s: f64| (s - c) - self.u_at(s, cut, prep);
        discrete_threshold_solutions(m, &gap, 1e-10)
    }
}

#[inline]
pub(crate) fn post_lr(prior: f64, l1: f64, l0: f64) -> f64 {
    crate::belief::posterior_from_lr(prior, l1, l0)
}

/// The set of Eq.-5 solutions for sender `i` against a fixed opponent
/// threshold, in game-frame coordinates.
#[derive(Debug, Clone)]
pub struct BestResponseSet {
    pub smallest: f64,
    pub largest: f64,
    pub all: Vec<f64>,
}

/// Solves sender i's best-response condition against a mechanical opponent
/// threshold. Downward-biased i is solved in the mirrored frame and mapped
/// back, so `smallest`/`largest` always refer to game-frame thresholds.
pub fn best_response_set(
    model: &SignalModel,
    c: f64,
    i: SenderSpec,
    j: SenderSpec,
    cut_j: Cut,
) -> Result<BestResponseSet, SolveError> {
    i.validate(c)?;
    j.validate(c)?;
    let game = TwoSenderGame::new(model.clone(), [i, j], c)?;
    let solver = game.br_solver(0);
    // The opponent's game-frame cut expressed in i's frame.
    let cut_j_frame = match i.bias {
        Bias::Up => cut_j,
        Bias::Down => cut_j.mirror(),
    };
    let prep = solver.prepare(cut_j_frame);
    let (lo, hi) = solver.support();
    let h = |x: f64| solver.u_diag(x, &prep) - x + c;
    let mut all: Vec<f64> = Vec::new();
    for root in roots::scan_roots(&h, lo, hi, SCAN_POINTS, ROOT_TOL, TANGENT_TOL) {
        if root.x > lo + 1e-9 && root.x < hi - 1e-9 {
            all.push(root.x);
        }
    }
    if h(lo) <= 0.0 {
        all.insert(0, lo);
    }
    if h(hi) >= 0.0 {
        all.push(hi);
    }
    let smallest = if h(lo) <= 0.0 { lo } else { *all.first().unwrap_or(&hi) };
    let largest = if h(hi) >= 0.0 { hi } else { *all.last().unwrap_or(&lo) };
    // Map back to game frame for downward i.
    let out = |x: f64| match i.bias {
        Bias::Up => x,
        Bias::Down => 1.0 - x,
    };
    let mut mapped: Vec<f64> = all.iter().map(|&x| out(x)).collect();
    mapped.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(match i.bias {
        Bias::Up => BestResponseSet { smallest, largest, all: mapped },
        Bias::Down => BestResponseSet { smallest: out(largest), largest: out(smallest), all: mapped },
    })
}
