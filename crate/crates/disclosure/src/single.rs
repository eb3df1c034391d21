//! The single-sender benchmark: equilibrium enumeration, extremal selection,
//! welfare, comparative-statics sweeps, and the uncertain-bias variant.

use serde::Serialize;

use crate::belief::{nondisclosure_belief, Bias, Cut, MessageKernel, SenderSpec};
use crate::error::{ModelError, SolveError};
use crate::num::roots;
use crate::signal::{DiscreteSignalModel, SignalModel};
use crate::welfare;

/// Grid resolution of the equilibrium sign-change scan.
pub const SCAN_POINTS: usize = 2048;
/// Refinement tolerance for bracketed roots.
pub const ROOT_TOL: f64 = 1e-10;
/// Slack applied to the weak boundary-equilibrium inequalities.
pub const BOUNDARY_SLACK: f64 = 1e-10;
/// |f| level under which an even-order crossing is reported as tangent.
pub const TANGENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingleKind {
    Interior,
    BoundaryLo,
    BoundaryHi,
}

/// One equilibrium of the single-sender game.
#[derive(Debug, Clone, Serialize)]
pub struct SingleEquilibrium {
    pub cut: Cut,
    pub kind: SingleKind,
    /// Even-order crossing of the indifference condition.
    pub tangent: bool,
    pub nondisclosure_belief: f64,
    pub sender_welfare: f64,
    pub dm_welfare: f64,
}

/// All equilibria of the game between one sender and the DM, sorted by
/// threshold. Downward-biased senders are solved on the mirrored model and
/// mapped back.
pub fn solve_single(
    model: &SignalModel,
    sender: SenderSpec,
    c: f64,
) -> Result<Vec<SingleEquilibrium>, SolveError> {
    sender.validate(c)?;
    match sender.bias {
        Bias::Up => solve_single_up(model, sender.informed_prob, c, sender),
        Bias::Down => {
            let mirrored = model.mirror();
            let mut eqs = solve_single_up(&mirrored, sender.informed_prob, c, sender)?;
            for eq in &mut eqs {
                eq.cut = eq.cut.mirror();
                eq.nondisclosure_belief = 1.0 - eq.nondisclosure_belief;
                eq.kind = match eq.kind {
                    SingleKind::BoundaryLo => SingleKind::BoundaryHi,
                    SingleKind::BoundaryHi => SingleKind::BoundaryLo,
                    SingleKind::Interior => SingleKind::Interior,
                };
            }
            eqs.sort_by(|a, b| a.cut.threshold.partial_cmp(&b.cut.threshold).unwrap());
            Ok(eqs)
        }
    }
}

/// Upward solve in the frame of `model`; `sender` carries the original bias
/// so welfare is evaluated in the caller's frame.
fn solve_single_up(
    model: &SignalModel,
    p: f64,
    c: f64,
    sender: SenderSpec,
) -> Result<Vec<SingleEquilibrium>, SolveError> {
    let (lo, hi) = model.support();
    let prior = model.prior();
    let mut cuts: Vec<(Cut, SingleKind, bool)> = Vec::new();

    match model {
        SignalModel::Continuous(_) => {
            let g = |s: f64| nondisclosure_belief(model, Cut::at(s), p, prior) - s + c;
            for root in roots::scan_roots(&g, lo, hi, SCAN_POINTS, ROOT_TOL, TANGENT_TOL) {
                if root.x > lo + 1e-9 && root.x < hi - 1e-9 {
                    cuts.push((Cut::at(root.x), SingleKind::Interior, root.tangent));
                }
            }
            if prior <= lo - c + BOUNDARY_SLACK {
                cuts.push((Cut::at(lo), SingleKind::BoundaryLo, false));
            }
            if prior >= hi - c - BOUNDARY_SLACK {
                cuts.push((Cut::at(hi), SingleKind::BoundaryHi, false));
            }
        }
        SignalModel::Discrete(m) => {
            let gap =
                |cut: Cut, s: f64| (s - c) - nondisclosure_belief(model, cut, p, prior);
            for cut in discrete_threshold_solutions(m, &gap, BOUNDARY_SLACK) {
                let kind = classify_discrete(m, cut);
                cuts.push((cut, kind, false));
            }
        }
    }

    let mut out = Vec::with_capacity(cuts.len());
    for (cut, kind, tangent) in cuts {
        let eta = nondisclosure_belief(model, cut, p, prior);
        // Welfare is frame independent for the DM; sender welfare is
        // reported in the sender's own favorable orientation.
        let (orig_model, orig_cut) = match sender.bias {
            Bias::Up => (model.clone(), cut),
            Bias::Down => (model.mirror(), cut.mirror()),
        };
        let dist = welfare::single_posterior_distribution(&orig_model, sender, orig_cut)?;
        out.push(SingleEquilibrium {
            cut,
            kind,
            tangent,
            nondisclosure_belief: eta,
            sender_welfare: sender_welfare(&orig_model, orig_cut, sender, c),
            dm_welfare: welfare::dm_welfare_quadratic(&dist),
        });
    }
    out.sort_by(|a, b| a.cut.threshold.partial_cmp(&b.cut.threshold).unwrap());
    out.dedup_by(|a, b| {
        (a.cut.threshold - b.cut.threshold).abs() < 1e-9
            && (a.cut.marginal_weight - b.cut.marginal_weight).abs() < 1e-9
    });
    Ok(out)
}

fn classify_discrete(m: &DiscreteSignalModel, cut: Cut) -> SingleKind {
    let (lo, hi) = m.support();
    if (cut.threshold - lo).abs() <= 1e-12 && cut.marginal_weight >= 1.0 - 1e-12 {
        SingleKind::BoundaryLo
    } else if (cut.threshold - hi).abs() <= 1e-12 && cut.marginal_weight <= 1e-12 {
        SingleKind::BoundaryHi
    } else {
        SingleKind::Interior
    }
}

/// Enumerates threshold strategies of a discrete model (upward orientation)
/// that satisfy the optimality conditions encoded by `gap`:
/// gap(cut, s) is the disclose-minus-conceal payoff at signal s when the DM
/// conjectures `cut`. Solves for interior marginal weights by bisection.
pub(crate) fn discrete_threshold_solutions<F>(
    m: &DiscreteSignalModel,
    gap: &F,
    slack: f64,
) -> Vec<Cut>
where
    F: Fn(Cut, f64) -> f64,
{
    let values: Vec<f64> = m.atoms().iter().map(|a| a.value).collect();
    let n = values.len();
    let ok = |cut: Cut| -> bool {
        for (j, &s) in values.iter().enumerate() {
            let g = gap(cut, s);
            let marginal = (s - cut.threshold).abs() <= 1e-12;
            let fail = if marginal {
                if cut.marginal_weight >= 1.0 - 1e-12 {
                    g < -slack
                } else if cut.marginal_weight <= 1e-12 {
                    g > slack
                } else {
                    g.abs() > 1e-8
                }
            } else if s > cut.threshold {
                g < -slack
            } else {
                g > slack
            };
            if fail {
                return false;
            }
            let _ = j;
        }
        true
    };

    let mut found: Vec<Cut> = Vec::new();
    // Pure cuts: disclose atoms k.. fully (k = n means conceal everything).
    for k in 0..=n {
        let cut = if k < n {
            Cut::with_weight(values[k], 1.0)
        } else {
            Cut::with_weight(values[n - 1], 0.0)
        };
        if ok(cut) {
            found.push(cut);
        }
    }
    // Marginal randomization at each atom: find interior weights where the
    // marginal type is exactly indifferent.
    for (k, &v) in values.iter().enumerate() {
        let phi = |w: f64| gap(Cut::with_weight(v, w), v);
        let grid = 101;
        let mut prev_w = 0.0;
        let mut prev_g = phi(0.0);
        for i in 1..grid {
            let w = i as f64 / (grid - 1) as f64;
            let g = phi(w);
            if prev_g == 0.0 {
                // handled by endpoint scan below
            } else if g * prev_g < 0.0 {
                let w_star = roots::bisect(&phi, prev_w, w, prev_g, g, 1e-12);
                if w_star > 1e-9 && w_star < 1.0 - 1e-9 {
                    let cut = Cut::with_weight(v, w_star);
                    if ok(cut) {
                        found.push(cut);
                    }
                }
            }
            prev_w = w;
            prev_g = g;
        }
        let _ = k;
    }
    dedup_cuts(&mut found);
    found
}

/// Sorts cuts by concealment (most disclosing first: lower threshold, then
/// higher marginal weight) and removes near-duplicates.
pub(crate) fn dedup_cuts(cuts: &mut Vec<Cut>) {
    cuts.sort_by(|a, b| {
        (a.threshold, -a.marginal_weight)
            .partial_cmp(&(b.threshold, -b.marginal_weight))
            .unwrap()
    });
    cuts.dedup_by(|a, b| {
        (a.threshold - b.threshold).abs() < 1e-9 && (a.marginal_weight - b.marginal_weight).abs() < 1e-7
    });
}

/// Lowest and highest equilibria by threshold; equal when unique.
pub fn extremal_single(
    model: &SignalModel,
    sender: SenderSpec,
    c: f64,
) -> Result<(SingleEquilibrium, SingleEquilibrium), SolveError> {
    let eqs = solve_single(model, sender, c)?;
    let first = eqs.first().ok_or(SolveError::BoundaryNotSupported)?.clone();
    let last = eqs.last().unwrap().clone();
    Ok((first, last))
}

/// Ex-ante sender welfare at a threshold: the prior expectation of the DM
/// belief (the prior itself, by the martingale property) net of expected
/// message costs. Downward senders are evaluated on the mirrored model, so
/// the reported figure is in the sender's favorable orientation.
pub fn sender_welfare(model: &SignalModel, cut: Cut, sender: SenderSpec, c: f64) -> f64 {
    match sender.bias {
        Bias::Up => {
            let kernel = MessageKernel::new(model, cut, SenderSpec::up(sender.informed_prob));
            let disclose_prob = 1.0 - kernel.nd_mass(model.prior());
            model.prior() - disclose_prob * c
        }
        Bias::Down => sender_welfare(
            &model.mirror(),
            cut.mirror(),
            SenderSpec::up(sender.informed_prob),
            c,
        ),
    }
}

/// One row of a single-sender comparative-statics sweep.
#[derive(Debug, Clone, Serialize)]
pub struct SingleSweepRow {
    pub p: f64,
    pub c: f64,
    pub lowest_threshold: f64,
    pub highest_threshold: f64,
    pub lowest_eta: f64,
    pub highest_eta: f64,
    pub dm_welfare_best: f64,
    pub sender_welfare_best: f64,
    /// Either extremal root was a tangent crossing; such rows are skipped by
    /// the monotonicity audit.
    pub tangent: bool,
}

/// Sweeps (p, c) over a grid, checking the comparative statics along the way:
/// extremal thresholds weakly decrease in p and weakly increase in c (upward
/// bias). Violations beyond 1e-7 abort the sweep; smaller ones are noise.
pub fn sweep_single(
    model: &SignalModel,
    bias: Bias,
    ps: &[f64],
    cs: &[f64],
) -> Result<Vec<SingleSweepRow>, SolveError> {
    let mut rows = Vec::with_capacity(ps.len() * cs.len());
    for &p in ps {
        for &c in cs {
            let (low, high) = extremal_single(model, SenderSpec { informed_prob: p, bias }, c)?;
            rows.push(SingleSweepRow {
                p,
                c,
                lowest_threshold: low.cut.threshold,
                highest_threshold: high.cut.threshold,
                lowest_eta: low.nondisclosure_belief,
                highest_eta: high.nondisclosure_belief,
                dm_welfare_best: low.dm_welfare.max(high.dm_welfare),
                sender_welfare_best: low.sender_welfare.max(high.sender_welfare),
                tangent: low.tangent || high.tangent,
            });
        }
    }
    audit_single_monotonicity(&rows, ps, cs, bias)?;
    Ok(rows)
}

const SWEEP_NOISE: f64 = 1e-7;

fn audit_single_monotonicity(
    rows: &[SingleSweepRow],
    ps: &[f64],
    cs: &[f64],
    bias: Bias,
) -> Result<(), SolveError> {
    let idx = |i: usize, j: usize| i * cs.len() + j;
    let dir = match bias {
        Bias::Up => 1.0,
        Bias::Down => -1.0,
    };
    for j in 0..cs.len() {
        for i in 1..ps.len() {
            let (a, b) = (&rows[idx(i - 1, j)], &rows[idx(i, j)]);
            if a.tangent || b.tangent {
                continue;
            }
            // Thresholds move toward less concealment as p rises.
            for (x, y) in [
                (a.lowest_threshold, b.lowest_threshold),
                (a.highest_threshold, b.highest_threshold),
            ] {
                if dir * (y - x) > SWEEP_NOISE {
                    return Err(SolveError::Config(format!(
                        "monotonicity in p violated at p = {}, c = {}: {} -> {}",
                        b.p, b.c, x, y
                    )));
                }
            }
        }
    }
    for i in 0..ps.len() {
        for j in 1..cs.len() {
            let (a, b) = (&rows[idx(i, j - 1)], &rows[idx(i, j)]);
            if a.tangent || b.tangent {
                continue;
            }
            for (x, y) in [
                (a.lowest_threshold, b.lowest_threshold),
                (a.highest_threshold, b.highest_threshold),
            ] {
                if dir * (x - y) > SWEEP_NOISE {
                    return Err(SolveError::Config(format!(
                        "monotonicity in c violated at p = {}, c = {}: {} -> {}",
                        b.p, b.c, x, y
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Equilibrium of the single-sender game when the sender's bias direction is
/// his private information.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct UncertainBiasEquilibrium {
    /// Threshold of the upward type (discloses above).
    pub up_threshold: f64,
    /// Threshold of the downward type (discloses below).
    pub down_threshold: f64,
    pub nondisclosure_belief: f64,
}

/// Pooled nondisclosure belief when an upward type conceals below `s_u` and
/// a downward type conceals above `s_d`.
pub fn uncertain_bias_nd_belief(
    model: &SignalModel,
    p: f64,
    lambda: f64,
    s_u: f64,
    s_d: f64,
) -> Result<f64, ModelError> {
    let m = model
        .as_continuous()
        .ok_or(ModelError::Invariant("uncertain-bias game needs a continuous model".into()))?;
    let prior = m.prior();
    let (f_u, m_u) = (m.cdf_prior(s_u), m.m1_at(s_u));
    let (f_d, m_d) = (m.cdf_prior(s_d), m.m1_at(s_d));
    let num = (1.0 - p) * prior + lambda * p * m_u + (1.0 - lambda) * p * (prior - m_d);
    let den = (1.0 - p) + lambda * p * f_u + (1.0 - lambda) * p * (1.0 - f_d);
    Ok(num / den)
}

/// Solves the uncertain-bias game: interior type thresholds differ by
/// exactly 2c, reducing equilibrium to a one-dimensional fixed point.
/// Multiple interior solutions are all reported; if none is interior the
/// solver refuses rather than guessing at boundary behavior.
pub fn solve_uncertain_bias(
    model: &SignalModel,
    p: f64,
    c: f64,
    lambda: f64,
) -> Result<Vec<UncertainBiasEquilibrium>, SolveError> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(SolveError::Config(format!("lambda = {lambda} outside [0,1]")));
    }
    SenderSpec::up(p).validate(c)?;
    let (lo, hi) = model.support();
    let a = lo.max(lo + 2.0 * c);
    let b = hi.min(hi + 2.0 * c);
    if a >= b {
        return Err(SolveError::BoundaryNotSupported);
    }
    let residual = |s_u: f64| -> f64 {
        let s_d = s_u - 2.0 * c;
        let eta = uncertain_bias_nd_belief(model, p, lambda, s_u, s_d).unwrap_or(f64::NAN);
        s_u - c - eta
    };
    let mut out = Vec::new();
    for root in roots::scan_roots(&residual, a, b, 1025, ROOT_TOL, TANGENT_TOL) {
        let s_u = root.x;
        let s_d = s_u - 2.0 * c;
        let interior = s_u > lo + 1e-9 && s_u < hi - 1e-9 && s_d > lo + 1e-9 && s_d < hi - 1e-9;
        if interior {
            out.push(UncertainBiasEquilibrium {
                up_threshold: s_u,
                down_threshold: s_d,
                nondisclosure_belief: uncertain_bias_nd_belief(model, p, lambda, s_u, s_d)?,
            });
        }
    }
    if out.is_empty() {
        return Err(SolveError::BoundaryNotSupported);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::ContinuousSignalModel;
    use approx::assert_abs_diff_eq;

    fn uniform() -> SignalModel {
        ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into()
    }

    fn four_point() -> SignalModel {
        crate::signal::DiscreteSignalModel::symmetric_four_point(0.7, 0.7).unwrap().into()
    }

    #[test]
    fn zero_cost_unique_at_fixed_point() {
        let eqs = solve_single(&uniform(), SenderSpec::up(0.8), 0.0).unwrap();
        assert_eq!(eqs.len(), 1);
        let fp = (-0.4 + 0.8f64.sqrt()) / 1.6;
        assert_abs_diff_eq!(eqs[0].cut.threshold, fp, epsilon = 1e-8);
        assert_abs_diff_eq!(eqs[0].cut.threshold, 0.30902, epsilon = 1e-5);
        assert_eq!(eqs[0].kind, SingleKind::Interior);
    }

    #[test]
    fn unraveling_guard() {
        assert!(solve_single(&uniform(), SenderSpec::up(1.0), 0.0).is_err());
        assert!(solve_single(&uniform(), SenderSpec::up(1.0), 0.1).is_ok());
    }

    #[test]
    fn no_disclosure_boundary_present_for_large_cost() {
        let eqs = solve_single(&uniform(), SenderSpec::up(0.8), 0.6).unwrap();
        assert!(eqs.iter().any(|e| e.kind == SingleKind::BoundaryHi));
    }

    #[test]
    fn four_point_equilibria_and_welfare() {
        // p = 0.8, c = 0.36: three upward equilibria; the lowest is the
        // DM-best with eta = 0.3067 and welfare -0.1864.
        let eqs = solve_single(&four_point(), SenderSpec::up(0.8), 0.36).unwrap();
        assert_eq!(eqs.len(), 3);
        let best = &eqs[0];
        assert_abs_diff_eq!(best.cut.threshold, 0.7, epsilon = 1e-12);
        assert_abs_diff_eq!(best.cut.marginal_weight, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(best.nondisclosure_belief, 0.3067, epsilon = 5e-5);
        assert_abs_diff_eq!(best.dm_welfare, -0.1864, epsilon = 5e-5);
        assert_abs_diff_eq!(best.sender_welfare, 0.5 - 0.8 * 0.5 * 0.36, epsilon = 1e-12);
        // The middle equilibrium randomizes at the high informative signal.
        assert!(eqs[1].cut.marginal_weight > 0.0 && eqs[1].cut.marginal_weight < 1.0);
        // DM prefers the lowest equilibrium.
        assert!(best.dm_welfare >= eqs[1].dm_welfare - 1e-12);
        assert!(best.dm_welfare >= eqs[2].dm_welfare - 1e-12);
        // Sender ranking is reversed under a disclosure cost.
        assert!(best.sender_welfare <= eqs[2].sender_welfare + 1e-12);
    }

    #[test]
    fn steep_target_curve_gives_multiple_equilibria() {
        let built = crate::signal::model_from_target_curve(
            |s: f64| 0.5 + 1.6 * (s - 0.5) * (s - 0.5),
            |s: f64| 3.2 * (s - 0.5),
            0.0,
            1.0,
        )
        .unwrap();
        let model: SignalModel = built.model.into();
        let eqs =
            solve_single(&model, SenderSpec::up(built.informed_prob), 0.12).unwrap();
        assert!(eqs.len() >= 3, "expected multiplicity, got {}", eqs.len());
        let interior = eqs.iter().filter(|e| e.kind == SingleKind::Interior).count();
        let boundary = eqs.len() - interior;
        assert_eq!(interior, 2);
        assert_eq!(boundary, 1);
    }

    #[test]
    fn mirror_consistency_of_downward_solve() {
        let m = uniform();
        let down = solve_single(&m, SenderSpec::down(0.8), 0.1).unwrap();
        let up_mirrored = solve_single(&m.mirror(), SenderSpec::up(0.8), 0.1).unwrap();
        assert_eq!(down.len(), up_mirrored.len());
        for (d, u) in down.iter().zip(up_mirrored.iter().rev()) {
            assert_abs_diff_eq!(d.cut.threshold, 1.0 - u.cut.threshold, epsilon = 1e-10);
            assert_abs_diff_eq!(
                d.nondisclosure_belief,
                1.0 - u.nondisclosure_belief,
                epsilon = 1e-10
            );
        }
    }

    #[test]
    fn disagreement_direction_matches_cost_sign() {
        for c in [-0.05, 0.05] {
            let eqs = solve_single(&uniform(), SenderSpec::up(0.8), c).unwrap();
            for eq in eqs.iter().filter(|e| e.kind == SingleKind::Interior) {
                let gap = eq.cut.threshold - eq.nondisclosure_belief;
                assert!(gap * c > 0.0, "c = {c}: gap {gap}");
            }
        }
    }

    #[test]
    fn sweep_zero_cost_column_sits_at_fixed_point() {
        let ps = [0.3, 0.5, 0.7, 0.9];
        let cs = [-0.05, 0.0, 0.05];
        let rows = sweep_single(&uniform(), Bias::Up, &ps, &cs).unwrap();
        for row in rows.iter().filter(|r| r.c == 0.0) {
            let fp_eta = nondisclosure_belief(&uniform(), Cut::at(row.lowest_threshold), row.p, 0.5);
            assert_abs_diff_eq!(fp_eta, row.lowest_threshold, epsilon = 1e-7);
            assert_abs_diff_eq!(row.lowest_threshold, row.highest_threshold, epsilon = 1e-8);
        }
    }

    #[test]
    fn uncertain_bias_symmetric_midpoint() {
        let eqs = solve_uncertain_bias(&uniform(), 0.8, 0.0, 0.5).unwrap();
        assert_eq!(eqs.len(), 1);
        assert_abs_diff_eq!(eqs[0].up_threshold, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(eqs[0].down_threshold, 0.5, epsilon = 1e-9);
        assert_abs_diff_eq!(eqs[0].nondisclosure_belief, 0.5, epsilon = 1e-9);
    }

    #[test]
    fn uncertain_bias_threshold_gap_is_twice_cost() {
        for c in [0.04, -0.04] {
            let eqs = solve_uncertain_bias(&uniform(), 0.7, c, 0.4).unwrap();
            for eq in &eqs {
                assert_abs_diff_eq!(eq.up_threshold - eq.down_threshold, 2.0 * c, epsilon = 1e-8);
                // Disclosure gap / overlap interval is nonempty.
                if c > 0.0 {
                    assert!(eq.up_threshold > eq.down_threshold);
                } else {
                    assert!(eq.up_threshold < eq.down_threshold);
                }
            }
        }
    }
}
