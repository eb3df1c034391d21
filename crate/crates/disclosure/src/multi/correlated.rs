//! Perfectly correlated signals: a single draw that each sender observes
//! independently with his own probability. Same-bias games reduce to a
//! single-sender problem with a pooled informedness probability; opposing
//! biases need the joint nondisclosure belief, which is no longer separable.

use serde::Serialize;

use crate::belief::{Bias, Cut, SenderSpec};
use crate::error::SolveError;
use crate::num::roots;
use crate::signal::{SignalModel, State};
use crate::single::{solve_single, SingleEquilibrium, ROOT_TOL, TANGENT_TOL};

use super::{post_lr, ThresholdProfile};

#[derive(Debug, Clone, Serialize)]
pub enum CorrelatedSolution {
    /// Both senders share a bias: they use a common threshold, solved as a
    /// single sender informed with probability p1 + p2 - p1 p2.
    SameBias { effective_p: f64, equilibria: Vec<SingleEquilibrium> },
    /// Opposing biases: interior profiles of (upward cut, downward cut) in
    /// game-frame coordinates, with the joint nondisclosure belief.
    Opposing { profiles: Vec<OpposingEquilibrium> },
}

#[derive(Debug, Clone, Serialize)]
pub struct OpposingEquilibrium {
    pub profile: ThresholdProfile,
    pub joint_nd_belief: f64,
}

/// Joint nondisclosure belief when the upward sender conceals below `t_up`
/// and the downward one conceals above `t_down`, decomposing the both-empty
/// event over the informedness pattern.
pub fn correlated_nd_belief(
    model: &SignalModel,
    p_up: f64,
    p_down: f64,
    t_up: f64,
    t_down: f64,
) -> f64 {
    let m = model.as_continuous().expect("correlated solver requires a continuous model");
    let mass = |state: State| {
        let f_up = m.cond_cdf(t_up, state);
        let f_down = m.cond_cdf(t_down, state);
        let overlap = if t_up > t_down { f_up - f_down } else { 0.0 };
        (1.0 - p_up) * (1.0 - p_down)
            + p_up * (1.0 - p_down) * f_up
            + (1.0 - p_up) * p_down * (1.0 - f_down)
            + p_up * p_down * overlap
    };
    post_lr(m.prior(), mass(State::High), mass(State::Low))
}

/// Solves the perfectly-correlated variant. `senders[0]` and `senders[1]`
/// keep their caller-side order in the returned profiles.
pub fn solve_correlated(
    model: &SignalModel,
    cost: f64,
    senders: [SenderSpec; 2],
) -> Result<CorrelatedSolution, SolveError> {
    for s in &senders {
        s.validate(cost)?;
    }
    if senders[0].bias == senders[1].bias {
        let (p1, p2) = (senders[0].informed_prob, senders[1].informed_prob);
        let effective_p = p1 + p2 - p1 * p2;
        let pooled = SenderSpec { informed_prob: effective_p, bias: senders[0].bias };
        let equilibria = solve_single(model, pooled, cost)?;
        return Ok(CorrelatedSolution::SameBias { effective_p, equilibria });
    }
    if model.as_continuous().is_none() {
        return Err(SolveError::Config(
            "opposing-bias correlated games are solved on continuous models".into(),
        ));
    }

    // Normalize: sender `u` is the upward one, `d` the downward one.
    let (u, d) = if senders[0].bias == Bias::Up { (0usize, 1usize) } else { (1usize, 0usize) };
    let (p_u, p_d) = (senders[u].informed_prob, senders[d].informed_prob);
    let (lo, hi) = model.support();

    // Interior conditions, using that in any interior profile the marginal
    // concealer faces a deterministic opponent message: under a disclosure
    // cost the concealment regions overlap (t_down < t_up) and the opponent
    // stays silent for sure; under a concealment cost the disclosure regions
    // overlap and the opponent discloses unless uninformed.
    let up_residual = |t_up: f64, t_down: f64| -> f64 {
        let eta = correlated_nd_belief(model, p_u, p_d, t_up, t_down);
        let phi_prob = if cost > 0.0 { 1.0 } else { 1.0 - p_d };
        (t_up - eta) - cost / phi_prob
    };
    let down_residual = |t_up: f64, t_down: f64| -> f64 {
        let eta = correlated_nd_belief(model, p_u, p_d, t_up, t_down);
        let phi_prob = if cost > 0.0 { 1.0 } else { 1.0 - p_u };
        (eta - t_down) - cost / phi_prob
    };

    let mut profiles = Vec::new();
    if cost == 0.0 {
        // Both conditions collapse to a common fixed point t = eta(t, t).
        let g = |t: f64| correlated_nd_belief(model, p_u, p_d, t, t) - t;
        for r in roots::scan_roots(&g, lo, hi, 2049, ROOT_TOL, TANGENT_TOL) {
            if r.x > lo + 1e-9 && r.x < hi - 1e-9 {
                profiles.push(build_profile(model, p_u, p_d, u, r.x, r.x));
            }
        }
    } else {
        // Nested scan: solve the downward condition for t_down given t_up,
        // then search the upward residual.
        let solve_down = |t_up: f64| -> Option<f64> {
            let f = |t_down: f64| down_residual(t_up, t_down);
            let rts = roots::scan_roots(&f, lo, hi, 513, ROOT_TOL, TANGENT_TOL);
            rts.iter().map(|r| r.x).find(|&x| x > lo + 1e-9 && x < hi - 1e-9)
        };
        let outer = |t_up: f64| -> f64 {
            match solve_down(t_up) {
                Some(t_down) => up_residual(t_up, t_down),
                None => f64::NAN,
            }
        };
        for r in roots::scan_roots(&outer, lo, hi, 513, ROOT_TOL, TANGENT_TOL) {
            if r.x > lo + 1e-9 && r.x < hi - 1e-9 {
                if let Some(t_down) = solve_down(r.x) {
                    // Consistency of the assumed ordering with the cost sign.
                    let ordered = if cost > 0.0 { t_down < r.x } else { r.x < t_down };
                    if ordered {
                        profiles.push(build_profile(model, p_u, p_d, u, r.x, t_down));
                    }
                }
            }
        }
    }
    if profiles.is_empty() {
        return Err(SolveError::BoundaryNotSupported);
    }
    Ok(CorrelatedSolution::Opposing { profiles })
}

fn build_profile(
    model: &SignalModel,
    p_u: f64,
    p_d: f64,
    up_index: usize,
    t_up: f64,
    t_down: f64,
) -> OpposingEquilibrium {
    let mut cuts = [Cut::at(t_up), Cut::at(t_down)];
    if up_index == 1 {
        cuts.swap(0, 1);
    }
    OpposingEquilibrium {
        profile: ThresholdProfile::new(cuts.to_vec()),
        joint_nd_belief: correlated_nd_belief(model, p_u, p_d, t_up, t_down),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::ContinuousSignalModel;
    use approx::assert_abs_diff_eq;

    fn uniform() -> SignalModel {
        ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap().into()
    }

    #[test]
    fn same_bias_pools_informedness() {
        let m = uniform();
        let sol = solve_correlated(&m, 0.0, [SenderSpec::up(0.5), SenderSpec::up(0.5)]).unwrap();
        match sol {
            CorrelatedSolution::SameBias { effective_p, equilibria } => {
                assert_abs_diff_eq!(effective_p, 0.75, epsilon = 1e-15);
                let direct = solve_single(&m, SenderSpec::up(0.75), 0.0).unwrap();
                assert_abs_diff_eq!(
                    equilibria[0].cut.threshold,
                    direct[0].cut.threshold,
                    epsilon = 1e-12
                );
                // More disclosure than either sender alone.
                let solo = solve_single(&m, SenderSpec::up(0.5), 0.0).unwrap();
                assert!(equilibria[0].cut.threshold < solo[0].cut.threshold - 1e-6);
            }
            CorrelatedSolution::Opposing { .. } => panic!("expected the pooled reduction"),
        }
    }

    #[test]
    fn opposing_zero_cost_less_informative_than_solo() {
        let m = uniform();
        let sol = solve_correlated(&m, 0.0, [SenderSpec::up(0.6), SenderSpec::down(0.7)]).unwrap();
        let profiles = match sol {
            CorrelatedSolution::Opposing { profiles } => profiles,
            _ => panic!("expected opposing-bias solve"),
        };
        assert_eq!(profiles.len(), 1);
        let eq = &profiles[0];
        let up_solo = solve_single(&m, SenderSpec::up(0.6), 0.0).unwrap()[0].cut.threshold;
        let down_solo = solve_single(&m, SenderSpec::down(0.7), 0.0).unwrap()[0].cut.threshold;
        // Upward sender conceals more; downward sender likewise.
        assert!(eq.profile.cuts[0].threshold > up_solo + 1e-6);
        assert!(eq.profile.cuts[1].threshold < down_solo - 1e-6);
        // Both share the joint nondisclosure belief as their threshold.
        assert_abs_diff_eq!(eq.profile.cuts[0].threshold, eq.joint_nd_belief, epsilon = 1e-8);
        assert_abs_diff_eq!(eq.profile.cuts[1].threshold, eq.joint_nd_belief, epsilon = 1e-8);
    }
}
