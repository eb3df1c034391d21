//! Nonlinear sender utilities over the DM's posterior: best responses where
//! both the disclosure and concealment payoffs are expectations of a
//! monotone transformation, and the curvature machinery classifying when the
//! strategic-substitute/complement directions survive or flip.

use std::sync::Arc;

use crate::belief::{nondisclosure_belief, transform_unchecked, Cut, MessageKernel, SenderSpec};
use crate::error::SolveError;
use crate::num::roots;
use crate::signal::SignalModel;
use crate::single::{ROOT_TOL, SCAN_POINTS, TANGENT_TOL};

use super::{post_lr, BestResponseSet};

/// A sender's utility as a function of the DM's posterior.
#[derive(Clone)]
pub enum UtilitySpec {
    Linear,
    /// gamma * beta^alpha; upward bias requires gamma, alpha of equal sign.
    Power { alpha: f64, gamma: f64 },
    Custom(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl UtilitySpec {
    pub fn eval(&self, beta: f64) -> f64 {
        match self {
            UtilitySpec::Linear => beta,
            UtilitySpec::Power { alpha, gamma } => {
                // Clamp away from 0 so negative exponents stay finite.
                gamma * beta.max(1e-15).powf(*alpha)
            }
            UtilitySpec::Custom(f) => f(beta),
        }
    }

    /// Upward-bias admissibility: the map must be strictly increasing.
    pub fn validate_upward(&self) -> Result<(), SolveError> {
        match self {
            UtilitySpec::Linear => Ok(()),
            UtilitySpec::Power { alpha, gamma } => {
                if (*gamma > 0.0 && *alpha > 0.0) || (*gamma < 0.0 && *alpha < 0.0) {
                    Ok(())
                } else {
                    Err(SolveError::Config(format!(
                        "power utility (alpha = {alpha}, gamma = {gamma}) is not upward biased"
                    )))
                }
            }
            UtilitySpec::Custom(f) => {
                let mut prev = f(1e-3);
                for k in 1..=64 {
                    let b = k as f64 / 64.0 * 0.998 + 1e-3;
                    let v = f(b);
                    if v <= prev - 1e-12 {
                        return Err(SolveError::Config(
                            "custom utility must be strictly increasing".into(),
                        ));
                    }
                    prev = v;
                }
                Ok(())
            }
        }
    }
}

/// Conceal-minus-disclose expected utility gap at own signal `x` when the DM
/// conjectures threshold `x` for sender i (upward) and sender j plays
/// `cut_j`; the disclosure payoff is the expectation of V over the DM's
/// posterior after disclosure, which still varies with j's message.
fn utility_gap_at(
    model: &SignalModel,
    p_i: f64,
    spec_j: SenderSpec,
    cut_j: Cut,
    v: &UtilitySpec,
    cost: f64,
    x: f64,
) -> f64 {
    let prior = model.prior();
    let cut_i = Cut::at(x);
    let eta_i = nondisclosure_belief(model, cut_i, p_i, prior);
    let kernel = MessageKernel::new(model, cut_j, spec_j);
    let (j1, j0) = kernel.nd_probs();
    let nd = kernel.nd_mass(x);
    let beta_phi = post_lr(x, j1, j0);
    let conceal = nd * v.eval(transform_unchecked(beta_phi, eta_i, x))
        + kernel.expect_disclosure_precise(
            x,
            |t| {
                let beta = transform_unchecked(t, x, prior);
                v.eval(transform_unchecked(beta, eta_i, x))
            },
            1e-11,
        );
    let disclose = nd * v.eval(beta_phi)
        + kernel.expect_disclosure_precise(x, |t| v.eval(transform_unchecked(t, x, prior)), 1e-11);
    conceal - (disclose - cost)
}

/// Best responses of an upward sender with utility `v` to a mechanical
/// opponent threshold, as the solutions of the nonlinear indifference.
pub fn nonlinear_best_response(
    model: &SignalModel,
    cost: f64,
    p_i: f64,
    spec_j: SenderSpec,
    cut_j: Cut,
    v: &UtilitySpec,
) -> Result<BestResponseSet, SolveError> {
    v.validate_upward()?;
    SenderSpec::up(p_i).validate(cost)?;
    spec_j.validate(cost)?;
    let (lo, hi) = model.support();
    let h = |x: f64| utility_gap_at(model, p_i, spec_j, cut_j, v, cost, x);
    let mut all: Vec<f64> = Vec::new();
    for r in roots::scan_roots(&h, lo, hi, SCAN_POINTS / 4, ROOT_TOL, TANGENT_TOL) {
        if r.x > lo + 1e-9 && r.x < hi - 1e-9 {
            all.push(r.x);
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
    Ok(BestResponseSet { smallest, largest, all })
}

/// The posterior-shift utility gap W(beta, r) = V(T(beta, r)) - V(beta) for
/// the power family, where T(beta, r) = beta / (beta + (1 - beta) r) carries
/// a posterior across interim beliefs with odds ratio r.
pub fn power_shift_gap(beta: f64, r: f64, alpha: f64) -> f64 {
    let t = beta / (beta + (1.0 - beta) * r);
    t.max(1e-300).powf(alpha) - beta.max(1e-300).powf(alpha)
}

/// Closed-form sign indicator of the curvature of W(., r): the second
/// derivative of the power-family gap has the sign of
/// alpha [ (1 - alpha) + r (2 beta (r - 1) - r (1 - alpha)) / (beta + (1 - beta) r)^(alpha + 2) ].
pub fn power_gap_curvature(beta: f64, alpha: f64, r: f64) -> f64 {
    let denom = (beta + (1.0 - beta) * r).powf(alpha + 2.0);
    alpha * ((1.0 - alpha) + r * (2.0 * beta * (r - 1.0) - r * (1.0 - alpha)) / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::Bias;
    use crate::signal::ContinuousSignalModel;
    use approx::assert_abs_diff_eq;

    fn interior_model() -> SignalModel {
        // Support away from the extremes so negative powers stay tame.
        ContinuousSignalModel::uniform_belief(0.1, 0.9).unwrap().into()
    }

    #[test]
    fn zero_cost_irrelevance_for_any_monotone_utility() {
        let m = interior_model();
        let single = crate::single::solve_single(&m, SenderSpec::up(0.8), 0.0).unwrap();
        let fp = single[0].cut.threshold;
        for v in [
            UtilitySpec::Power { alpha: 2.0, gamma: 1.0 },
            UtilitySpec::Power { alpha: 0.5, gamma: 1.0 },
            UtilitySpec::Power { alpha: -1.5, gamma: -1.0 },
        ] {
            for y in [0.2, 0.5, 0.85] {
                let br = nonlinear_best_response(
                    &m,
                    0.0,
                    0.8,
                    SenderSpec { informed_prob: 0.7, bias: Bias::Up },
                    Cut::at(y),
                    &v,
                )
                .unwrap();
                assert_abs_diff_eq!(br.smallest, fp, epsilon = 2e-6);
                assert_abs_diff_eq!(br.largest, fp, epsilon = 2e-6);
            }
        }
    }

    #[test]
    fn curvature_indicator_boundary_values() {
        // At beta = 0 the indicator reduces to alpha (1 - alpha)(1 - r^-alpha).
        for (alpha, r) in [(0.5, 2.0), (0.5, 0.8), (-1.5, 2.0), (-0.5, 0.5)] {
            let direct = power_gap_curvature(0.0, alpha, r);
            let closed = alpha * (1.0 - alpha) * (1.0 - r.powf(-alpha));
            assert_abs_diff_eq!(direct, closed, epsilon = 1e-12);
        }
        // alpha = 1 zeroes the boundary value for every r.
        assert_abs_diff_eq!(power_gap_curvature(0.0, 1.0, 3.0), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn curvature_sign_matches_second_difference() {
        let h = 1e-4;
        let cases = [
            (0.5, 2.0, 1.0),  // 0 < alpha <= 1, r > 1: convex
            (0.5, 0.8, -1.0), // 0 < alpha <= 1, bound < r < 1: concave
            (-1.5, 2.0, 1.0), // alpha < -1, r > 1: convex
            (-0.5, 0.5, -1.0) // alpha < 0, r < 1: concave
        ];
        for (alpha, r, want) in cases {
            for k in 1..20 {
                let beta = 0.04 + 0.92 * k as f64 / 20.0;
                let w = |b: f64| power_shift_gap(b, r, alpha);
                let second = (w(beta + h) - 2.0 * w(beta) + w(beta - h)) / (h * h);
                let indicator = power_gap_curvature(beta, alpha, r);
                assert!(
                    second * want > 0.0 && indicator * want > 0.0,
                    "alpha={alpha} r={r} beta={beta}: fd={second}, H={indicator}"
                );
            }
        }
    }

    #[test]
    fn substitute_and_complement_directions_under_disclosure_cost() {
        let m = interior_model();
        let c = 0.03;
        // More informative opponent: lower cut, higher p.
        let weak = (SenderSpec::up(0.4), Cut::at(0.8));
        let strong = (SenderSpec::up(0.8), Cut::at(0.4));
        // Concave-ish gains (0 < alpha <= 1): substitutes.
        let v = UtilitySpec::Power { alpha: 0.7, gamma: 1.0 };
        let br_weak = nonlinear_best_response(&m, c, 0.7, weak.0, weak.1, &v).unwrap();
        let br_strong = nonlinear_best_response(&m, c, 0.7, strong.0, strong.1, &v).unwrap();
        assert!(br_strong.smallest >= br_weak.smallest - 1e-7);
        assert!(br_strong.largest >= br_weak.largest - 1e-7);
        // Sharply convex losses (alpha < -1, gamma < 0): complements.
        let v = UtilitySpec::Power { alpha: -2.0, gamma: -1.0 };
        let br_weak = nonlinear_best_response(&m, c, 0.7, weak.0, weak.1, &v).unwrap();
        let br_strong = nonlinear_best_response(&m, c, 0.7, strong.0, strong.1, &v).unwrap();
        assert!(br_strong.smallest <= br_weak.smallest + 1e-7);
        assert!(br_strong.largest <= br_weak.largest + 1e-7);
    }
}
