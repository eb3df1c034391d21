//! Construction of a signal model whose nondisclosure-belief curve matches a
//! given target.
//!
//! Given a quasiconvex target psi with psi(lo) = psi(hi) in (0,1) and
//! sign[s - psi(s)] = sign[psi'(s)], the nondisclosure-belief identity turns
//! into a first-order ODE for the scaled message mass
//! H(s) = (1 - p + p F(s)) / (1 - p):
//!     H'(s) = psi'(s) H(s) / (s - psi(s)),  H(lo) = 1,
//! after which p = 1 - 1/H(hi) and the belief density is (1-p) H' / p.

use std::sync::Arc;

use crate::error::ModelError;
use crate::num::interp::CubicHermite;
use crate::num::{ode, roots};
use crate::signal::ContinuousSignalModel;

/// Half-width of the window excluded around the fixed point of psi, where
/// the ODE right-hand side is a 0/0 limit.
const SINGULARITY_WINDOW: f64 = 1e-5;

/// A model constructed from a target nondisclosure curve.
#[derive(Debug, Clone)]
pub struct TargetCurveModel {
    pub prior: f64,
    pub informed_prob: f64,
    pub model: ContinuousSignalModel,
}

/// Builds (prior, p, model) such that the nondisclosure belief of the model
/// at informedness p reproduces `psi` pointwise.
///
/// Preconditions: psi continuously differentiable with psi(lo) = psi(hi) in
/// (0,1) and sign[s - psi(s)] = sign[psi'(s)]; a constant psi is degenerate
/// (it would require p = 0).
pub fn model_from_target_curve<F, G>(
    psi: F,
    psi_prime: G,
    lo: f64,
    hi: f64,
) -> Result<TargetCurveModel, ModelError>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
    G: Fn(f64) -> f64 + Send + Sync + 'static,
{
    if !(0.0 <= lo && lo < hi && hi <= 1.0) {
        return Err(ModelError::Invariant(format!("support [{lo}, {hi}] invalid")));
    }
    let prior = psi(lo);
    if !(0.0 < prior && prior < 1.0) {
        return Err(ModelError::DegenerateCurve("psi(lo) must lie in (0,1)"));
    }
    if (psi(hi) - prior).abs() > 1e-8 {
        return Err(ModelError::DegenerateCurve("psi(lo) and psi(hi) must coincide"));
    }

    // Sign precondition on a grid, skipping the neighborhood of the fixed
    // point where both factors vanish.
    for &s in roots::grid(lo, hi, 513).iter() {
        let gap = s - psi(s);
        let slope = psi_prime(s);
        if gap.abs() > 1e-6 && slope.abs() > 1e-6 && gap * slope < 0.0 {
            return Err(ModelError::InvalidCurve(s));
        }
    }
    // Locate the fixed point of psi (unique under the sign condition).
    let crossings = roots::scan_roots(&|s| s - psi(s), lo, hi, 1025, 1e-12, 1e-9);
    let star = crossings
        .first()
        .map(|r| r.x)
        .ok_or(ModelError::DegenerateCurve("psi has no fixed point on the support"))?;

    let rhs = move |s: f64, h: f64| -> f64 {
        let gap = s - psi(s);
        if gap.abs() < 1e-9 {
            // L'Hopital limit at the fixed point: psi'' / (1 - psi').
            let d2 = (psi_prime(s + 1e-6) - psi_prime(s - 1e-6)) / 2e-6;
            return d2 * h / (1.0 - psi_prime(s));
        }
        psi_prime(s) * h / gap
    };

    // Integrate up to the singular window, bridge it, then continue.
    let mut samples: Vec<(f64, f64)> = Vec::new();
    let bridge_lo = (star - SINGULARITY_WINDOW).max(lo);
    let bridge_hi = (star + SINGULARITY_WINDOW).min(hi);
    let mut h_val = 1.0;
    if bridge_lo > lo {
        let seg = ode::integrate_adaptive(&rhs, lo, bridge_lo, h_val, 1e-9)?;
        h_val = seg.last().unwrap().1;
        samples.extend(seg);
    } else {
        samples.push((lo, h_val));
    }
    if bridge_hi < hi {
        // Trapezoidal bridge of H' across the window.
        let width = bridge_hi - bridge_lo;
        h_val += 0.5 * width * (rhs(bridge_lo, h_val) + rhs(bridge_hi, h_val));
        let seg = ode::integrate_adaptive(&rhs, bridge_hi, hi, h_val, 1e-9)?;
        samples.extend(seg);
    }

    let h_hi = samples.last().unwrap().1;
    if h_hi <= 1.0 + 1e-9 {
        return Err(ModelError::DegenerateCurve("psi is flat: implied message mass gives p = 0"));
    }
    let informed_prob = 1.0 - 1.0 / h_hi;

    // Interpolate H and expose the implied belief density, with the 0/0
    // window handled by the same limit as the ODE right-hand side.
    let xs: Vec<f64> = samples.iter().map(|&(s, _)| s).collect();
    let ys: Vec<f64> = samples.iter().map(|&(_, h)| h).collect();
    let ds: Vec<f64> = samples.iter().map(|&(s, h)| rhs(s, h)).collect();
    let h_interp = Arc::new(CubicHermite::new(xs, ys, ds));
    let scale = 1.0 / (h_hi - 1.0);
    let density = move |s: f64| (rhs(s, h_interp.eval(s)) * scale).max(0.0);

    let model = ContinuousSignalModel::from_belief_density(density, lo, hi, Some(prior))
        .map_err(|e| match e {
            ModelError::Invariant(msg) => {
                ModelError::Invariant(format!("target-curve construction inconsistent: {msg}"))
            }
            other => other,
        })?;
    Ok(TargetCurveModel { prior, informed_prob, model })
}
