//! Precision-indexed families of belief distributions and the derivative of
//! the nondisclosure belief with respect to precision.
//!
//! Higher precision must rotate the belief distribution around the prior:
//! sign[dF/drho] = sign[prior - s].

use std::sync::Arc;

use statrs::distribution::{Beta, ContinuousCDF};
use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::gamma::digamma;

use crate::belief::{nondisclosure_belief, Cut};
use crate::error::ModelError;
use crate::num::quad;
use crate::signal::{ContinuousSignalModel, SignalModel};

type BuildFn = Arc<dyn Fn(f64) -> Result<ContinuousSignalModel, ModelError> + Send + Sync>;
type DerivFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A map rho -> ContinuousSignalModel, optionally with a closed-form
/// derivative of the CDF in rho.
#[derive(Clone)]
pub struct PrecisionFamily {
    build: BuildFn,
    cdf_rho_deriv: Option<DerivFn>,
}

impl PrecisionFamily {
    /// The symmetric Beta family at prior 1/2 with density proportional to
    /// [s(1-s)]^(1/rho - 1); higher rho spreads beliefs toward the extremes.
    pub fn symmetric_beta() -> Self {
        Self {
            build: Arc::new(beta_precision_model),
            cdf_rho_deriv: Some(Arc::new(beta_cdf_rho_derivative)),
        }
    }

    /// A user-supplied family; dF/drho falls back to a central difference.
    pub fn from_map<F>(build: F) -> Self
    where
        F: Fn(f64) -> Result<ContinuousSignalModel, ModelError> + Send + Sync + 'static,
    {
        Self { build: Arc::new(build), cdf_rho_deriv: None }
    }

    pub fn model(&self, rho: f64) -> Result<ContinuousSignalModel, ModelError> {
        (self.build)(rho)
    }

    /// dF^rho(s)/drho, closed form when available.
    pub fn cdf_rho_derivative(&self, rho: f64, s: f64) -> Result<f64, ModelError> {
        if let Some(d) = &self.cdf_rho_deriv {
            return Ok(d(rho, s));
        }
        let h = (1e-4 * rho.abs()).max(1e-6);
        let up = self.model(rho + h)?;
        let dn = self.model(rho - h)?;
        let v = (up.cdf_prior(s) - dn.cdf_prior(s)) / (2.0 * h);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(ModelError::NonFiniteDerivative(rho))
        }
    }
}

/// The symmetric Beta belief model at prior 1/2 for precision rho > 0.
///
/// Cumulative primitives are exact: with a = 1/rho the belief density is
/// Beta(a, a), and t f(t) and t^2 f(t) integrate to scaled regularized
/// incomplete beta functions of shifted parameters.
pub fn beta_precision_model(rho: f64) -> Result<ContinuousSignalModel, ModelError> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(ModelError::Domain { name: "rho", value: rho });
    }
    let a = 1.0 / rho;
    let lnb = ln_beta(a, a);
    let density = Arc::new(move |s: f64| {
        if s <= 0.0 || s >= 1.0 {
            0.0
        } else {
            ((a - 1.0) * (s.ln() + (-s).ln_1p()) - lnb).exp()
        }
    });
    let cdf = Arc::new(move |s: f64| beta_reg(a, a, s.clamp(0.0, 1.0)));
    let m1 = Arc::new(move |s: f64| 0.5 * beta_reg(a + 1.0, a, s.clamp(0.0, 1.0)));
    let m2 = Arc::new(move |s: f64| {
        0.5 * (a + 1.0) / (2.0 * a + 1.0) * beta_reg(a + 2.0, a, s.clamp(0.0, 1.0))
    });
    let dist = Beta::new(a, a).map_err(|_| ModelError::Domain { name: "rho", value: rho })?;
    // The library inverse is only good to ~1e-7; polish with Newton steps
    // against the exact CDF and density.
    let quantile = move |q: f64| -> f64 {
        let mut x = dist.inverse_cdf(q).clamp(1e-300, 1.0 - 1e-16);
        for _ in 0..3 {
            let f = ((a - 1.0) * (x.ln() + (-x).ln_1p()) - lnb).exp();
            if !(f.is_finite() && f > 0.0) {
                break;
            }
            let step = (beta_reg(a, a, x) - q) / f;
            x = (x - step).clamp(0.0, 1.0);
        }
        x
    };
    Ok(ContinuousSignalModel::from_exact_parts(0.5, 0.0, 1.0, density, cdf, m1, m2)?
        .with_quantile(quantile))
}

/// Closed-form dF/drho for the symmetric Beta family, via
/// dF/da = (1/B) ∫ k(t) ln(t(1-t)) dt - F * (2 psi(a) - 2 psi(2a))
/// and the chain rule da/drho = -1/rho^2.
fn beta_cdf_rho_derivative(rho: f64, s: f64) -> f64 {
    let a = 1.0 / rho;
    let s = s.clamp(0.0, 1.0);
    if s == 0.0 || s == 1.0 {
        return 0.0;
    }
    let lnb = ln_beta(a, a);
    let integrand = |t: f64| {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        let lt = t.ln() + (-t).ln_1p();
        ((a - 1.0) * lt - lnb).exp() * lt
    };
    let tail = quad::integrate(&integrand, 0.0, s, 1e-12);
    let df_da = tail - beta_reg(a, a, s) * 2.0 * (digamma(a) - digamma(2.0 * a));
    df_da * (-1.0 / (rho * rho))
}

/// Both routes to d(eta)/d(rho) at a fixed threshold and informedness.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionDerivative {
    /// Richardson-extrapolated central finite difference in rho.
    pub finite_difference: f64,
    /// The sign-form evaluated by quadrature:
    /// p / (1 - p + p F) * [(s - eta) dF(s) - ∫ dF].
    pub quadrature_form: f64,
}

/// Derivative of the nondisclosure belief in precision, computed two ways.
///
/// The threshold must be interior; at the support boundary the belief is
/// pinned at the prior and the derivative is zero.
pub fn precision_nd_derivative(
    family: &PrecisionFamily,
    s_hat: f64,
    p: f64,
    rho: f64,
) -> Result<PrecisionDerivative, ModelError> {
    let model = family.model(rho)?;
    let prior = model.prior();
    let (lo, hi) = model.support();
    if s_hat <= lo || s_hat >= hi {
        return Ok(PrecisionDerivative { finite_difference: 0.0, quadrature_form: 0.0 });
    }

    let eta_at = |r: f64| -> Result<f64, ModelError> {
        let m = family.model(r)?;
        Ok(nondisclosure_belief(&SignalModel::Continuous(m), Cut::at(s_hat), p, prior))
    };
    let fd_step = |h: f64| -> Result<f64, ModelError> {
        Ok((eta_at(rho + h)? - eta_at(rho - h)?) / (2.0 * h))
    };
    // Step adapted to the scale of rho, halved once for extrapolation.
    let h = (1e-3 * rho.abs()).max(1e-5).min(0.49 * rho);
    let d1 = fd_step(h)?;
    let d2 = fd_step(0.5 * h)?;
    let finite_difference = (4.0 * d2 - d1) / 3.0;
    if !finite_difference.is_finite() {
        return Err(ModelError::NonFiniteDerivative(rho));
    }

    let eta = nondisclosure_belief(&SignalModel::Continuous(model.clone()), Cut::at(s_hat), p, prior);
    let df_at = |s: f64| family.cdf_rho_derivative(rho, s).unwrap_or(f64::NAN);
    let integral = quad::integrate(&df_at, lo, s_hat, 1e-10);
    let front = p / (1.0 - p + p * model.cdf_prior(s_hat));
    let quadrature_form = front * ((s_hat - eta) * df_at(s_hat) - integral);
    if !quadrature_form.is_finite() {
        return Err(ModelError::NonFiniteDerivative(rho));
    }
    Ok(PrecisionDerivative { finite_difference, quadrature_form })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rho_one_is_uniform() {
        let m = beta_precision_model(1.0).unwrap();
        for k in 1..20 {
            let s = k as f64 / 20.0;
            assert_abs_diff_eq!(m.density_at(s), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(m.cdf_prior(s), s, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(m.prior(), 0.5);
        assert!(beta_precision_model(0.0).is_err());
        assert!(beta_precision_model(-1.0).is_err());
    }

    #[test]
    fn beta_mean_is_half_for_any_rho() {
        for rho in [0.3, 0.8, 1.0, 1.7, 3.0] {
            let m = beta_precision_model(rho).unwrap();
            assert_abs_diff_eq!(m.m1_at(1.0), 0.5, epsilon = 1e-10);
        }
    }

    #[test]
    fn rotation_order_around_prior() {
        use rand::Rng;
        let mut rng = crate::num::rng_from_seed(17);
        for _ in 0..10 {
            let a: f64 = rng.gen_range(0.4..2.4);
            let b: f64 = rng.gen_range(0.4..2.4);
            let (rho_lo, rho_hi) = (a.min(b), a.max(b) + 0.05);
            let coarse = beta_precision_model(rho_lo).unwrap();
            let sharp = beta_precision_model(rho_hi).unwrap();
            for k in 1..100 {
                let s = k as f64 / 100.0;
                let gap = sharp.cdf_prior(s) - coarse.cdf_prior(s);
                if (s - 0.5).abs() > 1e-9 {
                    assert!(
                        gap * (0.5 - s) >= -1e-12,
                        "rotation violated at s = {s} for ({rho_lo}, {rho_hi}): gap = {gap}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_cdf_derivative_matches_finite_difference() {
        for (rho, s) in [(1.0, 0.3), (0.7, 0.2), (1.5, 0.45), (1.0, 0.7)] {
            let closed = beta_cdf_rho_derivative(rho, s);
            let h = 1e-5 * rho;
            let up = beta_precision_model(rho + h).unwrap().cdf_prior(s);
            let dn = beta_precision_model(rho - h).unwrap().cdf_prior(s);
            let fd = (up - dn) / (2.0 * h);
            assert_abs_diff_eq!(closed, fd, epsilon = 1e-6);
        }
    }

    #[test]
    fn derivative_routes_agree_and_are_negative_below_prior() {
        let family = PrecisionFamily::symmetric_beta();
        let d = precision_nd_derivative(&family, 0.3, 0.8, 1.0).unwrap();
        assert!(d.finite_difference < 0.0);
        assert!(d.quadrature_form < 0.0);
        let rel = (d.finite_difference - d.quadrature_form).abs() / d.quadrature_form.abs();
        assert!(rel < 1e-4, "relative gap {rel}");
    }

    #[test]
    fn boundary_threshold_pins_derivative_to_zero() {
        let family = PrecisionFamily::symmetric_beta();
        let d = precision_nd_derivative(&family, 0.0, 0.8, 1.0).unwrap();
        assert_eq!(d.finite_difference, 0.0);
        assert_eq!(d.quadrature_form, 0.0);
    }
}
