//! Continuous two-state signal models.
//!
//! A model is parametrized by the unconditional (prior-weighted) density of
//! private beliefs on its support, together with the prior. State-conditional
//! densities are always derived from the identity "signal = private belief":
//! f(s|1) = s f(s) / prior and f(s|0) = (1-s) f(s) / (1-prior), so posterior
//! consistency holds by construction rather than by runtime check.

use std::fmt;
use std::sync::Arc;

use crate::error::ModelError;
use crate::num::interp::CubicHermite;
use crate::num::quad::{self, CompositeRule};

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Which state a conditional quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum State {
    Low,
    High,
}

#[derive(Clone)]
pub struct ContinuousSignalModel {
    prior: f64,
    lo: f64,
    hi: f64,
    density: RealFn,
    cdf: RealFn,
    // Partial moments of the belief density: m1(s) = ∫ t f(t) dt,
    // m2(s) = ∫ t^2 f(t) dt, both from lo to s.
    m1: RealFn,
    m2: RealFn,
    m2_total: f64,
    /// Closed-form quantile when the family has one; bisection otherwise.
    quantile: Option<RealFn>,
    rule: Arc<CompositeRule>,
}

impl fmt::Debug for ContinuousSignalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ContinuousSignalModel")
            .field("prior", &self.prior)
            .field("support", &(self.lo, self.hi))
            .finish()
    }
}

const SCAN_PANELS: usize = 96;

impl ContinuousSignalModel {
    /// Builds a model from closed-form cumulative primitives.
    ///
    /// `cdf`, `m1` and `m2` must be the cumulative mass and first two partial
    /// moments of `density` from `lo`. Endpoint consistency and the
    /// martingale property are verified to 1e-8.
    pub fn from_exact_parts(
        prior: f64,
        lo: f64,
        hi: f64,
        density: RealFn,
        cdf: RealFn,
        m1: RealFn,
        m2: RealFn,
    ) -> Result<Self, ModelError> {
        check_support(lo, hi)?;
        check_probability("prior", prior)?;
        let model = Self {
            prior,
            lo,
            hi,
            density,
            m2_total: m2(hi),
            cdf,
            m1,
            m2,
            quantile: None,
            rule: Arc::new(CompositeRule::new(lo, hi, SCAN_PANELS)),
        };
        model.validate()?;
        Ok(model)
    }

    /// Attaches a closed-form quantile (inverse of the prior CDF).
    pub fn with_quantile<Q>(mut self, quantile: Q) -> Self
    where
        Q: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.quantile = Some(Arc::new(quantile));
        self
    }

    /// Builds a model by tabulating the cumulative primitives of `density`
    /// with adaptive per-cell quadrature. The density is normalized; if
    /// `prior` is given it is checked against the normalized mean, otherwise
    /// the mean becomes the prior.
    pub fn from_belief_density<F>(
        density: F,
        lo: f64,
        hi: f64,
        prior: Option<f64>,
    ) -> Result<Self, ModelError>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_support(lo, hi)?;
        let density: RealFn = Arc::new(density);
        let (cdf_t, m1_t, m2_t, total) = tabulate(&density, lo, hi)?;
        if !(total.is_finite() && total > 0.0) {
            return Err(ModelError::Invariant("density has non-positive total mass".into()));
        }
        let inv = 1.0 / total;
        let mean = m1_t.eval(hi) * inv;
        let prior = match prior {
            Some(p) => {
                check_probability("prior", p)?;
                if (p - mean).abs() > 1e-8 {
                    return Err(ModelError::Invariant(format!(
                        "martingale violation: mean of beliefs {mean} differs from prior {p}"
                    )));
                }
                p
            }
            None => mean,
        };
        check_probability("prior", prior)?;
        let m2_total = m2_t.eval(hi) * inv;
        let raw = density.clone();
        let cdf = move |s: f64| (cdf_t.eval(s) * inv).clamp(0.0, 1.0);
        let m1 = move |s: f64| m1_t.eval(s) * inv;
        let m2 = move |s: f64| m2_t.eval(s) * inv;
        let model = Self {
            prior,
            lo,
            hi,
            density: Arc::new(move |s| raw(s) * inv),
            cdf: Arc::new(cdf),
            m1: Arc::new(m1),
            m2: Arc::new(m2),
            m2_total,
            quantile: None,
            rule: Arc::new(CompositeRule::new(lo, hi, SCAN_PANELS)),
        };
        model.validate()?;
        Ok(model)
    }

    /// Uniform belief density on [lo, hi]; the prior is the midpoint.
    pub fn uniform_belief(lo: f64, hi: f64) -> Result<Self, ModelError> {
        check_support(lo, hi)?;
        let w = hi - lo;
        let density: RealFn = Arc::new(move |_| 1.0 / w);
        let cdf: RealFn = Arc::new(move |s: f64| ((s - lo) / w).clamp(0.0, 1.0));
        let m1: RealFn = Arc::new(move |s: f64| (s * s - lo * lo) / (2.0 * w));
        let m2: RealFn = Arc::new(move |s: f64| (s * s * s - lo * lo * lo) / (3.0 * w));
        Ok(Self::from_exact_parts(0.5 * (lo + hi), lo, hi, density, cdf, m1, m2)?
            .with_quantile(move |q| lo + q * w))
    }

    fn validate(&self) -> Result<(), ModelError> {
        let checks = [
            ((self.cdf)(self.lo), 0.0, "F(lo) = 0"),
            ((self.cdf)(self.hi), 1.0, "F(hi) = 1"),
            ((self.m1)(self.hi), self.prior, "mean of beliefs equals prior"),
        ];
        for (got, want, what) in checks {
            if (got - want).abs() > 1e-8 {
                return Err(ModelError::Invariant(format!("{what} violated: got {got}, want {want}")));
            }
        }
        for k in 1..16 {
            let s = self.lo + (self.hi - self.lo) * k as f64 / 16.0;
            if (self.density)(s) < -1e-12 {
                return Err(ModelError::Invariant(format!("density negative at {s}")));
            }
        }
        Ok(())
    }

    pub fn prior(&self) -> f64 {
        self.prior
    }

    pub fn support(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Shared scan-grade composite rule over the support.
    pub fn scan_rule(&self) -> &CompositeRule {
        &self.rule
    }

    pub fn density_at(&self, s: f64) -> f64 {
        if s < self.lo || s > self.hi {
            0.0
        } else {
            (self.density)(s)
        }
    }

    /// Unconditional CDF of the private belief, F evaluated at the prior.
    pub fn cdf_prior(&self, s: f64) -> f64 {
        (self.cdf)(s.clamp(self.lo, self.hi))
    }

    /// Inverse of [`Self::cdf_prior`]: closed form when attached, bisection
    /// otherwise.
    pub fn quantile_prior(&self, q: f64) -> f64 {
        let q = q.clamp(0.0, 1.0);
        if let Some(quantile) = &self.quantile {
            return quantile(q).clamp(self.lo, self.hi);
        }
        let (mut a, mut b) = (self.lo, self.hi);
        for _ in 0..60 {
            let m = 0.5 * (a + b);
            if self.cdf_prior(m) < q {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    pub(crate) fn m1_at(&self, s: f64) -> f64 {
        (self.m1)(s.clamp(self.lo, self.hi))
    }

    pub(crate) fn m2_at(&self, s: f64) -> f64 {
        (self.m2)(s.clamp(self.lo, self.hi))
    }

    /// State-conditional signal CDF, derived from the belief density.
    pub fn cond_cdf(&self, s: f64, state: State) -> f64 {
        let v = match state {
            State::High => self.m1_at(s) / self.prior,
            State::Low => (self.cdf_prior(s) - self.m1_at(s)) / (1.0 - self.prior),
        };
        v.clamp(0.0, 1.0)
    }

    pub fn cond_density(&self, s: f64, state: State) -> f64 {
        match state {
            State::High => s * self.density_at(s) / self.prior,
            State::Low => (1.0 - s) * self.density_at(s) / (1.0 - self.prior),
        }
    }

    /// CDF of the signal under an arbitrary belief: the f_beta mixture.
    pub fn mixture_cdf(&self, belief: f64, s: f64) -> f64 {
        (belief * self.cond_cdf(s, State::High) + (1.0 - belief) * self.cond_cdf(s, State::Low))
            .clamp(0.0, 1.0)
    }

    pub fn mixture_density(&self, belief: f64, s: f64) -> f64 {
        belief * self.cond_density(s, State::High) + (1.0 - belief) * self.cond_density(s, State::Low)
    }

    /// ∫ t dF_belief(t) from lo to s.
    pub fn mixture_m1(&self, belief: f64, s: f64) -> f64 {
        let (m1, m2) = (self.m1_at(s), self.m2_at(s));
        belief * m2 / self.prior + (1.0 - belief) * (m1 - m2) / (1.0 - self.prior)
    }

    /// Mean signal label under an arbitrary belief.
    pub fn mixture_mean(&self, belief: f64) -> f64 {
        belief * self.m2_total / self.prior
            + (1.0 - belief) * (self.prior - self.m2_total) / (1.0 - self.prior)
    }

    /// The mirrored model: s -> 1 - s with states relabeled. Involution.
    pub fn mirror(&self) -> Self {
        let base = self.clone();
        let (lo, hi, prior) = (1.0 - self.hi, 1.0 - self.lo, 1.0 - self.prior);
        let m2_total = self.m2_total;
        let b = base.clone();
        let density: RealFn = Arc::new(move |s| b.density_at(1.0 - s));
        let b = base.clone();
        let cdf: RealFn = Arc::new(move |s| (1.0 - b.cdf_prior(1.0 - s)).clamp(0.0, 1.0));
        let b = base.clone();
        let m1: RealFn = Arc::new(move |s| {
            let u = 1.0 - s;
            (1.0 - b.cdf_prior(u)) - (b.prior - b.m1_at(u))
        });
        let b = base.clone();
        let m2: RealFn = Arc::new(move |s| {
            let u = 1.0 - s;
            (1.0 - b.cdf_prior(u)) - 2.0 * (b.prior - b.m1_at(u)) + (m2_total - b.m2_at(u))
        });
        let b = base.clone();
        let quantile: Option<RealFn> =
            self.quantile.as_ref().map(|_| -> RealFn { Arc::new(move |q: f64| 1.0 - b.quantile_prior(1.0 - q)) });
        Self {
            prior,
            lo,
            hi,
            density,
            cdf,
            m1,
            m2,
            m2_total: 1.0 - 2.0 * self.prior + m2_total,
            quantile,
            rule: Arc::new(CompositeRule::new(lo, hi, SCAN_PANELS)),
        }
    }
}

fn check_support(lo: f64, hi: f64) -> Result<(), ModelError> {
    if !(lo.is_finite() && hi.is_finite() && (0.0..1.0).contains(&lo) && hi <= 1.0 && lo < hi) {
        return Err(ModelError::Invariant(format!(
            "support [{lo}, {hi}] must satisfy 0 <= lo < hi <= 1"
        )));
    }
    Ok(())
}

pub(crate) fn check_probability(name: &'static str, p: f64) -> Result<(), ModelError> {
    if !(p.is_finite() && 0.0 < p && p < 1.0) {
        return Err(ModelError::Domain { name, value: p });
    }
    Ok(())
}

/// Tabulates (F, M1, M2) of `density` on [lo, hi] by adaptive cell splitting,
/// returning Hermite interpolants (unnormalized) and the total mass.
fn tabulate(
    density: &RealFn,
    lo: f64,
    hi: f64,
) -> Result<(CubicHermite, CubicHermite, CubicHermite, f64), ModelError> {
    let rule = quad::GaussLegendre::new(16);
    // Cell integrals of (f, tf, t^2 f): accept when splitting changes none of
    // them beyond the tolerance, queueing halves otherwise.
    let cell_vals = |a: f64, b: f64| -> [f64; 3] {
        [
            rule.integrate(&|t| density(t), a, b),
            rule.integrate(&|t| t * density(t), a, b),
            rule.integrate(&|t| t * t * density(t), a, b),
        ]
    };
    let mut cells: Vec<(f64, f64, [f64; 3])> = Vec::new();
    let mut queue: Vec<(f64, f64, [f64; 3], u32)> = Vec::new();
    let init = 64usize;
    for k in 0..init {
        let a = lo + (hi - lo) * 0.5 * (1.0 - (std::f64::consts::PI * k as f64 / init as f64).cos());
        let b =
            lo + (hi - lo) * 0.5 * (1.0 - (std::f64::consts::PI * (k + 1) as f64 / init as f64).cos());
        queue.push((a, b, cell_vals(a, b), 0));
    }
    while let Some((a, b, vals, depth)) = queue.pop() {
        let m = 0.5 * (a + b);
        let left = cell_vals(a, m);
        let right = cell_vals(m, b);
        let err: f64 = (0..3).map(|i| (left[i] + right[i] - vals[i]).abs()).sum();
        // The cumulative tables are read back through cubic Hermite
        // interpolation, so a cell is only accepted once the interpolant
        // reproduces the midpoint cumulative, not just the cell integral.
        let h = b - a;
        let interp_err = {
            let fs = [
                (density(a), density(b)),
                (a * density(a), b * density(b)),
                (a * a * density(a), b * b * density(b)),
            ];
            (0..3)
                .map(|i| {
                    let predicted = 0.5 * vals[i] + h / 8.0 * (fs[i].0 - fs[i].1);
                    (predicted - left[i]).abs()
                })
                .fold(0.0, f64::max)
        };
        if (err <= 1e-13 && interp_err <= 5e-13) || depth >= 26 || (b - a) < 1e-13 {
            cells.push((a, m, left));
            cells.push((m, b, right));
        } else {
            queue.push((a, m, left, depth + 1));
            queue.push((m, b, right, depth + 1));
        }
        if cells.len() + queue.len() > 400_000 {
            return Err(ModelError::Invariant("density tabulation did not converge".into()));
        }
    }
    cells.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let n = cells.len() + 1;
    let mut xs = Vec::with_capacity(n);
    let (mut f_cum, mut m1_cum, mut m2_cum) = (vec![0.0], vec![0.0], vec![0.0]);
    xs.push(lo);
    let (mut cf, mut c1, mut c2) = (0.0, 0.0, 0.0);
    for &(_, b, vals) in &cells {
        cf += vals[0];
        c1 += vals[1];
        c2 += vals[2];
        xs.push(b);
        f_cum.push(cf);
        m1_cum.push(c1);
        m2_cum.push(c2);
    }
    let slopes_f: Vec<f64> = xs.iter().map(|&x| finite_or_zero(density(x))).collect();
    let slopes_1: Vec<f64> = xs.iter().map(|&x| finite_or_zero(x * density(x))).collect();
    let slopes_2: Vec<f64> = xs.iter().map(|&x| finite_or_zero(x * x * density(x))).collect();
    Ok((
        CubicHermite::new(xs.clone(), f_cum, slopes_f),
        CubicHermite::new(xs.clone(), m1_cum, slopes_1),
        CubicHermite::new(xs, m2_cum, slopes_2),
        cf,
    ))
}

fn finite_or_zero(v: f64) -> f64 {
    if v.is_finite() {
        v
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn uniform_primitives() {
        let m = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap();
        assert_abs_diff_eq!(m.prior(), 0.5);
        assert_abs_diff_eq!(m.cdf_prior(0.3), 0.3, epsilon = 1e-14);
        // F(s|1) = s^2, F(s|0) = 1 - (1-s)^2 for the uniform model.
        assert_abs_diff_eq!(m.cond_cdf(0.3, State::High), 0.09, epsilon = 1e-12);
        assert_abs_diff_eq!(m.cond_cdf(0.3, State::Low), 1.0 - 0.49, epsilon = 1e-12);
    }

    #[test]
    fn tabulated_matches_exact_for_uniform() {
        let exact = ContinuousSignalModel::uniform_belief(0.0, 1.0).unwrap();
        let tab = ContinuousSignalModel::from_belief_density(|_| 1.0, 0.0, 1.0, Some(0.5)).unwrap();
        for k in 0..=50 {
            let s = k as f64 / 50.0;
            assert_abs_diff_eq!(tab.cdf_prior(s), exact.cdf_prior(s), epsilon = 1e-11);
            assert_abs_diff_eq!(tab.m1_at(s), exact.m1_at(s), epsilon = 1e-11);
            assert_abs_diff_eq!(tab.m2_at(s), exact.m2_at(s), epsilon = 1e-11);
        }
    }

    #[test]
    fn martingale_mismatch_rejected() {
        let err = ContinuousSignalModel::from_belief_density(|_| 1.0, 0.0, 1.0, Some(0.6));
        assert!(matches!(err, Err(ModelError::Invariant(_))));
    }

    #[test]
    fn degenerate_support_rejected() {
        assert!(ContinuousSignalModel::uniform_belief(0.4, 0.4).is_err());
    }

    #[test]
    fn mirror_is_involution() {
        let m = ContinuousSignalModel::from_belief_density(
            |s: f64| 1.0 + 0.8 * (3.0 * s).sin().powi(2),
            0.1,
            0.9,
            None,
        )
        .unwrap();
        let mm = m.mirror().mirror();
        assert_abs_diff_eq!(m.prior(), mm.prior(), epsilon = 1e-12);
        for k in 0..=40 {
            let s = 0.1 + 0.8 * k as f64 / 40.0;
            assert_abs_diff_eq!(m.cdf_prior(s), mm.cdf_prior(s), epsilon = 1e-12);
            assert_abs_diff_eq!(m.m1_at(s), mm.m1_at(s), epsilon = 1e-12);
        }
    }

    #[test]
    fn mirror_swaps_states() {
        let m = ContinuousSignalModel::from_belief_density(
            |s: f64| 0.5 + s,
            0.0,
            1.0,
            None,
        )
        .unwrap();
        let mir = m.mirror();
        assert_abs_diff_eq!(mir.prior(), 1.0 - m.prior(), epsilon = 1e-12);
        for k in 1..40 {
            let s = k as f64 / 40.0;
            assert_abs_diff_eq!(
                mir.cond_cdf(s, State::High),
                1.0 - m.cond_cdf(1.0 - s, State::Low),
                epsilon = 1e-10
            );
        }
    }
}
