//! Gauss-Legendre quadrature: a fixed-order rule, an adaptive driver, and a
//! precomputed composite rule for repeated integrals over a fixed support.

use std::sync::OnceLock;

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the rule by Newton iteration on the Legendre polynomial.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            // Tricomi initial guess for the i-th root.
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn nodes_weights(&self) -> impl Iterator<Item = (&f64, &f64)> {
        self.nodes.iter().zip(self.weights.iter())
    }

    /// Integrates `f` over [a, b] with this rule.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: &F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

fn rule16() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(16))
}

/// Shared 8-point rule for partial-panel work in composite integrals.
pub fn rule8() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| GaussLegendre::new(8))
}

/// Globally adaptive Gauss-Legendre integration to absolute tolerance.
///
/// Keeps a worklist of intervals with embedded 8-vs-16-point error
/// estimates and repeatedly splits the worst one until the total estimated
/// error meets the tolerance. Grades geometrically into integrable endpoint
/// singularities at linear cost.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, abs_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let tol = abs_tol.max(1e-15);
    let eval = |a: f64, b: f64| -> (f64, f64) {
        let whole = rule16().integrate(f, a, b);
        let mid = 0.5 * (a + b);
        let halves = rule16().integrate(f, a, mid) + rule16().integrate(f, mid, b);
        (halves, (whole - halves).abs())
    };
    // (lo, hi, estimate, error)
    let mut intervals: Vec<(f64, f64, f64, f64)> = Vec::with_capacity(64);
    let (est, err) = eval(a, b);
    intervals.push((a, b, est, err));
    let mut total_err = err;
    for _ in 0..4000 {
        if total_err <= tol {
            break;
        }
        let (worst, _) = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.partial_cmp(&y.1 .3).unwrap())
            .unwrap();
        let (lo, hi, _, e_old) = intervals[worst];
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-15 * (1.0 + lo.abs()) {
            // Cannot resolve further; stop charging this sliver.
            total_err -= e_old;
            intervals[worst].3 = 0.0;
            continue;
        }
        let (le, lerr) = eval(lo, mid);
        let (re, rerr) = eval(mid, hi);
        total_err += lerr + rerr - e_old;
        intervals[worst] = (lo, mid, le, lerr);
        intervals.push((mid, hi, re, rerr));
    }
    intervals.iter().map(|i| i.2).sum()
}

/// A composite quadrature rule precomputed over a fixed interval.
///
/// Panels are cosine-graded so that mass near either endpoint is resolved;
/// each panel carries an 8-point Gauss-Legendre sub-rule. Used as the shared
/// scan-grade rule for integrals that are evaluated many times against the
/// same support with varying lower or upper limits.
#[derive(Debug, Clone)]
pub struct CompositeRule {
    lo: f64,
    hi: f64,
    edges: Vec<f64>,
    /// Flattened nodes, panel-major.
    pub nodes: Vec<f64>,
    /// Matching weights.
    pub weights: Vec<f64>,
}

impl CompositeRule {
    pub fn new(lo: f64, hi: f64, panels: usize) -> Self {
        assert!(hi > lo && panels >= 2);
        let edges: Vec<f64> = (0..=panels)
            .map(|k| {
                let t = 0.5 * (1.0 - (std::f64::consts::PI * k as f64 / panels as f64).cos());
                lo + (hi - lo) * t
            })
            .collect();
        let base = rule8();
        let mut nodes = Vec::with_capacity(panels * 8);
        let mut weights = Vec::with_capacity(panels * 8);
        for w in edges.windows(2) {
            let half = 0.5 * (w[1] - w[0]);
            let mid = 0.5 * (w[0] + w[1]);
            for (&x, &wt) in base.nodes.iter().zip(&base.weights) {
                nodes.push(mid + half * x);
                weights.push(wt * half);
            }
        }
        Self { lo, hi, edges, nodes, weights }
    }

    /// Integrates `f` over [from, hi], reusing whole panels above `from` and
    /// evaluating a fresh sub-rule on the partial panel containing it.
    pub fn integrate_from<F: Fn(f64) -> f64>(&self, f: &F, from: f64) -> f64 {
        let from = from.clamp(self.lo, self.hi);
        if from >= self.hi {
            return 0.0;
        }
        let panel = match self.edges.binary_search_by(|e| e.partial_cmp(&from).unwrap()) {
            Ok(k) => k,
            Err(k) => k.saturating_sub(1),
        };
        let panel = panel.min(self.edges.len() - 2);
        let mut acc = rule8().integrate(f, from, self.edges[panel + 1]);
        for (k, (&x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            if k >= (panel + 1) * 8 {
                acc += w * f(x);
            }
        }
        acc
    }

    /// Integrates `f` over [lo, to]; complement of [`Self::integrate_from`].
    pub fn integrate_to<F: Fn(f64) -> f64>(&self, f: &F, to: f64) -> f64 {
        let to = to.clamp(self.lo, self.hi);
        if to <= self.lo {
            return 0.0;
        }
        let panel = match self.edges.binary_search_by(|e| e.partial_cmp(&to).unwrap()) {
            Ok(k) => k,
            Err(k) => k.saturating_sub(1),
        };
        let panel = panel.min(self.edges.len() - 2);
        let mut acc = rule8().integrate(f, self.edges[panel], to);
        for (k, (&x, &w)) in self.nodes.iter().zip(&self.weights).enumerate() {
            if k < panel * 8 {
                acc += w * f(x);
            }
        }
        acc
    }
}
