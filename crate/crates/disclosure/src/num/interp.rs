//! Piecewise-cubic interpolation: Hermite with supplied slopes (used for
//! cumulative tables whose derivative is the density) and a natural cubic
//! spline (used to turn sampled curves into C^1 functions).

/// Cubic Hermite interpolant with caller-supplied slopes at the knots.
#[derive(Debug, Clone)]
pub struct CubicHermite {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl CubicHermite {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, ds: Vec<f64>) -> Self {
        assert!(xs.len() >= 2 && xs.len() == ys.len() && xs.len() == ds.len());
        debug_assert!(xs.windows(2).all(|w| w[1] > w[0]));
        Self { xs, ys, ds }
    }

    fn cell(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(k) => k.min(self.xs.len() - 2),
            Err(k) => k.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], *self.xs.last().unwrap());
        let k = self.cell(x);
        let h = self.xs[k + 1] - self.xs[k];
        let t = (x - self.xs[k]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[k] + h10 * h * self.ds[k] + h01 * self.ys[k + 1] + h11 * h * self.ds[k + 1]
    }

    pub fn knots(&self) -> &[f64] {
        &self.xs
    }
}

/// Natural cubic spline through (xs, ys).
#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        let n = xs.len();
        assert!(n >= 3 && ys.len() == n);
        assert!(xs.windows(2).all(|w| w[1] > w[0]), "knots must be strictly increasing");
        // Tridiagonal solve for the natural spline second derivatives.
        let mut sub = vec![0.0; n];
        let mut diag = vec![1.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            sub[i] = h0 / 6.0;
            diag[i] = (h0 + h1) / 3.0;
            sup[i] = h1 / 6.0;
            rhs[i] = (ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0;
        }
        // Thomas algorithm.
        for i in 1..n {
            let w = sub[i] / diag[i - 1];
            diag[i] -= w * sup[i - 1];
            rhs[i] -= w * rhs[i - 1];
        }
        let mut m = vec![0.0; n];
        m[n - 1] = rhs[n - 1] / diag[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = (rhs[i] - sup[i] * m[i + 1]) / diag[i];
        }
        Self { xs, ys, m }
    }

    fn cell(&self, x: f64) -> usize {
        match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(k) => k.min(self.xs.len() - 2),
            Err(k) => k.saturating_sub(1).min(self.xs.len() - 2),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], *self.xs.last().unwrap());
        let k = self.cell(x);
        let h = self.xs[k + 1] - self.xs[k];
        let a = (self.xs[k + 1] - x) / h;
        let b = (x - self.xs[k]) / h;
        a * self.ys[k]
            + b * self.ys[k + 1]
            + ((a * a * a - a) * self.m[k] + (b * b * b - b) * self.m[k + 1]) * h * h / 6.0
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let x = x.clamp(self.xs[0], *self.xs.last().unwrap());
        let k = self.cell(x);
        let h = self.xs[k + 1] - self.xs[k];
        let a = (self.xs[k + 1] - x) / h;
        let b = (x - self.xs[k]) / h;
        (self.ys[k + 1] - self.ys[k]) / h
            + ((3.0 * b * b - 1.0) * self.m[k + 1] - (3.0 * a * a - 1.0) * self.m[k]) * h / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn hermite_reproduces_cubic() {
        let f = |x: f64| x * x * x - x;
        let d = |x: f64| 3.0 * x * x - 1.0;
        let xs: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let ds: Vec<f64> = xs.iter().map(|&x| d(x)).collect();
        let h = CubicHermite::new(xs, ys, ds);
        for k in 0..=100 {
            let x = k as f64 / 100.0;
            assert_abs_diff_eq!(h.eval(x), f(x), epsilon = 1e-14);
        }
    }

    #[test]
    fn spline_interpolates_and_differentiates() {
        let xs: Vec<f64> = (0..=20).map(|k| k as f64 / 20.0).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| (2.0 * x).sin()).collect();
        let s = CubicSpline::new(xs.clone(), ys);
        for &x in &xs {
            assert_abs_diff_eq!(s.eval(x), (2.0 * x).sin(), epsilon = 1e-12);
        }
        assert_abs_diff_eq!(s.derivative(0.5), 2.0 * (1.0f64).cos(), epsilon = 1e-3);
    }
}
