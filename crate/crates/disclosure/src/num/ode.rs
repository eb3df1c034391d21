//! Explicit adaptive-step integrator for scalar initial value problems,
//! using fourth-order Runge-Kutta steps with step-halving error control.

#[derive(Debug, thiserror::Error)]
pub enum OdeError {
    #[error("step size underflow at s = {0}")]
    StepUnderflow(f64),
    #[error("non-finite state at s = {0}")]
    NonFinite(f64),
}

fn rk4_step<F: Fn(f64, f64) -> f64>(f: &F, s: f64, y: f64, h: f64) -> f64 {
    let k1 = f(s, y);
    let k2 = f(s + 0.5 * h, y + 0.5 * h * k1);
    let k3 = f(s + 0.5 * h, y + 0.5 * h * k2);
    let k4 = f(s + h, y + h * k3);
    y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
}

/// Integrates dy/ds = f(s, y) from `a` to `b` (a < b), returning accepted
/// sample points (s, y) including both endpoints.
///
/// Local error per step is estimated by comparing a full step against two
/// half steps and kept below `tol`.
pub fn integrate_adaptive<F: Fn(f64, f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    y0: f64,
    tol: f64,
) -> Result<Vec<(f64, f64)>, OdeError> {
    assert!(b > a);
    let mut out = vec![(a, y0)];
    let mut s = a;
    let mut y = y0;
    let mut h = (b - a) / 64.0;
    let h_min = (b - a) * 1e-13;
    while s < b {
        h = h.min(b - s);
        let full = rk4_step(f, s, y, h);
        let half = rk4_step(f, s + 0.5 * h, rk4_step(f, s, y, 0.5 * h), 0.5 * h);
        if !half.is_finite() {
            return Err(OdeError::NonFinite(s));
        }
        let err = (half - full).abs() / 15.0;
        let scale = tol.max(tol * y.abs());
        if err <= scale {
            s += h;
            // Richardson extrapolation of the two-half estimate.
            y = half + (half - full) / 15.0;
            out.push((s, y));
            if err < 0.01 * scale {
                h *= 2.0;
            }
        } else {
            h *= 0.5;
            if h < h_min {
                return Err(OdeError::StepUnderflow(s));
            }
        }
    }
    Ok(out)
}
