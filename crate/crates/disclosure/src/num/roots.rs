//! Bracketed scalar root finding and sign-change scans over a grid.

/// A root located by [`scan_roots`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// True when the function touches zero without changing sign (even-order
    /// crossing). Tangent roots are excluded from monotone comparative-statics
    /// assertions by callers.
    pub tangent: bool,
}

/// Brent's method on a bracketing interval. `fa` and `fb` must have opposite
/// signs (zero endpoints allowed).
pub fn brent<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fb: f64, tol: f64) -> f64 {
    debug_assert!(fa * fb <= 0.0);
    if fa == 0.0 {
        return a;
    }
    if fb == 0.0 {
        return b;
    }
    let (mut a, mut b, mut fa, mut fb) = (a, b, fa, fb);
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return b;
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, falling back to secant.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * xm * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol1 * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    b
}

/// Plain bisection; robust fallback used where Brent's bookkeeping is overkill.
pub fn bisect<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, _fb: f64, tol: f64) -> f64 {
    let (mut a, mut b) = (a, b);
    let mut fa = fa;
    while (b - a).abs() > tol {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Inclusive uniform grid with `n` points.
pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n)
        .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
        .collect()
}

/// Finds all roots of `f` on [lo, hi] by a sign-change scan over `n` grid
/// points, refining each bracket with Brent's method to `tol`.
///
/// Grid points where `|f|` dips below `tangent_tol` without a sign change are
/// polished by local minimisation of `f^2` and reported as tangent roots.
pub fn scan_roots<F: Fn(f64) -> f64>(
    f: &F,
    lo: f64,
    hi: f64,
    n: usize,
    tol: f64,
    tangent_tol: f64,
) -> Vec<Root> {
    let xs = grid(lo, hi, n);
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let mut roots: Vec<Root> = Vec::new();
    for k in 0..n - 1 {
        if fs[k] == 0.0 {
            // Exact grid zero: tangent when the neighbors share a sign.
            let left = if k > 0 { fs[k - 1] } else { 0.0 };
            let tangent = left * fs[k + 1] > 0.0;
            push_root(&mut roots, xs[k], tangent, tol);
            continue;
        }
        if fs[k] * fs[k + 1] < 0.0 {
            let x = brent(f, xs[k], xs[k + 1], fs[k], fs[k + 1], tol);
            push_root(&mut roots, x, false, tol);
        }
    }
    if fs[n - 1] == 0.0 {
        push_root(&mut roots, xs[n - 1], false, tol);
    }
    // Tangency sweep: interior local minima of |f| that nearly touch zero.
    for k in 1..n - 1 {
        let a = fs[k].abs();
        if a < tangent_tol && a <= fs[k - 1].abs() && a <= fs[k + 1].abs() {
            let x = polish_min_abs(f, xs[k - 1], xs[k + 1], tol);
            if f(x).abs() < tangent_tol && !roots.iter().any(|r| (r.x - x).abs() < 10.0 * tol) {
                push_root(&mut roots, x, true, tol);
            }
        }
    }
    roots.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap());
    roots
}

fn push_root(roots: &mut Vec<Root>, x: f64, tangent: bool, tol: f64) {
    if !roots.iter().any(|r| (r.x - x).abs() < 10.0 * tol) {
        roots.push(Root { x, tangent });
    }
}

/// Golden-section minimisation of |f| on [a, b].
fn polish_min_abs<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c).abs();
    let mut fd = f(d).abs();
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c).abs();
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d).abs();
        }
    }
    0.5 * (a + b)
}
