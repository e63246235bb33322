//! Adaptive Simpson quadrature.

fn simpson_step<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
        + simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
///
/// Non-finite samples (endpoint singularities of integrable type) are
/// replaced by nearby finite evaluations, so mild inverse-square-root
/// endpoints converge, just slowly.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let safe = |x: f64| -> f64 {
        let y = f(x);
        if y.is_finite() {
            y
        } else {
            let nudge = 1e-10 * (b - a).abs();
            let y2 = f(x + if x <= 0.5 * (a + b) { nudge } else { -nudge });
            if y2.is_finite() {
                y2
            } else {
                0.0
            }
        }
    };
    let fa = safe(a);
    let fb = safe(b);
    let m = 0.5 * (a + b);
    let fm = safe(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(&|x| safe(x), a, fa, b, fb, m, fm, whole, tol, 52)
}

/// Integral of f over [a, infinity), via the rational map x = a + t/(1-t).
pub fn integral_semi_infinite<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    let g = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let w = 1.0 - t;
        let x = a + t / w;
        let y = f(x) / (w * w);
        if y.is_finite() {
            y
        } else {
            0.0
        }
    };
    adaptive_simpson(g, 0.0, 1.0, tol)
}
