//! Scalar root finding and 1-d minimization.

/// Bisection on [a, b]; requires a sign change. Returns the midpoint of the
/// final bracket once its width drops below `xtol` (absolute) plus a small
/// relative floor, or after `max_iter` halvings.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> f64 {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let fb = f(b);
    assert!(
        fa * fb <= 0.0,
        "bisect: no sign change on [{a}, {b}] (f = {fa}, {fb})"
    );
    for _ in 0..max_iter {
        let m = 0.5 * (a + b);
        if (b - a).abs() <= xtol + 4.0 * f64::EPSILON * m.abs() {
            return m;
        }
        let fm = f(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    0.5 * (a + b)
}

/// Brent's method: inverse quadratic interpolation guarded by bisection.
/// Requires f(a) and f(b) of opposite sign. Converges to `xtol` absolute
/// tolerance (with a relative floor at machine precision).
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, xtol: f64, max_iter: usize) -> f64 {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    assert!(
        fa * fb <= 0.0,
        "brent: no sign change on [{a}, {b}] (f = {fa}, {fb})"
    );
    if fa.abs() < fb.abs() {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for _ in 0..max_iter {
        if fb == 0.0 {
            return b;
        }
        if fa.abs() < fb.abs() {
            // b must stay the best estimate
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol {
            return b;
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                // secant
                (2.0 * m * s, 1.0 - s)
            } else {
                let q = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0)),
                    (q - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol {
            d
        } else if m > 0.0 {
            tol
        } else {
            -tol
        };
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

/// Golden-section search for a minimum of f on [a, b].
/// Returns (x_min, f(x_min)); stops when the bracket is below `rtol`
/// relative width (with an absolute floor for brackets through zero).
pub fn golden_min<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rtol: f64,
    max_iter: usize,
) -> (f64, f64) {
    const INVPHI: f64 = 0.618_033_988_749_894_9;
    let (mut a, mut b) = (a, b);
    let mut x1 = b - INVPHI * (b - a);
    let mut x2 = a + INVPHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..max_iter {
        if (b - a).abs() <= rtol * (a.abs() + b.abs()).max(1e-300) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INVPHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INVPHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bisect_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-12, 200);
        assert_relative_eq!(r, std::f64::consts::SQRT_2, epsilon = 1e-11);
    }

    #[test]
    fn brent_finds_cos_zero() {
        let r = brent(|x| x.cos(), 1.0, 2.0, 1e-14, 100);
        assert_relative_eq!(r, std::f64::consts::FRAC_PI_2, epsilon = 1e-13);
    }

    #[test]
    fn brent_handles_flat_then_steep() {
        // f(x) = x^9 is extremely flat near the root
        let r = brent(|x| x.powi(9) - 1e-9, 0.0, 2.0, 1e-14, 200);
        assert_relative_eq!(r, 0.1, epsilon = 1e-7);
    }

    #[test]
    fn golden_finds_parabola_min() {
        let (x, fx) = golden_min(|x| (x - 1.25) * (x - 1.25) + 0.5, 0.0, 3.0, 1e-12, 300);
        assert_relative_eq!(x, 1.25, epsilon = 1e-7);
        assert_relative_eq!(fx, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn golden_on_asymmetric_function() {
        // min of x + 1/x on (0, inf) is at x = 1
        let (x, fx) = golden_min(|x| x + 1.0 / x, 0.1, 8.0, 1e-12, 300);
        assert_relative_eq!(x, 1.0, epsilon = 1e-6);
        assert_relative_eq!(fx, 2.0, epsilon = 1e-11);
    }
}
