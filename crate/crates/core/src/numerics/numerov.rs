//! Numerov propagation of u''(x) = f(x) u(x) on a uniform lattice.
//!
//! The scheme is fourth order in the step; with y_i = (1 - h^2 f_i / 12) u_i
//! the recurrence is y_{i+1} = 2 y_i - y_{i-1} + h^2 f_i u_i. Solutions that
//! grow through many decades are rescaled in place; the accumulated log of
//! the applied factors is reported so callers can reconstruct magnitudes.

/// Magnitude at which a sweep rescales the lattice values.
const RESCALE_LIMIT: f64 = 1e140;

#[derive(Debug, Clone, Copy, Default)]
pub struct SweepInfo {
    /// ln of the total factor the stored values were multiplied by
    /// (non-positive; u_true = u_stored * exp(-log_scale)).
    pub log_scale: f64,
}

/// Propagate over the whole slice; `u[0]` and `u[1]` must be seeded.
/// `f` and `u` must have equal length >= 2.
pub fn numerov_sweep(f: &[f64], h: f64, u: &mut [f64]) -> SweepInfo {
    assert_eq!(f.len(), u.len());
    assert!(u.len() >= 2);
    let h2 = h * h;
    let mut info = SweepInfo::default();
    let c = |fi: f64| 1.0 - h2 * fi / 12.0;
    let mut y_prev = c(f[0]) * u[0];
    let mut y_cur = c(f[1]) * u[1];
    for i in 1..u.len() - 1 {
        let y_next = 2.0 * y_cur - y_prev + h2 * f[i] * u[i];
        let u_next = y_next / c(f[i + 1]);
        u[i + 1] = u_next;
        if u_next.abs() > RESCALE_LIMIT {
            let s = 1.0 / RESCALE_LIMIT;
            for v in u[..=i + 1].iter_mut() {
                *v *= s;
            }
            info.log_scale += s.ln();
            y_prev = c(f[i]) * u[i];
            y_cur = c(f[i + 1]) * u[i + 1];
        } else {
            y_prev = y_cur;
            y_cur = y_next;
        }
    }
    info
}

/// Numerov-consistent first derivative at interior index `j`:
/// u'_j = (u_{j+1} - u_{j-1}) / 2h - (h/12) (f_{j+1} u_{j+1} - f_{j-1} u_{j-1}).
pub fn derivative_at(f: &[f64], u: &[f64], h: f64, j: usize) -> f64 {
    assert!(j >= 1 && j + 1 < u.len());
    (u[j + 1] - u[j - 1]) / (2.0 * h) - h / 12.0 * (f[j + 1] * u[j + 1] - f[j - 1] * u[j - 1])
}

/// Classic RK4 for the first-order system u' = p, p' = f(x) u, from x0 to x1.
/// Used to carry (u, u') across lattice seams where the step changes.
pub fn rk4_bridge<F: Fn(f64) -> f64>(
    f: F,
    x0: f64,
    u0: f64,
    p0: f64,
    x1: f64,
    steps: usize,
) -> (f64, f64) {
    let n = steps.max(1);
    let h = (x1 - x0) / n as f64;
    let (mut u, mut p) = (u0, p0);
    let mut x = x0;
    for _ in 0..n {
        let k1u = p;
        let k1p = f(x) * u;
        let k2u = p + 0.5 * h * k1p;
        let k2p = f(x + 0.5 * h) * (u + 0.5 * h * k1u);
        let k3u = p + 0.5 * h * k2p;
        let k3p = f(x + 0.5 * h) * (u + 0.5 * h * k2u);
        let k4u = p + h * k3p;
        let k4p = f(x + h) * (u + h * k3u);
        u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        p += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
        x += h;
    }
    (u, p)
}

/// Count sign alternations between consecutive nonzero entries.
pub fn count_nodes(u: &[f64]) -> usize {
    let mut nodes = 0;
    let mut last_sign = 0i8;
    for &v in u {
        if v == 0.0 {
            continue;
        }
        let s = if v > 0.0 { 1 } else { -1 };
        if last_sign != 0 && s != last_sign {
            nodes += 1;
        }
        last_sign = s;
    }
    nodes
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn reproduces_sine() {
        // u'' = -u, u(0) = 0, exact u = sin(x)
        let h = 1e-3;
        let n = ((10.0 * std::f64::consts::PI + 0.5) / h) as usize;
        let f = vec![-1.0; n];
        let mut u = vec![0.0; n];
        u[1] = h.sin();
        numerov_sweep(&f, h, &mut u);
        let xl = (n - 1) as f64 * h;
        assert_relative_eq!(u[n - 1], xl.sin(), epsilon = 1e-9);
        assert_eq!(count_nodes(&u), 10);
    }

    #[test]
    fn derivative_matches_cosine() {
        let h: f64 = 1e-3;
        let n = 2001;
        let f = vec![-1.0; n];
        let mut u = vec![0.0; n];
        u[1] = h.sin();
        numerov_sweep(&f, h, &mut u);
        let j = 1500;
        let d = derivative_at(&f, &u, h, j);
        assert_relative_eq!(d, (j as f64 * h).cos(), epsilon = 1e-9);
    }

    #[test]
    fn growing_solution_rescales() {
        // u'' = +u, u = sinh(x); sinh(400) ~ 2.6e173 forces a rescale
        let h: f64 = 0.01;
        let n = 40001;
        let f = vec![1.0; n];
        let mut u = vec![0.0; n];
        u[1] = h.sinh();
        let info = numerov_sweep(&f, h, &mut u);
        assert!(info.log_scale < 0.0);
        assert!(u.iter().all(|v| v.is_finite()));
        let x_end = 400.0;
        // ln sinh(x) = x - ln 2 for large x
        let ln_exact = x_end - std::f64::consts::LN_2;
        let ln_got = u[n - 1].ln() - info.log_scale;
        assert_relative_eq!(ln_got, ln_exact, epsilon = 1e-6);
    }

    #[test]
    fn bridge_carries_sine_state() {
        // h^4 convergence: quadrupling the substeps gains ~256x
        let (u, p) = rk4_bridge(|_| -1.0, 1.0, 1.0f64.sin(), 1.0f64.cos(), 1.35, 16);
        assert_relative_eq!(u, 1.35f64.sin(), epsilon = 5e-9);
        assert_relative_eq!(p, 1.35f64.cos(), epsilon = 5e-9);
        let (u, p) = rk4_bridge(|_| -1.0, 1.0, 1.0f64.sin(), 1.0f64.cos(), 1.35, 64);
        assert_relative_eq!(u, 1.35f64.sin(), epsilon = 1e-11);
        assert_relative_eq!(p, 1.35f64.cos(), epsilon = 1e-11);
    }

    #[test]
    fn node_counting_skips_zeros() {
        assert_eq!(count_nodes(&[0.0, 1.0, 2.0, 0.0, -1.0, 1.0]), 2);
        assert_eq!(count_nodes(&[0.0, 0.0, 0.0]), 0);
        assert_eq!(count_nodes(&[1.0, -1.0, 1.0, -1.0]), 3);
    }
}
