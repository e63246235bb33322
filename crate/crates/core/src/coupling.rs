//! Critical couplings g_c^N: the strength at which the N-th bound level
//! (for a given angular momentum) first appears.
//!
//! Three routes with very different cost/accuracy trade-offs:
//! * [`critical_numeric`] bisects the exact zero-energy state count and is
//!   the reference;
//! * [`bargmann_upper`] is the closed-form phase-integral value (N pi / B)^2
//!   built from the shape functional B = int sqrt(v) dx, exact in its
//!   N-scaling but only approximate in normalization;
//! * [`wkb_wood_saxon`] specializes a WKB quantization to the flat-bottomed
//!   nuclear well, where the turning structure gives an analytic phase.

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::spectrum::count_bound_states;
use crate::units;

#[derive(Debug, Clone)]
pub struct CriticalCoupling {
    /// Which level appears at this coupling (1-based).
    pub n_state: usize,
    pub ell: usize,
    pub value: f64,
    pub method: &'static str,
    /// Final bisection bracket: `bracket.0` holds N-1 levels, `bracket.1`
    /// holds N.
    pub bracket: (f64, f64),
}

/// Reference critical coupling: geometric bisection of the zero-energy
/// bound-state count, converged to a relative width of 1e-8. The prototype
/// potential only supplies the shape; its own strength seeds the search.
pub fn critical_numeric(proto: &Potential, n_state: usize, ell: usize) -> Result<CriticalCoupling> {
    if n_state == 0 {
        return Err(Error::InvalidInput("level index N starts at 1".into()));
    }
    let count_at = |g: f64| -> Result<usize> { count_bound_states(&proto.with_coupling(g)?, ell) };
    let mut g_hi = proto.coupling().map(f64::abs).unwrap_or(1.0).max(1e-6);
    let mut guard = 0;
    while count_at(g_hi)? < n_state {
        g_hi *= 2.0;
        guard += 1;
        if guard > 200 {
            return Err(Error::Convergence(
                "no coupling reaches the requested level".into(),
            ));
        }
    }
    let mut g_lo = 0.5 * g_hi;
    while count_at(g_lo)? >= n_state {
        g_lo *= 0.5;
        guard += 1;
        if guard > 400 {
            return Err(Error::Convergence(
                "level persists at vanishing coupling".into(),
            ));
        }
    }
    while g_hi - g_lo > 1e-8 * g_hi {
        let gm = (g_lo * g_hi).sqrt();
        if count_at(gm)? >= n_state {
            g_hi = gm;
        } else {
            g_lo = gm;
        }
    }
    Ok(CriticalCoupling {
        n_state,
        ell,
        value: 0.5 * (g_lo + g_hi),
        method: "zero-energy-count",
        bracket: (g_lo, g_hi),
    })
}

/// Phase-integral critical coupling (N pi / B)^2 with B = int sqrt(v(x)) dx
/// over the attractive region. The N-scaling is exact for pure power tails;
/// the absolute value can land on either side of the true threshold
/// depending on the family, so treat it as an estimate, not a bound.
pub fn bargmann_upper(proto: &Potential, n_state: usize) -> Result<f64> {
    if n_state == 0 {
        return Err(Error::InvalidInput("level index N starts at 1".into()));
    }
    let b = proto.integral_functionals().b.ok_or_else(|| {
        Error::Unsupported(format!(
            "no phase functional B for the {} family",
            proto.family.name()
        ))
    })?;
    Ok((n_state as f64 * std::f64::consts::PI / b).powi(2))
}

/// WKB critical coupling for the flat nuclear well with surface thickness a:
/// g_c = [ (N - 1/4) pi / (alpha + 2 asinh 1) ]^2 in units of the
/// diffuseness, with alpha = R/a from the mass number. Calibrated for the
/// first level; N > 1 extrapolates the same phase and is unvalidated.
pub fn wkb_wood_saxon(a_mass: f64, n_state: usize) -> f64 {
    let alpha = units::nuclear_alpha(a_mass);
    let phase = alpha + 2.0 * 1f64.asinh();
    let num = (n_state as f64 - 0.25) * std::f64::consts::PI;
    (num / phase).powi(2)
}
