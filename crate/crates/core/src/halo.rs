//! Halo occurrence criterion, threshold windows, parameter scans and the
//! Wood-Saxon systematics table.
//!
//! A bound state counts as a halo when its rms radius stretches past
//! `sigma` times the outer classical turning radius at the same energy.
//! For the N-th s-level, appearing at critical strength g_c, the criterion
//! holds from zero binding down to a window edge
//!
//! ```text
//! E_H = -K / (2 (sigma x0 L)^2),
//! ```
//!
//! where K is the unit context's kinetic scale, L the shape length, and
//! x0 the outermost root of x^2 v(x) = gamma with gamma = 1/(2 sigma^2 g_c).
//! Shapes with smooth tails admit closed forms for x0; the rest get the
//! root bracketed on the decaying tail and bisected.  Alongside this
//! weak-binding chain the module solves the exact criterion point (tune the
//! strength until rms / r0 = sigma on the eigenvalue curve), evaluates the
//! scaled threshold-depth scans s(N, n) and t(N, n), and assembles the
//! mass-number table together with its power-law fit.

use crate::coupling;
use crate::error::{Error, Result};
use crate::numerics::bisect;
use crate::potential::{Family, Potential, TailKind};
use crate::spectrum::{solve_state, RadialState, SolverConfig};
use crate::units;

/// Which estimate of the critical strength feeds the threshold chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingSource {
    /// Zero-energy node counting: exact, costs a sweep per probe.
    Numeric,
    /// Phase-integral estimate (N pi / B)^2, closed form.
    Bargmann,
    /// Flat-well WKB phase; Wood-Saxon shapes only.
    Wkb,
}

impl CouplingSource {
    /// Stable identifier used in serialized output.
    pub fn id(&self) -> &'static str {
        match self {
            CouplingSource::Numeric => "numeric",
            CouplingSource::Bargmann => "bargmann",
            CouplingSource::Wkb => "wkb",
        }
    }
}

/// How x0 is obtained from the criterion equation x^2 v(x) = gamma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum X0Method {
    /// Bracket the outermost root on the decaying tail and bisect.
    NumericRoot,
    /// Exact quadratic in x^(q-2) for the (2(q-1), q) pair family.
    PairQuadratic,
    /// Truncated power tail, x0 = gamma^(-1/(n-2)).
    PowerTail,
    /// Truncated attractive x^-4 tail, x0 = gamma^(-1/2).
    MixedTail,
    /// Truncated exponential-family depth, x0 = [ln(1/gamma)]^(1/n).
    LogDepth,
    /// Lagrange-inversion root for the Wood-Saxon shape.
    LagrangeWoodSaxon,
}

impl X0Method {
    /// Stable identifier used in serialized output.
    pub fn id(&self) -> &'static str {
        match self {
            X0Method::NumericRoot => "generic-numeric",
            X0Method::PairQuadratic => "closed-form-eq31",
            X0Method::PowerTail => "closed-form-eq32e",
            X0Method::MixedTail => "closed-form-eq32j",
            X0Method::LogDepth => "closed-form-log-depth",
            X0Method::LagrangeWoodSaxon => "lagrange-eq35",
        }
    }
}

/// Weak-binding halo window for the N-th s-level of a family.
#[derive(Debug, Clone)]
pub struct HaloThreshold {
    pub n_state: usize,
    pub sigma: f64,
    /// Critical strength behind the window.
    pub gc: f64,
    pub gc_source: CouplingSource,
    /// Criterion level gamma = 1 / (2 sigma^2 gc).
    pub gamma: f64,
    /// Outermost criterion root, in units of the shape length.
    pub x0: f64,
    /// Turning radius at the window edge, physical length units.
    pub r0: f64,
    /// Window edge E_H (< 0) in the context's energy units.
    pub e_h: f64,
    pub method: X0Method,
}

impl HaloThreshold {
    /// |E_H| L^2 with the kinetic scale divided out: the dimensionless
    /// threshold depth (the s and t scan variables).
    pub fn scaled_depth(&self) -> f64 {
        1.0 / (2.0 * (self.sigma * self.x0).powi(2))
    }
}

/// Criterion verdict for one solved state.
#[derive(Debug, Clone)]
pub struct HaloAssessment {
    pub sigma: f64,
    /// State energy in the context's energy units.
    pub energy: f64,
    /// rms radius, physical length units.
    pub rms: f64,
    /// Outer classical turning radius at the state energy.
    pub r0: f64,
    /// rms / r0; the state is a halo when this reaches sigma.
    pub ratio: f64,
    pub is_halo: bool,
    /// Matching weak-binding window for s-levels of shapes that admit one.
    pub threshold: Option<HaloThreshold>,
}

/// Exact criterion point: strength and energy where rms / r0 = sigma along
/// the N-th level's eigenvalue curve.
#[derive(Debug, Clone)]
pub struct ExactThreshold {
    pub n_state: usize,
    pub sigma: f64,
    /// Dimensionless strength at the criterion point.
    pub coupling: f64,
    /// Level energy there, context energy units.
    pub energy: f64,
    pub rms: f64,
    pub r0: f64,
    pub iterations: usize,
}

/// N-th level re-coupled so its energy lands on a prescribed target.
#[derive(Debug, Clone)]
pub struct RatioAtEnergy {
    pub n_state: usize,
    pub coupling: f64,
    pub energy: f64,
    pub rms: f64,
    pub r0: f64,
    pub ratio: f64,
}

/// One scan sample: tail exponent, level index, scaled threshold depth.
#[derive(Debug, Clone, Copy)]
pub struct ScanPoint {
    pub n: f64,
    pub n_state: usize,
    pub value: f64,
}

/// One mass-number row: exact criterion energy, weak-binding window edge
/// and the size ratio at that edge.  Energies in MeV.
#[derive(Debug, Clone)]
pub struct NuclearRow {
    pub mass_number: f64,
    /// Dimensionless well strength at the exact criterion point.
    pub coupling_exact: f64,
    pub e_exact: f64,
    pub e_h: f64,
    pub ratio_at_e_h: f64,
    pub x0: f64,
}

/// Least-squares power law |E_H| = prefactor * A^exponent over a mass range.
#[derive(Debug, Clone, Copy)]
pub struct NuclearFit {
    pub sigma: f64,
    pub prefactor: f64,
    pub exponent: f64,
    /// rms of the log residuals, roughly the relative deviation.
    pub residual_rms: f64,
    pub samples: usize,
}

/// Default strength source per family: WKB for the flat nuclear well, the
/// phase integral otherwise.
pub fn default_coupling_source(pot: &Potential) -> CouplingSource {
    match pot.family {
        Family::WoodSaxon { .. } => CouplingSource::Wkb,
        _ => CouplingSource::Bargmann,
    }
}

/// Critical strength for the N-th level from the chosen source.  The
/// closed-form sources describe s-waves only.
pub fn critical_strength(
    proto: &Potential,
    n_state: usize,
    ell: usize,
    source: CouplingSource,
) -> Result<f64> {
    if n_state == 0 {
        return Err(Error::InvalidInput("level index N starts at 1".into()));
    }
    match source {
        CouplingSource::Numeric => Ok(coupling::critical_numeric(proto, n_state, ell)?.value),
        CouplingSource::Bargmann => {
            if ell != 0 {
                return Err(Error::Unsupported(
                    "phase-integral strength is s-wave only".into(),
                ));
            }
            coupling::bargmann_upper(proto, n_state)
        }
        CouplingSource::Wkb => match proto.family {
            Family::WoodSaxon { r, a, .. } => {
                if ell != 0 {
                    return Err(Error::Unsupported("WKB strength is s-wave only".into()));
                }
                // invert alpha = 1.9 A^(1/3) so the shared estimate applies
                // to any wall ratio, not just tabulated mass numbers
                let a_mass = (r / a / 1.9).powi(3);
                Ok(coupling::wkb_wood_saxon(a_mass, n_state))
            }
            _ => Err(Error::Unsupported(format!(
                "flat-well WKB does not describe the {} family",
                proto.family.name()
            ))),
        },
    }
}

/// Method used for x0 when none is forced.
pub fn default_x0_method(pot: &Potential) -> Result<X0Method> {
    match pot.family {
        Family::LjPair { p_rep, p_att, .. } => {
            if (p_rep - 2.0 * (p_att - 1.0)).abs() < 1e-9 {
                Ok(X0Method::PairQuadratic)
            } else {
                Ok(X0Method::NumericRoot)
            }
        }
        Family::RationalN { .. } | Family::RationalCubed { .. } => Ok(X0Method::PowerTail),
        Family::MixedRep4 { .. } => Ok(X0Method::MixedTail),
        Family::ExpN { .. } => Ok(X0Method::LogDepth),
        Family::WoodSaxon { .. } => Ok(X0Method::LagrangeWoodSaxon),
        Family::Yukawa { .. } => Ok(X0Method::NumericRoot),
        Family::SquareWell { .. } | Family::TruncatedExp { .. } => Err(Error::Unsupported(
            "finite-range tail: the criterion root sits at the edge, use exact_threshold".into(),
        )),
        Family::PowerLaw { .. } => Err(Error::Unsupported(
            "confining potential has no halo threshold".into(),
        )),
        Family::WConstant { .. } => Err(Error::Unsupported(
            "inverse-square tail has no halo threshold".into(),
        )),
    }
}

fn no_root_err(gamma: f64) -> Error {
    Error::InvalidInput(format!(
        "no halo threshold: criterion level gamma = {gamma:.6e} lies above the shape envelope"
    ))
}

/// Outermost root of x^2 v(x) = gamma for the given critical strength,
/// with gamma = 1/(2 sigma^2 gc).
pub fn solve_x0(pot: &Potential, gc: f64, sigma: f64, method: X0Method) -> Result<f64> {
    if !(gc > 0.0) || !(sigma > 0.0) {
        return Err(Error::InvalidInput(
            "criterion needs gc > 0 and sigma > 0".into(),
        ));
    }
    let gamma = 1.0 / (2.0 * sigma * sigma * gc);
    match method {
        X0Method::PairQuadratic => {
            let q = match pot.family {
                Family::LjPair { p_rep, p_att, .. }
                    if (p_rep - 2.0 * (p_att - 1.0)).abs() < 1e-9 =>
                {
                    p_att
                }
                _ => {
                    return Err(Error::InvalidInput(
                        "quadratic closed form needs the (2(q-1), q) pair family".into(),
                    ))
                }
            };
            // x^(2q-2) term balances: y = x0^(q-2) solves gamma y^2 - y + 1 = 0
            if gamma > 0.25 {
                return Err(no_root_err(gamma));
            }
            let y = (1.0 + (1.0 - 4.0 * gamma).sqrt()) / (2.0 * gamma);
            Ok(y.powf(1.0 / (q - 2.0)))
        }
        X0Method::PowerTail => {
            let n = match pot.family {
                Family::RationalN { n, .. } => n,
                Family::RationalCubed { .. } => 3.0,
                _ => {
                    return Err(Error::InvalidInput(
                        "power-tail closed form needs a rational family".into(),
                    ))
                }
            };
            Ok(gamma.powf(-1.0 / (n - 2.0)))
        }
        X0Method::MixedTail => match pot.family {
            Family::MixedRep4 { .. } => {
                let x0 = gamma.powf(-0.5);
                if x0 <= 1.0 {
                    return Err(no_root_err(gamma));
                }
                Ok(x0)
            }
            _ => Err(Error::InvalidInput(
                "x^-4 tail closed form needs the mixed family".into(),
            )),
        },
        X0Method::LogDepth => match pot.family {
            Family::ExpN { n, .. } => {
                let depth = -gamma.ln();
                if depth <= 0.0 {
                    return Err(no_root_err(gamma));
                }
                Ok(depth.powf(1.0 / n))
            }
            _ => Err(Error::InvalidInput(
                "log-depth closed form needs the exponential family".into(),
            )),
        },
        X0Method::LagrangeWoodSaxon => match pot.family {
            Family::WoodSaxon { r, a, .. } => {
                let alpha = r / a;
                let q = alpha * alpha / gamma - 1.0;
                if q <= 0.0 {
                    return Err(no_root_err(gamma));
                }
                Ok(alpha * q.powf(1.0 / alpha))
            }
            _ => Err(Error::InvalidInput(
                "Lagrange root needs the Wood-Saxon family".into(),
            )),
        },
        X0Method::NumericRoot => numeric_x0(pot, gamma),
    }
}

// Largest root of phi(x) = x^2 v(x) - gamma, bracketed from the decaying side.
fn numeric_x0(pot: &Potential, gamma: f64) -> Result<f64> {
    if pot.shape_v(1.0).is_none() {
        return Err(Error::Unsupported(format!(
            "no single-strength shape for the {} family",
            pot.family.name()
        )));
    }
    let phi = |x: f64| x * x * pot.shape_v(x).unwrap_or(0.0) - gamma;
    let x_hi = match pot.tail() {
        TailKind::Power { p } => {
            let from_tail = (10.0 / gamma).powf(1.0 / (p - 2.0));
            2.0 * from_tail.max(10.0)
        }
        TailKind::Exponential => {
            let mut x = 1.0;
            while x * x * pot.shape_v(x).unwrap_or(0.0) > 0.1 * gamma && x < 1e4 {
                x *= 1.2;
            }
            x
        }
        TailKind::FiniteRange { .. } => {
            return Err(Error::Unsupported(
                "finite-range tail: the criterion root sits at the edge, use exact_threshold"
                    .into(),
            ))
        }
        TailKind::InverseSquare | TailKind::Confining => {
            return Err(Error::Unsupported(
                "tail does not decay fast enough for a halo threshold".into(),
            ))
        }
    };
    // walk inward on a log grid until the criterion level is crossed
    let m = 2400;
    let step = (x_hi / 1e-3).powf(1.0 / m as f64);
    let mut bracket = None;
    let mut x = x_hi;
    for _ in 0..m {
        let inner = x / step;
        if phi(inner) >= 0.0 {
            bracket = Some((inner, x));
            break;
        }
        x = inner;
    }
    let (a, b) = bracket.ok_or_else(|| no_root_err(gamma))?;
    if phi(a) == 0.0 {
        return Ok(a);
    }
    Ok(bisect(phi, a, b, 1e-13 * b, 200))
}

/// Weak-binding halo window for the N-th s-level: resolve the critical
/// strength, solve the criterion root and convert with the unit context.
pub fn threshold_energy(
    proto: &Potential,
    n_state: usize,
    sigma: f64,
    source: CouplingSource,
) -> Result<HaloThreshold> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidInput("sigma must be positive".into()));
    }
    let method = default_x0_method(proto)?;
    let gc = critical_strength(proto, n_state, 0, source)?;
    let x0 = solve_x0(proto, gc, sigma, method)?;
    let r0 = x0 * proto.scale_length();
    let e_h = -proto.units.kinetic_scale / (2.0 * (sigma * r0).powi(2));
    Ok(HaloThreshold {
        n_state,
        sigma,
        gc,
        gc_source: source,
        gamma: 1.0 / (2.0 * sigma * sigma * gc),
        x0,
        r0,
        e_h,
        method,
    })
}

/// Apply the size criterion to a solved state.  The matching weak-binding
/// window is attached for s-levels whose family admits one.
pub fn assess(pot: &Potential, state: &RadialState, sigma: f64) -> Result<HaloAssessment> {
    if !(sigma > 0.0) {
        return Err(Error::InvalidInput("sigma must be positive".into()));
    }
    let rms = state.msr.sqrt();
    let r0 = pot.classical_radius(state.energy)?;
    let ratio = rms / r0;
    let threshold = if state.ell == 0 {
        threshold_energy(pot, state.n_r + 1, sigma, default_coupling_source(pot)).ok()
    } else {
        None
    };
    Ok(HaloAssessment {
        sigma,
        energy: state.energy * pot.units.kinetic_scale,
        rms,
        r0,
        ratio,
        is_halo: ratio >= sigma,
        threshold,
    })
}

/// Exact criterion point for the N-th s-level: tune the strength until
/// rms / r0 = sigma on the eigenvalue curve.  [`threshold_energy`]
/// approximates this point from the weak-binding side.
pub fn exact_threshold(
    proto: &Potential,
    n_state: usize,
    sigma: f64,
    cfg: &SolverConfig,
) -> Result<ExactThreshold> {
    if n_state == 0 {
        return Err(Error::InvalidInput("level index N starts at 1".into()));
    }
    if !(sigma > 0.0) {
        return Err(Error::InvalidInput("sigma must be positive".into()));
    }
    let n_r = n_state - 1;
    let probe = |g: f64| -> Result<(f64, f64, f64)> {
        let pot = proto.with_coupling(g)?;
        let st = solve_state(&pot, n_r, 0, cfg)?;
        let r0 = pot.classical_radius(st.energy)?;
        Ok((st.energy, st.msr.sqrt(), r0))
    };
    // just past its appearance the level is arbitrarily dilute, so the
    // criterion holds there and is lost at depth
    let gc = coupling::critical_numeric(proto, n_state, 0)?.value;
    let mut g_lo = gc * (1.0 + 1e-4);
    let (_, rms_lo, r0_lo) = probe(g_lo)?;
    if rms_lo / r0_lo < sigma {
        return Err(Error::Convergence(format!(
            "size ratio {:.3} already below sigma = {sigma} at appearance",
            rms_lo / r0_lo
        )));
    }
    let mut iterations = 1usize;
    let mut g_hi = g_lo * 1.35;
    loop {
        let (_, rms, r0) = probe(g_hi)?;
        iterations += 1;
        if rms / r0 < sigma {
            break;
        }
        g_lo = g_hi;
        g_hi *= 1.35;
        if iterations > 80 {
            return Err(Error::Convergence(
                "size ratio never dropped below sigma".into(),
            ));
        }
    }
    while g_hi / g_lo - 1.0 > 1e-10 {
        let gm = (g_lo * g_hi).sqrt();
        let (_, rms, r0) = probe(gm)?;
        iterations += 1;
        if rms / r0 >= sigma {
            g_lo = gm;
        } else {
            g_hi = gm;
        }
    }
    let g = 0.5 * (g_lo + g_hi);
    let (e, rms, r0) = probe(g)?;
    Ok(ExactThreshold {
        n_state,
        sigma,
        coupling: g,
        energy: e * proto.units.kinetic_scale,
        rms,
        r0,
        iterations,
    })
}

/// Re-couple the N-th s-level so its energy lands on `energy` (context
/// units, negative) and report the size ratio there.
pub fn ratio_at_energy(
    proto: &Potential,
    n_state: usize,
    energy: f64,
    cfg: &SolverConfig,
) -> Result<RatioAtEnergy> {
    if n_state == 0 {
        return Err(Error::InvalidInput("level index N starts at 1".into()));
    }
    let e_target = energy / proto.units.kinetic_scale;
    if !(e_target < 0.0) {
        return Err(Error::InvalidInput("target energy must be negative".into()));
    }
    let n_r = n_state - 1;
    let probe = |g: f64| -> Result<(f64, f64, f64)> {
        let pot = proto.with_coupling(g)?;
        let st = solve_state(&pot, n_r, 0, cfg)?;
        let r0 = pot.classical_radius(st.energy)?;
        Ok((st.energy, st.msr.sqrt(), r0))
    };
    let gc = coupling::critical_numeric(proto, n_state, 0)?.value;
    let mut g_lo = gc * (1.0 + 1e-4);
    let (e_lo, ..) = probe(g_lo)?;
    if e_lo <= e_target {
        return Err(Error::InvalidInput(format!(
            "target energy {energy:.6e} is shallower than the level at appearance"
        )));
    }
    let mut g_hi = g_lo * 1.3;
    let mut guard = 0;
    loop {
        let (e, ..) = probe(g_hi)?;
        if e <= e_target {
            break;
        }
        g_lo = g_hi;
        g_hi *= 1.3;
        guard += 1;
        if guard > 80 {
            return Err(Error::Convergence(
                "level never reached the target energy".into(),
            ));
        }
    }
    while g_hi / g_lo - 1.0 > 1e-11 {
        let gm = (g_lo * g_hi).sqrt();
        let (e, ..) = probe(gm)?;
        if e > e_target {
            g_lo = gm;
        } else {
            g_hi = gm;
        }
    }
    let g = 0.5 * (g_lo + g_hi);
    let (e, rms, r0) = probe(g)?;
    Ok(RatioAtEnergy {
        n_state,
        coupling: g,
        energy: e * proto.units.kinetic_scale,
        rms,
        r0,
        ratio: rms / r0,
    })
}

/// Scaled threshold depths s(N, n) for the rational-tail family, row order
/// n-major then level.
pub fn scan_s(
    n_values: &[f64],
    n_states: &[usize],
    sigma: f64,
    source: CouplingSource,
) -> Result<Vec<ScanPoint>> {
    let mut out = Vec::with_capacity(n_values.len() * n_states.len());
    for &n in n_values {
        let proto = Potential::rational_n(n, 1.0, 1.0)?;
        for &n_state in n_states {
            let thr = threshold_energy(&proto, n_state, sigma, source)?;
            out.push(ScanPoint {
                n,
                n_state,
                value: thr.scaled_depth(),
            });
        }
    }
    Ok(out)
}

/// Scaled threshold depths t(N, n) for the repulsive-core family with the
/// attractive x^-4 tail.
pub fn scan_t(
    n_values: &[f64],
    n_states: &[usize],
    sigma: f64,
    source: CouplingSource,
) -> Result<Vec<ScanPoint>> {
    let mut out = Vec::with_capacity(n_values.len() * n_states.len());
    for &n in n_values {
        let proto = Potential::mixed_rep4(n, 1.0, 1.0)?;
        for &n_state in n_states {
            let thr = threshold_energy(&proto, n_state, sigma, source)?;
            out.push(ScanPoint {
                n,
                n_state,
                value: thr.scaled_depth(),
            });
        }
    }
    Ok(out)
}

/// One row of the Wood-Saxon systematics at mass number A.  Works in units
/// of the surface thickness and converts energies to MeV at the end.
pub fn nuclear_row(mass_number: f64, sigma: f64, cfg: &SolverConfig) -> Result<NuclearRow> {
    if !(mass_number >= 1.0) {
        return Err(Error::InvalidInput(format!(
            "mass number must be >= 1, got {mass_number}"
        )));
    }
    let alpha = units::nuclear_alpha(mass_number);
    let proto = Potential::wood_saxon(1.0, alpha, 1.0)?;
    let unit = units::nuclear_energy_unit(mass_number);
    let thr = threshold_energy(&proto, 1, sigma, CouplingSource::Wkb)?;
    let exact = exact_threshold(&proto, 1, sigma, cfg)?;
    let at_edge = ratio_at_energy(&proto, 1, thr.e_h, cfg)?;
    Ok(NuclearRow {
        mass_number,
        coupling_exact: exact.coupling,
        e_exact: exact.energy * unit,
        e_h: thr.e_h * unit,
        ratio_at_e_h: at_edge.ratio,
        x0: thr.x0,
    })
}

pub fn nuclear_table(
    mass_numbers: &[f64],
    sigma: f64,
    cfg: &SolverConfig,
) -> Result<Vec<NuclearRow>> {
    mass_numbers
        .iter()
        .map(|&a| nuclear_row(a, sigma, cfg))
        .collect()
}

/// Fit |E_H| = prefactor * A^exponent to the closed-form window edge over
/// `samples` mass numbers log-spaced on [a_lo, a_hi].
pub fn fit_nuclear(sigma: f64, a_lo: f64, a_hi: f64, samples: usize) -> Result<NuclearFit> {
    if samples < 2 || !(a_hi > a_lo) || !(a_lo >= 1.0) {
        return Err(Error::InvalidInput(
            "fit needs a_hi > a_lo >= 1 and at least two samples".into(),
        ));
    }
    let mut xs = Vec::with_capacity(samples);
    let mut ys = Vec::with_capacity(samples);
    for k in 0..samples {
        let f = k as f64 / (samples - 1) as f64;
        let a = a_lo * (a_hi / a_lo).powf(f);
        let proto = Potential::wood_saxon(1.0, units::nuclear_alpha(a), 1.0)?;
        let thr = threshold_energy(&proto, 1, sigma, CouplingSource::Wkb)?;
        xs.push(a.ln());
        ys.push((thr.e_h * units::nuclear_energy_unit(a)).abs().ln());
    }
    let n = samples as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    Ok(NuclearFit {
        sigma,
        prefactor: intercept.exp(),
        exponent: slope,
        residual_rms: (ss / n).sqrt(),
        samples,
    })
}
