//! Upper and lower limits on the size of a bound state.
//!
//! Two groups of inequalities are evaluated against a solved state. The
//! first bounds the mean square radius directly: a floor from the average
//! kinetic energy, its virial rewrite for confining power laws, and the
//! Bertlmann-Martin cap from the dipole level spacing. The second bounds
//! the product -E <r^2> through shape functionals of the potential: the
//! supremum of -r^2 V, the extrema of the moment kernel
//! W = -(6V + rV') r^2, and an integral cap restricted to nodeless states.
//!
//! Every limit is reported even when it does not apply; inapplicability is
//! data, carried as a reason string rather than an error.

use crate::error::{Error, Result};
use crate::potential::{Family, Potential, ScanConfig};
use crate::spectrum::{solve_state, RadialState, SolverConfig};

/// Slack used when checking an inequality against the solved value.
const CHECK_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// <r^2> >= (2l+3)^2 / (4<T>).
    KineticSizeFloor,
    /// Virial form of the kinetic floor for V = g r^p.
    VirialSizeFloor,
    /// Bertlmann-Martin: <r^2> of the s-wave ground state capped by the
    /// spacing to the lowest l=1 level.
    SpacingSizeCap,
    /// -E<r^2> <= 1 + sup[-r^2 V] - l(l+1).
    StrengthProductCap,
    /// The strength cap rewritten through the limiting angular momentum.
    AngularProductCap,
    /// -E<r^2> <= 1/2 + sup W / 6 - (2/3) l(l+1).
    MomentProductCap,
    /// -E<r^2> >= 1/2 + inf W / 6 - (2/3) l(l+1).
    MomentProductFloor,
    /// -2E<r^2> >= 1 for s waves when W never goes negative.
    WeakBindingFloor,
    /// Integral cap for nodeless states, finite only when [V^-]^2 is
    /// integrable.
    NodelessProductCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundSide {
    Upper,
    Lower,
}

/// Which solved quantity a limit constrains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundScale {
    MeanSquareRadius,
    EnergySizeProduct,
}

impl BoundKind {
    pub const ALL: [BoundKind; 9] = [
        BoundKind::KineticSizeFloor,
        BoundKind::VirialSizeFloor,
        BoundKind::SpacingSizeCap,
        BoundKind::StrengthProductCap,
        BoundKind::AngularProductCap,
        BoundKind::MomentProductCap,
        BoundKind::MomentProductFloor,
        BoundKind::WeakBindingFloor,
        BoundKind::NodelessProductCap,
    ];

    /// Stable identifier used in serialized reports.
    pub fn id(&self) -> &'static str {
        match self {
            BoundKind::KineticSizeFloor => "eq1",
            BoundKind::VirialSizeFloor => "eq2",
            BoundKind::SpacingSizeCap => "eq3",
            BoundKind::StrengthProductCap => "eq8",
            BoundKind::AngularProductCap => "eq10",
            BoundKind::MomentProductCap => "eq15",
            BoundKind::MomentProductFloor => "eq17",
            BoundKind::WeakBindingFloor => "eq18",
            BoundKind::NodelessProductCap => "eq24",
        }
    }

    pub fn side(&self) -> BoundSide {
        match self {
            BoundKind::KineticSizeFloor
            | BoundKind::VirialSizeFloor
            | BoundKind::MomentProductFloor
            | BoundKind::WeakBindingFloor => BoundSide::Lower,
            _ => BoundSide::Upper,
        }
    }

    pub fn scale(&self) -> BoundScale {
        match self {
            BoundKind::KineticSizeFloor
            | BoundKind::VirialSizeFloor
            | BoundKind::SpacingSizeCap => BoundScale::MeanSquareRadius,
            _ => BoundScale::EnergySizeProduct,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundStatus {
    Applicable,
    /// Valid but carries no information (a floor at or below zero under a
    /// nonnegative quantity).
    ApplicableTrivial,
    Inapplicable(String),
}

#[derive(Debug, Clone)]
pub struct BoundEntry {
    pub kind: BoundKind,
    pub status: BoundStatus,
    pub value: Option<f64>,
    /// Whether the solved quantity respects the limit (tolerance 1e-9).
    pub satisfied: Option<bool>,
    /// Signed headroom (value - solved) / |solved|.
    pub margin: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub energy: f64,
    pub msr: f64,
    /// -E <r^2>, negative for confining spectra.
    pub exact: f64,
    pub ell: usize,
    pub nodes: usize,
    pub entries: Vec<BoundEntry>,
}

impl BoundsReport {
    pub fn entry(&self, kind: BoundKind) -> &BoundEntry {
        self.entries
            .iter()
            .find(|e| e.kind == kind)
            .expect("report carries every bound kind")
    }
}

/// <r^2> >= (2l+3)^2 / (4 <T>) from the kinetic expectation of the state.
pub fn kinetic_size_floor(state: &RadialState) -> Result<f64> {
    if !(state.t_mean > 0.0) {
        return Err(Error::InvalidInput(
            "kinetic floor needs a positive mean kinetic energy".into(),
        ));
    }
    let s = 2.0 * state.ell as f64 + 3.0;
    Ok(s * s / (4.0 * state.t_mean))
}

/// Kinetic floor with <T> eliminated by the virial theorem, for V = g r^p:
/// <r^2> >= (2l+3)^2 (p+2) / (4 p E).
pub fn virial_size_floor(pot: &Potential, state: &RadialState) -> Result<f64> {
    let p = match &pot.family {
        Family::PowerLaw { p, .. } => *p,
        _ => {
            return Err(Error::Unsupported(
                "virial floor holds for pure power-law wells".into(),
            ))
        }
    };
    if !(state.energy > 0.0) {
        return Err(Error::InvalidInput(
            "confining levels have positive energy".into(),
        ));
    }
    let s = 2.0 * state.ell as f64 + 3.0;
    Ok(s * s * (p + 2.0) / (4.0 * p * state.energy))
}

/// Bertlmann-Martin cap: for the s-wave ground state,
/// <r^2> <= 3 / (E_{l=1} - E_{l=0}). Solves the lowest l=1 level.
pub fn spacing_size_cap(pot: &Potential, state: &RadialState, cfg: &SolverConfig) -> Result<f64> {
    if state.ell != 0 || state.n_r != 0 {
        return Err(Error::InvalidInput(
            "spacing cap applies to the s-wave ground state".into(),
        ));
    }
    let dipole = solve_state(pot, 0, 1, cfg)?;
    let gap = dipole.energy - state.energy;
    if !(gap > 0.0) {
        return Err(Error::Convergence(format!(
            "dipole spacing came out non-positive ({gap:e})"
        )));
    }
    Ok(3.0 / gap)
}

/// -E<r^2> <= 1 + sup[-r^2 V] - l(l+1).
pub fn strength_product_cap(pot: &Potential, ell: usize) -> Result<f64> {
    let scan = pot.shape_scan(&ScanConfig::default());
    let sup = scan
        .sup_neg_r2v
        .ok_or_else(|| Error::Unsupported("sup[-r^2 V] is unbounded".into()))?;
    let lam = (ell * (ell + 1)) as f64;
    Ok(1.0 + sup.value - lam)
}

/// The strength cap through the limiting angular momentum L+ with
/// sup[-r^2 V] = (L+ + 1/2)^2:  -E<r^2> <= 5/4 + (L+)^2 - l^2 + L+ - l.
pub fn angular_product_cap(pot: &Potential, ell: usize) -> Result<f64> {
    let lp = pot
        .l_plus(&ScanConfig::default())
        .ok_or_else(|| Error::Unsupported("sup[-r^2 V] is unbounded".into()))?;
    let el = ell as f64;
    Ok(1.25 + lp * lp - el * el + lp - el)
}

fn w_extremum(pot: &Potential, pick_sup: bool) -> Result<f64> {
    let scan = pot.shape_scan(&ScanConfig::default());
    if scan.w_distributional {
        return Err(Error::Unsupported(
            "surface jump makes the moment kernel distributional".into(),
        ));
    }
    let ext = if pick_sup { scan.sup_w } else { scan.inf_w };
    ext.map(|e| e.value).ok_or_else(|| {
        Error::Unsupported(if pick_sup {
            "sup W is unbounded".into()
        } else {
            "inf W is unbounded".into()
        })
    })
}

/// -E<r^2> <= 1/2 + sup W / 6 - (2/3) l(l+1) with W = -(6V + rV') r^2.
pub fn moment_product_cap(pot: &Potential, ell: usize) -> Result<f64> {
    let sup = w_extremum(pot, true)?;
    let lam = (ell * (ell + 1)) as f64;
    Ok(0.5 + sup / 6.0 - 2.0 / 3.0 * lam)
}

/// -E<r^2> >= 1/2 + inf W / 6 - (2/3) l(l+1).
pub fn moment_product_floor(pot: &Potential, ell: usize) -> Result<f64> {
    let inf = w_extremum(pot, false)?;
    let lam = (ell * (ell + 1)) as f64;
    Ok(0.5 + inf / 6.0 - 2.0 / 3.0 * lam)
}

/// Weak-binding floor -2E<r^2> >= 1 for s waves. Holds when W stays
/// nonnegative, and for finite-range wells regardless of the surface step.
pub fn weak_binding_floor(pot: &Potential, ell: usize) -> Result<f64> {
    if ell != 0 {
        return Err(Error::Unsupported(
            "weak-binding floor is an s-wave statement".into(),
        ));
    }
    let scan = pot.shape_scan(&ScanConfig::default());
    let clean_w = !scan.w_distributional && scan.w_nonnegative;
    if clean_w || pot.finite_range_lower_limit() {
        Ok(0.5)
    } else {
        Err(Error::Unsupported(
            "moment kernel takes negative values".into(),
        ))
    }
}

/// Nodeless-state cap -E<r^2> < 1 + I J / 3 - l(l+1), with
/// I = -1 + int r V^- dr and J = int r^3 [V^-]^2 dr.
pub fn nodeless_product_cap(pot: &Potential, state: &RadialState) -> Result<f64> {
    if state.nodes != 0 {
        return Err(Error::InvalidInput(
            "integral cap is restricted to nodeless states".into(),
        ));
    }
    let fns = pot.integral_functionals();
    if !fns.v2_integrable {
        return Err(Error::Unsupported(
            "[V^-]^2 is not integrable at the origin".into(),
        ));
    }
    let i = fns
        .i
        .ok_or_else(|| Error::Unsupported("int r V^- diverges".into()))?;
    let j = fns
        .j
        .ok_or_else(|| Error::Unsupported("int r^3 [V^-]^2 diverges".into()))?;
    if !(i > 0.0) {
        return Err(Error::Unsupported(format!(
            "attraction functional I = {i:.4} is not positive"
        )));
    }
    let lam = (state.ell * (state.ell + 1)) as f64;
    Ok(1.0 + i * j / 3.0 - lam)
}

fn entry_for(kind: BoundKind, value: Result<f64>, msr: f64, exact: f64) -> BoundEntry {
    match value {
        Err(e) => BoundEntry {
            kind,
            status: BoundStatus::Inapplicable(e.to_string()),
            value: None,
            satisfied: None,
            margin: None,
        },
        Ok(v) => {
            let q = match kind.scale() {
                BoundScale::MeanSquareRadius => msr,
                BoundScale::EnergySizeProduct => exact,
            };
            let satisfied = match kind.side() {
                BoundSide::Upper => q <= v + CHECK_TOLERANCE,
                BoundSide::Lower => q >= v - CHECK_TOLERANCE,
            };
            let status = if kind.side() == BoundSide::Lower && v <= 0.0 && q >= 0.0 {
                BoundStatus::ApplicableTrivial
            } else {
                BoundStatus::Applicable
            };
            BoundEntry {
                kind,
                status,
                value: Some(v),
                satisfied: Some(satisfied),
                margin: Some((v - q) / q.abs().max(f64::MIN_POSITIVE)),
            }
        }
    }
}

/// Evaluate every limit against a solved state.
pub fn report(pot: &Potential, state: &RadialState, cfg: &SolverConfig) -> BoundsReport {
    let msr = state.msr;
    let exact = state.product();
    let entries = BoundKind::ALL
        .iter()
        .map(|&kind| {
            let value = match kind {
                BoundKind::KineticSizeFloor => kinetic_size_floor(state),
                BoundKind::VirialSizeFloor => virial_size_floor(pot, state),
                BoundKind::SpacingSizeCap => spacing_size_cap(pot, state, cfg),
                BoundKind::StrengthProductCap => strength_product_cap(pot, state.ell),
                BoundKind::AngularProductCap => angular_product_cap(pot, state.ell),
                BoundKind::MomentProductCap => moment_product_cap(pot, state.ell),
                BoundKind::MomentProductFloor => moment_product_floor(pot, state.ell),
                BoundKind::WeakBindingFloor => weak_binding_floor(pot, state.ell),
                BoundKind::NodelessProductCap => nodeless_product_cap(pot, state),
            };
            entry_for(kind, value, msr, exact)
        })
        .collect();
    BoundsReport {
        energy: state.energy,
        msr,
        exact,
        ell: state.ell,
        nodes: state.nodes,
        entries,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::Potential;
    use approx::assert_relative_eq;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    fn solved(pot: &Potential, n_r: usize, ell: usize) -> RadialState {
        solve_state(pot, n_r, ell, &cfg()).unwrap()
    }

    #[test]
    fn oscillator_saturates_size_floors_and_cap() {
        let pot = Potential::power_law(2.0, 1.0).unwrap();
        let st = solved(&pot, 0, 0);
        let rep = report(&pot, &st, &cfg());
        // all three mean-square-radius limits are tight on the oscillator
        for kind in [
            BoundKind::KineticSizeFloor,
            BoundKind::VirialSizeFloor,
            BoundKind::SpacingSizeCap,
        ] {
            let e = rep.entry(kind);
            assert_eq!(e.status, BoundStatus::Applicable, "{kind:?}");
            assert_relative_eq!(e.value.unwrap(), 1.5, max_relative = 1e-6);
            assert_eq!(e.satisfied, Some(true));
        }
        // confining spectrum: product caps hold trivially, floors withdraw
        assert!(rep.exact < 0.0);
        assert_eq!(
            rep.entry(BoundKind::StrengthProductCap).satisfied,
            Some(true)
        );
        assert!(matches!(
            rep.entry(BoundKind::MomentProductFloor).status,
            BoundStatus::Inapplicable(_)
        ));
        assert!(matches!(
            rep.entry(BoundKind::NodelessProductCap).status,
            BoundStatus::Inapplicable(_)
        ));
    }

    #[test]
    fn strength_cap_columns() {
        // 1 + g sup[x^2/(1+x^3)] - l(l+1), sup attained at x = 2^(1/3)
        let cases = [
            (1.35, 0usize, 1.7143),
            (3.0, 0, 2.5873),
            (7.0, 1, 2.7037),
            (10.0, 1, 4.291),
        ];
        for (g, ell, want) in cases {
            let pot = Potential::rational_cubed(g, 1.0).unwrap();
            let got = strength_product_cap(&pot, ell).unwrap();
            assert_relative_eq!(got, want, max_relative = 1e-4);
            // the limiting-angular-momentum rewrite is the same number
            let alt = angular_product_cap(&pot, ell).unwrap();
            assert_relative_eq!(got, alt, max_relative = 1e-10);
        }
        let yk = Potential::yukawa(5.0, 1.0).unwrap();
        assert_relative_eq!(
            strength_product_cap(&yk, 0).unwrap(),
            1.0 + 5.0 / std::f64::consts::E,
            max_relative = 1e-8
        );
    }

    #[test]
    fn moment_cap_and_floor_columns() {
        // rational cubed: sup W = 9g/4 at x = 1, inf W = 0
        for (g, ell, want) in [(1.35, 0usize, 1.0063), (3.0, 0, 1.625), (7.0, 1, 1.7917)] {
            let pot = Potential::rational_cubed(g, 1.0).unwrap();
            assert_relative_eq!(
                moment_product_cap(&pot, ell).unwrap(),
                want,
                max_relative = 1e-4
            );
        }
        let rc = Potential::rational_cubed(2.0, 1.0).unwrap();
        assert_relative_eq!(moment_product_floor(&rc, 0).unwrap(), 0.5, epsilon = 1e-9);
        // screened coulomb: W = g x (5 - x) e^-x dips negative past x = 5
        for (g, ell, want) in [(2.0, 0usize, 1.0033), (9.085, 1, 1.4528)] {
            let pot = Potential::yukawa(g, 1.0).unwrap();
            assert_relative_eq!(
                moment_product_cap(&pot, ell).unwrap(),
                want,
                max_relative = 1e-4
            );
        }
        let yk = Potential::yukawa(2.0, 1.0).unwrap();
        assert_relative_eq!(
            moment_product_floor(&yk, 0).unwrap(),
            0.495,
            max_relative = 2e-4
        );
        assert!(weak_binding_floor(&yk, 0).is_err());
    }

    #[test]
    fn nodeless_cap_matches_tables() {
        for (g, ell, want) in [(1.35, 0usize, 1.1549), (5.0, 0, 17.949), (6.945, 1, 46.942)] {
            let pot = Potential::rational_cubed(g, 1.0).unwrap();
            let st = solved(&pot, 0, ell);
            assert_relative_eq!(
                nodeless_product_cap(&pot, &st).unwrap(),
                want,
                max_relative = 1e-4
            );
        }
        // not available when [V^-]^2 fails to integrate at the origin
        let yk = Potential::yukawa(2.0, 1.0).unwrap();
        let st = solved(&yk, 0, 0);
        assert!(nodeless_product_cap(&yk, &st).is_err());
    }

    #[test]
    fn report_sandwich_on_table_families() {
        let mut cases: Vec<(Potential, usize)> = vec![];
        for g in [1.35, 2.0, 5.0] {
            cases.push((Potential::rational_cubed(g, 1.0).unwrap(), 0));
        }
        for g in [2.0, 5.0] {
            cases.push((Potential::yukawa(g, 1.0).unwrap(), 0));
        }
        cases.push((Potential::rational_cubed(7.5, 1.0).unwrap(), 1));
        for (pot, ell) in cases {
            let st = solved(&pot, 0, ell);
            let rep = report(&pot, &st, &cfg());
            let get = |k: BoundKind| rep.entry(k).value.unwrap();
            let floor = get(BoundKind::MomentProductFloor);
            let cap = get(BoundKind::MomentProductCap);
            let strength = get(BoundKind::StrengthProductCap);
            assert!(floor <= rep.exact + 1e-9, "floor {floor} vs {}", rep.exact);
            assert!(rep.exact <= cap + 1e-9, "cap {cap} vs {}", rep.exact);
            assert!(cap <= strength + 1e-9, "cap {cap} vs strength {strength}");
            for e in &rep.entries {
                if !matches!(e.status, BoundStatus::Inapplicable(_)) {
                    assert_eq!(e.satisfied, Some(true), "{:?} on {:?}", e.kind, pot.family);
                }
            }
            if let Some(v) = rep.entry(BoundKind::NodelessProductCap).value {
                assert!(rep.exact < v, "nodeless cap must be strict");
            }
        }
    }

    #[test]
    fn constant_moment_family_saturates_both_moment_limits() {
        for (a, b) in [(1.0, 3.0), (2.0, 4.0), (0.5, 2.5)] {
            let pot = Potential::w_constant(a, b, 1.0).unwrap();
            let st = solved(&pot, 0, 0);
            let cap = moment_product_cap(&pot, 0).unwrap();
            let floor = moment_product_floor(&pot, 0).unwrap();
            assert_relative_eq!(cap, floor, max_relative = 1e-12);
            assert_relative_eq!(st.product(), cap, max_relative = 1e-4);
        }
    }

    #[test]
    fn surface_step_families_keep_weak_binding_floor() {
        let sw = Potential::square_well(2.6, 1.0).unwrap();
        let st = solved(&sw, 0, 0);
        let rep = report(&sw, &st, &cfg());
        assert!(matches!(
            rep.entry(BoundKind::MomentProductCap).status,
            BoundStatus::Inapplicable(_)
        ));
        assert!(matches!(
            rep.entry(BoundKind::MomentProductFloor).status,
            BoundStatus::Inapplicable(_)
        ));
        let wb = rep.entry(BoundKind::WeakBindingFloor);
        assert_eq!(wb.value, Some(0.5));
        assert_eq!(wb.satisfied, Some(true));
        assert_relative_eq!(
            rep.entry(BoundKind::StrengthProductCap).value.unwrap(),
            3.6,
            max_relative = 1e-6
        );

        let te = Potential::truncated_exp(5.0, 1.0).unwrap();
        let st = solved(&te, 0, 0);
        let rep = report(&te, &st, &cfg());
        let wb = rep.entry(BoundKind::WeakBindingFloor);
        assert_eq!(wb.value, Some(0.5));
        assert_eq!(wb.satisfied, Some(true));
        assert_relative_eq!(
            rep.entry(BoundKind::StrengthProductCap).value.unwrap(),
            1.0 + 5.0 / std::f64::consts::E,
            max_relative = 1e-6
        );
    }

    #[test]
    fn spacing_cap_needs_a_dipole_level() {
        // below the l=1 threshold the cap has nothing to compare against
        let shallow = Potential::rational_cubed(6.9, 1.0).unwrap();
        let st = solved(&shallow, 0, 0);
        let rep = report(&shallow, &st, &cfg());
        assert!(matches!(
            rep.entry(BoundKind::SpacingSizeCap).status,
            BoundStatus::Inapplicable(_)
        ));
        // just above it the cap exists and holds
        let deep = Potential::rational_cubed(7.5, 1.0).unwrap();
        let st = solved(&deep, 0, 0);
        let cap = spacing_size_cap(&deep, &st, &cfg()).unwrap();
        assert!(st.msr <= cap + 1e-9, "msr {} cap {cap}", st.msr);
    }

    #[test]
    fn negative_floor_is_reported_trivial() {
        let yk = Potential::yukawa(9.085, 1.0).unwrap();
        let st = solved(&yk, 0, 1);
        let rep = report(&yk, &st, &cfg());
        let e = rep.entry(BoundKind::MomentProductFloor);
        assert!(e.value.unwrap() < 0.0);
        assert_eq!(e.status, BoundStatus::ApplicableTrivial);
        assert_eq!(e.satisfied, Some(true));
    }

    #[test]
    fn nodal_state_withdraws_nodeless_cap() {
        let pot = Potential::rational_cubed(25.0, 1.0).unwrap();
        let st = solved(&pot, 1, 0);
        assert_eq!(st.nodes, 1);
        let rep = report(&pot, &st, &cfg());
        assert!(matches!(
            rep.entry(BoundKind::NodelessProductCap).status,
            BoundStatus::Inapplicable(_)
        ));
        assert!(matches!(
            rep.entry(BoundKind::SpacingSizeCap).status,
            BoundStatus::Inapplicable(_)
        ));
    }
}
