//! Halo criterion: assessment of a solved level when a strength is given,
//! the weak-binding occurrence window otherwise, and the full systematics
//! row for the nuclear well.

use halo_core::{
    assess, default_coupling_source, exact_threshold, nuclear_row, solve_state, threshold_energy,
    ExactThreshold, HaloThreshold, SolverConfig,
};
use serde::Serialize;

use crate::emit::{self, Document};
use crate::request::StateInputs;
use crate::{CliError, Format, OutArgs};

#[derive(Serialize)]
struct ThresholdOut {
    level: usize,
    sigma: f64,
    /// Critical strength feeding the window.
    gc: f64,
    source: &'static str,
    gamma: f64,
    x0: f64,
    /// Turning radius at the window edge, context length units.
    r0: f64,
    /// Window edge, context energy units.
    e_h: f64,
    scaled_depth: f64,
    method: &'static str,
}

impl ThresholdOut {
    fn new(t: &HaloThreshold) -> Self {
        ThresholdOut {
            level: t.n_state,
            sigma: t.sigma,
            gc: t.gc,
            source: t.gc_source.id(),
            gamma: t.gamma,
            x0: t.x0,
            r0: t.r0,
            e_h: t.e_h,
            scaled_depth: t.scaled_depth(),
            method: t.method.id(),
        }
    }
}

#[derive(Serialize)]
struct ExactOut {
    level: usize,
    sigma: f64,
    coupling: f64,
    energy: f64,
    rms_radius: f64,
    classical_radius: f64,
}

impl ExactOut {
    fn new(e: &ExactThreshold) -> Self {
        ExactOut {
            level: e.n_state,
            sigma: e.sigma,
            coupling: e.coupling,
            energy: e.energy,
            rms_radius: e.rms,
            classical_radius: e.r0,
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum HaloResults {
    Assessment {
        mode: &'static str,
        sigma: f64,
        energy: f64,
        rms_radius: f64,
        classical_radius: f64,
        ratio: f64,
        is_halo: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        threshold: Option<ThresholdOut>,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact: Option<ExactOut>,
    },
    Window {
        mode: &'static str,
        threshold: ThresholdOut,
        #[serde(skip_serializing_if = "Option::is_none")]
        exact: Option<ExactOut>,
    },
    Nuclear {
        mode: &'static str,
        mass_number: f64,
        alpha: f64,
        sigma: f64,
        level: usize,
        /// WKB critical strength behind the window.
        gc_window: f64,
        /// Strength at the exact criterion point.
        coupling_exact: f64,
        /// Exact criterion energy, MeV.
        e_exact: f64,
        /// Window edge, MeV.
        e_h: f64,
        /// Size ratio at the window edge.
        ratio_at_e_h: f64,
        x0: f64,
        method: &'static str,
    },
}

#[derive(Serialize)]
struct HaloDiagnostics {
    #[serde(skip_serializing_if = "Option::is_none")]
    lattice_points: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    norm_defect: Option<f64>,
    warnings: Vec<String>,
}

fn csv_of(results: &HaloResults) -> String {
    match results {
        HaloResults::Assessment {
            sigma,
            energy,
            rms_radius,
            classical_radius,
            ratio,
            is_halo,
            threshold,
            ..
        } => emit::csv(
            "sigma,energy,rms,r0,ratio,is_halo,e_h",
            &[vec![
                emit::num(*sigma),
                emit::num(*energy),
                emit::num(*rms_radius),
                emit::num(*classical_radius),
                emit::num(*ratio),
                is_halo.to_string(),
                threshold
                    .as_ref()
                    .map(|t| emit::num(t.e_h))
                    .unwrap_or_default(),
            ]],
        ),
        HaloResults::Window { threshold: t, .. } => emit::csv(
            "level,sigma,gc,gamma,x0,r0,e_h,scaled_depth,method,source",
            &[vec![
                t.level.to_string(),
                emit::num(t.sigma),
                emit::num(t.gc),
                emit::num(t.gamma),
                emit::num(t.x0),
                emit::num(t.r0),
                emit::num(t.e_h),
                emit::num(t.scaled_depth),
                t.method.to_string(),
                t.source.to_string(),
            ]],
        ),
        HaloResults::Nuclear {
            mass_number,
            sigma,
            gc_window,
            coupling_exact,
            e_exact,
            e_h,
            ratio_at_e_h,
            x0,
            ..
        } => emit::csv(
            "mass_number,sigma,gc_window,coupling_exact,e_exact,e_h,ratio_at_e_h,x0",
            &[vec![
                emit::num(*mass_number),
                emit::num(*sigma),
                emit::num(*gc_window),
                emit::num(*coupling_exact),
                emit::num(*e_exact),
                emit::num(*e_h),
                emit::num(*ratio_at_e_h),
                emit::num(*x0),
            ]],
        ),
    }
}

pub fn run(si: &StateInputs, out: &OutArgs) -> Result<u8, CliError> {
    let sigma = si.sigma.unwrap_or(2.0);
    let level = si.level.unwrap_or(1);
    let want_exact = si.exact.unwrap_or(false);
    let cfg = SolverConfig::default();

    let (results, diagnostics) = if si.g.is_some() {
        let pot = si.potential(None)?;
        let st = solve_state(&pot, si.n, si.ell, &cfg)?;
        let a = assess(&pot, &st, sigma)?;
        let exact = if want_exact {
            if si.ell != 0 {
                return Err(CliError::Core(halo_core::Error::InvalidInput(
                    "the exact criterion point tracks s-levels; drop --exact for ell > 0".into(),
                )));
            }
            // follow the assessed level unless one was asked for
            let at_level = si.level.unwrap_or(si.n + 1);
            Some(ExactOut::new(&exact_threshold(&pot, at_level, sigma, &cfg)?))
        } else {
            None
        };
        (
            HaloResults::Assessment {
                mode: "assessment",
                sigma: a.sigma,
                energy: a.energy,
                rms_radius: a.rms,
                classical_radius: a.r0,
                ratio: a.ratio,
                is_halo: a.is_halo,
                threshold: a.threshold.as_ref().map(ThresholdOut::new),
                exact,
            },
            HaloDiagnostics {
                lattice_points: Some(st.r.len()),
                norm_defect: Some(st.norm_defect),
                warnings: st.warnings.clone(),
            },
        )
    } else if si.family == "wood-saxon" && si.units == "nuclear" && level == 1 {
        let a_mass = si.mass_number.ok_or_else(|| {
            CliError::Core(halo_core::Error::InvalidInput(
                "nuclear units need --A <mass number>".into(),
            ))
        })?;
        let row = nuclear_row(a_mass, sigma, &cfg)?;
        (
            HaloResults::Nuclear {
                mode: "nuclear",
                mass_number: row.mass_number,
                alpha: halo_core::units::nuclear_alpha(a_mass),
                sigma,
                level,
                gc_window: halo_core::wkb_wood_saxon(a_mass, 1),
                coupling_exact: row.coupling_exact,
                e_exact: row.e_exact,
                e_h: row.e_h,
                ratio_at_e_h: row.ratio_at_e_h,
                x0: row.x0,
                method: "lagrange-eq35",
            },
            HaloDiagnostics {
                lattice_points: None,
                norm_defect: None,
                warnings: vec![],
            },
        )
    } else {
        let pot = si.potential(Some(1.0))?;
        let src = default_coupling_source(&pot);
        let thr = threshold_energy(&pot, level, sigma, src)?;
        let exact = if want_exact {
            Some(ExactOut::new(&exact_threshold(&pot, level, sigma, &cfg)?))
        } else {
            None
        };
        (
            HaloResults::Window {
                mode: "window",
                threshold: ThresholdOut::new(&thr),
                exact,
            },
            HaloDiagnostics {
                lattice_points: None,
                norm_defect: None,
                warnings: vec![],
            },
        )
    };

    let bytes = match out.format(Format::Json)? {
        Format::Json => emit::to_json(&Document {
            inputs: si,
            results: &results,
            diagnostics,
            version: emit::VERSION,
        }),
        Format::Csv => csv_of(&results),
    };
    out.write(&bytes)?;
    Ok(0)
}
