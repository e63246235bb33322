//! Limit report: every size / size-product bound evaluated against one
//! solved level, with per-bound applicability.

use halo_core::{report, solve_state, BoundScale, BoundSide, BoundStatus, SolverConfig};
use serde::Serialize;

use crate::emit::{self, Document};
use crate::request::StateInputs;
use crate::{CliError, Format, OutArgs};

#[derive(Serialize)]
struct EntryOut {
    id: &'static str,
    side: &'static str,
    scale: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    satisfied: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    margin: Option<f64>,
}

#[derive(Serialize)]
struct BoundsResults {
    energy: f64,
    mean_square_radius: f64,
    /// Exact -E <r^2> the product limits are compared against.
    product: f64,
    ell: usize,
    nodes: usize,
    entries: Vec<EntryOut>,
}

#[derive(Serialize)]
struct BoundsDiagnostics {
    lattice_points: usize,
    norm_defect: f64,
    warnings: Vec<String>,
}

fn side_str(s: BoundSide) -> &'static str {
    match s {
        BoundSide::Upper => "upper",
        BoundSide::Lower => "lower",
    }
}

fn scale_str(s: BoundScale) -> &'static str {
    match s {
        BoundScale::MeanSquareRadius => "mean-square-radius",
        BoundScale::EnergySizeProduct => "energy-size-product",
    }
}

pub fn run(si: &StateInputs, out: &OutArgs) -> Result<u8, CliError> {
    let pot = si.potential(None)?;
    let cfg = SolverConfig::default();
    let st = solve_state(&pot, si.n, si.ell, &cfg)?;
    let rep = report(&pot, &st, &cfg);
    let entries: Vec<EntryOut> = rep
        .entries
        .iter()
        .map(|e| {
            let (status, reason) = match &e.status {
                BoundStatus::Applicable => ("applicable", None),
                BoundStatus::ApplicableTrivial => ("trivial", None),
                BoundStatus::Inapplicable(r) => ("inapplicable", Some(r.clone())),
            };
            EntryOut {
                id: e.kind.id(),
                side: side_str(e.kind.side()),
                scale: scale_str(e.kind.scale()),
                status,
                reason,
                value: e.value,
                satisfied: e.satisfied,
                margin: e.margin,
            }
        })
        .collect();
    let results = BoundsResults {
        energy: rep.energy,
        mean_square_radius: rep.msr,
        product: rep.exact,
        ell: rep.ell,
        nodes: rep.nodes,
        entries,
    };
    let bytes = match out.format(Format::Json)? {
        Format::Json => emit::to_json(&Document {
            inputs: si,
            results: &results,
            diagnostics: BoundsDiagnostics {
                lattice_points: st.r.len(),
                norm_defect: st.norm_defect,
                warnings: st.warnings.clone(),
            },
            version: emit::VERSION,
        }),
        Format::Csv => {
            let rows: Vec<Vec<String>> = results
                .entries
                .iter()
                .map(|e| {
                    vec![
                        e.id.to_string(),
                        e.side.to_string(),
                        e.scale.to_string(),
                        e.status.to_string(),
                        e.value.map(emit::num).unwrap_or_default(),
                        e.satisfied.map(|b| b.to_string()).unwrap_or_default(),
                        e.margin.map(emit::num).unwrap_or_default(),
                    ]
                })
                .collect();
            emit::csv("id,side,scale,status,value,satisfied,margin", &rows)
        }
    };
    out.write(&bytes)?;
    Ok(0)
}
