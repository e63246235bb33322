//! Single-level solve: energy, size moments and the -E<r^2> product.

use halo_core::{solve_state, SolverConfig};
use serde::Serialize;

use crate::emit::{self, Document};
use crate::request::StateInputs;
use crate::{CliError, Format, OutArgs};

#[derive(Serialize)]
struct SolveResults {
    /// Eigenvalue in solver units (1 / context length squared).
    energy: f64,
    /// Eigenvalue times the kinetic scale; equals `energy` when
    /// dimensionless, physical energy otherwise.
    energy_physical: f64,
    mean_square_radius: f64,
    rms_radius: f64,
    /// -E <r^2>, invariant under length rescaling.
    product: f64,
    ell: usize,
    n: usize,
    nodes: usize,
    potential_mean: f64,
    kinetic_mean: f64,
}

#[derive(Serialize)]
struct SolveDiagnostics {
    lattice_points: usize,
    norm_defect: f64,
    unit_norm_defect: f64,
    tail_msr_bound: f64,
    warnings: Vec<String>,
}

pub fn run(si: &StateInputs, out: &OutArgs) -> Result<u8, CliError> {
    let pot = si.potential(None)?;
    let cfg = SolverConfig::default();
    let st = solve_state(&pot, si.n, si.ell, &cfg)?;
    let k = pot.units.kinetic_scale;
    let results = SolveResults {
        energy: st.energy,
        energy_physical: st.energy * k,
        mean_square_radius: st.msr,
        rms_radius: st.msr.sqrt(),
        product: st.product(),
        ell: st.ell,
        n: st.n_r,
        nodes: st.nodes,
        potential_mean: st.v_mean,
        kinetic_mean: st.t_mean,
    };
    let bytes = match out.format(Format::Json)? {
        Format::Json => emit::to_json(&Document {
            inputs: si,
            results: &results,
            diagnostics: SolveDiagnostics {
                lattice_points: st.r.len(),
                norm_defect: st.norm_defect,
                unit_norm_defect: st.unit_norm_defect,
                tail_msr_bound: st.tail_msr_bound,
                warnings: st.warnings.clone(),
            },
            version: emit::VERSION,
        }),
        Format::Csv => emit::csv(
            "energy,energy_physical,msr,rms,product,ell,n,nodes",
            &[vec![
                emit::num(results.energy),
                emit::num(results.energy_physical),
                emit::num(results.mean_square_radius),
                emit::num(results.rms_radius),
                emit::num(results.product),
                results.ell.to_string(),
                results.n.to_string(),
                results.nodes.to_string(),
            ]],
        ),
    };
    out.write(&bytes)?;
    Ok(0)
}
