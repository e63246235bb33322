//! Scaled threshold-depth scans against the shape exponent, the data
//! behind the two tail-sensitivity figures.

use halo_core::{scan_s, scan_t, CouplingSource};
use serde::Serialize;

use crate::emit::{self, Document};
use crate::{invalid, CliError, Format, ScanArgs};

#[derive(Serialize)]
struct ScanInputs {
    subcommand: &'static str,
    fig: u8,
    family: &'static str,
    variable: &'static str,
    n_min: f64,
    n_max: f64,
    n_count: usize,
    levels: Vec<usize>,
    sigma: f64,
    source: &'static str,
}

#[derive(Serialize)]
struct PointOut {
    n: f64,
    level: usize,
    value: f64,
}

#[derive(Serialize)]
struct ScanResults {
    points: Vec<PointOut>,
}

#[derive(Serialize)]
struct ScanDiagnostics {
    samples: usize,
}

fn logspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 0 || hi < lo {
        return vec![];
    }
    if count == 1 {
        return vec![lo];
    }
    let (a, b) = (lo.ln(), hi.ln());
    let mut v: Vec<f64> = (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect();
    // exp(ln x) can land a ulp off; the endpoints are user input, keep them
    v[0] = lo;
    v[count - 1] = hi;
    v
}

pub fn run(args: &ScanArgs) -> Result<u8, CliError> {
    let (family, variable, n_min_default) = match args.fig {
        1 => ("rational-n", "s", 4.0),
        2 => ("mixed-rep4", "t", 5.0),
        other => return Err(invalid(format!("unknown figure {other}: use 1 or 2"))),
    };
    let sigma = args.sigma.unwrap_or(2.0);
    if !(sigma > 0.0) {
        return Err(invalid("sigma must be positive"));
    }
    // the published curves come from the phase-integral strengths; numeric
    // strengths are the exact-calculation cross-check
    let source = match args.source.as_deref() {
        None | Some("bargmann") => CouplingSource::Bargmann,
        Some("numeric") => CouplingSource::Numeric,
        Some(other) => {
            return Err(invalid(format!(
                "unknown strength source {other:?}: use numeric or bargmann"
            )))
        }
    };
    let n_min = args.n_min.unwrap_or(n_min_default);
    let n_max = args.n_max.unwrap_or(100.0);
    let n_count = args.n_count.unwrap_or(25);
    let levels = args.levels.clone().unwrap_or_else(|| vec![1, 2, 3]);
    let n_values = logspace(n_min, n_max, n_count);

    let points = if args.fig == 1 {
        scan_s(&n_values, &levels, sigma, source)?
    } else {
        scan_t(&n_values, &levels, sigma, source)?
    };

    let inputs = ScanInputs {
        subcommand: "scan",
        fig: args.fig,
        family,
        variable,
        n_min,
        n_max,
        n_count,
        levels,
        sigma,
        source: source.id(),
    };
    let bytes = match args.out.format(Format::Csv)? {
        Format::Csv => {
            let rows: Vec<Vec<String>> = points
                .iter()
                .map(|p| vec![emit::num(p.n), p.n_state.to_string(), emit::num(p.value)])
                .collect();
            emit::csv(&format!("n,N,{variable}"), &rows)
        }
        Format::Json => {
            let samples = points.len();
            emit::to_json(&Document {
                inputs,
                results: ScanResults {
                    points: points
                        .into_iter()
                        .map(|p| PointOut {
                            n: p.n,
                            level: p.n_state,
                            value: p.value,
                        })
                        .collect(),
                },
                diagnostics: ScanDiagnostics { samples },
                version: emit::VERSION,
            })
        }
    };
    args.out.write(&bytes)?;
    Ok(0)
}
