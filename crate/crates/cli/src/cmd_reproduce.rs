//! Recompute the embedded reference tables and in-text anchor numbers,
//! reporting per-cell deviations.  Any cell outside its tolerance makes
//! the run exit with code 5.

use halo_core::{
    critical_strength, nuclear_table, ratio_at_energy, report, solve_state, solve_x0,
    threshold_energy, BoundKind, BoundStatus, CouplingSource, Family, Potential, SolverConfig,
    UnitContext, X0Method,
};
use serde::Serialize;

use crate::emit::{self, Document};
use crate::{invalid, CliError, Format, ReproduceArgs};

const TABLE1: &str = include_str!("../data/table1.csv");
const TABLE2: &str = include_str!("../data/table2.csv");
const TABLE3: &str = include_str!("../data/table3.csv");
const TABLE4: &str = include_str!("../data/table4.csv");
const TABLE5: &str = include_str!("../data/table5.csv");

/// Relative tolerance on the recomputed bound columns where the printed
/// digits carry the full analytic value.
const EQ_TOL: f64 = 1e-4;
/// The yukawa lower-limit column was printed from a kernel extremum kept
/// to two significant figures, so those tables only support the looser
/// tolerance used for the exact column.
const EQ_TOL_LOOSE: f64 = 2e-3;
/// Relative tolerance on the exact product column.
const EXACT_TOL: f64 = 2e-3;
/// Relaxed exact tolerance on near-threshold rows unless --strict.
const NEAR_TOL: f64 = 5e-3;
/// Absolute tolerances for the mass table: energies in MeV, size ratio.
const ENERGY_TOL: f64 = 0.01;
const RATIO_TOL: f64 = 0.02;

#[derive(Serialize)]
struct ColumnCmp {
    column: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    computed: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_diff: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_diff: Option<f64>,
    tolerance: f64,
    tolerance_kind: &'static str,
    pass: bool,
}

impl ColumnCmp {
    fn relative(
        column: &'static str,
        computed: Option<f64>,
        reference: Option<f64>,
        tolerance: f64,
    ) -> Self {
        Self::build(column, computed, reference, tolerance, "rel")
    }

    fn absolute(
        column: &'static str,
        computed: Option<f64>,
        reference: Option<f64>,
        tolerance: f64,
    ) -> Self {
        Self::build(column, computed, reference, tolerance, "abs")
    }

    fn build(
        column: &'static str,
        computed: Option<f64>,
        reference: Option<f64>,
        tolerance: f64,
        kind: &'static str,
    ) -> Self {
        let (abs_diff, rel_diff, pass) = match (computed, reference) {
            (Some(c), Some(r)) => {
                let abs = (c - r).abs();
                let rel = abs / r.abs();
                let ok = if kind == "rel" { rel <= tolerance } else { abs <= tolerance };
                (Some(abs), Some(rel), ok)
            }
            // a printed value the computation failed to produce
            (None, Some(_)) => (None, None, false),
            // nothing printed: nothing to compare
            _ => (None, None, true),
        };
        ColumnCmp {
            column,
            computed,
            reference,
            abs_diff,
            rel_diff,
            tolerance,
            tolerance_kind: kind,
            pass,
        }
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum RowKey {
    Strength { g: f64 },
    Mass { mass_number: f64 },
}

#[derive(Serialize)]
struct RowCmp {
    inputs: RowKey,
    columns: Vec<ColumnCmp>,
    pass: bool,
}

#[derive(Serialize)]
struct TableCmp {
    table: u8,
    family: &'static str,
    ell: usize,
    rows: Vec<RowCmp>,
    pass: bool,
}

#[derive(Serialize)]
struct AnchorCmp {
    id: String,
    computed: f64,
    reference: f64,
    abs_diff: f64,
    rel_diff: f64,
    tolerance: f64,
    tolerance_kind: &'static str,
    pass: bool,
}

fn anchor(
    id: String,
    computed: f64,
    reference: f64,
    tolerance: f64,
    kind: &'static str,
) -> AnchorCmp {
    let abs_diff = (computed - reference).abs();
    let rel_diff = abs_diff / reference.abs();
    let pass = if kind == "rel" {
        rel_diff <= tolerance
    } else {
        abs_diff <= tolerance
    };
    AnchorCmp {
        id,
        computed,
        reference,
        abs_diff,
        rel_diff,
        tolerance,
        tolerance_kind: kind,
        pass,
    }
}

struct RefTable {
    columns: Vec<String>,
    rows: Vec<(f64, Vec<Option<f64>>)>,
}

fn parse_ref(text: &str) -> RefTable {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().expect("embedded table has a header");
    let columns: Vec<String> = header.split(',').skip(1).map(str::to_string).collect();
    let rows = lines
        .map(|line| {
            let mut cells = line.split(',');
            let key: f64 = cells.next().unwrap().parse().expect("numeric key");
            let vals = cells
                .map(|c| {
                    if c.is_empty() {
                        None
                    } else {
                        Some(c.parse().expect("numeric cell"))
                    }
                })
                .collect();
            (key, vals)
        })
        .collect();
    RefTable { columns, rows }
}

fn cell(reft: &RefTable, row: &(f64, Vec<Option<f64>>), name: &str) -> Option<f64> {
    reft.columns
        .iter()
        .position(|c| c == name)
        .and_then(|i| row.1[i])
}

/// Near-threshold rows get a wider lattice so the slowly decaying tail
/// keeps its share of <r^2>.
fn row_cfg(near: bool) -> SolverConfig {
    let mut cfg = SolverConfig::default();
    if near {
        cfg.decay_lengths = 60.0;
    }
    cfg
}

struct BoundTableSpec {
    id: u8,
    family: &'static str,
    ell: usize,
    data: &'static str,
    near_g: Option<f64>,
    eq_tol: f64,
}

const BOUND_TABLES: [BoundTableSpec; 4] = [
    BoundTableSpec {
        id: 2,
        family: "rational-cubed",
        ell: 0,
        data: TABLE2,
        near_g: Some(1.35),
        eq_tol: EQ_TOL,
    },
    BoundTableSpec {
        id: 3,
        family: "rational-cubed",
        ell: 1,
        data: TABLE3,
        near_g: Some(6.945),
        eq_tol: EQ_TOL,
    },
    BoundTableSpec {
        id: 4,
        family: "yukawa",
        ell: 0,
        data: TABLE4,
        near_g: None,
        eq_tol: EQ_TOL_LOOSE,
    },
    BoundTableSpec {
        id: 5,
        family: "yukawa",
        ell: 1,
        data: TABLE5,
        near_g: Some(9.085),
        eq_tol: EQ_TOL_LOOSE,
    },
];

/// Bound value only when the limit is applicable and informative.
fn informative(rep: &halo_core::BoundsReport, kind: BoundKind) -> Option<f64> {
    let e = rep.entry(kind);
    match e.status {
        BoundStatus::Applicable => e.value,
        _ => None,
    }
}

fn run_bound_table(spec: &BoundTableSpec, strict: bool) -> Result<TableCmp, CliError> {
    let reft = parse_ref(spec.data);
    let mut rows = Vec::with_capacity(reft.rows.len());
    for row in &reft.rows {
        let g = row.0;
        let near = spec.near_g.map_or(false, |ng| (g - ng).abs() < 1e-12);
        let pot = match spec.family {
            "rational-cubed" => Potential::rational_cubed(g, 1.0)?,
            _ => Potential::yukawa(g, 1.0)?,
        };
        let cfg = row_cfg(near);
        let st = solve_state(&pot, 0, spec.ell, &cfg)?;
        let rep = report(&pot, &st, &cfg);
        let exact_tol = if near && !strict { NEAR_TOL } else { EXACT_TOL };
        let mut columns = vec![ColumnCmp::relative(
            "exact",
            Some(st.product()),
            cell(&reft, row, "exact"),
            exact_tol,
        )];
        for (name, kind) in [
            ("eq8", BoundKind::StrengthProductCap),
            ("eq15", BoundKind::MomentProductCap),
            ("eq17", BoundKind::MomentProductFloor),
            ("eq24", BoundKind::NodelessProductCap),
        ] {
            columns.push(ColumnCmp::relative(
                name,
                informative(&rep, kind),
                cell(&reft, row, name),
                spec.eq_tol,
            ));
        }
        let pass = columns.iter().all(|c| c.pass);
        rows.push(RowCmp {
            inputs: RowKey::Strength { g },
            columns,
            pass,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(TableCmp {
        table: spec.id,
        family: spec.family,
        ell: spec.ell,
        rows,
        pass,
    })
}

fn run_mass_table() -> Result<TableCmp, CliError> {
    let reft = parse_ref(TABLE1);
    let masses: Vec<f64> = reft.rows.iter().map(|r| r.0).collect();
    let cfg = SolverConfig::default();
    let computed = nuclear_table(&masses, 2.0, &cfg)?;
    let rows = reft
        .rows
        .iter()
        .zip(&computed)
        .map(|(refrow, c)| {
            let columns = vec![
                ColumnCmp::absolute(
                    "e_exact",
                    Some(-c.e_exact),
                    cell(&reft, refrow, "e_exact"),
                    ENERGY_TOL,
                ),
                ColumnCmp::absolute("e_h", Some(-c.e_h), cell(&reft, refrow, "e_h"), ENERGY_TOL),
                ColumnCmp::absolute(
                    "ratio",
                    Some(c.ratio_at_e_h),
                    cell(&reft, refrow, "ratio"),
                    RATIO_TOL,
                ),
            ];
            let pass = columns.iter().all(|col| col.pass);
            RowCmp {
                inputs: RowKey::Mass {
                    mass_number: refrow.0,
                },
                columns,
                pass,
            }
        })
        .collect::<Vec<_>>();
    let pass = rows.iter().all(|r| r.pass);
    Ok(TableCmp {
        table: 1,
        family: "wood-saxon",
        ell: 0,
        rows,
        pass,
    })
}

fn run_anchors() -> Result<Vec<AnchorCmp>, CliError> {
    let cfg = SolverConfig::default();
    let mut out = Vec::new();

    // Helium dimer occurrence windows, micro-eV.
    let pair = Potential::new(
        Family::LjPair { p_rep: 10.0, p_att: 6.0, g: 1.0, r: halo_core::units::HELIUM_RANGE },
        UnitContext::helium(),
    )?;
    let t = threshold_energy(&pair, 1, 2.0, CouplingSource::Bargmann)?;
    out.push(anchor("helium-pair-window".into(), t.e_h, -0.82, 0.03, "rel"));
    let lj = Potential::new(
        Family::LjPair { p_rep: 12.0, p_att: 6.0, g: 1.0, r: halo_core::units::HELIUM_RANGE },
        UnitContext::helium(),
    )?;
    let t = threshold_energy(&lj, 1, 2.0, CouplingSource::Bargmann)?;
    out.push(anchor("helium-lj126-window".into(), t.e_h, -0.89, 0.05, "rel"));

    // Exact size ratio at the window edge, power-tail family.
    let lists: [(usize, [(f64, f64); 5]); 2] = [
        (1, [(5.0, 2.44), (10.0, 2.47), (20.0, 2.44), (50.0, 2.41), (100.0, 2.40)]),
        (2, [(5.0, 2.29), (10.0, 2.38), (20.0, 2.42), (50.0, 2.40), (100.0, 2.40)]),
    ];
    for (level, list) in lists {
        for (n, expect) in list {
            let proto = Potential::rational_n(n, 1.0, 1.0)?;
            let thr = threshold_energy(&proto, level, 2.0, CouplingSource::Bargmann)?;
            let at = ratio_at_energy(&proto, level, thr.e_h, &cfg)?;
            out.push(anchor(
                format!("size-ratio-n{n}-level{level}"),
                at.ratio,
                expect,
                0.02,
                "abs",
            ));
        }
    }

    // Window-edge ratio across the first two levels, stretched exponential.
    for (n, expect) in [(1.0, 2.15), (2.0, 1.35), (5.0, 1.12)] {
        let proto = Potential::exp_n(n, 1.0, 1.0)?;
        let t1 = threshold_energy(&proto, 1, 2.0, CouplingSource::Bargmann)?;
        let t2 = threshold_energy(&proto, 2, 2.0, CouplingSource::Bargmann)?;
        out.push(anchor(
            format!("window-ratio-exp{n}"),
            t1.e_h / t2.e_h,
            expect,
            0.03,
            "abs",
        ));
    }

    // Level ratio of the window edge: the power-tail root with the
    // phase-integral couplings makes it exactly 2^(4/(n-2)).
    for n in [4.0, 6.0, 10.0] {
        let proto = Potential::rational_n(n, 1.0, 1.0)?;
        let g1 = critical_strength(&proto, 1, 0, CouplingSource::Bargmann)?;
        let g2 = critical_strength(&proto, 2, 0, CouplingSource::Bargmann)?;
        let x1 = solve_x0(&proto, g1, 2.0, X0Method::PowerTail)?;
        let x2 = solve_x0(&proto, g2, 2.0, X0Method::PowerTail)?;
        out.push(anchor(
            format!("level-ratio-rational{n}"),
            (x2 / x1).powi(2),
            2f64.powf(4.0 / (n - 2.0)),
            1e-6,
            "rel",
        ));
    }
    Ok(out)
}

#[derive(Serialize)]
struct RepInputs {
    subcommand: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    table: Option<u8>,
    all: bool,
    strict: bool,
}

#[derive(Serialize)]
struct RepResults {
    tables: Vec<TableCmp>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    anchors: Vec<AnchorCmp>,
    pass: bool,
}

#[derive(Serialize)]
struct RepDiagnostics {
    rows: usize,
    failed_rows: usize,
    anchors: usize,
    failed_anchors: usize,
}

fn wide_csv(t: &TableCmp) -> String {
    let find = |r: &RowCmp, name: &str| -> Option<ColumnCmp> {
        r.columns
            .iter()
            .position(|c| c.column == name)
            .map(|i| ColumnCmp {
                column: r.columns[i].column,
                computed: r.columns[i].computed,
                reference: r.columns[i].reference,
                abs_diff: r.columns[i].abs_diff,
                rel_diff: r.columns[i].rel_diff,
                tolerance: r.columns[i].tolerance,
                tolerance_kind: r.columns[i].tolerance_kind,
                pass: r.columns[i].pass,
            })
    };
    let opt = |v: Option<f64>| v.map(emit::num).unwrap_or_default();
    if t.table == 1 {
        let rows: Vec<Vec<String>> = t
            .rows
            .iter()
            .map(|r| {
                let key = match r.inputs {
                    RowKey::Mass { mass_number } => mass_number,
                    RowKey::Strength { g } => g,
                };
                let e = find(r, "e_exact").unwrap();
                let h = find(r, "e_h").unwrap();
                let q = find(r, "ratio").unwrap();
                vec![
                    emit::num(key),
                    opt(e.computed),
                    opt(e.reference),
                    opt(h.computed),
                    opt(h.reference),
                    opt(q.computed),
                    opt(q.reference),
                    r.pass.to_string(),
                ]
            })
            .collect();
        emit::csv(
            "a,e_exact_computed,e_exact_ref,e_h_computed,e_h_ref,ratio_computed,ratio_ref,pass",
            &rows,
        )
    } else {
        let rows: Vec<Vec<String>> = t
            .rows
            .iter()
            .map(|r| {
                let key = match r.inputs {
                    RowKey::Strength { g } => g,
                    RowKey::Mass { mass_number } => mass_number,
                };
                let e = find(r, "exact").unwrap();
                vec![
                    emit::num(key),
                    opt(e.computed),
                    opt(e.reference),
                    opt(find(r, "eq8").unwrap().computed),
                    opt(find(r, "eq15").unwrap().computed),
                    opt(find(r, "eq17").unwrap().computed),
                    opt(find(r, "eq24").unwrap().computed),
                    r.pass.to_string(),
                ]
            })
            .collect();
        emit::csv(
            "g,exact_computed,exact_ref,eq8,eq15,eq17,eq24,pass",
            &rows,
        )
    }
}

fn long_csv(tables: &[TableCmp], anchors: &[AnchorCmp]) -> String {
    let opt = |v: Option<f64>| v.map(emit::num).unwrap_or_default();
    let mut rows: Vec<Vec<String>> = Vec::new();
    for t in tables {
        for r in &t.rows {
            let key = match r.inputs {
                RowKey::Strength { g } => g,
                RowKey::Mass { mass_number } => mass_number,
            };
            for c in &r.columns {
                rows.push(vec![
                    t.table.to_string(),
                    emit::num(key),
                    c.column.to_string(),
                    opt(c.computed),
                    opt(c.reference),
                    opt(c.abs_diff),
                    opt(c.rel_diff),
                    emit::num(c.tolerance),
                    c.tolerance_kind.to_string(),
                    c.pass.to_string(),
                ]);
            }
        }
    }
    for a in anchors {
        rows.push(vec![
            "anchor".into(),
            String::new(),
            a.id.clone(),
            emit::num(a.computed),
            emit::num(a.reference),
            emit::num(a.abs_diff),
            emit::num(a.rel_diff),
            emit::num(a.tolerance),
            a.tolerance_kind.to_string(),
            a.pass.to_string(),
        ]);
    }
    emit::csv(
        "table,row,column,computed,reference,abs_diff,rel_diff,tolerance,tolerance_kind,pass",
        &rows,
    )
}

pub fn run(args: &ReproduceArgs) -> Result<u8, CliError> {
    let mut tables = Vec::new();
    let mut anchors = Vec::new();
    match (args.table, args.all) {
        (Some(k), false) => {
            let t = match k {
                1 => run_mass_table()?,
                2..=5 => run_bound_table(
                    BOUND_TABLES.iter().find(|s| s.id == k).unwrap(),
                    args.strict,
                )?,
                other => return Err(invalid(format!("no reference table {other}: use 1 to 5"))),
            };
            tables.push(t);
        }
        (None, true) => {
            tables.push(run_mass_table()?);
            for spec in &BOUND_TABLES {
                tables.push(run_bound_table(spec, args.strict)?);
            }
            anchors = run_anchors()?;
        }
        (None, false) => return Err(invalid("pick --table <1..5> or --all")),
        (Some(_), true) => unreachable!("clap rejects --table with --all"),
    }

    let rows = tables.iter().map(|t| t.rows.len()).sum();
    let failed_rows = tables
        .iter()
        .flat_map(|t| &t.rows)
        .filter(|r| !r.pass)
        .count();
    let failed_anchors = anchors.iter().filter(|a| !a.pass).count();
    let pass = failed_rows == 0 && failed_anchors == 0;

    let default_format = if args.all { Format::Json } else { Format::Csv };
    let bytes = match args.out.format(default_format)? {
        Format::Json => {
            let n_anchors = anchors.len();
            emit::to_json(&Document {
                inputs: RepInputs {
                    subcommand: "reproduce",
                    table: args.table,
                    all: args.all,
                    strict: args.strict,
                },
                results: RepResults {
                    tables,
                    anchors,
                    pass,
                },
                diagnostics: RepDiagnostics {
                    rows,
                    failed_rows,
                    anchors: n_anchors,
                    failed_anchors,
                },
                version: emit::VERSION,
            })
        }
        Format::Csv => {
            if args.all {
                long_csv(&tables, &anchors)
            } else {
                wide_csv(&tables[0])
            }
        }
    };
    args.out.write(&bytes)?;
    Ok(if pass { 0 } else { 5 })
}
