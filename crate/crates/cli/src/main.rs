//! `halo`: bound-state sizes, size-product limits and halo occurrence
//! windows for two-body central potentials, plus reproduction of the
//! embedded reference tables.
//!
//! Exit codes: 0 success, 2 requested state absent, 3 invalid parameters,
//! 4 solver non-convergence, 5 reference reproduction failure, 1 I/O.

mod cmd_bounds;
mod cmd_halo;
mod cmd_reproduce;
mod cmd_scan;
mod cmd_solve;
mod emit;
mod request;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use halo_core::Error;

use request::StateInputs;

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::NoBoundState { .. }) => 2,
            CliError::Core(Error::InvalidInput(_)) | CliError::Core(Error::Unsupported(_)) => 3,
            CliError::Core(Error::Convergence(_)) => 4,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) => m.clone(),
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Core(Error::InvalidInput(msg.into()))
}

#[derive(Parser)]
#[command(
    name = "halo",
    version,
    about = "Bound-state sizes, limits and halo windows for central potentials"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve one bound level and report its energy and size moments
    Solve(StateArgs),
    /// Evaluate the size-product limits against a solved level
    Bounds(StateArgs),
    /// Assess a solved level against the halo criterion, or emit the
    /// occurrence window of a level
    Halo(HaloArgs),
    /// Recompute the embedded reference tables and in-text anchors
    Reproduce(ReproduceArgs),
    /// Emit scaled threshold depths against the shape exponent
    Scan(ScanArgs),
}

#[derive(Args)]
struct PotArgs {
    /// Family: yukawa, rational-cubed, rational-n, mixed-rep4, exp-n,
    /// lj-pair, attractive-pair, wood-saxon, square-well, truncated-exp,
    /// power-law, w-constant
    #[arg(long)]
    family: Option<String>,
    /// Dimensionless strength g
    #[arg(long)]
    g: Option<f64>,
    /// Shape exponent n (the power p for power-law)
    #[arg(long)]
    exponent: Option<f64>,
    /// Repulsive exponent of lj-pair
    #[arg(long = "p-rep")]
    p_rep: Option<f64>,
    /// Attractive exponent of lj-pair
    #[arg(long = "p-att")]
    p_att: Option<f64>,
    /// Range R, in the context length unit
    #[arg(long = "R")]
    range: Option<f64>,
    /// Wood-Saxon surface diffuseness a
    #[arg(long = "a")]
    diffuseness: Option<f64>,
    /// Repulsive strength of w-constant
    #[arg(long = "w-a")]
    w_a: Option<f64>,
    /// Attractive strength of w-constant
    #[arg(long = "w-b")]
    w_b: Option<f64>,
    /// Mass number; implies nuclear units unless --units says otherwise
    #[arg(long = "A")]
    mass_number: Option<f64>,
    /// Unit context: dimensionless, helium or nuclear
    #[arg(long)]
    units: Option<String>,
}

impl PotArgs {
    fn any_given(&self) -> bool {
        self.family.is_some()
            || self.g.is_some()
            || self.exponent.is_some()
            || self.p_rep.is_some()
            || self.p_att.is_some()
            || self.range.is_some()
            || self.diffuseness.is_some()
            || self.w_a.is_some()
            || self.w_b.is_some()
            || self.mass_number.is_some()
            || self.units.is_some()
    }
}

#[derive(Args)]
pub struct OutArgs {
    /// Output format: json or csv
    #[arg(long)]
    format: Option<String>,
    /// Output file path; standard output when absent
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl OutArgs {
    pub fn format(&self, default: Format) -> Result<Format, CliError> {
        match self.format.as_deref() {
            None => Ok(default),
            Some("json") => Ok(Format::Json),
            Some("csv") => Ok(Format::Csv),
            Some(other) => Err(invalid(format!(
                "unknown format {other:?}: use json or csv"
            ))),
        }
    }

    pub fn write(&self, bytes: &str) -> Result<(), CliError> {
        emit::write_out(self.output.as_deref(), bytes).map_err(CliError::Io)
    }
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    pot: PotArgs,
    /// Orbital angular momentum
    #[arg(long)]
    ell: Option<usize>,
    /// Radial quantum number (node count, ground state = 0)
    #[arg(long)]
    n: Option<usize>,
    /// Re-run the request recorded in a previous JSON document
    #[arg(long)]
    input: Option<PathBuf>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct HaloArgs {
    #[command(flatten)]
    state: StateArgs,
    /// Criterion factor: halo when rms >= sigma x classical radius
    #[arg(long)]
    sigma: Option<f64>,
    /// Level index N of the occurrence window (ground level = 1)
    #[arg(long)]
    level: Option<usize>,
    /// Also solve the exact criterion point of the level
    #[arg(long)]
    exact: bool,
}

#[derive(Args)]
struct ScanArgs {
    /// 1: attractive power tail s(N,n); 2: mixed repulsion t(N,n)
    #[arg(long)]
    fig: u8,
    /// Smallest exponent sample
    #[arg(long = "n-min")]
    n_min: Option<f64>,
    /// Largest exponent sample
    #[arg(long = "n-max")]
    n_max: Option<f64>,
    /// Number of log-spaced exponent samples
    #[arg(long = "n-count")]
    n_count: Option<usize>,
    /// Level indices N, comma separated
    #[arg(long, value_delimiter = ',')]
    levels: Option<Vec<usize>>,
    /// Criterion factor
    #[arg(long)]
    sigma: Option<f64>,
    /// Critical strength source: numeric or bargmann
    #[arg(long)]
    source: Option<String>,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ReproduceArgs {
    /// Reference table to recompute (1 to 5)
    #[arg(long, conflicts_with = "all")]
    table: Option<u8>,
    /// Recompute every table and the in-text anchors
    #[arg(long)]
    all: bool,
    /// Demand full tolerance on near-threshold rows too
    #[arg(long)]
    strict: bool,
    #[command(flatten)]
    out: OutArgs,
}

/// Build the request from flags, or load it back from a saved document.
fn resolve_inputs(
    sub: &str,
    args: &StateArgs,
    sigma: Option<f64>,
    level: Option<usize>,
    exact: Option<bool>,
) -> Result<StateInputs, CliError> {
    if let Some(path) = &args.input {
        if args.pot.any_given() || args.ell.is_some() || args.n.is_some() {
            return Err(invalid("--input replaces the request flags; drop them"));
        }
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))?;
        let v: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| invalid(format!("{}: not valid JSON: {e}", path.display())))?;
        let obj = v.get("inputs").cloned().unwrap_or(v);
        let mut si: StateInputs = serde_json::from_value(obj)
            .map_err(|e| invalid(format!("{}: bad request object: {e}", path.display())))?;
        si.subcommand = sub.into();
        if let Some(s) = sigma {
            si.sigma = Some(s);
        }
        if let Some(l) = level {
            si.level = Some(l);
        }
        if exact == Some(true) {
            si.exact = exact;
        }
        Ok(si)
    } else {
        let family = args
            .pot
            .family
            .clone()
            .ok_or_else(|| invalid("--family is required (or --input <document>)"))?;
        let units = args.pot.units.clone().unwrap_or_else(|| {
            if args.pot.mass_number.is_some() {
                "nuclear".into()
            } else {
                "dimensionless".into()
            }
        });
        Ok(StateInputs {
            subcommand: sub.into(),
            family,
            g: args.pot.g,
            exponent: args.pot.exponent,
            p_rep: args.pot.p_rep,
            p_att: args.pot.p_att,
            range: args.pot.range,
            diffuseness: args.pot.diffuseness,
            w_a: args.pot.w_a,
            w_b: args.pot.w_b,
            mass_number: args.pot.mass_number,
            units,
            ell: args.ell.unwrap_or(0),
            n: args.n.unwrap_or(0),
            sigma,
            level,
            exact,
        })
    }
}

fn dispatch(cmd: &Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::Solve(a) => {
            let si = resolve_inputs("solve", a, None, None, None)?;
            cmd_solve::run(&si, &a.out)
        }
        Cmd::Bounds(a) => {
            let si = resolve_inputs("bounds", a, None, None, None)?;
            cmd_bounds::run(&si, &a.out)
        }
        Cmd::Halo(a) => {
            let si = resolve_inputs(
                "halo",
                &a.state,
                a.sigma,
                a.level,
                if a.exact { Some(true) } else { None },
            )?;
            cmd_halo::run(&si, &a.state.out)
        }
        Cmd::Reproduce(a) => cmd_reproduce::run(a),
        Cmd::Scan(a) => cmd_scan::run(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(&cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("halo: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
