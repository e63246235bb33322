//! Document assembly and byte emission.
//!
//! Every JSON document has the fixed field order inputs, results,
//! diagnostics, version.  Floats pass through the shortest round-trip
//! formatter, so every digit of the computed value survives.

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Serialize)]
pub struct Document<I: Serialize, R: Serialize, D: Serialize> {
    pub inputs: I,
    pub results: R,
    pub diagnostics: D,
    pub version: &'static str,
}

pub fn to_json<I: Serialize, R: Serialize, D: Serialize>(doc: &Document<I, R, D>) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serialization cannot fail");
    s.push('\n');
    s
}

/// Shortest representation that parses back to the same f64; used for CSV
/// cells so both formats carry identical values.
pub fn num(v: f64) -> String {
    serde_json::Number::from_f64(v)
        .map(|n| n.to_string())
        .unwrap_or_else(|| "nan".into())
}

pub fn csv(header: &str, rows: &[Vec<String>]) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Write to the path from `--output`, or standard output.
pub fn write_out(path: Option<&Path>, bytes: &str) -> Result<(), String> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| format!("writing {}: {e}", p.display())),
        None => std::io::stdout()
            .write_all(bytes.as_bytes())
            .map_err(|e| format!("writing standard output: {e}")),
    }
}
