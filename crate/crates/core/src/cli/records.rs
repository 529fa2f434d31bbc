use std::io::{self, Write};

use serde::{Deserialize, Serialize};

use super::args::OutputFormat;

/// One evaluation, as emitted by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    /// `name=value` of the swept parameter, empty for single evaluations.
    pub param: String,
    pub q: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    pub value: f64,
    pub error: f64,
    pub method: String,
    pub converged: bool,
    pub roundtrips: Option<usize>,
}

pub const CSV_HEADER: &str = "param,q,T,value,error,method,converged,roundtrips";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Shortest round-trip text for `x`, in exponent form at extreme magnitudes.
fn float(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && a.is_finite() && !(1e-5..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

/// Writes records in the requested format. Floats use the shortest decimal
/// representation that round-trips, except in the plain table.
pub fn emit<W: Write + ?Sized>(records: &[Record], format: OutputFormat, out: &mut W) -> io::Result<()> {
    match format {
        OutputFormat::Csv => {
            writeln!(out, "{CSV_HEADER}")?;
            for r in records {
                let rt = r.roundtrips.map(|n| n.to_string()).unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    csv_field(&r.param),
                    float(r.q),
                    float(r.temperature),
                    float(r.value),
                    float(r.error),
                    r.method,
                    r.converged,
                    rt
                )?;
            }
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, records).map_err(io::Error::other)?;
            writeln!(out)?;
        }
        OutputFormat::Plain => {
            writeln!(
                out,
                "{:<16} {:>12} {:>12} {:>20} {:>10} {:<16} {:<9} {:>10}",
                "param", "q", "T", "value", "error", "method", "converged", "roundtrips"
            )?;
            for r in records {
                let rt = r.roundtrips.map(|n| n.to_string()).unwrap_or_else(|| "-".into());
                let param = if r.param.is_empty() { "-" } else { &r.param };
                writeln!(
                    out,
                    "{:<16} {:>12.6e} {:>12.6e} {:>20.12e} {:>10.2e} {:<16} {:<9} {:>10}",
                    param, r.q, r.temperature, r.value, r.error, r.method, r.converged, rt
                )?;
            }
        }
    }
    Ok(())
}
