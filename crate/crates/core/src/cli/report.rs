//! JSON envelopes and CSV tables.

use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::oracle::{CensusReport, SweepReport};
use crate::quotient::RingCtx;
use crate::text;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RingInfo {
    pub p: u32,
    pub m: usize,
    /// Coefficients of the field modulus, constant term first.
    pub modulus: Vec<u32>,
    pub t: usize,
    pub omega: String,
}

impl RingInfo {
    pub fn of(ctx: &RingCtx) -> RingInfo {
        RingInfo {
            p: ctx.field().p(),
            m: ctx.field().m(),
            modulus: ctx.field().modulus().to_vec(),
            t: ctx.t(),
            omega: text::rt_poly(ctx.field(), ctx.omega()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Timestamps {
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
}

pub fn now_ms() -> u128 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_millis()).unwrap_or(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub schema_version: &'static str,
    pub command: String,
    pub args: Vec<String>,
    pub ring: RingInfo,
    pub payload: Value,
    pub timestamps: Option<Timestamps>,
}

impl Envelope {
    /// Pretty JSON with keys sorted at every level and a trailing newline.
    pub fn to_json(&self) -> String {
        // serde_json's map is ordered by key, so a round trip through
        // Value sorts every object
        let v = serde_json::to_value(self).expect("envelope serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

pub fn write_census_csv<W: Write>(w: W, report: &CensusReport) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["kind", "key", "value"])?;
    out.write_record(["ideal_count", "", &report.ideal_count.to_string()])?;
    for (sig, n) in &report.signatures {
        out.write_record(["signature", sig, &n.to_string()])?;
    }
    for v in &report.violations {
        out.write_record(["violation", &v.ideal.to_string(), &v.property])?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_sweep_csv<W: Write>(w: W, report: &SweepReport) -> csv::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let nh = report.entries.first().map_or(0, |e| e.h.len());
    let mut header: Vec<String> = report.exponent_names.clone();
    header.extend((1..=nh).map(|i| format!("h{i}")));
    header.extend(
        ["closed_form", "oracle", "matched", "branch", "branches_matched", "error", "certified"].map(String::from),
    );
    out.write_record(&header)?;
    for e in &report.entries {
        let mut row: Vec<String> = e.exponents.iter().map(|x| x.to_string()).collect();
        row.extend(e.h.iter().cloned());
        row.push(e.closed_form.map(|v| v.to_string()).unwrap_or_default());
        row.push(e.oracle.to_string());
        row.push(e.matched.to_string());
        row.push(e.branch.map(|v| v.to_string()).unwrap_or_default());
        row.push(cell(&serde_json::to_value(&e.branches_matched).expect("list serializes")));
        row.push(e.error.clone().unwrap_or_default());
        row.push(e.certified.to_string());
        out.write_record(&row)?;
    }
    out.flush()?;
    Ok(())
}
