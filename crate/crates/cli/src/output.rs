//! Record writers and JSON helpers.

use std::io::Write;
use std::str::FromStr;

use isog7_core::census::{CurveRecord, Discrepancy};
use num_bigint::BigUint;
use serde_json::{json, Map, Number, Value};

use crate::CliError;

/// Column names, in output order.
pub const COLUMNS: [&str; 7] = [
    "a",
    "b",
    "A_red",
    "B_red",
    "twist_height",
    "twist_defect",
    "C_value",
];

fn fields(r: &CurveRecord) -> [String; 7] {
    let (a, b) = r.pair.pair();
    [
        a.to_string(),
        b.to_string(),
        r.reduced.a.to_string(),
        r.reduced.b.to_string(),
        r.twist_height.to_string(),
        r.twist_defect.to_string(),
        r.c_value.to_string(),
    ]
}

/// A JSON number with the exact decimal digits of `s`.
pub fn exact(s: impl ToString) -> Value {
    Value::Number(Number::from_str(&s.to_string()).expect("decimal integer"))
}

pub fn big(x: &BigUint) -> Value {
    exact(x)
}

pub fn record_json(r: &CurveRecord) -> Value {
    let mut m = Map::new();
    for (k, v) in COLUMNS.iter().zip(fields(r)) {
        m.insert(k.to_string(), exact(v));
    }
    Value::Object(m)
}

pub fn write_csv(w: impl Write, records: &[CurveRecord]) -> Result<(), CliError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(COLUMNS)?;
    for r in records {
        out.write_record(fields(r))?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_json(mut w: impl Write, records: &[CurveRecord]) -> Result<(), CliError> {
    let arr: Vec<Value> = records.iter().map(record_json).collect();
    serde_json::to_writer_pretty(&mut w, &arr)?;
    writeln!(w)?;
    Ok(())
}

pub fn discrepancy_json(d: &Discrepancy) -> Value {
    match d {
        Discrepancy::Missing(r) => json!({ "kind": "missing", "expected": record_json(r) }),
        Discrepancy::Unexpected(r) => json!({ "kind": "unexpected", "actual": record_json(r) }),
        Discrepancy::Mismatch { expected, actual } => json!({
            "kind": "mismatch",
            "expected": record_json(expected),
            "actual": record_json(actual),
        }),
    }
}

/// `"(x, y)"`.
pub fn paren(x: impl std::fmt::Display, y: impl std::fmt::Display) -> String {
    format!("({x}, {y})")
}

/// The table of twist-minimal curves: a header line, then one row per
/// record as `(A, B) (a, b) twht defect`.
pub fn write_table(mut w: impl Write, records: &[CurveRecord]) -> Result<(), CliError> {
    writeln!(w, "(A, B) (a, b) twht(E) twistdefect(E)")?;
    for r in records {
        let (a, b) = r.pair.pair();
        writeln!(
            w,
            "{} {} {} {}",
            paren(&r.reduced.a, &r.reduced.b),
            paren(a, b),
            r.twist_height,
            r.twist_defect
        )?;
    }
    Ok(())
}
