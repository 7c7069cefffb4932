//! CSV and JSON-lines writers, and the exit-record reader.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mc::experiments::{Cell, Table};
use crate::passage::{ExitRecord, Side};

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf".into() } else { "-inf".into() }
    } else {
        format!("{v:.16e}")
    }
}

fn cell_text(c: &Cell) -> String {
    match c {
        Cell::Float(v) => format_float(*v),
        Cell::Int(i) => i.to_string(),
        Cell::Bool(b) => b.to_string(),
    }
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String> {
    let bytes = w.into_inner().map_err(|e| Error::Structural(format!("csv writer: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is ASCII"))
}

fn csv_err(e: csv::Error) -> Error {
    Error::Structural(format!("csv: {e}"))
}

pub fn table_csv(table: &Table) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&table.columns).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(cell_text)).map_err(csv_err)?;
    }
    finish(w)
}

/// One JSON object per row. Non-finite floats are written as the strings
/// `"inf"`, `"-inf"` or `"NaN"`.
pub fn table_jsonl(table: &Table) -> String {
    let mut out = String::new();
    for row in &table.rows {
        let mut obj = serde_json::Map::new();
        for (name, cell) in table.columns.iter().zip(row) {
            let v = match *cell {
                Cell::Float(x) if x.is_finite() => serde_json::json!(x),
                Cell::Float(x) => serde_json::json!(format_float(x)),
                Cell::Int(i) => serde_json::json!(i),
                Cell::Bool(b) => serde_json::json!(b),
            };
            obj.insert((*name).to_string(), v);
        }
        out.push_str(&serde_json::Value::Object(obj).to_string());
        out.push('\n');
    }
    out
}

/// One line of an exit-record CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExitRow {
    pub rep_id: u64,
    pub exit_time: String,
    pub exit_position: String,
    pub overshoot: String,
    pub side: String,
    pub censored: bool,
}

pub fn exit_records_csv(records: &[ExitRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for (i, r) in records.iter().enumerate() {
        w.serialize(ExitRow {
            rep_id: i as u64,
            exit_time: format_float(r.exit_time),
            exit_position: format_float(r.exit_position),
            overshoot: format_float(r.overshoot),
            side: r.side.map_or_else(|| "none".to_string(), |s| s.to_string()),
            censored: r.censored,
        })
        .map_err(csv_err)?;
    }
    if records.is_empty() {
        w.write_record(["rep_id", "exit_time", "exit_position", "overshoot", "side", "censored"]).map_err(csv_err)?;
    }
    finish(w)
}

fn parse_f64(field: &str, s: &str, line: usize) -> Result<f64> {
    s.parse().map_err(|_| Error::Structural(format!("line {line}: bad {field} `{s}`")))
}

/// Reads an exit-record CSV back. The file does not store the horizon, so
/// the caller supplies it; censored rows carry it as their exit time.
pub fn parse_exit_records(text: &str, horizon: f64) -> Result<Vec<(u64, ExitRecord)>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let headers = rd.headers().map_err(csv_err)?.clone();
    if headers.iter().collect::<Vec<_>>() != ["rep_id", "exit_time", "exit_position", "overshoot", "side", "censored"] {
        return Err(Error::Structural(format!("unexpected exit-record columns {headers:?}")));
    }
    let mut out = Vec::new();
    for (i, row) in rd.deserialize::<ExitRow>().enumerate() {
        let line = i + 2;
        let row = row.map_err(csv_err)?;
        let side = match row.side.as_str() {
            "none" => None,
            s => Some(s.parse::<Side>().map_err(|_| Error::Structural(format!("line {line}: bad side `{s}`")))?),
        };
        let rec = ExitRecord {
            exit_time: parse_f64("exit_time", &row.exit_time, line)?,
            exit_position: parse_f64("exit_position", &row.exit_position, line)?,
            overshoot: parse_f64("overshoot", &row.overshoot, line)?,
            side,
            censored: row.censored,
            horizon,
        };
        if rec.censored != side.is_none() {
            return Err(Error::Structural(format!("line {line}: side and censoring disagree")));
        }
        out.push((row.rep_id, rec));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, f64::MAX, f64::MIN_POSITIVE, 5e-324, f64::INFINITY, 0.0] {
            let back: f64 = format_float(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "{v}");
        }
        assert!(format_float(f64::NAN).parse::<f64>().unwrap().is_nan());
        assert_eq!(format_float(1.5), "1.5000000000000000e0");
    }

    #[test]
    fn exit_csv_round_trips() {
        let recs = vec![
            ExitRecord {
                exit_time: 0.25,
                exit_position: -1.75,
                overshoot: 0.75,
                side: Some(Side::Lower),
                censored: false,
                horizon: 4.0,
            },
            ExitRecord { exit_time: 4.0, exit_position: 0.5, overshoot: 0.0, side: None, censored: true, horizon: 4.0 },
        ];
        let text = exit_records_csv(&recs).unwrap();
        assert!(text.starts_with("rep_id,exit_time,exit_position,overshoot,side,censored\n"));
        let back: Vec<ExitRecord> = parse_exit_records(&text, 4.0).unwrap().into_iter().map(|(_, r)| r).collect();
        assert_eq!(back, recs);
    }

    #[test]
    fn jsonl_keeps_column_order() {
        let table = Table {
            columns: vec!["b", "a"],
            rows: vec![vec![Cell::Float(f64::INFINITY), Cell::Int(3)]],
        };
        assert_eq!(table_jsonl(&table), "{\"b\":\"inf\",\"a\":3}\n");
    }
}
