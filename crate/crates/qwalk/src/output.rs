//! CSV and JSON emission for the experiment commands.
//!
//! Distribution files: CSV with header `series,x,p`, one row per
//! (series, position), probabilities printed with 17 significant digits
//! (round-trip exact for doubles); or a JSON document
//! `{ "meta": {...}, "series": [{"label", "points": [[x, p], ...]}] }`.
//! Identical inputs produce byte-identical files.

use std::io::{self, Write};

use serde::Serialize;

use crate::povm::MeasurementRecord;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected csv or json)")),
        }
    }
}

/// One labeled point series, positions ascending.
#[derive(Debug, Clone, Serialize)]
pub struct Series {
    pub label: String,
    pub points: Vec<(i64, f64)>,
}

impl Series {
    pub fn new(label: impl Into<String>, points: Vec<(i64, f64)>) -> Self {
        Series {
            label: label.into(),
            points,
        }
    }

    pub fn mass(&self) -> f64 {
        self.points.iter().map(|(_, p)| p).sum()
    }
}

/// File-level metadata for JSON output.
#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub command: String,
    #[serde(rename = "T")]
    pub steps: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coin_init: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shots: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_success: Option<f64>,
}

impl Meta {
    pub fn new(command: &str, steps: usize) -> Self {
        Meta {
            command: command.to_string(),
            steps,
            coin_init: None,
            seed: None,
            shots: None,
            p_success: None,
        }
    }
}

#[derive(Serialize)]
struct SeriesDocument<'a> {
    meta: &'a Meta,
    series: &'a [Series],
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    meta: &'a Meta,
    sweep: &'a [(usize, f64)],
}

/// Per-shot summary block of a sampling run.
#[derive(Debug, Clone, Serialize)]
pub struct SampleSummary {
    pub shots: usize,
    pub conclusive: usize,
    pub empirical_success: f64,
    pub standard_error: f64,
    pub analytic_success: f64,
}

/// Position histogram split by outcome class, positions ascending.
#[derive(Debug, Clone, Serialize)]
pub struct SampleHistogram {
    pub conclusive: Vec<(i64, u64)>,
    pub inconclusive: Vec<(i64, u64)>,
}

#[derive(Serialize)]
struct SampleDocument<'a> {
    meta: &'a Meta,
    summary: &'a SampleSummary,
    histogram: &'a SampleHistogram,
    records: Vec<(usize, String, i64)>,
}

fn json_to_writer<W: Write, T: Serialize>(mut w: W, value: &T) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut w, value).map_err(io::Error::other)?;
    writeln!(w)
}

pub fn write_series_csv<W: Write>(mut w: W, series: &[Series]) -> io::Result<()> {
    writeln!(w, "series,x,p")?;
    for s in series {
        for &(x, p) in &s.points {
            writeln!(w, "{},{},{:.16e}", s.label, x, p)?;
        }
    }
    Ok(())
}

pub fn write_series_json<W: Write>(w: W, meta: &Meta, series: &[Series]) -> io::Result<()> {
    json_to_writer(w, &SeriesDocument { meta, series })
}

pub fn write_sweep_csv<W: Write>(mut w: W, rows: &[(usize, f64)]) -> io::Result<()> {
    writeln!(w, "T,success_prob")?;
    for &(t, p) in rows {
        writeln!(w, "{},{:.16e}", t, p)?;
    }
    Ok(())
}

pub fn write_sweep_json<W: Write>(w: W, meta: &Meta, rows: &[(usize, f64)]) -> io::Result<()> {
    json_to_writer(w, &SweepDocument { meta, sweep: rows })
}

pub fn write_records_csv<W: Write>(mut w: W, records: &[MeasurementRecord]) -> io::Result<()> {
    writeln!(w, "shot,outcome,x")?;
    for (shot, rec) in records.iter().enumerate() {
        writeln!(w, "{},{},{}", shot, rec.outcome, rec.position)?;
    }
    Ok(())
}

pub fn write_sample_json<W: Write>(
    w: W,
    meta: &Meta,
    summary: &SampleSummary,
    histogram: &SampleHistogram,
    records: &[MeasurementRecord],
) -> io::Result<()> {
    let records = records
        .iter()
        .enumerate()
        .map(|(shot, r)| (shot, r.outcome.to_string(), r.position))
        .collect();
    json_to_writer(
        w,
        &SampleDocument {
            meta,
            summary,
            histogram,
            records,
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::povm::Outcome;

    #[test]
    fn csv_has_header_and_full_precision() {
        let series = [Series::new("demo", vec![(-1, 0.5), (1, 1.0 / 3.0)])];
        let mut buf = Vec::new();
        write_series_csv(&mut buf, &series).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("series,x,p"));
        assert_eq!(lines.next(), Some("demo,-1,5.0000000000000000e-1"));
        let third = lines.next().unwrap();
        let printed: f64 = third.rsplit(',').next().unwrap().parse().unwrap();
        assert_eq!(printed, 1.0 / 3.0, "17 significant digits round-trip");
    }

    #[test]
    fn json_meta_skips_absent_fields() {
        let meta = Meta::new("dtqw", 3);
        let series = [Series::new("demo", vec![(0, 1.0)])];
        let mut buf = Vec::new();
        write_series_json(&mut buf, &meta, &series).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["meta"]["command"], "dtqw");
        assert_eq!(v["meta"]["T"], 3);
        assert!(v["meta"].get("seed").is_none());
        assert_eq!(v["series"][0]["points"][0][1], 1.0);
    }

    #[test]
    fn record_csv_uses_question_mark_for_inconclusive() {
        let records = [
            MeasurementRecord {
                outcome: Outcome::Conclusive(3),
                position: -2,
            },
            MeasurementRecord {
                outcome: Outcome::Inconclusive,
                position: 0,
            },
        ];
        let mut buf = Vec::new();
        write_records_csv(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "shot,outcome,x\n0,3,-2\n1,?,0\n");
    }
}
