//! Structured verification results and their text, JSON-lines and CSV
//! renderings.

use std::fmt;
use std::io::{self, Write};

use serde::{Deserialize, Serialize};

/// Version tag carried by every structured record.
pub const SCHEMA: &str = "legdet.report/1";

/// One exact comparison produced by a verification routine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub check: String,
    pub expected: String,
    pub actual: String,
}

impl Outcome {
    pub fn new(check: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Self {
        Outcome {
            check: check.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    /// A yes/no property; recorded as `true` vs the observed value.
    pub fn flag(check: impl Into<String>, ok: bool) -> Self {
        Outcome::new(check, true, ok)
    }

    pub fn holds(&self) -> bool {
        self.expected == self.actual
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.holds() { "ok" } else { "MISMATCH" };
        write!(
            f,
            "{}: expected {}, got {} [{mark}]",
            self.check, self.expected, self.actual
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub prime: u64,
    pub check: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

impl Report {
    pub fn from_outcome(prime: u64, suite: &str, o: Outcome, seed: Option<u64>) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            prime,
            check: format!("{suite}.{}", o.check),
            status: if o.holds() { Status::Pass } else { Status::Fail },
            expected: o.expected,
            actual: o.actual,
            seed,
            elapsed_ms: None,
        }
    }

    /// A routine that could not run to completion (an `Error` surfaced in a
    /// suite) is a failure whose actual value is the error text.
    pub fn failure(prime: u64, check: impl Into<String>, expected: impl ToString, error: impl ToString) -> Self {
        Report {
            schema: SCHEMA.to_string(),
            prime,
            check: check.into(),
            status: Status::Fail,
            expected: expected.to_string(),
            actual: error.to_string(),
            seed: None,
            elapsed_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "records" => Ok(Format::Records),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

pub const CSV_HEADER: [&str; 7] = ["prime", "check", "status", "expected", "actual", "seed", "elapsed_ms"];

/// Write reports in the chosen format. Output depends only on the reports,
/// so equal inputs give byte-identical output.
pub fn write_reports<W: Write>(out: W, reports: &[Report], format: Format) -> io::Result<()> {
    match format {
        Format::Text => write_text(out, reports),
        Format::Records => write_records(out, reports),
        Format::Csv => write_csv(out, reports),
    }
}

fn write_text<W: Write>(mut out: W, reports: &[Report]) -> io::Result<()> {
    for r in reports {
        write!(
            out,
            "{:<5} p={:<5} {}  expected={}  actual={}",
            r.status.to_string().to_uppercase(),
            r.prime,
            r.check,
            r.expected,
            r.actual
        )?;
        if let Some(seed) = r.seed {
            write!(out, "  seed={seed}")?;
        }
        if let Some(ms) = r.elapsed_ms {
            write!(out, "  {ms}ms")?;
        }
        writeln!(out)?;
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{} checks, {} failed", reports.len(), failed)
}

fn write_records<W: Write>(mut out: W, reports: &[Report]) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

fn write_csv<W: Write>(out: W, reports: &[Report]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.prime.to_string(),
            r.check.clone(),
            r.status.to_string(),
            r.expected.clone(),
            r.actual.clone(),
            r.seed.map(|s| s.to_string()).unwrap_or_default(),
            r.elapsed_ms.map(|s| s.to_string()).unwrap_or_default(),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Vec<Report> {
        vec![
            Report::from_outcome(5, "verify48", Outcome::new("det_h", 1, 1), None),
            Report::from_outcome(13, "verify48", Outcome::new("det_h", "13", "-13"), Some(7)),
        ]
    }

    #[test]
    fn status_follows_outcome() {
        let r = sample();
        assert!(r[0].passed());
        assert_eq!(r[1].status, Status::Fail);
        assert_eq!(r[1].check, "verify48.det_h");
    }

    #[test]
    fn records_round_trip() {
        let mut buf = Vec::new();
        write_reports(&mut buf, &sample(), Format::Records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let back: Vec<Report> = text
            .lines()
            .map(|l| serde_json::from_str(l).unwrap())
            .collect();
        assert_eq!(back, sample());
        assert!(text.contains("\"schema\":\"legdet.report/1\""));
        assert!(!text.contains("elapsed_ms"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut buf = Vec::new();
        write_reports(&mut buf, &sample(), Format::Csv).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "prime,check,status,expected,actual,seed,elapsed_ms");
        assert_eq!(lines.next().unwrap(), "5,verify48.det_h,pass,1,1,,");
        assert_eq!(lines.next().unwrap(), "13,verify48.det_h,fail,13,-13,7,");
    }
}
