//! Per-arm outcome counts over categories 0..J (0 = no failure).

use crate::error::{Result, SnlError};
use serde::{Deserialize, Serialize};
use std::io::{Read, Write};
use std::path::Path;

/// Outcome counts for both arms. Index 0 is the non-failure category,
/// indices 1..=J are the failure types.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureTable {
    /// Placebo / control arm counts, length J + 1.
    pub n_p: Vec<u64>,
    /// Vaccine / intervention arm counts, length J + 1.
    pub n_v: Vec<u64>,
    /// Optional names for the failure categories 1..=J (e.g. amino acids).
    pub labels: Option<Vec<String>>,
}

impl FailureTable {
    pub fn new(n_p: Vec<u64>, n_v: Vec<u64>) -> Result<Self> {
        let t = FailureTable { n_p, n_v, labels: None };
        t.validate()?;
        Ok(t)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.num_failure_types() {
            return Err(SnlError::DimensionMismatch(format!(
                "{} labels for {} failure types",
                labels.len(),
                self.num_failure_types()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.n_p.len() != self.n_v.len() {
            return Err(SnlError::DimensionMismatch(format!(
                "arm lengths differ: {} vs {}",
                self.n_p.len(),
                self.n_v.len()
            )));
        }
        if self.n_p.len() < 3 {
            return Err(SnlError::DimensionMismatch(
                "need at least two failure types (J >= 2)".into(),
            ));
        }
        if self.placebo_total() == 0 || self.vaccine_total() == 0 {
            return Err(SnlError::DegenerateData("an arm has zero subjects".into()));
        }
        Ok(())
    }

    /// Number of failure types J.
    pub fn num_failure_types(&self) -> usize {
        self.n_p.len() - 1
    }

    pub fn placebo_total(&self) -> u64 {
        self.n_p.iter().sum()
    }

    pub fn vaccine_total(&self) -> u64 {
        self.n_v.iter().sum()
    }

    pub fn placebo_failures(&self) -> u64 {
        self.n_p[1..].iter().sum()
    }

    pub fn vaccine_failures(&self) -> u64 {
        self.n_v[1..].iter().sum()
    }

    /// Failure counts only (categories 1..=J) for each arm.
    pub fn failure_slices(&self) -> (&[u64], &[u64]) {
        (&self.n_p[1..], &self.n_v[1..])
    }

    /// Read the CSV format: header `arm,cat0,...,catJ`, one `P` row and one `V` row.
    pub fn from_csv_reader<R: Read>(rdr: R) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(rdr);
        let headers = reader
            .headers()
            .map_err(|e| SnlError::CsvParse { line: 1, msg: e.to_string() })?
            .clone();
        if headers.len() < 4 || headers.get(0) != Some("arm") {
            return Err(SnlError::CsvParse {
                line: 1,
                msg: "expected header `arm,cat0,cat1,...` with J >= 2".into(),
            });
        }
        for (i, h) in headers.iter().enumerate().skip(1) {
            let expect = format!("cat{}", i - 1);
            if h != expect {
                return Err(SnlError::CsvParse {
                    line: 1,
                    msg: format!("column {} is `{}`, expected `{}`", i + 1, h, expect),
                });
            }
        }
        let mut n_p = None;
        let mut n_v = None;
        for (idx, rec) in reader.records().enumerate() {
            let line = idx + 2;
            let rec = rec.map_err(|e| SnlError::CsvParse { line, msg: e.to_string() })?;
            if rec.len() != headers.len() {
                return Err(SnlError::CsvParse {
                    line,
                    msg: format!("{} fields, expected {}", rec.len(), headers.len()),
                });
            }
            let mut counts = Vec::with_capacity(rec.len() - 1);
            for f in rec.iter().skip(1) {
                let v: u64 = f.parse().map_err(|_| SnlError::CsvParse {
                    line,
                    msg: format!("`{f}` is not a non-negative integer"),
                })?;
                counts.push(v);
            }
            match rec.get(0) {
                Some("P") => n_p = Some(counts),
                Some("V") => n_v = Some(counts),
                other => {
                    return Err(SnlError::CsvParse {
                        line,
                        msg: format!("arm must be `P` or `V`, got `{}`", other.unwrap_or("")),
                    })
                }
            }
        }
        match (n_p, n_v) {
            (Some(p), Some(v)) => FailureTable::new(p, v),
            _ => Err(SnlError::CsvParse { line: 0, msg: "missing P or V row".into() }),
        }
    }

    pub fn from_csv_path(path: &Path) -> Result<Self> {
        let f = std::fs::File::open(path).map_err(|e| SnlError::CsvParse {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
        let mut table = Self::from_csv_reader(f)?;
        // optional sidecar with category labels
        let sidecar = path.with_extension("labels.json");
        if sidecar.exists() {
            let text = std::fs::read_to_string(&sidecar).map_err(|e| SnlError::CsvParse {
                line: 0,
                msg: format!("{}: {e}", sidecar.display()),
            })?;
            let meta: LabelSidecar =
                serde_json::from_str(&text).map_err(|e| SnlError::CsvParse {
                    line: 0,
                    msg: format!("{}: {e}", sidecar.display()),
                })?;
            table = table.with_labels(meta.labels)?;
        }
        Ok(table)
    }

    pub fn to_csv_writer<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        let mut header = vec!["arm".to_string()];
        header.extend((0..self.n_p.len()).map(|j| format!("cat{j}")));
        let write = |wtr: &mut csv::Writer<W>, arm: &str, row: &[u64]| {
            let mut rec = vec![arm.to_string()];
            rec.extend(row.iter().map(|c| c.to_string()));
            wtr.write_record(&rec)
        };
        wtr.write_record(&header)
            .and_then(|_| write(&mut wtr, "P", &self.n_p))
            .and_then(|_| write(&mut wtr, "V", &self.n_v))
            .and_then(|_| wtr.flush().map_err(csv::Error::from))
            .map_err(|e| SnlError::CsvParse { line: 0, msg: e.to_string() })
    }
}

/// Sidecar JSON carrying failure-category labels.
#[derive(Debug, Serialize, Deserialize)]
pub struct LabelSidecar {
    pub labels: Vec<String>,
}
