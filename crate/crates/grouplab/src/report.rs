//! Check reports and JSON/CSV emission.

use crate::bounds::{e0, e1, BoundStatus};
use crate::error::Result;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub group: String,
    pub check: String,
    pub status: BoundStatus,
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportConstants {
    pub e0: f64,
    pub e1: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportMeta {
    pub version: String,
    pub seed: u64,
    pub constants: ReportConstants,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub meta: ReportMeta,
    pub results: Vec<CheckReport>,
}

impl ReportDocument {
    pub fn new(seed: u64, results: Vec<CheckReport>) -> Self {
        ReportDocument {
            meta: ReportMeta {
                version: env!("CARGO_PKG_VERSION").to_string(),
                seed,
                constants: ReportConstants { e0: e0(), e1: e1() },
            },
            results,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("group,check,status,elapsed_ms,witness\n");
        for r in &self.results {
            let status = serde_json::to_value(r.status)
                .expect("status serialization cannot fail")
                .as_str()
                .unwrap()
                .to_string();
            let witness = r.witness.as_deref().unwrap_or("");
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_escape(&r.group),
                csv_escape(&r.check),
                status,
                r.elapsed_ms,
                csv_escape(witness)
            ));
        }
        out
    }

    pub fn write(&self, path: &Path, format: ReportFormat) -> Result<()> {
        let body = match format {
            ReportFormat::Json => self.to_json(),
            ReportFormat::Csv => self.to_csv(),
        };
        std::fs::write(path, body)?;
        Ok(())
    }

    pub fn has_failures(&self) -> bool {
        self.results
            .iter()
            .any(|r| matches!(r.status, BoundStatus::Fail))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_is_valid_json() {
        let doc = ReportDocument::new(0, Vec::new());
        let parsed: ReportDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert!(parsed.results.is_empty());
        assert!((parsed.meta.constants.e0 - e0()).abs() < 1e-12);
    }

    #[test]
    fn json_round_trip() {
        let doc = ReportDocument::new(
            7,
            vec![
                CheckReport {
                    group: "A4".into(),
                    check: "lELem".into(),
                    status: BoundStatus::Pass,
                    witness: None,
                    elapsed_ms: 3,
                },
                CheckReport {
                    group: "Q8".into(),
                    check: "threshold l_-1".into(),
                    status: BoundStatus::Fail,
                    witness: Some("value 0.9 > 0.75".into()),
                    elapsed_ms: 1,
                },
            ],
        );
        let parsed: ReportDocument = serde_json::from_str(&doc.to_json()).unwrap();
        assert_eq!(parsed.results, doc.results);
        assert_eq!(parsed.meta.version, doc.meta.version);
        assert_eq!(parsed.meta.seed, doc.meta.seed);
        assert!((parsed.meta.constants.e0 - doc.meta.constants.e0).abs() < 1e-9);
        assert!((parsed.meta.constants.e1 - doc.meta.constants.e1).abs() < 1e-9);
        assert!(doc.has_failures());
    }

    #[test]
    fn csv_shape_and_escaping() {
        let doc = ReportDocument::new(
            0,
            vec![CheckReport {
                group: "SL(2,3)".into(),
                check: "a,b".into(),
                status: BoundStatus::Info,
                witness: Some("x \"y\"".into()),
                elapsed_ms: 12,
            }],
        );
        let csv = doc.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "group,check,status,elapsed_ms,witness");
        let row = lines.next().unwrap();
        assert!(row.contains("\"a,b\""));
        assert!(row.contains("info"));
        assert!(row.contains("\"x \"\"y\"\"\""));
    }
}
