use std::io::Write;

use holembed::logics::Expectation;
use holembed::semantics::Bounds;
use serde::Serialize;

/// One JSON line of output.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub id: String,
    pub kind: &'static str,
    pub expected: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<Bounds>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prover: Option<String>,
    pub elapsed: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub world: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub consistent: bool,
}

impl Record {
    pub fn new(id: &str, kind: &'static str, expected: Expectation) -> Self {
        Record {
            id: id.to_string(),
            kind,
            expected: expected.keyword(),
            verdict: None,
            status: None,
            bounds: None,
            prover: None,
            elapsed: 0.0,
            world: None,
            witness: None,
            witness_path: None,
            error: None,
            consistent: false,
        }
    }
}

#[derive(Debug, Default)]
pub struct RunReport {
    pub records: Vec<Record>,
}

impl RunReport {
    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn all_consistent(&self) -> bool {
        self.records.iter().all(|r| r.consistent)
    }

    pub fn write_records(&self, out: &mut impl Write) -> std::io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut *out, r)?;
            writeln!(out)?;
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        let ok = self.records.iter().filter(|r| r.consistent).count();
        let errors = self.records.iter().filter(|r| r.error.is_some()).count();
        format!(
            "{} records: {ok} as expected, {} mismatched ({errors} errors)",
            self.records.len(),
            self.records.len() - ok
        )
    }
}
