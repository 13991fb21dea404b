//! Rendering of command results as text, JSON or CSV.

use serde_json::{json, Value};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// A named pass/fail item of a run.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }
}

/// What a command produced.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub payload: Value,
    pub text: Vec<String>,
    pub table: Table,
    pub checks: Vec<Check>,
}

impl Outcome {
    pub fn new(command: &'static str) -> Self {
        Outcome {
            command,
            payload: json!({}),
            text: Vec::new(),
            table: Table::default(),
            checks: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn check(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut obj = serde_json::Map::new();
                obj.insert("schema_version".into(), json!(REPORT_SCHEMA_VERSION));
                obj.insert("command".into(), json!(self.command));
                if let Value::Object(m) = &self.payload {
                    for (k, v) in m {
                        obj.insert(k.clone(), v.clone());
                    }
                }
                if !self.checks.is_empty() {
                    obj.insert("checks".into(), json!(self.checks));
                }
                obj.insert("passed".into(), json!(self.passed()));
                serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable") + "\n"
            }
            Format::Csv => {
                let (header, rows) = if self.table.header.is_empty() {
                    (
                        vec!["check".to_string(), "passed".into(), "detail".into()],
                        self.checks
                            .iter()
                            .map(|c| vec![c.name.clone(), c.passed.to_string(), c.detail.clone()])
                            .collect(),
                    )
                } else {
                    (self.table.header.clone(), self.table.rows.clone())
                };
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&header).expect("in-memory write");
                for r in &rows {
                    w.write_record(r).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => {
                let mut out = String::new();
                for l in &self.text {
                    out.push_str(l);
                    out.push('\n');
                }
                for c in &self.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    if c.detail.is_empty() {
                        out.push_str(&format!("{mark} {}\n", c.name));
                    } else {
                        out.push_str(&format!("{mark} {}: {}\n", c.name, c.detail));
                    }
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Outcome {
        let mut o = Outcome::new("verify");
        o.payload = json!({"family": "theta_s"});
        o.check(Check::new("relations", true, "S^4 = 1, has comma"));
        o
    }

    #[test]
    fn json_carries_schema_and_verdict() {
        let v: Value = serde_json::from_str(&sample().render(Format::Json)).unwrap();
        assert_eq!(v["schema_version"], json!(REPORT_SCHEMA_VERSION));
        assert_eq!(v["passed"], json!(true));
        assert_eq!(v["family"], json!("theta_s"));
    }

    #[test]
    fn csv_quotes_fields() {
        let s = sample().render(Format::Csv);
        let mut lines = s.lines();
        assert_eq!(lines.next(), Some("check,passed,detail"));
        assert_eq!(lines.next(), Some("relations,true,\"S^4 = 1, has comma\""));
    }

    #[test]
    fn failure_propagates() {
        let mut o = sample();
        o.check(Check::new("other", false, ""));
        assert!(!o.passed());
        assert!(o.render(Format::Text).contains("FAIL other"));
    }
}
