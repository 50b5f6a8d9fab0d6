use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::golden;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// A command's result, its human-readable transcript, a flat CSV view and
/// the checks that decide the exit code.
pub struct Outcome {
    pub command: &'static str,
    pub result: Value,
    pub text: String,
    pub csv_header: Vec<&'static str>,
    pub csv_rows: Vec<Vec<String>>,
    pub checks: Vec<Check>,
}

#[derive(Serialize)]
struct Envelope<'a> {
    command: &'a str,
    golden_version: u32,
    passed: bool,
    checks: &'a [Check],
    result: &'a Value,
}

impl Outcome {
    pub fn new<T: Serialize>(command: &'static str, result: &T) -> Self {
        Outcome {
            command,
            result: serde_json::to_value(result).expect("reports serialize"),
            text: String::new(),
            csv_header: Vec::new(),
            csv_rows: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    pub fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => {
                let env = Envelope {
                    command: self.command,
                    golden_version: golden::VERSION,
                    passed: self.passed(),
                    checks: &self.checks,
                    result: &self.result,
                };
                let mut s = serde_json::to_string_pretty(&env).map_err(|e| e.to_string())?;
                s.push('\n');
                Ok(s)
            }
            Format::Table => {
                let mut s = self.text.clone();
                for c in &self.checks {
                    let mark = if c.passed { "PASS" } else { "FAIL" };
                    if c.detail.is_empty() {
                        let _ = writeln!(s, "{mark} {}", c.name);
                    } else {
                        let _ = writeln!(s, "{mark} {}: {}", c.name, c.detail);
                    }
                }
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv_header).map_err(|e| e.to_string())?;
                for r in &self.csv_rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                let bytes = w.into_inner().map_err(|e| e.to_string())?;
                String::from_utf8(bytes).map_err(|e| e.to_string())
            }
        }
    }
}
