//! Report assembly, output formats and golden files.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use pseudoauto::report::{all_ok, Check, Status};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub passed: bool,
    /// Sorted by name so that assembly order never leaks into the output.
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    pub timing: Timing,
    /// Human-readable lines shown by the text format only.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>, mut checks: Vec<Check>, result: Value, elapsed: Duration) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Report {
            command: command.to_string(),
            parameters,
            passed: all_ok(&checks),
            checks,
            result,
            timing: Timing { total_ms: elapsed.as_secs_f64() * 1e3 },
            summary: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        let at = self.checks.partition_point(|c| c.name < check.name);
        self.checks.insert(at, check);
        self.passed = all_ok(&self.checks);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Flagged)
    }

    /// Pretty JSON without the `timing` field, the form golden files store.
    pub fn golden_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v.as_object_mut().expect("object").remove("timing");
        serde_json::to_string_pretty(&v).expect("value serializes") + "\n"
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["name", "status", "claim", "details"]).expect("in-memory write");
                for c in &self.checks {
                    w.write_record([c.name.as_str(), status_word(c.status), &c.claim, &c.details]).expect("in-memory write");
                }
                String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
            }
            Format::Text => {
                let mut out = String::new();
                let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                writeln!(out, "{} {}", self.command, params.join(" ")).unwrap();
                for c in &self.checks {
                    writeln!(out, "  {:<7} {:<34} {}", status_word(c.status).to_uppercase(), c.name, c.claim).unwrap();
                    if c.status != Status::Pass && !c.details.is_empty() {
                        writeln!(out, "          {}", c.details).unwrap();
                    }
                }
                for line in &self.summary {
                    writeln!(out, "  {line}").unwrap();
                }
                let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
                let flagged = self.flagged().count();
                writeln!(
                    out,
                    "{}: {} checks, {failed} failed, {flagged} flagged, {:.0} ms",
                    if self.passed { "certified" } else { "NOT certified" },
                    self.checks.len(),
                    self.timing.total_ms
                )
                .unwrap();
                out
            }
        }
    }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Flagged => "flagged",
    }
}

/// Compare against `dir/name`, or record it there when no golden file exists yet.
pub fn golden_check(report: &Report, dir: &Path, name: &str) -> Check {
    let path = dir.join(name);
    let current = report.golden_json();
    match std::fs::read_to_string(&path) {
        Ok(stored) => Check::new(
            "golden-file",
            "the report matches its golden file modulo timing",
            stored == current,
            format!("{}: {}", path.display(), if stored == current { "identical" } else { "differs" }),
        ),
        Err(_) => {
            let written = std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &current));
            Check::new(
                "golden-file",
                "the report matches its golden file modulo timing",
                written.is_ok(),
                match written {
                    Ok(()) => format!("{}: recorded", path.display()),
                    Err(e) => format!("{}: {e}", path.display()),
                },
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checks_sorted_and_csv_quoted() {
        let checks = vec![Check::new("b", "x, y", true, ""), Check::flagged("a", "z", "d\"q")];
        let r = Report::new("t", BTreeMap::new(), checks, Value::Null, Duration::from_millis(3));
        assert_eq!(r.checks[0].name, "a");
        assert!(r.passed);
        let csv = r.render(Format::Csv);
        assert!(csv.contains("\"x, y\"") && csv.contains("\"d\"\"q\""));
        assert!(!r.golden_json().contains("timing"));
    }
}
