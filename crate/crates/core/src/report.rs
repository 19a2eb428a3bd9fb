//! Structured check reports and their text/JSON emitters.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unstable,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Unstable => "UNSTABLE",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Parameters {
    #[serde(rename = "D", skip_serializing_if = "Option::is_none", default)]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub slack_used: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub probes: Option<usize>,
}

/// Outcome of one check, possibly with nested sub-checks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_name: String,
    pub status: Status,
    pub parameters: Parameters,
    #[serde(default)]
    pub witnesses: Vec<String>,
    #[serde(default)]
    pub dimensions: Vec<usize>,
    /// Error kind of a failing check, e.g. `NotNormal`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<String>,
    #[serde(default)]
    pub notes: Vec<String>,
    /// Informational checks never affect the parent's or the run's status.
    #[serde(default)]
    pub informational: bool,
    #[serde(default)]
    pub children: Vec<CheckReport>,
}

impl CheckReport {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            check_name: name.into(),
            status: Status::Pass,
            parameters: Parameters::default(),
            witnesses: Vec::new(),
            dimensions: Vec::new(),
            failure: None,
            notes: Vec::new(),
            informational: false,
            children: Vec::new(),
        }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_degree(mut self, d: u32) -> Self {
        self.parameters.degree = Some(d);
        self
    }

    pub fn with_probes(mut self, seed: u64, probes: usize) -> Self {
        self.parameters.seed = Some(seed);
        self.parameters.probes = Some(probes);
        self
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    /// Marks the check failed; the first failure kind is kept.
    pub fn fail(&mut self, kind: &str, witness: impl Into<String>) {
        self.status = Status::Fail;
        if self.failure.is_none() {
            self.failure = Some(kind.to_string());
        }
        self.witnesses.push(witness.into());
    }

    pub fn mark_unstable(&mut self, note: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Unstable;
        }
        self.notes.push(note.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Appends a sub-check and folds its status into this one.
    pub fn push(&mut self, child: CheckReport) {
        if !child.informational {
            match child.status {
                Status::Fail => {
                    self.status = Status::Fail;
                    if self.failure.is_none() {
                        self.failure = child.failure.clone();
                    }
                }
                Status::Unstable if self.status == Status::Pass => {
                    self.status = Status::Unstable;
                }
                _ => {}
            }
        }
        self.children.push(child);
    }

    /// Depth-first search by name.
    pub fn find(&self, name: &str) -> Option<&CheckReport> {
        if self.check_name == name {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(name))
    }

    fn key_numbers(&self) -> String {
        let mut parts = Vec::new();
        if let Some(d) = self.parameters.degree {
            parts.push(format!("D={d}"));
        }
        if let Some(s) = self.parameters.slack_used {
            parts.push(format!("slack={s}"));
        }
        if let Some(s) = self.parameters.seed {
            parts.push(format!("seed={s}"));
        }
        if let Some(p) = self.parameters.probes {
            parts.push(format!("probes={p}"));
        }
        if !self.dimensions.is_empty() {
            let dims: Vec<String> = self.dimensions.iter().map(|d| d.to_string()).collect();
            parts.push(format!("dims=[{}]", dims.join(",")));
        }
        if let Some(k) = &self.failure {
            parts.push(k.clone());
        }
        if self.informational {
            parts.push("informational".into());
        }
        parts.join(" ")
    }

    fn write_text(&self, depth: usize, out: &mut String) {
        let indent = "  ".repeat(depth);
        out.push_str(&format!(
            "{indent}{} {} ({})\n",
            self.status,
            self.check_name,
            self.key_numbers()
        ));
        for w in &self.witnesses {
            out.push_str(&format!("{indent}    witness: {w}\n"));
        }
        for n in &self.notes {
            out.push_str(&format!("{indent}    note: {n}\n"));
        }
        for c in &self.children {
            c.write_text(depth + 1, out);
        }
    }
}

/// A full CLI run: configuration echo plus ordered checks.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub timestamp: String,
    pub configuration: BTreeMap<String, String>,
    pub checks: Vec<CheckReport>,
    pub overall: Status,
}

impl RunReport {
    pub fn new(
        tool_version: impl Into<String>,
        timestamp: impl Into<String>,
        configuration: BTreeMap<String, String>,
    ) -> Self {
        Self {
            tool_version: tool_version.into(),
            timestamp: timestamp.into(),
            configuration,
            checks: Vec::new(),
            overall: Status::Pass,
        }
    }

    pub fn push(&mut self, check: CheckReport) {
        self.checks.push(check);
        self.overall = overall_status(&self.checks);
    }
}

/// Fail dominates, then unstable; informational checks are ignored.
pub fn overall_status(checks: &[CheckReport]) -> Status {
    let mut s = Status::Pass;
    for c in checks.iter().filter(|c| !c.informational) {
        match c.status {
            Status::Fail => return Status::Fail,
            Status::Unstable => s = Status::Unstable,
            Status::Pass => {}
        }
    }
    s
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn render_text(report: &RunReport) -> String {
    let mut out = format!(
        "{} run ({} checks, version {})\n",
        report.overall,
        report.checks.len(),
        report.tool_version
    );
    for (k, v) in &report.configuration {
        out.push_str(&format!("  config {k} = {v}\n"));
    }
    for c in &report.checks {
        c.write_text(0, &mut out);
    }
    out
}

pub fn render_json(report: &RunReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialization cannot fail")
}

pub fn parse_json(s: &str) -> Result<RunReport> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}

pub fn emit_report(report: &RunReport, format: ReportFormat, sink: &mut dyn Write) -> Result<()> {
    let body = match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Json => render_json(report) + "\n",
    };
    sink.write_all(body.as_bytes())
        .and_then(|_| sink.flush())
        .map_err(|e| Error::SinkUnwritable(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_passes() {
        let r = RunReport::new("0.1.0", "now", BTreeMap::new());
        assert_eq!(r.overall, Status::Pass);
        let back = parse_json(&render_json(&r)).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn failure_propagates() {
        let mut parent = CheckReport::new("parent");
        let mut child = CheckReport::new("child");
        child.fail("NotNormal", "b");
        parent.push(child);
        let mut info = CheckReport::new("info").informational();
        info.fail("Discrepancy", "x");
        let mut r = RunReport::new("0.1.0", "now", BTreeMap::new());
        r.push(info);
        assert_eq!(r.overall, Status::Pass);
        r.push(parent);
        assert_eq!(r.overall, Status::Fail);
        assert_eq!(r.checks[1].failure.as_deref(), Some("NotNormal"));
        assert!(render_text(&r).contains("FAIL child"));
    }

    struct Broken;
    impl Write for Broken {
        fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
            Err(std::io::Error::other("closed"))
        }
        fn flush(&mut self) -> std::io::Result<()> {
            Ok(())
        }
    }

    #[test]
    fn unwritable_sink() {
        let r = RunReport::new("0.1.0", "now", BTreeMap::new());
        let err = emit_report(&r, ReportFormat::Text, &mut Broken).unwrap_err();
        assert!(matches!(err, Error::SinkUnwritable(_)));
    }
}
