//! The report written by every command.

use std::fmt::Write as _;

use hessalg::hessdual::EntryReport;
use hessalg::{CheckReport, Status};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub name: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(name: impl Into<String>, bytes: &[u8]) -> Self {
        Self {
            name: name.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Deterministic for fixed inputs, seed and version: no clock, no host data.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub mode: &'static str,
    pub seed: u64,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<CheckReport>,
    pub discrepancies: Vec<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<EntryReport>,
}

impl ReportBundle {
    pub fn new(command: &str, exact: bool, seed: u64) -> Self {
        Self {
            tool: "hessalg",
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            mode: if exact { "exact" } else { "float" },
            seed,
            inputs: Vec::new(),
            checks: Vec::new(),
            discrepancies: Vec::new(),
            data: Value::Null,
            entries: Vec::new(),
        }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status.is_failure())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# hessalg {}: {}\n", self.version, self.command);
        let _ = writeln!(out, "- mode: {}", self.mode);
        let _ = writeln!(out, "- seed: {}", self.seed);
        for i in &self.inputs {
            let _ = writeln!(out, "- input `{}`: sha256 `{}`", i.name, i.sha256);
        }
        let overall = if self.failed() { "FAIL" } else { "PASS" };
        let _ = writeln!(out, "- result: **{overall}**\n");
        if !self.checks.is_empty() && self.entries.is_empty() {
            out.push_str("## Checks\n\n");
            check_table(&mut out, &self.checks);
        }
        for e in &self.entries {
            let _ = writeln!(out, "## Example {}: {}\n", e.example, e.title);
            out.push_str("### Checks\n\n");
            check_table(&mut out, &e.checks);
            if !e.properties.is_empty() {
                out.push_str("### Properties\n\n");
                check_table(&mut out, &e.properties);
            }
            if !e.facts.is_empty() {
                out.push_str("### Published facts\n\n");
                out.push_str("| fact | claimed | computed | agrees |\n|---|---|---|---|\n");
                for f in &e.facts {
                    let _ = writeln!(
                        out,
                        "| {} | {} | {} | {} |",
                        cell(&f.name),
                        cell(&f.claimed),
                        cell(&f.computed),
                        if f.agrees { "yes" } else { "**no**" }
                    );
                }
                out.push('\n');
            }
            if !e.discrepancies.is_empty() {
                out.push_str("### Discrepancies\n\n");
                for d in &e.discrepancies {
                    let _ = writeln!(out, "- {d}");
                }
                out.push('\n');
            }
        }
        if self.entries.is_empty() && !self.discrepancies.is_empty() {
            out.push_str("## Discrepancies\n\n");
            for d in &self.discrepancies {
                let _ = writeln!(out, "- {d}");
            }
            out.push('\n');
        }
        if !self.data.is_null() {
            out.push_str("## Data\n\n```json\n");
            out.push_str(&serde_json::to_string_pretty(&self.data).expect("data serializes"));
            out.push_str("\n```\n");
        }
        out
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn check_table(out: &mut String, checks: &[CheckReport]) {
    out.push_str("| check | status | defect | witness | note |\n|---|---|---|---|---|\n");
    for c in checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "**FAIL**",
            Status::Skipped => "skipped",
            Status::Vacuous => "vacuous",
        };
        let witness = c
            .witness
            .as_ref()
            .map(|w| format!("({})", w.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "| {} | {status} | {:.3e} | {witness} | {} |",
            cell(&c.name),
            c.defect,
            cell(c.note.as_deref().unwrap_or(""))
        );
    }
    out.push('\n');
}
