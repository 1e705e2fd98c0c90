//! Structured run reports with deterministic text and JSON renderings.
//!
//! Reports are byte-reproducible: the same invocation on the same input
//! always serializes identically.  All exact numbers appear as strings in
//! the scalar expression grammar, never as floats.

use fourier_core::fusion::{AxiomReport, Witness};
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Outcome of a single named check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Informational: reported but never affects the exit code.
    Info,
    /// The check's hypothesis is not met by this input.
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Item {
    pub fn new(name: impl Into<String>, status: Status) -> Self {
        Item { name: name.into(), status, detail: None }
    }

    pub fn with_detail(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Item { name: name.into(), status, detail: Some(detail.into()) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: String,
    pub items: Vec<Item>,
}

/// A named input with the digest of its raw bytes.
#[derive(Debug, Clone, Serialize)]
pub struct InputRecord {
    pub source: String,
    pub sha256: String,
}

impl InputRecord {
    pub fn new(source: impl Into<String>, bytes: &[u8]) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(bytes);
        let mut hex = String::with_capacity(64);
        for byte in hasher.finalize() {
            hex.push_str(&format!("{byte:02x}"));
        }
        InputRecord { source: source.into(), sha256: hex }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub inputs: Vec<InputRecord>,
    pub sections: Vec<Section>,
    pub verdict: &'static str,
    /// A document produced by the command (rescaled matrix, generated
    /// table, reconstructed matrix), in the document grammar.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub document: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema: 1,
            tool: "fmat",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            inputs: Vec::new(),
            sections: Vec::new(),
            verdict: "pass",
            document: None,
        }
    }

    pub fn record_input(&mut self, source: impl Into<String>, bytes: &[u8]) {
        self.inputs.push(InputRecord::new(source, bytes));
    }

    pub fn push_section(&mut self, section: Section) {
        if section.items.iter().any(|item| item.status == Status::Fail) {
            self.verdict = "fail";
        }
        self.sections.push(section);
    }

    /// One section holding a single item, for simple verdicts.
    pub fn push_single(&mut self, section: &str, item: Item) {
        self.push_section(Section { name: section.to_string(), items: vec![item] });
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    /// Exit status for this report: 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    /// Plain-text rendering: one line per check, a final verdict line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for input in &self.inputs {
            out.push_str(&format!("input: {} (sha256 {})\n", input.source, input.sha256));
        }
        for section in &self.sections {
            out.push_str(&format!("[{}]\n", section.name));
            for item in &section.items {
                let status = match item.status {
                    Status::Pass => "pass",
                    Status::Fail => "FAIL",
                    Status::Info => "info",
                    Status::NotApplicable => "not applicable",
                };
                match &item.detail {
                    Some(detail) => {
                        out.push_str(&format!("  {}: {status} — {detail}\n", item.name))
                    }
                    None => out.push_str(&format!("  {}: {status}\n", item.name)),
                }
            }
        }
        out.push_str(&format!("verdict: {}\n", if self.passed() { "pass" } else { "FAIL" }));
        out
    }
}

/// Renders a witness as human-readable detail text.
pub fn witness_text(witness: &Witness) -> String {
    let mut parts = Vec::new();
    if !witness.indices.is_empty() {
        let joined: Vec<String> = witness.indices.iter().map(|i| i.to_string()).collect();
        parts.push(format!("at ({})", joined.join(", ")));
    }
    if let Some(value) = &witness.value {
        parts.push(format!("value {value}"));
    }
    if !witness.detail.is_empty() {
        parts.push(witness.detail.clone());
    }
    parts.join("; ")
}

/// Converts an axiom report into a section, one item per named check.
pub fn section_from_axioms(name: &str, report: &AxiomReport) -> Section {
    let items = report
        .checks
        .iter()
        .map(|check| {
            let status = if check.passed { Status::Pass } else { Status::Fail };
            match &check.witness {
                Some(witness) => Item::with_detail(check.name, status, witness_text(witness)),
                None => Item::new(check.name, status),
            }
        })
        .collect();
    Section { name: name.to_string(), items }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_render_deterministically() {
        let mut report = Report::new("verify");
        report.record_input("-", b"1, 2\n");
        report.push_single("axioms", Item::new("square", Status::Pass));
        report.push_single(
            "axioms",
            Item::with_detail("unitary", Status::Fail, "row 1 pairs with nothing"),
        );
        assert!(!report.passed());
        assert_eq!(report.exit_code(), 1);
        let a = report.to_json();
        let b = report.to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": 1"));
        assert!(a.contains("sha256"));
        let text = report.to_text();
        assert!(text.contains("unitary: FAIL — row 1 pairs with nothing"));
        assert!(text.ends_with("verdict: FAIL\n"));
    }

    #[test]
    fn digests_match_sha256_of_bytes() {
        let record = InputRecord::new("x", b"abc");
        assert_eq!(
            record.sha256,
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }
}
