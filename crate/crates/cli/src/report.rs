//! Analysis reports: one human-readable rendering and one JSON rendering,
//! carrying identical values. Every rational is shown exactly as `p/q`.

use cbd::contextuality::{ConnectednessReport, Verdict};
use cbd::coupling::Coupling;
use cbd::rational::format_rational;
use cbd::system::System;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Serialize)]
pub struct Report {
    pub input: String,
    pub mode: String,
    pub contents: Vec<String>,
    pub contexts: Vec<String>,
    pub bunches: usize,
    pub consistently_connected: bool,
    pub marginal_mismatches: Vec<MismatchEntry>,
    pub pair_targets: Vec<TargetEntry>,
    pub noncontextual: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEntry>,
}

#[derive(Serialize)]
pub struct MismatchEntry {
    pub content: String,
    pub contexts: (String, String),
    pub mismatch: String,
}

#[derive(Serialize)]
pub struct TargetEntry {
    pub content: String,
    pub contexts: (String, String),
    pub target: String,
}

#[derive(Serialize)]
pub struct WitnessRow {
    pub assignment: Vec<String>,
    pub probability: String,
}

#[derive(Serialize)]
pub struct OracleEntry {
    pub agree: bool,
    pub simplex: String,
    pub brute_force: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simplex_degree: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub brute_force_degree: Option<String>,
}

pub fn witness_rows(witness: &Coupling) -> Vec<WitnessRow> {
    witness
        .iter()
        .map(|(assignment, mass)| WitnessRow {
            assignment: assignment
                .iter()
                .map(|(label, outcome)| format!("{label}={outcome}"))
                .collect(),
            probability: format_rational(mass),
        })
        .collect()
}

pub fn build_report(
    input: &str,
    system: &System,
    connectedness: &ConnectednessReport,
    verdict: &Verdict,
    show_degree: bool,
    show_witness: bool,
    oracle: Option<OracleEntry>,
) -> Report {
    Report {
        input: input.to_string(),
        mode: verdict.mode.as_str().to_string(),
        contents: system
            .contents()
            .iter()
            .map(|c| c.id().to_string())
            .collect(),
        contexts: system
            .contexts()
            .iter()
            .map(|c| c.id().to_string())
            .collect(),
        bunches: system.bunches().len(),
        consistently_connected: connectedness.consistent,
        marginal_mismatches: connectedness
            .connections
            .iter()
            .flat_map(|conn| {
                conn.pairs.iter().map(|pair| MismatchEntry {
                    content: conn.content.to_string(),
                    contexts: (pair.contexts.0.to_string(), pair.contexts.1.to_string()),
                    mismatch: format_rational(&pair.mismatch),
                })
            })
            .collect(),
        pair_targets: verdict
            .pair_targets
            .iter()
            .map(|t| TargetEntry {
                content: t.content.to_string(),
                contexts: (t.contexts.0.to_string(), t.contexts.1.to_string()),
                target: format_rational(&t.value),
            })
            .collect(),
        noncontextual: verdict.noncontextual,
        degree: show_degree.then(|| format_rational(&verdict.degree)),
        witness: (show_witness && verdict.witness.is_some())
            .then(|| witness_rows(verdict.witness.as_ref().unwrap())),
        oracle,
    }
}

impl Report {
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "input: {}", self.input);
        let _ = writeln!(out, "mode: {}", self.mode);
        let _ = writeln!(out, "contents: {}", self.contents.join(" "));
        let _ = writeln!(out, "contexts: {}", self.contexts.join(" "));
        let _ = writeln!(out, "bunches: {}", self.bunches);
        let _ = writeln!(
            out,
            "consistently connected: {}",
            if self.consistently_connected {
                "yes"
            } else {
                "no"
            }
        );
        for m in &self.marginal_mismatches {
            let _ = writeln!(
                out,
                "  {} ({}, {}): mismatch {}",
                m.content, m.contexts.0, m.contexts.1, m.mismatch
            );
        }
        if self.pair_targets.is_empty() {
            let _ = writeln!(out, "pair targets: none (no content appears twice)");
        } else {
            let _ = writeln!(out, "pair targets:");
            for t in &self.pair_targets {
                let _ = writeln!(
                    out,
                    "  {} ({}, {}): {}",
                    t.content, t.contexts.0, t.contexts.1, t.target
                );
            }
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.noncontextual {
                "noncontextual"
            } else {
                "contextual"
            }
        );
        if let Some(degree) = &self.degree {
            // The degree is this tool's own shortfall measure, not a
            // standard quantity.
            let _ = writeln!(
                out,
                "degree: {degree} (minimal total shortfall of pair-equality probabilities)"
            );
        }
        if let Some(rows) = &self.witness {
            let _ = writeln!(out, "witness (nonzero assignments):");
            for row in rows {
                let _ = writeln!(out, "  {}: {}", row.assignment.join(" "), row.probability);
            }
        }
        if let Some(oracle) = &self.oracle {
            let _ = writeln!(
                out,
                "oracle check: {} (simplex {}, brute force {})",
                if oracle.agree { "agree" } else { "DISAGREE" },
                oracle.simplex,
                oracle.brute_force
            );
            if let (Some(a), Some(b)) = (&oracle.simplex_degree, &oracle.brute_force_degree) {
                let _ = writeln!(out, "oracle degree: simplex {a}, brute force {b}");
            }
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}
