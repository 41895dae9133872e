//! Structured results printed by the command-line tool.

use std::fmt::Write as _;

use itertools::Itertools;
use serde::Serialize;

use crate::coloring::{FeasibleSet, Partition, Spectrum};
use crate::hypergraph::MixedHypergraph;
use crate::search::SearchReport;

/// One feasible partition, listed by vertex ids and, when the input carries
/// labels, by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColoringEntry {
    pub classes: usize,
    pub blocks: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labelled_blocks: Option<Vec<Vec<Vec<usize>>>>,
}

/// Result of the `spectrum` command. Contains nothing that depends on the
/// worker count or wall-clock time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub input_sha256: String,
    pub vertex_count: usize,
    pub spectrum: Vec<u64>,
    pub feasible_set: Vec<usize>,
    pub gaps: Vec<usize>,
    pub gap_free: bool,
    pub lower_chromatic: Option<usize>,
    pub upper_chromatic: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub colorings: Option<Vec<ColoringEntry>>,
}

impl RunReport {
    pub fn new(
        command: &str,
        input_sha256: String,
        h: &MixedHypergraph,
        spectrum: &Spectrum,
        colorings: Option<&[Partition]>,
    ) -> Self {
        let feasible = spectrum.feasible_set();
        RunReport {
            command: command.to_string(),
            input_sha256,
            vertex_count: h.vertex_count(),
            spectrum: spectrum.counts().to_vec(),
            feasible_set: feasible.to_vec(),
            gaps: feasible.gaps(),
            gap_free: feasible.is_gap_free(),
            lower_chromatic: spectrum.lower_chromatic(),
            upper_chromatic: spectrum.upper_chromatic(),
            colorings: colorings.map(|ps| ps.iter().map(|p| coloring_entry(h, p)).collect()),
        }
    }

    /// Spectrum, feasible set and gaps agree with each other.
    pub fn is_consistent(&self) -> bool {
        let spectrum = Spectrum::from_counts(self.spectrum.clone());
        let feasible: FeasibleSet = self.feasible_set.iter().copied().collect();
        let expected_gaps: Vec<usize> = match (feasible.min(), feasible.max()) {
            (Some(lo), Some(hi)) => (lo..=hi).filter(|&k| feasible.has_gap_at(k)).collect(),
            _ => Vec::new(),
        };
        spectrum.counts() == self.spectrum.as_slice()
            && spectrum.feasible_set() == feasible
            && self.gaps == expected_gaps
            && self.gap_free == self.gaps.is_empty()
            && self.lower_chromatic == feasible.min()
            && self.upper_chromatic == feasible.max()
            && self.colorings.as_ref().map_or(true, |cs| {
                cs.len() as u64 == spectrum.total()
                    && cs.iter().all(|c| spectrum.get(c.classes) > 0)
            })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<usize>| v.map_or("none".to_string(), |v| v.to_string());
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "input sha256: {}", self.input_sha256).unwrap();
        writeln!(out, "vertices: {}", self.vertex_count).unwrap();
        writeln!(out, "spectrum: ({})", self.spectrum.iter().join(", ")).unwrap();
        writeln!(out, "feasible set: {{{}}}", self.feasible_set.iter().join(", ")).unwrap();
        writeln!(
            out,
            "gaps: {}",
            if self.gaps.is_empty() {
                "none".to_string()
            } else {
                self.gaps.iter().join(", ")
            }
        )
        .unwrap();
        writeln!(out, "lower chromatic number: {}", opt(self.lower_chromatic)).unwrap();
        writeln!(out, "upper chromatic number: {}", opt(self.upper_chromatic)).unwrap();
        if let Some(colorings) = &self.colorings {
            writeln!(out, "colorings: {}", colorings.len()).unwrap();
            for c in colorings {
                let blocks = match &c.labelled_blocks {
                    Some(lb) => lb
                        .iter()
                        .map(|b| {
                            b.iter()
                                .map(|l| format!("({})", l.iter().join(",")))
                                .join(" ")
                        })
                        .map(|b| format!("{{{b}}}"))
                        .join(" "),
                    None => c
                        .blocks
                        .iter()
                        .map(|b| format!("{{{}}}", b.iter().join(" ")))
                        .join(" "),
                };
                writeln!(out, "  k={}: {}", c.classes, blocks).unwrap();
            }
        }
        out
    }
}

fn coloring_entry(h: &MixedHypergraph, p: &Partition) -> ColoringEntry {
    let blocks = p.block_lists();
    let labelled_blocks = h.labels().map(|labels| {
        blocks
            .iter()
            .map(|b| b.iter().map(|&v| labels[v].coords().to_vec()).collect())
            .collect()
    });
    ColoringEntry {
        classes: p.block_count(),
        blocks,
        labelled_blocks,
    }
}

/// Machine-readable form of a search report.
#[derive(Debug, Clone, Serialize)]
pub struct SearchSummary {
    pub command: String,
    pub set: Vec<usize>,
    pub vertex_count: usize,
    pub c_edge_size: usize,
    pub d_edge_size: usize,
    pub outcome: String,
    pub candidate_space: u64,
    pub examined: u64,
    pub canonical: u64,
    pub dedup_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<crate::document::HypergraphDocument>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_spectrum: Option<Vec<u64>>,
}

impl SearchSummary {
    pub fn new(
        set: &crate::constructions::SpecSet,
        budget: &crate::search::SearchBudget,
        report: &SearchReport,
    ) -> Self {
        SearchSummary {
            command: "search-min".into(),
            set: set.values().to_vec(),
            vertex_count: report.vertex_count,
            c_edge_size: budget.c_edge_size,
            d_edge_size: budget.d_edge_size,
            outcome: report.outcome.as_str().into(),
            candidate_space: report.candidate_space,
            examined: report.examined,
            canonical: report.canonical,
            dedup_ratio: report.dedup_ratio(),
            witness: report
                .witness
                .as_ref()
                .map(crate::document::HypergraphDocument::from_hypergraph),
            witness_spectrum: report
                .witness
                .as_ref()
                .map(|w| crate::coloring::chromatic_spectrum(w).counts().to_vec()),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "set: {{{}}}", self.set.iter().join(", ")).unwrap();
        writeln!(
            out,
            "family: {} vertices, C-edges of size {}, D-edges of size {}",
            self.vertex_count, self.c_edge_size, self.d_edge_size
        )
        .unwrap();
        writeln!(out, "outcome: {}", self.outcome).unwrap();
        writeln!(out, "candidate space: {}", self.candidate_space).unwrap();
        writeln!(out, "examined: {}", self.examined).unwrap();
        writeln!(out, "isomorphism classes tested: {}", self.canonical).unwrap();
        writeln!(out, "dedup ratio: {:.6}", self.dedup_ratio).unwrap();
        if let Some(w) = &self.witness {
            let edges = |es: &[Vec<usize>]| {
                if es.is_empty() {
                    "none".to_string()
                } else {
                    es.iter().map(|e| format!("{{{}}}", e.iter().join(","))).join(" ")
                }
            };
            writeln!(out, "witness C-edges: {}", edges(&w.c_edges)).unwrap();
            writeln!(out, "witness D-edges: {}", edges(&w.d_edges)).unwrap();
        }
        if let Some(s) = &self.witness_spectrum {
            writeln!(out, "witness spectrum: ({})", s.iter().join(", ")).unwrap();
        }
        if self.outcome != "witness-found" {
            writeln!(
                out,
                "note: only hypergraphs with uniform edge sizes were searched"
            )
            .unwrap();
        }
        out
    }
}
