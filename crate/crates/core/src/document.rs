//! On-disk hypergraph documents.
//!
//! A document is a UTF-8 JSON object:
//!
//! ```text
//! {
//!   "format_version": 1,
//!   "vertex_count": 3,
//!   "labels": [[1, 1], [2, 2], [3, 2]],
//!   "c_edges": [],
//!   "d_edges": [[0, 1], [0, 2]]
//! }
//! ```
//!
//! `labels` is optional. Serialization is canonical: each edge lists its
//! vertices ascending, edges are sorted lexicographically, and the layout is
//! fixed (one edge or label per line), so equal hypergraphs produce identical
//! bytes.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::hypergraph::{MixedHypergraph, TupleLabel};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    Version(u32),
    #[error("invalid hypergraph: {0}")]
    Invalid(#[from] crate::error::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphDocument {
    pub format_version: u32,
    pub vertex_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Vec<usize>>>,
    pub c_edges: Vec<Vec<usize>>,
    pub d_edges: Vec<Vec<usize>>,
}

impl HypergraphDocument {
    pub fn from_hypergraph(h: &MixedHypergraph) -> Self {
        let lists = |edges: &[crate::hypergraph::VertexSet]| edges.iter().map(|e| e.to_vec()).collect();
        HypergraphDocument {
            format_version: FORMAT_VERSION,
            vertex_count: h.vertex_count(),
            labels: h
                .labels()
                .map(|l| l.iter().map(|t| t.coords().to_vec()).collect()),
            c_edges: lists(h.c_edges()),
            d_edges: lists(h.d_edges()),
        }
    }

    pub fn to_hypergraph(&self) -> Result<MixedHypergraph, DocumentError> {
        if self.format_version != FORMAT_VERSION {
            return Err(DocumentError::Version(self.format_version));
        }
        let h = MixedHypergraph::new(self.vertex_count, &self.c_edges, &self.d_edges)?;
        Ok(match &self.labels {
            Some(labels) => h.with_labels(labels.iter().cloned().map(TupleLabel).collect())?,
            None => h,
        })
    }

    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text form, newline terminated.
    pub fn to_canonical_string(&self) -> String {
        // Invalid documents are printed as given.
        let doc = match self.to_hypergraph() {
            Ok(h) => HypergraphDocument::from_hypergraph(&h),
            Err(_) => self.clone(),
        };
        let mut out = String::new();
        out.push_str("{\n");
        out.push_str(&format!("  \"format_version\": {},\n", doc.format_version));
        out.push_str(&format!("  \"vertex_count\": {},\n", doc.vertex_count));
        if let Some(labels) = &doc.labels {
            out.push_str(&format!("  \"labels\": {},\n", list_block(labels)));
        }
        out.push_str(&format!("  \"c_edges\": {},\n", list_block(&doc.c_edges)));
        out.push_str(&format!("  \"d_edges\": {}\n", list_block(&doc.d_edges)));
        out.push_str("}\n");
        out
    }
}

fn inline_list(items: &[usize]) -> String {
    let parts: Vec<String> = items.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn list_block(lists: &[Vec<usize>]) -> String {
    if lists.is_empty() {
        return "[]".to_string();
    }
    let rows: Vec<String> = lists.iter().map(|l| format!("    {}", inline_list(l))).collect();
    format!("[\n{}\n  ]", rows.join(",\n"))
}

/// Canonical document text for a hypergraph.
pub fn serialize(h: &MixedHypergraph) -> String {
    HypergraphDocument::from_hypergraph(h).to_canonical_string()
}

/// Parses and validates a document.
pub fn parse(text: &str) -> Result<MixedHypergraph, DocumentError> {
    HypergraphDocument::parse(text)?.to_hypergraph()
}

/// Hex SHA-256 of the given bytes.
pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_layout() {
        let h = MixedHypergraph::new(3, vec![vec![2, 1, 0]], vec![vec![2, 0], vec![1, 0]])
            .unwrap()
            .with_labels(vec![
                TupleLabel(vec![1, 1]),
                TupleLabel(vec![2, 2]),
                TupleLabel(vec![3, 2]),
            ])
            .unwrap();
        let text = serialize(&h);
        assert_eq!(
            text,
            "{\n  \"format_version\": 1,\n  \"vertex_count\": 3,\n  \"labels\": [\n    [1, 1],\n    [2, 2],\n    [3, 2]\n  ],\n  \"c_edges\": [\n    [0, 1, 2]\n  ],\n  \"d_edges\": [\n    [0, 1],\n    [0, 2]\n  ]\n}\n"
        );
        assert_eq!(parse(&text).unwrap(), h);
    }

    #[test]
    fn unlabelled_documents_omit_labels() {
        let h = MixedHypergraph::edgeless(2).unwrap();
        let text = serialize(&h);
        assert!(!text.contains("labels"));
        assert_eq!(parse(&text).unwrap(), h);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(parse("{"), Err(DocumentError::Parse(_))));
        assert!(matches!(
            parse(r#"{"format_version": 2, "vertex_count": 1, "c_edges": [], "d_edges": []}"#),
            Err(DocumentError::Version(2))
        ));
        assert!(matches!(
            parse(r#"{"format_version": 1, "vertex_count": 2, "c_edges": [[0]], "d_edges": []}"#),
            Err(DocumentError::Invalid(_))
        ));
        assert!(matches!(
            parse(r#"{"format_version": 1, "vertex_count": 2, "c_edges": [], "d_edges": [], "extra": 1}"#),
            Err(DocumentError::Parse(_))
        ));
        assert!(matches!(
            parse(r#"{"format_version": 1, "vertex_count": 2, "labels": [[1]], "c_edges": [], "d_edges": []}"#),
            Err(DocumentError::Invalid(_))
        ));
    }

    #[test]
    fn digest_is_hex_sha256() {
        assert_eq!(
            digest(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
