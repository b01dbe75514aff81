//! JSON graph documents.

use std::collections::BTreeMap;

use bbgroups::triangulation::{BuildScript, BuildStep, TriangulationKind, ValidationReport};
use bbgroups::{Graph, WeightedGraph};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"vertices": [...], "edges": [[u, v], ...], "weights": {"u-v": m}}`.
///
/// Vertex order is significant. Edges absent from `weights` get weight 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<BTreeMap<String, u32>>,
    /// Present on documents written by `generate`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build: Option<BuildRecord>,
}

/// How a generated document was built, enough to replay and re-validate it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BuildRecord {
    pub kind: TriangulationKind,
    /// Script of the special triangulation (the core, for extra-special builds).
    pub script: BuildScript,
    pub log: Vec<BuildStep>,
    pub triangles: Vec<[String; 3]>,
    pub boundary: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub validation: Vec<CheckRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckRecord {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn from_report(report: &ValidationReport) -> Vec<Self> {
        report
            .checks
            .iter()
            .map(|c| CheckRecord {
                name: c.name.to_string(),
                passed: c.passed,
                detail: c.detail.clone(),
            })
            .collect()
    }
}

impl GraphDocument {
    pub fn from_graph(g: &Graph) -> Self {
        GraphDocument {
            vertices: g.labels().to_vec(),
            edges: g
                .edges()
                .iter()
                .map(|&(u, v)| [g.label(u).to_string(), g.label(v).to_string()])
                .collect(),
            weights: None,
            build: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::Input(format!("line {}, column {}: {e}", e.line(), e.column()))
        })
    }

    pub fn read(path: &str) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}")))?;
        Self::parse(&text).map_err(|e| CliError::Input(format!("{path}: {}", e.message())))
    }

    fn edge_indices(&self) -> Result<Vec<(usize, usize)>, CliError> {
        let index: BTreeMap<&str, usize> = self.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        self.edges
            .iter()
            .enumerate()
            .map(|(i, [a, b])| {
                let find = |label: &str| {
                    index
                        .get(label)
                        .copied()
                        .ok_or_else(|| CliError::Input(format!("edges[{i}]: unknown vertex {label:?}")))
                };
                Ok((find(a)?, find(b)?))
            })
            .collect()
    }

    pub fn to_graph(&self) -> Result<Graph, CliError> {
        let edges = self.edge_indices()?;
        for (i, &(u, v)) in edges.iter().enumerate() {
            let key = (u.min(v), u.max(v));
            if let Some(j) = edges[..i].iter().position(|&(a, b)| (a.min(b), a.max(b)) == key) {
                return Err(CliError::Input(format!("edges[{i}]: duplicates edges[{j}]")));
            }
        }
        Graph::new(self.vertices.clone(), edges).map_err(|e| CliError::Input(format!("graph: {e}")))
    }

    /// Weights keyed `"u-v"` in either order; the split point is found by label lookup.
    pub fn to_weighted(&self) -> Result<WeightedGraph, CliError> {
        let g = self.to_graph()?;
        let mut weights = vec![2u32; g.edge_count()];
        for (key, &m) in self.weights.iter().flatten() {
            let edge = key
                .match_indices('-')
                .filter_map(|(i, _)| Some((g.index_of(&key[..i])?, g.index_of(&key[i + 1..])?)))
                .find_map(|(u, v)| g.edge_index(u, v))
                .ok_or_else(|| CliError::Input(format!("weights[{key:?}]: not an edge \"u-v\"")))?;
            if m < 2 {
                return Err(CliError::Input(format!("weights[{key:?}]: weight {m} is below 2")));
            }
            weights[edge] = m;
        }
        WeightedGraph::new(g, weights).map_err(|e| CliError::Input(format!("weights: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes") + "\n"
    }
}
