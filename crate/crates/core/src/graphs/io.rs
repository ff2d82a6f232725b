//! JSON graph files:
//!
//! ```json
//! {"vertices": [{"id": "a", "weight": 1}, {"id": "b", "weight": 3}],
//!  "arcs": [["a", "b"]]}
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{ConstructionReport, GraphError, WeightedOrientedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexEntry {
    pub id: String,
    pub weight: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub vertices: Vec<VertexEntry>,
    pub arcs: Vec<(String, String)>,
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl From<serde_json::Error> for ParseError {
    fn from(e: serde_json::Error) -> Self {
        ParseError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

pub fn parse_graph(text: &str) -> Result<(WeightedOrientedGraph, ConstructionReport), ParseError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let vertices = file.vertices.into_iter().map(|v| (v.id, v.weight)).collect();
    Ok(WeightedOrientedGraph::new(vertices, &file.arcs)?)
}

pub fn to_graph_file(d: &WeightedOrientedGraph) -> GraphFile {
    GraphFile {
        vertices: (0..d.len())
            .map(|v| VertexEntry { id: d.name(v).to_string(), weight: d.weight(v) as i64 })
            .collect(),
        arcs: d
            .arcs()
            .into_iter()
            .map(|(t, h)| (d.name(t).to_string(), d.name(h).to_string()))
            .collect(),
    }
}

pub fn graph_to_json(d: &WeightedOrientedGraph) -> String {
    serde_json::to_string_pretty(&to_graph_file(d)).expect("graph files always serialize")
}
