//! Graph and plan files: a small JSON format with a canonical writer.
//!
//! ```text
//! {"kind": "geometric", "vertices": [[x, y], ...], "edges": [[u, v], ...], "metadata": {...}}
//! {"kind": "abstract", "vertices": n, "edges": [[u, v], ...]}
//! {"steps": [{"target": i, "line": [a, b, c]}, ...]}
//! ```

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::cuts::PartitionPlan;
use crate::geom::{Point2, Tolerance};
use crate::graph::{AbstractGraph, GeometricGraph, GraphError};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {message}")]
    Invalid { location: String, message: String },
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

fn invalid(location: impl Into<String>, message: impl ToString) -> IoError {
    IoError::Invalid {
        location: location.into(),
        message: message.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphFile {
    Geometric {
        graph: GeometricGraph,
        metadata: Map<String, Value>,
    },
    Abstract {
        graph: AbstractGraph,
        metadata: Map<String, Value>,
    },
}

impl GraphFile {
    pub fn geometric(graph: GeometricGraph) -> Self {
        GraphFile::Geometric {
            graph,
            metadata: Map::new(),
        }
    }

    pub fn abstract_graph(graph: AbstractGraph) -> Self {
        GraphFile::Abstract {
            graph,
            metadata: Map::new(),
        }
    }

    pub fn with_name(mut self, name: &str) -> Self {
        let (GraphFile::Geometric { metadata, .. } | GraphFile::Abstract { metadata, .. }) = &mut self;
        metadata.insert("name".into(), Value::String(name.into()));
        self
    }

    pub fn metadata(&self) -> &Map<String, Value> {
        match self {
            GraphFile::Geometric { metadata, .. } | GraphFile::Abstract { metadata, .. } => metadata,
        }
    }

    /// The combinatorial graph; geometric graphs forget their embedding.
    pub fn to_abstract(&self) -> AbstractGraph {
        match self {
            GraphFile::Geometric { graph, .. } => graph.to_abstract(),
            GraphFile::Abstract { graph, .. } => graph.clone(),
        }
    }

    pub fn as_geometric(&self) -> Option<&GeometricGraph> {
        match self {
            GraphFile::Geometric { graph, .. } => Some(graph),
            GraphFile::Abstract { .. } => None,
        }
    }
}

#[derive(Deserialize)]
#[serde(rename_all = "lowercase")]
enum Kind {
    Geometric,
    Abstract,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawVertices {
    Count(usize),
    Coords(Vec<[f64; 2]>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraph {
    kind: Kind,
    vertices: RawVertices,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    metadata: Map<String, Value>,
}

pub fn parse_graph(text: &str, tol: &Tolerance) -> Result<GraphFile, IoError> {
    let raw: RawGraph = serde_json::from_str(text)?;
    let n = match &raw.vertices {
        RawVertices::Count(n) => *n,
        RawVertices::Coords(c) => c.len(),
    };
    for (i, &[u, v]) in raw.edges.iter().enumerate() {
        if u >= n || v >= n {
            return Err(invalid(
                format!("edges[{i}]"),
                format!("edge ({u}, {v}) references a vertex outside 0..{n}"),
            ));
        }
    }
    let edges: Vec<(usize, usize)> = raw.edges.iter().map(|&[u, v]| (u, v)).collect();
    match (raw.kind, raw.vertices) {
        (Kind::Geometric, RawVertices::Coords(c)) => {
            let pts = c.into_iter().map(|[x, y]| Point2::new(x, y)).collect();
            let graph = GeometricGraph::new(pts, edges).map_err(|e| match e {
                GraphError::NonFinite(v) => invalid(format!("vertices[{v}]"), e),
                GraphError::SelfLoop(i) => invalid(format!("edges[{i}]"), e),
                _ => invalid("graph", e),
            })?;
            graph
                .validate(tol)
                .map_err(|v| invalid("graph", v))?;
            Ok(GraphFile::Geometric {
                graph,
                metadata: raw.metadata,
            })
        }
        (Kind::Abstract, RawVertices::Count(n)) => {
            if let Some(i) = edges.iter().position(|&(u, v)| u == v) {
                return Err(invalid(format!("edges[{i}]"), "self-loop"));
            }
            let graph = AbstractGraph::new(n, edges).map_err(|e| invalid("graph", e))?;
            Ok(GraphFile::Abstract {
                graph,
                metadata: raw.metadata,
            })
        }
        (Kind::Geometric, RawVertices::Count(_)) => Err(invalid(
            "vertices",
            "geometric graphs list vertex coordinates",
        )),
        (Kind::Abstract, RawVertices::Coords(_)) => {
            Err(invalid("vertices", "abstract graphs give a vertex count"))
        }
    }
}

fn num(x: f64) -> String {
    serde_json::to_string(&x).expect("finite number")
}

fn write_edges(out: &mut String, edges: &[(usize, usize)]) {
    out.push_str("  \"edges\": [");
    for (i, &(u, v)) in edges.iter().enumerate() {
        let sep = if i == 0 { "\n" } else { ",\n" };
        write!(out, "{sep}    [{u}, {v}]").unwrap();
    }
    out.push_str(if edges.is_empty() { "]" } else { "\n  ]" });
}

/// Canonical text: one vertex or edge per line, metadata keys sorted.
pub fn graph_to_string(file: &GraphFile) -> String {
    let mut out = String::from("{\n");
    match file {
        GraphFile::Geometric { graph, .. } => {
            out.push_str("  \"kind\": \"geometric\",\n  \"vertices\": [");
            for (i, p) in graph.vertices().iter().enumerate() {
                let sep = if i == 0 { "\n" } else { ",\n" };
                write!(out, "{sep}    [{}, {}]", num(p.x), num(p.y)).unwrap();
            }
            out.push_str(if graph.n() == 0 { "],\n" } else { "\n  ],\n" });
            write_edges(&mut out, graph.edges());
        }
        GraphFile::Abstract { graph, .. } => {
            write!(out, "  \"kind\": \"abstract\",\n  \"vertices\": {},\n", graph.n()).unwrap();
            write_edges(&mut out, graph.edges());
        }
    }
    let meta = file.metadata();
    if !meta.is_empty() {
        let text = serde_json::to_string(meta).expect("json values serialize");
        write!(out, ",\n  \"metadata\": {text}").unwrap();
    }
    out.push_str("\n}\n");
    out
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.to_owned(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), IoError> {
    std::fs::write(path, text).map_err(|source| IoError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_graph(path: &Path, tol: &Tolerance) -> Result<GraphFile, IoError> {
    parse_graph(&read(path)?, tol)
}

pub fn save_graph(path: &Path, file: &GraphFile) -> Result<(), IoError> {
    write(path, &graph_to_string(file))
}

pub fn parse_plan(text: &str) -> Result<PartitionPlan, IoError> {
    let plan: PartitionPlan = serde_json::from_str(text)?;
    // Targets are checked against the number of parts present at each step.
    for (i, s) in plan.steps.iter().enumerate() {
        if s.target > i {
            return Err(invalid(
                format!("steps[{i}]"),
                format!("target {} but only {} parts exist", s.target, i + 1),
            ));
        }
    }
    Ok(plan)
}

/// Canonical text: one step per line.
pub fn plan_to_string(plan: &PartitionPlan) -> String {
    let mut out = String::from("{\n  \"steps\": [");
    for (i, s) in plan.steps.iter().enumerate() {
        let [a, b, c]: [f64; 3] = s.line.into();
        let sep = if i == 0 { "\n" } else { ",\n" };
        write!(
            out,
            "{sep}    {{\"target\": {}, \"line\": [{}, {}, {}]}}",
            s.target,
            num(a),
            num(b),
            num(c)
        )
        .unwrap();
    }
    out.push_str(if plan.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}

pub fn load_plan(path: &Path) -> Result<PartitionPlan, IoError> {
    parse_plan(&read(path)?)
}

pub fn save_plan(path: &Path, plan: &PartitionPlan) -> Result<(), IoError> {
    write(path, &plan_to_string(plan))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::PlanStep;
    use crate::fixtures;
    use crate::geom::Line2;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn geometric_round_trip() {
        let f = GraphFile::geometric(fixtures::w33()).with_name("wheel");
        let text = graph_to_string(&f);
        let back = parse_graph(&text, &tol()).unwrap();
        assert_eq!(back, f);
        assert_eq!(graph_to_string(&back), text);
    }

    #[test]
    fn abstract_round_trip() {
        let f = GraphFile::abstract_graph(AbstractGraph::cycle(5));
        let text = graph_to_string(&f);
        assert!(text.contains("\"vertices\": 5"));
        assert_eq!(parse_graph(&text, &tol()).unwrap(), f);
    }

    #[test]
    fn compact_input_canonicalizes() {
        let text = r#"{"edges":[[0,1],[1,2],[2,3],[3,0]],"kind":"geometric",
            "vertices":[[0,0],[1,0],[1,1],[0,1]]}"#;
        let f = parse_graph(text, &tol()).unwrap();
        let canon = graph_to_string(&f);
        assert_eq!(graph_to_string(&parse_graph(&canon, &tol()).unwrap()), canon);
        assert_eq!(f.as_geometric().unwrap(), &fixtures::unit_square());
    }

    #[test]
    fn out_of_range_edge_is_located() {
        let text = r#"{"kind":"abstract","vertices":3,"edges":[[0,1],[1,7]]}"#;
        match parse_graph(text, &tol()) {
            Err(IoError::Invalid { location, .. }) => assert_eq!(location, "edges[1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let text = "{\n  \"kind\": \"abstract\",\n  \"vertices\": 3,,\n}";
        match parse_graph(text, &tol()) {
            Err(IoError::Syntax { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn crossing_is_rejected() {
        let text = r#"{"kind":"geometric","vertices":[[0,0],[1,1],[1,0],[0,1]],"edges":[[0,1],[2,3]]}"#;
        assert!(matches!(
            parse_graph(text, &tol()),
            Err(IoError::Invalid { .. })
        ));
    }

    #[test]
    fn plan_round_trip() {
        let plan = PartitionPlan::new(vec![
            PlanStep {
                target: 0,
                line: Line2::vertical(0.5),
            },
            PlanStep {
                target: 1,
                line: Line2::new(1.0, 1.0, 0.3).unwrap(),
            },
        ]);
        let text = plan_to_string(&plan);
        let back = parse_plan(&text).unwrap();
        assert_eq!(back, plan);
        assert_eq!(plan_to_string(&back), text);
        assert!(parse_plan(r#"{"steps":[{"target":1,"line":[1,0,0]}]}"#).is_err());
        assert!(parse_plan(r#"{"steps":[{"target":0,"line":[0,0,1]}]}"#).is_err());
    }
}
