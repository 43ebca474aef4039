//! Canonical JSON graph files.
//!
//! ```text
//! {"kind":"oriented","m":M,"n":N,"arcs":[[a,b,"AtoB"|"BtoA"],...]}
//! {"kind":"colored","m":M,"n":N,"edges":[[a,b,c],...]}
//! ```
//!
//! Output arrays are sorted by `(a, b)`. Input is validated: duplicate pairs,
//! digons, out-of-range indices and color 0 are rejected.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::error::GraphError;
use crate::graph::{Arc, ColoredBipartiteGraph, ColoredEdge, OrientedBipartiteGraph, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GraphFile {
    Oriented { m: usize, n: usize, arcs: Vec<Arc> },
    Colored { m: usize, n: usize, edges: Vec<ColoredEdge> },
}

/// A parsed and validated graph of either kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyGraph {
    Oriented(OrientedBipartiteGraph),
    Colored(ColoredBipartiteGraph),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("invalid graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("expected a {expected} graph, found a {found} graph")]
    WrongKind { expected: &'static str, found: &'static str },
}

impl From<&OrientedBipartiteGraph> for GraphFile {
    fn from(d: &OrientedBipartiteGraph) -> Self {
        GraphFile::Oriented { m: d.m(), n: d.n(), arcs: d.arcs() }
    }
}

impl From<&ColoredBipartiteGraph> for GraphFile {
    fn from(g: &ColoredBipartiteGraph) -> Self {
        GraphFile::Colored { m: g.m(), n: g.n(), edges: g.edges() }
    }
}

impl From<&AnyGraph> for GraphFile {
    fn from(g: &AnyGraph) -> Self {
        match g {
            AnyGraph::Oriented(d) => d.into(),
            AnyGraph::Colored(c) => c.into(),
        }
    }
}

impl TryFrom<GraphFile> for AnyGraph {
    type Error = FormatError;

    fn try_from(file: GraphFile) -> Result<Self, FormatError> {
        let invalid = |e: GraphError| match e {
            GraphError::Invalid(vs) => FormatError::Invalid(vs),
            other => unreachable!("graph construction only reports violations: {other}"),
        };
        Ok(match file {
            GraphFile::Oriented { m, n, arcs } => {
                AnyGraph::Oriented(OrientedBipartiteGraph::from_arcs(m, n, &arcs).map_err(invalid)?)
            }
            GraphFile::Colored { m, n, edges } => {
                AnyGraph::Colored(ColoredBipartiteGraph::from_edges(m, n, &edges).map_err(invalid)?)
            }
        })
    }
}

impl AnyGraph {
    fn kind(&self) -> &'static str {
        match self {
            AnyGraph::Oriented(_) => "oriented",
            AnyGraph::Colored(_) => "colored",
        }
    }

    pub fn into_oriented(self) -> Result<OrientedBipartiteGraph, FormatError> {
        match self {
            AnyGraph::Oriented(d) => Ok(d),
            other => Err(FormatError::WrongKind { expected: "oriented", found: other.kind() }),
        }
    }

    pub fn into_colored(self) -> Result<ColoredBipartiteGraph, FormatError> {
        match self {
            AnyGraph::Colored(g) => Ok(g),
            other => Err(FormatError::WrongKind { expected: "colored", found: other.kind() }),
        }
    }
}

/// Parses and validates a graph file.
pub fn parse_graph(text: &str) -> Result<AnyGraph, FormatError> {
    let file: GraphFile = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.try_into()
}

/// Canonical single-line JSON for a graph.
pub fn to_json<G>(g: &G) -> String
where
    for<'a> &'a G: Into<GraphFile>,
{
    serde_json::to_string(&g.into()).expect("graph files always serialize")
}

impl Serialize for OrientedBipartiteGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrientedBipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = GraphFile::deserialize(deserializer)?;
        AnyGraph::try_from(file)
            .and_then(AnyGraph::into_oriented)
            .map_err(D::Error::custom)
    }
}

impl Serialize for ColoredBipartiteGraph {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        GraphFile::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ColoredBipartiteGraph {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let file = GraphFile::deserialize(deserializer)?;
        AnyGraph::try_from(file)
            .and_then(AnyGraph::into_colored)
            .map_err(D::Error::custom)
    }
}
