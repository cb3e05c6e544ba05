//! Marked graphs as JSON:
//!
//! ```json
//! { "rank": 2, "vertices": [0], "edges": [{"id": 0, "from": 0, "to": 0, "length": "1/2"}, ...],
//!   "tree": [], "labels": {"0": "a", "1": "b"} }
//! ```
//!
//! Vertex and edge ids may be integers or strings. Lengths are exact
//! rational strings. Labels are keyed by edge id and read in the edge's
//! forward direction; tree edges carry none.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use outerspace_core::rational::{format_q, parse_q};
use outerspace_core::{GraphSpec, MarkedGraph, Q};
use serde::{Deserialize, Serialize};

use crate::error::{io_error, CliError, Result};
use crate::text::{format_word, parse_word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Num(u64),
    Name(String),
}

impl fmt::Display for Id {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Id::Num(n) => write!(f, "{n}"),
            Id::Name(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub id: Id,
    pub from: Id,
    pub to: Id,
    pub length: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub rank: usize,
    pub vertices: Vec<Id>,
    pub edges: Vec<EdgeJson>,
    #[serde(default)]
    pub tree: Vec<Id>,
    #[serde(default)]
    pub labels: BTreeMap<String, String>,
}

fn index_of<'a>(ids: impl Iterator<Item = &'a Id>, what: &str) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, id) in ids.enumerate() {
        if map.insert(id.to_string(), i).is_some() {
            return Err(CliError::input(format!("duplicate {what} id {id}")));
        }
    }
    Ok(map)
}

impl GraphJson {
    pub fn to_spec(&self) -> Result<GraphSpec> {
        let vertices = index_of(self.vertices.iter(), "vertex")?;
        let edge_ids = index_of(self.edges.iter().map(|e| &e.id), "edge")?;
        let vertex = |id: &Id| {
            vertices.get(&id.to_string()).copied().ok_or_else(|| CliError::input(format!("unknown vertex {id}")))
        };
        let edge = |id: &str| edge_ids.get(id).copied().ok_or_else(|| CliError::input(format!("unknown edge {id}")));
        let mut edges = Vec::with_capacity(self.edges.len());
        for e in &self.edges {
            let length: Q = parse_q(&e.length)?;
            edges.push((vertex(&e.from)?, vertex(&e.to)?, length));
        }
        let tree = self.tree.iter().map(|id| edge(&id.to_string())).collect::<Result<Vec<_>>>()?;
        let labels = self
            .labels
            .iter()
            .map(|(id, w)| Ok((edge(id)?, parse_word(w, Some(self.rank))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GraphSpec { rank: self.rank, vertex_count: self.vertices.len(), edges, tree, labels })
    }

    pub fn to_graph(&self) -> Result<MarkedGraph> {
        Ok(MarkedGraph::new(&self.to_spec()?)?)
    }

    /// Integer ids, in `GraphSpec` order.
    pub fn from_spec(spec: &GraphSpec) -> Self {
        GraphJson {
            rank: spec.rank,
            vertices: (0..spec.vertex_count as u64).map(Id::Num).collect(),
            edges: spec
                .edges
                .iter()
                .enumerate()
                .map(|(i, (a, b, l))| EdgeJson {
                    id: Id::Num(i as u64),
                    from: Id::Num(*a as u64),
                    to: Id::Num(*b as u64),
                    length: format_q(l),
                })
                .collect(),
            tree: spec.tree.iter().map(|&e| Id::Num(e as u64)).collect(),
            labels: spec.labels.iter().map(|(e, w)| (e.to_string(), format_word(w))).collect(),
        }
    }

    pub fn from_graph(g: &MarkedGraph) -> Self {
        Self::from_spec(&g.to_spec())
    }
}

/// A graph argument: a JSON file, or `rose:<l1>,<l2>,..` for a rose with the
/// given edge lengths and the standard marking.
pub fn load_graph(arg: &str) -> Result<MarkedGraph> {
    if let Some(lengths) = arg.strip_prefix("rose:") {
        let lengths = lengths.split(',').map(|s| parse_q(s.trim())).collect::<Result<Vec<Q>, _>>()?;
        return Ok(MarkedGraph::rose(lengths.len(), &lengths)?);
    }
    load_graph_json(Path::new(arg))?.to_graph()
}

pub fn load_graph_json(path: &Path) -> Result<GraphJson> {
    let text = std::fs::read_to_string(path).map_err(io_error(path))?;
    Ok(serde_json::from_str(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use outerspace_core::rational::q;

    const THETA: &str = r#"{
        "rank": 2,
        "vertices": ["p", "q"],
        "edges": [
            {"id": "t", "from": "p", "to": "q", "length": "1/3"},
            {"id": "x", "from": "p", "to": "q", "length": "1/3"},
            {"id": "y", "from": "q", "to": "p", "length": "1/3"}
        ],
        "tree": ["t"],
        "labels": {"x": "a", "y": "B"}
    }"#;

    #[test]
    fn reads_named_ids() {
        let g: GraphJson = serde_json::from_str(THETA).unwrap();
        let t = g.to_graph().unwrap();
        assert_eq!(t.rank(), 2);
        assert_eq!(t.volume(), q(1, 1));
        assert_eq!(t.translation_length(&parse_word("a", None).unwrap()).unwrap(), q(2, 3));
        let back = GraphJson::from_graph(&t).to_graph().unwrap();
        assert!(back.same_length_function(&t).unwrap());
    }

    #[test]
    fn rejects_bad_references() {
        let mut g: GraphJson = serde_json::from_str(THETA).unwrap();
        g.tree = vec![Id::Name("z".into())];
        assert!(matches!(g.to_spec(), Err(CliError::Input(_))));
        let mut g: GraphJson = serde_json::from_str(THETA).unwrap();
        g.edges[1].length = "0".into();
        assert!(g.to_graph().is_err());
        let mut g: GraphJson = serde_json::from_str(THETA).unwrap();
        g.vertices.push(Id::Name("p".into()));
        assert!(g.to_spec().is_err());
    }

    #[test]
    fn rose_shorthand() {
        let r = load_graph("rose:1/2, 3/2").unwrap();
        assert_eq!(r.volume(), q(2, 1));
        assert!(load_graph("rose:1,x").is_err());
    }
}
