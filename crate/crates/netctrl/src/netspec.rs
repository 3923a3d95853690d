//! On-disk network description: a JSON file carrying the node matrices and
//! the weighted coupling topology.
//!
//! Matrix entries and edge weights may be written as JSON integers, as
//! strings holding integers, decimals, or "p/q" fractions, or as floats
//! with an exactly integral value. Anything else is rejected: a value like
//! 0.1 has no exact binary representation, so fractional values must come
//! as strings to survive the trip into rational arithmetic.
//!
//! ```text
//! {
//!   "name": "two node loop",
//!   "node": {
//!     "A": [[1, 0], [1, 1]],
//!     "B": [["1"], ["0"]],
//!     "C": [[0, 1]],
//!     "H": [[0], ["1/2"]]
//!   },
//!   "topology": {
//!     "N": 2,
//!     "edges": [
//!       {"from": 1, "to": 2, "weight": 1},
//!       {"from": 2, "to": 1, "weight": "1/3"}
//!     ],
//!     "inputs": [1]
//!   }
//! }
//! ```
//!
//! Node ids are 1-based; an edge `{from: j, to: i, weight: w}` couples the
//! output of node j into node i with weight w.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exactalg::{parse_rat, rat_str, RMatrix, Rat};
use crate::model::{ModelError, NodeSystem, Topology};

#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{field}: {reason}")]
    Entry { field: String, reason: String },
    #[error("{field}: rows have unequal lengths")]
    Ragged { field: String },
    #[error("{field}: matrix must not be empty")]
    Empty { field: String },
    #[error("edge {index}: node id {id} is out of range 1..={n}")]
    EdgeRange { index: usize, id: usize, n: usize },
    #[error("edge {index}: self-coupling {id} -> {id} is not allowed")]
    SelfEdge { index: usize, id: usize },
    #[error("duplicate edge {from} -> {to}")]
    DuplicateEdge { from: usize, to: usize },
    #[error("edge {index}: weight must be nonzero (omit the edge instead)")]
    ZeroWeight { index: usize },
    #[error("input node id {id} is out of range 1..={n}")]
    InputRange { id: usize, n: usize },
    #[error("input node id {id} is listed twice")]
    DuplicateInput { id: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// A number as it may appear in the file.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum RawNum {
    Int(i64),
    Float(f64),
    Text(String),
}

impl RawNum {
    fn to_rat(&self, field: &str) -> Result<Rat, SpecError> {
        match self {
            RawNum::Int(v) => Ok(crate::exactalg::rint(*v)),
            RawNum::Float(f) => {
                if f.is_finite() && f.fract() == 0.0 && f.abs() <= 9.0e15 {
                    Ok(crate::exactalg::rint(*f as i64))
                } else {
                    Err(SpecError::Entry {
                        field: field.to_string(),
                        reason: format!(
                            "float {f} is not exactly integral; write it as a string like \"1/3\""
                        ),
                    })
                }
            }
            RawNum::Text(s) => parse_rat(s).map_err(|e| SpecError::Entry {
                field: field.to_string(),
                reason: e.to_string(),
            }),
        }
    }
}

#[derive(Debug, Deserialize)]
struct RawNode {
    #[serde(rename = "A")]
    a: Vec<Vec<RawNum>>,
    #[serde(rename = "B")]
    b: Vec<Vec<RawNum>>,
    #[serde(rename = "C")]
    c: Vec<Vec<RawNum>>,
    #[serde(rename = "H")]
    h: Vec<Vec<RawNum>>,
}

#[derive(Debug, Deserialize)]
struct RawEdge {
    from: usize,
    to: usize,
    weight: RawNum,
}

#[derive(Debug, Deserialize)]
struct RawTopology {
    #[serde(rename = "N")]
    n: usize,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    inputs: Vec<usize>,
}

#[derive(Debug, Deserialize)]
struct RawSpec {
    #[serde(default)]
    name: Option<String>,
    node: RawNode,
    topology: RawTopology,
}

/// A parsed and fully validated network description.
#[derive(Debug, Clone)]
pub struct ParsedSpec {
    pub name: String,
    pub node: NodeSystem,
    pub topo: Topology,
}

fn matrix_from(field: &str, raw: &[Vec<RawNum>]) -> Result<RMatrix, SpecError> {
    if raw.is_empty() || raw[0].is_empty() {
        return Err(SpecError::Empty {
            field: field.to_string(),
        });
    }
    let cols = raw[0].len();
    if raw.iter().any(|row| row.len() != cols) {
        return Err(SpecError::Ragged {
            field: field.to_string(),
        });
    }
    let mut rows = Vec::with_capacity(raw.len());
    for (i, row) in raw.iter().enumerate() {
        let mut out = Vec::with_capacity(cols);
        for (j, v) in row.iter().enumerate() {
            out.push(v.to_rat(&format!("{field}[{i}][{j}]"))?);
        }
        rows.push(out);
    }
    Ok(RMatrix::from_rows(rows))
}

fn topology_from(raw: &RawTopology) -> Result<Topology, SpecError> {
    let n = raw.n;
    let mut coupling = RMatrix::zeros(n, n);
    for (index, e) in raw.edges.iter().enumerate() {
        for id in [e.from, e.to] {
            if id == 0 || id > n {
                return Err(SpecError::EdgeRange { index, id, n });
            }
        }
        if e.from == e.to {
            return Err(SpecError::SelfEdge { index, id: e.from });
        }
        let w = e.weight.to_rat(&format!("edges[{index}].weight"))?;
        if w == crate::exactalg::rint(0) {
            return Err(SpecError::ZeroWeight { index });
        }
        let (i, j) = (e.to - 1, e.from - 1);
        if !coupling[(i, j)].eq(&crate::exactalg::rint(0)) {
            return Err(SpecError::DuplicateEdge {
                from: e.from,
                to: e.to,
            });
        }
        coupling.set(i, j, w);
    }
    let mut flags = vec![false; n];
    for &id in &raw.inputs {
        if id == 0 || id > n {
            return Err(SpecError::InputRange { id, n });
        }
        if flags[id - 1] {
            return Err(SpecError::DuplicateInput { id });
        }
        flags[id - 1] = true;
    }
    Ok(Topology::new(coupling, flags)?)
}

/// Parses a network description from a JSON string.
pub fn parse_spec_str(text: &str) -> Result<ParsedSpec, SpecError> {
    let raw: RawSpec = serde_json::from_str(text)?;
    let a = matrix_from("node.A", &raw.node.a)?;
    let b = matrix_from("node.B", &raw.node.b)?;
    let c = matrix_from("node.C", &raw.node.c)?;
    let h = matrix_from("node.H", &raw.node.h)?;
    let node = NodeSystem::new(a, b, c, h)?;
    let topo = topology_from(&raw.topology)?;
    Ok(ParsedSpec {
        name: raw.name.unwrap_or_else(|| "unnamed".to_string()),
        node,
        topo,
    })
}

/// Reads and parses a network description file.
pub fn parse_spec(path: &Path) -> Result<ParsedSpec, SpecError> {
    let text = std::fs::read_to_string(path).map_err(|source| SpecError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec_str(&text)
}

#[derive(Serialize)]
struct OutNode {
    #[serde(rename = "A")]
    a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    b: Vec<Vec<String>>,
    #[serde(rename = "C")]
    c: Vec<Vec<String>>,
    #[serde(rename = "H")]
    h: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct OutEdge {
    from: usize,
    to: usize,
    weight: String,
}

#[derive(Serialize)]
struct OutTopology {
    #[serde(rename = "N")]
    n: usize,
    edges: Vec<OutEdge>,
    inputs: Vec<usize>,
}

#[derive(Serialize)]
struct OutSpec {
    name: String,
    node: OutNode,
    topology: OutTopology,
}

fn matrix_strings(m: &RMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(rat_str).collect())
        .collect()
}

/// Serializes a validated network back to the canonical JSON form, with
/// every entry as an exact rational string and edges sorted by (from, to).
pub fn serialize_spec(name: &str, node: &NodeSystem, topo: &Topology) -> String {
    let out = OutSpec {
        name: name.to_string(),
        node: OutNode {
            a: matrix_strings(node.a()),
            b: matrix_strings(node.b()),
            c: matrix_strings(node.c()),
            h: matrix_strings(node.h()),
        },
        topology: OutTopology {
            n: topo.n_nodes(),
            edges: topo
                .edges()
                .iter()
                .map(|e| OutEdge {
                    from: e.from + 1,
                    to: e.to + 1,
                    weight: rat_str(&e.weight),
                })
                .collect(),
            inputs: topo.driven_nodes().iter().map(|v| v + 1).collect(),
        },
    };
    serde_json::to_string_pretty(&out).expect("plain data serializes")
}
