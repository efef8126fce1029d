//! JSON graph files.
//!
//! ```json
//! {"vertices":[{"id":0,"kind":"physical","ports":[1,2]}, ...],
//!  "edges":[[0,1], ...],
//!  "meta":{"generator":"lattice","params":{...}}}
//! ```
//!
//! Each edge is written `[from, to]`; the orientation fixes encoded signs.
//! `ports` lists neighbor ids in port order. A vertex with parallel edges also
//! carries `port_edges`, the matching indices into `edges`.

use serde::{Deserialize, Serialize};

use super::{GraphBuilder, GraphMeta, SystemGraph, VertexKind};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct VertexRecord {
    id: usize,
    kind: VertexKind,
    ports: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    port_edges: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct GraphFile {
    vertices: Vec<VertexRecord>,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    meta: GraphMeta,
}

impl SystemGraph {
    fn to_file(&self) -> GraphFile {
        let vertices = (0..self.n_vertices())
            .map(|v| {
                let nbrs = self.port_neighbors(v);
                let mut sorted = nbrs.clone();
                sorted.sort_unstable();
                let has_parallel = sorted.windows(2).any(|w| w[0] == w[1]);
                VertexRecord {
                    id: v,
                    kind: self.kind(v),
                    ports: nbrs,
                    port_edges: has_parallel.then(|| self.ports(v).to_vec()),
                }
            })
            .collect();
        GraphFile {
            vertices,
            edges: self.edges().iter().map(|&(a, b)| [a, b]).collect(),
            meta: self.meta().clone(),
        }
    }

    /// Compact canonical JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("graph serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<SystemGraph> {
        let file: GraphFile = serde_json::from_str(text)?;
        let n = file.vertices.len();
        let mut kinds = vec![None; n];
        for rec in &file.vertices {
            if rec.id >= n || kinds[rec.id].is_some() {
                return Err(Error::Parse(format!("vertex ids must be 0..{n} without repeats")));
            }
            kinds[rec.id] = Some(rec.kind);
        }
        let mut b = GraphBuilder::new();
        for k in kinds {
            b.add_vertex(k.expect("every id seen"));
        }
        for &[a, c] in &file.edges {
            if a >= n || c >= n {
                return Err(Error::Parse(format!("edge ({a},{c}) references a missing vertex")));
            }
            if a == c {
                return Err(Error::Parse(format!("self-loop at vertex {a}")));
            }
            b.add_directed_edge(a, c);
        }
        for rec in &file.vertices {
            let v = rec.id;
            let ports = match &rec.port_edges {
                Some(pe) => {
                    if pe.len() != rec.ports.len() {
                        return Err(Error::Parse(format!("vertex {v}: ports and port_edges differ in length")));
                    }
                    for (&e, &w) in pe.iter().zip(&rec.ports) {
                        let ok = file.edges.get(e).is_some_and(|&[a, c]| (a == v && c == w) || (a == w && c == v));
                        if !ok {
                            return Err(Error::Parse(format!("vertex {v}: edge {e} does not join it to {w}")));
                        }
                    }
                    pe.clone()
                }
                None => {
                    let mut out = Vec::with_capacity(rec.ports.len());
                    for &w in &rec.ports {
                        let mut matching = file
                            .edges
                            .iter()
                            .enumerate()
                            .filter(|(_, &[a, c])| (a == v && c == w) || (a == w && c == v));
                        let e = match (matching.next(), matching.next()) {
                            (Some((e, _)), None) => e,
                            (None, _) => {
                                return Err(Error::Parse(format!("vertex {v}: no edge to port neighbor {w}")))
                            }
                            (Some(_), Some(_)) => {
                                return Err(Error::Parse(format!(
                                    "vertex {v}: parallel edges to {w} need port_edges"
                                )))
                            }
                        };
                        out.push(e);
                    }
                    out
                }
            };
            b.set_ports(v, ports);
        }
        b.build(file.meta).map_err(|e| match e {
            Error::Graph(m) => Error::Parse(m),
            other => other,
        })
    }
}
