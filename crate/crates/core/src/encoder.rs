//! Encoded edge, vertex and loop operators over a system graph.
//!
//! Vertex `v` owns the contiguous qubit range `offset(v)..offset(v)+⌈d(v)/2⌉`.
//! The edge `e` oriented `a -> b`, entering `a` at port `p` and `b` at port `q`,
//! is encoded as `Ã_ab = c_a^p c_b^q` and `Ã_ba = -Ã_ab`. Edges are oriented
//! from the lower id except for lattice wrap-around edges, which follow the
//! lattice direction. The vertex operator is
//! `B̃_v = i^n c_v^1 ⋯ c_v^{2n}`. Physical mode `m` lives on the `m`-th
//! physical vertex.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::basis::{basis_verify, BasisChoice, MajoranaBasis};
use crate::error::{Error, Result};
use crate::graph::{cycle_basis_forest, short_cycle_basis, shortest_paths_from, Cycle, SystemGraph, VertexKind};
use crate::pauli::{Gf2Span, PauliString};

/// A walk through the system graph, one edge between consecutive vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Route {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Route {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Route along a vertex sequence, using the lowest-id edge between
    /// consecutive vertices.
    pub fn from_vertices(g: &SystemGraph, vertices: &[usize]) -> Result<Route> {
        if vertices.len() < 2 {
            return Err(Error::Route("a route needs at least two vertices".into()));
        }
        let mut edges = Vec::with_capacity(vertices.len() - 1);
        for w in vertices.windows(2) {
            if w[0] >= g.n_vertices() || w[1] >= g.n_vertices() {
                return Err(Error::Route(format!("vertex {} or {} does not exist", w[0], w[1])));
            }
            let e = g
                .edge_between(w[0], w[1])
                .ok_or_else(|| Error::Route(format!("no edge between {} and {}", w[0], w[1])))?;
            edges.push(e);
        }
        Ok(Route {
            vertices: vertices.to_vec(),
            edges,
        })
    }

    pub fn start(&self) -> usize {
        self.vertices[0]
    }

    pub fn end(&self) -> usize {
        *self.vertices.last().expect("route is non-empty")
    }
}

/// Whether an operator lies in the stabilizer group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    InGroup,
    /// `-p` is in the group: `p` acts as `-1` on the codespace.
    NegatedInGroup,
    NotInGroup,
}

#[derive(Clone, Debug)]
pub struct Encoding {
    graph: SystemGraph,
    offsets: Vec<usize>,
    n_qubits: usize,
    bases: Vec<MajoranaBasis>,
    majoranas: Vec<Vec<PauliString>>,
    edge_ops: Vec<PauliString>,
    vertex_ops: Vec<PauliString>,
    cycles: Vec<Cycle>,
    stabilizers: Vec<PauliString>,
    modes: Vec<usize>,
    route_cost: Vec<u64>,
    short_stabilizers: OnceLock<Vec<PauliString>>,
}

impl PartialEq for Encoding {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
            && self.bases == other.bases
            && self.edge_ops == other.edge_ops
            && self.vertex_ops == other.vertex_ops
            && self.stabilizers == other.stabilizers
    }
}

/// Assembles the encoding of `g` with the given per-vertex bases.
pub fn build_encoding(g: &SystemGraph, choice: &BasisChoice) -> Result<Encoding> {
    let n = g.n_vertices();
    let mut offsets = Vec::with_capacity(n);
    let mut bases = Vec::with_capacity(n);
    let mut total = 0;
    for v in 0..n {
        if g.degree(v) == 0 {
            return Err(Error::Graph(format!("vertex {v} has degree 0 and cannot be encoded")));
        }
        let b = choice.resolve(v, g.degree(v))?;
        let report = basis_verify(&b);
        if !report.is_valid() {
            return Err(Error::Basis(format!("vertex {v}: {report}")));
        }
        offsets.push(total);
        total += b.n_qubits;
        bases.push(b);
    }
    let majoranas: Vec<Vec<PauliString>> = (0..n)
        .map(|v| bases[v].ops.iter().map(|op| op.embed(total, offsets[v])).collect())
        .collect();
    let edge_ops = (0..g.n_edges())
        .map(|e| {
            let (a, b) = g.edge(e);
            let p = g.port_of(a, e).expect("edge is incident");
            let q = g.port_of(b, e).expect("edge is incident");
            &majoranas[a][p] * &majoranas[b][q]
        })
        .collect();
    let vertex_ops = (0..n)
        .map(|v| bases[v].parity_operator().embed(total, offsets[v]))
        .collect();
    let route_cost = (0..n)
        .map(|v| {
            let ops = &bases[v].ops;
            let mut worst = 1;
            for i in 0..ops.len() {
                for j in i + 1..ops.len() {
                    worst = worst.max((&ops[i] * &ops[j]).weight() as u64);
                }
            }
            worst
        })
        .collect();
    let mut enc = Encoding {
        graph: g.clone(),
        offsets,
        n_qubits: total,
        bases,
        majoranas,
        edge_ops,
        vertex_ops,
        cycles: Vec::new(),
        stabilizers: Vec::new(),
        modes: g.physical_vertices(),
        route_cost,
        short_stabilizers: OnceLock::new(),
    };
    let cycles = cycle_basis_forest(g).cycles;
    enc.stabilizers = cycles
        .iter()
        .map(|c| enc.loop_stabilizer(c))
        .collect::<Result<Vec<_>>>()?;
    enc.cycles = cycles;
    Ok(enc)
}

impl Encoding {
    pub fn graph(&self) -> &SystemGraph {
        &self.graph
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Qubit range of vertex `v`.
    pub fn layout(&self, v: usize) -> std::ops::Range<usize> {
        self.offsets[v]..self.offsets[v] + self.bases[v].n_qubits
    }

    pub fn basis(&self, v: usize) -> &MajoranaBasis {
        &self.bases[v]
    }

    /// Local Majorana `p` of vertex `v`, embedded in the full register.
    pub fn majorana(&self, v: usize, p: usize) -> &PauliString {
        &self.majoranas[v][p]
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    /// Vertex carrying physical mode `m`.
    pub fn mode_vertex(&self, m: usize) -> Result<usize> {
        self.modes
            .get(m)
            .copied()
            .ok_or_else(|| Error::Dimension(m + 1, self.modes.len()))
    }

    pub fn cycles(&self) -> &[Cycle] {
        &self.cycles
    }

    pub fn stabilizers(&self) -> &[PauliString] {
        &self.stabilizers
    }

    /// Vertex operators of virtual vertices; the codespace fixes them to `+1`.
    pub fn virtual_constraints(&self) -> Vec<PauliString> {
        self.graph
            .virtual_vertices()
            .into_iter()
            .map(|v| self.vertex_ops[v].clone())
            .collect()
    }

    /// Encoded edge operator of edge id `e` along its stored orientation.
    pub fn edge_op(&self, e: usize) -> &PauliString {
        &self.edge_ops[e]
    }

    /// Edge operator of `e` oriented away from `from`.
    pub fn directed_edge_op(&self, e: usize, from: usize) -> PauliString {
        let (a, _) = self.graph.edge(e);
        if from == a {
            self.edge_ops[e].clone()
        } else {
            self.edge_ops[e].negate()
        }
    }

    /// `Ã_jk` for adjacent `j`, `k`; `Ã_kj = -Ã_jk`. Parallel edges resolve to the lowest id.
    pub fn edge_operator(&self, j: usize, k: usize) -> Result<PauliString> {
        if j >= self.graph.n_vertices() || k >= self.graph.n_vertices() {
            return Err(Error::Route(format!("vertex {j} or {k} does not exist")));
        }
        let e = self
            .graph
            .edge_between(j, k)
            .ok_or_else(|| Error::Route(format!("({j},{k}) is not an edge; route it with a path operator")))?;
        Ok(self.directed_edge_op(e, j))
    }

    pub fn vertex_operator(&self, j: usize) -> Result<PauliString> {
        self.vertex_ops
            .get(j)
            .cloned()
            .ok_or_else(|| Error::Graph(format!("vertex {j} does not exist")))
    }

    /// The extra local Majorana of an odd-degree vertex.
    pub fn unpaired_majorana(&self, j: usize) -> Result<PauliString> {
        if j >= self.graph.n_vertices() {
            return Err(Error::Graph(format!("vertex {j} does not exist")));
        }
        let d = self.graph.degree(j);
        if d.is_multiple_of(2) {
            return Err(Error::Parity(format!("vertex {j} has even degree {d}")));
        }
        Ok(self.majoranas[j][d].clone())
    }

    /// Routing cost of entering `v`: the heaviest local Majorana pair there.
    pub fn route_cost(&self, v: usize) -> u64 {
        self.route_cost[v]
    }

    /// Cheapest route between `j` and `k` under [`Encoding::route_cost`].
    pub fn route(&self, j: usize, k: usize) -> Result<Route> {
        if j >= self.graph.n_vertices() || k >= self.graph.n_vertices() {
            return Err(Error::Route(format!("vertex {j} or {k} does not exist")));
        }
        if j == k {
            return Err(Error::Route(format!("cannot route vertex {j} to itself")));
        }
        let cost = |v: usize| self.route_cost[v];
        let path = shortest_paths_from(&self.graph, j, &cost)
            .swap_remove(k)
            .ok_or_else(|| Error::Route(format!("no path between {j} and {k}")))?;
        Route::from_vertices(&self.graph, &path)
    }

    /// Routes from `j` to every reachable vertex in one pass.
    pub fn routes_from(&self, j: usize) -> Vec<Option<Route>> {
        let cost = |v: usize| self.route_cost[v];
        shortest_paths_from(&self.graph, j, &cost)
            .into_iter()
            .map(|p| p.filter(|p| p.len() > 1).map(|p| Route::from_vertices(&self.graph, &p).expect("path follows edges")))
            .collect()
    }

    fn check_route(&self, r: &Route) -> Result<()> {
        if r.vertices.len() != r.edges.len() + 1 || r.edges.is_empty() {
            return Err(Error::Route("malformed route".into()));
        }
        for (i, &e) in r.edges.iter().enumerate() {
            if e >= self.graph.n_edges() {
                return Err(Error::Route(format!("edge {e} does not exist")));
            }
            let (a, b) = self.graph.edge(e);
            let (u, w) = (r.vertices[i], r.vertices[i + 1]);
            if !((a == u && b == w) || (a == w && b == u)) {
                return Err(Error::Route(format!("edge {e} does not join {u} and {w}")));
            }
        }
        Ok(())
    }

    /// Product of the directed edge operators along `r`, without phase correction.
    pub fn path_operator_raw(&self, r: &Route) -> Result<PauliString> {
        self.check_route(r)?;
        let mut p = PauliString::identity(self.n_qubits);
        for (i, &e) in r.edges.iter().enumerate() {
            p = &p * &self.directed_edge_op(e, r.vertices[i]);
        }
        Ok(p)
    }

    /// Hermitian operator `i^{n-1} ∏ Ã` along an `n`-edge route.
    pub fn path_operator(&self, r: &Route) -> Result<PauliString> {
        let raw = self.path_operator_raw(r)?;
        Ok(raw.times_i(((r.len() - 1) % 4) as u8))
    }

    /// Encoded `A_jk` for any connected pair: along `route` if given, else the
    /// default route.
    pub fn path_edge_operator(&self, j: usize, k: usize, route: Option<&Route>) -> Result<PauliString> {
        let owned;
        let r = match route {
            Some(r) => {
                if r.start() != j || r.end() != k {
                    return Err(Error::Route(format!("route does not join {j} to {k}")));
                }
                r
            }
            None => {
                owned = self.route(j, k)?;
                &owned
            }
        };
        self.path_operator(r)
    }

    /// `i^m ∏ Ã` around an `m`-edge closed walk.
    pub fn loop_stabilizer(&self, c: &Cycle) -> Result<PauliString> {
        c.validate(&self.graph).map_err(|e| match e {
            Error::Graph(m) => Error::Route(m),
            other => other,
        })?;
        let m = c.len();
        let mut p = PauliString::identity(self.n_qubits);
        for i in 0..m {
            p = &p * &self.directed_edge_op(c.edges[i], c.vertices[i]);
        }
        Ok(p.times_i((m % 4) as u8))
    }

    fn short_generators(&self) -> &[PauliString] {
        self.short_stabilizers.get_or_init(|| {
            short_cycle_basis(&self.graph)
                .iter()
                .map(|c| self.loop_stabilizer(c).expect("basis cycles are closed"))
                .collect()
        })
    }

    /// Greedily multiplies `p` by stabilizers while the weight drops (ties
    /// broken by the symplectic bits). Moves are drawn from the stabilizer
    /// generators and from a basis of shortest cycles.
    pub fn reduce_mod_stabilizers(&self, p: &PauliString) -> PauliString {
        let key = |s: &PauliString| (s.weight(), s.x_words().to_vec(), s.z_words().to_vec());
        let mut cur = p.clone();
        let mut cur_key = key(&cur);
        loop {
            let mut best: Option<(PauliString, _)> = None;
            for s in self.stabilizers.iter().chain(self.short_generators()) {
                let cand = &cur * s;
                let k = key(&cand);
                let improves = match &best {
                    Some((_, bk)) => k < *bk,
                    None => k < cur_key,
                };
                if improves {
                    best = Some((cand, k));
                }
            }
            match best {
                Some((b, k)) => {
                    cur = b;
                    cur_key = k;
                }
                None => return cur,
            }
        }
    }

    /// Decides whether `p` (or `-p`) is a product of stabilizer generators.
    pub fn stabilizer_membership(&self, p: &PauliString) -> Membership {
        let mut span = Gf2Span::new();
        for s in &self.stabilizers {
            span.insert(&s.symplectic());
        }
        let Some(idx) = span.solve(&p.symplectic()) else {
            return Membership::NotInGroup;
        };
        let mut prod = PauliString::identity(self.n_qubits);
        for i in idx {
            prod = &prod * &self.stabilizers[i];
        }
        match (prod.phase_exp() + 4 - p.phase_exp()) % 4 {
            0 => Membership::InGroup,
            2 => Membership::NegatedInGroup,
            _ => Membership::NotInGroup,
        }
    }

    /// Checks Hermiticity, involution, antisymmetry and the commutation rules
    /// of all encoded operators.
    pub fn check_algebra(&self) -> AlgebraReport {
        let mut r = AlgebraReport::default();
        let g = &self.graph;
        let all = self
            .edge_ops
            .iter()
            .map(|p| ("edge", p))
            .chain(self.vertex_ops.iter().map(|p| ("vertex", p)))
            .chain(self.stabilizers.iter().map(|p| ("stabilizer", p)));
        for (i, (kind, p)) in all.enumerate() {
            r.checked += 1;
            if !p.is_hermitian() {
                r.violations.push(format!("{kind} operator #{i} is not Hermitian"));
            }
            if !p.squares_to_identity() {
                r.violations.push(format!("{kind} operator #{i} does not square to +I"));
            }
        }
        for e in 0..g.n_edges() {
            let (a, b) = g.edge(e);
            let fwd = self.directed_edge_op(e, a);
            let back = self.directed_edge_op(e, b);
            r.checked += 1;
            if back != fwd.negate() {
                r.violations.push(format!("edge {e} is not antisymmetric"));
            }
        }
        for e in 0..g.n_edges() {
            let (a, b) = g.edge(e);
            for f in e + 1..g.n_edges() {
                let (c, d) = g.edge(f);
                let shared = [c, d].iter().filter(|&&x| x == a || x == b).count();
                let expect = shared != 1;
                r.checked += 1;
                if self.edge_ops[e].commutes_unchecked(&self.edge_ops[f]) != expect {
                    r.violations.push(format!("edges {e} and {f} break the edge-edge rule"));
                }
            }
            for v in 0..g.n_vertices() {
                let expect = v != a && v != b;
                r.checked += 1;
                if self.edge_ops[e].commutes_unchecked(&self.vertex_ops[v]) != expect {
                    r.violations.push(format!("edge {e} and vertex {v} break the edge-vertex rule"));
                }
            }
        }
        for v in 0..g.n_vertices() {
            for w in v + 1..g.n_vertices() {
                r.checked += 1;
                if !self.vertex_ops[v].commutes_unchecked(&self.vertex_ops[w]) {
                    r.violations.push(format!("vertices {v} and {w} anticommute"));
                }
            }
        }
        for (i, s) in self.stabilizers.iter().enumerate() {
            for p in self.edge_ops.iter().chain(&self.vertex_ops).chain(&self.stabilizers) {
                r.checked += 1;
                if !s.commutes_unchecked(p) {
                    r.violations.push(format!("stabilizer {i} is not central"));
                    break;
                }
            }
        }
        r
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl AlgebraReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct LayoutRecord {
    vertex: usize,
    offset: usize,
    n_qubits: usize,
    basis: String,
    ops: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct OpRecord {
    id: usize,
    vertices: Vec<usize>,
    op: String,
}

#[derive(Serialize, Deserialize)]
struct EncodingFile {
    n_qubits: usize,
    graph: serde_json::Value,
    layout: Vec<LayoutRecord>,
    edge_ops: Vec<OpRecord>,
    vertex_ops: Vec<OpRecord>,
    stabilizers: Vec<OpRecord>,
}

impl Encoding {
    /// Encoding file: graph, qubit layout with each vertex's local Majoranas,
    /// and the operator tables, every operator written as a `.pauli` term.
    pub fn to_json(&self) -> String {
        let g = &self.graph;
        let graph = serde_json::from_str(&g.to_json()).expect("graph json is valid");
        let layout = (0..g.n_vertices())
            .map(|v| LayoutRecord {
                vertex: v,
                offset: self.offsets[v],
                n_qubits: self.bases[v].n_qubits,
                basis: self.bases[v].name.clone(),
                ops: self.bases[v].ops.iter().map(|p| p.to_string()).collect(),
            })
            .collect();
        let edge_ops = (0..g.n_edges())
            .map(|e| {
                let (a, b) = g.edge(e);
                OpRecord {
                    id: e,
                    vertices: vec![a, b],
                    op: self.edge_ops[e].to_string(),
                }
            })
            .collect();
        let vertex_ops = (0..g.n_vertices())
            .map(|v| OpRecord {
                id: v,
                vertices: vec![v],
                op: self.vertex_ops[v].to_string(),
            })
            .collect();
        let stabilizers = self
            .cycles
            .iter()
            .enumerate()
            .map(|(i, c)| OpRecord {
                id: i,
                vertices: c.vertices.clone(),
                op: self.stabilizers[i].to_string(),
            })
            .collect();
        let file = EncodingFile {
            n_qubits: self.n_qubits,
            graph,
            layout,
            edge_ops,
            vertex_ops,
            stabilizers,
        };
        serde_json::to_string_pretty(&file).expect("encoding serializes") + "\n"
    }

    /// Reads an encoding file, rebuilding every table from the graph and the
    /// local bases and rejecting files whose tables disagree.
    pub fn from_json(text: &str) -> Result<Encoding> {
        let file: EncodingFile = serde_json::from_str(text)?;
        let g = SystemGraph::from_json(&file.graph.to_string())?;
        if file.layout.len() != g.n_vertices() {
            return Err(Error::Parse("layout does not cover every vertex".into()));
        }
        let mut overrides = BTreeMap::new();
        for rec in &file.layout {
            let mut b = MajoranaBasis::parse_explicit(&rec.ops, rec.n_qubits)?;
            b.name = rec.basis.clone();
            overrides.insert(rec.vertex, b);
        }
        let choice = BasisChoice {
            default: crate::basis::BasisKind::Jw,
            overrides,
        };
        let enc = build_encoding(&g, &choice)?;
        let mismatch = |what: &str| Error::Parse(format!("{what} table does not match the graph and bases"));
        if enc.n_qubits != file.n_qubits {
            return Err(mismatch("qubit"));
        }
        let same = |recs: &[OpRecord], ops: &[PauliString]| -> Result<bool> {
            if recs.len() != ops.len() {
                return Ok(false);
            }
            for (r, p) in recs.iter().zip(ops) {
                if PauliString::parse(&r.op, enc.n_qubits)? != *p {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        if !same(&file.edge_ops, &enc.edge_ops)? {
            return Err(mismatch("edge"));
        }
        if !same(&file.vertex_ops, &enc.vertex_ops)? {
            return Err(mismatch("vertex"));
        }
        if !same(&file.stabilizers, &enc.stabilizers)? {
            return Err(mismatch("stabilizer"));
        }
        Ok(enc)
    }
}

/// Chain convention `c¹ = Y, c² = X` on every physical vertex of degree at
/// most 2; everything else uses the Jordan-Wigner basis.
pub fn chain_yx_choice(g: &SystemGraph) -> Result<BasisChoice> {
    let yx = MajoranaBasis::parse_explicit(&["Y1".to_string(), "X1".to_string()], 1)?;
    let mut choice = BasisChoice::uniform(crate::basis::BasisKind::Jw);
    for v in 0..g.n_vertices() {
        if g.degree(v) <= 2 && g.kind(v) == VertexKind::Physical {
            choice.overrides.insert(v, yx.clone());
        }
    }
    Ok(choice)
}
