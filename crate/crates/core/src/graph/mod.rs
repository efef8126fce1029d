//! System and interaction graphs.
//!
//! A [`SystemGraph`] is a multigraph whose vertices carry an ordered list of
//! ports, one per incident edge. The port order decides which local Majorana
//! each edge uses, so it is part of the graph rather than derived from it.
//! Vertex ids are contiguous `0..n`.

mod generators;
mod io;

pub use generators::{
    MERA_WIRING_VERSION,
    gen_blocked_square, gen_heavy_hex, gen_lattice, gen_syk_geometry, heavy_hex_device, Boundary,
    GeometryParams, HeavyHexLayout, LatticeKind, SykGeometry,
};

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexKind {
    Physical,
    Virtual,
}

/// Provenance recorded in graph files.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct GraphMeta {
    pub generator: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
}

impl GraphMeta {
    pub fn new(generator: &str) -> Self {
        GraphMeta {
            generator: generator.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq)]
struct VertexData {
    kind: VertexKind,
    /// Incident edge ids in port order.
    ports: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SystemGraph {
    vertices: Vec<VertexData>,
    /// Oriented endpoints `(from, to)`, sorted by unordered pair; parallel
    /// edges are allowed. The orientation fixes the sign of encoded edge
    /// operators and is `from < to` except where a generator says otherwise.
    edges: Vec<(usize, usize)>,
    meta: GraphMeta,
}

/// Incremental constructor. Port order is the order edges are added at each
/// vertex unless overridden with [`GraphBuilder::set_ports`].
#[derive(Clone, Debug, Default)]
pub struct GraphBuilder {
    kinds: Vec<VertexKind>,
    ports: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> usize {
        self.kinds.push(kind);
        self.ports.push(Vec::new());
        self.kinds.len() - 1
    }

    pub fn add_vertices(&mut self, n: usize, kind: VertexKind) -> std::ops::Range<usize> {
        let start = self.kinds.len();
        for _ in 0..n {
            self.add_vertex(kind);
        }
        start..self.kinds.len()
    }

    /// Adds an edge oriented from the lower id and appends it to both
    /// endpoints' port lists. Returns the builder-local edge id.
    pub fn add_edge(&mut self, a: usize, b: usize) -> usize {
        self.add_directed_edge(a.min(b), a.max(b))
    }

    /// Like [`add_edge`](Self::add_edge) but keeps the orientation `a -> b`.
    pub fn add_directed_edge(&mut self, a: usize, b: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((a, b));
        self.ports[a].push(id);
        self.ports[b].push(id);
        id
    }

    /// Replaces the port order of `v` with builder-local edge ids.
    pub fn set_ports(&mut self, v: usize, ports: Vec<usize>) {
        self.ports[v] = ports;
    }

    pub fn n_vertices(&self) -> usize {
        self.kinds.len()
    }

    pub fn build(self, meta: GraphMeta) -> Result<SystemGraph> {
        let n = self.kinds.len();
        for &(a, b) in &self.edges {
            if a >= n || b >= n {
                return Err(Error::Graph(format!("edge ({a},{b}) references a missing vertex")));
            }
            if a == b {
                return Err(Error::Graph(format!("self-loop at vertex {a}")));
            }
        }
        // Each vertex's ports must be a permutation of its incident edges.
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            incident[a].push(e);
            incident[b].push(e);
        }
        for v in 0..n {
            let mut p = self.ports[v].clone();
            p.sort_unstable();
            if p != incident[v] {
                return Err(Error::Graph(format!(
                    "ports of vertex {v} are not a permutation of its incident edges"
                )));
            }
        }
        // Canonical edge order: by endpoints, parallel edges by their position
        // in the lower endpoint's port list.
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by_key(|&e| {
            let (a, b) = self.edges[e];
            let (lo, hi) = (a.min(b), a.max(b));
            let pos = self.ports[lo].iter().position(|&x| x == e).unwrap_or(0);
            (lo, hi, pos)
        });
        let mut remap = vec![0usize; self.edges.len()];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }
        let edges = order.iter().map(|&e| self.edges[e]).collect();
        let vertices = self
            .kinds
            .into_iter()
            .zip(self.ports)
            .map(|(kind, ports)| VertexData {
                kind,
                ports: ports.into_iter().map(|e| remap[e]).collect(),
            })
            .collect();
        Ok(SystemGraph {
            vertices,
            edges,
            meta,
        })
    }
}

impl SystemGraph {
    /// Graph with ascending-neighbor port order (ties between parallel edges by edge order).
    pub fn from_edges(kinds: Vec<VertexKind>, edges: &[(usize, usize)], meta: GraphMeta) -> Result<Self> {
        let mut b = GraphBuilder::new();
        for k in kinds {
            b.add_vertex(k);
        }
        let mut sorted: Vec<(usize, usize)> = edges.iter().map(|&(a, c)| (a.min(c), a.max(c))).collect();
        sorted.sort_unstable();
        for &(a, c) in &sorted {
            if a >= b.n_vertices() || c >= b.n_vertices() {
                return Err(Error::Graph(format!("edge ({a},{c}) references a missing vertex")));
            }
            b.add_edge(a, c);
        }
        for v in 0..b.n_vertices() {
            let mut p = b.ports[v].clone();
            p.sort_by_key(|&e| {
                let (x, y) = b.edges[e];
                (if x == v { y } else { x }, e)
            });
            b.set_ports(v, p);
        }
        b.build(meta)
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn meta(&self) -> &GraphMeta {
        &self.meta
    }

    pub fn set_meta(&mut self, meta: GraphMeta) {
        self.meta = meta;
    }

    pub fn kind(&self, v: usize) -> VertexKind {
        self.vertices[v].kind
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].ports.len()
    }

    /// Qubits allocated to `v`: half its degree, rounded up.
    pub fn vertex_qubits(&self, v: usize) -> usize {
        self.degree(v).div_ceil(2)
    }

    /// Incident edge ids in port order.
    pub fn ports(&self, v: usize) -> &[usize] {
        &self.vertices[v].ports
    }

    /// Neighbor ids in port order (repeated for parallel edges).
    pub fn port_neighbors(&self, v: usize) -> Vec<usize> {
        self.ports(v).iter().map(|&e| self.other_end(e, v)).collect()
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// Port index of edge `e` at vertex `v`.
    pub fn port_of(&self, v: usize, e: usize) -> Option<usize> {
        self.vertices[v].ports.iter().position(|&x| x == e)
    }

    pub fn edges_between(&self, a: usize, b: usize) -> Vec<usize> {
        self.vertices[a]
            .ports
            .iter()
            .copied()
            .filter(|&e| self.other_end(e, a) == b)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Lowest-id edge joining `a` and `b`.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edges_between(a, b).into_iter().next()
    }

    pub fn physical_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices())
            .filter(|&v| self.kind(v) == VertexKind::Physical)
            .collect()
    }

    pub fn virtual_vertices(&self) -> Vec<usize> {
        (0..self.n_vertices())
            .filter(|&v| self.kind(v) == VertexKind::Virtual)
            .collect()
    }

    /// Component label per vertex, labels in order of lowest member.
    pub fn components(&self) -> Vec<usize> {
        let n = self.n_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &e in self.ports(u) {
                    let w = self.other_end(e, u);
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn n_components(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n_components() <= 1
    }
}

/// Qubit allocation summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QubitReport {
    pub total: usize,
    /// Vertices of degree zero; they receive no qubits and cannot be encoded.
    pub isolated: Vec<usize>,
}

/// Total qubits: the sum over vertices of half the degree, rounded up.
pub fn qubit_count(g: &SystemGraph) -> usize {
    (0..g.n_vertices()).map(|v| g.vertex_qubits(v)).sum()
}

pub fn qubit_report(g: &SystemGraph) -> QubitReport {
    QubitReport {
        total: qubit_count(g),
        isolated: (0..g.n_vertices()).filter(|&v| g.degree(v) == 0).collect(),
    }
}

/// Qubit count without rounding odd degrees up, i.e. `Σ d(v)/2 = |E|`. This is
/// the nominal count quoted for even-degree graphs; odd-degree vertices really
/// need the extra half qubit that [`qubit_count`] allocates.
pub fn half_degree_count(g: &SystemGraph) -> usize {
    g.n_edges()
}

/// A closed walk given by its vertices and the edge leaving each one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    /// `vertices[i]` to `vertices[(i+1) % len]` is traversed along `edges[i]`.
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that the walk is closed and follows real edges.
    pub fn validate(&self, g: &SystemGraph) -> Result<()> {
        if self.vertices.len() != self.edges.len() || self.edges.is_empty() {
            return Err(Error::Graph("walk is empty or malformed".into()));
        }
        let m = self.edges.len();
        for i in 0..m {
            let (u, w) = (self.vertices[i], self.vertices[(i + 1) % m]);
            let e = self.edges[i];
            if e >= g.n_edges() {
                return Err(Error::Graph(format!("edge {e} does not exist")));
            }
            let (a, b) = g.edge(e);
            if !((a == u && b == w) || (a == w && b == u)) {
                return Err(Error::Graph(format!("walk is not closed along edge {e}")));
            }
        }
        Ok(())
    }

    /// Set of edges used an odd number of times, as a GF(2) cycle-space vector.
    pub fn edge_parity(&self, n_edges: usize) -> Vec<bool> {
        let mut v = vec![false; n_edges];
        for &e in &self.edges {
            v[e] ^= true;
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    pub cycles: Vec<Cycle>,
    pub spanning_tree: Vec<usize>,
}

/// Fundamental cycle basis of a connected graph.
pub fn cycle_basis(g: &SystemGraph) -> Result<CycleBasis> {
    if !g.is_connected() {
        return Err(Error::Graph("cycle basis requested for a disconnected graph".into()));
    }
    Ok(cycle_basis_forest(g))
}

/// Fundamental cycle basis of each component: BFS spanning forest from the
/// lowest vertex id, exploring edges in ascending id; one cycle per non-tree
/// edge, in ascending non-tree edge id.
pub fn cycle_basis_forest(g: &SystemGraph) -> CycleBasis {
    let n = g.n_vertices();
    let mut parent_edge: Vec<Option<usize>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut in_tree = vec![false; g.n_edges()];
    for s in 0..n {
        if depth[s] != usize::MAX {
            continue;
        }
        depth[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut inc: Vec<usize> = g.ports(u).to_vec();
            inc.sort_unstable();
            for e in inc {
                let w = g.other_end(e, u);
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent_edge[w] = Some(e);
                    in_tree[e] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let parent = |v: usize| parent_edge[v].map(|e| (g.other_end(e, v), e));
    let mut cycles = Vec::new();
    for e in 0..g.n_edges() {
        if in_tree[e] {
            continue;
        }
        let (a, b) = g.edge(e);
        // tree path a -> lca and b -> lca
        let (mut x, mut y) = (a, b);
        let mut up_a = vec![];
        let mut up_b = vec![];
        while depth[x] > depth[y] {
            let (p, pe) = parent(x).expect("non-root has a parent");
            up_a.push((x, pe));
            x = p;
        }
        while depth[y] > depth[x] {
            let (p, pe) = parent(y).expect("non-root has a parent");
            up_b.push((y, pe));
            y = p;
        }
        while x != y {
            let (px, pex) = parent(x).expect("non-root has a parent");
            let (py, pey) = parent(y).expect("non-root has a parent");
            up_a.push((x, pex));
            up_b.push((y, pey));
            x = px;
            y = py;
        }
        let lca = x;
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for &(v, pe) in &up_a {
            vertices.push(v);
            edges.push(pe);
        }
        vertices.push(lca);
        // descend from lca to b
        for &(v, pe) in up_b.iter().rev() {
            edges.push(pe);
            vertices.push(v);
        }
        // `vertices` ends at b; the closing edge returns to a.
        edges.push(e);
        debug_assert_eq!(vertices.len(), edges.len());
        cycles.push(Cycle { vertices, edges });
    }
    CycleBasis {
        cycles,
        spanning_tree: (0..g.n_edges()).filter(|&e| in_tree[e]).collect(),
    }
}

/// Minimum-length cycle basis (Horton's candidate set): for every vertex `v`
/// and edge `(x, y)`, the cycle `v ⇝ x – y ⇝ v` through the BFS tree of `v`,
/// kept greedily by length while it is independent over GF(2). On lattices
/// this yields the elementary plaquettes.
pub fn short_cycle_basis(g: &SystemGraph) -> Vec<Cycle> {
    let n = g.n_vertices();
    let target = g.n_edges() + g.n_components() - n;
    let mut candidates: Vec<(usize, usize, usize, Cycle)> = Vec::new();
    for v in 0..n {
        let mut parent_edge: Vec<Option<usize>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            let mut inc = g.ports(u).to_vec();
            inc.sort_unstable();
            for e in inc {
                let w = g.other_end(e, u);
                if !seen[w] {
                    seen[w] = true;
                    parent_edge[w] = Some(e);
                    queue.push_back(w);
                }
            }
        }
        // path from v to x as (vertices, edges)
        let path_to = |x: usize| {
            let mut vs = vec![x];
            let mut es = vec![];
            let mut cur = x;
            while let Some(e) = parent_edge[cur] {
                es.push(e);
                cur = g.other_end(e, cur);
                vs.push(cur);
            }
            vs.reverse();
            es.reverse();
            (vs, es)
        };
        for e in 0..g.n_edges() {
            let (x, y) = g.edge(e);
            if !seen[x] || parent_edge[x] == Some(e) || parent_edge[y] == Some(e) {
                continue;
            }
            let (vx, ex) = path_to(x);
            let (vy, ey) = path_to(y);
            let sx: BTreeSet<usize> = vx.iter().copied().collect();
            if vy.iter().skip(1).any(|w| sx.contains(w)) {
                continue;
            }
            let mut vertices = vx;
            let mut edges = ex;
            edges.push(e);
            for i in (1..vy.len()).rev() {
                vertices.push(vy[i]);
                edges.push(ey[i - 1]);
            }
            candidates.push((edges.len(), v, e, Cycle { vertices, edges }));
        }
    }
    candidates.sort_by_key(|c| (c.0, c.1, c.2));
    let words = g.n_edges().div_ceil(64).max(1);
    let mut span = crate::pauli::Gf2Span::new();
    let mut out = Vec::with_capacity(target);
    for (_, _, _, c) in candidates {
        if out.len() == target {
            break;
        }
        let mut vec = vec![0u64; words];
        for &e in &c.edges {
            vec[e / 64] ^= 1 << (e % 64);
        }
        if span.insert(&vec) {
            out.push(c);
        }
    }
    out
}

/// Minimum-cost paths from `source` to every vertex. The cost of a path is the
/// sum of `cost` over every vertex entered after the source (each clamped to at
/// least 1); ties are broken by the lexicographically smallest vertex sequence.
pub fn shortest_paths_from(
    g: &SystemGraph,
    source: usize,
    cost: &dyn Fn(usize) -> u64,
) -> Vec<Option<Vec<usize>>> {
    let n = g.n_vertices();
    let mut dist = vec![u64::MAX; n];
    let mut path: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut done = vec![false; n];
    dist[source] = 0;
    path[source] = Some(vec![source]);
    let mut heap = BinaryHeap::from([Reverse((0u64, source))]);
    while let Some(Reverse((d, u))) = heap.pop() {
        if done[u] || d != dist[u] {
            continue;
        }
        done[u] = true;
        let pu = path[u].clone().expect("reached vertex has a path");
        let mut nbrs: Vec<usize> = g.port_neighbors(u);
        nbrs.sort_unstable();
        nbrs.dedup();
        for w in nbrs {
            if done[w] {
                continue;
            }
            let cand = d + cost(w).max(1);
            let mut cand_path = pu.clone();
            cand_path.push(w);
            let better = match cand.cmp(&dist[w]) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Equal => path[w].as_ref().is_none_or(|p| cand_path < *p),
                std::cmp::Ordering::Greater => false,
            };
            if better {
                dist[w] = cand;
                path[w] = Some(cand_path);
                heap.push(Reverse((cand, w)));
            }
        }
    }
    path
}

/// Minimum-cost path from `j` to `k` (see [`shortest_paths_from`]).
pub fn shortest_path(g: &SystemGraph, j: usize, k: usize, cost: &dyn Fn(usize) -> u64) -> Result<Vec<usize>> {
    if j >= g.n_vertices() || k >= g.n_vertices() {
        return Err(Error::Route(format!("vertex {j} or {k} does not exist")));
    }
    shortest_paths_from(g, j, cost)
        .swap_remove(k)
        .ok_or_else(|| Error::Route(format!("no path between {j} and {k}")))
}

/// Graph of required couplings, one vertex per mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InteractionGraph {
    pub n_vertices: usize,
    pub edges: BTreeSet<(usize, usize)>,
}

impl InteractionGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Encodes the interaction graph directly, all vertices physical.
    pub fn to_system_graph(&self) -> Result<SystemGraph> {
        let edges: Vec<_> = self.edges.iter().copied().collect();
        SystemGraph::from_edges(
            vec![VertexKind::Physical; self.n_vertices],
            &edges,
            GraphMeta::new("interaction"),
        )
    }
}
