//! Geometry generators. Physical vertices always take ids `0..n_modes`, in the
//! order fermionic modes are assigned to them; virtual vertices follow.

use super::{GraphBuilder, GraphMeta, SystemGraph, VertexKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    Linear,
    Square,
    Triangular,
    /// Square lattice with both diagonals of every square (king's graph).
    SquareDiagonal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Boundary {
    Open,
    Periodic,
}

impl Boundary {
    fn name(self) -> &'static str {
        match self {
            Boundary::Open => "open",
            Boundary::Periodic => "periodic",
        }
    }
}

type Dir = (isize, isize);

impl LatticeKind {
    pub fn name(self) -> &'static str {
        match self {
            LatticeKind::Linear => "linear",
            LatticeKind::Square => "square",
            LatticeKind::Triangular => "triangular",
            LatticeKind::SquareDiagonal => "square-diagonal",
        }
    }

    /// Neighbor directions in port order, as (row, col) offsets with rows
    /// growing downward. 2D lattices run clockwise starting from the top; the
    /// chain lists its left neighbor first.
    fn port_dirs(self) -> &'static [Dir] {
        match self {
            LatticeKind::Linear => &[(0, -1), (0, 1)],
            LatticeKind::Square => &[(-1, 0), (0, 1), (1, 0), (0, -1)],
            // sheared embedding: (r-1,c) is up-right, (r+1,c+1) down-right
            LatticeKind::Triangular => &[(-1, 0), (0, 1), (1, 1), (1, 0), (0, -1), (-1, -1)],
            LatticeKind::SquareDiagonal => &[
                (-1, 0),
                (-1, 1),
                (0, 1),
                (1, 1),
                (1, 0),
                (1, -1),
                (0, -1),
                (-1, -1),
            ],
        }
    }

    /// Directions that own their edge; the rest are the reverse of one of these.
    fn forward_dirs(self) -> &'static [Dir] {
        match self {
            LatticeKind::Linear => &[(0, 1)],
            LatticeKind::Square => &[(0, 1), (1, 0)],
            LatticeKind::Triangular => &[(0, 1), (1, 0), (1, 1)],
            LatticeKind::SquareDiagonal => &[(0, 1), (1, 0), (1, 1), (1, -1)],
        }
    }
}

fn step(r: usize, c: usize, d: Dir, rows: usize, cols: usize, periodic: bool) -> Option<(usize, usize)> {
    let nr = r as isize + d.0;
    let nc = c as isize + d.1;
    if periodic {
        Some((nr.rem_euclid(rows as isize) as usize, nc.rem_euclid(cols as isize) as usize))
    } else if nr < 0 || nc < 0 || nr >= rows as isize || nc >= cols as isize {
        None
    } else {
        Some((nr as usize, nc as usize))
    }
}

/// Regular lattice with geometric port order. `dims` is `[n]` for the chain,
/// `[side]` or `[rows, cols]` otherwise. Vertex id is `row * cols + col`.
pub fn gen_lattice(kind: LatticeKind, dims: &[usize], boundary: Boundary) -> Result<SystemGraph> {
    let (rows, cols) = match (kind, dims) {
        (LatticeKind::Linear, [n]) => (1, *n),
        (LatticeKind::Linear, _) => return Err(Error::Graph("linear lattice takes one dimension".into())),
        (_, [l]) => (*l, *l),
        (_, [r, c]) => (*r, *c),
        _ => return Err(Error::Graph("2D lattice takes one or two dimensions".into())),
    };
    if rows == 0 || cols == 0 {
        return Err(Error::Graph("lattice dimensions must be positive".into()));
    }
    let periodic = boundary == Boundary::Periodic;
    if periodic {
        let too_small = match kind {
            LatticeKind::Linear => cols < 2,
            _ => rows < 2 || cols < 2,
        };
        if too_small {
            return Err(Error::Graph("periodic lattice needs at least 2 sites per direction".into()));
        }
    }
    // For the chain, only the column direction exists.
    let wrap = |r: usize, c: usize, d: Dir| {
        if kind == LatticeKind::Linear && d.0 != 0 {
            None
        } else {
            step(r, c, d, rows, cols, periodic)
        }
    };
    let mut b = GraphBuilder::new();
    b.add_vertices(rows * cols, VertexKind::Physical);
    let fwd = kind.forward_dirs();
    // forward[v][i]: edge from v along fwd[i]
    let mut forward = vec![vec![None; fwd.len()]; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            for (i, &d) in fwd.iter().enumerate() {
                if let Some((nr, nc)) = wrap(r, c, d) {
                    let w = nr * cols + nc;
                    if w == v {
                        return Err(Error::Graph("lattice too small: self-loop".into()));
                    }
                    forward[v][i] = Some(b.add_directed_edge(v, w));
                }
            }
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            let mut ports = Vec::new();
            for &d in kind.port_dirs() {
                if let Some(i) = fwd.iter().position(|&f| f == d) {
                    if let Some(e) = forward[v][i] {
                        ports.push(e);
                    }
                } else {
                    let back = (-d.0, -d.1);
                    let i = fwd.iter().position(|&f| f == back).expect("every direction has a forward twin");
                    if let Some((nr, nc)) = wrap(r, c, d) {
                        if let Some(e) = forward[nr * cols + nc][i] {
                            ports.push(e);
                        }
                    }
                }
            }
            b.set_ports(v, ports);
        }
    }
    let meta = GraphMeta::new("lattice")
        .with("kind", kind.name())
        .with("rows", rows)
        .with("cols", cols)
        .with("boundary", boundary.name());
    b.build(meta)
}

/// Geometries for all-to-all coupled modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SykGeometry {
    Complete,
    Linear,
    Star,
    TernaryTree,
    TernaryMera,
    Hyperbolic46,
}

impl SykGeometry {
    pub const ALL: [SykGeometry; 6] = [
        SykGeometry::Complete,
        SykGeometry::Linear,
        SykGeometry::Star,
        SykGeometry::TernaryTree,
        SykGeometry::TernaryMera,
        SykGeometry::Hyperbolic46,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SykGeometry::Complete => "complete",
            SykGeometry::Linear => "linear",
            SykGeometry::Star => "star",
            SykGeometry::TernaryTree => "ternary-tree",
            SykGeometry::TernaryMera => "ternary-mera",
            SykGeometry::Hyperbolic46 => "hyperbolic",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        SykGeometry::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown geometry `{s}`")))
    }
}

/// Optional knobs for hierarchical geometries.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GeometryParams {
    /// Number of rings grown around the central face of the hyperbolic disk.
    /// Defaults to the smallest count whose outer ring has at least `n_modes` vertices.
    pub layers: Option<usize>,
}

pub fn gen_syk_geometry(kind: SykGeometry, n_modes: usize, params: GeometryParams) -> Result<SystemGraph> {
    if n_modes < 2 {
        return Err(Error::Graph("geometry needs at least 2 modes".into()));
    }
    let g = match kind {
        SykGeometry::Complete => complete(n_modes),
        SykGeometry::Linear => gen_lattice(LatticeKind::Linear, &[n_modes], Boundary::Periodic),
        SykGeometry::Star => star(n_modes),
        SykGeometry::TernaryTree => ternary_tree(n_modes),
        SykGeometry::TernaryMera => ternary_mera(n_modes),
        SykGeometry::Hyperbolic46 => hyperbolic46(n_modes, params.layers),
    }?;
    let mut meta = g.meta().clone();
    meta.params.insert("geometry".into(), kind.name().into());
    meta.params.insert("n_modes".into(), n_modes.into());
    let mut g = g;
    g.set_meta(meta);
    Ok(g)
}

fn complete(n: usize) -> Result<SystemGraph> {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    SystemGraph::from_edges(vec![VertexKind::Physical; n], &edges, GraphMeta::new("complete"))
}

/// One virtual center joined to every mode; the center's ports follow leaf id.
fn star(n: usize) -> Result<SystemGraph> {
    let mut b = GraphBuilder::new();
    b.add_vertices(n, VertexKind::Physical);
    let center = b.add_vertex(VertexKind::Virtual);
    for leaf in 0..n {
        b.add_edge(leaf, center);
    }
    b.build(GraphMeta::new("star"))
}

/// Virtual ternary tree with physical leaves. The root has four children and
/// every other internal vertex three, so all internal vertices have degree 4.
/// Leaves beyond `n` are padded as virtual vertices.
fn ternary_tree(n: usize) -> Result<SystemGraph> {
    let mut height = 1;
    let mut capacity = 4;
    while capacity < n {
        capacity *= 3;
        height += 1;
    }
    let mut b = GraphBuilder::new();
    b.add_vertices(n, VertexKind::Physical);
    b.add_vertices(capacity - n, VertexKind::Virtual);
    // Build levels bottom-up: group leaves by three, then the root takes four.
    let mut level: Vec<usize> = (0..capacity).collect();
    for _ in 1..height {
        let mut next = Vec::with_capacity(level.len() / 3);
        for chunk in level.chunks(3) {
            let v = b.add_vertex(VertexKind::Virtual);
            for &child in chunk {
                b.add_edge(child, v);
            }
            next.push(v);
        }
        level = next;
    }
    debug_assert_eq!(level.len(), 4);
    let root = b.add_vertex(VertexKind::Virtual);
    for &child in &level {
        b.add_edge(child, root);
    }
    // Internal vertices list the parent first, then children left to right.
    for v in capacity..b.n_vertices() {
        let mut p = b.ports[v].clone();
        if v != root {
            let parent = p.pop().expect("internal vertex has a parent edge");
            p.insert(0, parent);
        }
        b.set_ports(v, p);
    }
    b.build(
        GraphMeta::new("ternary-tree")
            .with("height", height)
            .with("leaves", capacity)
            .with("padded_leaves", capacity - n),
    )
}

/// Version tag of the MERA wiring below; bump if it ever changes.
pub const MERA_WIRING_VERSION: u32 = 1;

/// Periodic ternary MERA. Bottom lines are the boundary vertices (physical
/// first, padded virtual after). Each layer on `m` lines places disentanglers
/// on line pairs `(3k+2, 3k+3 mod m)` and isometries on triples `(3k, 3k+1, 3k+2)`
/// after disentangling; isometry outputs are the next layer's lines. Starting
/// from `4·3^h` lines, the last four lines meet in one top vertex. Every
/// tensor vertex has degree 4.
fn ternary_mera(n: usize) -> Result<SystemGraph> {
    let mut lines_n = 4;
    let mut layers = 0;
    while lines_n < n {
        lines_n *= 3;
        layers += 1;
    }
    let mut b = GraphBuilder::new();
    b.add_vertices(n, VertexKind::Physical);
    b.add_vertices(lines_n - n, VertexKind::Virtual);
    let mut lines: Vec<usize> = (0..lines_n).collect();
    while lines.len() > 4 {
        let m = lines.len();
        let t = m / 3;
        let mut dis = Vec::with_capacity(t);
        for k in 0..t {
            let u = b.add_vertex(VertexKind::Virtual);
            b.add_edge(lines[3 * k + 2], u);
            b.add_edge(lines[(3 * k + 3) % m], u);
            dis.push(u);
        }
        let mut next = Vec::with_capacity(t);
        for k in 0..t {
            let w = b.add_vertex(VertexKind::Virtual);
            b.add_edge(dis[(k + t - 1) % t], w);
            b.add_edge(lines[3 * k + 1], w);
            b.add_edge(dis[k], w);
            next.push(w);
        }
        lines = next;
    }
    let top = b.add_vertex(VertexKind::Virtual);
    for &l in &lines {
        b.add_edge(l, top);
    }
    b.build(
        GraphMeta::new("ternary-mera")
            .with("wiring_version", MERA_WIRING_VERSION)
            .with("layers", layers)
            .with("boundary_lines", lines_n)
            .with("padded_leaves", lines_n - n),
    )
}

/// Disk of the {4,6} tiling grown ring by ring around one square face,
/// returned as (vertex count, edges, outer ring in cyclic order).
fn hyperbolic_disk(layers: usize) -> (usize, Vec<(usize, usize)>, Vec<usize>) {
    let mut edges = Vec::new();
    let mut ring: Vec<usize> = (0..4).collect();
    let mut degree = vec![2usize; 4];
    for i in 0..4 {
        edges.push((i, (i + 1) % 4));
    }
    let mut count = 4;
    for _ in 0..layers {
        let mut new_ring = Vec::new();
        let mut first_spoke = Vec::with_capacity(ring.len());
        let mut last_spoke = Vec::with_capacity(ring.len());
        for &v in &ring {
            // A boundary vertex with e edges has e-1 faces; it needs 6 of each.
            let spokes = 6 - degree[v];
            let mut prev: Option<usize> = None;
            for s in 0..spokes {
                let a = count;
                count += 1;
                degree.push(1);
                edges.push((v, a));
                degree[v] += 1;
                if let Some(p) = prev {
                    // square v, p, y, a
                    let y = count;
                    count += 1;
                    degree.push(2);
                    edges.push((p, y));
                    edges.push((y, a));
                    degree[p] += 1;
                    degree[a] += 1;
                    new_ring.push(y);
                }
                new_ring.push(a);
                if s == 0 {
                    first_spoke.push(a);
                }
                prev = Some(a);
            }
            last_spoke.push(prev.expect("every boundary vertex grows at least one spoke"));
        }
        // square v_i, v_{i+1}, first spoke of v_{i+1}, last spoke of v_i
        let m = ring.len();
        for i in 0..m {
            let a = last_spoke[i];
            let c = first_spoke[(i + 1) % m];
            edges.push((a, c));
            degree[a] += 1;
            degree[c] += 1;
        }
        ring = new_ring;
    }
    (count, edges, ring)
}

fn hyperbolic_ring_size(layers: usize) -> usize {
    hyperbolic_disk(layers).2.len()
}

/// {4,6} hyperbolic disk: square faces, degree 6 in the interior. Physical
/// modes are pendant legs spread evenly over the outermost ring.
fn hyperbolic46(n: usize, layers: Option<usize>) -> Result<SystemGraph> {
    let layers = match layers {
        Some(l) => l,
        None => (0..).find(|&l| hyperbolic_ring_size(l) >= n).expect("ring sizes grow without bound"),
    };
    let (disk_n, disk_edges, ring) = hyperbolic_disk(layers);
    let mut kinds = vec![VertexKind::Physical; n];
    kinds.extend(std::iter::repeat_n(VertexKind::Virtual, disk_n));
    let mut edges: Vec<(usize, usize)> = disk_edges.iter().map(|&(a, b)| (a + n, b + n)).collect();
    let r = ring.len();
    for leg in 0..n {
        edges.push((leg, ring[leg * r / n] + n));
    }
    SystemGraph::from_edges(
        kinds,
        &edges,
        GraphMeta::new("hyperbolic-4-6")
            .with("layers", layers)
            .with("ring", r),
    )
}

/// Square lattice partitioned into `block_rows × block_cols` blocks. The
/// top-left mode of each block stays on a coarse square lattice of block
/// heads; the rest of the block hangs off the head as a chain in snake order.
/// Vertex id is `row * side + col`.
pub fn gen_blocked_square(
    side: usize,
    block_rows: usize,
    block_cols: usize,
    boundary: Boundary,
) -> Result<SystemGraph> {
    if side == 0 || block_rows == 0 || block_cols == 0 {
        return Err(Error::Graph("block dimensions must be positive".into()));
    }
    if !side.is_multiple_of(block_rows) || !side.is_multiple_of(block_cols) {
        return Err(Error::Graph(format!(
            "blocks of {block_rows}x{block_cols} do not divide a {side}x{side} lattice"
        )));
    }
    let (br, bc) = (side / block_rows, side / block_cols);
    let periodic = boundary == Boundary::Periodic;
    if periodic && (br < 2 || bc < 2) {
        return Err(Error::Graph("periodic coarse lattice needs at least 2 blocks per direction".into()));
    }
    let id = |r: usize, c: usize| r * side + c;
    let head = |i: usize, j: usize| id(i * block_rows, j * block_cols);
    let mut b = GraphBuilder::new();
    b.add_vertices(side * side, VertexKind::Physical);
    // coarse lattice edges
    let mut right = vec![vec![None; bc]; br];
    let mut down = vec![vec![None; bc]; br];
    for i in 0..br {
        for j in 0..bc {
            if let Some((ni, nj)) = step(i, j, (0, 1), br, bc, periodic) {
                right[i][j] = Some(b.add_directed_edge(head(i, j), head(ni, nj)));
            }
            if let Some((ni, nj)) = step(i, j, (1, 0), br, bc, periodic) {
                down[i][j] = Some(b.add_directed_edge(head(i, j), head(ni, nj)));
            }
        }
    }
    // chains inside blocks
    let mut chain_first = vec![vec![None; bc]; br];
    for i in 0..br {
        for j in 0..bc {
            let mut order = Vec::new();
            for dr in 0..block_rows {
                let cols: Vec<usize> = if dr % 2 == 0 {
                    (0..block_cols).collect()
                } else {
                    (0..block_cols).rev().collect()
                };
                for dc in cols {
                    order.push(id(i * block_rows + dr, j * block_cols + dc));
                }
            }
            for w in order.windows(2) {
                let e = b.add_directed_edge(w[0], w[1]);
                if w[0] == head(i, j) {
                    chain_first[i][j] = Some(e);
                }
            }
        }
    }
    // heads: up, right, down, left, then the chain
    for i in 0..br {
        for j in 0..bc {
            let mut ports = Vec::new();
            let up = if periodic || i > 0 {
                down[(i + br - 1) % br][j]
            } else {
                None
            };
            let left = if periodic || j > 0 {
                right[i][(j + bc - 1) % bc]
            } else {
                None
            };
            ports.extend(up);
            ports.extend(right[i][j]);
            ports.extend(down[i][j]);
            ports.extend(left);
            ports.extend(chain_first[i][j]);
            b.set_ports(head(i, j), ports);
        }
    }
    b.build(
        GraphMeta::new("blocked-square")
            .with("side", side)
            .with("block_rows", block_rows)
            .with("block_cols", block_cols)
            .with("blocks", br * bc)
            .with("boundary", boundary.name()),
    )
}

/// The 65-qubit heavy-hexagon device and the grouping of qubits into modes.
#[derive(Clone, Debug, PartialEq)]
pub struct HeavyHexLayout {
    pub n_qubits: usize,
    pub device_edges: Vec<(usize, usize)>,
    /// Device qubits making up each system-graph vertex.
    pub groups: Vec<Vec<usize>>,
}

/// 65-qubit heavy-hexagon layout: five rows of 10/11/11/11/10 qubits on a
/// column grid, joined by bridge qubits at columns {0,4,8} and {2,6,10}
/// alternately. Qubits are numbered row by row, each row followed by the
/// bridges below it.
pub fn heavy_hex_device() -> (usize, Vec<(usize, usize)>, Vec<Option<(usize, usize)>>) {
    let row_cols: [std::ops::Range<usize>; 5] = [0..10, 0..11, 0..11, 0..11, 1..11];
    let bridge_cols: [[usize; 3]; 4] = [[0, 4, 8], [2, 6, 10], [0, 4, 8], [2, 6, 10]];
    let mut pos: Vec<Option<(usize, usize)>> = Vec::new();
    let mut row_index = vec![std::collections::BTreeMap::new(); 5];
    let mut bridges = Vec::new();
    for r in 0..5 {
        for c in row_cols[r].clone() {
            row_index[r].insert(c, pos.len());
            pos.push(Some((r, c)));
        }
        if r < 4 {
            for &c in &bridge_cols[r] {
                bridges.push((pos.len(), r, c));
                pos.push(None);
            }
        }
    }
    let mut edges = Vec::new();
    for idx in &row_index {
        let cols: Vec<_> = idx.iter().collect();
        for w in cols.windows(2) {
            edges.push((*w[0].1, *w[1].1));
        }
    }
    for &(q, r, c) in &bridges {
        edges.push((row_index[r][&c], q));
        edges.push((q, row_index[r + 1][&c]));
    }
    (pos.len(), edges, pos)
}

/// Heavy-hex system graph: each degree-3 device qubit is grouped with an
/// adjacent degree-2 row qubit (right neighbour if possible), giving 49 modes
/// on 65 qubits.
pub fn gen_heavy_hex() -> Result<(SystemGraph, HeavyHexLayout)> {
    let (nq, dev_edges, pos) = heavy_hex_device();
    let mut adj = vec![Vec::new(); nq];
    for &(a, b) in &dev_edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let row_neighbor = |q: usize, dc: isize| -> Option<usize> {
        let (r, c) = pos[q]?;
        adj[q].iter().copied().find(|&w| match pos[w] {
            Some((r2, c2)) => r2 == r && c2 as isize == c as isize + dc,
            None => false,
        })
    };
    let mut group_of = vec![usize::MAX; nq];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for q in 0..nq {
        if adj[q].len() != 3 {
            continue;
        }
        let partner = [1isize, -1]
            .into_iter()
            .filter_map(|dc| row_neighbor(q, dc))
            .find(|&w| adj[w].len() == 2 && group_of[w] == usize::MAX)
            .ok_or_else(|| Error::Graph(format!("no free partner for qubit {q}")))?;
        group_of[q] = groups.len();
        group_of[partner] = groups.len();
        groups.push(vec![q.min(partner), q.max(partner)]);
    }
    for q in 0..nq {
        if group_of[q] == usize::MAX {
            group_of[q] = groups.len();
            groups.push(vec![q]);
        }
    }
    // order groups by their smallest qubit
    let mut order: Vec<usize> = (0..groups.len()).collect();
    order.sort_by_key(|&g| groups[g][0]);
    let mut rank = vec![0; groups.len()];
    for (i, &g) in order.iter().enumerate() {
        rank[g] = i;
    }
    let groups: Vec<Vec<usize>> = order.iter().map(|&g| groups[g].clone()).collect();
    let mut sys_edges = std::collections::BTreeSet::new();
    for &(a, b) in &dev_edges {
        let (ga, gb) = (rank[group_of[a]], rank[group_of[b]]);
        if ga != gb {
            sys_edges.insert((ga.min(gb), ga.max(gb)));
        }
    }
    let edges: Vec<_> = sys_edges.into_iter().collect();
    let g = SystemGraph::from_edges(
        vec![VertexKind::Physical; groups.len()],
        &edges,
        GraphMeta::new("heavy-hex").with("device_qubits", nq),
    )?;
    Ok((
        g,
        HeavyHexLayout {
            n_qubits: nq,
            device_edges: dev_edges,
            groups,
        },
    ))
}
