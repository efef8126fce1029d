//! Dense-matrix oracles and random graphs shared by the integration tests.
#![allow(dead_code)]

use fermicode::graph::{GraphMeta, SystemGraph, VertexKind};
use fermicode::pauli::{Pauli, PauliString};
use nalgebra::DMatrix;
use num_complex::Complex64;
use fermicode::encoder::Route;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type M = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn single(x: bool, z: bool) -> [[Complex64; 2]; 2] {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    // X^x Z^z
    match (x, z) {
        (false, false) => [[l, o], [o, l]],
        (true, false) => [[o, l], [l, o]],
        (false, true) => [[l, o], [o, -l]],
        (true, true) => [[o, -l], [l, o]],
    }
}

/// Matrix of `i^phase ∏_q X_q^{x_q} Z_q^{z_q}`, qubit `q` being bit `q` of the index.
pub fn pauli_matrix(p: &PauliString) -> M {
    let n = p.n_qubits();
    let dim = 1usize << n;
    let phase = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][p.phase_exp() as usize];
    let mats: Vec<_> = (0..n).map(|q| single(p.x_bit(q), p.z_bit(q))).collect();
    M::from_fn(dim, dim, |r, col| {
        let mut v = phase;
        for (q, m) in mats.iter().enumerate() {
            v *= m[(r >> q) & 1][(col >> q) & 1];
        }
        v
    })
}

pub fn letters_matrix(n: usize, letters: &[(usize, char)]) -> M {
    let mut m = M::identity(1 << n, 1 << n);
    for &(q, l) in letters {
        let p = match l {
            'X' => Pauli::X,
            'Y' => Pauli::Y,
            'Z' => Pauli::Z,
            _ => Pauli::I,
        };
        let s = PauliString::single(n, q, p);
        m *= pauli_matrix(&s);
    }
    m
}

pub fn kron_single(n: usize, q: usize, m2: [[Complex64; 2]; 2]) -> M {
    let dim = 1usize << n;
    M::from_fn(dim, dim, |r, col| {
        if (r ^ col) & !(1 << q) != 0 {
            return c(0.0, 0.0);
        }
        m2[(r >> q) & 1][(col >> q) & 1]
    })
}

/// Jordan-Wigner Majorana matrices on `n` modes: `γ_{2m} = Z..Z X_m`, `γ_{2m+1} = Z..Z Y_m`.
pub fn majorana_matrices(n: usize) -> Vec<M> {
    let o = c(0.0, 0.0);
    let l = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let x = [[o, l], [l, o]];
    let y = [[o, -i], [i, o]];
    let z = [[l, o], [o, -l]];
    let mut out = Vec::new();
    for m in 0..n {
        let mut string = M::identity(1 << n, 1 << n);
        for k in 0..m {
            string *= kron_single(n, k, z);
        }
        out.push(&string * kron_single(n, m, x));
        out.push(&string * kron_single(n, m, y));
    }
    out
}

/// `a_m = (γ_{2m} + i γ_{2m+1}) / 2`.
pub fn annihilators(n: usize) -> Vec<M> {
    let g = majorana_matrices(n);
    (0..n).map(|m| (&g[2 * m] + &g[2 * m + 1] * c(0.0, 1.0)) * c(0.5, 0.0)).collect()
}

pub fn dagger(m: &M) -> M {
    m.adjoint()
}

pub fn max_diff(a: &M, b: &M) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn random_pauli(rng: &mut impl Rng, n: usize) -> PauliString {
    let x: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    let z: Vec<bool> = (0..n).map(|_| rng.random()).collect();
    PauliString::from_bits(n, &x, &z, rng.random_range(0..4)).unwrap()
}

/// Random connected simple graph: a random spanning tree plus extra edges.
pub fn random_connected_graph(seed: u64, max_vertices: usize, max_edges: usize) -> SystemGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=max_vertices);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    let extra_cap = max_edges.min(n * (n - 1) / 2);
    let target = rng.random_range(edges.len()..=extra_cap);
    let mut tries = 0;
    while edges.len() < target && tries < 1000 {
        tries += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        if a == b {
            continue;
        }
        let e = (a.min(b), a.max(b));
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    SystemGraph::from_edges(vec![VertexKind::Physical; n], &edges, GraphMeta::new("random")).unwrap()
}

/// Dense matrix of a fermionic operator built from the Jordan-Wigner matrices.
pub fn fermion_matrix(f: &fermicode::fermion::FermionOperator) -> M {
    use fermicode::fermion::Factor;
    let n = f.n_modes;
    let g = majorana_matrices(n);
    let a = annihilators(n);
    let dim = 1usize << n;
    let mut out = M::zeros(dim, dim);
    for t in &f.terms {
        let mut m = M::identity(dim, dim) * t.coeff;
        for fac in &t.factors {
            m *= match *fac {
                Factor::Create(j) => dagger(&a[j]),
                Factor::Annihilate(j) => a[j].clone(),
                Factor::Majorana(i) => g[i].clone(),
            };
        }
        out += m;
    }
    out
}

/// `A_jk = -i γ_{2j} γ_{2k}`.
pub fn edge_matrix(g: &[M], j: usize, k: usize) -> M {
    &g[2 * j] * &g[2 * k] * c(0.0, -1.0)
}

/// `B_j = -i γ_{2j} γ_{2j+1}`.
pub fn vertex_matrix(g: &[M], j: usize) -> M {
    &g[2 * j] * &g[2 * j + 1] * c(0.0, -1.0)
}

/// Random simple path from `j` to `k` by randomized depth-first search,
/// optionally forbidding one edge.
pub fn random_path(g: &SystemGraph, j: usize, k: usize, banned: Option<usize>, rng: &mut ChaCha8Rng) -> Option<Route> {
    fn go(
        g: &SystemGraph,
        v: usize,
        k: usize,
        banned: Option<usize>,
        rng: &mut ChaCha8Rng,
        seen: &mut Vec<bool>,
        stack: &mut Vec<(usize, usize)>,
    ) -> bool {
        if v == k {
            return true;
        }
        let mut ports = g.ports(v).to_vec();
        ports.shuffle(rng);
        for e in ports {
            if Some(e) == banned {
                continue;
            }
            let w = g.other_end(e, v);
            if seen[w] {
                continue;
            }
            seen[w] = true;
            stack.push((e, w));
            if go(g, w, k, banned, rng, seen, stack) {
                return true;
            }
            stack.pop();
        }
        false
    }
    let mut seen = vec![false; g.n_vertices()];
    seen[j] = true;
    let mut stack = Vec::new();
    if !go(g, j, k, banned, rng, &mut seen, &mut stack) {
        return None;
    }
    let mut vertices = vec![j];
    let mut edges = Vec::new();
    for (e, w) in stack {
        edges.push(e);
        vertices.push(w);
    }
    Some(Route { vertices, edges })
}
