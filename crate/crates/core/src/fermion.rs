//! Fermionic operators and their compilation to Pauli sums.
//!
//! Modes and Majoranas are 0-based internally: mode `m` has the Majoranas
//! `2m` (odd type, `γ_{2m+1}` in 1-based notation) and `2m+1` (even type), with
//! `a_m = (γ_{2m} + iγ_{2m+1}) / 2`. Text files use 1-based indices.
//!
//! The edge and vertex operators are `A_jk = -i γ_{2j} γ_{2k}` and
//! `B_j = -i γ_{2j} γ_{2j+1} = 1 - 2 n_j`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::encoder::{Encoding, Route};
use crate::error::{Error, Result};
use crate::graph::{gen_lattice, Boundary, InteractionGraph, LatticeKind};
use crate::pauli::{format_f64, PauliString, PauliSum, ZERO_THRESHOLD};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    Create(usize),
    Annihilate(usize),
    Majorana(usize),
}

impl Factor {
    fn max_mode(self) -> usize {
        match self {
            Factor::Create(m) | Factor::Annihilate(m) => m,
            Factor::Majorana(i) => i / 2,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Create(m) => write!(f, "a+{}", m + 1),
            Factor::Annihilate(m) => write!(f, "a-{}", m + 1),
            Factor::Majorana(i) => write!(f, "g{}", i + 1),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FermionTerm {
    pub coeff: Complex64,
    pub factors: Vec<Factor>,
}

/// Sum of products of creation, annihilation and Majorana operators.
#[derive(Clone, Debug, PartialEq)]
pub struct FermionOperator {
    pub n_modes: usize,
    pub terms: Vec<FermionTerm>,
}

impl FermionOperator {
    pub fn new(n_modes: usize) -> Self {
        FermionOperator {
            n_modes,
            terms: Vec::new(),
        }
    }

    pub fn add_term(&mut self, coeff: Complex64, factors: Vec<Factor>) -> Result<()> {
        if let Some(f) = factors.iter().find(|f| f.max_mode() >= self.n_modes) {
            return Err(Error::Dimension(f.max_mode() + 1, self.n_modes));
        }
        self.terms.push(FermionTerm { coeff, factors });
        Ok(())
    }

    /// Adds `coeff · (a†_j a_k + a†_k a_j)`.
    pub fn add_hopping(&mut self, coeff: f64, j: usize, k: usize) -> Result<()> {
        let c = Complex64::new(coeff, 0.0);
        self.add_term(c, vec![Factor::Create(j), Factor::Annihilate(k)])?;
        self.add_term(c, vec![Factor::Create(k), Factor::Annihilate(j)])
    }

    pub fn add_number(&mut self, coeff: f64, j: usize) -> Result<()> {
        self.add_term(Complex64::new(coeff, 0.0), vec![Factor::Create(j), Factor::Annihilate(j)])
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Every term has an even number of fermionic factors.
    pub fn is_parity_preserving(&self) -> bool {
        self.terms.iter().all(|t| t.factors.len() % 2 == 0)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# modes {}\n", self.n_modes);
        for t in &self.terms {
            s.push_str(&format!("({},{})", format_f64(t.coeff.re), format_f64(t.coeff.im)));
            if t.factors.is_empty() {
                s.push_str(" 1");
            }
            for f in &t.factors {
                s.push_str(&format!(" {f}"));
            }
            s.push('\n');
        }
        s
    }

    /// Parses the Hamiltonian text format: one term per line,
    /// `(<re>,<im>) <factor>...` with factors `a+<mode>`, `a-<mode>`,
    /// `g<majorana>` (1-based) or `1` for the identity. The mode count comes
    /// from a `# modes N` header, then `n_modes`, then the largest index used.
    pub fn from_text(text: &str, n_modes: Option<usize>) -> Result<FermionOperator> {
        let mut header = None;
        let mut terms = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let mut it = rest.split_whitespace();
                if it.next() == Some("modes") {
                    let n = it
                        .next()
                        .and_then(|v| v.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("line {}: bad modes header", lineno + 1)))?;
                    header = Some(n);
                }
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let close = line.find(')').ok_or_else(|| bad("missing coefficient"))?;
            let inner = line[..close].strip_prefix('(').ok_or_else(|| bad("missing coefficient"))?;
            let (re, im) = inner.split_once(',').ok_or_else(|| bad("bad coefficient"))?;
            let re: f64 = re.trim().parse().map_err(|_| bad("bad real part"))?;
            let im: f64 = im.trim().parse().map_err(|_| bad("bad imaginary part"))?;
            let mut factors = Vec::new();
            for tok in line[close + 1..].split_whitespace() {
                if tok == "1" {
                    continue;
                }
                let idx = |s: &str| -> Result<usize> {
                    let v: usize = s.parse().map_err(|_| bad(&format!("bad index in `{tok}`")))?;
                    v.checked_sub(1).ok_or_else(|| bad("indices are 1-based"))
                };
                let f = if let Some(m) = tok.strip_prefix("a+") {
                    Factor::Create(idx(m)?)
                } else if let Some(m) = tok.strip_prefix("a-") {
                    Factor::Annihilate(idx(m)?)
                } else if let Some(m) = tok.strip_prefix('g') {
                    Factor::Majorana(idx(m)?)
                } else {
                    return Err(bad(&format!("unknown factor `{tok}`")));
                };
                factors.push(f);
            }
            terms.push(FermionTerm {
                coeff: Complex64::new(re, im),
                factors,
            });
        }
        let used = terms
            .iter()
            .flat_map(|t| t.factors.iter().map(|f| f.max_mode() + 1))
            .max()
            .unwrap_or(0);
        let n = header.or(n_modes).unwrap_or(used);
        if used > n {
            return Err(Error::Dimension(used, n));
        }
        Ok(FermionOperator { n_modes: n, terms })
    }
}

/// `coeff · γ_{i_1} ⋯ γ_{i_k}` with strictly increasing indices.
#[derive(Clone, Debug, PartialEq)]
pub struct MajoranaMonomial {
    pub coeff: Complex64,
    pub indices: Vec<usize>,
}

/// Sign and surviving indices of a Majorana product brought to increasing order.
fn normal_order(seq: &[usize]) -> (bool, Vec<usize>) {
    let mut v = seq.to_vec();
    let mut negative = false;
    // insertion sort; swapping distinct Majoranas flips the sign
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            negative = !negative;
            j -= 1;
        }
    }
    let mut out = Vec::with_capacity(v.len());
    let mut i = 0;
    while i < v.len() {
        let mut k = i;
        while k < v.len() && v[k] == v[i] {
            k += 1;
        }
        if (k - i) % 2 == 1 {
            out.push(v[i]);
        }
        i = k;
    }
    (negative, out)
}

/// Expands into Majoranas and collects like monomials, ordered by (length, indices).
pub fn to_majorana_normal_form(f: &FermionOperator) -> Vec<MajoranaMonomial> {
    let half = Complex64::new(0.5, 0.0);
    let i_half = Complex64::new(0.0, 0.5);
    let mut acc: BTreeMap<(usize, Vec<usize>), Complex64> = BTreeMap::new();
    for t in &f.terms {
        let mut partial: Vec<(Complex64, Vec<usize>)> = vec![(t.coeff, Vec::new())];
        for fac in &t.factors {
            let choices: Vec<(Complex64, usize)> = match *fac {
                Factor::Majorana(i) => vec![(Complex64::new(1.0, 0.0), i)],
                Factor::Annihilate(m) => vec![(half, 2 * m), (i_half, 2 * m + 1)],
                Factor::Create(m) => vec![(half, 2 * m), (-i_half, 2 * m + 1)],
            };
            let mut next = Vec::with_capacity(partial.len() * choices.len());
            for (c, seq) in &partial {
                for &(cc, idx) in &choices {
                    let mut s = seq.clone();
                    s.push(idx);
                    next.push((c * cc, s));
                }
            }
            partial = next;
        }
        for (c, seq) in partial {
            let (neg, idx) = normal_order(&seq);
            let c = if neg { -c } else { c };
            *acc.entry((idx.len(), idx)).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
    }
    acc.into_iter()
        .filter(|(_, c)| c.norm() >= ZERO_THRESHOLD)
        .map(|((_, indices), coeff)| MajoranaMonomial { coeff, indices })
        .collect()
}

/// `coeff · A_{e_1} ⋯ A_{e_r} · B_{v_1} ⋯ B_{v_s}`, factors in the stored order.
/// Each edge factor `(j, k)` means `A_jk = -A_kj`.
#[derive(Clone, Debug, PartialEq)]
pub struct EVTerm {
    pub coeff: Complex64,
    pub edges: Vec<(usize, usize)>,
    pub vertices: Vec<usize>,
}

/// Writes `γ_i γ_j` (`i < j`) as edge and vertex operators.
pub fn pair_to_ev(i: usize, j: usize) -> EVTerm {
    assert!(i < j, "pair must be increasing");
    let (mj, mk) = (i / 2, j / 2);
    let (even_i, even_j) = (i % 2 == 1, j % 2 == 1);
    let c = |re: f64, im: f64| Complex64::new(re, im);
    if mj == mk {
        // γ_{2j} γ_{2j+1} = i B_j
        return EVTerm {
            coeff: c(0.0, 1.0),
            edges: vec![],
            vertices: vec![mj],
        };
    }
    let (coeff, vertices) = match (even_i, even_j) {
        (false, false) => (c(0.0, 1.0), vec![]),
        (false, true) => (c(-1.0, 0.0), vec![mk]),
        // γe_j γo_k = B_j A_jk = -A_jk B_j
        (true, false) => (c(-1.0, 0.0), vec![mj]),
        (true, true) => (c(0.0, -1.0), vec![mj, mk]),
    };
    EVTerm {
        coeff,
        edges: vec![(mj, mk)],
        vertices,
    }
}

/// Pairs adjacent indices of an even monomial and orders all edge factors
/// before vertex factors, tracking the anticommutation signs.
pub fn monomial_to_ev(m: &MajoranaMonomial) -> Result<EVTerm> {
    if m.indices.len() % 2 == 1 {
        return Err(Error::Parity(format!("odd Majorana monomial {:?}", m.indices)));
    }
    let mut coeff = m.coeff;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut vertices: Vec<usize> = Vec::new();
    for pair in m.indices.chunks(2) {
        let t = pair_to_ev(pair[0], pair[1]);
        coeff *= t.coeff;
        // move the new A factors left past the vertex factors collected so far
        for &(a, b) in &t.edges {
            let crossings = vertices.iter().filter(|&&v| v == a || v == b).count();
            if crossings % 2 == 1 {
                coeff = -coeff;
            }
            edges.push((a, b));
        }
        vertices.extend(t.vertices);
    }
    // B's commute with each other and square to one
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for v in vertices {
        *counts.entry(v).or_default() += 1;
    }
    let vertices = counts.into_iter().filter(|(_, c)| c % 2 == 1).map(|(v, _)| v).collect();
    Ok(EVTerm { coeff, edges, vertices })
}

/// Graph with an edge for every `A_jk` needed by `h`.
pub fn interaction_graph_from_hamiltonian(h: &FermionOperator) -> Result<InteractionGraph> {
    if !h.is_parity_preserving() {
        return Err(Error::Parity("Hamiltonian has an odd term".into()));
    }
    let mut edges = BTreeSet::new();
    for m in to_majorana_normal_form(h) {
        for (a, b) in monomial_to_ev(&m)?.edges {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    Ok(InteractionGraph {
        n_vertices: h.n_modes,
        edges,
    })
}

/// How couplings between non-adjacent vertices are routed.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum RoutingPolicy {
    /// Cheapest route under the encoding's vertex costs; adjacent vertices use their edge.
    #[default]
    Auto,
    /// Listed routes keyed by (first, last) vertex; other pairs fall back to `Auto`.
    Explicit(BTreeMap<(usize, usize), Route>),
}

impl RoutingPolicy {
    /// Reads a path file: one route per line as whitespace-separated 0-based
    /// vertex ids; `#` starts a comment.
    pub fn parse_path_file(text: &str, enc: &Encoding) -> Result<RoutingPolicy> {
        let mut routes = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let vs = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("line {}: bad vertex `{t}`", lineno + 1)))
                })
                .collect::<Result<Vec<_>>>()?;
            let r = Route::from_vertices(enc.graph(), &vs)?;
            routes.insert((r.start(), r.end()), r);
        }
        Ok(RoutingPolicy::Explicit(routes))
    }
}

/// Compiles `f` into a Pauli sum on the encoding's qubits.
pub fn transform_hamiltonian(f: &FermionOperator, enc: &Encoding, policy: &RoutingPolicy) -> Result<PauliSum> {
    if !f.is_parity_preserving() {
        return Err(Error::Parity("Hamiltonian has an odd term".into()));
    }
    if f.n_modes > enc.n_modes() {
        return Err(Error::Dimension(f.n_modes, enc.n_modes()));
    }
    let monomials = to_majorana_normal_form(f);
    let ev: Vec<EVTerm> = monomials.iter().map(monomial_to_ev).collect::<Result<_>>()?;
    // encoded A for each needed vertex pair (low, high), oriented low -> high
    let mut needed: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in &ev {
        for &(a, b) in &t.edges {
            let (va, vb) = (enc.mode_vertex(a)?, enc.mode_vertex(b)?);
            needed.insert((va.min(vb), va.max(vb)));
        }
    }
    let mut by_source: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in &needed {
        by_source.entry(a).or_default().push(b);
    }
    let computed: Vec<Vec<((usize, usize), PauliString)>> = by_source
        .par_iter()
        .map(|(&a, targets)| -> Result<Vec<_>> {
            let mut auto: Option<Vec<Option<Route>>> = None;
            let mut out = Vec::with_capacity(targets.len());
            for &b in targets {
                let explicit = match policy {
                    RoutingPolicy::Explicit(m) => m
                        .get(&(a, b))
                        .cloned()
                        .or_else(|| m.get(&(b, a)).map(reverse_route)),
                    RoutingPolicy::Auto => None,
                };
                let op = match explicit {
                    Some(r) => enc.path_operator(&r)?,
                    None => match enc.graph().edge_between(a, b) {
                        Some(e) => enc.directed_edge_op(e, a),
                        None => {
                            let routes = auto.get_or_insert_with(|| enc.routes_from(a));
                            let r = routes[b]
                                .as_ref()
                                .ok_or_else(|| Error::Route(format!("no path between vertices {a} and {b}")))?;
                            enc.path_operator(r)?
                        }
                    },
                };
                out.push(((a, b), op));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let a_ops: HashMap<(usize, usize), PauliString> = computed.into_iter().flatten().collect();
    let b_ops: Vec<PauliString> = (0..f.n_modes)
        .map(|m| enc.vertex_operator(enc.mode_vertex(m)?))
        .collect::<Result<_>>()?;
    let terms: Vec<(Complex64, PauliString)> = ev
        .par_iter()
        .map(|t| -> Result<(Complex64, PauliString)> {
            let mut p = PauliString::identity(enc.n_qubits());
            for &(a, b) in &t.edges {
                let (va, vb) = (enc.mode_vertex(a)?, enc.mode_vertex(b)?);
                let op = &a_ops[&(va.min(vb), va.max(vb))];
                p = &p * op;
                if va > vb {
                    p = p.negate();
                }
            }
            for &v in &t.vertices {
                p = &p * &b_ops[v];
            }
            Ok((t.coeff, p))
        })
        .collect::<Result<_>>()?;
    let mut sum = PauliSum::new(enc.n_qubits());
    for (c, p) in &terms {
        sum.accumulate(*c, p)?;
    }
    Ok(sum)
}

fn reverse_route(r: &Route) -> Route {
    let mut vertices = r.vertices.clone();
    vertices.reverse();
    let mut edges = r.edges.clone();
    edges.reverse();
    Route { vertices, edges }
}

/// Real antisymmetric couplings `J_ab`, `a < b`, over `2N` Majoranas.
#[derive(Clone, Debug, PartialEq)]
pub struct SykCouplings {
    pub n_modes: usize,
    /// Row-major upper triangle: `J[a][b]` for `a < b`; other entries ignored.
    pub j: Vec<Vec<f64>>,
}

impl SykCouplings {
    /// Independent standard normal couplings drawn in `(a, b)` lexicographic order.
    pub fn gaussian(n_modes: usize, seed: u64) -> Self {
        let m = 2 * n_modes;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut j = vec![vec![0.0; m]; m];
        for a in 0..m {
            for b in a + 1..m {
                j[a][b] = StandardNormal.sample(&mut rng);
            }
        }
        SykCouplings { n_modes, j }
    }
}

/// `H = -i Σ_{a<b} J_ab γ_a γ_b` (the quadratic SYK model).
pub fn build_syk2(c: &SykCouplings) -> Result<FermionOperator> {
    let m = 2 * c.n_modes;
    if c.j.len() != m || c.j.iter().any(|row| row.len() != m) {
        return Err(Error::Dimension(c.j.len(), m));
    }
    let mut h = FermionOperator::new(c.n_modes);
    for a in 0..m {
        for b in a + 1..m {
            let v = c.j[a][b];
            if v != 0.0 {
                h.add_term(Complex64::new(0.0, -v), vec![Factor::Majorana(a), Factor::Majorana(b)])?;
            }
        }
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeModel {
    Chain,
    SquareNn,
    SquareNnDiag,
}

impl LatticeModel {
    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "chain" => Ok(LatticeModel::Chain),
            "square_nn" => Ok(LatticeModel::SquareNn),
            "square_nn_diag" => Ok(LatticeModel::SquareNnDiag),
            _ => Err(Error::Parse(format!("unknown lattice model `{s}`"))),
        }
    }
}

/// Hopping model `t Σ_nn (a†a + h.c.) + t' Σ_diag (a†a + h.c.) + U Σ n`.
/// Modes are numbered `row * cols + col`.
pub fn build_lattice_model(
    kind: LatticeModel,
    dims: &[usize],
    t: f64,
    t_diag: f64,
    u: f64,
    boundary: Boundary,
) -> Result<FermionOperator> {
    let lattice = match kind {
        LatticeModel::Chain => LatticeKind::Linear,
        LatticeModel::SquareNn => LatticeKind::Square,
        LatticeModel::SquareNnDiag => LatticeKind::SquareDiagonal,
    };
    let g = gen_lattice(lattice, dims, boundary)?;
    let cols = g.meta().params.get("cols").and_then(|v| v.as_u64()).unwrap_or(1) as usize;
    let mut h = FermionOperator::new(g.n_vertices());
    for &(a, b) in g.edges() {
        let diagonal = kind != LatticeModel::Chain && a / cols != b / cols && a % cols != b % cols;
        let coeff = if diagonal { t_diag } else { t };
        if coeff != 0.0 {
            h.add_hopping(coeff, a, b)?;
        }
    }
    if u != 0.0 {
        for m in 0..g.n_vertices() {
            h.add_number(u, m)?;
        }
    }
    Ok(h)
}
