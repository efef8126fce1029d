//! Local Majorana bases: `2n` pairwise anticommuting Pauli strings on the
//! `n = ⌈d/2⌉` qubits of a degree-`d` vertex.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pauli::{symplectic_rank, Pauli, PauliString};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisKind {
    Jw,
    Fenwick,
    Ternary,
}

impl BasisKind {
    pub const ALL: [BasisKind; 3] = [BasisKind::Jw, BasisKind::Fenwick, BasisKind::Ternary];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::Jw => "jw",
            BasisKind::Fenwick => "fenwick",
            BasisKind::Ternary => "ternary",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "jw" => Ok(BasisKind::Jw),
            "fenwick" => Ok(BasisKind::Fenwick),
            "ternary" => Ok(BasisKind::Ternary),
            _ => Err(Error::Parse(format!("unknown basis `{s}` (expected jw|fenwick|ternary)"))),
        }
    }

    pub fn build(self, degree: usize) -> Result<MajoranaBasis> {
        match self {
            BasisKind::Jw => basis_jw(degree),
            BasisKind::Fenwick => basis_fenwick(degree),
            BasisKind::Ternary => basis_ternary_tree(degree),
        }
    }
}

/// Local Majoranas of one vertex. Port `p` uses `ops[p]`; for odd degree the
/// last operator is the unpaired Majorana.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MajoranaBasis {
    pub name: String,
    pub n_qubits: usize,
    pub ops: Vec<PauliString>,
}

impl MajoranaBasis {
    /// User-supplied operators, accepted only if they pass [`basis_verify`].
    pub fn explicit(ops: Vec<PauliString>) -> Result<Self> {
        let n_qubits = ops
            .first()
            .map(|p| p.n_qubits())
            .ok_or_else(|| Error::Basis("empty operator list".into()))?;
        if ops.iter().any(|p| p.n_qubits() != n_qubits) {
            return Err(Error::Basis("operators act on different qubit counts".into()));
        }
        let b = MajoranaBasis {
            name: "explicit".into(),
            n_qubits,
            ops,
        };
        let report = basis_verify(&b);
        if report.is_valid() {
            Ok(b)
        } else {
            Err(Error::Basis(report.to_string()))
        }
    }

    /// Parses operators in `.pauli` term syntax, one per entry, e.g. `"(1,0) Y1"`.
    /// A bare letter product such as `"Z1 X2"` is read with coefficient 1.
    pub fn parse_explicit(entries: &[String], n_qubits: usize) -> Result<Self> {
        let ops = entries
            .iter()
            .map(|s| {
                let s = s.trim();
                if s.starts_with('(') {
                    PauliString::parse(s, n_qubits)
                } else {
                    PauliString::parse(&format!("(1,0) {s}"), n_qubits)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::explicit(ops)
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn max_weight(&self) -> usize {
        self.ops.iter().map(PauliString::weight).max().unwrap_or(0)
    }

    /// `i^n · c_1 c_2 ⋯ c_{2n}`, the local parity operator.
    pub fn parity_operator(&self) -> PauliString {
        let mut p = PauliString::identity(self.n_qubits);
        for op in &self.ops {
            p = &p * op;
        }
        p.times_i((self.n_qubits % 4) as u8)
    }
}

fn check_degree(d: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::Basis("degree-0 vertex has no local Majoranas".into()));
    }
    Ok(d.div_ceil(2))
}

/// `X_1, Y_1, Z_1 X_2, Z_1 Y_2, …`
pub fn basis_jw(d: usize) -> Result<MajoranaBasis> {
    let n = check_degree(d)?;
    let mut ops = Vec::with_capacity(2 * n);
    for m in 0..n {
        for p in [Pauli::X, Pauli::Y] {
            let mut letters: Vec<(usize, Pauli)> = (0..m).map(|q| (q, Pauli::Z)).collect();
            letters.push((m, p));
            ops.push(PauliString::from_letters(n, &letters));
        }
    }
    Ok(MajoranaBasis {
        name: "jw".into(),
        n_qubits: n,
        ops,
    })
}

fn lowbit(i: usize) -> usize {
    i & i.wrapping_neg()
}

/// Bravyi–Kitaev Majoranas on a Fenwick tree over `n` qubits. With 1-based
/// index `j`: `c_{2j-1} = X_U X_j Z_P`, `c_{2j} = X_U Y_j Z_R`, where `U` are
/// the ancestors of `j`, `P` the nodes storing the parity of modes `< j`, and
/// `R` is `P` without the children of `j`.
pub fn basis_fenwick(d: usize) -> Result<MajoranaBasis> {
    let n = check_degree(d)?;
    let mut ops = Vec::with_capacity(2 * n);
    for j in 1..=n {
        let mut update = Vec::new();
        let mut u = j + lowbit(j);
        while u <= n {
            update.push(u);
            u += lowbit(u);
        }
        let mut parity = Vec::new();
        let mut k = j - 1;
        while k > 0 {
            parity.push(k);
            k -= lowbit(k);
        }
        let mut children = Vec::new();
        let lo = j - lowbit(j);
        let mut c = j - 1;
        while c > lo {
            children.push(c);
            c -= lowbit(c);
        }
        let remainder: Vec<usize> = parity.iter().copied().filter(|p| !children.contains(p)).collect();
        let build = |own: Pauli, zs: &[usize]| {
            let mut letters: Vec<(usize, Pauli)> = update.iter().map(|&q| (q - 1, Pauli::X)).collect();
            letters.push((j - 1, own));
            letters.extend(zs.iter().map(|&q| (q - 1, Pauli::Z)));
            PauliString::from_letters(n, &letters)
        };
        ops.push(build(Pauli::X, &parity));
        ops.push(build(Pauli::Y, &remainder));
    }
    Ok(MajoranaBasis {
        name: "fenwick".into(),
        n_qubits: n,
        ops,
    })
}

/// Ternary-tree Majoranas. Qubits sit on a complete ternary tree in
/// breadth-first order (children of `i` are `3i+1..=3i+3`). Each missing child
/// slot gives one string: the branch letters along the root path, ending with
/// the slot's own letter. Slots are listed depth-first in `X, Y, Z` order and
/// the final all-`Z` string is dropped.
pub fn basis_ternary_tree(d: usize) -> Result<MajoranaBasis> {
    let n = check_degree(d)?;
    let mut ops = Vec::with_capacity(2 * n + 1);
    let mut path: Vec<(usize, Pauli)> = Vec::new();
    fn walk(node: usize, n: usize, path: &mut Vec<(usize, Pauli)>, out: &mut Vec<PauliString>) {
        for (b, p) in [Pauli::X, Pauli::Y, Pauli::Z].into_iter().enumerate() {
            path.push((node, p));
            let child = 3 * node + 1 + b;
            if child < n {
                walk(child, n, path, out);
            } else {
                out.push(PauliString::from_letters(n, path));
            }
            path.pop();
        }
    }
    walk(0, n, &mut path, &mut ops);
    let last = ops.pop().expect("tree has 2n+1 slots");
    debug_assert!(last.letters().iter().all(|&(_, p)| p == Pauli::Z));
    Ok(MajoranaBasis {
        name: "ternary".into(),
        n_qubits: n,
        ops,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BasisViolation {
    QubitMismatch { op: usize, n_qubits: usize },
    Count { found: usize, expected: usize },
    NotHermitian(usize),
    NotInvolution(usize),
    Commute(usize, usize),
    Rank { rank: usize, expected: usize },
}

impl fmt::Display for BasisViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisViolation::QubitMismatch { op, n_qubits } => {
                write!(f, "operator {op} acts on {n_qubits} qubits")
            }
            BasisViolation::Count { found, expected } => {
                write!(f, "{found} operators, expected {expected}")
            }
            BasisViolation::NotHermitian(i) => write!(f, "operator {i} is not Hermitian"),
            BasisViolation::NotInvolution(i) => write!(f, "operator {i} does not square to +I"),
            BasisViolation::Commute(i, j) => write!(f, "operators {i} and {j} commute"),
            BasisViolation::Rank { rank, expected } => {
                write!(f, "symplectic rank {rank} < {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisReport {
    pub violations: Vec<BasisViolation>,
}

impl BasisReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for BasisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// Lists every way `b` fails to be a local Majorana basis.
pub fn basis_verify(b: &MajoranaBasis) -> BasisReport {
    let mut violations = Vec::new();
    for (i, op) in b.ops.iter().enumerate() {
        if op.n_qubits() != b.n_qubits {
            violations.push(BasisViolation::QubitMismatch {
                op: i,
                n_qubits: op.n_qubits(),
            });
        }
    }
    if !violations.is_empty() {
        return BasisReport { violations };
    }
    let expected = 2 * b.n_qubits;
    if b.ops.len() != expected {
        violations.push(BasisViolation::Count {
            found: b.ops.len(),
            expected,
        });
    }
    for (i, op) in b.ops.iter().enumerate() {
        if !op.is_hermitian() {
            violations.push(BasisViolation::NotHermitian(i));
        }
        if !op.squares_to_identity() {
            violations.push(BasisViolation::NotInvolution(i));
        }
    }
    for i in 0..b.ops.len() {
        for j in i + 1..b.ops.len() {
            if b.ops[i].commutes_unchecked(&b.ops[j]) {
                violations.push(BasisViolation::Commute(i, j));
            }
        }
    }
    let rank = symplectic_rank(&b.ops);
    if rank < expected {
        violations.push(BasisViolation::Rank { rank, expected });
    }
    BasisReport { violations }
}

/// Basis per vertex: a default construction plus explicit overrides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChoice {
    pub default: BasisKind,
    pub overrides: BTreeMap<usize, MajoranaBasis>,
}

impl BasisChoice {
    pub fn uniform(kind: BasisKind) -> Self {
        BasisChoice {
            default: kind,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, vertex: usize, basis: MajoranaBasis) -> Self {
        self.overrides.insert(vertex, basis);
        self
    }

    /// Basis for a vertex of the given degree.
    pub fn resolve(&self, vertex: usize, degree: usize) -> Result<MajoranaBasis> {
        match self.overrides.get(&vertex) {
            Some(b) => {
                let n = check_degree(degree)?;
                if b.n_qubits != n {
                    return Err(Error::Basis(format!(
                        "override for vertex {vertex} acts on {} qubits, degree {degree} needs {n}",
                        b.n_qubits
                    )));
                }
                Ok(b.clone())
            }
            None => self.default.build(degree).map_err(|e| match e {
                Error::Basis(m) => Error::Basis(format!("vertex {vertex}: {m}")),
                other => other,
            }),
        }
    }

    /// Reads overrides from JSON: `{"<vertex>": ["Y1", "X1"], ...}`.
    pub fn parse_overrides(mut self, json: &str) -> Result<Self> {
        let map: BTreeMap<String, Vec<String>> = serde_json::from_str(json)?;
        for (k, entries) in map {
            let v: usize = k
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex id `{k}` in basis overrides")))?;
            let n = entries.len().div_ceil(2).max(1);
            let b = MajoranaBasis::parse_explicit(&entries, n)?;
            self.overrides.insert(v, b);
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, n: usize) -> PauliString {
        PauliString::parse(&format!("(1,0) {s}"), n).unwrap()
    }

    #[test]
    fn jw_small() {
        let b = basis_jw(2).unwrap();
        assert_eq!(b.ops, vec![p("X1", 1), p("Y1", 1)]);
        let b = basis_jw(4).unwrap();
        assert_eq!(b.ops, vec![p("X1", 2), p("Y1", 2), p("Z1 X2", 2), p("Z1 Y2", 2)]);
        let b = basis_jw(6).unwrap();
        assert_eq!(b.n_qubits, 3);
        assert_eq!(b.max_weight(), 3);
        assert_eq!(b.ops[5], p("Z1 Z2 Y3", 3));
    }

    #[test]
    fn degree_zero_rejected() {
        for k in BasisKind::ALL {
            assert!(matches!(k.build(0), Err(Error::Basis(_))));
        }
    }

    #[test]
    fn single_qubit_bases_agree() {
        for k in BasisKind::ALL {
            assert_eq!(k.build(2).unwrap().ops, vec![p("X1", 1), p("Y1", 1)], "{k:?}");
            assert_eq!(k.build(1).unwrap().ops.len(), 2);
        }
    }

    #[test]
    fn fenwick_four_qubits() {
        let b = basis_fenwick(8).unwrap();
        // index 4 is the root of the 4-node tree
        assert_eq!(b.ops[0], p("X1 X2 X4", 4));
        assert_eq!(b.ops[6], p("X4 Z3 Z2", 4));
        assert_eq!(b.ops[7], p("Y4", 4));
        assert!(b.max_weight() <= 3);
    }

    #[test]
    fn ternary_three_qubits() {
        let b = basis_ternary_tree(6).unwrap();
        assert_eq!(b.ops.len(), 6);
        assert!(b.max_weight() <= 2);
        assert_eq!(b.ops[0], p("X1 X2", 3));
        assert_eq!(b.ops[5], p("Y1 Z3", 3));
    }

    #[test]
    fn all_constructors_valid() {
        for k in BasisKind::ALL {
            for d in 1..=64 {
                let b = k.build(d).unwrap();
                assert_eq!(b.ops.len(), 2 * d.div_ceil(2));
                let r = basis_verify(&b);
                assert!(r.is_valid(), "{k:?} d={d}: {r}");
            }
        }
    }

    #[test]
    fn verify_reports_failures() {
        let b = MajoranaBasis {
            name: "x".into(),
            n_qubits: 1,
            ops: vec![p("X1", 1), p("X1", 1)],
        };
        let r = basis_verify(&b);
        assert!(r.violations.contains(&BasisViolation::Commute(0, 1)));
        let b = MajoranaBasis {
            name: "x".into(),
            n_qubits: 2,
            ops: vec![p("X1", 2), p("Y1", 2)],
        };
        let r = basis_verify(&b);
        assert!(r.violations.contains(&BasisViolation::Rank { rank: 2, expected: 4 }));
        let b = MajoranaBasis {
            name: "x".into(),
            n_qubits: 1,
            ops: vec![p("X1", 1), p("Y1", 1).times_i(1)],
        };
        let r = basis_verify(&b);
        assert!(r.violations.contains(&BasisViolation::NotHermitian(1)));
        assert!(r.violations.contains(&BasisViolation::NotInvolution(1)));
    }

    #[test]
    fn explicit_and_overrides() {
        let b = MajoranaBasis::parse_explicit(&["Y1".to_string(), "X1".to_string()], 1).unwrap();
        assert_eq!(b.ops, vec![p("Y1", 1), p("X1", 1)]);
        assert!(MajoranaBasis::parse_explicit(&["X1".to_string(), "X1".to_string()], 1).is_err());
        let choice = BasisChoice::uniform(BasisKind::Jw)
            .parse_overrides(r#"{"2": ["Y1", "X1"]}"#)
            .unwrap();
        assert_eq!(choice.resolve(2, 2).unwrap().ops[0], p("Y1", 1));
        assert_eq!(choice.resolve(0, 2).unwrap().ops[0], p("X1", 1));
        assert!(choice.resolve(2, 4).is_err());
    }

    #[test]
    fn parity_operator_jw_is_signed_all_z() {
        for d in 1..=12 {
            let b = basis_jw(d).unwrap();
            let n = b.n_qubits;
            let par = b.parity_operator();
            assert!(par.letters().iter().all(|&(_, l)| l == Pauli::Z));
            assert_eq!(par.weight(), n);
            let sign = if n.is_multiple_of(2) { 0 } else { 2 };
            assert_eq!(par.letter_phase(), sign, "d={d}");
        }
    }
}
