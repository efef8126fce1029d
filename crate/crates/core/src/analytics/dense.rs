//! Dense-matrix comparison of compiled Hamiltonians against exact fermionic ones.
//!
//! The encoded side never forms a `2^Q x 2^Q` matrix: codespace vectors are
//! built sparsely and operators are restricted to them directly.

use std::fmt;

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::encoder::{AlgebraReport, Encoding};
use crate::error::{Error, Result};
use crate::fermion::{transform_hamiltonian, Factor, FermionOperator, RoutingPolicy};
use crate::pauli::{i_pow, PauliString, PauliSum};

const DROP: f64 = 1e-12;

/// Orthonormal basis of the joint `+1` eigenspace of commuting Pauli operators.
#[derive(Clone, Debug)]
pub struct Codespace {
    n_qubits: usize,
    vectors: Vec<Vec<(usize, Complex64)>>,
}

impl Codespace {
    pub fn new(n_qubits: usize, generators: &[PauliString], max_qubits: usize) -> Result<Codespace> {
        if n_qubits > max_qubits || n_qubits > 30 {
            return Err(Error::Resource(format!(
                "dense codespace on {n_qubits} qubits exceeds the cap of {max_qubits}"
            )));
        }
        for g in generators {
            if g.n_qubits() != n_qubits {
                return Err(Error::Dimension(g.n_qubits(), n_qubits));
            }
        }
        // GF(2) basis of the bit flips generated by the group
        let mut flips: Vec<usize> = Vec::new();
        for g in generators {
            let mut x = g.x_words().first().copied().unwrap_or(0) as usize;
            for &f in &flips {
                x = x.min(x ^ f);
            }
            if x != 0 {
                flips.push(x);
            }
        }
        let dim = 1usize << n_qubits;
        let mut seen = vec![false; dim];
        let mut vectors = Vec::new();
        let mut amp = vec![Complex64::new(0.0, 0.0); dim];
        for b in 0..dim {
            if seen[b] {
                continue;
            }
            let mut orbit = vec![b];
            for &f in &flips {
                let ext: Vec<usize> = orbit.iter().map(|&s| s ^ f).collect();
                orbit.extend(ext);
            }
            for &s in &orbit {
                seen[s] = true;
            }
            amp[b] = Complex64::new(1.0, 0.0);
            let mut support = vec![b];
            for g in generators {
                let cur: Vec<(usize, Complex64)> = support.iter().map(|&s| (s, amp[s])).collect();
                for &(s, a) in &cur {
                    amp[s] = a * 0.5;
                }
                for &(s, a) in &cur {
                    let (t, k) = g.apply_to_basis(s);
                    if !support.contains(&t) {
                        support.push(t);
                    }
                    amp[t] += a * 0.5 * i_pow(k);
                }
            }
            let mut v: Vec<(usize, Complex64)> = support
                .iter()
                .map(|&s| (s, std::mem::take(&mut amp[s])))
                .filter(|(_, a)| a.norm() > DROP)
                .collect();
            let norm = v.iter().map(|(_, a)| a.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-9 {
                v.sort_by_key(|&(s, _)| s);
                for (_, a) in &mut v {
                    *a /= norm;
                }
                vectors.push(v);
            }
        }
        Ok(Codespace { n_qubits, vectors })
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Matrix of `Σ c_i P_i` in the codespace basis.
    pub fn restrict<'a, I>(&self, terms: I) -> DMatrix<Complex64>
    where
        I: IntoIterator<Item = (&'a PauliString, Complex64)> + Clone,
    {
        let d = self.dim();
        let mut index = vec![None; 1usize << self.n_qubits];
        for (i, v) in self.vectors.iter().enumerate() {
            for &(s, a) in v {
                index[s] = Some((i, a));
            }
        }
        let mut m = DMatrix::zeros(d, d);
        for (j, v) in self.vectors.iter().enumerate() {
            for (p, c) in terms.clone() {
                for &(s, a) in v {
                    let (t, k) = p.apply_to_basis(s);
                    if let Some((i, b)) = index[t] {
                        m[(i, j)] += b.conj() * c * i_pow(k) * a;
                    }
                }
            }
        }
        m
    }

    pub fn restrict_sum(&self, h: &PauliSum) -> DMatrix<Complex64> {
        let terms: Vec<(PauliString, Complex64)> = h.iter().collect();
        self.restrict(terms.iter().map(|(p, c)| (p, *c)))
    }

    pub fn restrict_string(&self, p: &PauliString) -> DMatrix<Complex64> {
        self.restrict([(p, Complex64::new(1.0, 0.0))])
    }
}

fn hermitian_eigenvalues(m: DMatrix<Complex64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Applies `f` to occupation state `n` (mode `m` = bit `m`).
fn apply_factors(factors: &[Factor], n: usize) -> Option<(Complex64, usize)> {
    let mut amp = Complex64::new(1.0, 0.0);
    let mut s = n;
    for f in factors.iter().rev() {
        let m = match *f {
            Factor::Create(m) | Factor::Annihilate(m) => m,
            Factor::Majorana(i) => i / 2,
        };
        let occupied = s >> m & 1 == 1;
        let sign = if (s & ((1usize << m) - 1)).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let factor = match *f {
            Factor::Create(_) if occupied => return None,
            Factor::Annihilate(_) if !occupied => return None,
            Factor::Create(_) | Factor::Annihilate(_) => Complex64::new(sign, 0.0),
            Factor::Majorana(i) if i % 2 == 0 => Complex64::new(sign, 0.0),
            // γ_{2m+1} = i (a† - a)
            Factor::Majorana(_) => Complex64::new(0.0, if occupied { -sign } else { sign }),
        };
        amp *= factor;
        s ^= 1 << m;
    }
    Some((amp, s))
}

/// Exact matrix of `f` on the occupation states whose particle-number parity
/// is `odd`. Row and column `i` is the `i`-th such state in increasing order.
pub fn dense_fermion_matrix(f: &FermionOperator, odd: bool, max_modes: usize) -> Result<DMatrix<Complex64>> {
    let n = f.n_modes;
    if n > max_modes || n > 30 {
        return Err(Error::Resource(format!("{n} modes exceed the dense cap of {max_modes}")));
    }
    let states: Vec<usize> = (0..1usize << n).filter(|s| (s.count_ones() % 2 == 1) == odd).collect();
    let mut pos = vec![usize::MAX; 1 << n];
    for (i, &s) in states.iter().enumerate() {
        pos[s] = i;
    }
    let mut m = DMatrix::zeros(states.len(), states.len());
    for (j, &s) in states.iter().enumerate() {
        for t in &f.terms {
            if let Some((a, r)) = apply_factors(&t.factors, s) {
                if pos[r] == usize::MAX {
                    return Err(Error::Parity("operator changes fermion parity".into()));
                }
                m[(pos[r], j)] += t.coeff * a;
            }
        }
    }
    Ok(m)
}

/// Comparison of one parity sector.
#[derive(Clone, Debug, PartialEq)]
pub struct SectorReport {
    pub odd: bool,
    pub encoded_dim: usize,
    pub exact_dim: usize,
    /// Copies of the exact spectrum expected in the encoded sector.
    pub multiplicity: usize,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseReport {
    pub n_qubits: usize,
    pub n_modes: usize,
    pub codespace_dim: usize,
    pub tol: f64,
    pub hermitian: bool,
    pub sectors: Vec<SectorReport>,
    pub algebra: AlgebraReport,
    pub passed: bool,
}

impl fmt::Display for DenseReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "dense check: {} qubits, {} modes, codespace dimension {}",
            self.n_qubits, self.n_modes, self.codespace_dim
        )?;
        for s in &self.sectors {
            writeln!(
                f,
                "  {} sector: encoded dim {}, exact dim {} x{}, max deviation {:.3e} ({})",
                if s.odd { "odd" } else { "even" },
                s.encoded_dim,
                s.exact_dim,
                s.multiplicity,
                s.max_deviation,
                if s.passed { "ok" } else { "FAIL" }
            )?;
        }
        writeln!(
            f,
            "  algebra: {} relations checked, {} violations",
            self.algebra.checked,
            self.algebra.violations.len()
        )?;
        for v in &self.algebra.violations {
            writeln!(f, "    {v}")?;
        }
        if !self.hermitian {
            writeln!(f, "  compiled operator is not Hermitian")?;
        }
        write!(f, "result: {}", if self.passed { "pass" } else { "FAIL" })
    }
}

/// Compiles `f`, restricts it to each parity sector of the codespace and
/// compares spectra with the exact fermionic operator.
///
/// The codespace fixes every loop stabilizer and every virtual vertex operator
/// to `+1`. The encoded parity is the product of the physical vertex operators.
pub fn dense_oracle_check(f: &FermionOperator, enc: &Encoding, tol: f64, max_qubits: usize) -> Result<DenseReport> {
    let q = enc.n_qubits();
    if q > max_qubits {
        return Err(Error::Resource(format!("{q} qubits exceed the dense cap of {max_qubits}")));
    }
    if f.n_modes != enc.n_modes() {
        return Err(Error::Dimension(f.n_modes, enc.n_modes()));
    }
    let h = transform_hamiltonian(f, enc, &RoutingPolicy::Auto)?;
    dense_compare(f, &h, enc, tol, max_qubits)
}

/// Same comparison for an already compiled `h`.
pub fn dense_compare(f: &FermionOperator, h: &PauliSum, enc: &Encoding, tol: f64, max_qubits: usize) -> Result<DenseReport> {
    let q = enc.n_qubits();
    if q > max_qubits {
        return Err(Error::Resource(format!("{q} qubits exceed the dense cap of {max_qubits}")));
    }
    if f.n_modes != enc.n_modes() {
        return Err(Error::Dimension(f.n_modes, enc.n_modes()));
    }
    if h.n_qubits() != q {
        return Err(Error::Dimension(h.n_qubits(), q));
    }
    let hermitian = h.is_real(tol);
    let mut gens: Vec<PauliString> = enc.stabilizers().to_vec();
    gens.extend(enc.virtual_constraints());
    let mut parity = PauliString::identity(q);
    for m in 0..enc.n_modes() {
        parity = &parity * &enc.vertex_operator(enc.mode_vertex(m)?)?;
    }
    let n = f.n_modes;
    let exact_dim = 1usize << (n - 1);
    let mut sectors = Vec::new();
    let mut codespace_dim = 0;
    for odd in [false, true] {
        let mut g = gens.clone();
        g.push(if odd { parity.negate() } else { parity.clone() });
        let cs = Codespace::new(q, &g, max_qubits)?;
        let d = cs.dim();
        codespace_dim += d;
        if d == 0 {
            continue;
        }
        let enc_ev = hermitian_eigenvalues(cs.restrict_sum(h));
        let exact_ev = hermitian_eigenvalues(dense_fermion_matrix(f, odd, max_qubits)?);
        let multiplicity = d / exact_dim;
        let mut report = SectorReport {
            odd,
            encoded_dim: d,
            exact_dim,
            multiplicity,
            max_deviation: f64::INFINITY,
            passed: false,
        };
        if d % exact_dim == 0 {
            let mut want: Vec<f64> = exact_ev.iter().flat_map(|&e| std::iter::repeat_n(e, multiplicity)).collect();
            want.sort_by(f64::total_cmp);
            let dev = want.iter().zip(&enc_ev).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            report.max_deviation = dev;
            report.passed = dev <= tol;
        }
        sectors.push(report);
    }
    let algebra = enc.check_algebra();
    let passed = hermitian && !sectors.is_empty() && sectors.iter().all(|s| s.passed) && algebra.is_ok();
    Ok(DenseReport {
        n_qubits: q,
        n_modes: n,
        codespace_dim,
        tol,
        hermitian,
        sectors,
        algebra,
        passed,
    })
}
