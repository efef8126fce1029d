//! Phase-tracked Pauli algebra in symplectic form.
//!
//! A [`PauliString`] stores `i^phase · ∏_q X_q^{x_q} Z_q^{z_q}` with the phase as an
//! integer mod 4, so products are exact. A [`PauliSum`] keys its terms by the
//! Hermitian product of single-qubit letters (`X`, `Y`, `Z`), which is what the
//! textual `.pauli` format prints.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Coefficients with magnitude below this are dropped from sums.
pub const ZERO_THRESHOLD: f64 = 1e-12;

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Z => (false, true),
            Pauli::Y => (true, true),
        }
    }

    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (false, true) => Pauli::Z,
            (true, true) => Pauli::Y,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'I' => Some(Pauli::I),
            'X' => Some(Pauli::X),
            'Y' => Some(Pauli::Y),
            'Z' => Some(Pauli::Z),
            _ => None,
        }
    }
}

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

/// `i^k` as a complex number.
pub fn i_pow(k: u8) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// An n-qubit Pauli operator `i^phase_exp · X^x Z^z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n_qubits: usize,
    x: Vec<u64>,
    z: Vec<u64>,
    phase: u8,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Self {
        let w = words_for(n_qubits);
        PauliString {
            n_qubits,
            x: vec![0; w],
            z: vec![0; w],
            phase: 0,
        }
    }

    /// Product of single-qubit letters, taken left to right. Each letter is the
    /// Hermitian Pauli matrix, so `Y` contributes its own factor of `i`.
    pub fn from_letters(n_qubits: usize, letters: &[(usize, Pauli)]) -> Self {
        let mut out = PauliString::identity(n_qubits);
        for &(q, p) in letters {
            assert!(q < n_qubits, "qubit {q} out of range for {n_qubits} qubits");
            out = &out * &PauliString::single(n_qubits, q, p);
        }
        out
    }

    pub fn single(n_qubits: usize, qubit: usize, p: Pauli) -> Self {
        let mut s = PauliString::identity(n_qubits);
        let (xb, zb) = p.bits();
        s.set_bits(qubit, xb, zb);
        if p == Pauli::Y {
            s.phase = 1;
        }
        s
    }

    pub fn x(n_qubits: usize, q: usize) -> Self {
        Self::single(n_qubits, q, Pauli::X)
    }

    pub fn y(n_qubits: usize, q: usize) -> Self {
        Self::single(n_qubits, q, Pauli::Y)
    }

    pub fn z(n_qubits: usize, q: usize) -> Self {
        Self::single(n_qubits, q, Pauli::Z)
    }

    /// Builds from raw symplectic bits and phase exponent.
    pub fn from_bits(n_qubits: usize, x_bits: &[bool], z_bits: &[bool], phase_exp: u8) -> Result<Self> {
        if x_bits.len() != n_qubits {
            return Err(Error::Dimension(n_qubits, x_bits.len()));
        }
        if z_bits.len() != n_qubits {
            return Err(Error::Dimension(n_qubits, z_bits.len()));
        }
        let mut s = PauliString::identity(n_qubits);
        for q in 0..n_qubits {
            s.set_bits(q, x_bits[q], z_bits[q]);
        }
        s.phase = phase_exp % 4;
        Ok(s)
    }

    fn set_bits(&mut self, q: usize, xb: bool, zb: bool) {
        let (w, b) = (q / 64, q % 64);
        let mask = 1u64 << b;
        if xb {
            self.x[w] |= mask;
        } else {
            self.x[w] &= !mask;
        }
        if zb {
            self.z[w] |= mask;
        } else {
            self.z[w] &= !mask;
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn phase_exp(&self) -> u8 {
        self.phase
    }

    pub fn x_bit(&self, q: usize) -> bool {
        (self.x[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn z_bit(&self, q: usize) -> bool {
        (self.z[q / 64] >> (q % 64)) & 1 == 1
    }

    pub fn x_words(&self) -> &[u64] {
        &self.x
    }

    pub fn z_words(&self) -> &[u64] {
        &self.z
    }

    pub fn letter(&self, q: usize) -> Pauli {
        Pauli::from_bits(self.x_bit(q), self.z_bit(q))
    }

    /// Number of qubits acted on nontrivially.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn is_identity(&self) -> bool {
        self.weight() == 0
    }

    /// Qubits in the support, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n_qubits)
            .filter(|&q| self.x_bit(q) || self.z_bit(q))
            .collect()
    }

    /// Non-identity letters in qubit order.
    pub fn letters(&self) -> Vec<(usize, Pauli)> {
        self.support().into_iter().map(|q| (q, self.letter(q))).collect()
    }

    fn y_count(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Exponent `k` with `self = i^k · (product of Hermitian letters)`.
    pub fn letter_phase(&self) -> u8 {
        ((self.phase as usize + 4 - self.y_count() % 4) % 4) as u8
    }

    /// Same bits with the phase chosen so the operator is the Hermitian letter product.
    pub fn hermitian_form(&self) -> PauliString {
        let mut out = self.clone();
        out.phase = (self.y_count() % 4) as u8;
        out
    }

    pub fn checked_mul(&self, other: &PauliString) -> Result<PauliString> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension(self.n_qubits, other.n_qubits));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &PauliString) -> PauliString {
        // X^a Z^b X^c Z^d = (-1)^{b·c} X^{a+c} Z^{b+d}
        let mut sign = 0u32;
        let mut x = Vec::with_capacity(self.x.len());
        let mut z = Vec::with_capacity(self.z.len());
        for i in 0..self.x.len() {
            sign += (self.z[i] & other.x[i]).count_ones();
            x.push(self.x[i] ^ other.x[i]);
            z.push(self.z[i] ^ other.z[i]);
        }
        let phase = ((self.phase as u32 + other.phase as u32 + 2 * (sign % 2)) % 4) as u8;
        PauliString {
            n_qubits: self.n_qubits,
            x,
            z,
            phase,
        }
    }

    pub fn commutes_with(&self, other: &PauliString) -> Result<bool> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::Dimension(self.n_qubits, other.n_qubits));
        }
        Ok(self.commutes_unchecked(other))
    }

    pub(crate) fn commutes_unchecked(&self, other: &PauliString) -> bool {
        let mut c = 0u32;
        for i in 0..self.x.len() {
            c += ((self.x[i] & other.z[i]) ^ (self.z[i] & other.x[i])).count_ones();
        }
        c.is_multiple_of(2)
    }

    /// Equal to its adjoint: phase parity matches the number of `Y` positions.
    pub fn is_hermitian(&self) -> bool {
        (self.phase as usize) % 2 == self.y_count() % 2
    }

    /// Whether `self · self = +I`.
    pub fn squares_to_identity(&self) -> bool {
        let sq = self.mul_unchecked(self);
        sq.phase == 0
    }

    pub fn adjoint(&self) -> PauliString {
        // (i^k X^x Z^z)† = (-i)^k Z^z X^x = (-i)^k (-1)^{#Y} X^x Z^z
        let k = (4 - self.phase % 4) % 4 + 2 * (self.y_count() % 2) as u8;
        let mut out = self.clone();
        out.phase = k % 4;
        out
    }

    /// Multiplies the global phase by `i^k`.
    pub fn times_i(&self, k: u8) -> PauliString {
        let mut out = self.clone();
        out.phase = (self.phase + k) % 4;
        out
    }

    pub fn negate(&self) -> PauliString {
        self.times_i(2)
    }

    /// Places a local operator at `offset` inside a register of `n_total` qubits.
    pub fn embed(&self, n_total: usize, offset: usize) -> PauliString {
        assert!(offset + self.n_qubits <= n_total);
        let mut out = PauliString::identity(n_total);
        for q in self.support() {
            out.set_bits(offset + q, self.x_bit(q), self.z_bit(q));
        }
        out.phase = self.phase;
        out
    }

    /// Concatenated `x|z` words, for GF(2) linear algebra.
    pub fn symplectic(&self) -> Vec<u64> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.z);
        v
    }

    /// Applies the operator to computational basis state `b` (qubit q = bit q).
    /// Returns the target index and the amplitude exponent `k` of `i^k`.
    pub fn apply_to_basis(&self, b: usize) -> (usize, u8) {
        debug_assert!(self.n_qubits <= 63);
        let x = self.x.first().copied().unwrap_or(0) as usize;
        let z = self.z.first().copied().unwrap_or(0) as usize;
        let sign = ((z & b).count_ones() % 2) as u8;
        (b ^ x, (self.phase + 2 * sign) % 4)
    }

    /// Ordering key for deterministic output: weight, then letters.
    pub fn sort_key(&self) -> (usize, Vec<(usize, Pauli)>) {
        (self.weight(), self.letters())
    }

    /// Parses one `.pauli` term line into a coefficient and Hermitian letter
    /// product. A missing coefficient means `1`.
    pub fn parse_term(line: &str, n_qubits: usize) -> Result<(Complex64, PauliString)> {
        let line = line.trim();
        let (coeff, rest) = if line.starts_with('(') {
            let close = line
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unterminated coefficient in `{line}`")))?;
            (parse_coefficient(&line[..=close])?, line[close + 1..].trim())
        } else {
            (Complex64::new(1.0, 0.0), line)
        };
        let mut letters = Vec::new();
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        if tokens.is_empty() {
            return Err(Error::Parse(format!("missing operator in `{line}`")));
        }
        for tok in tokens {
            if tok == "I" {
                continue;
            }
            let mut chars = tok.chars();
            let p = chars
                .next()
                .and_then(Pauli::from_letter)
                .ok_or_else(|| Error::Parse(format!("bad Pauli token `{tok}`")))?;
            let idx: usize = chars
                .as_str()
                .parse()
                .map_err(|_| Error::Parse(format!("bad qubit index in `{tok}`")))?;
            if idx == 0 || idx > n_qubits {
                return Err(Error::Parse(format!(
                    "qubit index {idx} out of range 1..={n_qubits}"
                )));
            }
            letters.push((idx - 1, p));
        }
        Ok((coeff, PauliString::from_letters(n_qubits, &letters)))
    }

    /// Parses a term whose coefficient is a power of `i`.
    pub fn parse(line: &str, n_qubits: usize) -> Result<PauliString> {
        let (c, p) = PauliString::parse_term(line, n_qubits)?;
        let k = (0..4u8)
            .find(|&k| (i_pow(k) - c).norm() < ZERO_THRESHOLD)
            .ok_or_else(|| Error::Parse(format!("coefficient of `{line}` is not a power of i")))?;
        Ok(p.times_i(k))
    }
}

impl Mul for &PauliString {
    type Output = PauliString;

    /// Panics on a qubit-count mismatch; use [`PauliString::checked_mul`] otherwise.
    fn mul(self, rhs: &PauliString) -> PauliString {
        assert_eq!(self.n_qubits, rhs.n_qubits, "Pauli size mismatch");
        self.mul_unchecked(rhs)
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString[{}q]({})", self.n_qubits, self)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(f, i_pow(self.letter_phase()), self)
    }
}

pub(crate) fn format_f64(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}

fn write_term(f: &mut impl fmt::Write, c: Complex64, p: &PauliString) -> fmt::Result {
    write!(f, "({},{})", format_f64(c.re), format_f64(c.im))?;
    let letters = p.letters();
    if letters.is_empty() {
        write!(f, " I")?;
    }
    for (q, l) in letters {
        write!(f, " {}{}", l.letter(), q + 1)?;
    }
    Ok(())
}

fn parse_coefficient(s: &str) -> Result<Complex64> {
    let inner = s
        .trim()
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("bad coefficient `{s}`")))?;
    let (re, im) = inner
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("bad coefficient `{s}`")))?;
    let re: f64 = re
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad real part in `{s}`")))?;
    let im: f64 = im
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad imaginary part in `{s}`")))?;
    Ok(Complex64::new(re, im))
}

/// A linear combination of Hermitian Pauli products with complex coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_qubits: usize,
    terms: HashMap<(Vec<u64>, Vec<u64>), Complex64>,
}

impl PauliSum {
    pub fn new(n_qubits: usize) -> Self {
        PauliSum {
            n_qubits,
            terms: HashMap::new(),
        }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · p`; the phase of `p` is folded into the coefficient.
    pub fn accumulate(&mut self, c: Complex64, p: &PauliString) -> Result<()> {
        if p.n_qubits != self.n_qubits {
            return Err(Error::Dimension(self.n_qubits, p.n_qubits));
        }
        let c = c * i_pow(p.letter_phase());
        let key = (p.x.clone(), p.z.clone());
        let entry = self.terms.entry(key.clone()).or_insert(Complex64::new(0.0, 0.0));
        *entry += c;
        if entry.norm() < ZERO_THRESHOLD {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn add_sum(&mut self, other: &PauliSum) -> Result<()> {
        for (p, c) in other.iter() {
            self.accumulate(c, &p)?;
        }
        Ok(())
    }

    /// Coefficient of the Hermitian letter product with the bits of `p`.
    pub fn coefficient(&self, p: &PauliString) -> Complex64 {
        self.terms
            .get(&(p.x.clone(), p.z.clone()))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Terms as (Hermitian letter product, coefficient), in deterministic order.
    pub fn iter(&self) -> impl Iterator<Item = (PauliString, Complex64)> + '_ {
        let mut v: Vec<(PauliString, Complex64)> = self
            .terms
            .iter()
            .map(|((x, z), c)| {
                let p = PauliString {
                    n_qubits: self.n_qubits,
                    x: x.clone(),
                    z: z.clone(),
                    phase: 0,
                }
                .hermitian_form();
                (p, *c)
            })
            .collect();
        v.sort_by_key(|a| a.0.sort_key());
        v.into_iter()
    }

    /// Whether every coefficient is real within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.terms.values().all(|c| c.im.abs() <= tol)
    }

    pub fn approx_eq(&self, other: &PauliSum, tol: f64) -> bool {
        if self.n_qubits != other.n_qubits {
            return false;
        }
        let keys = self.terms.keys().chain(other.terms.keys());
        for k in keys {
            let a = self.terms.get(k).copied().unwrap_or_default();
            let b = other.terms.get(k).copied().unwrap_or_default();
            if (a - b).norm() > tol {
                return false;
            }
        }
        true
    }

    /// `.pauli` text: a `# qubits` header and one term per line.
    pub fn to_text(&self) -> String {
        let mut s = format!("# qubits {}\n", self.n_qubits);
        for (p, c) in self.iter() {
            write_term(&mut s, c, &p).expect("writing to a String cannot fail");
            s.push('\n');
        }
        s
    }

    /// Parses `.pauli` text. The qubit count comes from the `# qubits` header,
    /// then from `n_qubits`, then from the largest index mentioned.
    pub fn from_text(text: &str, n_qubits: Option<usize>) -> Result<PauliSum> {
        let mut header = None;
        let mut lines = Vec::new();
        for line in text.lines() {
            let t = line.trim();
            if t.is_empty() {
                continue;
            }
            if let Some(rest) = t.strip_prefix('#') {
                let mut it = rest.split_whitespace();
                if it.next() == Some("qubits") {
                    if let Some(v) = it.next() {
                        header = Some(v.parse::<usize>().map_err(|_| {
                            Error::Parse(format!("bad qubit header `{t}`"))
                        })?);
                    }
                }
                continue;
            }
            lines.push(t);
        }
        let n = match header.or(n_qubits) {
            Some(n) => n,
            None => lines
                .iter()
                .flat_map(|l| l.split_whitespace().skip(1))
                .filter_map(|tok| tok.get(1..).and_then(|d| d.parse::<usize>().ok()))
                .max()
                .unwrap_or(0),
        };
        let mut sum = PauliSum::new(n);
        for l in lines {
            let (c, p) = PauliString::parse_term(l, n)?;
            sum.accumulate(c, &p)?;
        }
        Ok(sum)
    }
}

/// Incremental GF(2) row echelon form over symplectic vectors, remembering
/// which inserted generators make up each row.
#[derive(Clone, Debug, Default)]
pub struct Gf2Span {
    rows: Vec<(Vec<u64>, Vec<u64>, usize)>,
    inserted: usize,
}

fn lowest_bit(v: &[u64]) -> Option<usize> {
    v.iter()
        .enumerate()
        .find(|(_, w)| **w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

fn bit(v: &[u64], b: usize) -> bool {
    (v[b / 64] >> (b % 64)) & 1 == 1
}

fn xor_into(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x ^= y;
    }
}

impl Gf2Span {
    pub fn new() -> Self {
        Self::default()
    }

    fn reduce(&self, v: &mut Vec<u64>, combo: &mut Vec<u64>) {
        for (row, rc, pivot) in &self.rows {
            if bit(v, *pivot) {
                xor_into(v, row);
                if combo.len() < rc.len() {
                    combo.resize(rc.len(), 0);
                }
                xor_into(combo, rc);
            }
        }
    }

    /// Inserts a vector; returns true if it increased the rank.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let idx = self.inserted;
        self.inserted += 1;
        let mut v = v.to_vec();
        let mut combo = vec![0u64; self.inserted.div_ceil(64)];
        combo[idx / 64] |= 1 << (idx % 64);
        self.reduce(&mut v, &mut combo);
        match lowest_bit(&v) {
            Some(p) => {
                self.rows.push((v, combo, p));
                true
            }
            None => false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Indices of inserted generators whose sum is `target`, if it is in the span.
    pub fn solve(&self, target: &[u64]) -> Option<Vec<usize>> {
        let mut v = target.to_vec();
        let mut combo = vec![0u64; self.inserted.div_ceil(64).max(1)];
        self.reduce(&mut v, &mut combo);
        if lowest_bit(&v).is_some() {
            return None;
        }
        Some((0..self.inserted).filter(|&i| bit(&combo, i)).collect())
    }
}

/// GF(2) rank of the symplectic vectors of `ops`.
pub fn symplectic_rank(ops: &[PauliString]) -> usize {
    let mut span = Gf2Span::new();
    for p in ops {
        span.insert(&p.symplectic());
    }
    span.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_and_single_qubit_products() {
        let x = PauliString::x(1, 0);
        let z = PauliString::z(1, 0);
        let xx = &x * &x;
        assert!(xx.is_identity());
        assert_eq!(xx.phase_exp(), 0);
        // XZ = -iY
        let xz = &x * &z;
        assert_eq!(xz.letter(0), Pauli::Y);
        assert_eq!(xz.phase_exp(), 0);
        assert_eq!(xz, PauliString::y(1, 0).times_i(3));
    }

    #[test]
    fn commutation_examples() {
        let x1 = PauliString::x(2, 0);
        let z2 = PauliString::z(2, 1);
        let z1 = PauliString::z(2, 0);
        assert!(x1.commutes_with(&z2).unwrap());
        assert!(!x1.commutes_with(&z1).unwrap());
        let a = PauliString::from_letters(2, &[(0, Pauli::X), (1, Pauli::Z)]);
        let b = PauliString::from_letters(2, &[(0, Pauli::Z), (1, Pauli::X)]);
        assert!(a.commutes_with(&b).unwrap());
        assert!(matches!(
            x1.commutes_with(&PauliString::x(3, 0)),
            Err(Error::Dimension(2, 3))
        ));
    }

    #[test]
    fn weights() {
        assert_eq!(PauliString::identity(5).weight(), 0);
        let p = PauliString::from_letters(3, &[(0, Pauli::X), (1, Pauli::Z), (2, Pauli::Y)]);
        assert_eq!(p.weight(), 3);
        let zs: Vec<_> = (0..7).map(|q| (q, Pauli::Z)).collect();
        assert_eq!(PauliString::from_letters(7, &zs).weight(), 7);
    }

    #[test]
    fn hermiticity() {
        let y = PauliString::y(1, 0);
        assert_eq!(y.phase_exp(), 1);
        assert!(y.is_hermitian());
        assert!(!PauliString::x(1, 0).times_i(1).is_hermitian());
        let yx = PauliString::from_letters(2, &[(0, Pauli::Y), (1, Pauli::X)]).times_i(1);
        assert!(!yx.is_hermitian());
        assert!(y.squares_to_identity());
    }

    #[test]
    fn accumulate_and_cancel() {
        let x = PauliString::x(2, 0);
        let mut s = PauliSum::new(2);
        s.accumulate(Complex64::new(0.5, 0.0), &x).unwrap();
        s.accumulate(Complex64::new(0.5, 0.0), &x).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s.coefficient(&x) - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        s.accumulate(Complex64::new(-1.0, 0.0), &x).unwrap();
        assert!(s.is_empty());
        assert!(s.accumulate(Complex64::new(1.0, 0.0), &PauliString::x(3, 0)).is_err());
    }

    #[test]
    fn accumulate_folds_phase() {
        // X·Z = -iY, so accumulating it with coefficient 1 stores -i on Y.
        let xz = &PauliString::x(1, 0) * &PauliString::z(1, 0);
        let mut s = PauliSum::new(1);
        s.accumulate(Complex64::new(1.0, 0.0), &xz).unwrap();
        let (p, c) = s.iter().next().unwrap();
        assert_eq!(p, PauliString::y(1, 0));
        assert!((c - Complex64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn text_format() {
        let p = PauliString::from_letters(3, &[(0, Pauli::X), (1, Pauli::Z), (2, Pauli::Y)]);
        assert_eq!(p.to_string(), "(1,0) X1 Z2 Y3");
        assert_eq!(p.negate().to_string(), "(-1,0) X1 Z2 Y3");
        assert_eq!(PauliString::identity(2).to_string(), "(1,0) I");
        let back = PauliString::parse("(-1,0) X1 Z2 Y3", 3).unwrap();
        assert_eq!(back, p.negate());
        let (c, q) = PauliString::parse_term("(0.5,0) X1 Z2 Y3", 3).unwrap();
        assert_eq!(c, Complex64::new(0.5, 0.0));
        assert_eq!(q, p);
        assert!(PauliString::parse_term("(0.5,0) X4", 3).is_err());
        assert!(PauliString::parse_term("0.5 X1", 3).is_err());
    }

    #[test]
    fn sum_text_round_trip() {
        let mut s = PauliSum::new(4);
        s.accumulate(Complex64::new(0.5, 0.0), &PauliString::from_letters(4, &[(0, Pauli::X), (1, Pauli::X)]))
            .unwrap();
        s.accumulate(Complex64::new(-0.25, 1.5), &PauliString::y(4, 3)).unwrap();
        s.accumulate(Complex64::new(2.0, 0.0), &PauliString::identity(4)).unwrap();
        let text = s.to_text();
        assert_eq!(text, "# qubits 4\n(2,0) I\n(-0.25,1.5) Y4\n(0.5,0) X1 X2\n");
        let back = PauliSum::from_text(&text, None).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn gf2_span_solves() {
        let a = PauliString::from_letters(3, &[(0, Pauli::X), (1, Pauli::X)]);
        let b = PauliString::from_letters(3, &[(1, Pauli::Z), (2, Pauli::Z)]);
        let c = &a * &b;
        let mut span = Gf2Span::new();
        assert!(span.insert(&a.symplectic()));
        assert!(span.insert(&b.symplectic()));
        assert!(!span.insert(&c.symplectic()));
        assert_eq!(span.rank(), 2);
        assert_eq!(span.solve(&c.symplectic()), Some(vec![0, 1]));
        assert_eq!(span.solve(&PauliString::x(3, 2).symplectic()), None);
    }

    #[test]
    fn embed_preserves_phase() {
        let y = PauliString::y(1, 0);
        let e = y.embed(4, 2);
        assert_eq!(e.letter(2), Pauli::Y);
        assert!(e.is_hermitian());
        assert_eq!(e.weight(), 1);
    }

    #[test]
    fn adjoint_is_inverse() {
        let p = PauliString::from_letters(3, &[(0, Pauli::Y), (2, Pauli::X)]).times_i(1);
        let prod = &p * &p.adjoint();
        assert!(prod.is_identity());
        assert_eq!(prod.phase_exp(), 0);
    }
}
