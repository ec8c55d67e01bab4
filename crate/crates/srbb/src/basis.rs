//! Recursive Hermitian-unitary bases of `C^{d x d}` and the standard recursive
//! block basis (SRBB) for `d = 2^n`.
//!
//! Indices are 1-based throughout (`1..=d^2`), pairs `(p, q)` are 1-based with
//! `p < q`. Element `d^2` is always the identity.

use crate::error::{Result, SrbbError};
use crate::linalg::{cis, CMat, C64, ONE};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Sigma1,
    Sigma2,
    DiagonalIz,
    DiagonalRecursive,
    Identity,
}

/// One basis element in structured form. Every element is a signed diagonal
/// plus (for the sigma kinds) a 2x2 Pauli-type block on `pair`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Element {
    pub dim: usize,
    pub index: usize,
    pub kind: Kind,
    pub pair: Option<(usize, usize)>,
    /// Diagonal entries; 0 on the two pair positions of sigma-type elements.
    pub diag_signs: Vec<i8>,
    /// For I/Z diagonal elements: `true` = Z, position 0 = first tensor factor.
    pub iz_word: Option<Vec<bool>>,
}

impl Element {
    pub fn is_diagonal(&self) -> bool {
        self.pair.is_none()
    }

    pub fn dense(&self) -> CMat {
        let mut m = CMat::zeros(self.dim);
        for (i, &s) in self.diag_signs.iter().enumerate() {
            m[(i, i)] = C64::new(s as f64, 0.0);
        }
        if let Some((p, q)) = self.pair {
            let (p, q) = (p - 1, q - 1);
            match self.kind {
                Kind::Sigma1 => {
                    m[(p, q)] = ONE;
                    m[(q, p)] = ONE;
                }
                Kind::Sigma2 => {
                    m[(p, q)] = C64::new(0.0, -1.0);
                    m[(q, p)] = C64::new(0.0, 1.0);
                }
                _ => unreachable!("pair on a diagonal kind"),
            }
        }
        m
    }

    pub fn trace(&self) -> i64 {
        self.diag_signs.iter().map(|&s| s as i64).sum()
    }

    /// The 2x2 action of `exp(i theta B)` on the pair `(p, q)`, row-major.
    fn block_exp(&self, theta: f64) -> [C64; 4] {
        let (c, s) = (theta.cos(), theta.sin());
        match self.kind {
            Kind::Sigma1 => [
                C64::new(c, 0.0),
                C64::new(0.0, s),
                C64::new(0.0, s),
                C64::new(c, 0.0),
            ],
            Kind::Sigma2 => [
                C64::new(c, 0.0),
                C64::new(s, 0.0),
                C64::new(-s, 0.0),
                C64::new(c, 0.0),
            ],
            _ => unreachable!(),
        }
    }

    /// Diagonal phases of `exp(i theta B)`; pair positions hold 1 as a placeholder.
    fn diag_phases(&self, theta: f64) -> Vec<C64> {
        let (e_plus, e_minus) = (cis(theta), cis(-theta));
        self.diag_signs
            .iter()
            .map(|&s| match s {
                1 => e_plus,
                -1 => e_minus,
                _ => ONE,
            })
            .collect()
    }

    /// `exp(i theta B) = cos(theta) I + i sin(theta) B`, built from the structured form.
    pub fn exp(&self, theta: f64) -> CMat {
        let ph = self.diag_phases(theta);
        let mut m = CMat::from_diag(&ph);
        if let Some((p, q)) = self.pair {
            let (p, q) = (p - 1, q - 1);
            let b = self.block_exp(theta);
            m[(p, p)] = b[0];
            m[(p, q)] = b[1];
            m[(q, p)] = b[2];
            m[(q, q)] = b[3];
        }
        m
    }

    /// `m <- exp(i theta B) * m` in O(d^2).
    pub fn apply_exp_left(&self, theta: f64, m: &mut CMat) {
        let d = self.dim;
        let ph = self.diag_phases(theta);
        for (r, &f) in ph.iter().enumerate() {
            if f == ONE {
                continue;
            }
            for c in 0..d {
                m[(r, c)] *= f;
            }
        }
        if let Some((p, q)) = self.pair {
            let (p, q) = (p - 1, q - 1);
            let b = self.block_exp(theta);
            for c in 0..d {
                let (x, y) = (m[(p, c)], m[(q, c)]);
                m[(p, c)] = b[0] * x + b[1] * y;
                m[(q, c)] = b[2] * x + b[3] * y;
            }
        }
    }

    /// `m <- m * exp(i theta B)` in O(d^2).
    pub fn apply_exp_right(&self, theta: f64, m: &mut CMat) {
        let d = self.dim;
        let ph = self.diag_phases(theta);
        for r in 0..d {
            for (c, &f) in ph.iter().enumerate() {
                if f != ONE {
                    m[(r, c)] *= f;
                }
            }
        }
        if let Some((p, q)) = self.pair {
            let (p, q) = (p - 1, q - 1);
            let b = self.block_exp(theta);
            for r in 0..d {
                let (x, y) = (m[(r, p)], m[(r, q)]);
                m[(r, p)] = x * b[0] + y * b[2];
                m[(r, q)] = x * b[1] + y * b[3];
            }
        }
    }
}

/// Pair of the sigma-type element with index `j` in level `q`, where
/// `(q-1)^2 <= j <= q^2 - 2`. Returns `(kind, p)`.
fn level_slot(q: usize, j: usize) -> (Kind, usize) {
    let r = j - (q - 1) * (q - 1);
    let wrap = |k: usize| if k == 0 { q - 1 } else { k };
    if r < q - 1 {
        (Kind::Sigma1, wrap(r))
    } else {
        (Kind::Sigma2, wrap(r - (q - 1)))
    }
}

fn alt_sign(i1: usize) -> i8 {
    if i1 % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Diagonal signs of a sigma-type element on `(p, q)` inside dimension `d`.
fn pair_signs(d: usize, p: usize, q: usize) -> Vec<i8> {
    (1..=d)
        .map(|i| {
            if i == p || i == q {
                0
            } else if i == q - 1 {
                alt_sign(p)
            } else {
                alt_sign(i)
            }
        })
        .collect()
}

/// Diagonal of the recursive diagonal element `q^2 - 1` embedded in dimension `d`.
fn recursive_diag(d: usize, q: usize) -> Vec<i8> {
    let mut v: Vec<i8> = if q == 2 {
        vec![1, -1]
    } else if q % 2 == 0 {
        let h = q / 2 - 1;
        let mut v = vec![1; h];
        v.extend(std::iter::repeat(-1).take(h));
        v.extend([-1, 1]);
        v
    } else {
        let mut v = vec![1; (q + 1) / 2];
        v.extend(std::iter::repeat(-1).take((q - 1) / 2));
        v
    };
    v.extend((q + 1..=d).map(alt_sign));
    v
}

/// Sign of the I/Z word at computational basis index `k` (0-based, first factor is MSB).
pub fn word_sign(word: &[bool], k: usize) -> i8 {
    let n = word.len();
    let mut s = 1;
    for (i, &z) in word.iter().enumerate() {
        if z && (k >> (n - 1 - i)) & 1 == 1 {
            s = -s;
        }
    }
    s
}

fn word_diag(word: &[bool]) -> Vec<i8> {
    (0..1usize << word.len()).map(|k| word_sign(word, k)).collect()
}

/// I/Z word whose MSB-first bit string equals `v`.
pub fn word_from_msb_bits(v: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| (v >> (n - 1 - i)) & 1 == 1).collect()
}

fn generic_element(d: usize, j: usize) -> Element {
    if j == d * d {
        return Element {
            dim: d,
            index: j,
            kind: Kind::Identity,
            pair: None,
            diag_signs: vec![1; d],
            iz_word: None,
        };
    }
    let q = (j as f64).sqrt().floor() as usize + 1;
    // guard against float rounding of the square root
    let q = if (q - 1) * (q - 1) > j { q - 1 } else if q * q <= j { q + 1 } else { q };
    if j == q * q - 1 {
        return Element {
            dim: d,
            index: j,
            kind: Kind::DiagonalRecursive,
            pair: None,
            diag_signs: recursive_diag(d, q),
            iz_word: None,
        };
    }
    let (kind, p) = level_slot(q, j);
    Element { dim: d, index: j, kind, pair: Some((p, q)), diag_signs: pair_signs(d, p, q), iz_word: None }
}

/// Whether `j` is one of the diagonal indices `{l^2 - 1 : 2 <= l <= d} U {d^2}`.
pub fn is_diagonal_index(d: usize, j: usize) -> bool {
    if j == d * d {
        return true;
    }
    let l = ((j + 1) as f64).sqrt().round() as usize;
    l >= 2 && l <= d && l * l == j + 1
}

/// Ordered basis with its dimension.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Basis {
    pub dim: usize,
    pub qubits: Option<usize>,
    pub elements: Vec<Element>,
}

impl Basis {
    /// Element with 1-based index `j`.
    pub fn get(&self, j: usize) -> &Element {
        &self.elements[j - 1]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Recursive basis of `C^{d x d}` for any `d >= 2`.
pub fn build_generic_basis(d: usize) -> Result<Basis> {
    if d < 2 {
        return Err(SrbbError::InvalidDimension(format!("d = {d}, need d >= 2")));
    }
    let elements = (1..=d * d).map(|j| generic_element(d, j)).collect();
    Ok(Basis { dim: d, qubits: None, elements })
}

/// SRBB for `n` qubits: the generic basis of `2^n` with the diagonal indices
/// replaced by I/Z tensor words.
pub fn build_srbb(n: usize) -> Result<Basis> {
    if n < 1 || n > 12 {
        return Err(SrbbError::InvalidDimension(format!("n = {n}, need 1 <= n <= 12")));
    }
    let d = 1usize << n;
    let elements = (1..=d * d).map(|j| srbb_element(n, j)).collect();
    Ok(Basis { dim: d, qubits: Some(n), elements })
}

/// Single SRBB element without building the whole basis.
pub fn srbb_element(n: usize, j: usize) -> Element {
    let d = 1usize << n;
    if j == d * d {
        return generic_element(d, j);
    }
    if is_diagonal_index(d, j) {
        let l = ((j + 1) as f64).sqrt().round() as usize;
        let word = word_from_msb_bits(l - 1, n);
        return Element {
            dim: d,
            index: j,
            kind: Kind::DiagonalIz,
            pair: None,
            diag_signs: word_diag(&word),
            iz_word: Some(word),
        };
    }
    generic_element(d, j)
}

/// SRBB index holding the given (non-identity) I/Z word.
pub fn index_of_word(word: &[bool]) -> usize {
    let v = word.iter().fold(0usize, |acc, &z| (acc << 1) | z as usize);
    if v == 0 {
        let d = 1usize << word.len();
        d * d
    } else {
        (v + 1) * (v + 1) - 1
    }
}

/// Structured form of a non-diagonal element.
pub fn element_pair_and_signs(j: usize, d: usize) -> Result<(Kind, (usize, usize), Vec<i8>)> {
    if j == 0 || j > d * d {
        return Err(SrbbError::IndexOutOfRange(format!("j = {j} for d = {d}")));
    }
    if is_diagonal_index(d, j) {
        return Err(SrbbError::WrongKind(format!("index {j} is diagonal")));
    }
    let e = generic_element(d, j);
    Ok((e.kind, e.pair.unwrap(), e.diag_signs))
}

/// Index of the sigma1-type (`sigma2 = false`) or sigma2-type element on pair `(p, q)`.
pub fn pair_index(p: usize, q: usize, sigma2: bool) -> usize {
    assert!(1 <= p && p < q, "pair must satisfy 1 <= p < q");
    if sigma2 {
        f_index(q, p)
    } else {
        h_index(q, p)
    }
}

/// `chi_m(word) = sum 2^{i-1} chi(A_i)`, position 1 = first tensor factor.
pub fn chi(word: &[bool]) -> usize {
    word.iter().enumerate().map(|(i, &z)| (z as usize) << i).sum()
}

pub fn chi_inv(k: usize, m: usize) -> Result<Vec<bool>> {
    if m >= usize::BITS as usize || k >= (1usize << m) {
        return Err(SrbbError::IndexOutOfRange(format!("k = {k} for word length {m}")));
    }
    Ok((0..m).map(|i| (k >> i) & 1 == 1).collect())
}

fn check_level(n: usize) {
    assert!(n >= 2, "index functions need n >= 2");
}

/// `f_n(k) = (n-1)^2 + (n-1) + (k mod (n-1))`.
pub fn f_index(n: usize, k: usize) -> usize {
    check_level(n);
    (n - 1) * (n - 1) + (n - 1) + k % (n - 1)
}

/// `h_n(k) = (n-1)^2 + (k mod (n-1))`.
pub fn h_index(n: usize, k: usize) -> usize {
    check_level(n);
    (n - 1) * (n - 1) + k % (n - 1)
}

/// `eta^{(j)}_M = M_{jj}` for a +-1 diagonal matrix (1-based `j`).
pub fn eta(m: &CMat, j: usize) -> Result<i8> {
    if !m.is_diagonal(0.0) {
        return Err(SrbbError::WrongKind("eta needs a diagonal matrix".into()));
    }
    if j == 0 || j > m.dim() {
        return Err(SrbbError::IndexOutOfRange(format!("j = {j}")));
    }
    let v = m[(j - 1, j - 1)];
    if v == ONE {
        Ok(1)
    } else if v == -ONE {
        Ok(-1)
    } else {
        Err(SrbbError::WrongKind("diagonal entries must be +-1".into()))
    }
}

/// `prod exp(i c_j U_j)` over diagonal SRBB indices, as a phase vector.
pub fn exp_diag_combination(coeffs: &[(usize, f64)], n: usize) -> Result<Vec<C64>> {
    let d = 1usize << n;
    let mut phase = vec![0.0; d];
    for &(j, c) in coeffs {
        if j == 0 || j > d * d || !is_diagonal_index(d, j) {
            return Err(SrbbError::WrongKind(format!("index {j} is not a diagonal SRBB index")));
        }
        let e = srbb_element(n, j);
        for (ph, &s) in phase.iter_mut().zip(&e.diag_signs) {
            *ph += c * s as f64;
        }
    }
    Ok(phase.into_iter().map(cis).collect())
}

/// Product `prod_k exp(i theta_k U_{j_k})` in the given order (leftmost first).
pub fn product_of_exps(basis: &Basis, factors: &[(usize, f64)]) -> CMat {
    let mut m = CMat::identity(basis.dim);
    for &(j, t) in factors.iter().rev() {
        basis.get(j).apply_exp_left(t, &mut m);
    }
    m
}
