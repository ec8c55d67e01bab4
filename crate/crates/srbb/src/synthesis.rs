//! Exact synthesis of structured unitaries as products of SRBB exponentials,
//! the even/odd transposition grouping, and the one-layer `zeta * Psi * Phi` product.

use crate::basis::{f_index, h_index, index_of_word, srbb_element, word_from_msb_bits};
use crate::error::{Result, SrbbError};
use crate::linalg::{arg, cis, fwht, CMat, C64, ONE};
use serde::{Deserialize, Serialize};

/// Identity-off-the-pair unitary with a 2x2 block on `pair` and an overall phase.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelUnitary {
    pub n: usize,
    pub pair: (usize, usize),
    pub block: [C64; 4],
    pub global_phase: f64,
}

impl TwoLevelUnitary {
    pub fn dense(&self) -> CMat {
        let d = 1usize << self.n;
        let mut m = CMat::identity(d);
        let (p, q) = (self.pair.0 - 1, self.pair.1 - 1);
        m[(p, p)] = self.block[0];
        m[(p, q)] = self.block[1];
        m[(q, p)] = self.block[2];
        m[(q, q)] = self.block[3];
        m.scale(cis(self.global_phase))
    }
}

/// `e^{i alpha} * prod(left) * exp(i t U_l) * prod(right)`, factors as `(index, angle)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoLevelSynthesis {
    pub n: usize,
    pub left: Vec<(usize, f64)>,
    pub middle: (usize, f64),
    pub right: Vec<(usize, f64)>,
    pub global_phase: f64,
}

impl TwoLevelSynthesis {
    pub fn factors(&self) -> Vec<(usize, f64)> {
        let mut f = self.left.clone();
        f.push(self.middle);
        f.extend_from_slice(&self.right);
        f
    }

    pub fn reconstruct(&self) -> CMat {
        product_of_srbb_exps(self.n, &self.factors()).scale(cis(self.global_phase))
    }
}

fn unit_or_one(z: C64, tol: f64) -> C64 {
    let r = z.norm();
    if r > tol {
        z / r
    } else {
        ONE
    }
}

/// Splits a real phase vector over `2^m` diagonal positions into I/Z word
/// coefficients: `phases[k] = c_0 + sum_{v>0} c_v (-1)^{popcount(v & k)}`.
pub fn phases_to_word_coeffs(phases: &[f64]) -> Vec<f64> {
    let mut c = phases.to_vec();
    fwht(&mut c);
    let d = phases.len() as f64;
    c.iter_mut().for_each(|v| *v /= d);
    c
}

/// Inverse of [`phases_to_word_coeffs`].
pub fn word_coeffs_to_phases(coeffs: &[f64]) -> Vec<f64> {
    let mut p = coeffs.to_vec();
    fwht(&mut p);
    p
}

/// Diagonal `diag(e^{i phases})` as SRBB factors plus a leftover identity phase.
fn diag_to_factors(n: usize, phases: &[f64]) -> (Vec<(usize, f64)>, f64) {
    let c = phases_to_word_coeffs(phases);
    let factors = (1..c.len()).map(|v| (index_of_word(&word_from_msb_bits(v, n)), c[v])).collect();
    (factors, c[0])
}

/// Exact synthesis of a 2-level unitary: `T = D1 * exp(i t U_l) * D2` with
/// `U_l` the sigma2-type element on the target pair and `D1`, `D2` products of
/// diagonal I/Z exponentials.
pub fn synth_two_level(target: &TwoLevelUnitary) -> Result<TwoLevelSynthesis> {
    let n = target.n;
    if n < 1 || n > 12 {
        return Err(SrbbError::InvalidDimension(format!("n = {n}")));
    }
    let d = 1usize << n;
    let (p1, q1) = target.pair;
    if !(1 <= p1 && p1 < q1 && q1 <= d) {
        return Err(SrbbError::IndexOutOfRange(format!("pair ({p1}, {q1}) for d = {d}")));
    }
    let m = target.dense();
    let defect = m.unitarity_defect();
    if defect > 1e-8 {
        return Err(SrbbError::NotUnitary(defect));
    }
    let (p, q) = (p1 - 1, q1 - 1);
    let (m00, m01, m10, m11) = (m[(p, p)], m[(p, q)], m[(q, p)], m[(q, q)]);
    let mut t = m01.norm().atan2(m00.norm());
    let tol = 1e-14;

    let xp = unit_or_one(m00, tol);
    let yp = ONE;
    let (mut yq, mut xq) = if m01.norm() > tol {
        let yq = unit_or_one(m01, tol) / xp;
        (yq, -unit_or_one(m10, tol))
    } else {
        (ONE, unit_or_one(m11, tol))
    };
    // t -> -t with both q phases negated is the same matrix; keep the q phases small
    if yq.re < 0.0 {
        t = -t;
        yq = -yq;
        xq = -xq;
    }

    let l = f_index(q1, p1);
    let mid = srbb_element(n, l);
    let mut left = vec![0.0; d];
    let mut right = vec![0.0; d];
    for k in 0..d {
        if k == p {
            left[k] = arg(xp);
            right[k] = arg(yp);
        } else if k == q {
            left[k] = arg(xq);
            right[k] = arg(yq);
        } else {
            left[k] = arg(m[(k, k)]) - t * mid.diag_signs[k] as f64;
        }
    }
    let (lf, a1) = diag_to_factors(n, &left);
    let (rf, a2) = diag_to_factors(n, &right);
    Ok(TwoLevelSynthesis { n, left: lf, middle: (l, t), right: rf, global_phase: a1 + a2 })
}

/// `prod_k exp(i theta_k U_{j_k})` for the SRBB on `n` qubits, leftmost factor first.
pub fn product_of_srbb_exps(n: usize, factors: &[(usize, f64)]) -> CMat {
    let mut m = CMat::identity(1 << n);
    for &(j, t) in factors.iter().rev() {
        srbb_element(n, j).apply_exp_left(t, &mut m);
    }
    m
}

/// `Rz(alpha) Ry(gamma) Rz(beta)` as a 2x2 row-major block.
pub fn zyz_block(alpha: f64, beta: f64, gamma: f64) -> [C64; 4] {
    let (c, s) = (gamma.cos(), gamma.sin());
    [
        cis(alpha + beta) * c,
        cis(alpha - beta) * s,
        -cis(-(alpha - beta)) * s,
        cis(-(alpha + beta)) * c,
    ]
}

/// ZYZ angles `(alpha, beta, gamma)` of an SU(2) block.
pub fn zyz_angles(b: &[C64; 4]) -> (f64, f64, f64) {
    let gamma = b[1].norm().atan2(b[0].norm());
    let tol = 1e-14;
    let sum = if b[0].norm() > tol { arg(b[0]) } else { 0.0 };
    let diff = if b[1].norm() > tol { arg(b[1]) } else { 0.0 };
    ((sum + diff) / 2.0, (sum - diff) / 2.0, gamma)
}

/// Block-diagonal matrix of `2^{n-1}` SU(2) blocks in ZYZ form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MnZyz {
    pub n: usize,
    /// `(alpha_j, beta_j, gamma_j)` per block.
    pub blocks: Vec<(f64, f64, f64)>,
}

impl MnZyz {
    pub fn identity(n: usize) -> Self {
        MnZyz { n, blocks: vec![(0.0, 0.0, 0.0); 1 << (n - 1)] }
    }

    pub fn dense(&self) -> CMat {
        let mut m = CMat::zeros(1 << self.n);
        for (k, &(a, b, g)) in self.blocks.iter().enumerate() {
            let u = zyz_block(a, b, g);
            let i = 2 * k;
            m[(i, i)] = u[0];
            m[(i, i + 1)] = u[1];
            m[(i + 1, i)] = u[2];
            m[(i + 1, i + 1)] = u[3];
        }
        m
    }

    pub fn alphas(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.0).collect()
    }

    pub fn betas(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.1).collect()
    }

    pub fn gammas(&self) -> Vec<f64> {
        self.blocks.iter().map(|b| b.2).collect()
    }

    /// Reads blocks off a block-diagonal matrix whose 2x2 blocks are SU(2).
    pub fn from_matrix(m: &CMat) -> Result<Self> {
        let d = m.dim();
        if d < 2 || !d.is_power_of_two() {
            return Err(SrbbError::InvalidDimension(format!("d = {d}")));
        }
        let mass = m.off_block_mass();
        if mass > 1e-9 {
            return Err(SrbbError::WrongKind(format!("not block diagonal (off-block mass {mass:.3e})")));
        }
        let blocks = (0..d / 2).map(|k| zyz_angles(&m.block2(k))).collect();
        Ok(MnZyz { n: d.trailing_zeros() as usize, blocks })
    }
}

/// Block-diagonal unitary split into block phases and SU(2) parts:
/// block `k` equals `e^{i phases[k]} * su.blocks[k]`. The phases sum to zero
/// whenever the determinant is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockDiag {
    pub phases: Vec<f64>,
    pub su: MnZyz,
}

impl BlockDiag {
    pub fn from_matrix(m: &CMat) -> Result<Self> {
        let d = m.dim();
        if d < 2 || !d.is_power_of_two() {
            return Err(SrbbError::InvalidDimension(format!("d = {d}")));
        }
        let mass = m.off_block_mass();
        if mass > 1e-9 {
            return Err(SrbbError::WrongKind(format!("not block diagonal (off-block mass {mass:.3e})")));
        }
        let nb = d / 2;
        let mut phases: Vec<f64> = (0..nb)
            .map(|k| {
                let b = m.block2(k);
                arg(b[0] * b[3] - b[1] * b[2]) / 2.0
            })
            .collect();
        // det 1 forces the sum to a multiple of pi; shift it onto block 0
        let total: f64 = phases.iter().sum();
        let k = (total / std::f64::consts::PI).round();
        phases[0] -= k * std::f64::consts::PI;
        let blocks = (0..nb)
            .map(|j| {
                let f = cis(-phases[j]);
                let b = m.block2(j);
                zyz_angles(&[b[0] * f, b[1] * f, b[2] * f, b[3] * f])
            })
            .collect();
        Ok(BlockDiag { phases, su: MnZyz { n: d.trailing_zeros() as usize, blocks } })
    }

    pub fn dense(&self) -> CMat {
        let mut m = self.su.dense();
        let d = m.dim();
        for r in 0..d {
            let f = cis(self.phases[r / 2]);
            for c in 0..d {
                m[(r, c)] *= f;
            }
        }
        m
    }
}

/// Parameters of the factorization
/// `(prod_p exp(i left_p W_p (x) Z)) (prod_j exp(i gamma_j U_{4j^2-2j})) (prod_p exp(i right_p W_p (x) Z))`
/// where `W_p = chi_inv(p, n-1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MzyzSolution {
    pub n: usize,
    pub left: Vec<f64>,
    pub middle: Vec<f64>,
    pub right: Vec<f64>,
}

/// SRBB index of the word `chi_inv(p, n-1) (x) Z`.
pub fn z_suffixed_index(n: usize, p: usize) -> usize {
    let mut word: Vec<bool> = (0..n - 1).map(|i| (p >> i) & 1 == 1).collect();
    word.push(true);
    index_of_word(&word)
}

impl MzyzSolution {
    pub fn factors(&self) -> Vec<(usize, f64)> {
        let n = self.n;
        let mut f: Vec<(usize, f64)> =
            self.left.iter().enumerate().map(|(p, &t)| (z_suffixed_index(n, p), t)).collect();
        f.extend(self.middle.iter().enumerate().map(|(j, &t)| {
            let j = j + 1;
            (4 * j * j - 2 * j, t)
        }));
        f.extend(self.right.iter().enumerate().map(|(p, &t)| (z_suffixed_index(n, p), t)));
        f
    }

    pub fn reconstruct(&self) -> CMat {
        product_of_srbb_exps(self.n, &self.factors())
    }
}

/// Coefficients `t_p` (indexed by `chi`) of `sum_p t_p W_p (x) Z` whose block-`k`
/// Rz angle equals `angles[k]`.
fn mux_angles_to_chi_coeffs(n: usize, angles: &[f64]) -> Vec<f64> {
    let m = n - 1;
    let c = phases_to_word_coeffs(angles);
    // c is keyed by the MSB-first bit string; chi is LSB-first over positions
    let mut out = vec![0.0; angles.len()];
    for (v, &cv) in c.iter().enumerate() {
        let p = (0..m).filter(|&i| (v >> (m - 1 - i)) & 1 == 1).map(|i| 1usize << i).sum::<usize>();
        out[p] = cv;
    }
    out
}

/// Exact SRBB factorization of an MnZYZ matrix.
pub fn mzyz_solve(target: &MnZyz) -> Result<MzyzSolution> {
    let n = target.n;
    if n < 1 || target.blocks.len() != 1 << (n - 1) {
        return Err(SrbbError::LengthMismatch { expected: 1 << n.saturating_sub(1), got: target.blocks.len() });
    }
    let gam = target.gammas();
    let total: f64 = gam.iter().sum();
    let mut before = 0.0;
    let mut a = Vec::with_capacity(gam.len());
    let mut b = Vec::with_capacity(gam.len());
    for &(al, be, g) in &target.blocks {
        let after = total - before - g;
        a.push(al - before);
        b.push(be - after);
        before += g;
    }
    Ok(MzyzSolution {
        n,
        left: mux_angles_to_chi_coeffs(n, &a),
        middle: gam,
        right: mux_angles_to_chi_coeffs(n, &b),
    })
}

/// `exp(i theta_h sigma1) * exp(i theta_f sigma2)` on a pair as
/// `[[e^{-i beta} cos phi, e^{i gamma} sin phi], [-e^{-i gamma} sin phi, e^{i beta} cos phi]]`.
/// Returns `(phi, beta, gamma)`.
pub fn merge_zy(theta_h: f64, theta_f: f64) -> (f64, f64, f64) {
    let (ch, sh) = (theta_h.cos(), theta_h.sin());
    let (cf, sf) = (theta_f.cos(), theta_f.sin());
    let diag = C64::new(ch * cf, -sh * sf);
    let off = C64::new(ch * sf, sh * cf);
    let phi = off.norm().atan2(diag.norm());
    let beta = (sh * sf).atan2(ch * cf);
    let gamma = (sh * cf).atan2(ch * sf);
    (phi, beta, gamma)
}

pub fn merged_block(phi: f64, beta: f64, gamma: f64) -> [C64; 4] {
    let (c, s) = (phi.cos(), phi.sin());
    [cis(-beta) * c, cis(gamma) * s, -cis(-gamma) * s, cis(beta) * c]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// Index map (0-based, involutive) of the even permutation `PiT^e_{n,x}`:
/// if the last qubit is 1, flip qubit `n-j-1` for every set bit `j` of `x`.
pub fn even_perm_map(n: usize, x: usize) -> Vec<usize> {
    (0..1usize << n).map(|v| if v & 1 == 1 { v ^ (x << 1) } else { v }).collect()
}

/// Highest set bit of `x > 0`.
pub fn top_bit(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

/// Index map of the odd permutation: the even map conjugated by the CNOT
/// from qubit `n-m-1` (bit `m+1`) into the last qubit, `m` = top bit of `x`.
pub fn odd_perm_map(n: usize, x: usize) -> Vec<usize> {
    if x == 0 {
        return (0..1usize << n).collect();
    }
    let cbit = 1usize << (top_bit(x) + 1);
    let c = |v: usize| if v & cbit != 0 { v ^ 1 } else { v };
    let e = |v: usize| if v & 1 == 1 { v ^ (x << 1) } else { v };
    (0..1usize << n).map(|v| c(e(c(v)))).collect()
}

pub fn perm_map(n: usize, x: usize, parity: Parity) -> Vec<usize> {
    match parity {
        Parity::Even => even_perm_map(n, x),
        Parity::Odd => odd_perm_map(n, x),
    }
}

/// Permutation matrix of an involutive 0-based index map.
pub fn perm_matrix(map: &[usize]) -> CMat {
    let d = map.len();
    let mut m = CMat::zeros(d);
    for (c, &r) in map.iter().enumerate() {
        m[(r, c)] = ONE;
    }
    m
}

/// 1-based transpositions `(alpha, beta)` of an involution, with `alpha` the
/// even index; sorted by `alpha`.
fn transpositions(map: &[usize]) -> Vec<(usize, usize)> {
    let mut t: Vec<(usize, usize)> = map
        .iter()
        .enumerate()
        .filter(|&(v, &w)| v < w)
        .map(|(v, &w)| {
            let (a, b) = (v + 1, w + 1);
            if a % 2 == 0 {
                (a, b)
            } else {
                (b, a)
            }
        })
        .collect();
    t.sort_unstable();
    t
}

/// Families `T^e_x`, `T^o_x` for `x = 1..2^{n-1}-1` (stored at position `x-1`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TranspositionPartition {
    pub n: usize,
    pub even: Vec<Vec<(usize, usize)>>,
    pub odd: Vec<Vec<(usize, usize)>>,
}

impl TranspositionPartition {
    pub fn family(&self, x: usize, parity: Parity) -> &[(usize, usize)] {
        match parity {
            Parity::Even => &self.even[x - 1],
            Parity::Odd => &self.odd[x - 1],
        }
    }

    pub fn groups(&self) -> usize {
        self.even.len()
    }
}

pub fn build_partition(n: usize) -> Result<TranspositionPartition> {
    if n < 1 || n > 12 {
        return Err(SrbbError::InvalidDimension(format!("n = {n}")));
    }
    let xs = 1..1usize << (n - 1);
    Ok(TranspositionPartition {
        n,
        even: xs.clone().map(|x| transpositions(&even_perm_map(n, x))).collect(),
        odd: xs.map(|x| transpositions(&odd_perm_map(n, x))).collect(),
    })
}

/// The four SRBB indices attached to a transposition.
pub fn group_indices(alpha: usize, beta: usize, parity: Parity) -> [usize; 4] {
    match parity {
        Parity::Even => [
            h_index(beta, alpha - 1),
            f_index(beta, alpha - 1),
            h_index(beta - 1, alpha),
            f_index(beta - 1, alpha),
        ],
        Parity::Odd => [
            h_index(beta, alpha - 1),
            f_index(beta, alpha - 1),
            h_index(beta + 1, alpha),
            f_index(beta + 1, alpha),
        ],
    }
}

/// Indices of group `x`, in product order.
pub fn group_index_list(part: &TranspositionPartition, x: usize, parity: Parity) -> Vec<usize> {
    part.family(x, parity).iter().flat_map(|&(a, b)| group_indices(a, b, parity)).collect()
}

/// `prod exp(...)` over group `x` without the sandwich.
pub fn group_product(n: usize, x: usize, parity: Parity, angles: &[f64]) -> Result<CMat> {
    let part = build_partition(n)?;
    if x == 0 || x >= 1 << (n - 1) {
        return Err(SrbbError::IndexOutOfRange(format!("x = {x} for n = {n}")));
    }
    let idx = group_index_list(&part, x, parity);
    if idx.len() != angles.len() {
        return Err(SrbbError::LengthMismatch { expected: idx.len(), got: angles.len() });
    }
    let f: Vec<(usize, f64)> = idx.into_iter().zip(angles.iter().copied()).collect();
    Ok(product_of_srbb_exps(n, &f))
}

/// `M^e_x = PiT^e_x (prod of the group exponentials) PiT^e_x`, an MnZYZ matrix.
pub fn group_even(n: usize, x: usize, angles: &[f64]) -> Result<CMat> {
    let raw = group_product(n, x, Parity::Even, angles)?;
    Ok(raw.permute_sym(&even_perm_map(n, x)))
}

/// `M^o_x = PiT^o_x (prod of the group exponentials) PiT^o_x`, block diagonal.
pub fn group_odd(n: usize, x: usize, angles: &[f64]) -> Result<CMat> {
    let raw = group_product(n, x, Parity::Odd, angles)?;
    Ok(raw.permute_sym(&odd_perm_map(n, x)))
}

/// Zeta indices `l^2 - 1`, `l = 2..2^n`.
pub fn zeta_indices(n: usize) -> Vec<usize> {
    (2..=1usize << n).map(|l| l * l - 1).collect()
}

/// Leading Psi indices `(2j-1)^2, 4j^2-2j`, `j = 1..2^{n-1}`.
pub fn psi_lead_indices(n: usize) -> Vec<usize> {
    (1..=1usize << (n - 1)).flat_map(|j| [(2 * j - 1) * (2 * j - 1), 4 * j * j - 2 * j]).collect()
}

pub fn psi_indices(n: usize) -> Vec<usize> {
    let part = build_partition(n).expect("valid n");
    let mut v = psi_lead_indices(n);
    for x in 1..1usize << (n - 1) {
        v.extend(group_index_list(&part, x, Parity::Even));
    }
    v
}

pub fn phi_indices(n: usize) -> Vec<usize> {
    let part = build_partition(n).expect("valid n");
    (1..1usize << (n - 1)).flat_map(|x| group_index_list(&part, x, Parity::Odd)).collect()
}

/// Number of angles in one layer, `4^n - 1`.
pub fn layer_param_count(n: usize) -> usize {
    (1usize << (2 * n)) - 1
}

/// Angles of one `zeta * Psi * Phi` layer, keyed by SRBB index in product order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerParams {
    pub n: usize,
    pub zeta: Vec<(usize, f64)>,
    pub psi: Vec<(usize, f64)>,
    pub phi: Vec<(usize, f64)>,
}

impl LayerParams {
    pub fn zeros(n: usize) -> Self {
        Self::from_flat(n, &vec![0.0; layer_param_count(n)]).expect("length matches")
    }

    /// Flat layout: zeta, then psi, then phi, each in product order.
    pub fn from_flat(n: usize, theta: &[f64]) -> Result<Self> {
        if n < 1 || n > 6 {
            return Err(SrbbError::InvalidDimension(format!("n = {n}")));
        }
        if theta.len() != layer_param_count(n) {
            return Err(SrbbError::LengthMismatch { expected: layer_param_count(n), got: theta.len() });
        }
        let (z, p, f) = (zeta_indices(n), psi_indices(n), phi_indices(n));
        let mut it = theta.iter().copied();
        let mut take = |ix: Vec<usize>| ix.into_iter().map(|j| (j, it.next().unwrap())).collect::<Vec<_>>();
        Ok(LayerParams { n, zeta: take(z), psi: take(p), phi: take(f) })
    }

    pub fn to_flat(&self) -> Vec<f64> {
        self.zeta.iter().chain(&self.psi).chain(&self.phi).map(|&(_, t)| t).collect()
    }

    /// All SRBB indices of the flat layout.
    pub fn flat_indices(n: usize) -> Vec<usize> {
        let mut v = zeta_indices(n);
        v.extend(psi_indices(n));
        v.extend(phi_indices(n));
        v
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        let ok = |got: &[(usize, f64)], want: Vec<usize>| {
            got.len() == want.len() && got.iter().zip(&want).all(|(a, b)| a.0 == *b) && got.iter().all(|a| a.1.is_finite())
        };
        if n < 1 || n > 6 || !ok(&self.zeta, zeta_indices(n)) || !ok(&self.psi, psi_indices(n)) || !ok(&self.phi, phi_indices(n)) {
            return Err(SrbbError::Parse(format!("layer parameter keys do not match the {n}-qubit layout")));
        }
        Ok(())
    }

    /// Angle of group `x` (even: from psi, odd: from phi).
    pub fn group_angles(&self, x: usize, parity: Parity) -> Vec<f64> {
        // 2^{n-2} transpositions, four angles each
        let per = 1usize << self.n;
        let start = (x - 1) * per;
        match parity {
            Parity::Even => {
                let off = 1usize << self.n;
                self.psi[off + start..off + start + per].iter().map(|a| a.1).collect()
            }
            Parity::Odd => self.phi[start..start + per].iter().map(|a| a.1).collect(),
        }
    }

    pub fn psi_lead(&self) -> &[(usize, f64)] {
        &self.psi[..1usize << self.n]
    }
}

/// `zeta(Theta_zeta)` as a diagonal matrix.
pub fn assemble_zeta(p: &LayerParams) -> CMat {
    product_of_srbb_exps(p.n, &p.zeta)
}

pub fn assemble_psi(p: &LayerParams) -> CMat {
    let n = p.n;
    let mut m = product_of_srbb_exps(n, p.psi_lead());
    for x in 1..1usize << (n - 1) {
        let g = group_product(n, x, Parity::Even, &p.group_angles(x, Parity::Even)).expect("validated layout");
        m = m.matmul(&g);
    }
    m
}

pub fn assemble_phi(p: &LayerParams) -> CMat {
    let n = p.n;
    let mut m = CMat::identity(1 << n);
    for x in 1..1usize << (n - 1) {
        let g = group_product(n, x, Parity::Odd, &p.group_angles(x, Parity::Odd)).expect("validated layout");
        m = m.matmul(&g);
    }
    m
}

/// `zeta * Psi * Phi` for one layer via the flat product of exponentials.
pub fn assemble_layer(p: &LayerParams) -> CMat {
    let f: Vec<(usize, f64)> = p.zeta.iter().chain(&p.psi).chain(&p.phi).copied().collect();
    product_of_srbb_exps(p.n, &f)
}

/// `prod_l zeta_l Psi_l Phi_l`, first layer leftmost.
pub fn assemble_layers(layers: &[LayerParams]) -> Result<CMat> {
    let first = layers.first().ok_or_else(|| SrbbError::Parse("need at least one layer".into()))?;
    let n = first.n;
    let mut m = CMat::identity(1 << n);
    for l in layers {
        if l.n != n {
            return Err(SrbbError::InvalidDimension("layers disagree on n".into()));
        }
        l.validate()?;
        m = m.matmul(&assemble_layer(l));
    }
    Ok(m)
}
