//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own matrix builders.
#![allow(dead_code)]

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use srbb::circuit::{Circuit, Gate};
use srbb::CMat;

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn angles(r: &mut ChaCha8Rng, k: usize) -> Vec<f64> {
    (0..k).map(|_| r.gen_range(-std::f64::consts::PI..std::f64::consts::PI)).collect()
}

pub fn mat(rows: &[&[C]]) -> CMat {
    let d = rows.len();
    CMat::from_rows(d, rows.iter().flat_map(|r| r.iter().copied()).collect())
}

pub fn dist(a: &CMat, b: &CMat) -> f64 {
    a.sub(b).frobenius_norm()
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    let (da, db) = (a.dim(), b.dim());
    CMat::from_fn(da * db, |i, j| a[(i / db, j / db)] * b[(i % db, j % db)])
}

pub fn kron_all(ms: &[CMat]) -> CMat {
    ms.iter().skip(1).fold(ms[0].clone(), |acc, m| kron(&acc, m))
}

pub fn pauli_x() -> CMat {
    mat(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]])
}

pub fn pauli_z() -> CMat {
    mat(&[&[c(1., 0.), c(0., 0.)], &[c(0., 0.), c(-1., 0.)]])
}

pub fn proj(bit: usize) -> CMat {
    let mut m = CMat::zeros(2);
    m[(bit, bit)] = c(1., 0.);
    m
}

/// Gate matrix on `n` qubits from Kronecker products, qubit 1 leftmost.
pub fn gate_matrix(g: &Gate, n: usize) -> CMat {
    let id = CMat::identity(2);
    let single = |q: usize, u: CMat| kron_all(&(1..=n).map(|k| if k == q { u.clone() } else { id.clone() }).collect::<Vec<_>>());
    match *g {
        Gate::Rz { qubit, angle } => single(qubit, CMat::from_diag(&[C::from_polar(1.0, angle), C::from_polar(1.0, -angle)])),
        Gate::Ry { qubit, angle } => {
            let (co, si) = (angle.cos(), angle.sin());
            single(qubit, mat(&[&[c(co, 0.), c(si, 0.)], &[c(-si, 0.), c(co, 0.)]]))
        }
        Gate::Cnot { control, target } => {
            let term = |b: usize| {
                kron_all(
                    &(1..=n)
                        .map(|k| {
                            if k == control {
                                proj(b)
                            } else if k == target && b == 1 {
                                pauli_x()
                            } else {
                                id.clone()
                            }
                        })
                        .collect::<Vec<_>>(),
                )
            };
            term(0).add(&term(1))
        }
    }
}

/// Circuit unitary as the reversed product of Kronecker gate matrices.
pub fn circuit_oracle(circ: &Circuit) -> CMat {
    let mut u = CMat::identity(1 << circ.n);
    for g in &circ.gates {
        u = gate_matrix(g, circ.n).matmul(&u);
    }
    u
}

/// Matrix exponential by scaling and squaring with a degree-24 Taylor series.
pub fn expm(a: &CMat) -> CMat {
    let norm = a.frobenius_norm();
    let s = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a.scale(c(0.5f64.powi(s as i32), 0.));
    let d = a.dim();
    let mut term = CMat::identity(d);
    let mut sum = CMat::identity(d);
    for k in 1..=24 {
        term = term.matmul(&scaled).scale(c(1.0 / k as f64, 0.));
        sum = sum.add(&term);
    }
    for _ in 0..s {
        sum = sum.matmul(&sum);
    }
    sum
}

/// `exp(i theta B)` through the series oracle.
pub fn exp_i(b: &CMat, theta: f64) -> CMat {
    expm(&b.scale(c(0., theta)))
}

/// Rank by Gaussian elimination with partial pivoting on rows of vectors.
pub fn rank(mut rows: Vec<Vec<C>>, tol: f64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).max_by(|&a, &b| rows[a][col].norm().total_cmp(&rows[b][col].norm())) else { break };
        if rows[p][col].norm() < tol {
            continue;
        }
        rows.swap(r, p);
        let pivot = rows[r][col];
        for i in 0..rows.len() {
            if i != r {
                let f = rows[i][col] / pivot;
                if f.norm() > 0.0 {
                    for k in col..cols {
                        let v = rows[r][k];
                        rows[i][k] -= f * v;
                    }
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Permutation matrix swapping 1-based rows `a` and `b`.
pub fn transposition(d: usize, a: usize, b: usize) -> CMat {
    let mut p = CMat::identity(d);
    p[(a - 1, a - 1)] = c(0., 0.);
    p[(b - 1, b - 1)] = c(0., 0.);
    p[(a - 1, b - 1)] = c(1., 0.);
    p[(b - 1, a - 1)] = c(1., 0.);
    p
}

/// Haar-random unitary by QR of a Ginibre matrix (modified Gram-Schmidt).
pub fn haar(d: usize, r: &mut ChaCha8Rng) -> CMat {
    let mut cols: Vec<Vec<C>> = (0..d)
        .map(|_| (0..d).map(|_| c(gauss(r), gauss(r))).collect())
        .collect();
    for k in 0..d {
        for j in 0..k {
            let dot: C = (0..d).map(|i| cols[j][i].conj() * cols[k][i]).sum();
            for i in 0..d {
                let v = cols[j][i];
                cols[k][i] -= dot * v;
            }
        }
        let nrm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[k].iter_mut().for_each(|z| *z /= nrm);
    }
    CMat::from_fn(d, |i, j| cols[j][i])
}

fn gauss(r: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = r.gen_range(f64::EPSILON..1.0);
    let u2: f64 = r.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
