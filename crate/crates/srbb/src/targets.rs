//! Named target gates and random unitaries.

use crate::error::{Result, SrbbError};
use crate::linalg::{cis, CMat, C64, ONE, ZERO};
use rand::Rng;
use rand_distr::StandardNormal;

/// Two-qubit gates of the benchmark table.
pub const TABLE1_GATES: [&str; 6] = ["cnot", "swap", "zz", "iswap", "cphase", "qft2"];

fn permutation(perm: &[usize]) -> CMat {
    let d = perm.len();
    CMat::from_fn(d, |r, c| if perm[c] == r { ONE } else { ZERO })
}

/// Quantum Fourier transform on `d` levels.
pub fn qft(d: usize) -> CMat {
    let s = 1.0 / (d as f64).sqrt();
    CMat::from_fn(d, |r, c| cis(2.0 * std::f64::consts::PI * (r * c) as f64 / d as f64) * s)
}

/// Gate by name. Qubit 1 is the most significant bit; `cnot` has control 1, target 2.
pub fn named_target(name: &str) -> Result<CMat> {
    let i = C64::new(0.0, 1.0);
    let m = match name.to_ascii_lowercase().as_str() {
        "cnot" | "cx" => permutation(&[0, 1, 3, 2]),
        "cnot21" => permutation(&[0, 3, 2, 1]),
        "swap" => permutation(&[0, 2, 1, 3]),
        "zz" => CMat::from_diag(&[ONE, -ONE, -ONE, ONE]),
        "cphase" | "cz" => CMat::from_diag(&[ONE, ONE, ONE, -ONE]),
        "iswap" => {
            let mut m = CMat::zeros(4);
            m[(0, 0)] = ONE;
            m[(1, 2)] = i;
            m[(2, 1)] = i;
            m[(3, 3)] = ONE;
            m
        }
        "qft2" => qft(4),
        "qft3" => qft(8),
        "toffoli" | "ccx" => permutation(&[0, 1, 2, 3, 4, 5, 7, 6]),
        other => return Err(SrbbError::Parse(format!("unknown target '{other}'"))),
    };
    Ok(m)
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of R's
/// diagonal removed.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMat {
    let mut cols: Vec<Vec<C64>> = (0..d)
        .map(|_| {
            (0..d)
                .map(|_| C64::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal)))
                .collect()
        })
        .collect();
    for k in 0..d {
        for j in 0..k {
            let (done, rest) = cols.split_at_mut(k);
            let qj = &done[j];
            let proj: C64 = qj.iter().zip(rest[0].iter()).map(|(a, b)| a.conj() * b).sum();
            for (x, q) in rest[0].iter_mut().zip(qj) {
                *x -= proj * q;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols[k].iter_mut().for_each(|z| *z /= norm);
    }
    CMat::from_fn(d, |r, c| cols[c][r])
}

/// `U / det(U)^{1/d}`.
pub fn to_special(u: &CMat) -> CMat {
    let d = u.dim() as f64;
    let ph = crate::linalg::arg(u.det()) / d;
    u.scale(cis(-ph))
}
