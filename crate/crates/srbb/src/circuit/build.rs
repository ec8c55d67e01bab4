use super::gate::{Circuit, Gate};
use crate::error::{Result, SrbbError};
use crate::synthesis::{top_bit, BlockDiag, MnZyz, Parity};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Y,
    Z,
}

impl Axis {
    pub fn gate(self, qubit: usize, angle: f64) -> Gate {
        match self {
            Axis::Y => Gate::ry(qubit, angle),
            Axis::Z => Gate::rz(qubit, angle),
        }
    }
}

/// Gate list of `PiT^e_{n,x}` or `PiT^o_{n,x}`.
pub fn perm_gates(n: usize, x: usize, parity: Parity) -> Vec<Gate> {
    let mut g: Vec<Gate> = (0..n.saturating_sub(1))
        .rev()
        .filter(|&j| (x >> j) & 1 == 1)
        .map(|j| Gate::cnot(n, n - j - 1))
        .collect();
    if parity == Parity::Odd && x > 0 {
        let c = n - top_bit(x) - 1;
        g.insert(0, Gate::cnot(c, n));
        g.push(Gate::cnot(c, n));
    }
    g
}

pub fn perm_circuit(n: usize, x: usize, parity: Parity) -> Result<Circuit> {
    if n < 1 || x >= 1 << (n - 1) {
        return Err(SrbbError::IndexOutOfRange(format!("x = {x} for n = {n}")));
    }
    Ok(Circuit { n, gates: perm_gates(n, x, parity) })
}

/// `exp(i theta W)` for an I/Z word: parity ladder into the last Z position,
/// one Rz, and the mirrored ladder.
pub fn diag_exp_circuit(word: &[bool], theta: f64, n: usize) -> Result<Circuit> {
    if word.len() != n {
        return Err(SrbbError::LengthMismatch { expected: n, got: word.len() });
    }
    let zs: Vec<usize> = (1..=n).filter(|&q| word[q - 1]).collect();
    let Some((&t, rest)) = zs.split_last() else {
        return Err(SrbbError::WrongKind("identity word has no circuit".into()));
    };
    let mut gates: Vec<Gate> = rest.iter().map(|&c| Gate::cnot(c, t)).collect();
    gates.push(Gate::rz(t, theta));
    gates.extend(rest.iter().rev().map(|&c| Gate::cnot(c, t)));
    Ok(Circuit { n, gates })
}

/// Multiplexed rotation on `target`, angle `angles[k]` selected by the control
/// pattern `k` (first control most significant). Normal form: ends with
/// `CNOT(controls[0], target)` whenever there is at least one control.
pub fn mux_gates(controls: &[usize], target: usize, axis: Axis, angles: &[f64]) -> Vec<Gate> {
    assert_eq!(angles.len(), 1 << controls.len(), "need 2^k angles");
    let Some((&c1, inner)) = controls.split_first() else {
        return vec![axis.gate(target, angles[0])];
    };
    let h = angles.len() / 2;
    let (lo, hi) = angles.split_at(h);
    let theta: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| (a + b) / 2.0).collect();
    let phi: Vec<f64> = lo.iter().zip(hi).map(|(a, b)| (a - b) / 2.0).collect();
    let a = mux_gates(inner, target, axis, &theta);
    let b: Vec<Gate> = mux_gates(inner, target, axis, &phi).into_iter().rev().collect();
    join_mux(a, b, c1, target)
}

/// `a, CNOT(c1, t), b, CNOT(c1, t)` with the `CNOT(c2,t) CNOT(c1,t) CNOT(c2,t)` seam
/// collapsed, where `b` is a mirrored multiplexor.
pub fn join_mux(mut a: Vec<Gate>, b: Vec<Gate>, c1: usize, target: usize) -> Vec<Gate> {
    let mut b = b.as_slice();
    if let (Some(x), Some(y)) = (a.last(), b.first()) {
        if x.is_cnot() && x == y {
            a.pop();
            b = &b[1..];
        }
    }
    a.push(Gate::cnot(c1, target));
    a.extend_from_slice(b);
    a.push(Gate::cnot(c1, target));
    a
}

pub fn multiplexed_rotation_circuit(axis: Axis, angles: &[f64], n: usize) -> Result<Circuit> {
    if n < 1 || angles.len() != 1 << (n - 1) {
        return Err(SrbbError::LengthMismatch { expected: 1 << n.saturating_sub(1), got: angles.len() });
    }
    let controls: Vec<usize> = (1..n).collect();
    Ok(Circuit { n, gates: mux_gates(&controls, n, axis, angles) })
}

/// Orientation of the three multiplexors of an MnZYZ circuit (`m` = mirrored,
/// `n` = normal): S = (m, n, m) begins with `CNOT(1, n)`, E = (n, m, n) ends with
/// it, N = (n, m, m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MuxForm {
    S,
    E,
    N,
}

fn concat_cancel(mut a: Vec<Gate>, b: &[Gate]) -> Vec<Gate> {
    let mut b = b;
    if let (Some(x), Some(y)) = (a.last(), b.first()) {
        if x.is_cnot() && x == y {
            a.pop();
            b = &b[1..];
        }
    }
    a.extend_from_slice(b);
    a
}

/// Joins three normal-form multiplexors `Fz(beta), Fy(gamma), Fz(alpha)`.
pub fn compose_mzyz(fz_beta: &[Gate], fy_gamma: &[Gate], fz_alpha: &[Gate], form: MuxForm) -> Vec<Gate> {
    let rev = |g: &[Gate]| g.iter().rev().copied().collect::<Vec<_>>();
    let (a, b, c) = match form {
        MuxForm::S => (rev(fz_beta), fy_gamma.to_vec(), rev(fz_alpha)),
        MuxForm::E => (fz_beta.to_vec(), rev(fy_gamma), fz_alpha.to_vec()),
        MuxForm::N => (fz_beta.to_vec(), rev(fy_gamma), rev(fz_alpha)),
    };
    concat_cancel(concat_cancel(a, &b), &c)
}

/// Normal-form multiplexors of an MnZYZ matrix: `[Fz(beta), Fy(gamma), Fz(alpha)]`.
pub fn mzyz_muxes(m: &MnZyz) -> [Vec<Gate>; 3] {
    let n = m.n;
    let controls: Vec<usize> = (1..n).collect();
    [
        mux_gates(&controls, n, Axis::Z, &m.betas()),
        mux_gates(&controls, n, Axis::Y, &m.gammas()),
        mux_gates(&controls, n, Axis::Z, &m.alphas()),
    ]
}

/// Circuit of an MnZYZ matrix, `3 * 2^{n-1} - 2` CNOTs.
pub fn mzyz_circuit(m: &MnZyz, form: MuxForm) -> Circuit {
    let [b, g, a] = mzyz_muxes(m);
    Circuit { n: m.n, gates: compose_mzyz(&b, &g, &a, form) }
}

/// `diag(e^{i phases[k]})` on qubits `1..=m` (first qubit most significant) as
/// multiplexed Rz gates `F_1, ..., F_m`; returns the gates and the leftover global phase.
pub fn phase_ladder(phases: &[f64]) -> (Vec<Gate>, f64) {
    let m = phases.len().trailing_zeros() as usize;
    assert_eq!(phases.len(), 1 << m, "need 2^m phases");
    let mut cur = phases.to_vec();
    let mut stages = Vec::with_capacity(m);
    for i in (1..=m).rev() {
        let h = cur.len() / 2;
        let r: Vec<f64> = (0..h).map(|k| (cur[2 * k] - cur[2 * k + 1]) / 2.0).collect();
        cur = (0..h).map(|k| (cur[2 * k] + cur[2 * k + 1]) / 2.0).collect();
        stages.push((i, r));
    }
    let mut gates = Vec::new();
    for (i, r) in stages.into_iter().rev() {
        let controls: Vec<usize> = (1..i).collect();
        gates.extend(mux_gates(&controls, i, Axis::Z, &r));
    }
    (gates, cur[0])
}

/// Block-diagonal SU(2^n) unitary: MnZYZ circuit plus a phase ladder on qubits `1..n-1`,
/// `4 * 2^{n-1} - 4` CNOTs.
pub fn block_diag_circuit(bd: &BlockDiag, form: MuxForm) -> Circuit {
    let n = bd.su.n;
    let mut c = mzyz_circuit(&bd.su, form);
    if n >= 2 {
        let (ladder, _) = phase_ladder(&bd.phases);
        c.gates.extend(ladder);
    }
    c
}
