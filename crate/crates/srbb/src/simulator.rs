//! Dense simulation of gate circuits, used as the verification oracle.

use crate::circuit::{Circuit, Gate};
use crate::error::{Result, SrbbError};
use crate::linalg::{cis, CMat, C64};

pub const DEFAULT_QUBIT_CAP: usize = 10;

/// Applies `g` to the rows of `m` (i.e. `m <- G m`). Each column is a state.
pub fn apply_gate_left(g: &Gate, n: usize, m: &mut CMat) {
    let d = m.dim();
    let bit = |q: usize| 1usize << (n - q);
    match *g {
        Gate::Rz { qubit, angle } => {
            let (a, b) = (cis(angle), cis(-angle));
            let mask = bit(qubit);
            for r in 0..d {
                let f = if r & mask == 0 { a } else { b };
                for c in 0..d {
                    m[(r, c)] *= f;
                }
            }
        }
        Gate::Ry { qubit, angle } => {
            let (co, si) = (angle.cos(), angle.sin());
            let mask = bit(qubit);
            for r0 in (0..d).filter(|r| r & mask == 0) {
                let r1 = r0 | mask;
                for c in 0..d {
                    let (x, y) = (m[(r0, c)], m[(r1, c)]);
                    m[(r0, c)] = x * co + y * si;
                    m[(r1, c)] = y * co - x * si;
                }
            }
        }
        Gate::Cnot { control, target } => {
            let (cm, tm) = (bit(control), bit(target));
            for r0 in (0..d).filter(|r| r & cm != 0 && r & tm == 0) {
                let r1 = r0 | tm;
                for c in 0..d {
                    let t = m[(r0, c)];
                    m[(r0, c)] = m[(r1, c)];
                    m[(r1, c)] = t;
                }
            }
        }
    }
}

/// Applies `g` to a single state vector.
pub fn apply_gate_state(g: &Gate, n: usize, psi: &mut [C64]) {
    let d = psi.len();
    let bit = |q: usize| 1usize << (n - q);
    match *g {
        Gate::Rz { qubit, angle } => {
            let (a, b) = (cis(angle), cis(-angle));
            let mask = bit(qubit);
            for (r, v) in psi.iter_mut().enumerate() {
                *v *= if r & mask == 0 { a } else { b };
            }
        }
        Gate::Ry { qubit, angle } => {
            let (co, si) = (angle.cos(), angle.sin());
            let mask = bit(qubit);
            for r0 in (0..d).filter(|r| r & mask == 0) {
                let r1 = r0 | mask;
                let (x, y) = (psi[r0], psi[r1]);
                psi[r0] = x * co + y * si;
                psi[r1] = y * co - x * si;
            }
        }
        Gate::Cnot { control, target } => {
            let (cm, tm) = (bit(control), bit(target));
            for r0 in (0..d).filter(|r| r & cm != 0 && r & tm == 0) {
                psi.swap(r0, r0 | tm);
            }
        }
    }
}

pub fn circuit_to_unitary_capped(c: &Circuit, cap: usize) -> Result<CMat> {
    if c.n > cap {
        return Err(SrbbError::QubitCap { n: c.n, cap });
    }
    c.validate()?;
    let mut m = CMat::identity(1 << c.n);
    for g in &c.gates {
        apply_gate_left(g, c.n, &mut m);
    }
    Ok(m)
}

/// Dense unitary of a circuit (gates applied left to right).
pub fn circuit_to_unitary(c: &Circuit) -> Result<CMat> {
    circuit_to_unitary_capped(c, DEFAULT_QUBIT_CAP)
}

pub fn frobenius_distance(a: &CMat, b: &CMat) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(SrbbError::LengthMismatch { expected: a.dim(), got: b.dim() });
    }
    Ok(a.sub(b).frobenius_norm())
}

/// `min_phi ||A - e^{i phi} B||_F`, evaluated elementwise at the optimal phase.
pub fn phase_invariant_distance(a: &CMat, b: &CMat) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(SrbbError::LengthMismatch { expected: a.dim(), got: b.dim() });
    }
    let phase = crate::linalg::arg(b.inner(a));
    Ok(a.sub(&b.scale(cis(phase))).frobenius_norm())
}
