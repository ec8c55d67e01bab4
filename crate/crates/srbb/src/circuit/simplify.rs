//! Peephole pass: cancels identical CNOT pairs and merges same-axis rotations
//! on one qubit, looking through gates they commute with.

use super::gate::{Circuit, Gate};

/// Conservative commutation test for two gates.
pub fn commutes(a: &Gate, b: &Gate) -> bool {
    use Gate::*;
    match (*a, *b) {
        (Cnot { control: c1, target: t1 }, Cnot { control: c2, target: t2 }) => c1 != t2 && t1 != c2,
        (Rz { qubit, .. }, Cnot { target, .. }) | (Cnot { target, .. }, Rz { qubit, .. }) => qubit != target,
        (Ry { qubit, .. }, Cnot { control, target }) | (Cnot { control, target }, Ry { qubit, .. }) => {
            qubit != control && qubit != target
        }
        (Rz { .. }, Rz { .. }) | (Ry { .. }, Ry { .. }) => true,
        (Rz { qubit: q1, .. }, Ry { qubit: q2, .. }) | (Ry { qubit: q2, .. }, Rz { qubit: q1, .. }) => q1 != q2,
    }
}

fn merge(a: &Gate, b: &Gate) -> Option<Gate> {
    match (*a, *b) {
        (Gate::Rz { qubit: q1, angle: x }, Gate::Rz { qubit: q2, angle: y }) if q1 == q2 => Some(Gate::rz(q1, x + y)),
        (Gate::Ry { qubit: q1, angle: x }, Gate::Ry { qubit: q2, angle: y }) if q1 == q2 => Some(Gate::ry(q1, x + y)),
        _ => None,
    }
}

/// One sweep; returns whether anything changed.
fn sweep(gates: &mut Vec<Option<Gate>>) -> bool {
    let mut changed = false;
    for i in 0..gates.len() {
        let Some(g) = gates[i] else { continue };
        for k in i + 1..gates.len() {
            let Some(h) = gates[k] else { continue };
            if g.is_cnot() && g == h {
                gates[i] = None;
                gates[k] = None;
                changed = true;
                break;
            }
            if let Some(m) = merge(&g, &h) {
                gates[i] = None;
                gates[k] = Some(m);
                changed = true;
                break;
            }
            if !commutes(&g, &h) {
                break;
            }
        }
    }
    gates.retain(Option::is_some);
    changed
}

pub fn simplify(c: &Circuit) -> Circuit {
    let mut g: Vec<Option<Gate>> = c.gates.iter().copied().map(Some).collect();
    while sweep(&mut g) {}
    Circuit { n: c.n, gates: g.into_iter().flatten().collect() }
}
