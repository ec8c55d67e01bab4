mod common;

use common::*;
use num_complex::Complex64;
use rand::Rng;
use srbb::circuit::{Circuit, Gate};
use srbb::simulator::*;
use srbb::CMat;

fn random_circuit(n: usize, len: usize, r: &mut rand_chacha::ChaCha8Rng) -> Circuit {
    let gates = (0..len)
        .map(|_| {
            let a = r.gen_range(1..=n);
            match r.gen_range(0..3) {
                0 if n > 1 => {
                    let b = (a % n) + 1;
                    Gate::cnot(a, b)
                }
                1 => Gate::ry(a, r.gen_range(-3.0..3.0)),
                _ => Gate::rz(a, r.gen_range(-3.0..3.0)),
            }
        })
        .collect();
    Circuit { n, gates }
}

#[test]
fn small_examples() {
    assert_eq!(circuit_to_unitary(&Circuit::new(2)).unwrap(), CMat::identity(4));
    let c = Circuit::from_gates(2, vec![Gate::cnot(2, 1)]).unwrap();
    assert_eq!(circuit_to_unitary(&c).unwrap(), transposition(4, 2, 4));
    let t = 0.8;
    let rz = circuit_to_unitary(&Circuit::from_gates(1, vec![Gate::rz(1, t)]).unwrap()).unwrap();
    assert_eq!(rz, CMat::from_diag(&[Complex64::from_polar(1.0, t), Complex64::from_polar(1.0, -t)]));
}

#[test]
fn matches_kronecker_oracle() {
    let mut r = rng(1);
    for n in 1..=5 {
        for _ in 0..5 {
            let c = random_circuit(n, 25, &mut r);
            assert!(dist(&circuit_to_unitary(&c).unwrap(), &circuit_oracle(&c)) < 1e-12);
        }
    }
}

#[test]
fn state_update_agrees_with_unitary_columns() {
    let mut r = rng(2);
    let c = random_circuit(3, 30, &mut r);
    let u = circuit_to_unitary(&c).unwrap();
    for k in 0..8 {
        let mut psi = vec![Complex64::new(0.0, 0.0); 8];
        psi[k] = Complex64::new(1.0, 0.0);
        for g in &c.gates {
            apply_gate_state(g, 3, &mut psi);
        }
        for i in 0..8 {
            assert!((psi[i] - u[(i, k)]).norm() < 1e-12);
        }
    }
}

#[test]
fn distances() {
    let mut r = rng(3);
    let u = haar(4, &mut r);
    assert_eq!(frobenius_distance(&u, &u).unwrap(), 0.0);
    assert!((frobenius_distance(&CMat::identity(2), &pauli_z()).unwrap() - 2.0).abs() < 1e-15);
    let v = u.scale(Complex64::from_polar(1.0, 1.3));
    assert!(phase_invariant_distance(&u, &v).unwrap() < 1e-7);
    assert!(frobenius_distance(&u, &v).unwrap() > 1.0);
    assert!(frobenius_distance(&u, &CMat::identity(2)).is_err());
}

#[test]
fn qubit_cap_is_enforced() {
    let c = Circuit::new(DEFAULT_QUBIT_CAP + 1);
    assert!(circuit_to_unitary(&c).is_err());
    assert!(circuit_to_unitary_capped(&Circuit::new(3), 2).is_err());
}
