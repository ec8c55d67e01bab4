mod common;

use common::*;
use srbb::basis::*;
use srbb::CMat;

fn exp_4x4(j: usize, t: f64) -> CMat {
    let (co, si) = (t.cos(), t.sin());
    let (e, em) = (c(co, si), c(co, -si));
    let z = c(0., 0.);
    let (cc, is, s, ms) = (c(co, 0.), c(0., si), c(si, 0.), c(-si, 0.));
    match j {
        1 => mat(&[&[cc, is, z, z], &[is, cc, z, z], &[z, z, e, z], &[z, z, z, em]]),
        2 => mat(&[&[cc, s, z, z], &[ms, cc, z, z], &[z, z, e, z], &[z, z, z, em]]),
        3 => mat(&[&[e, z, z, z], &[z, em, z, z], &[z, z, e, z], &[z, z, z, em]]),
        4 => mat(&[&[e, z, z, z], &[z, cc, is, z], &[z, is, cc, z], &[z, z, z, em]]),
        5 => mat(&[&[cc, z, is, z], &[z, e, z, z], &[is, z, cc, z], &[z, z, z, em]]),
        6 => mat(&[&[e, z, z, z], &[z, cc, s, z], &[z, ms, cc, z], &[z, z, z, em]]),
        7 => mat(&[&[cc, z, s, z], &[z, e, z, z], &[ms, z, cc, z], &[z, z, z, em]]),
        8 => mat(&[&[e, z, z, z], &[z, e, z, z], &[z, z, em, z], &[z, z, z, em]]),
        9 => mat(&[&[e, z, z, z], &[z, em, z, z], &[z, z, cc, is], &[z, z, is, cc]]),
        10 => mat(&[&[cc, z, z, is], &[z, em, z, z], &[z, z, e, z], &[is, z, z, cc]]),
        11 => mat(&[&[e, z, z, z], &[z, cc, z, is], &[z, z, em, z], &[z, is, z, cc]]),
        12 => mat(&[&[e, z, z, z], &[z, em, z, z], &[z, z, cc, s], &[z, z, ms, cc]]),
        13 => mat(&[&[cc, z, z, s], &[z, em, z, z], &[z, z, e, z], &[ms, z, z, cc]]),
        14 => mat(&[&[e, z, z, z], &[z, cc, z, s], &[z, z, em, z], &[z, ms, z, cc]]),
        15 => mat(&[&[e, z, z, z], &[z, em, z, z], &[z, z, em, z], &[z, z, z, e]]),
        _ => unreachable!(),
    }
}

#[test]
fn two_qubit_exponentials_match_the_worked_table() {
    for j in 1..=15 {
        for &t in &[0.3, -1.1, 2.5] {
            let got = srbb_element(2, j).exp(t);
            assert!(dist(&got, &exp_4x4(j, t)) < 1e-14, "element {j} at {t}");
        }
    }
}

#[test]
fn generic_d2_is_the_pauli_basis() {
    let b = build_generic_basis(2).unwrap();
    let sx = mat(&[&[c(0., 0.), c(1., 0.)], &[c(1., 0.), c(0., 0.)]]);
    let sy = mat(&[&[c(0., 0.), c(0., -1.)], &[c(0., 1.), c(0., 0.)]]);
    let expect = [sx, sy, pauli_z(), CMat::identity(2)];
    for (e, m) in b.elements.iter().zip(&expect) {
        assert_eq!(e.dense(), *m);
    }
}

#[test]
fn generic_d3_borders_the_paulis() {
    let b = build_generic_basis(3).unwrap();
    assert_eq!(b.len(), 9);
    for j in 1..=2 {
        let m = b.get(j).dense();
        assert_eq!(m[(2, 2)], c(1., 0.));
        assert_eq!(m[(0, 2)], c(0., 0.));
    }
    assert_eq!(b.get(1).pair, Some((1, 2)));
}

#[test]
fn generic_d4_third_element_alternates() {
    let b = build_generic_basis(4).unwrap();
    assert_eq!(b.get(3).diag_signs, vec![1, -1, 1, -1]);
}

#[test]
fn one_qubit_srbb_is_z_and_identity() {
    let b = build_srbb(1).unwrap();
    assert_eq!(b.get(3).dense(), pauli_z());
    assert_eq!(b.get(4).dense(), CMat::identity(2));
}

#[test]
fn two_qubit_diagonals_are_iz_words() {
    let id = CMat::identity(2);
    let z = pauli_z();
    assert_eq!(srbb_element(2, 3).dense(), kron(&id, &z));
    assert_eq!(srbb_element(2, 8).dense(), kron(&z, &id));
    assert_eq!(srbb_element(2, 15).dense(), kron(&z, &z));
    let d = exp_diag_combination(&[(8, 0.4)], 2).unwrap();
    assert_eq!(d, vec![c(0.4f64.cos(), 0.4f64.sin()), c(0.4f64.cos(), 0.4f64.sin()), c(0.4f64.cos(), -0.4f64.sin()), c(0.4f64.cos(), -0.4f64.sin())]);
}

#[test]
fn srbb_diagonals_are_all_traceless_iz_words() {
    for n in 1..=4 {
        let d = 1usize << n;
        for l in 2..=d {
            let e = srbb_element(n, l * l - 1);
            let word = e.iz_word.clone().expect("diagonal element carries a word");
            let m = kron_all(&word.iter().map(|&b| if b { pauli_z() } else { CMat::identity(2) }).collect::<Vec<_>>());
            assert_eq!(e.dense(), m);
            assert_eq!(index_of_word(&word), l * l - 1);
        }
    }
}

#[test]
fn gram_rank_is_full() {
    for (d, basis) in [(4, build_srbb(2).unwrap()), (3, build_generic_basis(3).unwrap()), (8, build_srbb(3).unwrap())] {
        let rows = basis.elements.iter().map(|e| e.dense().as_slice().to_vec()).collect();
        assert_eq!(rank(rows, 1e-9), d * d);
    }
}

#[test]
fn structured_forms_of_selected_elements() {
    let (k, p, s) = element_pair_and_signs(1, 4).unwrap();
    assert_eq!((k, p, s), (Kind::Sigma1, (1, 2), vec![0, 0, 1, -1]));
    let (k, p, s) = element_pair_and_signs(12, 4).unwrap();
    assert_eq!((k, p, s), (Kind::Sigma2, (3, 4), vec![1, -1, 0, 0]));
    let (k, p, _) = element_pair_and_signs(9, 4).unwrap();
    assert_eq!((k, p), (Kind::Sigma1, (3, 4)));
    assert!(element_pair_and_signs(3, 4).is_err());
    assert!(element_pair_and_signs(16, 4).is_err());
}

#[test]
fn chi_round_trip_and_examples() {
    assert_eq!(chi(&[true, false]), 1);
    assert_eq!(chi(&[false, true]), 2);
    assert_eq!(chi_inv(0, 3).unwrap(), vec![false; 3]);
    for m in 1..6 {
        for k in 0..1usize << m {
            assert_eq!(chi(&chi_inv(k, m).unwrap()), k);
        }
    }
    assert!(chi_inv(8, 3).is_err());
}

#[test]
fn index_functions() {
    assert_eq!((h_index(2, 0), f_index(2, 0)), (1, 2));
    assert_eq!((h_index(4, 0), f_index(4, 0)), (9, 12));
    assert_eq!((h_index(3, 5), f_index(3, 5)), (5, 7));
    for j in 1..=4usize {
        assert_eq!(h_index(2 * j, 0), (2 * j - 1) * (2 * j - 1));
        assert_eq!(f_index(2 * j, 0), 4 * j * j - 2 * j);
    }
}

#[test]
fn eta_reads_diagonal_signs() {
    let iz = kron(&CMat::identity(2), &pauli_z());
    assert_eq!(eta(&iz, 1).unwrap(), 1);
    assert_eq!(eta(&iz, 2).unwrap(), -1);
    assert!(eta(&pauli_x(), 1).is_err());
}

/// Sylvester Hadamard matrix of order `2^m` with +-1 entries.
fn sylvester(m: usize) -> Vec<Vec<i8>> {
    let mut h = vec![vec![1i8]];
    for _ in 0..m {
        let k = h.len();
        let mut next = vec![vec![0i8; 2 * k]; 2 * k];
        for i in 0..k {
            for j in 0..k {
                next[i][j] = h[i][j];
                next[i][j + k] = h[i][j];
                next[i + k][j] = h[i][j];
                next[i + k][j + k] = -h[i][j];
            }
        }
        h = next;
    }
    h
}

#[test]
fn odd_position_signs_span_the_hadamard_columns() {
    for m in 1..=4 {
        let mut vecs: Vec<Vec<i8>> = (0..1usize << m)
            .map(|k| {
                let mut word = chi_inv(k, m).unwrap();
                word.push(true);
                let op = kron_all(&word.iter().map(|&b| if b { pauli_z() } else { CMat::identity(2) }).collect::<Vec<_>>());
                (1..op.dim()).step_by(2).map(|j| eta(&op, j).unwrap()).collect()
            })
            .collect();
        let h = sylvester(m);
        let mut cols: Vec<Vec<i8>> = (0..h.len()).map(|j| h.iter().map(|r| r[j]).collect()).collect();
        vecs.sort();
        cols.sort();
        assert_eq!(vecs, cols, "m = {m}");
    }
}

#[test]
fn exponentials_match_series_oracle() {
    let mut r = rng(11);
    for k in 0..60 {
        let d = 2 + k % 7;
        let b = build_generic_basis(d).unwrap();
        let j = 1 + (k * 7) % (d * d);
        let t = angles(&mut r, 1)[0];
        assert!(dist(&b.get(j).exp(t), &exp_i(&b.get(j).dense(), t)) < 1e-10);
    }
    assert_eq!(srbb_element(3, 17).exp(0.0), CMat::identity(8));
}

#[test]
fn diagonal_combination_is_exp_of_sum() {
    let mut r = rng(5);
    let n = 3;
    let idx: Vec<usize> = (2..=8usize).map(|l| l * l - 1).collect();
    let th = angles(&mut r, idx.len());
    let coeffs: Vec<(usize, f64)> = idx.iter().copied().zip(th.iter().copied()).collect();
    let got = CMat::from_diag(&exp_diag_combination(&coeffs, n).unwrap());
    let mut sum = CMat::zeros(8);
    for &(j, t) in &coeffs {
        sum = sum.add(&srbb_element(n, j).dense().scale(c(t, 0.)));
    }
    assert!(dist(&got, &exp_i(&sum, 1.0)) < 1e-12);
    assert_eq!(exp_diag_combination(&[], 2).unwrap(), vec![c(1., 0.); 4]);
    assert!(exp_diag_combination(&[(1, 0.1)], 2).is_err());
}

#[test]
fn invalid_dimensions_are_rejected() {
    assert!(build_generic_basis(1).is_err());
    assert!(build_srbb(0).is_err());
}
