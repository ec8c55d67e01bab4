mod common;

use common::*;
use rand::Rng;
use srbb::basis::srbb_element;
use srbb::linalg::cis;
use srbb::synthesis::*;
use srbb::CMat;
use std::collections::BTreeSet;

fn random_su2(r: &mut rand_chacha::ChaCha8Rng) -> [num_complex::Complex64; 4] {
    let a = angles(r, 3);
    zyz_block(a[0], a[1], a[2])
}

fn explicit_product(n: usize, f: &[(usize, f64)]) -> CMat {
    let mut m = CMat::identity(1 << n);
    for &(j, t) in f {
        m = m.matmul(&exp_i(&srbb_element(n, j).dense(), t));
    }
    m
}

#[test]
fn identity_two_level_gives_zero_angles() {
    let t = TwoLevelUnitary { n: 2, pair: (1, 3), block: [c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)], global_phase: 0.0 };
    let s = synth_two_level(&t).unwrap();
    assert!(s.factors().iter().all(|f| f.1.abs() < 1e-15));
    assert!(s.global_phase.abs() < 1e-15);
}

#[test]
fn one_qubit_y_rotation_is_a_single_sigma2_factor() {
    let g: f64 = 0.37;
    let block = [c(g.cos(), 0.), c(-g.sin(), 0.), c(g.sin(), 0.), c(g.cos(), 0.)];
    let s = synth_two_level(&TwoLevelUnitary { n: 1, pair: (1, 2), block, global_phase: 0.0 }).unwrap();
    assert_eq!(s.middle.0, 2);
    assert!((s.middle.1 + g).abs() < 1e-14, "{s:?}");
    assert!(s.left.iter().chain(&s.right).all(|f| f.1.abs() < 1e-14));
}

#[test]
fn two_level_round_trips() {
    let mut r = rng(3);
    for n in 2..=4 {
        let d = 1usize << n;
        for _ in 0..20 {
            let p = r.gen_range(1..d);
            let q = r.gen_range(p + 1..=d);
            let t = TwoLevelUnitary { n, pair: (p, q), block: random_su2(&mut r), global_phase: angles(&mut r, 1)[0] };
            let s = synth_two_level(&t).unwrap();
            assert!(dist(&s.reconstruct(), &t.dense()) < 1e-10, "n={n} pair=({p},{q})");
            let oracle = explicit_product(n, &s.factors()).scale(cis(s.global_phase));
            assert!(dist(&oracle, &t.dense()) < 1e-10);
        }
    }
}

#[test]
fn mzyz_identity_and_round_trips() {
    let s = mzyz_solve(&MnZyz::identity(3)).unwrap();
    assert!(s.left.iter().chain(&s.middle).chain(&s.right).all(|t| t.abs() < 1e-15));
    let mut r = rng(8);
    for n in 1..=4 {
        for _ in 0..20 {
            let blocks = (0..1 << (n - 1)).map(|_| {
                let a = angles(&mut r, 3);
                (a[0], a[1], a[2])
            });
            let m = MnZyz { n, blocks: blocks.collect() };
            let s = mzyz_solve(&m).unwrap();
            assert!(dist(&s.reconstruct(), &m.dense()) < 1e-10);
            if n <= 3 {
                assert!(dist(&explicit_product(n, &s.factors()), &m.dense()) < 1e-10);
            }
        }
    }
}

#[test]
fn mzyz_from_matrix_inverts_dense() {
    let mut r = rng(21);
    let blocks: Vec<_> = (0..4).map(|_| {
        let a = angles(&mut r, 3);
        (a[0], a[1], a[2])
    }).collect();
    let m = MnZyz { n: 3, blocks }.dense();
    assert!(dist(&MnZyz::from_matrix(&m).unwrap().dense(), &m) < 1e-12);
    assert!(MnZyz::from_matrix(&haar(8, &mut r)).is_err());
}

fn pauli_exp(k: usize, t: f64) -> CMat {
    let (co, si) = (t.cos(), t.sin());
    match k {
        1 => mat(&[&[c(co, 0.), c(0., si)], &[c(0., si), c(co, 0.)]]),
        _ => mat(&[&[c(co, 0.), c(si, 0.)], &[c(-si, 0.), c(co, 0.)]]),
    }
}

#[test]
fn merge_zy_reproduces_the_product() {
    let mut r = rng(4);
    let mut cases: Vec<(f64, f64)> = (0..100).map(|_| (r.gen_range(-4.0..4.0), r.gen_range(-4.0..4.0))).collect();
    cases.extend([(0.0, 0.7), (0.7, 0.0), (0.0, 0.0), (std::f64::consts::FRAC_PI_2, 0.3)]);
    for (h, f) in cases {
        let (phi, beta, gamma) = merge_zy(h, f);
        let b = merged_block(phi, beta, gamma);
        let want = pauli_exp(1, h).matmul(&pauli_exp(2, f));
        assert!(dist(&mat(&[&[b[0], b[1]], &[b[2], b[3]]]), &want) < 1e-12, "({h}, {f})");
    }
    let (phi, beta, gamma) = merge_zy(0.0, 0.4);
    assert!((phi - 0.4).abs() < 1e-15 && beta.abs() < 1e-15 && gamma.abs() < 1e-15);
}

#[test]
fn two_qubit_partition() {
    let p = build_partition(2).unwrap();
    assert_eq!(p.family(1, Parity::Even), &[(2, 4)]);
    assert_eq!(p.family(1, Parity::Odd), &[(2, 3)]);
    let e: BTreeSet<usize> = group_indices(2, 4, Parity::Even).into_iter().collect();
    assert_eq!(e, BTreeSet::from([4, 6, 10, 13]));
    let o: BTreeSet<usize> = group_indices(2, 3, Parity::Odd).into_iter().collect();
    assert_eq!(o, BTreeSet::from([5, 7, 11, 14]));
}

#[test]
fn partitions_tile_the_transposition_sets() {
    for n in 2..=5usize {
        let p = build_partition(n).unwrap();
        let d = 1usize << n;
        let mut even = BTreeSet::new();
        let mut odd = BTreeSet::new();
        for x in 1..1usize << (n - 1) {
            for parity in [Parity::Even, Parity::Odd] {
                let fam = p.family(x, parity);
                assert_eq!(fam.len(), 1 << (n - 2));
                let pts: BTreeSet<usize> = fam.iter().flat_map(|&(a, b)| [a, b]).collect();
                assert_eq!(pts.len(), 2 * fam.len(), "transpositions of one family are disjoint");
                for &(a, b) in fam {
                    assert_eq!(a % 2, 0);
                    match parity {
                        Parity::Even => assert!(b % 2 == 0 && even.insert((a.min(b), a.max(b)))),
                        Parity::Odd => assert!(b % 2 == 1 && odd.insert((a, b))),
                    }
                }
            }
        }
        let evens: Vec<usize> = (2..=d).step_by(2).collect();
        let all_even: BTreeSet<(usize, usize)> =
            evens.iter().flat_map(|&a| evens.iter().filter(move |&&b| b > a).map(move |&b| (a, b))).collect();
        assert_eq!(even, all_even);
        assert_eq!(even.len(), (1 << (2 * n - 3)) - (1 << (n - 2)));
    }
}

#[test]
fn groups_conjugate_to_block_diagonal() {
    let mut r = rng(17);
    for n in 2..=3 {
        for x in 1..1usize << (n - 1) {
            let k = 4 << (n - 2);
            assert_eq!(group_even(n, x, &vec![0.0; k]).unwrap(), CMat::identity(1 << n));
            for _ in 0..20 {
                let th = angles(&mut r, k);
                let me = group_even(n, x, &th).unwrap();
                assert!(me.off_block_mass() < 1e-12);
                for b in 0..1usize << (n - 1) {
                    let blk = me.block2(b);
                    assert!((blk[0] * blk[3] - blk[1] * blk[2] - c(1., 0.)).norm() < 1e-12, "SU(2) block");
                }
                let mo = group_odd(n, x, &th).unwrap();
                assert!(mo.off_block_mass() < 1e-12);
                let pm = perm_matrix(&odd_perm_map(n, x));
                let raw = group_product(n, x, Parity::Odd, &th).unwrap();
                assert!(dist(&pm.matmul(&raw).matmul(&pm), &mo) < 1e-12);
            }
        }
    }
}

#[test]
fn even_group_invariant_under_other_even_swaps() {
    let mut r = rng(29);
    for n in 2..=3usize {
        let d = 1usize << n;
        let evens: Vec<usize> = (2..=d).step_by(2).collect();
        let pairs: Vec<(usize, usize)> =
            evens.iter().flat_map(|&a| evens.iter().filter(move |&&b| b > a).map(move |&b| (a, b))).collect();
        for _ in 0..100 {
            let (a, b) = pairs[r.gen_range(0..pairs.len())];
            let th = angles(&mut r, 4);
            let f: Vec<(usize, f64)> = group_indices(a, b, Parity::Even).into_iter().zip(th).collect();
            let m = product_of_srbb_exps(n, &f);
            for &(dl, gm) in pairs.iter().filter(|&&p| p != (a, b)) {
                let p = transposition(d, dl, gm);
                if dl != a && dl != b && gm != a && gm != b {
                    assert!(dist(&p.matmul(&m).matmul(&p), &m) < 1e-12, "({a},{b}) vs ({dl},{gm})");
                }
            }
        }
    }
}

#[test]
fn layer_index_sets_partition_the_traceless_basis() {
    for n in 2..=4 {
        let mut all: Vec<usize> = zeta_indices(n);
        all.extend(psi_indices(n));
        all.extend(phi_indices(n));
        assert_eq!(all.len(), layer_param_count(n));
        let set: BTreeSet<usize> = all.into_iter().collect();
        assert_eq!(set, (1..1usize << (2 * n)).collect());
    }
}

#[test]
fn layer_assembly_matches_factor_products() {
    let mut r = rng(33);
    for n in 2..=3 {
        assert_eq!(assemble_layer(&LayerParams::zeros(n)), CMat::identity(1 << n));
        let p = LayerParams::from_flat(n, &angles(&mut r, layer_param_count(n))).unwrap();
        let three = assemble_zeta(&p).matmul(&assemble_psi(&p)).matmul(&assemble_phi(&p));
        assert!(dist(&assemble_layer(&p), &three) < 1e-12);
        let f: Vec<(usize, f64)> = p.zeta.iter().chain(&p.psi).chain(&p.phi).copied().collect();
        assert!(dist(&assemble_layer(&p), &explicit_product(n, &f)) < 1e-10);
        let q = LayerParams::from_flat(n, &angles(&mut r, layer_param_count(n))).unwrap();
        let two = assemble_layers(&[p.clone(), q.clone()]).unwrap();
        assert!(dist(&two, &assemble_layer(&p).matmul(&assemble_layer(&q))) < 1e-12);
        assert_eq!(LayerParams::from_flat(n, &p.to_flat()).unwrap(), p);
    }
    assert!(LayerParams::from_flat(2, &[0.0; 14]).is_err());
}

#[test]
fn psi_and_phi_split_into_conjugated_groups() {
    let mut r = rng(41);
    let n = 3;
    let p = LayerParams::from_flat(n, &angles(&mut r, layer_param_count(n))).unwrap();
    let mut phi = CMat::identity(8);
    for x in 1..4 {
        let pm = perm_matrix(&odd_perm_map(n, x));
        phi = phi.matmul(&pm.matmul(&group_odd(n, x, &p.group_angles(x, Parity::Odd)).unwrap()).matmul(&pm));
    }
    assert!(dist(&phi, &assemble_phi(&p)) < 1e-12);
}

#[test]
fn block_diag_round_trip() {
    let mut r = rng(2);
    let th = angles(&mut r, 8);
    let m = group_odd(3, 2, &th).unwrap();
    let bd = BlockDiag::from_matrix(&m).unwrap();
    assert!(dist(&bd.dense(), &m) < 1e-12);
    assert!(bd.phases.iter().sum::<f64>().abs() < 1e-12);
}
