mod common;

use common::*;
use srbb::io::{Ordering, ParamSet};
use srbb::optimizer::*;
use srbb::synthesis::{assemble_layer, layer_param_count, LayerParams};
use srbb::targets::{haar_unitary, named_target};
use srbb::CMat;

fn quick(restarts: usize) -> OptimizerConfig {
    OptimizerConfig { restarts, threads: Some(2), ..OptimizerConfig::default() }
}

#[test]
fn nelder_mead_finds_a_quadratic_minimum() {
    let f = |x: &[f64]| (x[0] - 1.0).powi(2) + 10.0 * (x[1] + 2.0).powi(2) + (x[2] - 0.5).powi(2);
    let r = nelder_mead(f, &[0.0; 3], &NmConfig { f_target: 0.0, ..NmConfig::default() });
    assert!(r.f < 1e-20, "{r:?}");
    assert!((r.x[0] - 1.0).abs() < 1e-9 && (r.x[1] + 2.0).abs() < 1e-9 && (r.x[2] - 0.5).abs() < 1e-9);
    let nan = nelder_mead(|_| f64::NAN, &[0.0], &NmConfig::default());
    assert!(nan.aborted.is_some());
}

#[test]
fn objective_examples() {
    let u = named_target("cnot").unwrap();
    let a = Ansatz::zpf(2, None);
    assert_eq!(a.len(), 15);
    let zero = vec![0.0; 15];
    let plain = Objective::new(&u, &a, false).unwrap();
    assert!((plain.value(&zero).unwrap() - 2.0).abs() < 1e-14);
    let inv = Objective::new(&u, &a, true).unwrap();
    assert!((inv.value(&zero).unwrap() - 2.0).abs() < 1e-14);
    assert!(inv.value(&[0.0; 3]).is_err());
    assert!(Objective::new(&CMat::identity(8), &a, true).is_err());
    let v = u.scale(c(0.6f64.cos(), 0.6f64.sin()));
    let (e, phi) = phase_fit(&v, &u);
    assert!(e < 1e-28 && (phi - 0.6).abs() < 1e-14);
}

#[test]
fn restarts_are_deterministic() {
    let u = haar_unitary(4, &mut rng(5));
    let a = Ansatz::zpf(2, None);
    let cfg = OptimizerConfig { max_iterations: 800, polish_rounds: 0, ..quick(4) };
    let x = fit_layer(&u, &a, &cfg).unwrap();
    let y = fit_layer(&u, &a, &OptimizerConfig { threads: Some(1), ..cfg.clone() }).unwrap();
    assert_eq!(x, y);
    assert_eq!(start_point(&cfg, 3, 5), start_point(&cfg, 3, 5));
    assert_ne!(start_point(&cfg, 2, 5), start_point(&cfg, 3, 5));
    assert_eq!(start_point(&cfg, 0, 5), vec![0.0; 5]);
}

#[test]
fn recovers_a_single_generator() {
    let a = Ansatz::zpf(2, Some(&[6]));
    let u = a.matrix(&[0.7]);
    let fit = fit_layer(&u, &a, &quick(2)).unwrap();
    assert!(fit.error < 1e-10);
    let g = Ansatz::generic(4, Some(&[5])).unwrap();
    let r = approximate_algo1(&g.matrix(&[-0.4]), &quick(2), 1, 1e-10, Some(&[5])).unwrap();
    assert!(r.report.error_frobenius < 1e-10);
}

#[test]
fn sparse_subsets() {
    assert_eq!(select_sparse_subset(&named_target("cnot").unwrap(), 2), vec![3, 8, 9, 12, 15]);
    assert_eq!(select_sparse_subset(&named_target("zz").unwrap(), 2), vec![3, 8, 15]);
    let h = haar_unitary(4, &mut rng(1));
    let s = select_sparse_subset(&h, 2);
    assert_eq!(s, (1..16).collect::<Vec<_>>());
    assert!(is_full_subset(&s, 2));
}

#[test]
fn two_qubit_gates_on_their_subsets() {
    for name in ["cnot", "swap"] {
        let u = named_target(name).unwrap();
        let r = approximate_auto(&u, 2, &quick(8), 1, 5e-12).unwrap();
        assert!(r.report.error_frobenius < 1e-6, "{name}: {}", r.report.error_frobenius);
        assert!(dist(&r.matrix, &u) < 1e-6);
    }
}

#[test]
fn self_generated_target_is_reached() {
    let p = LayerParams::from_flat(2, &angles(&mut rng(9), layer_param_count(2))).unwrap();
    let u = assemble_layer(&p);
    let r = approximate_algo2(&u, 2, &quick(16), 1, 5e-12, None).unwrap();
    assert!(r.report.error_frobenius < 1e-8, "{}", r.report.error_frobenius);
    assert_eq!(r.report.gate_counts.unwrap().cnot, 14);
}

#[test]
fn reconstruct_matches_the_approximation() {
    let u = named_target("cphase").unwrap();
    let r = approximate_auto(&u, 2, &quick(4), 1, 5e-12).unwrap();
    assert!(dist(&reconstruct(&r.params).unwrap(), &r.matrix) < 1e-12);
    let g = approximate_algo1(&haar_unitary(3, &mut rng(2)), &OptimizerConfig { max_iterations: 500, ..quick(1) }, 1, 5e-12, None)
        .unwrap();
    assert!(dist(&reconstruct(&g.params).unwrap(), &g.matrix) < 1e-12);
    let bad = ParamSet { mode: Ordering::Generic, dim: 3, global_phase: 0.0, layers: vec![], generic_layers: vec![vec![0.0; 3]] };
    assert!(reconstruct(&bad).is_err());
}

#[test]
fn input_validation() {
    let mut u = CMat::identity(4);
    u[(0, 0)] = c(2.0, 0.0);
    assert!(approximate_algo2(&u, 2, &quick(1), 1, 1e-9, None).is_err());
    assert!(approximate_algo2(&CMat::identity(8), 2, &quick(1), 1, 1e-9, None).is_err());
    assert!(approximate_algo2(&CMat::identity(4), 2, &quick(1), 0, 1e-9, None).is_err());
    let bad = OptimizerConfig { simplex_size: 0.0, ..quick(1) };
    assert!(fit_layer(&CMat::identity(4), &Ansatz::zpf(2, None), &bad).is_err());
}
