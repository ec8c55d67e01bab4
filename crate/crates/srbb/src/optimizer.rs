//! Nelder-Mead with random restarts, the Frobenius objective over both product
//! orderings, layered refinement, and sparse index subsets.

use crate::basis::{build_generic_basis, pair_index, srbb_element, Element};
use crate::circuit::{layers_circuit, GateCounts};
use crate::error::{Result, SrbbError};
use crate::io::{Ordering, ParamSet};
use crate::linalg::{cis, CMat, C64};
use crate::synthesis::{layer_param_count, LayerParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum InitDistribution {
    Uniform,
    Normal { sigma: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    pub restarts: usize,
    pub zero_start: bool,
    pub init: InitDistribution,
    pub seed: u64,
    pub max_iterations: usize,
    pub simplex_size: f64,
    pub f_tolerance: f64,
    pub x_tolerance: f64,
    /// Stop as soon as the Frobenius error reaches this value.
    pub stop_threshold: f64,
    /// Simplex re-initialisations around the incumbent after convergence.
    pub polish_rounds: usize,
    /// Thread cap for restarts; `None` reads `SRBB_THREADS`, else all cores.
    pub threads: Option<usize>,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            restarts: 32,
            zero_start: true,
            init: InitDistribution::Uniform,
            seed: 0,
            max_iterations: 20_000,
            simplex_size: 0.5,
            f_tolerance: 1e-30,
            x_tolerance: 1e-13,
            stop_threshold: 5e-12,
            polish_rounds: 8,
            threads: None,
        }
    }
}

impl OptimizerConfig {
    fn nm(&self) -> NmConfig {
        NmConfig {
            max_iterations: self.max_iterations,
            simplex_size: self.simplex_size,
            f_tolerance: self.f_tolerance,
            x_tolerance: self.x_tolerance,
            f_target: self.stop_threshold * self.stop_threshold,
            polish_rounds: self.polish_rounds,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.max_iterations > 0
            && self.simplex_size > 0.0
            && self.f_tolerance >= 0.0
            && self.x_tolerance >= 0.0
            && self.stop_threshold >= 0.0
            && (self.restarts > 0 || self.zero_start)
            && match self.init {
                InitDistribution::Uniform => true,
                InitDistribution::Normal { sigma } => sigma > 0.0,
            };
        if ok {
            Ok(())
        } else {
            Err(SrbbError::Parse(format!("invalid optimizer configuration {self:?}")))
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NmConfig {
    pub max_iterations: usize,
    pub simplex_size: f64,
    pub f_tolerance: f64,
    pub x_tolerance: f64,
    /// Stop once `f <= f_target`.
    pub f_target: f64,
    pub polish_rounds: usize,
}

impl Default for NmConfig {
    fn default() -> Self {
        OptimizerConfig::default().nm()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NmResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Set when the objective returned NaN.
    pub aborted: Option<String>,
}

/// Nelder-Mead with dimension-adaptive coefficients. After the
/// simplex collapses, it is rebuilt around the best vertex with a smaller
/// step, up to `polish_rounds` times, sharing the iteration budget.
pub fn nelder_mead<F: FnMut(&[f64]) -> f64>(mut f: F, x0: &[f64], cfg: &NmConfig) -> NmResult {
    let m = x0.len();
    let mut evals = 0usize;
    let mut eval = |x: &[f64], evals: &mut usize| {
        *evals += 1;
        f(x)
    };
    if m == 0 {
        let v = eval(x0, &mut evals);
        let aborted = v.is_nan().then(|| "objective returned NaN".to_string());
        return NmResult { x: vec![], f: v, iterations: 0, evaluations: evals, aborted };
    }
    let md = m as f64;
    let (alpha, gamma, rho, sigma) = if m >= 2 {
        (1.0, 1.0 + 2.0 / md, 0.75 - 1.0 / (2.0 * md), 1.0 - 1.0 / md)
    } else {
        (1.0, 2.0, 0.5, 0.5)
    };

    let mut best_x = x0.to_vec();
    let mut best_f = eval(x0, &mut evals);
    if best_f.is_nan() {
        return NmResult { x: best_x, f: best_f, iterations: 0, evaluations: evals, aborted: Some("objective returned NaN at start".into()) };
    }
    let mut iters = 0usize;
    let mut step = cfg.simplex_size;

    for round in 0..=cfg.polish_rounds {
        // simplex around the incumbent
        let mut pts: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
        let mut fs: Vec<f64> = Vec::with_capacity(m + 1);
        pts.push(best_x.clone());
        fs.push(best_f);
        for i in 0..m {
            let mut p = best_x.clone();
            p[i] += step;
            let v = eval(&p, &mut evals);
            if v.is_nan() {
                return NmResult { x: best_x, f: best_f, iterations: iters, evaluations: evals, aborted: Some("objective returned NaN".into()) };
            }
            pts.push(p);
            fs.push(v);
        }
        let mut order: Vec<usize> = (0..=m).collect();
        let mut centroid = vec![0.0; m];
        let mut xr = vec![0.0; m];
        let mut xe = vec![0.0; m];
        let mut xc = vec![0.0; m];

        loop {
            order.sort_by(|&a, &b| fs[a].total_cmp(&fs[b]));
            let (ib, iw, isw) = (order[0], order[m], order[m - 1]);
            if fs[ib] <= cfg.f_target || iters >= cfg.max_iterations {
                break;
            }
            let fspread = fs[iw] - fs[ib];
            let xspread = pts
                .iter()
                .map(|p| p.iter().zip(&pts[ib]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
                .fold(0.0, f64::max);
            if fspread <= cfg.f_tolerance || xspread <= cfg.x_tolerance {
                break;
            }
            iters += 1;

            centroid.iter_mut().for_each(|c| *c = 0.0);
            for &k in &order[..m] {
                for (c, v) in centroid.iter_mut().zip(&pts[k]) {
                    *c += v;
                }
            }
            centroid.iter_mut().for_each(|c| *c /= md);

            for i in 0..m {
                xr[i] = centroid[i] + alpha * (centroid[i] - pts[iw][i]);
            }
            let fr = eval(&xr, &mut evals);
            if fr.is_nan() {
                return NmResult { x: pts[ib].clone(), f: fs[ib], iterations: iters, evaluations: evals, aborted: Some("objective returned NaN".into()) };
            }
            if fr < fs[ib] {
                for i in 0..m {
                    xe[i] = centroid[i] + gamma * (xr[i] - centroid[i]);
                }
                let fe = eval(&xe, &mut evals);
                if fe < fr {
                    pts[iw].copy_from_slice(&xe);
                    fs[iw] = fe;
                } else {
                    pts[iw].copy_from_slice(&xr);
                    fs[iw] = fr;
                }
                continue;
            }
            if fr < fs[isw] {
                pts[iw].copy_from_slice(&xr);
                fs[iw] = fr;
                continue;
            }
            let outside = fr < fs[iw];
            for i in 0..m {
                xc[i] = if outside {
                    centroid[i] + rho * (xr[i] - centroid[i])
                } else {
                    centroid[i] - rho * (centroid[i] - pts[iw][i])
                };
            }
            let fc = eval(&xc, &mut evals);
            if (outside && fc <= fr) || (!outside && fc < fs[iw]) {
                pts[iw].copy_from_slice(&xc);
                fs[iw] = fc;
                continue;
            }
            // shrink towards the best vertex
            let xb = pts[ib].clone();
            for k in 0..=m {
                if k == ib {
                    continue;
                }
                for i in 0..m {
                    pts[k][i] = xb[i] + sigma * (pts[k][i] - xb[i]);
                }
                fs[k] = eval(&pts[k], &mut evals);
                if fs[k].is_nan() {
                    return NmResult { x: xb, f: fs[ib], iterations: iters, evaluations: evals, aborted: Some("objective returned NaN".into()) };
                }
            }
        }

        let ib = (0..=m).min_by(|&a, &b| fs[a].total_cmp(&fs[b])).unwrap();
        let improved = fs[ib] < best_f;
        if fs[ib] <= best_f {
            best_f = fs[ib];
            best_x = pts[ib].clone();
        }
        if best_f <= cfg.f_target || iters >= cfg.max_iterations {
            break;
        }
        if round > 0 && !improved {
            break;
        }
        // next round: a step of the order of the collapsed simplex, but not vanishing
        let width = pts
            .iter()
            .map(|p| p.iter().zip(&best_x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        step = (10.0 * width).clamp(1e-9, cfg.simplex_size * 0.5);
    }
    NmResult { x: best_x, f: best_f, iterations: iters, evaluations: evals, aborted: None }
}

/// Ordered product `prod_k exp(i theta_k B_k)` over a fixed element list.
#[derive(Clone, Debug)]
pub struct Ansatz {
    pub dim: usize,
    pub elements: Vec<Element>,
}

impl Ansatz {
    /// `zeta * Psi * Phi` ordering on `n` qubits, optionally restricted to an index set.
    pub fn zpf(n: usize, subset: Option<&[usize]>) -> Self {
        let elements = LayerParams::flat_indices(n)
            .into_iter()
            .filter(|j| subset.map_or(true, |s| s.contains(j)))
            .map(|j| srbb_element(n, j))
            .collect();
        Ansatz { dim: 1 << n, elements }
    }

    /// Basis order `1..d^2-1` of the recursive basis of dimension `d`.
    pub fn generic(d: usize, subset: Option<&[usize]>) -> Result<Self> {
        let b = build_generic_basis(d)?;
        let elements = b
            .elements
            .into_iter()
            .filter(|e| e.index < d * d && subset.map_or(true, |s| s.contains(&e.index)))
            .collect();
        Ok(Ansatz { dim: d, elements })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.index).collect()
    }

    pub fn matrix(&self, theta: &[f64]) -> CMat {
        let mut m = CMat::identity(self.dim);
        for (e, &t) in self.elements.iter().zip(theta).rev() {
            if t != 0.0 {
                e.apply_exp_left(t, &mut m);
            }
        }
        m
    }
}

/// `(min_phi ||target - e^{i phi} v||_F^2, phi)` with the phase in closed form and
/// the distance summed entrywise.
pub fn phase_fit(target: &CMat, v: &CMat) -> (f64, f64) {
    let t: C64 = v.as_slice().iter().zip(target.as_slice()).map(|(a, b)| a.conj() * b).sum();
    let phi = crate::linalg::arg(t);
    let w = cis(phi);
    let e = v.as_slice().iter().zip(target.as_slice()).map(|(a, b)| (b - w * a).norm_sqr()).sum();
    (e, phi)
}

/// Frobenius objective `min_phi ||U - e^{i phi} A(theta)||_F` (or without the
/// phase when `phase_invariant` is false).
pub struct Objective<'a> {
    pub target: &'a CMat,
    pub ansatz: &'a Ansatz,
    pub phase_invariant: bool,
}

impl Objective<'_> {
    pub fn new<'a>(target: &'a CMat, ansatz: &'a Ansatz, phase_invariant: bool) -> Result<Objective<'a>> {
        if target.dim() != ansatz.dim {
            return Err(SrbbError::LengthMismatch { expected: ansatz.dim, got: target.dim() });
        }
        Ok(Objective { target, ansatz, phase_invariant })
    }

    pub fn squared(&self, theta: &[f64]) -> f64 {
        let v = self.ansatz.matrix(theta);
        if self.phase_invariant {
            phase_fit(self.target, &v).0
        } else {
            let d = self.target.sub(&v).frobenius_norm();
            d * d
        }
    }

    pub fn value(&self, theta: &[f64]) -> Result<f64> {
        if theta.len() != self.ansatz.len() {
            return Err(SrbbError::LengthMismatch { expected: self.ansatz.len(), got: theta.len() });
        }
        Ok(self.squared(theta).sqrt())
    }
}

/// Thread count from the config or `SRBB_THREADS`.
pub fn thread_cap(cfg: &OptimizerConfig) -> Option<usize> {
    cfg.threads
        .or_else(|| std::env::var("SRBB_THREADS").ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&k| k > 0)
}

fn run_pool<T: Send>(cfg: &OptimizerConfig, job: impl FnOnce() -> T + Send) -> Result<T> {
    match thread_cap(cfg) {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .map_err(|e| SrbbError::Numerical(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
        None => Ok(job()),
    }
}

/// Start point of restart `r` (restart 0 is the zero vector when enabled).
pub fn start_point(cfg: &OptimizerConfig, r: usize, m: usize) -> Vec<f64> {
    if cfg.zero_start && r == 0 {
        return vec![0.0; m];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(r as u64);
    match cfg.init {
        InitDistribution::Uniform => (0..m).map(|_| rng.gen_range(0.0..2.0 * PI)).collect(),
        InitDistribution::Normal { sigma } => {
            let nd = Normal::new(0.0, sigma).expect("sigma validated");
            (0..m).map(|_| nd.sample(&mut rng)).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerFit {
    pub theta: Vec<f64>,
    pub error: f64,
    pub restart: usize,
    pub iterations: usize,
    pub evaluations: usize,
    pub aborted_restarts: usize,
}

/// Best of all restarts; ties go to the lowest restart index, so the result
/// does not depend on scheduling.
pub fn fit_layer(target: &CMat, ansatz: &Ansatz, cfg: &OptimizerConfig) -> Result<LayerFit> {
    cfg.validate()?;
    let obj = Objective::new(target, ansatz, true)?;
    let m = ansatz.len();
    let nm = cfg.nm();
    let first = if cfg.zero_start { 0 } else { 1 };
    let runs: Vec<(usize, NmResult)> = run_pool(cfg, || {
        (first..=cfg.restarts)
            .into_par_iter()
            .map(|r| {
                let x0 = start_point(cfg, r, m);
                (r, nelder_mead(|x| obj.squared(x), &x0, &nm))
            })
            .collect()
    })?;
    let aborted = runs.iter().filter(|(_, r)| r.aborted.is_some()).count();
    let iterations = runs.iter().map(|(_, r)| r.iterations).sum();
    let evaluations = runs.iter().map(|(_, r)| r.evaluations).sum();
    let best = runs
        .into_iter()
        .filter(|(_, r)| r.f.is_finite())
        .min_by(|a, b| a.1.f.total_cmp(&b.1.f).then(a.0.cmp(&b.0)))
        .ok_or_else(|| SrbbError::Numerical("every restart failed".into()))?;
    Ok(LayerFit {
        theta: best.1.x,
        error: best.1.f.max(0.0).sqrt(),
        restart: best.0,
        iterations,
        evaluations,
        aborted_restarts: aborted,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApproxReport {
    pub target: String,
    pub n_or_d: usize,
    pub mode: Ordering,
    pub layers: usize,
    pub restarts: usize,
    pub seed: u64,
    pub error_frobenius: f64,
    pub error_phase_invariant: f64,
    pub wall_seconds: f64,
    pub gate_counts: Option<GateCounts>,
    pub params_path: Option<String>,
    /// Error after each accepted layer.
    pub layer_errors: Vec<f64>,
    pub iterations: usize,
    pub subset: Option<Vec<usize>>,
    pub config: OptimizerConfig,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Approximation {
    pub report: ApproxReport,
    pub params: ParamSet,
    pub matrix: CMat,
}

/// `min_phi ||A - e^{i phi} B||_F` via `sqrt(2d - 2|Tr(B^dagger A)|)`.
fn phase_invariant_closed_form(a: &CMat, b: &CMat) -> f64 {
    let d = a.dim() as f64;
    (2.0 * d - 2.0 * b.inner(a).norm()).max(0.0).sqrt()
}

fn check_unitary(u: &CMat) -> Result<()> {
    let defect = u.unitarity_defect();
    if defect.is_nan() || defect > 1e-8 {
        return Err(SrbbError::NotUnitary(defect));
    }
    Ok(())
}

/// Layered approximation: each layer is fitted to the residual `A^dagger U` and
/// kept only if it lowers the error. Layers accumulate on the right.
fn approximate_layers(
    u: &CMat,
    ansatz: &Ansatz,
    cfg: &OptimizerConfig,
    max_layers: usize,
    eps: f64,
) -> Result<(CMat, Vec<Vec<f64>>, Vec<f64>, usize)> {
    check_unitary(u)?;
    if max_layers == 0 {
        return Err(SrbbError::Parse("need at least one layer".into()));
    }
    let mut acc = CMat::identity(u.dim());
    let mut err = phase_fit(u, &acc).0.sqrt();
    let mut thetas = Vec::new();
    let mut errs = Vec::new();
    let mut iterations = 0;
    for _ in 0..max_layers {
        if err <= eps && !thetas.is_empty() {
            break;
        }
        let residual = acc.adjoint().matmul(u);
        let fit = fit_layer(&residual, ansatz, cfg)?;
        iterations += fit.iterations;
        let next = acc.matmul(&ansatz.matrix(&fit.theta));
        let e = phase_fit(u, &next).0.sqrt();
        if e < err || thetas.is_empty() {
            acc = next;
            err = e;
            thetas.push(fit.theta);
            errs.push(e);
        } else {
            break;
        }
    }
    Ok((acc, thetas, errs, iterations))
}

fn expand(indices: &[usize], full: &[usize], theta: &[f64]) -> Vec<f64> {
    full.iter()
        .map(|j| indices.iter().position(|k| k == j).map_or(0.0, |p| theta[p]))
        .collect()
}

/// Algorithm over the plain basis order of dimension `d`.
pub fn approximate_algo1(
    u: &CMat,
    cfg: &OptimizerConfig,
    max_layers: usize,
    eps: f64,
    subset: Option<&[usize]>,
) -> Result<Approximation> {
    let start = Instant::now();
    let d = u.dim();
    let ansatz = Ansatz::generic(d, subset)?;
    let (acc, thetas, errs, iterations) = approximate_layers(u, &ansatz, cfg, max_layers, eps)?;
    let full: Vec<usize> = (1..d * d).collect();
    let (e, phase) = phase_fit(u, &acc);
    let generic_layers = thetas.iter().map(|t| expand(&ansatz.indices(), &full, t)).collect();
    let params = ParamSet { mode: Ordering::Generic, dim: d, global_phase: phase, layers: vec![], generic_layers };
    let report = ApproxReport {
        target: String::new(),
        n_or_d: d,
        mode: Ordering::Generic,
        layers: thetas.len(),
        restarts: cfg.restarts,
        seed: cfg.seed,
        error_frobenius: e.sqrt(),
        error_phase_invariant: phase_invariant_closed_form(u, &acc),
        wall_seconds: start.elapsed().as_secs_f64(),
        gate_counts: None,
        params_path: None,
        layer_errors: errs,
        iterations,
        subset: subset.map(<[usize]>::to_vec),
        config: cfg.clone(),
    };
    Ok(Approximation { report, params, matrix: acc.scale(cis(phase)) })
}

/// Algorithm over `zeta * Psi * Phi` layers on `n` qubits.
pub fn approximate_algo2(
    u: &CMat,
    n: usize,
    cfg: &OptimizerConfig,
    max_layers: usize,
    eps: f64,
    subset: Option<&[usize]>,
) -> Result<Approximation> {
    let start = Instant::now();
    if n < 1 || n > 6 || u.dim() != 1 << n {
        return Err(SrbbError::InvalidDimension(format!("target of dimension {} for n = {n}", u.dim())));
    }
    let ansatz = Ansatz::zpf(n, subset);
    let (acc, thetas, errs, iterations) = approximate_layers(u, &ansatz, cfg, max_layers, eps)?;
    let full = LayerParams::flat_indices(n);
    let (e, phase) = phase_fit(u, &acc);
    let layers = thetas
        .iter()
        .map(|t| LayerParams::from_flat(n, &expand(&ansatz.indices(), &full, t)))
        .collect::<Result<Vec<_>>>()?;
    let gate_counts = if n >= 2 { Some(layers_circuit(&layers)?.counts()) } else { None };
    let params = ParamSet { mode: Ordering::Zpf, dim: 1 << n, global_phase: phase, layers, generic_layers: vec![] };
    let report = ApproxReport {
        target: String::new(),
        n_or_d: n,
        mode: Ordering::Zpf,
        layers: thetas.len(),
        restarts: cfg.restarts,
        seed: cfg.seed,
        error_frobenius: e.sqrt(),
        error_phase_invariant: phase_invariant_closed_form(u, &acc),
        wall_seconds: start.elapsed().as_secs_f64(),
        gate_counts,
        params_path: None,
        layer_errors: errs,
        iterations,
        subset: subset.map(<[usize]>::to_vec),
        config: cfg.clone(),
    };
    Ok(Approximation { report, params, matrix: acc.scale(cis(phase)) })
}

/// Diagonal indices always; both sigma indices of pair `(p, q)` when the target
/// couples `p` and `q`. The identity is carried by the global phase.
pub fn select_sparse_subset(u: &CMat, n: usize) -> Vec<usize> {
    let d = 1usize << n;
    let mut s: Vec<usize> = (2..=d).map(|l| l * l - 1).collect();
    for q in 2..=d {
        for p in 1..q {
            if u[(p - 1, q - 1)].norm() + u[(q - 1, p - 1)].norm() > 1e-12 {
                s.push(pair_index(p, q, false));
                s.push(pair_index(p, q, true));
            }
        }
    }
    s.sort_unstable();
    debug_assert!(s.iter().all(|&j| j < d * d));
    s
}

/// Whether a subset covers every index of the full layer.
pub fn is_full_subset(subset: &[usize], n: usize) -> bool {
    subset.len() >= layer_param_count(n)
}

/// `approximate_algo2` on the sparse subset, then on the full index set if the
/// sparse run misses `eps`; the better result is returned.
pub fn approximate_auto(u: &CMat, n: usize, cfg: &OptimizerConfig, max_layers: usize, eps: f64) -> Result<Approximation> {
    let subset = select_sparse_subset(u, n);
    if is_full_subset(&subset, n) {
        return approximate_algo2(u, n, cfg, max_layers, eps, None);
    }
    let sparse = approximate_algo2(u, n, cfg, max_layers, eps, Some(&subset))?;
    if sparse.report.error_frobenius <= eps {
        return Ok(sparse);
    }
    let full = approximate_algo2(u, n, cfg, max_layers, eps, None)?;
    Ok(if full.report.error_frobenius < sparse.report.error_frobenius { full } else { sparse })
}

/// `e^{i phase} * prod_l layer_l` for a stored parameter set.
pub fn reconstruct(params: &ParamSet) -> Result<CMat> {
    params.validate()?;
    let m = match params.mode {
        Ordering::Zpf => crate::synthesis::assemble_layers(&params.layers)?,
        Ordering::Generic => {
            let ansatz = Ansatz::generic(params.dim, None)?;
            let mut m = CMat::identity(params.dim);
            for l in &params.generic_layers {
                m = m.matmul(&ansatz.matrix(l));
            }
            m
        }
    };
    Ok(m.scale(cis(params.global_phase)))
}
