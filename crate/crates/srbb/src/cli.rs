//! Command-line front end. `run` returns the process exit code.

use crate::basis::{build_generic_basis, build_srbb, Basis, Kind};
use crate::circuit::{export_qasm, import_qasm, layer_blocks, layers_circuit, simplify, Circuit, GateCounts};
use crate::error::{Result, SrbbError};
use crate::io::{format_cmat, read_cmat, read_json, write_json, atomic_write, Ordering, ParamSet};
use crate::linalg::{CMat, C64};
use crate::optimizer::{
    approximate_algo1, approximate_algo2, approximate_auto, reconstruct, Approximation, OptimizerConfig,
};
use crate::scaling::{lift_layer, LiftMode};
use crate::simulator::{circuit_to_unitary, frobenius_distance, phase_invariant_distance};
use crate::synthesis::assemble_layers;
use crate::targets::{haar_unitary, named_target};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};

/// Circuits are refused when they differ from their matrix by more than this.
pub const EMIT_TOLERANCE: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "srbb", version, about = "Unitary synthesis over recursive Hermitian-unitary bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the basis catalog for `n` qubits or dimension `d`.
    Basis(BasisArgs),
    /// Write a named or Haar-random target matrix in CMAT format.
    Target(TargetArgs),
    /// Approximate a target unitary by layered products of exponentials.
    Approx(ApproxArgs),
    /// Emit the circuit of a parameter file.
    Circuit(CircuitArgs),
    /// Lift the circuit of an `n`-qubit parameter file to `n + 1` qubits.
    Lift(LiftArgs),
    /// Distance between a circuit and a matrix.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BasisFormat {
    Json,
    Dense,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[arg(long, conflicts_with = "d", required_unless_present = "d")]
    pub n: Option<usize>,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: BasisFormat,
}

#[derive(Args, Debug)]
pub struct TargetArgs {
    /// cnot, swap, zz, iswap, cphase, qft2, cnot21, qft3, toffoli, identityN
    #[arg(long, conflicts_with = "haar", required_unless_present = "haar")]
    pub name: Option<String>,
    /// Dimension of a Haar-random unitary.
    #[arg(long)]
    pub haar: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ApproxArgs {
    /// CMAT file.
    pub target: PathBuf,
    /// Qubit count; must agree with the target dimension when given.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub layers: usize,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `auto`, `all`, or a comma-separated index list.
    #[arg(long, default_value = "auto")]
    pub subset: String,
    /// Stopping threshold and pass criterion on the Frobenius error.
    #[arg(long, default_value_t = 5e-12)]
    pub eps: f64,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Report path; defaults to `<target>.report.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Parameter path; defaults to `<target>.params.json`.
    #[arg(long)]
    pub params: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CircuitArgs {
    pub params: PathBuf,
    #[arg(long)]
    pub qasm: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Print the gate-count table.
    #[arg(long)]
    pub counts: bool,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    /// Parameter file on `n` qubits.
    pub params: PathBuf,
    /// Target qubit count; must be `n + 1`.
    #[arg(long)]
    pub to: Option<usize>,
    /// Parameter file on `n + 1` qubits to resolve the lifted angles from;
    /// without it the new components are zero.
    #[arg(long)]
    pub resolve: Option<PathBuf>,
    #[arg(long)]
    pub json: Option<PathBuf>,
    #[arg(long)]
    pub qasm: Option<PathBuf>,
    #[arg(long)]
    pub counts: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `.qasm` or circuit `.json`.
    pub circuit: PathBuf,
    /// CMAT file.
    pub matrix: PathBuf,
    /// Exit with 1 when the distance exceeds this.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Judge `--tol` on the plain Frobenius distance instead of the
    /// phase-invariant one (circuits carry no global phase).
    #[arg(long)]
    pub exact_phase: bool,
}

#[derive(Serialize)]
struct BasisEntry {
    index: usize,
    kind: Kind,
    pair: Option<(usize, usize)>,
    signs: Vec<i8>,
    trace: i64,
}

#[derive(Serialize)]
struct VerifyReport {
    n: usize,
    frobenius: f64,
    phase_invariant: f64,
}

#[derive(Serialize)]
struct CircuitReport {
    n: usize,
    layers: usize,
    counts: GateCounts,
    verified_distance: f64,
}

pub fn run_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Basis(a) => cmd_basis(&a),
        Command::Target(a) => cmd_target(&a),
        Command::Approx(a) => cmd_approx(&a),
        Command::Circuit(a) => cmd_circuit(&a),
        Command::Lift(a) => cmd_lift(&a),
        Command::Verify(a) => cmd_verify(&a),
    }
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

pub fn basis_for(n: Option<usize>, d: Option<usize>) -> Result<Basis> {
    match (n, d) {
        (Some(n), None) => build_srbb(n),
        (None, Some(d)) => build_generic_basis(d),
        _ => Err(SrbbError::InvalidDimension("give exactly one of --n and --d".into())),
    }
}

fn cmd_basis(a: &BasisArgs) -> Result<i32> {
    let b = basis_for(a.n, a.d)?;
    match a.format {
        BasisFormat::Json => {
            let entries: Vec<BasisEntry> = b
                .elements
                .iter()
                .map(|e| BasisEntry { index: e.index, kind: e.kind, pair: e.pair, signs: e.diag_signs.clone(), trace: e.trace() })
                .collect();
            print_json(&entries)?;
        }
        BasisFormat::Dense => {
            for e in &b.elements {
                println!("# index {} {:?}", e.index, e.kind);
                print!("{}", format_cmat(&e.dense()));
            }
        }
    }
    Ok(0)
}

fn identity_target(name: &str) -> Option<CMat> {
    let d: usize = name.strip_prefix("identity")?.parse().ok()?;
    (d >= 1).then(|| CMat::identity(d))
}

fn cmd_target(a: &TargetArgs) -> Result<i32> {
    let m = match (&a.name, a.haar) {
        (Some(name), None) => match identity_target(name) {
            Some(m) => m,
            None => named_target(name)?,
        },
        (None, Some(d)) => {
            if d < 2 {
                return Err(SrbbError::InvalidDimension(format!("d = {d}")));
            }
            haar_unitary(d, &mut ChaCha8Rng::seed_from_u64(a.seed))
        }
        _ => return Err(SrbbError::Parse("give exactly one of --name and --haar".into())),
    };
    let text = format_cmat(&m);
    match &a.out {
        Some(p) => atomic_write(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    Ok(0)
}

/// Index list syntax `3,8,15`; `None` for `all`, `Some(empty)` never.
pub fn parse_subset(s: &str) -> Result<Option<Vec<usize>>> {
    match s {
        "all" => Ok(None),
        _ => {
            let mut v = s
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| SrbbError::Parse(format!("bad subset entry '{t}'"))))
                .collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            v.dedup();
            if v.is_empty() {
                return Err(SrbbError::Parse("empty subset".into()));
            }
            Ok(Some(v))
        }
    }
}

fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "target".into());
    path.with_file_name(format!("{stem}.{suffix}"))
}

fn cmd_approx(a: &ApproxArgs) -> Result<i32> {
    let u = read_cmat(&a.target)?;
    let d = u.dim();
    let pow2 = d.is_power_of_two() && d >= 2;
    let n = d.trailing_zeros() as usize;
    if let Some(want) = a.n {
        if !pow2 || want != n {
            return Err(SrbbError::InvalidDimension(format!("--n {want} but the target has dimension {d}")));
        }
    }
    let mut cfg = OptimizerConfig { restarts: a.restarts, seed: a.seed, stop_threshold: a.eps, threads: a.threads, ..Default::default() };
    if let Some(m) = a.max_iter {
        cfg.max_iterations = m;
    }
    let mut out: Approximation = match (pow2, a.subset.as_str()) {
        (true, "auto") => approximate_auto(&u, n, &cfg, a.layers, a.eps)?,
        (false, "auto") => approximate_algo1(&u, &cfg, a.layers, a.eps, None)?,
        (true, s) => approximate_algo2(&u, n, &cfg, a.layers, a.eps, parse_subset(s)?.as_deref())?,
        (false, s) => approximate_algo1(&u, &cfg, a.layers, a.eps, parse_subset(s)?.as_deref())?,
    };
    let params_path = a.params.clone().unwrap_or_else(|| sibling(&a.target, "params.json"));
    let report_path = a.report.clone().unwrap_or_else(|| sibling(&a.target, "report.json"));
    out.report.target = a.target.display().to_string();
    out.report.params_path = Some(params_path.display().to_string());
    write_json(&params_path, &out.params)?;
    write_json(&report_path, &out.report)?;
    print_json(&out.report)?;
    Ok(if out.report.error_frobenius <= a.eps { 0 } else { 1 })
}

fn load_zpf(path: &Path) -> Result<ParamSet> {
    let p: ParamSet = read_json(path)?;
    p.validate()?;
    if p.mode != Ordering::Zpf {
        return Err(SrbbError::WrongKind("circuits exist only for qubit (zpf) parameter sets".into()));
    }
    Ok(p)
}

/// Simulates `c` and compares it with `m` up to the stored global phase.
pub fn check_emission(c: &Circuit, m: &CMat) -> Result<f64> {
    let u = circuit_to_unitary(c)?;
    let dist = frobenius_distance(&u, m)?;
    if !(dist <= EMIT_TOLERANCE) {
        return Err(SrbbError::Verification(format!("circuit differs from its matrix by {dist:.3e}")));
    }
    Ok(dist)
}

fn emit(c: &Circuit, json: &Option<PathBuf>, qasm: &Option<PathBuf>) -> Result<()> {
    if let Some(p) = json {
        write_json(p, c)?;
    }
    if let Some(p) = qasm {
        atomic_write(p, export_qasm(c).as_bytes())?;
    }
    Ok(())
}

fn print_counts(k: &GateCounts) {
    println!("gate   count");
    println!("cx     {}", k.cnot);
    println!("rz     {}", k.rz);
    println!("ry     {}", k.ry);
    println!("total  {}", k.total());
}

fn cmd_circuit(a: &CircuitArgs) -> Result<i32> {
    let p = load_zpf(&a.params)?;
    let n = p.layers[0].n;
    if n < 2 {
        return Err(SrbbError::InvalidDimension("circuits need n >= 2".into()));
    }
    let c = layers_circuit(&p.layers)?;
    let dist = check_emission(&c, &assemble_layers(&p.layers)?)?;
    emit(&c, &a.json, &a.qasm)?;
    if a.counts {
        print_counts(&c.counts());
    }
    print_json(&CircuitReport { n, layers: p.layers.len(), counts: c.counts(), verified_distance: dist })?;
    Ok(0)
}

fn kron_identity(m: &CMat) -> CMat {
    let d = m.dim();
    CMat::from_fn(2 * d, |i, j| if i / d == j / d { m[(i % d, j % d)] } else { C64::new(0.0, 0.0) })
}

fn cmd_lift(a: &LiftArgs) -> Result<i32> {
    let p = load_zpf(&a.params)?;
    let n = p.layers[0].n;
    if let Some(to) = a.to {
        if to != n + 1 {
            return Err(SrbbError::InvalidDimension(format!("can lift {n} qubits only to {}", n + 1)));
        }
    }
    let resolve = a.resolve.as_deref().map(load_zpf).transpose()?;
    if let Some(r) = &resolve {
        if r.layers[0].n != n + 1 || r.layers.len() != p.layers.len() {
            return Err(SrbbError::InvalidDimension("resolve file must hold as many layers on n + 1 qubits".into()));
        }
    }
    let mut c = Circuit::new(n + 1);
    for (i, l) in p.layers.iter().enumerate().rev() {
        let mode = match &resolve {
            Some(r) => LiftMode::Resolve(&r.layers[i]),
            None => LiftMode::ZeroPad,
        };
        c.extend(&lift_layer(&layer_blocks(l)?, mode)?.circuit());
    }
    let c = simplify(&c);
    let expected = match &resolve {
        Some(r) => assemble_layers(&r.layers)?,
        None => kron_identity(&assemble_layers(&p.layers)?),
    };
    let dist = check_emission(&c, &expected)?;
    emit(&c, &a.json, &a.qasm)?;
    if a.counts {
        print_counts(&c.counts());
    }
    print_json(&CircuitReport { n: n + 1, layers: p.layers.len(), counts: c.counts(), verified_distance: dist })?;
    Ok(0)
}

pub fn load_circuit(path: &Path) -> Result<Circuit> {
    let is_qasm = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("qasm"));
    if is_qasm {
        import_qasm(&std::fs::read_to_string(path)?)
    } else {
        let c: Circuit = read_json(path)?;
        Ok(c)
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let c = load_circuit(&a.circuit)?;
    let m = read_cmat(&a.matrix)?;
    let u = circuit_to_unitary(&c)?;
    let r = VerifyReport { n: c.n, frobenius: frobenius_distance(&u, &m)?, phase_invariant: phase_invariant_distance(&u, &m)? };
    print_json(&r)?;
    let judged = if a.exact_phase { r.frobenius } else { r.phase_invariant };
    Ok(match a.tol {
        Some(t) if !(judged <= t) => 1,
        _ => 0,
    })
}

/// Parameter matrix including the global phase, as written by `approx`.
pub fn params_matrix(path: &Path) -> Result<CMat> {
    reconstruct(&read_json(path)?)
}
