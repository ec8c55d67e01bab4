//! Lifting circuits from `n` to `n + 1` qubits by putting a new qubit on top
//! (old qubit `i` becomes `i + 1`) and adding the required CNOTs.

use crate::circuit::{
    assemble_blocks_with, compose_mzyz, join_mux, layer_block_data, mux_gates, phase_ladder, Axis, BlockData,
    BlockTag, Circuit, Gate, LayerBlocks, MuxForm,
};
use crate::error::{Result, SrbbError};
use crate::synthesis::{BlockDiag, LayerParams, MnZyz, Parity};

fn check_y(n: usize, x: usize, y: usize) -> Result<bool> {
    let h = 1usize << (n - 1);
    if x >= h || (y != x && y != h + x) {
        return Err(SrbbError::IndexOutOfRange(format!("cannot lift x = {x} to y = {y} from n = {n}")));
    }
    Ok(y >= h)
}

/// `PiT^e_{n+1,y}` from `PiT^e_{n,x}` with `y = x` or `y = 2^{n-1} + x`.
pub fn lift_perm_even(circ: &Circuit, x: usize, y: usize) -> Result<Circuit> {
    let n = circ.n;
    let top = check_y(n, x, y)?;
    let mut out = Circuit::new(n + 1);
    if top {
        out.push(Gate::cnot(n + 1, 1));
    }
    out.extend(&circ.padded(1));
    Ok(out)
}

/// `PiT^o_{n+1,y}` from `PiT^o_{n,x}`. With the new top bit the conjugating
/// CNOT moves to qubit 1 and the inner part is the padded even circuit.
pub fn lift_perm_odd(circ: &Circuit, x: usize, y: usize) -> Result<Circuit> {
    let n = circ.n;
    let top = check_y(n, x, y)?;
    if !top {
        return Ok(circ.padded(1));
    }
    let inner = if x == 0 {
        Circuit::new(n)
    } else {
        if circ.len() < 2 {
            return Err(SrbbError::WrongKind("odd permutation circuit too short".into()));
        }
        Circuit { n, gates: circ.gates[1..circ.len() - 1].to_vec() }
    };
    let mut out = Circuit::new(n + 1);
    out.push(Gate::cnot(1, n + 1));
    out.push(Gate::cnot(n + 1, 1));
    out.extend(&inner.padded(1));
    out.push(Gate::cnot(1, n + 1));
    Ok(out)
}

fn rotation_axis(g: &Gate) -> Option<Axis> {
    match g {
        Gate::Rz { .. } => Some(Axis::Z),
        Gate::Ry { .. } => Some(Axis::Y),
        Gate::Cnot { .. } => None,
    }
}

/// `F_{n+1}` from a normal-form `F_n(theta)` and a mirrored `F_n(phi)`:
/// pad both, join them with `CNOT(1, n+1)` twice, collapsing the inner seam.
/// Realizes angles `psi = (theta + phi, theta - phi)`.
pub fn lift_multiplexed(a: &Circuit, b: &Circuit, axis: Axis) -> Result<Circuit> {
    if a.n != b.n {
        return Err(SrbbError::InvalidDimension("multiplexors disagree on n".into()));
    }
    if a.gates.iter().chain(&b.gates).filter_map(rotation_axis).any(|ax| ax != axis) {
        return Err(SrbbError::WrongKind(format!("rotation axis differs from {axis:?}")));
    }
    let n = a.n;
    let gates = join_mux(a.padded(1).gates, b.padded(1).gates, 1, n + 1);
    Ok(Circuit { n: n + 1, gates })
}

/// Angle vector `psi` of the lifted multiplexor.
pub fn lift_angles(theta: &[f64], phi: &[f64]) -> Vec<f64> {
    let lo = theta.iter().zip(phi).map(|(t, p)| t + p);
    let hi = theta.iter().zip(phi).map(|(t, p)| t - p);
    lo.chain(hi).collect()
}

/// Splits `psi` into `(theta, phi)` so that `lift_angles(theta, phi) == psi`.
pub fn split_angles(psi: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let (lo, hi) = psi.split_at(psi.len() / 2);
    (
        lo.iter().zip(hi).map(|(a, b)| (a + b) / 2.0).collect(),
        lo.iter().zip(hi).map(|(a, b)| (a - b) / 2.0).collect(),
    )
}

/// `F_{n+1}(psi)` assembled from two `n`-qubit multiplexors.
fn lifted_mux(n1: usize, axis: Axis, psi: &[f64]) -> Result<Circuit> {
    let n = n1 - 1;
    let controls: Vec<usize> = (1..n).collect();
    let (theta, phi) = split_angles(psi);
    let a = Circuit { n, gates: mux_gates(&controls, n, axis, &theta) };
    let b = Circuit { n, gates: mux_gates(&controls, n, axis, &phi).into_iter().rev().collect() };
    lift_multiplexed(&a, &b, axis)
}

fn lifted_mzyz(m: &MnZyz, form: MuxForm) -> Result<Circuit> {
    let n1 = m.n;
    let b = lifted_mux(n1, Axis::Z, &m.betas())?;
    let g = lifted_mux(n1, Axis::Y, &m.gammas())?;
    let a = lifted_mux(n1, Axis::Z, &m.alphas())?;
    Ok(Circuit { n: n1, gates: compose_mzyz(&b.gates, &g.gates, &a.gates, form) })
}

#[derive(Clone, Copy, Debug)]
pub enum LiftMode<'a> {
    /// Old angles kept (independent of the new qubit), new components zero;
    /// the lifted layer acts as `I (x) layer_n`.
    ZeroPad,
    /// Angles taken from a full parameter set on `n + 1` qubits.
    Resolve(&'a LayerParams),
}

fn dup<T: Clone>(v: &[T]) -> Vec<T> {
    v.iter().chain(v).cloned().collect()
}

fn zero_padded_data(blocks: &LayerBlocks) -> Result<Vec<(BlockTag, BlockData)>> {
    let n = blocks.n;
    let n1 = n + 1;
    let h = 1usize << (n - 1);
    let find = |tag: BlockTag| blocks.blocks.iter().find(|b| b.tag == tag).map(|b| &b.data);
    let missing = |tag: BlockTag| SrbbError::WrongKind(format!("input layer lacks block {tag:?}"));
    let mut out = Vec::new();
    for x in (1..2 * h).rev() {
        let bd = if x < h {
            match find(BlockTag::OddBlockDiag { x }) {
                Some(BlockData::BlockDiag { bd, .. }) => BlockDiag {
                    phases: dup(&bd.phases),
                    su: MnZyz { n: n1, blocks: dup(&bd.su.blocks) },
                },
                _ => return Err(missing(BlockTag::OddBlockDiag { x })),
            }
        } else {
            BlockDiag { phases: vec![0.0; h * 2], su: MnZyz::identity(n1) }
        };
        let perm = BlockData::Perm { x, parity: Parity::Odd };
        out.push((BlockTag::OddPerm { x }, perm.clone()));
        out.push((BlockTag::OddBlockDiag { x }, BlockData::BlockDiag { bd, form: MuxForm::E }));
        out.push((BlockTag::OddPerm { x }, perm));
    }
    for x in (1..2 * h).rev() {
        let m = if x < h {
            match find(BlockTag::EvenMux { x }) {
                Some(BlockData::Mzyz { m, .. }) => MnZyz { n: n1, blocks: dup(&m.blocks) },
                _ => return Err(missing(BlockTag::EvenMux { x })),
            }
        } else {
            MnZyz::identity(n1)
        };
        let perm = BlockData::Perm { x, parity: Parity::Even };
        out.push((BlockTag::EvenPerm { x }, perm.clone()));
        out.push((BlockTag::EvenMux { x }, BlockData::Mzyz { m, form: MuxForm::E }));
        out.push((BlockTag::EvenPerm { x }, perm));
    }
    let lead = match find(BlockTag::PsiLead) {
        Some(BlockData::Mzyz { m, .. }) => MnZyz { n: n1, blocks: dup(&m.blocks) },
        _ => return Err(missing(BlockTag::PsiLead)),
    };
    out.push((BlockTag::PsiLead, BlockData::Mzyz { m: lead, form: MuxForm::E }));
    let phases = match find(BlockTag::ZetaDiag) {
        Some(BlockData::Ladder { phases }) => dup(phases),
        _ => return Err(missing(BlockTag::ZetaDiag)),
    };
    out.push((BlockTag::ZetaDiag, BlockData::Ladder { phases }));
    Ok(out)
}

/// Lifts a layer block by block: permutations through [`lift_perm_even`] /
/// [`lift_perm_odd`], multiplexors through [`lift_multiplexed`], diagonal
/// ladders rebuilt on the new qubit range. In `Resolve` mode the result is
/// gate-for-gate the directly built `(n+1)`-qubit layer.
pub fn lift_layer(blocks: &LayerBlocks, mode: LiftMode) -> Result<LayerBlocks> {
    let n = blocks.n;
    if n < 2 {
        return Err(SrbbError::InvalidDimension(format!("cannot lift a layer on {n} qubits")));
    }
    let n1 = n + 1;
    let h = 1usize << (n - 1);
    let data = match mode {
        LiftMode::ZeroPad => zero_padded_data(blocks)?,
        LiftMode::Resolve(p) => {
            if p.n != n1 {
                return Err(SrbbError::InvalidDimension(format!("parameters for n = {}, expected {n1}", p.n)));
            }
            layer_block_data(p)?
        }
    };
    let perm_n = |x: usize, parity: Parity| -> Result<Circuit> {
        if x == 0 {
            return Ok(Circuit::new(n));
        }
        let tag = match parity {
            Parity::Even => BlockTag::EvenPerm { x },
            Parity::Odd => BlockTag::OddPerm { x },
        };
        blocks
            .blocks
            .iter()
            .find(|b| b.tag == tag)
            .map(|b| b.circuit.clone())
            .ok_or_else(|| SrbbError::WrongKind(format!("input layer lacks block {tag:?}")))
    };
    assemble_blocks_with(n1, data, |_, d| match d {
        BlockData::Perm { x: y, parity } => {
            let x = y % h;
            let base = perm_n(x, *parity)?;
            match parity {
                Parity::Even => lift_perm_even(&base, x, *y),
                Parity::Odd => lift_perm_odd(&base, x, *y),
            }
        }
        BlockData::Mzyz { m, form } => lifted_mzyz(m, *form),
        BlockData::BlockDiag { bd, form } => {
            let mut c = lifted_mzyz(&bd.su, *form)?;
            c.gates.extend(phase_ladder(&bd.phases).0);
            Ok(c)
        }
        BlockData::Ladder { phases } => Ok(Circuit { n: n1, gates: phase_ladder(phases).0 }),
    })
}
