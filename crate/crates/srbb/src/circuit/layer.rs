//! One `zeta * Psi * Phi` layer as a circuit, block by block.

use super::build::{block_diag_circuit, mzyz_circuit, perm_circuit, phase_ladder, MuxForm};
use super::gate::{Circuit, Gate};
use super::simplify::simplify;
use crate::error::{Result, SrbbError};
use crate::synthesis::{
    group_even, group_odd, product_of_srbb_exps, BlockDiag, LayerParams, MnZyz, Parity,
};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockTag {
    ZetaDiag,
    PsiLead,
    EvenPerm { x: usize },
    EvenMux { x: usize },
    OddPerm { x: usize },
    OddBlockDiag { x: usize },
}

/// What a block computes; the gate list is a function of this and `n`.
#[derive(Clone, Debug, PartialEq)]
pub enum BlockData {
    Perm { x: usize, parity: Parity },
    Mzyz { m: MnZyz, form: MuxForm },
    BlockDiag { bd: BlockDiag, form: MuxForm },
    /// Diagonal phases over qubits `1..n-1`, one per block index.
    Ladder { phases: Vec<f64> },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LayerBlock {
    pub tag: BlockTag,
    pub data: BlockData,
    pub circuit: Circuit,
}

/// Blocks in application order: odd sandwiches (x descending), even
/// sandwiches (x descending), the leading MnZYZ, the remaining diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerBlocks {
    pub n: usize,
    pub blocks: Vec<LayerBlock>,
}

impl LayerBlocks {
    pub fn circuit(&self) -> Circuit {
        let mut c = Circuit::new(self.n);
        for b in &self.blocks {
            c.extend(&b.circuit);
        }
        c
    }
}

pub fn block_circuit(n: usize, data: &BlockData) -> Circuit {
    match data {
        BlockData::Perm { x, parity } => perm_circuit(n, *x, *parity).expect("x in range"),
        BlockData::Mzyz { m, form } => mzyz_circuit(m, *form),
        BlockData::BlockDiag { bd, form } => block_diag_circuit(bd, *form),
        BlockData::Ladder { phases } => Circuit { n, gates: phase_ladder(phases).0 },
    }
}

/// Form whose first CNOT cancels against `prev` when possible.
pub fn pick_form(n: usize, prev: Option<&Gate>) -> MuxForm {
    if prev == Some(&Gate::cnot(1, n)) {
        MuxForm::S
    } else {
        MuxForm::E
    }
}

/// Splits zeta into its `A (x) Z` factors and the block phases of its `A (x) I` part.
pub fn split_zeta(p: &LayerParams) -> (Vec<(usize, f64)>, Vec<f64>) {
    let n = p.n;
    let mut zfac = Vec::new();
    let mut phases = vec![0.0; 1 << (n - 1)];
    for &(j, t) in &p.zeta {
        let v = ((j + 1) as f64).sqrt().round() as usize - 1;
        if v & 1 == 1 {
            zfac.push((j, t));
        } else {
            for (k, ph) in phases.iter_mut().enumerate() {
                let s = if (v & (k << 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                *ph += s * t;
            }
        }
    }
    (zfac, phases)
}

/// `zeta_Z * prod(psi lead)`, an MnZYZ matrix.
pub fn psi_lead_matrix(p: &LayerParams) -> Result<MnZyz> {
    let (mut f, _) = split_zeta(p);
    f.extend_from_slice(p.psi_lead());
    MnZyz::from_matrix(&product_of_srbb_exps(p.n, &f))
}

/// Block data of one layer in application order, before gate forms are chosen.
pub fn layer_block_data(p: &LayerParams) -> Result<Vec<(BlockTag, BlockData)>> {
    p.validate()?;
    let n = p.n;
    if n < 2 {
        return Err(SrbbError::InvalidDimension(format!("layer circuits need n >= 2, got {n}")));
    }
    let groups = 1usize << (n - 1);
    let mut out = Vec::new();
    for x in (1..groups).rev() {
        let bd = BlockDiag::from_matrix(&group_odd(n, x, &p.group_angles(x, Parity::Odd))?)?;
        let perm = BlockData::Perm { x, parity: Parity::Odd };
        out.push((BlockTag::OddPerm { x }, perm.clone()));
        out.push((BlockTag::OddBlockDiag { x }, BlockData::BlockDiag { bd, form: MuxForm::E }));
        out.push((BlockTag::OddPerm { x }, perm));
    }
    for x in (1..groups).rev() {
        let m = MnZyz::from_matrix(&group_even(n, x, &p.group_angles(x, Parity::Even))?)?;
        let perm = BlockData::Perm { x, parity: Parity::Even };
        out.push((BlockTag::EvenPerm { x }, perm.clone()));
        out.push((BlockTag::EvenMux { x }, BlockData::Mzyz { m, form: MuxForm::E }));
        out.push((BlockTag::EvenPerm { x }, perm));
    }
    out.push((BlockTag::PsiLead, BlockData::Mzyz { m: psi_lead_matrix(p)?, form: MuxForm::E }));
    out.push((BlockTag::ZetaDiag, BlockData::Ladder { phases: split_zeta(p).1 }));
    Ok(out)
}

/// Fixes each multiplexed block's form from the gate before it and emits circuits.
pub fn assemble_blocks(n: usize, data: Vec<(BlockTag, BlockData)>) -> LayerBlocks {
    assemble_blocks_with(n, data, |_, d| Ok(block_circuit(n, d))).expect("direct construction cannot fail")
}

/// As [`assemble_blocks`] with a caller-supplied circuit builder.
pub fn assemble_blocks_with(
    n: usize,
    data: Vec<(BlockTag, BlockData)>,
    mut build: impl FnMut(&BlockTag, &BlockData) -> Result<Circuit>,
) -> Result<LayerBlocks> {
    let mut blocks: Vec<LayerBlock> = Vec::with_capacity(data.len());
    let mut last: Option<Gate> = None;
    for (tag, mut d) in data {
        match &mut d {
            BlockData::Mzyz { form, .. } | BlockData::BlockDiag { form, .. } => *form = pick_form(n, last.as_ref()),
            _ => {}
        }
        let circuit = build(&tag, &d)?;
        if let Some(g) = circuit.gates.last() {
            last = Some(*g);
        }
        blocks.push(LayerBlock { tag, data: d, circuit });
    }
    Ok(LayerBlocks { n, blocks })
}

pub fn layer_blocks(p: &LayerParams) -> Result<LayerBlocks> {
    Ok(assemble_blocks(p.n, layer_block_data(p)?))
}

/// Block construction for any `n >= 2`, then the peephole pass.
pub fn generic_layer_circuit(p: &LayerParams) -> Result<Circuit> {
    Ok(simplify(&layer_blocks(p)?.circuit()))
}

/// Circuit of one layer; equals `assemble_layer(p)` exactly.
pub fn layer_circuit(p: &LayerParams) -> Result<Circuit> {
    if p.n == 2 {
        two_qubit_circuit(p)
    } else {
        generic_layer_circuit(p)
    }
}

/// Circuit of `prod_l layer_l` (first layer leftmost in the product, so applied last).
pub fn layers_circuit(layers: &[LayerParams]) -> Result<Circuit> {
    let first = layers.first().ok_or_else(|| SrbbError::Parse("need at least one layer".into()))?;
    let mut c = Circuit::new(first.n);
    for l in layers.iter().rev() {
        c.extend(&layer_circuit(l)?);
    }
    Ok(simplify(&c))
}

/// The two-qubit layer with 14 CNOTs. The SWAP-type odd permutations are
/// written so they fuse with the even CNOT(2,1), and the Z(x)I part of zeta is
/// moved through the leading MnZYZ and CNOT(2,1), where it becomes Z(x)Z and
/// joins the even block.
pub fn two_qubit_circuit(p: &LayerParams) -> Result<Circuit> {
    p.validate()?;
    if p.n != 2 {
        return Err(SrbbError::InvalidDimension(format!("two-qubit path got n = {}", p.n)));
    }
    let bo = MnZyz::from_matrix(&group_odd(2, 1, &p.group_angles(1, Parity::Odd))?)?;
    let ge = group_even(2, 1, &p.group_angles(1, Parity::Even))?;
    // U8 = Z (x) I; after conjugation by CNOT(2,1) it is Z (x) Z = U15
    let theta8 = p.zeta.iter().find(|z| z.0 == 8).map(|z| z.1).unwrap_or(0.0);
    let zz = product_of_srbb_exps(2, &[(15, theta8)]);
    let be = MnZyz::from_matrix(&zz.matmul(&ge))?;
    let lead = psi_lead_matrix(p)?;

    let (c12, c21) = (Gate::cnot(1, 2), Gate::cnot(2, 1));
    let mut g = vec![c12, c21, c12];
    g.extend(mzyz_circuit(&bo, MuxForm::S).gates);
    g.extend([c21, c12, c21, c21]);
    g.extend(mzyz_circuit(&be, MuxForm::S).gates);
    g.push(c21);
    g.extend(mzyz_circuit(&lead, MuxForm::E).gates);
    Ok(simplify(&Circuit { n: 2, gates: g }))
}

/// `L (2 * 4^n + (n - 5) 2^{n-1})`.
pub fn cnot_bound_half(n: usize, layers: usize) -> i64 {
    layers as i64 * (2 * (1i64 << (2 * n)) + (n as i64 - 5) * (1i64 << (n - 1)))
}

/// `L (2 * 4^n + (n - 5) 2^n)`.
pub fn cnot_bound_full(n: usize, layers: usize) -> i64 {
    layers as i64 * (2 * (1i64 << (2 * n)) + (n as i64 - 5) * (1i64 << n))
}

/// `L (3/2 * 4^n - 5/2 * 2^n + 1)`.
pub fn rz_bound(n: usize, layers: usize) -> i64 {
    layers as i64 * ((3 * (1i64 << (2 * n)) - 5 * (1i64 << n)) / 2 + 1)
}

pub fn mzyz_cnot_bound(n: usize) -> usize {
    3 * (1 << (n - 1)) - 2
}

pub fn block_diag_cnot_bound(n: usize) -> usize {
    5 * (1 << (n - 1)) - 6
}

/// Row of the CNOT growth series: emitted count, both bounds, and the
/// increment over `n - 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    pub cnot: usize,
    pub rz: usize,
    pub ry: usize,
    pub bound_half: i64,
    pub bound_full: i64,
    pub added_cnot: Option<usize>,
}

pub fn cnot_growth_series(n_max: usize) -> Result<Vec<GrowthRow>> {
    let mut rows: Vec<GrowthRow> = Vec::new();
    for n in 2..=n_max {
        let k = layer_circuit(&LayerParams::zeros(n))?.counts();
        let added = rows.last().map(|r| k.cnot.saturating_sub(r.cnot));
        rows.push(GrowthRow {
            n,
            cnot: k.cnot,
            rz: k.rz,
            ry: k.ry,
            bound_half: cnot_bound_half(n, 1),
            bound_full: cnot_bound_full(n, 1),
            added_cnot: added,
        });
    }
    Ok(rows)
}
