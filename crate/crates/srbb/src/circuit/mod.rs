//! Gate-level circuits: permutations, diagonal exponentials, multiplexed
//! rotations, MnZYZ and block-diagonal circuits, full layers, and QASM.

mod build;
mod gate;
mod layer;
mod qasm;
mod simplify;

pub use build::*;
pub use gate::*;
pub use layer::*;
pub use qasm::{export_qasm, import_qasm};
pub use simplify::{commutes, simplify};
