//! Recursive Hermitian-unitary bases, exact and variational synthesis of
//! unitaries as products of basis-element exponentials, and lowering to
//! CNOT + Rz + Ry circuits that scale from `n` to `n + 1` qubits.

pub mod basis;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod io;
pub mod linalg;
pub mod optimizer;
pub mod scaling;
pub mod simulator;
pub mod synthesis;
pub mod targets;

pub use error::{Result, SrbbError};
pub use linalg::{CMat, C64};
