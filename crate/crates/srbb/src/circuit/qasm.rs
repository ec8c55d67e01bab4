//! OpenQASM 2.0 text. Internally `Rz(t) = diag(e^{it}, e^{-it})` and
//! `Ry(t) = [[cos t, sin t], [-sin t, cos t]]`; both map to the standard gates
//! with `lambda = -2t`. Qubit 1 is `q[0]`.

use super::gate::{Circuit, Gate};
use crate::error::{Result, SrbbError};
use std::fmt::Write;

pub fn export_qasm(c: &Circuit) -> String {
    let mut s = String::new();
    s.push_str("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    let _ = writeln!(s, "qreg q[{}];", c.n);
    for g in &c.gates {
        let _ = match *g {
            Gate::Cnot { control, target } => writeln!(s, "cx q[{}],q[{}];", control - 1, target - 1),
            Gate::Rz { qubit, angle } => writeln!(s, "rz({:.16e}) q[{}];", -2.0 * angle, qubit - 1),
            Gate::Ry { qubit, angle } => writeln!(s, "ry({:.16e}) q[{}];", -2.0 * angle, qubit - 1),
        };
    }
    s
}

fn parse_qubit(tok: &str) -> Result<usize> {
    let t = tok.trim();
    let inner = t
        .strip_prefix("q[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| SrbbError::Parse(format!("bad qubit operand '{t}'")))?;
    let k: usize = inner.parse().map_err(|_| SrbbError::Parse(format!("bad qubit index '{inner}'")))?;
    Ok(k + 1)
}

/// Reads back the subset of OpenQASM 2.0 that [`export_qasm`] writes.
pub fn import_qasm(text: &str) -> Result<Circuit> {
    let mut n = None;
    let mut gates = Vec::new();
    for raw in text.lines() {
        let line = raw.split("//").next().unwrap_or("").trim();
        if line.is_empty() || line.starts_with("OPENQASM") || line.starts_with("include") {
            continue;
        }
        let line = line.strip_suffix(';').ok_or_else(|| SrbbError::Parse(format!("missing ';' in '{line}'")))?;
        if let Some(rest) = line.strip_prefix("qreg") {
            let rest = rest.trim();
            let k = rest
                .strip_prefix("q[")
                .and_then(|r| r.strip_suffix(']'))
                .and_then(|r| r.parse::<usize>().ok())
                .ok_or_else(|| SrbbError::Parse(format!("bad qreg '{rest}'")))?;
            n = Some(k);
        } else if let Some(rest) = line.strip_prefix("cx") {
            let (a, b) = rest.split_once(',').ok_or_else(|| SrbbError::Parse(format!("bad cx '{line}'")))?;
            gates.push(Gate::cnot(parse_qubit(a)?, parse_qubit(b)?));
        } else if line.starts_with("rz(") || line.starts_with("ry(") {
            let close = line.find(')').ok_or_else(|| SrbbError::Parse(format!("bad rotation '{line}'")))?;
            let lam: f64 = line[3..close]
                .trim()
                .parse()
                .map_err(|_| SrbbError::Parse(format!("bad angle in '{line}'")))?;
            let q = parse_qubit(&line[close + 1..])?;
            let theta = -lam / 2.0;
            gates.push(if line.starts_with("rz") { Gate::rz(q, theta) } else { Gate::ry(q, theta) });
        } else {
            return Err(SrbbError::Parse(format!("unsupported statement '{line}'")));
        }
    }
    let n = n.ok_or_else(|| SrbbError::Parse("missing qreg".into()))?;
    Circuit::from_gates(n, gates)
}
