//! JSON state files.
//!
//! Three-fermion states: `{"fermion_336": [[i, j, k, re, im], ...]}` with
//! 1-based modes `i < j < k`; unlisted triples are zero.
//! Three-qubit states: `{"qubits_3": [[i, j, k, re, im], ...]}` with levels in `{0, 1}`.
//! Fock states: `{"d": d, "amplitudes": [[mask, re, im], ...]}`.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::FockState;
use crate::perm::MODES;
use crate::qubit::ThreeQubitState;
use crate::tensor::FermiState336;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FermionFile {
    fermion_336: Vec<(usize, usize, usize, f64, f64)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QubitFile {
    qubits_3: Vec<(usize, usize, usize, f64, f64)>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FockFile {
    d: usize,
    amplitudes: Vec<(usize, f64, f64)>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))
}

fn finite(re: f64, im: f64) -> Result<Complex64> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(parse_err("amplitudes must be finite"))
    }
}

pub fn parse_fermion(text: &str) -> Result<FermiState336> {
    let file: FermionFile = from_json(text)?;
    let mut p = FermiState336::zero();
    let mut seen = [false; 20];
    for (i, j, k, re, im) in file.fermion_336 {
        if !(1 <= i && i < j && j < k && k <= MODES) {
            return Err(parse_err(format!(
                "triple [{i}, {j}, {k}] must be strictly increasing within 1..={MODES}"
            )));
        }
        let n = crate::perm::triple_index(i - 1, j - 1, k - 1).expect("ordered triple");
        if std::mem::replace(&mut seen[n], true) {
            return Err(parse_err(format!("triple [{i}, {j}, {k}] listed twice")));
        }
        p.set(i - 1, j - 1, k - 1, finite(re, im)?)?;
    }
    Ok(p)
}

/// Every nonzero amplitude, in lexicographic triple order.
pub fn fermion_value(p: &FermiState336) -> serde_json::Value {
    let file = FermionFile {
        fermion_336: p
            .iter()
            .filter(|(_, a)| a.norm() != 0.0)
            .map(|(t, a)| (t[0] + 1, t[1] + 1, t[2] + 1, a.re, a.im))
            .collect(),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

pub fn format_fermion(p: &FermiState336) -> String {
    pretty(&fermion_value(p))
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data serializes")
}

pub fn parse_qubits(text: &str) -> Result<ThreeQubitState> {
    let file: QubitFile = from_json(text)?;
    let mut psi = ThreeQubitState::default();
    let mut seen = [false; 8];
    for (i, j, k, re, im) in file.qubits_3 {
        if i > 1 || j > 1 || k > 1 {
            return Err(parse_err(format!("qubit levels [{i}, {j}, {k}] must be 0 or 1")));
        }
        if std::mem::replace(&mut seen[4 * i + 2 * j + k], true) {
            return Err(parse_err(format!("levels [{i}, {j}, {k}] listed twice")));
        }
        psi.set(i, j, k, finite(re, im)?)?;
    }
    Ok(psi)
}

pub fn qubits_value(psi: &ThreeQubitState) -> serde_json::Value {
    let file = QubitFile {
        qubits_3: (0..8)
            .map(|n| {
                let a = psi.amplitudes()[n];
                (n >> 2, (n >> 1) & 1, n & 1, a.re, a.im)
            })
            .collect(),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

pub fn format_qubits(psi: &ThreeQubitState) -> String {
    pretty(&qubits_value(psi))
}

pub fn parse_fock(text: &str) -> Result<FockState> {
    let file: FockFile = from_json(text)?;
    let mut psi = FockState::zero(file.d).map_err(|e| parse_err(e.to_string()))?;
    let mut seen = vec![false; psi.dim()];
    for (mask, re, im) in file.amplitudes {
        if mask >= psi.dim() {
            return Err(parse_err(format!("mask {mask} out of range for {} modes", file.d)));
        }
        if std::mem::replace(&mut seen[mask], true) {
            return Err(parse_err(format!("mask {mask} listed twice")));
        }
        psi.amplitudes_mut()[mask] = finite(re, im)?;
    }
    Ok(psi)
}

pub fn fock_value(psi: &FockState) -> serde_json::Value {
    let file = FockFile {
        d: psi.modes(),
        amplitudes: psi
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() != 0.0)
            .map(|(m, a)| (m, a.re, a.im))
            .collect(),
    };
    serde_json::to_value(file).expect("plain data serializes")
}

pub fn format_fock(psi: &FockState) -> String {
    pretty(&fock_value(psi))
}

pub fn read_fermion(path: &Path) -> Result<FermiState336> {
    parse_fermion(&fs::read_to_string(path)?)
}

pub fn read_qubits(path: &Path) -> Result<ThreeQubitState> {
    parse_qubits(&fs::read_to_string(path)?)
}

pub fn read_fock(path: &Path) -> Result<FockState> {
    parse_fock(&fs::read_to_string(path)?)
}

pub fn write_fermion(path: &Path, p: &FermiState336) -> Result<()> {
    fs::write(path, format_fermion(p) + "\n")?;
    Ok(())
}
