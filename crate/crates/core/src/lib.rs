//! Entanglement invariants of three fermions with six single-particle modes.
//!
//! States live in [`tensor::FermiState336`]; [`invariants`] builds the
//! covariant matrix K and classifies SLOCC orbits, [`rdm`] handles reduced
//! density matrices, [`qubit`] embeds three qubits and checks the CKW
//! relations, and [`fock`] works in the full Fock space with the spin-invariant
//! pairing and its Fierz identities.

// `!(x > y)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod fock;
pub mod invariants;
pub mod io;
pub mod linalg;
pub mod perm;
pub mod qubit;
pub mod random;
pub mod rdm;
pub mod sampling;
pub mod tensor;
pub mod verify;
