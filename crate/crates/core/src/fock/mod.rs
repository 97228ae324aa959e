//! Fermionic Fock space over `d` modes.
//!
//! Basis states are occupation bitmasks; bit `i` set means mode `i` is
//! occupied, and the mask `{i1 < … < ik}` stands for `f†_{i1} ⋯ f†_{ik} |0⟩`.
//! The creation operator `p^i = f†_i` therefore acts with the sign
//! `(−1)^{#occupied modes below i}`; every other sign in this module is
//! derived from that rule. Modes are 0-based.

mod fierz;
mod pairing;
mod spin;

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::perm::{triple_index, TRIPLES};
use crate::tensor::FermiState336;

pub use fierz::{
    fierz_check, fierz_kk_dagger, projector_expansions_check, theta_basis, FierzResiduals, Monomial,
    ProjectorResiduals, ThetaBasis,
};
pub use pairing::{
    bilinear_pairing, chi_dual, chi_properties_check, dual_occupation_residual, k_matrix_from_pairing,
    occupation_matrix, pairing_matrix, transpose, ChiResiduals,
};
pub use spin::{
    annihilator_dimension, apply_local_transforms, embed_distinguishable, generator_action_residual,
    local_embedding_residual, one_body_action, orthogonal_action, pairing_invariance_residual, parity_leakage,
    spin_generator_op, spin_transform, SpinGenerator,
};

/// Largest supported mode count.
pub const MAX_MODES: usize = 8;

/// Largest mode count for the `4^d`-sized operator bases.
pub const MAX_BASIS_MODES: usize = 6;

pub(crate) fn check_modes(d: usize) -> Result<()> {
    if d == 0 {
        Err(domain("mode count must be positive"))
    } else if d > MAX_MODES {
        Err(Error::Resource(format!(
            "{d} modes exceed the dense limit of {MAX_MODES}"
        )))
    } else {
        Ok(())
    }
}

/// `(−1)^{#occupied modes below i}`.
#[inline]
pub fn jw_sign(mask: usize, i: usize) -> f64 {
    if (mask & ((1 << i) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// A creation (`p^i`) or annihilation (`f_i`) operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    Create(usize),
    Annihilate(usize),
}

impl Generator {
    /// Image of a basis state: target mask and sign, or `None` for zero.
    #[inline]
    pub fn on_basis(self, mask: usize) -> Option<(usize, f64)> {
        match self {
            Generator::Create(i) if mask & (1 << i) == 0 => Some((mask | (1 << i), jw_sign(mask, i))),
            Generator::Annihilate(i) if mask & (1 << i) != 0 => Some((mask & !(1 << i), jw_sign(mask, i))),
            _ => None,
        }
    }

    pub fn mode(self) -> usize {
        match self {
            Generator::Create(i) | Generator::Annihilate(i) => i,
        }
    }
}

/// Applies a product of generators (rightmost first) to a basis state.
pub fn word_on_basis(word: &[Generator], mask: usize) -> Option<(usize, f64)> {
    let mut m = mask;
    let mut sign = 1.0;
    for g in word.iter().rev() {
        let (next, s) = g.on_basis(m)?;
        m = next;
        sign *= s;
    }
    Some((m, sign))
}

/// A vector in the `2^d`-dimensional Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    d: usize,
    amps: Vec<Complex64>,
}

impl FockState {
    pub fn zero(d: usize) -> Result<Self> {
        check_modes(d)?;
        Ok(Self {
            d,
            amps: vec![ZERO; 1 << d],
        })
    }

    /// The Slater determinant of the modes set in `mask` (the vacuum for 0).
    pub fn basis(d: usize, mask: usize) -> Result<Self> {
        let mut s = Self::zero(d)?;
        if mask >= s.amps.len() {
            return Err(domain(format!("mask {mask} has modes beyond {d}")));
        }
        s.amps[mask] = Complex64::new(1.0, 0.0);
        Ok(s)
    }

    pub fn vacuum(d: usize) -> Result<Self> {
        Self::basis(d, 0)
    }

    pub fn from_amplitudes(d: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_modes(d)?;
        if amps.len() != 1 << d {
            return Err(domain(format!(
                "{} amplitudes given for {d} modes (need {})",
                amps.len(),
                1 << d
            )));
        }
        Ok(Self { d, amps })
    }

    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn amplitude(&self, mask: usize) -> Complex64 {
        self.amps.get(mask).copied().unwrap_or(ZERO)
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(domain("cannot normalize the zero state"));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| *a == ZERO)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            d: self.d,
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }

    /// `⟨self|other⟩`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.same_modes(other)?;
        Ok(self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub(crate) fn same_modes(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            Err(domain(format!("mode counts differ: {} vs {}", self.d, other.d)))
        } else {
            Ok(())
        }
    }

    /// Applies a product of generators, rightmost first.
    pub fn apply_word(&self, word: &[Generator]) -> Result<Self> {
        for g in word {
            if g.mode() >= self.d {
                return Err(domain(format!("mode {} out of range 0..{}", g.mode(), self.d)));
            }
        }
        let mut out = vec![ZERO; self.amps.len()];
        for (m, a) in self.amps.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            if let Some((t, s)) = word_on_basis(word, m) {
                out[t] += a * s;
            }
        }
        Ok(Self { d: self.d, amps: out })
    }

    /// Component with exactly `k` particles.
    pub fn particle_sector(&self, k: usize) -> Self {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(m, a)| if m.count_ones() as usize == k { *a } else { ZERO })
            .collect();
        Self { d: self.d, amps }
    }

    /// Component of even (`even = true`) or odd particle number.
    pub fn parity_sector(&self, even: bool) -> Self {
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(m, a)| if (m.count_ones() % 2 == 0) == even { *a } else { ZERO })
            .collect();
        Self { d: self.d, amps }
    }

    /// Relabels mode `i` as `perm[i]`, reordering each basis product into
    /// increasing order with the matching sign.
    pub fn permute_modes(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.d {
            return Err(domain("permutation length must equal the mode count"));
        }
        let mut seen = 0usize;
        for &p in perm {
            if p >= self.d || seen & (1 << p) != 0 {
                return Err(domain(format!("{perm:?} is not a permutation")));
            }
            seen |= 1 << p;
        }
        let mut out = vec![ZERO; self.amps.len()];
        for (m, a) in self.amps.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            let images: Vec<usize> = (0..self.d).filter(|i| m & (1 << i) != 0).map(|i| perm[i]).collect();
            let target = images.iter().fold(0, |acc, i| acc | (1 << i));
            let sign = crate::perm::permutation_sign(&images) as f64;
            out[target] += a * sign;
        }
        Ok(Self { d: self.d, amps: out })
    }

    /// The three-particle sector of six modes as a [`FermiState336`].
    pub fn to_fermi_state(&self) -> Result<FermiState336> {
        if self.d != 6 {
            return Err(domain(format!("three-fermion states need 6 modes, got {}", self.d)));
        }
        let mut amps = [ZERO; 20];
        for (n, t) in TRIPLES.iter().enumerate() {
            amps[n] = self.amps[triple_mask(*t)];
        }
        Ok(FermiState336::from_amplitudes(amps))
    }

    pub fn from_fermi_state(p: &FermiState336) -> Self {
        let mut amps = vec![ZERO; 64];
        for (t, a) in p.iter() {
            amps[triple_mask(t)] = a;
        }
        Self { d: 6, amps }
    }
}

fn triple_mask(t: [usize; 3]) -> usize {
    debug_assert!(triple_index(t[0], t[1], t[2]).is_some());
    (1 << t[0]) | (1 << t[1]) | (1 << t[2])
}

impl Add for &FockState {
    type Output = FockState;
    fn add(self, rhs: &FockState) -> FockState {
        assert_eq!(self.d, rhs.d, "mode counts differ");
        FockState {
            d: self.d,
            amps: self.amps.iter().zip(&rhs.amps).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FockState {
    type Output = FockState;
    fn sub(self, rhs: &FockState) -> FockState {
        assert_eq!(self.d, rhs.d, "mode counts differ");
        FockState {
            d: self.d,
            amps: self.amps.iter().zip(&rhs.amps).map(|(a, b)| a - b).collect(),
        }
    }
}

/// A dense linear operator on the Fock space over `d` modes.
#[derive(Debug, Clone, PartialEq)]
pub struct CliffordOp {
    d: usize,
    matrix: CMatrix,
}

impl CliffordOp {
    pub fn from_matrix(d: usize, matrix: CMatrix) -> Result<Self> {
        check_modes(d)?;
        let n = 1 << d;
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(domain(format!(
                "operator on {d} modes must be {n}x{n}, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { d, matrix })
    }

    pub fn identity(d: usize) -> Result<Self> {
        check_modes(d)?;
        Ok(Self {
            d,
            matrix: CMatrix::identity(1 << d, 1 << d),
        })
    }

    pub fn zero(d: usize) -> Result<Self> {
        check_modes(d)?;
        Ok(Self {
            d,
            matrix: CMatrix::zeros(1 << d, 1 << d),
        })
    }

    /// Dense matrix of a product of generators.
    pub fn word(d: usize, word: &[Generator]) -> Result<Self> {
        check_modes(d)?;
        for g in word {
            if g.mode() >= d {
                return Err(domain(format!("mode {} out of range 0..{d}", g.mode())));
            }
        }
        let n = 1 << d;
        let mut matrix = CMatrix::zeros(n, n);
        for m in 0..n {
            if let Some((t, s)) = word_on_basis(word, m) {
                matrix[(t, m)] = Complex64::new(s, 0.0);
            }
        }
        Ok(Self { d, matrix })
    }

    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            d: self.d,
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            d: self.d,
            matrix: &self.matrix * c,
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.matrix.trace()
    }

    pub fn apply(&self, psi: &FockState) -> Result<FockState> {
        if psi.d != self.d {
            return Err(domain(format!(
                "operator on {} modes applied to a state on {}",
                self.d, psi.d
            )));
        }
        let v = nalgebra::DVector::from_column_slice(&psi.amps);
        let out = &self.matrix * v;
        Ok(FockState {
            d: self.d,
            amps: out.iter().copied().collect(),
        })
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.d != other.d {
            return Err(domain("operators act on different mode counts"));
        }
        Ok(Self {
            d: self.d,
            matrix: &self.matrix * &other.matrix,
        })
    }

    /// Largest entry modulus of the difference.
    pub fn max_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).iter().fold(0.0, |m, z| m.max(z.norm()))
    }
}

impl Add for &CliffordOp {
    type Output = CliffordOp;
    fn add(self, rhs: &CliffordOp) -> CliffordOp {
        assert_eq!(self.d, rhs.d, "mode counts differ");
        CliffordOp {
            d: self.d,
            matrix: &self.matrix + &rhs.matrix,
        }
    }
}

impl Sub for &CliffordOp {
    type Output = CliffordOp;
    fn sub(self, rhs: &CliffordOp) -> CliffordOp {
        assert_eq!(self.d, rhs.d, "mode counts differ");
        CliffordOp {
            d: self.d,
            matrix: &self.matrix - &rhs.matrix,
        }
    }
}

impl Mul for &CliffordOp {
    type Output = CliffordOp;
    fn mul(self, rhs: &CliffordOp) -> CliffordOp {
        assert_eq!(self.d, rhs.d, "mode counts differ");
        CliffordOp {
            d: self.d,
            matrix: &self.matrix * &rhs.matrix,
        }
    }
}

/// The creation operator `p^i`.
pub fn create(d: usize, i: usize) -> Result<CliffordOp> {
    check_index(d, i)?;
    CliffordOp::word(d, &[Generator::Create(i)])
}

/// The annihilation operator `f_i`.
pub fn annihilate(d: usize, i: usize) -> Result<CliffordOp> {
    check_index(d, i)?;
    CliffordOp::word(d, &[Generator::Annihilate(i)])
}

fn check_index(d: usize, i: usize) -> Result<()> {
    check_modes(d)?;
    if i >= d {
        Err(domain(format!("mode index {i} out of range 0..{d}")))
    } else {
        Ok(())
    }
}

/// Largest violation of the canonical anticommutation relations over all
/// basis states, evaluated with exact sign arithmetic.
pub fn car_violation(d: usize) -> Result<f64> {
    check_modes(d)?;
    let gens: Vec<Generator> = (0..d)
        .map(Generator::Create)
        .chain((0..d).map(Generator::Annihilate))
        .collect();
    let n = 1usize << d;
    let mut worst: f64 = 0.0;
    for &x in &gens {
        for &y in &gens {
            let expect = match (x, y) {
                (Generator::Create(i), Generator::Annihilate(j)) | (Generator::Annihilate(j), Generator::Create(i))
                    if i == j =>
                {
                    1.0
                }
                _ => 0.0,
            };
            for m in 0..n {
                // {x, y}|m⟩ split into the diagonal part and off-diagonal images
                let mut diagonal = 0.0;
                let mut off: Vec<(usize, f64)> = Vec::with_capacity(2);
                for word in [[x, y], [y, x]] {
                    match word_on_basis(&word, m) {
                        Some((t, s)) if t == m => diagonal += s,
                        Some((t, s)) => match off.iter_mut().find(|(u, _)| *u == t) {
                            Some(slot) => slot.1 += s,
                            None => off.push((t, s)),
                        },
                        None => {}
                    }
                }
                worst = worst.max((diagonal - expect).abs());
                for (_, v) in off {
                    worst = worst.max(v.abs());
                }
            }
        }
    }
    Ok(worst)
}
