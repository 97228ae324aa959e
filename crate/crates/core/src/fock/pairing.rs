//! The spin-invariant bilinear pairing, the transpose it induces, and the
//! antilinear dual χ defined by `⟨χφ|ψ⟩ = (φ, ψ)`.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_modes, CliffordOp, FockState, Generator};
use crate::error::{domain, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::random;

/// Sign attached to the mask `m` in the pairing: `(−1)^{k(k−1)/2}` times the
/// sign of the mode sequence `m` followed by its complement.
pub(crate) fn pairing_sign(d: usize, m: usize) -> f64 {
    let k = m.count_ones() as usize;
    let full = (1usize << d) - 1;
    let comp = full & !m;
    // inversions: modes of the complement that sit below a mode of m
    let mut inversions = 0u32;
    for i in 0..d {
        if m & (1 << i) != 0 {
            inversions += (comp & ((1 << i) - 1)).count_ones();
        }
    }
    let reversal = (k * k.saturating_sub(1) / 2) as u32;
    if (inversions + reversal).is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `(φ, ψ)`: the top-form coefficient of `φᵗ ∧ ψ`.
pub fn bilinear_pairing(phi: &FockState, psi: &FockState) -> Result<Complex64> {
    phi.same_modes(psi)?;
    let d = phi.modes();
    let full = psi.dim() - 1;
    let mut acc = ZERO;
    for (m, a) in phi.amplitudes().iter().enumerate() {
        if *a == ZERO {
            continue;
        }
        acc += a * psi.amplitudes()[full & !m] * pairing_sign(d, m);
    }
    Ok(acc)
}

/// Matrix `M` with `(φ, ψ) = φᵀ M ψ`; a signed permutation.
pub fn pairing_matrix(d: usize) -> Result<CMatrix> {
    check_modes(d)?;
    let n = 1usize << d;
    let mut m = CMatrix::zeros(n, n);
    for mask in 0..n {
        m[(mask, (n - 1) & !mask)] = Complex64::new(pairing_sign(d, mask), 0.0);
    }
    Ok(m)
}

/// The transpose `Aᵗ` fixed by `(φ, Aψ) = (Aᵗφ, ψ)`. On products of
/// generators it reverses the order.
pub fn transpose(a: &CliffordOp) -> Result<CliffordOp> {
    let m = pairing_matrix(a.modes())?;
    CliffordOp::from_matrix(a.modes(), &m * a.matrix().transpose() * m.transpose())
}

/// The antilinear dual: the `k`-particle amplitude on `m` moves, conjugated
/// and signed, to the complementary mask.
pub fn chi_dual(psi: &FockState) -> FockState {
    let d = psi.modes();
    let full = psi.dim() - 1;
    let mut out = FockState::zero(d).expect("valid mode count");
    for (m, a) in psi.amplitudes().iter().enumerate() {
        out.amplitudes_mut()[full & !m] = a.conj() * pairing_sign(d, m);
    }
    out
}

/// `G_ij = ⟨ψ| p^i f_j |ψ⟩`.
pub fn occupation_matrix(psi: &FockState) -> CMatrix {
    let d = psi.modes();
    let mut g = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let moved = psi
                .apply_word(&[Generator::Create(i), Generator::Annihilate(j)])
                .expect("modes in range");
            g[(i, j)] = psi.inner(&moved).expect("same modes");
        }
    }
    g
}

/// `‖G(χψ) − (I − G(ψ))‖` for a normalized state.
pub fn dual_occupation_residual(psi: &FockState) -> Result<f64> {
    if (psi.norm() - 1.0).abs() > 1e-10 {
        return Err(domain(format!("state must be normalized (‖ψ‖ = {})", psi.norm())));
    }
    let d = psi.modes();
    let lhs = occupation_matrix(&chi_dual(psi));
    let rhs = CMatrix::identity(d, d) - occupation_matrix(psi);
    Ok((lhs - rhs).norm())
}

/// `K_ij = (ψ, p^i f_j ψ)` on six modes.
pub fn k_matrix_from_pairing(psi: &FockState) -> Result<CMatrix> {
    let d = psi.modes();
    let mut k = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let moved = psi.apply_word(&[Generator::Create(i), Generator::Annihilate(j)])?;
            k[(i, j)] = bilinear_pairing(psi, &moved)?;
        }
    }
    Ok(k)
}

/// Residuals of the structural properties of χ at one mode count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiResiduals {
    pub d: usize,
    /// `(−1)^{d(d−1)/2}`.
    pub expected_square: f64,
    /// Largest `‖χ²|m⟩ − sign·|m⟩‖` over basis states.
    pub square_residual: f64,
    /// Largest `|⟨χφ|χψ⟩ − ⟨ψ|φ⟩|` over random pairs.
    pub antiunitary_residual: f64,
    /// Largest `|⟨χφ|ψ⟩ − (φ, ψ)|` over random pairs.
    pub defining_residual: f64,
    /// Largest `|(φ, ψ) − sign·(ψ, φ)|` over random pairs.
    pub symmetry_residual: f64,
}

/// Checks χ on a basis sweep and on a few seeded random pairs.
pub fn chi_properties_check(d: usize) -> Result<ChiResiduals> {
    check_modes(d)?;
    if d < 2 {
        return Err(domain("χ checks need at least two modes"));
    }
    let expected = if (d * (d - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    let mut square_residual: f64 = 0.0;
    for m in 0..1usize << d {
        let b = FockState::basis(d, m)?;
        let twice = chi_dual(&chi_dual(&b));
        square_residual = square_residual.max(twice.distance(&b.scale(Complex64::new(expected, 0.0))));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
    let (mut antiunitary, mut defining, mut symmetry): (f64, f64, f64) = (0.0, 0.0, 0.0);
    for _ in 0..8 {
        let phi = random::fock_state(&mut rng, d)?;
        let psi = random::fock_state(&mut rng, d)?;
        let (cphi, cpsi) = (chi_dual(&phi), chi_dual(&psi));
        antiunitary = antiunitary.max((cphi.inner(&cpsi)? - psi.inner(&phi)?).norm());
        defining = defining.max((cphi.inner(&psi)? - bilinear_pairing(&phi, &psi)?).norm());
        symmetry = symmetry.max((bilinear_pairing(&phi, &psi)? - bilinear_pairing(&psi, &phi)? * expected).norm());
    }
    Ok(ChiResiduals {
        d,
        expected_square: expected,
        square_residual,
        antiunitary_residual: antiunitary,
        defining_residual: defining,
        symmetry_residual: symmetry,
    })
}
