//! Three-qubit states, their embedding into three fermions over six modes,
//! and the tangle and concurrence relations between the two pictures.
//!
//! Qubit `q ∈ {0,1,2}` in level `b ∈ {0,1}` occupies fermion mode `q + 3b`,
//! so the modes read `(1, 2, 3, 1̄, 2̄, 3̄)` in that order. Local transforms
//! are easiest to write in the interleaved order `(1, 1̄, 2, 2̄, 3, 3̄)`; see
//! [`BLOCK_ORDER`].

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::invariants::{concurrence, k_matrix, quartic_d};
use crate::linalg::{self, CMatrix, ZERO};
use crate::rdm::{one_rdm, two_rdm};
use crate::tensor::{FermiState336, SloccTransform};

/// Interleaved position `2q + b` to embedding mode `q + 3b`.
pub const BLOCK_ORDER: [usize; 6] = [0, 3, 1, 4, 2, 5];

/// Fermion mode hosting qubit `q` in level `b`.
#[inline]
pub fn mode_of(q: usize, b: usize) -> usize {
    q + 3 * b
}

/// Amplitudes `ψ_ijk`, stored at index `4i + 2j + k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeQubitState {
    amps: [Complex64; 8],
}

impl Default for ThreeQubitState {
    fn default() -> Self {
        Self { amps: [ZERO; 8] }
    }
}

impl ThreeQubitState {
    pub fn from_amplitudes(amps: [Complex64; 8]) -> Self {
        Self { amps }
    }

    /// The product basis state `|ijk⟩`.
    pub fn basis(i: usize, j: usize, k: usize) -> Result<Self> {
        let mut s = Self::default();
        s.set(i, j, k, Complex64::new(1.0, 0.0))?;
        Ok(s)
    }

    /// `(|000⟩ + |111⟩)/√2`.
    pub fn ghz() -> Self {
        let a = Complex64::new(0.5f64.sqrt(), 0.0);
        let mut s = Self::default();
        s.amps[0] = a;
        s.amps[7] = a;
        s
    }

    /// `(|001⟩ + |010⟩ + |100⟩)/√3`.
    pub fn w() -> Self {
        let a = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
        let mut s = Self::default();
        s.amps[1] = a;
        s.amps[2] = a;
        s.amps[4] = a;
        s
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Complex64) -> Result<()> {
        if i > 1 || j > 1 || k > 1 {
            return Err(domain(format!("qubit index ({i}, {j}, {k}) outside {{0, 1}}")));
        }
        self.amps[4 * i + 2 * j + k] = v;
        Ok(())
    }

    /// `ψ_ijk`; indices must be 0 or 1.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        self.amps[4 * i + 2 * j + k]
    }

    pub fn amplitudes(&self) -> &[Complex64; 8] {
        &self.amps
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
        let mut out = *self;
        out.amps.iter_mut().for_each(|a| *a /= n);
        Ok(out)
    }

    /// `ψ'_ijk = g1[i'][i] g2[j'][j] g3[k'][k] ψ_i'j'k'`, matching the
    /// index placement of [`FermiState336::apply_slocc`].
    pub fn apply_local(&self, g: [&CMatrix; 3]) -> Result<Self> {
        for m in g {
            if m.nrows() != 2 || m.ncols() != 2 {
                return Err(domain("local transforms must be 2x2"));
            }
        }
        let mut out = Self::default();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let mut acc = ZERO;
                    for a in 0..2 {
                        for b in 0..2 {
                            for c in 0..2 {
                                acc += g[0][(a, i)] * g[1][(b, j)] * g[2][(c, k)] * self.get(a, b, c);
                            }
                        }
                    }
                    out.amps[4 * i + 2 * j + k] = acc;
                }
            }
        }
        Ok(out)
    }

    /// `ψ̃_ijk = ε_ii' ε_jj' ε_kk' conj(ψ_i'j'k')` with `ε = iσ_y`.
    pub fn dual(&self) -> Self {
        const EPS: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];
        let mut out = Self::default();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    let s = EPS[i][1 - i] * EPS[j][1 - j] * EPS[k][1 - k];
                    out.amps[4 * i + 2 * j + k] = self.get(1 - i, 1 - j, 1 - k).conj() * s;
                }
            }
        }
        out
    }
}

/// Places `ψ_ijk` on the triple of modes `(i·3, 1 + j·3, 2 + k·3)` listed
/// in qubit order; the stored amplitude picks up the sorting sign.
pub fn embed(psi: &ThreeQubitState) -> FermiState336 {
    let mut p = FermiState336::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                p.set(mode_of(0, i), mode_of(1, j), mode_of(2, k), psi.get(i, j, k))
                    .expect("distinct modes");
            }
        }
    }
    p
}

/// Cayley's hyperdeterminant.
pub fn hyperdeterminant(psi: &ThreeQubitState) -> Complex64 {
    let a = |i, j, k| psi.get(i, j, k);
    let squares = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);
    let pairs = [
        a(0, 0, 0) * a(1, 1, 1),
        a(0, 0, 1) * a(1, 1, 0),
        a(0, 1, 0) * a(1, 0, 1),
        a(1, 0, 0) * a(0, 1, 1),
    ];
    let mut cross = ZERO;
    for x in 0..4 {
        for y in x + 1..4 {
            cross += pairs[x] * pairs[y];
        }
    }
    let quads = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
    squares - cross * 2.0 + quads * 4.0
}

/// `τ_ABC = 4 |Det ψ|`.
pub fn three_tangle(psi: &ThreeQubitState) -> f64 {
    4.0 * hyperdeterminant(psi).norm()
}

/// A pair of qubits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pair {
    AB,
    AC,
    BC,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::AB, Pair::AC, Pair::BC];

    pub fn parse(tag: &str) -> Result<Self> {
        match tag {
            "AB" | "ab" => Ok(Pair::AB),
            "AC" | "ac" => Ok(Pair::AC),
            "BC" | "bc" => Ok(Pair::BC),
            _ => Err(domain(format!("unknown qubit pair {tag:?}"))),
        }
    }

    /// The qubits of the pair and the traced-out one.
    pub fn qubits(self) -> (usize, usize, usize) {
        match self {
            Pair::AB => (0, 1, 2),
            Pair::AC => (0, 2, 1),
            Pair::BC => (1, 2, 0),
        }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pair::AB => "AB",
            Pair::AC => "AC",
            Pair::BC => "BC",
        })
    }
}

fn amp_by_qubit(psi: &ThreeQubitState, levels: [usize; 3]) -> Complex64 {
    psi.get(levels[0], levels[1], levels[2])
}

/// `ρ_{ij|kl} = Σ_n ψ_{ij n} conj(ψ_{kl n})` for the two qubits of `pair`,
/// rows and columns ordered `00, 01, 10, 11`.
pub fn pair_rdm(psi: &ThreeQubitState, pair: Pair) -> CMatrix {
    let (x, y, z) = pair.qubits();
    let mut r = CMatrix::zeros(4, 4);
    for row in 0..4 {
        for col in 0..4 {
            let mut acc = ZERO;
            for n in 0..2 {
                let mut lr = [0; 3];
                let mut lc = [0; 3];
                lr[x] = row >> 1;
                lr[y] = row & 1;
                lr[z] = n;
                lc[x] = col >> 1;
                lc[y] = col & 1;
                lc[z] = n;
                acc += amp_by_qubit(psi, lr) * amp_by_qubit(psi, lc).conj();
            }
            r[(row, col)] = acc;
        }
    }
    r
}

/// One-qubit reduced density matrix of qubit `q`.
pub fn qubit_rdm(psi: &ThreeQubitState, q: usize) -> CMatrix {
    let mut r = CMatrix::zeros(2, 2);
    for b in 0..2 {
        for c in 0..2 {
            let mut acc = ZERO;
            for m in 0..4 {
                let (u, v) = (m >> 1, m & 1);
                let mut lb = [0; 3];
                let mut lc = [0; 3];
                let others: Vec<usize> = (0..3).filter(|&o| o != q).collect();
                lb[q] = b;
                lc[q] = c;
                lb[others[0]] = u;
                lc[others[0]] = u;
                lb[others[1]] = v;
                lc[others[1]] = v;
                acc += amp_by_qubit(psi, lb) * amp_by_qubit(psi, lc).conj();
            }
            r[(b, c)] = acc;
        }
    }
    r
}

/// `det ρ_q`, real for a Hermitian 2×2 matrix.
pub fn qubit_rdm_det(psi: &ThreeQubitState, q: usize) -> f64 {
    let r = qubit_rdm(psi, q);
    (r[(0, 0)] * r[(1, 1)] - r[(0, 1)] * r[(1, 0)]).re
}

/// `(σ_y⊗σ_y) conj(ρ) (σ_y⊗σ_y)`.
pub fn spin_flip_rdm(rho: &CMatrix) -> CMatrix {
    let mut s = CMatrix::zeros(4, 4);
    s[(0, 3)] = Complex64::new(-1.0, 0.0);
    s[(1, 2)] = Complex64::new(1.0, 0.0);
    s[(2, 1)] = Complex64::new(1.0, 0.0);
    s[(3, 0)] = Complex64::new(-1.0, 0.0);
    &s * rho.conjugate() * &s
}

/// Imaginary parts of the eigenvalues of `ρρ̃` above this are reported as errors.
pub const IMAG_TOL: f64 = 1e-10;

fn require_normalized(psi: &ThreeQubitState) -> Result<()> {
    let n = psi.norm();
    if (n - 1.0).abs() > 1e-10 {
        Err(domain(format!("three-qubit state must be normalized (‖ψ‖ = {n})")))
    } else {
        Ok(())
    }
}

/// Eigenvalues of ρ at or below this fraction of the largest one are treated
/// as outside its support.
pub const SUPPORT_TOL: f64 = 1e-12;

/// Descending square roots of the eigenvalues of `ρρ̃`.
///
/// With `ρ = V Λ V†` on its support, the nonzero eigenvalues of `ρρ̃` are
/// those of the smaller product `Λ V†ρ̃V`; the rest are exactly zero. This
/// keeps eigensolver noise on the null space out of the square roots.
pub fn flip_roots(rho: &CMatrix) -> Result<[f64; 4]> {
    let (vals, vecs) = linalg::hermitian_eigen(rho);
    let top = vals.iter().copied().fold(0.0, f64::max);
    let keep: Vec<usize> = (0..4).filter(|&i| vals[i] > SUPPORT_TOL * top).collect();
    let mut roots = [0.0; 4];
    if keep.is_empty() {
        return Ok(roots);
    }
    let v = vecs.select_columns(keep.iter());
    let lambda = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        keep.len(),
        keep.iter().map(|&i| Complex64::new(vals[i], 0.0)),
    ));
    let prod = lambda * v.adjoint() * spin_flip_rdm(rho) * &v;
    for (r, e) in roots.iter_mut().zip(linalg::complex_eigenvalues(&prod)) {
        if e.im.abs() > IMAG_TOL {
            return Err(Error::InvariantViolation {
                message: format!("eigenvalue {e} of ρρ̃ is not real"),
                state: format!("{rho}"),
            });
        }
        *r = e.re.max(0.0).sqrt();
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok(roots)
}

/// Wootters concurrence `max(λ1 − λ2 − λ3 − λ4, 0)` of a qubit pair.
pub fn concurrence_pair(psi: &ThreeQubitState, pair: Pair) -> Result<f64> {
    require_normalized(psi)?;
    let l = flip_roots(&pair_rdm(psi, pair))?;
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// The same concurrence from the Hermitian matrix `√ρ ρ̃ √ρ`.
pub fn concurrence_pair_hermitian(psi: &ThreeQubitState, pair: Pair) -> Result<f64> {
    require_normalized(psi)?;
    let rho = pair_rdm(psi, pair);
    let (vals, vecs) = linalg::hermitian_eigen(&rho);
    let sqrt_diag = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        vals.iter().map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0)),
    ));
    let root = &vecs * sqrt_diag * vecs.adjoint();
    let m = &root * spin_flip_rdm(&rho) * &root;
    let l: Vec<f64> = linalg::hermitian_eigenvalues(&m)
        .iter()
        .map(|v| v.max(0.0).sqrt())
        .collect();
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Residuals of the tangle and concurrence relations for one state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CkwReport {
    pub tangle: f64,
    /// Squared concurrences for AB, AC, BC.
    pub concurrence_sq: [f64; 3],
    /// `det ρ_A`, `det ρ_B`, `det ρ_C`.
    pub qubit_dets: [f64; 3],
    /// `|4 det ρ_X − τ − C²_XY − C²_XZ|` for X = A, B, C.
    pub tangle_residuals: [f64; 3],
    /// `|Tr KK† − 2 Σ det ρ_X|`.
    pub kk_dagger_det_residual: f64,
    /// `|Con(embed ψ) − Σ C²|`.
    pub concurrence_sum_residual: f64,
    /// `|Tr KK† − Σ Tr ρ^{XY} ρ̃^{XY}|`.
    pub kk_dagger_flip_residual: f64,
    /// Monogamy slack `4 det ρ_A − C²_AB − C²_AC`.
    pub monogamy_slack: f64,
}

impl CkwReport {
    pub fn max_residual(&self) -> f64 {
        self.tangle_residuals
            .iter()
            .copied()
            .chain([
                self.kk_dagger_det_residual,
                self.concurrence_sum_residual,
                self.kk_dagger_flip_residual,
            ])
            .fold(0.0, f64::max)
    }
}

pub fn ckw_report(psi: &ThreeQubitState) -> Result<CkwReport> {
    require_normalized(psi)?;
    let tangle = three_tangle(psi);
    let mut c2 = [0.0; 3];
    for (slot, pair) in c2.iter_mut().zip(Pair::ALL) {
        *slot = concurrence_pair(psi, pair)?.powi(2);
    }
    let dets = [qubit_rdm_det(psi, 0), qubit_rdm_det(psi, 1), qubit_rdm_det(psi, 2)];
    // C² for the pairs containing A, B, C respectively
    let touching = [c2[0] + c2[1], c2[0] + c2[2], c2[1] + c2[2]];
    let mut tangle_residuals = [0.0; 3];
    for x in 0..3 {
        tangle_residuals[x] = (4.0 * dets[x] - tangle - touching[x]).abs();
    }
    let p = embed(psi);
    let kk = k_matrix(&p).trace_kk_dagger();
    let flip_sum: f64 = Pair::ALL
        .iter()
        .map(|&pair| {
            let r = pair_rdm(psi, pair);
            (&r * spin_flip_rdm(&r)).trace().re
        })
        .sum();
    Ok(CkwReport {
        tangle,
        concurrence_sq: c2,
        qubit_dets: dets,
        tangle_residuals,
        kk_dagger_det_residual: (kk - 2.0 * dets.iter().sum::<f64>()).abs(),
        concurrence_sum_residual: (concurrence(&p) - c2.iter().sum::<f64>()).abs(),
        kk_dagger_flip_residual: (kk - flip_sum).abs(),
        monogamy_slack: 4.0 * dets[0] - c2[0] - c2[1],
    })
}

/// `‖embed(ψ̃) − dual(embed(ψ))‖`.
pub fn dual_embedding_check(psi: &ThreeQubitState) -> f64 {
    embed(&psi.dual()).distance(&embed(psi).dual())
}

/// `|Det ψ − D(embed ψ)|`.
pub fn hyperdeterminant_residual(psi: &ThreeQubitState) -> f64 {
    (hyperdeterminant(psi) - quartic_d(&embed(psi))).norm()
}

/// `g1 ⊕ g2 ⊕ g3` as a six-mode transform, assembled block-diagonally in
/// the interleaved order and then moved to embedding order.
pub fn block_diagonal_slocc(g: [&CMatrix; 3]) -> Result<SloccTransform> {
    let mut m = CMatrix::zeros(6, 6);
    for (q, gq) in g.iter().enumerate() {
        if gq.nrows() != 2 || gq.ncols() != 2 {
            return Err(domain("local transforms must be 2x2"));
        }
        for r in 0..2 {
            for c in 0..2 {
                m[(BLOCK_ORDER[2 * q + r], BLOCK_ORDER[2 * q + c])] = gq[(r, c)];
            }
        }
    }
    SloccTransform::new(m)
}

/// `‖embed(g·ψ) − G·embed(ψ)‖` with `G` the block-diagonal transform.
pub fn slocc_compatibility_residual(psi: &ThreeQubitState, g: [&CMatrix; 3]) -> Result<f64> {
    let lhs = embed(&psi.apply_local(g)?);
    let rhs = embed(psi).apply_slocc(&block_diagonal_slocc(g)?);
    Ok(lhs.distance(&rhs))
}

/// Largest deviation of the one-particle RDM of `embed(ψ)` from the block
/// form with the qubit RDMs on the diagonal blocks.
pub fn block_structure_residual(psi: &ThreeQubitState) -> f64 {
    let rho = one_rdm(&embed(psi)).0;
    let mut worst: f64 = 0.0;
    for i in 0..6 {
        for j in 0..6 {
            let (qi, bi) = (i % 3, i / 3);
            let (qj, bj) = (j % 3, j / 3);
            let expect = if qi == qj { qubit_rdm(psi, qi)[(bi, bj)] } else { ZERO };
            worst = worst.max((rho[(i, j)] - expect).norm());
        }
    }
    worst
}

/// Largest deviation of the fermionic two-particle components from half the
/// qubit pair RDMs, on the mode pairs that host them.
pub fn pair_hosting_residual(psi: &ThreeQubitState) -> f64 {
    let r2 = two_rdm(&embed(psi));
    let mut worst: f64 = 0.0;
    for pair in Pair::ALL {
        let (x, y, _) = pair.qubits();
        let rho = pair_rdm(psi, pair);
        for row in 0..4 {
            for col in 0..4 {
                let c = r2.component(
                    mode_of(x, row >> 1),
                    mode_of(y, row & 1),
                    mode_of(x, col >> 1),
                    mode_of(y, col & 1),
                );
                worst = worst.max((c - rho[(row, col)] * 0.5).norm());
            }
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedding_rows() {
        let p = embed(&ThreeQubitState::basis(0, 0, 0).unwrap());
        assert_eq!(p, FermiState336::slater(0, 1, 2).unwrap());
        let p = embed(&ThreeQubitState::basis(1, 1, 1).unwrap());
        assert_eq!(p, FermiState336::slater(3, 4, 5).unwrap());
        let p = embed(&ThreeQubitState::basis(0, 1, 0).unwrap());
        assert_eq!(p.get(0, 4, 2), Complex64::new(1.0, 0.0));
        assert_eq!(p.get(0, 2, 4), Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn canonical_tangles() {
        assert!((hyperdeterminant(&ThreeQubitState::ghz()) - Complex64::new(0.25, 0.0)).norm() < 1e-15);
        assert!((three_tangle(&ThreeQubitState::ghz()) - 1.0).abs() < 1e-15);
        assert_eq!(three_tangle(&ThreeQubitState::w()), 0.0);
        let a = Complex64::new(0.3, 0.7);
        let mut s = ThreeQubitState::default();
        s.set(0, 0, 0, a).unwrap();
        s.set(1, 1, 1, a).unwrap();
        assert!((hyperdeterminant(&s) - a.powi(4)).norm() < 1e-15);
        assert!(hyperdeterminant_residual(&s) < 1e-15);
    }

    #[test]
    fn pair_rdms() {
        let r = pair_rdm(&ThreeQubitState::ghz(), Pair::AB);
        let expect = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            Complex64::new(0.5, 0.0),
            ZERO,
            ZERO,
            Complex64::new(0.5, 0.0),
        ]));
        assert!((r.clone() - &expect).norm() < 1e-15);
        assert!((spin_flip_rdm(&r) - expect).norm() < 1e-15);
        let w = linalg::hermitian_eigenvalues(&pair_rdm(&ThreeQubitState::w(), Pair::AB));
        assert!((w[0] - 2.0 / 3.0).abs() < 1e-14 && (w[1] - 1.0 / 3.0).abs() < 1e-14);
        let r0 = pair_rdm(&ThreeQubitState::basis(0, 0, 0).unwrap(), Pair::BC);
        assert_eq!(spin_flip_rdm(&r0)[(3, 3)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn canonical_concurrences() {
        for pair in Pair::ALL {
            assert!(concurrence_pair(&ThreeQubitState::ghz(), pair).unwrap() < 1e-12);
            assert!((concurrence_pair(&ThreeQubitState::w(), pair).unwrap() - 2.0 / 3.0).abs() < 1e-12);
            assert!(concurrence_pair(&ThreeQubitState::basis(0, 0, 0).unwrap(), pair).unwrap() < 1e-12);
        }
        let unnormalized = ThreeQubitState::from_amplitudes([Complex64::new(2.0, 0.0); 8]);
        assert!(concurrence_pair(&unnormalized, Pair::AB).is_err());
    }

    #[test]
    fn ckw_on_canonical_states() {
        let g = ckw_report(&ThreeQubitState::ghz()).unwrap();
        assert!(g.max_residual() < 1e-12);
        assert!((g.qubit_dets[0] - 0.25).abs() < 1e-15);
        let w = ckw_report(&ThreeQubitState::w()).unwrap();
        assert!(w.max_residual() < 1e-12);
        assert!((w.qubit_dets[0] - 2.0 / 9.0).abs() < 1e-15);
        assert!((w.concurrence_sq[0] + w.concurrence_sq[1] - 8.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn dual_of_product_state() {
        let psi = ThreeQubitState::basis(0, 0, 0).unwrap();
        assert_eq!(psi.dual().get(1, 1, 1), Complex64::new(-1.0, 0.0));
        assert_eq!(dual_embedding_check(&psi), 0.0);
        assert!(dual_embedding_check(&ThreeQubitState::ghz()) < 1e-15);
    }

    #[test]
    fn block_order_matches_modes() {
        for q in 0..3 {
            for b in 0..2 {
                assert_eq!(BLOCK_ORDER[2 * q + b], mode_of(q, b));
            }
        }
    }
}
