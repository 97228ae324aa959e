//! Spin-group generators, their orthogonal action on the generators of the
//! Clifford algebra, pure spinors, and one-body (SLOCC) transforms.

use num_complex::Complex64;

use super::pairing::bilinear_pairing;
use super::{check_modes, word_on_basis, CliffordOp, FockState, Generator, MAX_MODES};
use crate::error::{domain, Error, Result};
use crate::linalg::{self, CMatrix, ZERO};

const ANTISYMMETRY_TOL: f64 = 1e-13;

/// Parameters of `T = ½A^i_j [p^j, f_i] − ½B_ij p^i p^j − ½β^{ij} f_i f_j`.
/// `A` is stored with `A[(i, j)] = A^i_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinGenerator {
    a: CMatrix,
    b: CMatrix,
    beta: CMatrix,
}

impl SpinGenerator {
    pub fn new(a: CMatrix, b: CMatrix, beta: CMatrix) -> Result<Self> {
        let d = a.nrows();
        check_modes(d)?;
        for (name, m) in [("A", &a), ("B", &b), ("β", &beta)] {
            if m.nrows() != d || m.ncols() != d {
                return Err(domain(format!("{name} must be {d}x{d}")));
            }
        }
        for (name, m) in [("B", &b), ("β", &beta)] {
            let asym = (m + m.transpose()).iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
            if asym > ANTISYMMETRY_TOL * m.norm().max(1.0) {
                return Err(domain(format!("{name} is not antisymmetric (deviation {asym:e})")));
            }
        }
        Ok(Self { a, b, beta })
    }

    /// Only the particle-number conserving part.
    pub fn from_a(a: CMatrix) -> Result<Self> {
        let d = a.nrows();
        Self::new(a, CMatrix::zeros(d, d), CMatrix::zeros(d, d))
    }

    /// A pure `B`-transform.
    pub fn from_b(b: CMatrix) -> Result<Self> {
        let d = b.nrows();
        Self::new(CMatrix::zeros(d, d), b, CMatrix::zeros(d, d))
    }

    pub fn modes(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn beta(&self) -> &CMatrix {
        &self.beta
    }

    /// Combined Frobenius norm of the three blocks.
    pub fn norm(&self) -> f64 {
        (self.a.norm_squared() + self.b.norm_squared() + self.beta.norm_squared()).sqrt()
    }

    /// The `2d×2d` matrix `M` with `[T, X_a] = Σ_b M_ab X_b` for the
    /// generators ordered `(p^0 … p^{d−1}, f_0 … f_{d−1})`.
    pub fn action_matrix(&self) -> CMatrix {
        let d = self.modes();
        let mut m = CMatrix::zeros(2 * d, 2 * d);
        m.view_mut((0, 0), (d, d)).copy_from(&self.a);
        m.view_mut((0, d), (d, d)).copy_from(&self.beta);
        m.view_mut((d, 0), (d, d)).copy_from(&self.b);
        m.view_mut((d, d), (d, d)).copy_from(&(-self.a.transpose()));
        m
    }
}

fn accumulate(matrix: &mut CMatrix, word: &[Generator], coeff: Complex64) {
    if coeff == ZERO {
        return;
    }
    for m in 0..matrix.ncols() {
        if let Some((t, s)) = word_on_basis(word, m) {
            matrix[(t, m)] += coeff * s;
        }
    }
}

/// Dense operator `T`.
pub fn spin_generator_op(gen: &SpinGenerator) -> Result<CliffordOp> {
    use Generator::{Annihilate as F, Create as P};
    let d = gen.modes();
    let mut t = CMatrix::zeros(1 << d, 1 << d);
    for i in 0..d {
        for j in 0..d {
            let a = gen.a[(i, j)] * 0.5;
            accumulate(&mut t, &[P(j), F(i)], a);
            accumulate(&mut t, &[F(i), P(j)], -a);
            accumulate(&mut t, &[P(i), P(j)], gen.b[(i, j)] * -0.5);
            accumulate(&mut t, &[F(i), F(j)], gen.beta[(i, j)] * -0.5);
        }
    }
    CliffordOp::from_matrix(d, t)
}

/// `e^T ψ`.
pub fn spin_transform(gen: &SpinGenerator, psi: &FockState) -> Result<FockState> {
    if gen.modes() != psi.modes() {
        return Err(domain("generator and state have different mode counts"));
    }
    let u = linalg::expm(spin_generator_op(gen)?.matrix());
    CliffordOp::from_matrix(psi.modes(), u)?.apply(psi)
}

/// The orthogonal matrix `O = exp(M)` with `e^T X_a e^{−T} = Σ_b O_ab X_b`.
pub fn orthogonal_action(gen: &SpinGenerator) -> CMatrix {
    linalg::expm(&gen.action_matrix())
}

fn generator_ops(d: usize) -> Result<Vec<CliffordOp>> {
    (0..d)
        .map(|i| CliffordOp::word(d, &[Generator::Create(i)]))
        .chain((0..d).map(|i| CliffordOp::word(d, &[Generator::Annihilate(i)])))
        .collect()
}

/// Largest entry of `e^T X_a e^{−T} − Σ_b O_ab X_b` over all generators.
pub fn generator_action_residual(gen: &SpinGenerator) -> Result<f64> {
    let d = gen.modes();
    let t = spin_generator_op(gen)?;
    let u = linalg::expm(t.matrix());
    let u_inv = linalg::expm(&(-t.matrix()));
    let o = orthogonal_action(gen);
    let xs = generator_ops(d)?;
    let mut worst: f64 = 0.0;
    for (a, x) in xs.iter().enumerate() {
        let lhs = &u * x.matrix() * &u_inv;
        let mut rhs = CMatrix::zeros(1 << d, 1 << d);
        for (b, y) in xs.iter().enumerate() {
            rhs += y.matrix() * o[(a, b)];
        }
        worst = worst.max((lhs - rhs).iter().fold(0.0, |m, z| m.max(z.norm())));
    }
    Ok(worst)
}

/// `|(e^Tφ, e^Tψ) − (φ, ψ)|`.
pub fn pairing_invariance_residual(gen: &SpinGenerator, phi: &FockState, psi: &FockState) -> Result<f64> {
    let before = bilinear_pairing(phi, psi)?;
    let after = bilinear_pairing(&spin_transform(gen, phi)?, &spin_transform(gen, psi)?)?;
    Ok((after - before).norm())
}

/// Norm of the wrong-parity part of `e^T` applied to each parity sector of ψ.
pub fn parity_leakage(gen: &SpinGenerator, psi: &FockState) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for even in [true, false] {
        let image = spin_transform(gen, &psi.parity_sector(even))?;
        worst = worst.max(image.parity_sector(!even).norm());
    }
    Ok(worst)
}

/// Dimension of `{X ∈ span(p^i, f_j) : Xψ = 0}`; equals `d` for pure spinors.
///
/// Singular values of the `2^d × 2d` matrix of images below `tol·‖ψ‖`
/// count as zero.
pub fn annihilator_dimension(psi: &FockState, tol: f64) -> Result<usize> {
    if psi.is_zero() {
        return Err(domain("the zero state has no annihilator"));
    }
    let d = psi.modes();
    let mut cols = CMatrix::zeros(psi.dim(), 2 * d);
    let gens = (0..d).map(Generator::Create).chain((0..d).map(Generator::Annihilate));
    for (c, g) in gens.enumerate() {
        let image = psi.apply_word(&[g])?;
        for (r, a) in image.amplitudes().iter().enumerate() {
            cols[(r, c)] = *a;
        }
    }
    let cut = tol * psi.norm();
    let rank = linalg::singular_values(&cols).iter().filter(|&&s| s > cut).count();
    Ok(2 * d - rank)
}

/// Determinant of the rows `rows` and columns `cols` of `g`.
fn minor(g: &CMatrix, rows: &[usize], cols: &[usize]) -> Complex64 {
    let k = rows.len();
    if k == 0 {
        return Complex64::new(1.0, 0.0);
    }
    CMatrix::from_fn(k, k, |r, c| g[(rows[r], cols[c])]).determinant()
}

fn modes_of(mask: usize, d: usize) -> Vec<usize> {
    (0..d).filter(|i| mask & (1 << i) != 0).collect()
}

/// Action of a one-body transform `g` on every particle sector: the
/// `k`-particle amplitude transforms with the `k×k` minors of `g`, the same
/// index placement as [`FermiState336::apply_slocc`](crate::tensor::FermiState336::apply_slocc).
pub fn one_body_action(g: &CMatrix, psi: &FockState) -> Result<FockState> {
    let d = psi.modes();
    if g.nrows() != d || g.ncols() != d {
        return Err(domain(format!("one-body transform must be {d}x{d}")));
    }
    let mut out = FockState::zero(d)?;
    let n = psi.dim();
    for src in 0..n {
        let a = psi.amplitudes()[src];
        if a == ZERO {
            continue;
        }
        let rows = modes_of(src, d);
        for t in (0..n).filter(|t| t.count_ones() == src.count_ones()) {
            out.amplitudes_mut()[t] += a * minor(g, &rows, &modes_of(t, d));
        }
    }
    Ok(out)
}

/// Places `ψ_{μ1…μn}` (row-major over `dims`) on the mask
/// `{μ1, d1+μ2, …, d1+…+d_{n−1}+μn}` of `Σ dims` modes.
pub fn embed_distinguishable(amps: &[Complex64], dims: &[usize]) -> Result<FockState> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(domain("every party needs at least one level"));
    }
    let total: usize = dims.iter().sum();
    if total > MAX_MODES {
        return Err(Error::Resource(format!(
            "{total} modes exceed the dense limit of {MAX_MODES}"
        )));
    }
    let size: usize = dims.iter().product();
    if amps.len() != size {
        return Err(domain(format!(
            "{} amplitudes given for dimensions {dims:?}",
            amps.len()
        )));
    }
    let mut out = FockState::zero(total)?;
    for (flat, a) in amps.iter().enumerate() {
        out.amplitudes_mut()[distinguishable_mask(flat, dims)] = *a;
    }
    Ok(out)
}

fn distinguishable_mask(flat: usize, dims: &[usize]) -> usize {
    let mut rest = flat;
    let mut levels = vec![0; dims.len()];
    for (q, &dq) in dims.iter().enumerate().rev() {
        levels[q] = rest % dq;
        rest /= dq;
    }
    let mut offset = 0;
    let mut mask = 0;
    for (q, &dq) in dims.iter().enumerate() {
        mask |= 1 << (offset + levels[q]);
        offset += dq;
    }
    mask
}

/// Applies `g_1 ⊗ … ⊗ g_n` to row-major amplitudes, `ψ'_μ = Σ_ν Π g_q[ν_q][μ_q] ψ_ν`.
pub fn apply_local_transforms(amps: &[Complex64], dims: &[usize], gs: &[CMatrix]) -> Result<Vec<Complex64>> {
    if gs.len() != dims.len() {
        return Err(domain("one local transform per party is required"));
    }
    for (g, &dq) in gs.iter().zip(dims) {
        if g.nrows() != dq || g.ncols() != dq {
            return Err(domain(format!("local transform must be {dq}x{dq}")));
        }
    }
    let mut cur = amps.to_vec();
    // contract one party at a time
    let mut stride = 1;
    for q in (0..dims.len()).rev() {
        let dq = dims[q];
        let mut next = vec![ZERO; cur.len()];
        for (idx, slot) in next.iter_mut().enumerate() {
            let mu = (idx / stride) % dq;
            let base = idx - mu * stride;
            *slot = (0..dq).map(|nu| gs[q][(nu, mu)] * cur[base + nu * stride]).sum();
        }
        cur = next;
        stride *= dq;
    }
    Ok(cur)
}

/// `‖embed(⊗g_q · ψ) − (⊕g_q)·embed(ψ)‖`.
pub fn local_embedding_residual(amps: &[Complex64], dims: &[usize], gs: &[CMatrix]) -> Result<f64> {
    let lhs = embed_distinguishable(&apply_local_transforms(amps, dims, gs)?, dims)?;
    let total: usize = dims.iter().sum();
    let mut block = CMatrix::zeros(total, total);
    let mut offset = 0;
    for (g, &dq) in gs.iter().zip(dims) {
        block.view_mut((offset, offset), (dq, dq)).copy_from(g);
        offset += dq;
    }
    let rhs = one_body_action(&block, &embed_distinguishable(amps, dims)?)?;
    Ok(lhs.distance(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::{embed, BLOCK_ORDER};
    use crate::random;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_generator_is_identity() {
        let g = SpinGenerator::from_a(CMatrix::zeros(3, 3)).unwrap();
        assert_eq!(
            spin_generator_op(&g).unwrap().max_diff(&CliffordOp::zero(3).unwrap()),
            0.0
        );
        let psi = FockState::basis(3, 0b101).unwrap();
        assert!(spin_transform(&g, &psi).unwrap().distance(&psi) < 1e-15);
    }

    #[test]
    fn rejects_symmetric_b() {
        let mut b = CMatrix::zeros(3, 3);
        b[(0, 1)] = Complex64::new(1.0, 0.0);
        b[(1, 0)] = Complex64::new(1.0, 0.0);
        assert!(SpinGenerator::from_b(b).is_err());
    }

    #[test]
    fn diagonal_a_scales_sectors() {
        let a = 0.7;
        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = Complex64::new(a, 0.0);
        let g = SpinGenerator::from_a(m).unwrap();
        let vac = spin_transform(&g, &FockState::vacuum(3).unwrap()).unwrap();
        assert!((vac.amplitude(0) - Complex64::new((-a / 2.0).exp(), 0.0)).norm() < 1e-13);
        let one = spin_transform(&g, &FockState::basis(3, 0b001).unwrap()).unwrap();
        assert!((one.amplitude(1) - Complex64::new((a / 2.0).exp(), 0.0)).norm() < 1e-13);
    }

    #[test]
    fn orthogonal_action_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for d in 2..=4 {
            let g = random::spin_generator(&mut rng, d, 1.0).unwrap();
            assert!(generator_action_residual(&g).unwrap() < 1e-12);
            let phi = random::fock_state(&mut rng, d).unwrap();
            let psi = random::fock_state(&mut rng, d).unwrap();
            assert!(pairing_invariance_residual(&g, &phi, &psi).unwrap() < 1e-12);
            assert!(parity_leakage(&g, &psi).unwrap() < 1e-13);
        }
    }

    #[test]
    fn annihilators() {
        assert_eq!(annihilator_dimension(&FockState::vacuum(3).unwrap(), 1e-10).unwrap(), 3);
        let ghz_like = &FockState::vacuum(3).unwrap() + &FockState::basis(3, 0b111).unwrap();
        assert_eq!(annihilator_dimension(&ghz_like, 1e-10).unwrap(), 0);
        let mut six = FockState::basis(6, 0b000111).unwrap();
        six.amplitudes_mut()[0b111000] = Complex64::new(1.0, 0.0);
        assert_eq!(annihilator_dimension(&six, 1e-10).unwrap(), 0);
        assert!(annihilator_dimension(&FockState::zero(3).unwrap(), 1e-10).is_err());
        // B-transforms of the vacuum stay pure
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let b = random::antisymmetric(&mut rng, 4, 0.8);
        let pure = spin_transform(&SpinGenerator::from_b(b).unwrap(), &FockState::vacuum(4).unwrap()).unwrap();
        assert_eq!(annihilator_dimension(&pure, 1e-9).unwrap(), 4);
        assert!(pure.parity_sector(false).norm() < 1e-14);
    }

    #[test]
    fn distinguishable_embedding() {
        let mut amps = vec![ZERO; 4];
        amps[0] = Complex64::new(1.0, 0.0);
        assert_eq!(
            embed_distinguishable(&amps, &[2, 2]).unwrap(),
            FockState::basis(4, 0b0101).unwrap()
        );
        assert!(embed_distinguishable(&[ZERO; 27], &[3, 3, 3]).is_err());

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let psi = random::normalized_qubit_state(&mut rng);
        let fock = embed_distinguishable(psi.amplitudes(), &[2, 2, 2]).unwrap();
        let relabeled = fock.permute_modes(&BLOCK_ORDER).unwrap();
        assert!(relabeled.distance(&FockState::from_fermi_state(&embed(&psi))) < 1e-15);

        let gs: Vec<CMatrix> = (0..3).map(|_| random::complex_matrix(&mut rng, 2, 2)).collect();
        assert!(local_embedding_residual(psi.amplitudes(), &[2, 2, 2], &gs).unwrap() < 1e-12);
        let gs: Vec<CMatrix> = [3, 2].iter().map(|&n| random::complex_matrix(&mut rng, n, n)).collect();
        let amps = random::complex_vec(&mut rng, 6);
        assert!(local_embedding_residual(&amps, &[3, 2], &gs).unwrap() < 1e-12);
    }
}
