//! Three-fermion states over six modes and the GL(6) action on them.
//!
//! A state `|P> = (1/3!) P_ijk |e^ijk>` is stored as its 20 independent
//! amplitudes `P_ijk`, `i < j < k`. Reads of permuted triples pick up the
//! permutation sign; repeated indices read as zero. All indices are 0-based
//! in this API; the JSON file format uses 1-based modes.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::{domain, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::perm::{complement, levi_civita6, sort_triple, triple_index, MODES, TRIPLES};

/// Antisymmetric rank-3 amplitude tensor over six modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FermiState336 {
    amps: [Complex64; 20],
}

impl Default for FermiState336 {
    fn default() -> Self {
        Self::zero()
    }
}

impl FermiState336 {
    pub fn zero() -> Self {
        Self { amps: [ZERO; 20] }
    }

    /// Builds a state from the 20 ordered-triple amplitudes, in [`TRIPLES`] order.
    pub fn from_amplitudes(amps: [Complex64; 20]) -> Self {
        Self { amps }
    }

    /// The Slater determinant `e^i ∧ e^j ∧ e^k`. Indices may be given in any
    /// order; the stored amplitude carries the sorting sign.
    pub fn slater(i: usize, j: usize, k: usize) -> Result<Self> {
        Self::zero().with(i, j, k, Complex64::new(1.0, 0.0))
    }

    /// Returns a copy with `P_ijk` set to `value` (the sorted amplitude gets
    /// `sign · value`).
    pub fn with(mut self, i: usize, j: usize, k: usize, value: Complex64) -> Result<Self> {
        self.set(i, j, k, value)?;
        Ok(self)
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: Complex64) -> Result<()> {
        check_mode(i)?;
        check_mode(j)?;
        check_mode(k)?;
        let (t, sign) = sort_triple(i, j, k);
        if sign == 0 {
            return Err(domain(format!("repeated index in triple ({i}, {j}, {k})")));
        }
        let n = triple_index(t[0], t[1], t[2]).expect("sorted triple");
        self.amps[n] = value * sign as f64;
        Ok(())
    }

    /// `P_ijk` for an arbitrary triple, with antisymmetry applied.
    pub fn amplitude(&self, i: usize, j: usize, k: usize) -> Result<Complex64> {
        check_mode(i)?;
        check_mode(j)?;
        check_mode(k)?;
        Ok(self.get(i, j, k))
    }

    /// Unchecked variant of [`amplitude`](Self::amplitude); indices must be below 6.
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> Complex64 {
        let (t, sign) = sort_triple(i, j, k);
        if sign == 0 {
            return ZERO;
        }
        let n = triple_index(t[0], t[1], t[2]).expect("sorted triple");
        self.amps[n] * sign as f64
    }

    pub fn amplitudes(&self) -> &[Complex64; 20] {
        &self.amps
    }

    /// Iterates `(triple, amplitude)` over the ordered triples.
    pub fn iter(&self) -> impl Iterator<Item = ([usize; 3], Complex64)> + '_ {
        TRIPLES.iter().copied().zip(self.amps.iter().copied())
    }

    pub fn norm_sq(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Copy scaled to unit norm. Fails on the zero state.
    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(domain("cannot normalize the zero state"));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = *self;
        out.amps.iter_mut().for_each(|a| *a *= c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.amps.iter().all(|a| *a == ZERO)
    }

    /// Largest amplitude difference to `other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Euclidean distance to `other` in amplitude space.
    pub fn distance(&self, other: &Self) -> f64 {
        (*self - *other).norm()
    }

    /// The particle-hole dual `P̃_ijk = (1/3!) ε_ijklmn conj(P)^lmn`.
    ///
    /// Antilinear; applying it twice gives `-P`.
    pub fn dual(&self) -> Self {
        let mut out = Self::zero();
        for (n, t) in TRIPLES.iter().enumerate() {
            let c = complement(*t);
            let eps = levi_civita6([t[0], t[1], t[2], c[0], c[1], c[2]]);
            let m = triple_index(c[0], c[1], c[2]).expect("sorted complement");
            out.amps[n] = self.amps[m].conj() * eps as f64;
        }
        out
    }

    /// `(g*P)_ijk = g^i'_i g^j'_j g^k'_k P_i'j'k'`.
    pub fn apply_slocc(&self, g: &SloccTransform) -> Self {
        let m = &g.matrix;
        let mut out = Self::zero();
        for (n, t) in TRIPLES.iter().enumerate() {
            let mut acc = ZERO;
            for (s, src) in TRIPLES.iter().enumerate() {
                let p = self.amps[s];
                if p == ZERO {
                    continue;
                }
                acc += p * minor3(m, *src, *t);
            }
            out.amps[n] = acc;
        }
        out
    }
}

/// `Σ_{σ} sign(σ) m[r_σ0][c0] m[r_σ1][c1] m[r_σ2][c2]`: the 3×3 minor with
/// rows `r` and columns `c`.
fn minor3(m: &CMatrix, r: [usize; 3], c: [usize; 3]) -> Complex64 {
    let a = |i: usize, j: usize| m[(r[i], c[j])];
    a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
        + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0))
}

fn check_mode(i: usize) -> Result<()> {
    if i >= MODES {
        Err(domain(format!("mode index {i} out of range 0..{MODES}")))
    } else {
        Ok(())
    }
}

impl Add for FermiState336 {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self.amps.iter_mut().zip(rhs.amps.iter()).for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for FermiState336 {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self.amps.iter_mut().zip(rhs.amps.iter()).for_each(|(a, b)| *a -= b);
        self
    }
}

impl Mul<Complex64> for FermiState336 {
    type Output = Self;
    fn mul(self, rhs: Complex64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<f64> for FermiState336 {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(Complex64::new(rhs, 0.0))
    }
}

/// Relative threshold on `|det g|` against `‖g‖^6` below which a matrix is
/// treated as singular.
pub const SINGULAR_TOL: f64 = 1e-12;

/// An invertible 6×6 complex matrix acting on every single-particle index.
#[derive(Debug, Clone, PartialEq)]
pub struct SloccTransform {
    matrix: CMatrix,
    det: Complex64,
}

impl SloccTransform {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != MODES || matrix.ncols() != MODES {
            return Err(domain(format!(
                "SLOCC matrix must be 6x6, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let det = matrix.determinant();
        let scale = matrix.norm().powi(MODES as i32).max(f64::MIN_POSITIVE);
        if !(det.norm() > SINGULAR_TOL * scale) {
            return Err(domain(format!("singular SLOCC matrix (|det| = {:e})", det.norm())));
        }
        Ok(Self { matrix, det })
    }

    pub fn identity() -> Self {
        Self::new(CMatrix::identity(MODES, MODES)).expect("identity is invertible")
    }

    /// Permutation matrix sending mode `i` to mode `perm[i]`, i.e. `g[perm[i]][i] = 1`.
    pub fn permutation(perm: [usize; 6]) -> Result<Self> {
        let mut m = CMatrix::zeros(MODES, MODES);
        for (i, &p) in perm.iter().enumerate() {
            check_mode(p)?;
            m[(p, i)] = Complex64::new(1.0, 0.0);
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn det(&self) -> Complex64 {
        self.det
    }

    pub fn inverse(&self) -> CMatrix {
        self.matrix
            .clone()
            .try_inverse()
            .expect("checked invertible at construction")
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        Self::new(&self.matrix * &other.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn amplitude_signs() {
        let p = FermiState336::slater(0, 1, 2).unwrap();
        assert_eq!(p.amplitude(0, 1, 2).unwrap(), c(1.0, 0.0));
        assert_eq!(p.amplitude(1, 0, 2).unwrap(), c(-1.0, 0.0));
        assert_eq!(p.amplitude(0, 0, 2).unwrap(), ZERO);
        assert!(p.amplitude(0, 1, 6).is_err());
    }

    #[test]
    fn set_with_permuted_indices() {
        let p = FermiState336::zero().with(2, 0, 1, c(0.5, 0.0)).unwrap();
        // (2,0,1) is a cyclic shift, even
        assert_eq!(p.get(0, 1, 2), c(0.5, 0.0));
        assert!(FermiState336::zero().with(1, 1, 2, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn norms() {
        let p = FermiState336::slater(0, 1, 2).unwrap() + FermiState336::slater(3, 4, 5).unwrap();
        assert!((p.norm_sq() - 2.0).abs() < 1e-15);
        let q = FermiState336::zero()
            .with(0, 1, 2, c(1.0, 0.0))
            .unwrap()
            .with(0, 3, 4, c(0.0, 2.0))
            .unwrap()
            .with(1, 3, 5, c(-3.0, 0.0))
            .unwrap()
            .with(2, 4, 5, c(0.5, 0.5))
            .unwrap();
        assert!((q.norm_sq() - (1.0 + 4.0 + 9.0 + 0.5)).abs() < 1e-14);
    }

    #[test]
    fn dual_of_basis_states() {
        let e123 = FermiState336::slater(0, 1, 2).unwrap();
        let e456 = FermiState336::slater(3, 4, 5).unwrap();
        // ε_456123 = -1, ε_123456 = +1
        assert_eq!(e123.dual(), e456 * -1.0);
        assert_eq!(e456.dual(), e123);
        assert_eq!((e123 * c(0.0, 1.0)).dual(), e456 * c(0.0, 1.0));
    }

    #[test]
    fn slocc_diagonal_and_singular() {
        let mut m = CMatrix::identity(6, 6);
        m[(0, 0)] = c(2.0, 0.0);
        let g = SloccTransform::new(m).unwrap();
        let p = FermiState336::slater(0, 1, 2).unwrap().apply_slocc(&g);
        assert_eq!(p.get(0, 1, 2), c(2.0, 0.0));
        let mut s = CMatrix::identity(6, 6);
        s[(3, 3)] = ZERO;
        assert!(SloccTransform::new(s).is_err());
        assert!(SloccTransform::new(CMatrix::identity(5, 5)).is_err());
    }
}
