//! The Clifford operator basis `θ_S` built from products of gamma matrices,
//! its trace duals, and the Fierz identities relating bilinears of a state
//! to those of its χ dual.
//!
//! Each `θ_S` maps basis states to single basis states, so it is kept as a
//! [`Monomial`] of `2^d` entries instead of a dense matrix.

use std::sync::OnceLock;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::pairing::{bilinear_pairing, chi_dual};
use super::{check_modes, jw_sign, CliffordOp, FockState, Generator, MAX_BASIS_MODES};
use crate::error::{domain, Error, Result};
use crate::invariants::k_matrix;
use crate::linalg::{self, CMatrix, ZERO};
use crate::random;
use crate::tensor::FermiState336;

/// An operator sending `|m⟩` to `coeff[m] |target[m]⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    target: Vec<usize>,
    coeff: Vec<Complex64>,
}

impl Monomial {
    pub fn identity(d: usize) -> Self {
        let n = 1usize << d;
        Self {
            target: (0..n).collect(),
            coeff: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    /// `γ_{2i} = p^i + f_i` and `γ_{2i+1} = i(p^i − f_i)`.
    pub fn gamma(d: usize, a: usize) -> Self {
        let i = a / 2;
        let n = 1usize << d;
        let mut target = Vec::with_capacity(n);
        let mut coeff = Vec::with_capacity(n);
        for m in 0..n {
            let occupied = m & (1 << i) != 0;
            let s = jw_sign(m, i);
            target.push(m ^ (1 << i));
            coeff.push(match (a % 2, occupied) {
                (0, _) => Complex64::new(s, 0.0),
                (_, false) => Complex64::new(0.0, s),
                (_, true) => Complex64::new(0.0, -s),
            });
        }
        Self { target, coeff }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let target = other.target.iter().map(|&t| self.target[t]).collect();
        let coeff = other
            .coeff
            .iter()
            .zip(&other.target)
            .map(|(c, &t)| c * self.coeff[t])
            .collect();
        Self { target, coeff }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            target: self.target.clone(),
            coeff: self.coeff.iter().map(|x| x * c).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        self.target
            .iter()
            .enumerate()
            .filter(|(m, t)| m == *t)
            .map(|(m, _)| self.coeff[m])
            .sum()
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![ZERO; v.len()];
        for (m, x) in v.iter().enumerate() {
            out[self.target[m]] += self.coeff[m] * x;
        }
        out
    }

    pub fn apply_adjoint(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..v.len()).map(|m| self.coeff[m].conj() * v[self.target[m]]).collect()
    }

    /// `⟨u| self |v⟩`.
    pub fn expectation(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        (0..v.len())
            .map(|m| u[self.target[m]].conj() * self.coeff[m] * v[m])
            .sum()
    }

    /// `tr(self · M)`.
    pub fn trace_with(&self, m: &CMatrix) -> Complex64 {
        (0..self.dim()).map(|c| self.coeff[c] * m[(c, self.target[c])]).sum()
    }

    fn add_to(&self, m: &mut CMatrix, c: Complex64) {
        for col in 0..self.dim() {
            m[(self.target[col], col)] += self.coeff[col] * c;
        }
    }

    pub fn to_dense(&self) -> CMatrix {
        let mut m = CMatrix::zeros(self.dim(), self.dim());
        self.add_to(&mut m, Complex64::new(1.0, 0.0));
        m
    }
}

/// The `4^d` operators `θ_S = γ_{s1} γ_{s2} ⋯` (increasing `s`) with their
/// trace duals `θ^S`, so that `tr(θ^S θ_T) = δ`.
#[derive(Debug)]
pub struct ThetaBasis {
    d: usize,
    ops: Vec<Monomial>,
    /// `tr(θ_S θ_S)`; distinct basis elements are trace-orthogonal.
    self_traces: Vec<Complex64>,
}

impl ThetaBasis {
    fn build(d: usize) -> Self {
        let gammas: Vec<Monomial> = (0..2 * d).map(|a| Monomial::gamma(d, a)).collect();
        let count = 1usize << (2 * d);
        let mut ops = Vec::with_capacity(count);
        ops.push(Monomial::identity(d));
        for s in 1..count {
            // drop the highest gamma of s and append it on the right
            let top = usize::BITS - 1 - s.leading_zeros();
            let rest = s & !(1 << top);
            ops.push(ops[rest].compose(&gammas[top as usize]));
        }
        let self_traces = ops.iter().map(|op| op.compose(op).trace()).collect();
        Self { d, ops, self_traces }
    }

    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// `θ_S`, indexed by the bitmask `S` of gammas.
    pub fn op(&self, s: usize) -> &Monomial {
        &self.ops[s]
    }

    /// `θ^S = θ_S / tr(θ_S θ_S)`.
    pub fn dual(&self, s: usize) -> Monomial {
        self.ops[s].scale(1.0 / self.self_traces[s])
    }

    fn dual_scale(&self, s: usize) -> Complex64 {
        1.0 / self.self_traces[s]
    }

    /// Full Gram matrix `tr(θ_S θ_T)`; `4^d × 4^d`, so meant for small `d`.
    pub fn gram_matrix(&self) -> CMatrix {
        let n = self.len();
        CMatrix::from_fn(n, n, |s, t| self.ops[s].compose(&self.ops[t]).trace())
    }

    /// `max |tr(θ^S θ_T) − δ_ST|` from the full Gram matrix.
    pub fn duality_residual(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for s in 0..n {
            let dual = self.dual(s);
            for t in 0..n {
                let expect = if s == t { 1.0 } else { 0.0 };
                worst = worst.max((dual.compose(&self.ops[t]).trace() - expect).norm());
            }
        }
        worst
    }

    /// Dense pairs `(θ_S, θ^S)`.
    pub fn dense_pairs(&self) -> Result<Vec<(CliffordOp, CliffordOp)>> {
        (0..self.len())
            .map(|s| {
                Ok((
                    CliffordOp::from_matrix(self.d, self.ops[s].to_dense())?,
                    CliffordOp::from_matrix(self.d, self.dual(s).to_dense())?,
                ))
            })
            .collect()
    }

    /// `‖Σ_S θ^S tr(θ_S M) − M‖`.
    pub fn completeness_residual(&self, m: &CMatrix) -> f64 {
        let mut sum = CMatrix::zeros(m.nrows(), m.ncols());
        for (s, op) in self.ops.iter().enumerate() {
            op.add_to(&mut sum, op.trace_with(m) * self.dual_scale(s));
        }
        (sum - m).norm()
    }
}

static CACHE: [OnceLock<ThetaBasis>; MAX_BASIS_MODES + 1] = [const { OnceLock::new() }; MAX_BASIS_MODES + 1];

/// The operator basis for `d` modes, built once per `d` and shared.
pub fn theta_basis(d: usize) -> Result<&'static ThetaBasis> {
    if d == 0 {
        return Err(domain("mode count must be positive"));
    }
    if d > MAX_BASIS_MODES {
        return Err(Error::Resource(format!(
            "operator basis has 4^{d} elements; at most {MAX_BASIS_MODES} modes are supported"
        )));
    }
    Ok(CACHE[d].get_or_init(|| ThetaBasis::build(d)))
}

/// Absolute residuals of the two Fierz identities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FierzResiduals {
    /// `|(ψ,Aψ) conj((ψ,Bψ)) − Σ ⟨ψ|B†θ^S Aψ⟩⟨χψ|θ_S χψ⟩|`.
    pub first: f64,
    /// `|⟨ψ|Aψ⟩⟨χψ|Bχψ⟩ − Σ (ψ,θ_Sψ) conj((ψ,(Aθ^S B)†ψ))|`.
    pub second: f64,
    /// `‖A‖‖B‖` in operator norm, the scale the residuals are judged against.
    pub scale: f64,
}

fn require_normalized(psi: &FockState) -> Result<()> {
    if (psi.norm() - 1.0).abs() > 1e-10 {
        Err(domain(format!("state must be normalized (‖ψ‖ = {})", psi.norm())))
    } else {
        Ok(())
    }
}

pub fn fierz_check(psi: &FockState, a: &CliffordOp, b: &CliffordOp) -> Result<FierzResiduals> {
    let d = psi.modes();
    if a.modes() != d || b.modes() != d {
        return Err(domain("operators and state act on different mode counts"));
    }
    require_normalized(psi)?;
    let basis = theta_basis(d)?;
    let chi = chi_dual(psi);
    let a_psi = a.apply(psi)?;
    let b_psi = b.apply(psi)?;

    let lhs1 = bilinear_pairing(psi, &a_psi)? * bilinear_pairing(psi, &b_psi)?.conj();
    let mut rhs1 = ZERO;
    for s in 0..basis.len() {
        let op = basis.op(s);
        let chi_term = op.expectation(chi.amplitudes(), chi.amplitudes());
        if chi_term == ZERO {
            continue;
        }
        rhs1 += op.expectation(b_psi.amplitudes(), a_psi.amplitudes()) * basis.dual_scale(s) * chi_term;
    }

    let lhs2 = psi.inner(&a_psi)? * chi.inner(&b.apply(&chi)?)?;
    let a_dag_psi = a.adjoint().apply(psi)?;
    let b_dag = b.adjoint();
    let mut rhs2 = ZERO;
    for s in 0..basis.len() {
        let op = basis.op(s);
        let left = bilinear_pairing(psi, &FockState::from_amplitudes(d, op.apply(psi.amplitudes()))?)?;
        if left == ZERO {
            continue;
        }
        // (Aθ^S B)†ψ = B† θ^S† A† ψ
        let moved = op.apply_adjoint(a_dag_psi.amplitudes());
        let moved = b_dag.apply(&FockState::from_amplitudes(d, moved)?)?;
        let right = bilinear_pairing(psi, &moved)? * basis.dual_scale(s).conj();
        rhs2 += left * right.conj();
    }

    Ok(FierzResiduals {
        first: (lhs1 - rhs1).norm(),
        second: (lhs2 - rhs2).norm(),
        scale: linalg::operator_norm(a.matrix()) * linalg::operator_norm(b.matrix()),
    })
}

/// The first Fierz identity summed over `A = B = p^i f_j` for a
/// three-fermion state: returns `(Σ_ij RHS, Tr KK†)`, which agree.
pub fn fierz_kk_dagger(p: &FermiState336) -> Result<(f64, f64)> {
    let psi = FockState::from_fermi_state(p);
    let basis = theta_basis(6)?;
    let chi = chi_dual(&psi);
    let chi_terms: Vec<Complex64> = (0..basis.len())
        .map(|s| basis.op(s).expectation(chi.amplitudes(), chi.amplitudes()) * basis.dual_scale(s))
        .collect();
    let mut total = ZERO;
    for i in 0..6 {
        for j in 0..6 {
            let v = psi.apply_word(&[Generator::Create(i), Generator::Annihilate(j)])?;
            if v.is_zero() {
                continue;
            }
            for (s, c) in chi_terms.iter().enumerate() {
                if *c != ZERO {
                    total += basis.op(s).expectation(v.amplitudes(), v.amplitudes()) * c;
                }
            }
        }
    }
    Ok((total.re, k_matrix(p).trace_kk_dagger()))
}

/// Residuals of the two projector expansions and of the trace identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProjectorResiduals {
    /// `‖|ψ⟩⟨ψ| − Σ ⟨ψ|θ_Sψ⟩ θ^S‖`.
    pub projector: f64,
    /// `‖|ψ⟩⟨χψ| − Σ (ψ,θ_Sψ) θ^S‖`.
    pub chi_projector: f64,
    /// `|tr(A P_ψ) − ⟨ψ|Aψ⟩|` for a seeded random `A`.
    pub trace_identity: f64,
}

pub fn projector_expansions_check(psi: &FockState) -> Result<ProjectorResiduals> {
    require_normalized(psi)?;
    let d = psi.modes();
    check_modes(d)?;
    let basis = theta_basis(d)?;
    let chi = chi_dual(psi);
    let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
    let c = nalgebra::DVector::from_column_slice(chi.amplitudes());
    let projector = &v * v.adjoint();
    let chi_projector = &v * c.adjoint();

    let mut sum = CMatrix::zeros(psi.dim(), psi.dim());
    let mut chi_sum = CMatrix::zeros(psi.dim(), psi.dim());
    for s in 0..basis.len() {
        let op = basis.op(s);
        let scale = basis.dual_scale(s);
        let image = FockState::from_amplitudes(d, op.apply(psi.amplitudes()))?;
        op.add_to(&mut sum, psi.inner(&image)? * scale);
        op.add_to(&mut chi_sum, bilinear_pairing(psi, &image)? * scale);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
    let a = random::complex_matrix(&mut rng, psi.dim(), psi.dim());
    let expect = v.dotc(&(&a * &v));
    let trace_identity = ((&a * &projector).trace() - expect).norm();

    Ok(ProjectorResiduals {
        projector: linalg::operator_norm(&(sum - projector)),
        chi_projector: linalg::operator_norm(&(chi_sum - chi_projector)),
        trace_identity,
    })
}
