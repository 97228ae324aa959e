//! One- and two-particle reduced density matrices of three-fermion states,
//! their spectra and entropies, and the spectral statements that follow
//! from the structure of K.
//!
//! Matrices use Löwdin normalization: `Tr ρ = 3‖P‖²` and `Tr ρ⁽²⁾ = 3‖P‖²`.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Result};
use crate::invariants::{k_matrix, quartic_d};
use crate::linalg::{self, CMatrix, ZERO};
use crate::perm::{pair_index, MODES, PAIRS};
use crate::tensor::FermiState336;

/// Eigenvalues in `[-CLAMP_TOL, 0)` are treated as zero.
pub const CLAMP_TOL: f64 = 1e-10;

/// One-particle RDM `ρ_i^j = (1/2) P_inm conj(P)^jnm` (row `i`, column `j`).
#[derive(Debug, Clone, PartialEq)]
pub struct OneRdm(pub CMatrix);

impl OneRdm {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// `Tr ρⁿ`.
    pub fn trace_pow(&self, n: u32) -> f64 {
        let mut acc = CMatrix::identity(MODES, MODES);
        for _ in 0..n {
            acc = &acc * &self.0;
        }
        acc.trace().re
    }

    /// Descending eigenvalues.
    pub fn spectrum(&self) -> [f64; 6] {
        let v = linalg::hermitian_eigenvalues(&self.0);
        let mut out = [0.0; 6];
        out.copy_from_slice(&v);
        out
    }

    /// Descending eigenvalues with the matching eigenvectors as columns.
    pub fn eigen(&self) -> (Vec<f64>, CMatrix) {
        linalg::hermitian_eigen(&self.0)
    }

    pub fn borland_dennis(&self) -> BorlandDennis {
        BorlandDennis::from_spectrum(&self.spectrum())
    }
}

/// The pairing equalities and the inequality on a descending spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BorlandDennis {
    /// `λ1+λ6−1`, `λ2+λ5−1`, `λ3+λ4−1`.
    pub equalities_residuals: [f64; 3],
    /// `λ5+λ6−λ4`, non-negative for pure states.
    pub inequality_slack: f64,
}

impl BorlandDennis {
    pub fn from_spectrum(l: &[f64; 6]) -> Self {
        Self {
            equalities_residuals: [l[0] + l[5] - 1.0, l[1] + l[4] - 1.0, l[2] + l[3] - 1.0],
            inequality_slack: l[4] + l[5] - l[3],
        }
    }

    pub fn max_equality_residual(&self) -> f64 {
        self.equalities_residuals.iter().fold(0.0, |m, r| m.max(r.abs()))
    }
}

pub fn one_rdm(p: &FermiState336) -> OneRdm {
    let mut rho = CMatrix::zeros(MODES, MODES);
    for i in 0..MODES {
        for j in i..MODES {
            let mut acc = ZERO;
            for [n, m] in PAIRS {
                acc += p.get(i, n, m) * p.get(j, n, m).conj();
            }
            rho[(i, j)] = acc;
            rho[(j, i)] = acc.conj();
        }
    }
    OneRdm(rho)
}

/// Two-particle RDM on the orthonormal pair basis `e^{ij}`, `i < j`, in
/// [`PAIRS`] order: entry `[(ij), (kl)] = Σ_n P_ijn conj(P_kln)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoRdm(pub CMatrix);

impl TwoRdm {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Fifteen descending eigenvalues.
    pub fn spectrum(&self) -> Vec<f64> {
        linalg::hermitian_eigenvalues(&self.0)
    }

    /// Component `ρ⁽²⁾_ij^kl = (1/2) P_ijn conj(P)^kln` over unrestricted
    /// index pairs (antisymmetric in each pair). This is half the matrix
    /// entry on the orthonormal pair basis.
    pub fn component(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        let (a, sa) = ordered_pair(i, j);
        let (b, sb) = ordered_pair(k, l);
        match (a, b) {
            (Some(a), Some(b)) => self.0[(a, b)] * (0.5 * (sa * sb) as f64),
            _ => ZERO,
        }
    }
}

fn ordered_pair(i: usize, j: usize) -> (Option<usize>, i32) {
    use std::cmp::Ordering::*;
    match i.cmp(&j) {
        Less => (pair_index(i, j), 1),
        Greater => (pair_index(j, i), -1),
        Equal => (None, 0),
    }
}

pub fn two_rdm(p: &FermiState336) -> TwoRdm {
    let mut r = CMatrix::zeros(15, 15);
    for (a, [i, j]) in PAIRS.iter().copied().enumerate() {
        for (b, [k, l]) in PAIRS.iter().copied().enumerate().skip(a) {
            let mut acc = ZERO;
            for n in 0..MODES {
                acc += p.get(i, j, n) * p.get(k, l, n).conj();
            }
            r[(a, b)] = acc;
            r[(b, a)] = acc.conj();
        }
    }
    TwoRdm(r)
}

/// `‖ρ(P̃) − (I − ρ(P))‖` for a normalized state.
pub fn dual_one_rdm_check(p: &FermiState336) -> Result<f64> {
    require_normalized(p, 1e-12)?;
    let rho = one_rdm(p).0;
    let dual = one_rdm(&p.dual()).0;
    Ok((dual - (CMatrix::identity(MODES, MODES) - rho)).norm())
}

pub(crate) fn require_normalized(p: &FermiState336, tol: f64) -> Result<()> {
    let n = p.norm();
    if (n - 1.0).abs() > tol {
        Err(domain(format!("state must be normalized (‖P‖ = {n})")))
    } else {
        Ok(())
    }
}

/// `−Σ (λ/3) ln(λ/3)` over a spectrum in Löwdin normalization, with
/// `0 ln 0 = 0`. Small negative eigenvalues are clamped to zero.
pub fn spectral_entropy(spectrum: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for &l in spectrum {
        if l < -CLAMP_TOL {
            return Err(domain(format!("negative eigenvalue {l:e}")));
        }
        let q = l.max(0.0) / 3.0;
        if q > 0.0 {
            s -= q * q.ln();
        }
    }
    Ok(s)
}

/// Von Neumann entropy `S = −Tr (ρ/3) ln (ρ/3)` (natural logarithm).
pub fn von_neumann_entropy(rho: &OneRdm) -> Result<f64> {
    spectral_entropy(&rho.spectrum())
}

/// Spectrum `{λ*,λ*,λ*,1−λ*,1−λ*,1−λ*}` with `λ* = (1+√(1−4|D|))/2`.
pub fn zero_con_spectrum(d_abs: f64) -> Result<[f64; 6]> {
    if !(0.0..=0.25).contains(&d_abs) {
        return Err(domain(format!("|D| = {d_abs} outside [0, 1/4]")));
    }
    let l = 0.5 * (1.0 + (1.0 - 4.0 * d_abs).sqrt());
    Ok([l, l, l, 1.0 - l, 1.0 - l, 1.0 - l])
}

/// `h(x) = −(1/3)(x ln(x/3) + (1−x) ln((1−x)/3))` with `0 ln 0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |y: f64| if y > 0.0 { y * (y / 3.0).ln() } else { 0.0 };
    -(term(x) + term(1.0 - x)) / 3.0
}

/// Entropy as a function of `x = Tr KK†` along the analytic families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyCurve {
    /// States with vanishing concurrence; an upper bound for all states.
    ZeroCon,
    /// The biseparable class.
    Biseparable,
    /// W-class states with four one-particle eigenvalues equal to 1/2.
    WSpecial,
}

impl EntropyCurve {
    pub fn name(self) -> &'static str {
        match self {
            EntropyCurve::ZeroCon => "zero_con",
            EntropyCurve::Biseparable => "biseparable",
            EntropyCurve::WSpecial => "w_special",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "zero_con" => Ok(EntropyCurve::ZeroCon),
            "biseparable" => Ok(EntropyCurve::Biseparable),
            "w_special" => Ok(EntropyCurve::WSpecial),
            _ => Err(domain(format!(
                "unknown curve kind {s:?} (expected zero_con, biseparable or w_special)"
            ))),
        }
    }

    /// Closed interval of admissible `Tr KK†` values.
    pub fn domain(self) -> (f64, f64) {
        match self {
            EntropyCurve::ZeroCon => (0.0, 1.5),
            EntropyCurve::Biseparable => (0.0, 1.0),
            EntropyCurve::WSpecial => (1.0, 1.5),
        }
    }

    pub fn check_domain(self, x: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if x >= lo && x <= hi {
            Ok(())
        } else {
            Err(domain(format!(
                "{} curve is defined for Tr KK† in [{lo}, {hi}], got {x}",
                self.name()
            )))
        }
    }

    /// One-particle spectrum (descending) of the family at `x`.
    pub fn spectrum(self, x: f64) -> Result<[f64; 6]> {
        self.check_domain(x)?;
        let mut s = match self {
            EntropyCurve::ZeroCon => {
                let l = 0.5 * (1.0 + (1.0 - 2.0 * x / 3.0).max(0.0).sqrt());
                [l, l, l, 1.0 - l, 1.0 - l, 1.0 - l]
            }
            EntropyCurve::Biseparable => {
                let l = 0.5 * (1.0 + (1.0 - x).max(0.0).sqrt());
                [1.0, l, l, 1.0 - l, 1.0 - l, 0.0]
            }
            EntropyCurve::WSpecial => {
                let l = 0.5 * (1.0 + (3.0 - 2.0 * x).max(0.0).sqrt());
                [0.5, 0.5, 0.5, 0.5, l, 1.0 - l]
            }
        };
        s.sort_by(|a, b| b.total_cmp(a));
        Ok(s)
    }

    /// Entropy at `x`, written through the binary entropy function.
    pub fn eval(self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(match self {
            EntropyCurve::ZeroCon => 3.0 * binary_entropy(0.5 * (1.0 + (1.0 - 2.0 * x / 3.0).max(0.0).sqrt())),
            EntropyCurve::Biseparable => {
                3f64.ln() / 3.0 + 2.0 * binary_entropy(0.5 * (1.0 + (1.0 - x).max(0.0).sqrt()))
            }
            EntropyCurve::WSpecial => {
                let l3 = 0.5 * (1.0 + (3.0 - 2.0 * x).max(0.0).sqrt());
                2.0 * binary_entropy(0.5) + binary_entropy(l3)
            }
        })
    }

    /// `Tr KK†` recovered from the spectrum of the family.
    pub fn invert_spectrum(self, spectrum: &[f64; 6]) -> f64 {
        // every family has Tr KK† = Σ λ(1−λ) over the six eigenvalues
        spectrum.iter().map(|l| l * (1.0 - l)).sum()
    }
}

/// Antisymmetric two-fermion amplitudes `Q_ij`, stored on ordered pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairState(pub [Complex64; 15]);

impl PairState {
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        match ordered_pair(i, j) {
            (Some(a), s) => self.0[a] * s as f64,
            _ => ZERO,
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.0.iter().map(|q| q.norm_sqr()).sum()
    }

    /// Norm of the four-form `Q ∧ Q` (components over ordered quadruples,
    /// `(Q∧Q)_abcd = 2(Q_ab Q_cd − Q_ac Q_bd + Q_ad Q_bc)`).
    pub fn wedge_square_norm(&self) -> f64 {
        let mut acc = 0.0;
        for a in 0..MODES {
            for b in a + 1..MODES {
                for c in b + 1..MODES {
                    for d in c + 1..MODES {
                        let pf = self.get(a, b) * self.get(c, d) - self.get(a, c) * self.get(b, d)
                            + self.get(a, d) * self.get(b, c);
                        acc += 4.0 * pf.norm_sqr();
                    }
                }
            }
        }
        acc.sqrt()
    }
}

/// Plücker test for a two-fermion state: `‖Q∧Q‖ ≤ tol·‖Q‖²`.
pub fn plucker_separable(q: &PairState, tol: f64) -> bool {
    q.wedge_square_norm() <= tol * q.norm_sq()
}

/// One natural orbital: eigenpair of ρ and the induced eigenvector of ρ⁽²⁾.
#[derive(Debug, Clone, PartialEq)]
pub struct NaturalOrbital {
    pub eigenvalue: f64,
    pub orbital: [Complex64; 6],
    /// `E_ij = P_ijk conj(e)^k`.
    pub pair_state: PairState,
    /// `‖ρ⁽²⁾E − λE‖`.
    pub residual: f64,
}

pub fn natural_orbitals(p: &FermiState336) -> Vec<NaturalOrbital> {
    let (values, vectors) = one_rdm(p).eigen();
    let rho2 = two_rdm(p).0;
    values
        .iter()
        .enumerate()
        .map(|(a, &lambda)| {
            let mut orbital = [ZERO; 6];
            for (k, o) in orbital.iter_mut().enumerate() {
                *o = vectors[(k, a)];
            }
            let mut e = [ZERO; 15];
            for (n, [i, j]) in PAIRS.iter().copied().enumerate() {
                e[n] = (0..MODES).map(|k| p.get(i, j, k) * orbital[k].conj()).sum();
            }
            let ev = nalgebra::DVector::from_column_slice(&e);
            let residual = (&rho2 * &ev - &ev * Complex64::new(lambda, 0.0)).norm();
            NaturalOrbital {
                eigenvalue: lambda,
                orbital,
                pair_state: PairState(e),
                residual,
            }
        })
        .collect()
}

/// `C = K ρ̄ − ρ̄ K` and its Frobenius norm.
pub fn k_rho_commutator(p: &FermiState336) -> (CMatrix, f64) {
    let k = k_matrix(p).0;
    let rho_bar = one_rdm(p).0.conjugate();
    let c = linalg::commutator(&k, &rho_bar);
    let n = c.norm();
    (c, n)
}

/// Traces of ρ used by the closed-form identities.
struct RhoTraces {
    t1: f64,
    t2: f64,
    t3: f64,
    t4: f64,
}

fn rho_traces(rho: &OneRdm) -> RhoTraces {
    RhoTraces {
        t1: rho.trace_pow(1),
        t2: rho.trace_pow(2),
        t3: rho.trace_pow(3),
        t4: rho.trace_pow(4),
    }
}

/// `Tr(K ρ̄ K† ρ̄)` computed directly.
pub fn tr_k_rho_k_rho(p: &FermiState336) -> Complex64 {
    let k = k_matrix(p).0;
    let rb = one_rdm(p).0.conjugate();
    (&k * &rb * k.adjoint() * &rb).trace()
}

/// Residual of the closed form
/// `Tr(Kρ̄K†ρ̄) = (Tr ρ)⁴/324 − (Tr ρ³)(Tr ρ)/9 − (Tr ρ²)²/4 + Tr ρ⁴
///   + (Tr ρ) Tr(KK†ρ̄)/3 − |Tr K²|²/12`.
pub fn tr_k_rho_k_rho_identity_residual(p: &FermiState336) -> f64 {
    let km = k_matrix(p);
    let k = km.0.clone();
    let rho = one_rdm(p);
    let rb = rho.0.conjugate();
    let t = rho_traces(&rho);
    let lhs = (&k * &rb * k.adjoint() * &rb).trace();
    let kk_rho = (&k * k.adjoint() * &rb).trace();
    let rhs = Complex64::new(
        t.t1.powi(4) / 324.0 - t.t3 * t.t1 / 9.0 - t.t2 * t.t2 / 4.0 + t.t4 - km.trace_sq().norm_sqr() / 12.0,
        0.0,
    ) + kk_rho * (t.t1 / 3.0);
    (lhs - rhs).norm()
}

/// `Tr(CC†)` for `C = [K, ρ̄]` through its expansion
/// `Tr(ρ̄²{K,K†}) − 2 Tr(Kρ̄K†ρ̄)`.
pub fn commutator_norm_sq_expansion(p: &FermiState336) -> f64 {
    let k = k_matrix(p).0;
    let rb = one_rdm(p).0.conjugate();
    let ac = linalg::anticommutator(&k, &k.adjoint());
    ((&rb * &rb * ac).trace() - (&k * &rb * k.adjoint() * &rb).trace() * 2.0).re
}

/// Closed form of `Tr(CC†)` valid for vanishing concurrence, written in the
/// traces of ρ and `μ = λ*(1−λ*) = |D|`. It evaluates to zero on that family.
pub fn zero_con_commutator_closed_form(p: &FermiState336) -> f64 {
    let t = rho_traces(&one_rdm(p));
    let mu = quartic_d(p).norm();
    2.0 * mu * t.t2 - 2.0 / 324.0 * t.t1.powi(4) + 2.0 / 9.0 * t.t3 * t.t1 + 0.5 * t.t2 * t.t2
        - 2.0 * t.t4
        - 2.0 / 3.0 * t.t1 * t.t1 * mu
        + 6.0 * mu * mu
}

/// `|Tr(CC†) − closed form|` together with the expansion residual, the
/// larger of the two. Meaningful for normalized zero-concurrence states.
pub fn commutator_closed_form_residual(p: &FermiState336) -> f64 {
    let (_, c_norm) = k_rho_commutator(p);
    let direct = c_norm * c_norm;
    let expanded = commutator_norm_sq_expansion(p);
    let closed = zero_con_commutator_closed_form(p);
    (direct - closed).abs().max((direct - expanded).abs())
}

/// `|Tr KK† − Tr(ρ⁽²⁾ ρ̃⁽²⁾)|` with `ρ̃⁽²⁾` the two-particle RDM of the dual state.
pub fn two_particle_kk_residual(p: &FermiState336) -> f64 {
    let prod = two_rdm(p).0 * two_rdm(&p.dual()).0;
    (prod.trace() - Complex64::new(k_matrix(p).trace_kk_dagger(), 0.0)).norm()
}
