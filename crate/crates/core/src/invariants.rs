//! The SLOCC-covariant matrix K and the quantities built from it.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::linalg::{self, CMatrix, ZERO};
use crate::perm::{levi_civita6, MODES};
use crate::rdm;
use crate::tensor::FermiState336;

/// Default relative tolerance for the numeric rank of K.
pub const DEFAULT_RANK_TOL: f64 = 1e-8;

/// The 6×6 matrix `K^i_j = (1/(2!3!)) ε^{iabcde} P_jab P_cde`; row `i`, column `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct KMatrix(pub CMatrix);

impl KMatrix {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `Tr K²`.
    pub fn trace_sq(&self) -> Complex64 {
        let k = &self.0;
        let mut acc = ZERO;
        for i in 0..MODES {
            for j in 0..MODES {
                acc += k[(i, j)] * k[(j, i)];
            }
        }
        acc
    }

    /// `Tr K K†`, the squared Hilbert-Schmidt norm.
    pub fn trace_kk_dagger(&self) -> f64 {
        self.0.norm_squared()
    }

    pub fn singular_values(&self) -> Vec<f64> {
        linalg::singular_values(&self.0)
    }
}

/// Splits of the five modes other than `i` into an ordered pair and an
/// ordered triple, with the sign `ε(i, a, b, c, d, e)`.
fn splits(i: usize) -> impl Iterator<Item = ([usize; 2], [usize; 3], i32)> {
    let rest: Vec<usize> = (0..MODES).filter(|&m| m != i).collect();
    let mut out = Vec::with_capacity(10);
    for x in 0..5 {
        for y in x + 1..5 {
            let pair = [rest[x], rest[y]];
            let mut triple = [0; 3];
            let mut n = 0;
            for (z, &m) in rest.iter().enumerate() {
                if z != x && z != y {
                    triple[n] = m;
                    n += 1;
                }
            }
            let eps = levi_civita6([i, pair[0], pair[1], triple[0], triple[1], triple[2]]);
            out.push((pair, triple, eps));
        }
    }
    out.into_iter()
}

/// Computes K. The 2!·3! orderings of each split are summed once via
/// ordered pairs and triples.
pub fn k_matrix(p: &FermiState336) -> KMatrix {
    let mut k = CMatrix::zeros(MODES, MODES);
    for i in 0..MODES {
        for (pair, triple, eps) in splits(i) {
            let cde = p.get(triple[0], triple[1], triple[2]);
            if cde == ZERO {
                continue;
            }
            let w = cde * eps as f64;
            for j in 0..MODES {
                let jab = p.get(j, pair[0], pair[1]);
                if jab != ZERO {
                    k[(i, j)] += jab * w;
                }
            }
        }
    }
    KMatrix(k)
}

/// The quartic relative invariant `D = Tr K² / 6`.
pub fn quartic_d(p: &FermiState336) -> Complex64 {
    k_matrix(p).trace_sq() / 6.0
}

pub fn tr_kk_dagger(p: &FermiState336) -> f64 {
    k_matrix(p).trace_kk_dagger()
}

/// The fermionic concurrence `Con(P) = Tr KK† − |Tr K²|`.
pub fn concurrence(p: &FermiState336) -> f64 {
    let k = k_matrix(p);
    k.trace_kk_dagger() - k.trace_sq().norm()
}

/// Phase `Tr K² / |Tr K²|` of the quartic invariant, or `None` when
/// `Tr K²` vanishes at machine precision relative to `‖P‖⁴`.
pub fn quartic_phase(p: &FermiState336) -> Option<Complex64> {
    let t = k_matrix(p).trace_sq();
    let scale = p.norm_sq() * p.norm_sq();
    if t.norm() <= f64::EPSILON * scale || t.norm() == 0.0 {
        None
    } else {
        Some(t / t.norm())
    }
}

/// SLOCC classes of three fermions with six modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ClassLabel {
    Zero,
    Separable,
    Biseparable,
    W,
    #[allow(clippy::upper_case_acronyms)]
    GHZ,
}

impl ClassLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            ClassLabel::Zero => "Zero",
            ClassLabel::Separable => "Separable",
            ClassLabel::Biseparable => "Biseparable",
            ClassLabel::W => "W",
            ClassLabel::GHZ => "GHZ",
        }
    }

    /// Exact rank of K on the class.
    pub fn rank(self) -> usize {
        match self {
            ClassLabel::Zero | ClassLabel::Separable => 0,
            ClassLabel::Biseparable => 1,
            ClassLabel::W => 3,
            ClassLabel::GHZ => 6,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// Result of [`classify`]: the label with its diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub label: ClassLabel,
    pub rank: usize,
    pub singular_values: [f64; 6],
    /// Cut below which singular values count as zero.
    pub threshold: f64,
}

/// Labels the SLOCC class from the numeric rank of K.
///
/// Singular values count when they exceed `tol` times the largest one; if
/// K itself is below `tol·‖P‖⁴` the rank is zero.
pub fn classify(p: &FermiState336, tol: f64) -> Result<Classification> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(domain(format!("tolerance {tol} outside (0, 1)")));
    }
    let sv_vec = k_matrix(p).singular_values();
    let mut sv = [0.0; 6];
    sv.copy_from_slice(&sv_vec);
    let norm4 = p.norm_sq() * p.norm_sq();
    if norm4 == 0.0 {
        return Ok(Classification {
            label: ClassLabel::Zero,
            rank: 0,
            singular_values: sv,
            threshold: 0.0,
        });
    }
    let (rank, threshold) = if sv[0] <= tol * norm4 {
        (0, tol * norm4)
    } else {
        let cut = tol * sv[0];
        (sv.iter().filter(|&&s| s > cut).count(), cut)
    };
    let label = match rank {
        0 => ClassLabel::Separable,
        1 => ClassLabel::Biseparable,
        3 => ClassLabel::W,
        6 => ClassLabel::GHZ,
        _ => {
            return Err(Error::Unclassifiable {
                rank,
                tol,
                singular_values: sv,
            })
        }
    };
    Ok(Classification {
        label,
        rank,
        singular_values: sv,
        threshold,
    })
}

/// Frobenius residual of
/// `{K, K†} = (1/3)((Tr ρ)² − 3 Tr ρ²) I − 4 (ρ(Tr ρ/3 − ρ))ᵀ`.
pub fn anticommutator_identity_residual(p: &FermiState336) -> f64 {
    let k = k_matrix(p).0;
    let rho = rdm::one_rdm(p).0;
    let tr = rho.trace().re;
    let tr2 = (&rho * &rho).trace().re;
    let ident = CMatrix::identity(MODES, MODES);
    let hole = &ident * Complex64::new(tr / 3.0, 0.0) - &rho;
    let rhs = &ident * Complex64::new((tr * tr - 3.0 * tr2) / 3.0, 0.0)
        - (&rho * hole).transpose() * Complex64::new(4.0, 0.0);
    (linalg::anticommutator(&k, &k.adjoint()) - rhs).norm()
}

/// `‖K − e^{iφ} K†‖ / ‖K‖` with `e^{iφ}` the phase of `Tr K²`; `None` when
/// the phase is undefined.
pub fn phase_alignment_residual(p: &FermiState336) -> Option<f64> {
    let phase = quartic_phase(p)?;
    let k = k_matrix(p).0;
    let norm = k.norm();
    Some((&k - k.adjoint() * phase).norm() / norm)
}
