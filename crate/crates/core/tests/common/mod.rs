//! Brute-force reference implementations shared by the integration tests.
//!
//! Everything here works on the full `6×6×6` tensor or on dense Kronecker
//! products and shares no code with the library beyond its data types.

#![allow(dead_code, clippy::needless_range_loop)]

use fermion_ckw::linalg::CMatrix;
use fermion_ckw::qubit::ThreeQubitState;
use fermion_ckw::tensor::FermiState336;
use num_complex::Complex64;

pub type Full = [[[Complex64; 6]; 6]; 6];

pub const Z: Complex64 = Complex64 { re: 0.0, im: 0.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Sign of the permutation taking `seq` to sorted order; 0 on repeats.
pub fn sign(seq: &[usize]) -> i32 {
    let mut s = 1;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] == seq[b] {
                return 0;
            }
            if seq[a] > seq[b] {
                s = -s;
            }
        }
    }
    s
}

/// Every `T_ijk`, signs included, from the stored amplitudes.
pub fn full_tensor(p: &FermiState336) -> Full {
    let mut t = [[[Z; 6]; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                let s = sign(&[i, j, k]);
                if s == 0 {
                    continue;
                }
                let mut sorted = [i, j, k];
                sorted.sort();
                t[i][j][k] = p.get(sorted[0], sorted[1], sorted[2]) * s as f64;
            }
        }
    }
    t
}

/// Back from a full antisymmetric tensor to the stored form.
pub fn from_full(t: &Full) -> FermiState336 {
    let mut p = FermiState336::zero();
    for i in 0..6 {
        for j in i + 1..6 {
            for k in j + 1..6 {
                p.set(i, j, k, t[i][j][k]).unwrap();
            }
        }
    }
    p
}

/// `K^i_j = (1/12) Σ ε^{iabcde} T_jab T_cde` over all index values.
pub fn k_oracle(p: &FermiState336) -> CMatrix {
    let t = full_tensor(p);
    let mut k = CMatrix::zeros(6, 6);
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = Z;
            for a in 0..6 {
                for b in 0..6 {
                    for cc in 0..6 {
                        for d in 0..6 {
                            for e in 0..6 {
                                let s = sign(&[i, a, b, cc, d, e]);
                                if s != 0 {
                                    acc += t[j][a][b] * t[cc][d][e] * s as f64;
                                }
                            }
                        }
                    }
                }
            }
            k[(i, j)] = acc / 12.0;
        }
    }
    k
}

/// `P̃_ijk = (1/6) Σ ε_ijklmn conj(T_lmn)`.
pub fn dual_oracle(p: &FermiState336) -> FermiState336 {
    let t = full_tensor(p);
    let mut out = [[[Z; 6]; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                let mut acc = Z;
                for l in 0..6 {
                    for m in 0..6 {
                        for n in 0..6 {
                            let s = sign(&[i, j, k, l, m, n]);
                            if s != 0 {
                                acc += t[l][m][n].conj() * s as f64;
                            }
                        }
                    }
                }
                out[i][j][k] = acc / 6.0;
            }
        }
    }
    from_full(&out)
}

/// `T'_ijk = Σ g[a][i] g[b][j] g[c][k] T_abc`.
pub fn slocc_oracle(g: &CMatrix, p: &FermiState336) -> FermiState336 {
    let t = full_tensor(p);
    let mut out = [[[Z; 6]; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                let mut acc = Z;
                for a in 0..6 {
                    for b in 0..6 {
                        for cc in 0..6 {
                            acc += g[(a, i)] * g[(b, j)] * g[(cc, k)] * t[a][b][cc];
                        }
                    }
                }
                out[i][j][k] = acc;
            }
        }
    }
    from_full(&out)
}

/// `ρ_ij = (1/2) Σ_nm T_inm conj(T_jnm)`.
pub fn one_rdm_oracle(p: &FermiState336) -> CMatrix {
    let t = full_tensor(p);
    CMatrix::from_fn(6, 6, |i, j| {
        let mut acc = Z;
        for n in 0..6 {
            for m in 0..6 {
                acc += t[i][n][m] * t[j][n][m].conj();
            }
        }
        acc / 2.0
    })
}

/// Ordered pairs `(i<j)` in lexicographic order.
pub fn pairs() -> Vec<(usize, usize)> {
    (0..6).flat_map(|i| (i + 1..6).map(move |j| (i, j))).collect()
}

/// `Σ_n T_ijn conj(T_kln)` on ordered pairs.
pub fn two_rdm_oracle(p: &FermiState336) -> CMatrix {
    let t = full_tensor(p);
    let pr = pairs();
    CMatrix::from_fn(15, 15, |r, s| {
        let ((i, j), (k, l)) = (pr[r], pr[s]);
        (0..6).map(|n| t[i][j][n] * t[k][l][n].conj()).sum()
    })
}

/// Reduced matrix of the qubits in `keep` (ascending), traced over the rest.
pub fn qubit_partial_trace(psi: &ThreeQubitState, keep: &[usize]) -> CMatrix {
    let dim = 1 << keep.len();
    let traced: Vec<usize> = (0..3).filter(|q| !keep.contains(q)).collect();
    let bits = |levels: [usize; 3], qs: &[usize]| qs.iter().fold(0, |acc, &q| acc * 2 + levels[q]);
    let mut rho = CMatrix::zeros(dim, dim);
    for x in 0..8 {
        for y in 0..8 {
            let lx = [x >> 2, (x >> 1) & 1, x & 1];
            let ly = [y >> 2, (y >> 1) & 1, y & 1];
            if bits(lx, &traced) != bits(ly, &traced) {
                continue;
            }
            rho[(bits(lx, keep), bits(ly, keep))] += psi.amplitudes()[x] * psi.amplitudes()[y].conj();
        }
    }
    rho
}

/// Cayley's hyperdeterminant of a 2×2×2 array.
pub fn cayley(psi: &ThreeQubitState) -> Complex64 {
    let a = |i: usize, j: usize, k: usize| psi.get(i, j, k);
    let (a000, a001, a010, a011) = (a(0, 0, 0), a(0, 0, 1), a(0, 1, 0), a(0, 1, 1));
    let (a100, a101, a110, a111) = (a(1, 0, 0), a(1, 0, 1), a(1, 1, 0), a(1, 1, 1));
    a000 * a000 * a111 * a111 + a001 * a001 * a110 * a110 + a010 * a010 * a101 * a101 + a100 * a100 * a011 * a011
        - 2.0
            * (a000 * a001 * a110 * a111
                + a000 * a010 * a101 * a111
                + a000 * a100 * a011 * a111
                + a001 * a010 * a101 * a110
                + a001 * a100 * a011 * a110
                + a010 * a100 * a011 * a101)
        + 4.0 * (a000 * a011 * a101 * a110 + a001 * a010 * a100 * a111)
}

fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Dense `f_i†` on `d` modes from Kronecker products: `Z` on the modes
/// below `i`, the raising matrix on `i`, identity above. Mode 0 is the
/// least significant bit of the basis index.
pub fn creation_oracle(d: usize, i: usize) -> CMatrix {
    let id = CMatrix::identity(2, 2);
    let zz = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(-1.0, 0.0)]));
    let mut raise = CMatrix::zeros(2, 2);
    raise[(1, 0)] = c(1.0, 0.0);
    let mut m = CMatrix::identity(1, 1);
    for mode in (0..d).rev() {
        let factor = if mode > i {
            &id
        } else if mode == i {
            &raise
        } else {
            &zz
        };
        m = kron(&m, factor);
    }
    m
}

pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn slater(i: usize, j: usize, k: usize) -> FermiState336 {
    FermiState336::slater(i, j, k).unwrap()
}

/// Amplitudes (1-based triples) of a state, skipping zeros.
pub fn state_from(entries: &[(usize, usize, usize, Complex64)]) -> FermiState336 {
    let mut p = FermiState336::zero();
    for &(i, j, k, a) in entries {
        p.set(i - 1, j - 1, k - 1, a).unwrap();
    }
    p
}
