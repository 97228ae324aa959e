//! Seeded random states and transforms.
//!
//! Every draw goes through a [`ChaCha8Rng`]; [`stream_rng`] gives each item
//! of a batch its own stream so batches can be generated in any order.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, Result};
use crate::fock::{FockState, SpinGenerator};
use crate::linalg::{condition_number, CMatrix};
use crate::qubit::ThreeQubitState;
use crate::tensor::{FermiState336, SloccTransform};

/// Independent stream number `index` under `seed`.
pub fn stream_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Standard complex Gaussian: real and imaginary parts i.i.d. N(0, 1/2).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn complex_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| complex_gaussian(rng)).collect()
}

pub fn complex_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| complex_gaussian(rng))
}

/// Gaussian antisymmetric `n×n` matrix scaled by `scale`.
pub fn antisymmetric<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = complex_gaussian(rng) * scale;
            m[(i, j)] = v;
            m[(j, i)] = -v;
        }
    }
    m
}

/// Unnormalized Gaussian three-fermion state.
pub fn fermi_state<R: Rng + ?Sized>(rng: &mut R) -> FermiState336 {
    let mut amps = [Complex64::new(0.0, 0.0); 20];
    amps.iter_mut().for_each(|a| *a = complex_gaussian(rng));
    FermiState336::from_amplitudes(amps)
}

pub fn normalized_fermi_state<R: Rng + ?Sized>(rng: &mut R) -> FermiState336 {
    loop {
        if let Ok(p) = fermi_state(rng).normalized() {
            return p;
        }
    }
}

pub fn qubit_state<R: Rng + ?Sized>(rng: &mut R) -> ThreeQubitState {
    let mut amps = [Complex64::new(0.0, 0.0); 8];
    amps.iter_mut().for_each(|a| *a = complex_gaussian(rng));
    ThreeQubitState::from_amplitudes(amps)
}

pub fn normalized_qubit_state<R: Rng + ?Sized>(rng: &mut R) -> ThreeQubitState {
    loop {
        if let Ok(p) = qubit_state(rng).normalized() {
            return p;
        }
    }
}

/// Normalized Gaussian state on the full Fock space over `d` modes.
pub fn fock_state<R: Rng + ?Sized>(rng: &mut R, d: usize) -> Result<FockState> {
    let amps = complex_vec(rng, 1 << d);
    FockState::from_amplitudes(d, amps)?.normalized()
}

/// Spin-algebra parameters with Gaussian entries, scaled so that the
/// combined Frobenius norm of `(A, B, β)` equals `norm`.
pub fn spin_generator<R: Rng + ?Sized>(rng: &mut R, d: usize, norm: f64) -> Result<SpinGenerator> {
    let a = complex_matrix(rng, d, d);
    let b = antisymmetric(rng, d, 1.0);
    let beta = antisymmetric(rng, d, 1.0);
    let total = (a.norm_squared() + b.norm_squared() + beta.norm_squared()).sqrt();
    let s = if total > 0.0 { norm / total } else { 0.0 };
    SpinGenerator::new(
        a * Complex64::new(s, 0.0),
        b * Complex64::new(s, 0.0),
        beta * Complex64::new(s, 0.0),
    )
}

/// Gaussian 6×6 transform, redrawn until its condition number is at most `cap`.
pub fn slocc<R: Rng + ?Sized>(rng: &mut R, cap: f64) -> Result<SloccTransform> {
    square_with_condition_cap(rng, 6, cap).and_then(SloccTransform::new)
}

/// Gaussian `n×n` matrix with condition number at most `cap`.
pub fn square_with_condition_cap<R: Rng + ?Sized>(rng: &mut R, n: usize, cap: f64) -> Result<CMatrix> {
    if !(cap > 1.0) {
        return Err(domain(format!("condition cap {cap} must exceed 1")));
    }
    loop {
        let g = complex_matrix(rng, n, n);
        if condition_number(&g) <= cap {
            return Ok(g);
        }
    }
}
