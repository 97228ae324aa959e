//! Randomized structural properties.

mod common;

use common::*;
use fermion_ckw::fock::{
    bilinear_pairing, chi_dual, create, pairing_invariance_residual, parity_leakage, transpose, FockState,
    SpinGenerator,
};
use fermion_ckw::invariants::{anticommutator_identity_residual, classify, k_matrix, quartic_d, tr_kk_dagger};
use fermion_ckw::linalg::{condition_number, CMatrix};
use fermion_ckw::qubit::{ckw_report, embed, ThreeQubitState};
use fermion_ckw::random;
use fermion_ckw::rdm::{one_rdm, two_particle_kk_residual, von_neumann_entropy, EntropyCurve};
use fermion_ckw::sampling::{SampleClass, SampleSpec};
use fermion_ckw::tensor::{FermiState336, SloccTransform};
use num_complex::Complex64;
use proptest::prelude::*;

fn cplx() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn state() -> impl Strategy<Value = FermiState336> {
    proptest::array::uniform20(cplx()).prop_map(FermiState336::from_amplitudes)
}

fn unit_state() -> impl Strategy<Value = FermiState336> {
    state().prop_filter_map("nonzero", |p| p.normalized().ok())
}

fn square(n: usize) -> impl Strategy<Value = CMatrix> {
    proptest::collection::vec(cplx(), n * n).prop_map(move |v| CMatrix::from_vec(n, n, v))
}

/// Invertible 6×6 transforms with condition number below 100.
fn slocc() -> impl Strategy<Value = SloccTransform> {
    square(6).prop_filter_map("well conditioned", |m| {
        if condition_number(&m) < 1e2 {
            SloccTransform::new(m).ok()
        } else {
            None
        }
    })
}

fn unitary() -> impl Strategy<Value = SloccTransform> {
    square(6).prop_filter_map("full rank", |m| {
        if condition_number(&m) < 1e3 {
            SloccTransform::new(m.qr().q()).ok()
        } else {
            None
        }
    })
}

fn qubits() -> impl Strategy<Value = ThreeQubitState> {
    proptest::array::uniform8(cplx())
        .prop_filter_map("nonzero", |a| ThreeQubitState::from_amplitudes(a).normalized().ok())
}

fn fock(d: usize) -> impl Strategy<Value = FockState> {
    proptest::collection::vec(cplx(), 1 << d).prop_map(move |v| FockState::from_amplitudes(d, v).unwrap())
}

fn generator(d: usize) -> impl Strategy<Value = SpinGenerator> {
    any::<u64>().prop_map(move |seed| random::spin_generator(&mut random::stream_rng(seed, 0), d, 0.5).unwrap())
}

fn scale(p: &FermiState336) -> f64 {
    1.0 + p.norm_sq() * p.norm_sq()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn amplitudes_are_antisymmetric(p in state(), i in 0..6usize, j in 0..6usize, k in 0..6usize) {
        let a = p.amplitude(i, j, k).unwrap();
        prop_assert_eq!(a, -p.amplitude(j, i, k).unwrap());
        prop_assert_eq!(a, -p.amplitude(i, k, j).unwrap());
        prop_assert_eq!(a, p.amplitude(j, k, i).unwrap());
    }

    #[test]
    fn action_composes_on_the_right(p in state(), g in slocc(), h in slocc()) {
        let gh = g.compose(&h).unwrap();
        let lhs = p.apply_slocc(&gh);
        let rhs = p.apply_slocc(&g).apply_slocc(&h);
        prop_assert!(lhs.max_diff(&rhs) <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn action_matches_brute_force(p in state(), g in slocc()) {
        let rhs = slocc_oracle(g.matrix(), &p);
        prop_assert!(p.apply_slocc(&g).max_diff(&rhs) <= 1e-11 * (1.0 + rhs.norm()));
    }

    #[test]
    fn k_is_covariant(p in state(), g in slocc()) {
        let lhs = k_matrix(&p.apply_slocc(&g)).0;
        let rhs = g.inverse() * k_matrix(&p).0 * g.matrix() * g.det();
        let tol = 1e-9 * (1.0 + rhs.norm());
        prop_assert!((lhs - &rhs).norm() <= tol);
    }

    #[test]
    fn quartic_is_relatively_invariant(p in state(), g in slocc()) {
        let lhs = quartic_d(&p.apply_slocc(&g));
        let rhs = quartic_d(&p) * g.det() * g.det();
        prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
    }

    #[test]
    fn class_is_slocc_invariant(g in slocc(), which in 0..4usize) {
        let p = [slater(0, 1, 2), slater(0, 1, 2) + slater(0, 4, 5),
                 slater(0, 1, 5) + slater(3, 1, 2) + slater(0, 4, 2), slater(0, 1, 2) + slater(3, 4, 5)][which];
        let before = classify(&p, 1e-8).unwrap().label;
        prop_assert_eq!(classify(&p.apply_slocc(&g), 1e-8).unwrap().label, before);
    }

    #[test]
    fn dual_squares_to_minus_one(p in state()) {
        prop_assert!(p.dual().dual().max_diff(&(p * -1.0)) <= 1e-15);
        prop_assert!(p.dual().max_diff(&dual_oracle(&p)) <= 1e-14);
    }

    #[test]
    fn dual_is_antilinear(p in state(), z in cplx()) {
        prop_assert!((p * z).dual().max_diff(&(p.dual() * z.conj())) <= 1e-14);
    }

    #[test]
    fn unitaries_preserve_norm(p in state(), u in unitary()) {
        prop_assert!((p.apply_slocc(&u).norm() - p.norm()).abs() <= 1e-12 * (1.0 + p.norm()));
    }

    #[test]
    fn kk_dagger_through_rdms(p in state()) {
        let rho = one_rdm_oracle(&p);
        let n4 = p.norm_sq() * p.norm_sq();
        let rhs = 3.0 * n4 - (&rho * &rho).trace().re;
        prop_assert!((tr_kk_dagger(&p) - rhs).abs() <= 1e-11 * scale(&p));
        prop_assert!(two_particle_kk_residual(&p) <= 1e-11 * scale(&p));
    }

    #[test]
    fn cauchy_schwarz_bounds(p in state()) {
        let k = k_matrix(&p);
        let (sq, kk) = (k.trace_sq().norm(), k.trace_kk_dagger());
        let n4 = p.norm_sq() * p.norm_sq();
        prop_assert!(sq <= kk + 1e-12 * scale(&p));
        prop_assert!(kk <= 1.5 * n4 + 1e-12 * scale(&p));
    }

    #[test]
    fn anticommutator_identity(p in state()) {
        prop_assert!(anticommutator_identity_residual(&p) <= 1e-11 * scale(&p));
    }

    #[test]
    fn borland_dennis_holds(p in unit_state()) {
        let bd = one_rdm(&p).borland_dennis();
        prop_assert!(bd.max_equality_residual() <= 1e-10);
        prop_assert!(bd.inequality_slack >= -1e-10);
    }

    #[test]
    fn entropy_below_zero_con_curve(p in unit_state()) {
        let x = tr_kk_dagger(&p).min(1.5);
        let s = von_neumann_entropy(&one_rdm(&p)).unwrap();
        prop_assert!(s <= EntropyCurve::ZeroCon.eval(x).unwrap() + 1e-9);
    }

    #[test]
    fn monogamy_and_ckw(psi in qubits()) {
        let r = ckw_report(&psi).unwrap();
        prop_assert!(r.max_residual() <= 1e-9);
        prop_assert!(r.monogamy_slack >= -1e-9);
    }

    #[test]
    fn embedding_is_isometric(psi in qubits()) {
        prop_assert!((embed(&psi).norm() - 1.0).abs() <= 1e-13);
        prop_assert!((quartic_d(&embed(&psi)) - cayley(&psi)).norm() <= 1e-12);
    }

    #[test]
    fn creation_operators_obey_car(d in 1..6usize, i in 0..6usize, j in 0..6usize) {
        prop_assume!(i < d && j < d);
        let (fi, fj) = (create(d, i).unwrap(), create(d, j).unwrap());
        let n = 1 << d;
        let anti = fi.matrix() * fj.matrix().adjoint() + fj.matrix().adjoint() * fi.matrix();
        let delta = if i == j { CMatrix::identity(n, n) } else { CMatrix::zeros(n, n) };
        prop_assert!(max_abs(&(anti - delta)) == 0.0);
        let same = fi.matrix() * fj.matrix() + fj.matrix() * fi.matrix();
        prop_assert!(max_abs(&same) == 0.0);
    }

    #[test]
    fn pairing_symmetry_sign(d in 1..6usize, seed in any::<u64>()) {
        let mut rng = random::stream_rng(seed, 0);
        let phi = random::fock_state(&mut rng, d).unwrap();
        let psi = random::fock_state(&mut rng, d).unwrap();
        let s = if (d * (d - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = bilinear_pairing(&phi, &psi).unwrap();
        let rhs = bilinear_pairing(&psi, &phi).unwrap() * s;
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm()));
    }

    #[test]
    fn pairing_is_spin_invariant(gen in generator(4), phi in fock(4), psi in fock(4)) {
        let scale = 1.0 + phi.norm() * psi.norm();
        prop_assert!(pairing_invariance_residual(&gen, &phi, &psi).unwrap() <= 1e-10 * scale);
        prop_assert!(parity_leakage(&gen, &phi).unwrap() <= 1e-12 * (1.0 + phi.norm()));
    }

    #[test]
    fn transpose_is_adjoint_for_pairing(seed in any::<u64>(), phi in fock(3), psi in fock(3)) {
        let mut rng = random::stream_rng(seed, 1);
        let a = fermion_ckw::fock::CliffordOp::from_matrix(3, random::complex_matrix(&mut rng, 8, 8)).unwrap();
        let b = fermion_ckw::fock::CliffordOp::from_matrix(3, random::complex_matrix(&mut rng, 8, 8)).unwrap();
        let lhs = bilinear_pairing(&phi, &a.apply(&psi).unwrap()).unwrap();
        let rhs = bilinear_pairing(&transpose(&a).unwrap().apply(&phi).unwrap(), &psi).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + lhs.norm()));
        let ab = transpose(&a.compose(&b).unwrap()).unwrap();
        let ba = transpose(&b).unwrap().compose(&transpose(&a).unwrap()).unwrap();
        prop_assert!(ab.max_diff(&ba) <= 1e-10 * (1.0 + max_abs(ab.matrix())));
    }

    #[test]
    fn chi_is_antiunitary(phi in fock(4), psi in fock(4)) {
        let lhs = chi_dual(&phi).inner(&chi_dual(&psi)).unwrap();
        let rhs = psi.inner(&phi).unwrap();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sampled_states_depend_only_on_index(seed in any::<u64>(), index in 0..50u64, n in 1..10u64) {
        let spec = SampleSpec::new(SampleClass::WClass, 50, seed);
        let mut other = spec;
        other.count = n as usize;
        prop_assert_eq!(spec.state(index).unwrap(), other.state(index).unwrap());
    }
}
