//! Seeded property suites with a machine-readable report.
//!
//! Each property draws its instances from its own RNG stream, so a failure
//! is reproducible from `(seed, property, index)` alone; the report also
//! carries the offending state.

use std::fmt;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;

use crate::error::{domain, Result};
use crate::fock::{
    annihilator_dimension, bilinear_pairing, car_violation, chi_dual, chi_properties_check, dual_occupation_residual,
    fierz_check, fierz_kk_dagger, generator_action_residual, k_matrix_from_pairing, local_embedding_residual,
    pairing_invariance_residual, parity_leakage, projector_expansions_check, spin_transform, theta_basis, transpose,
    CliffordOp, FockState, Generator, SpinGenerator,
};
use crate::invariants::{
    anticommutator_identity_residual, classify, concurrence, k_matrix, phase_alignment_residual, quartic_d,
    DEFAULT_RANK_TOL,
};
use crate::io::{fermion_value, fock_value, qubits_value};
use crate::linalg::CMatrix;
use crate::perm::TRIPLES;
use crate::qubit::{
    block_structure_residual, ckw_report, concurrence_pair, concurrence_pair_hermitian, dual_embedding_check, embed,
    hyperdeterminant_residual, pair_hosting_residual, qubit_rdm_det, slocc_compatibility_residual, three_tangle, Pair,
    ThreeQubitState,
};
use crate::random::{self, stream_rng};
use crate::rdm::{
    commutator_closed_form_residual, dual_one_rdm_check, k_rho_commutator, natural_orbitals, one_rdm, spectral_entropy,
    tr_k_rho_k_rho_identity_residual, two_particle_kk_residual, two_rdm, zero_con_spectrum, EntropyCurve,
};
use crate::sampling::{canonical_biseparable, canonical_w, DEFAULT_CONDITION_CAP};
use crate::tensor::{FermiState336, SloccTransform};

/// Failure records kept per property; the counts stay exact.
const MAX_FAILURES_PER_PROPERTY: usize = 8;

/// Condition cap for transforms whose images are compared at tight tolerances.
const TIGHT_CAP: f64 = 1e2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    All,
    /// Tensor algebra, K and the class label.
    Invariants,
    /// Three-qubit bridge and the CKW relations.
    Ckw,
    Fierz,
    Rdm,
    Fock,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::All,
        Suite::Invariants,
        Suite::Ckw,
        Suite::Fierz,
        Suite::Rdm,
        Suite::Fock,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Invariants => "invariants",
            Suite::Ckw => "ckw",
            Suite::Fierz => "fierz",
            Suite::Rdm => "rdm",
            Suite::Fock => "fock",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| {
            domain(format!(
                "unknown suite {s:?} (expected all, invariants, ckw, fierz, rdm or fock)"
            ))
        })
    }

    fn selects(self, group: Suite) -> bool {
        self == Suite::All || self == group
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyOptions {
    pub suite: Suite,
    /// Random instances per property.
    pub n: usize,
    pub seed: u64,
    /// Rank tolerance for the classification checks.
    pub tol: f64,
}

impl VerifyOptions {
    pub fn new(suite: Suite, n: usize, seed: u64) -> Self {
        Self {
            suite,
            n,
            seed,
            tol: DEFAULT_RANK_TOL,
        }
    }
}

/// Summary of one property over all its instances.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub suite: Suite,
    /// An instance passes when its residual is at most this.
    pub bound: f64,
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_residual: f64,
}

/// Everything needed to reproduce one failing instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailureRecord {
    pub property: &'static str,
    pub seed: u64,
    pub index: usize,
    pub residual: f64,
    pub error: Option<String>,
    pub state: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub n: usize,
    pub seed: u64,
    pub tol: f64,
    pub passed: usize,
    pub failed: usize,
    pub properties: Vec<PropertyReport>,
    pub failures: Vec<FailureRecord>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn property(&self, name: &str) -> Option<&PropertyReport> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// How many instances a property runs for a requested `n`.
#[derive(Debug, Clone, Copy)]
enum Count {
    PerN,
    /// `⌈n/k⌉`, for the expensive checks.
    Fraction(usize),
    /// Deterministic sweeps that do not depend on the seed.
    Once,
}

impl Count {
    fn of(self, n: usize) -> usize {
        match self {
            Count::PerN => n,
            Count::Fraction(k) => n.div_ceil(k).max(1),
            Count::Once => 1,
        }
    }
}

struct Ctx {
    tol: f64,
}

/// Draws an instance, records it in `state`, and returns its residual.
type Check = fn(&mut ChaCha8Rng, usize, &Ctx, &mut Value) -> Result<f64>;

struct Property {
    name: &'static str,
    group: Suite,
    bound: f64,
    count: Count,
    check: Check,
}

const fn prop(name: &'static str, group: Suite, bound: f64, count: Count, check: Check) -> Property {
    Property {
        name,
        group,
        bound,
        count,
        check,
    }
}

/// Runs the selected properties; instances run in parallel and are
/// reported in a fixed order.
pub fn run(opts: &VerifyOptions) -> Result<VerifyReport> {
    if opts.n == 0 {
        return Err(domain("verify needs at least one instance per property"));
    }
    if !(opts.tol > 0.0 && opts.tol < 1.0) {
        return Err(domain(format!("tolerance {} outside (0, 1)", opts.tol)));
    }
    let ctx = Ctx { tol: opts.tol };
    let selected: Vec<(usize, &Property)> = PROPERTIES
        .iter()
        .enumerate()
        .filter(|(_, p)| opts.suite.selects(p.group))
        .collect();
    let jobs: Vec<(usize, usize)> = selected
        .iter()
        .enumerate()
        .flat_map(|(slot, (_, p))| (0..p.count.of(opts.n)).map(move |i| (slot, i)))
        .collect();
    let outcomes: Vec<(usize, usize, Result<f64>, Value)> = jobs
        .par_iter()
        .map(|&(slot, index)| {
            let (id, p) = selected[slot];
            let mut rng = stream_rng(opts.seed, ((id as u64) << 32) | index as u64);
            let mut state = Value::Null;
            let r = (p.check)(&mut rng, index, &ctx, &mut state);
            (slot, index, r, state)
        })
        .collect();

    let mut properties: Vec<PropertyReport> = selected
        .iter()
        .map(|(_, p)| PropertyReport {
            name: p.name,
            suite: p.group,
            bound: p.bound,
            instances: p.count.of(opts.n),
            passed: 0,
            failed: 0,
            worst_residual: 0.0,
        })
        .collect();
    let mut failures = Vec::new();
    for (slot, index, outcome, state) in outcomes {
        let report = &mut properties[slot];
        let (residual, error) = match outcome {
            Ok(r) if r.is_nan() => (f64::INFINITY, Some("residual is NaN".to_string())),
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(e.to_string())),
        };
        report.worst_residual = report.worst_residual.max(residual);
        if error.is_none() && residual <= report.bound {
            report.passed += 1;
            continue;
        }
        report.failed += 1;
        if report.failed <= MAX_FAILURES_PER_PROPERTY {
            failures.push(FailureRecord {
                property: report.name,
                seed: opts.seed,
                index,
                residual,
                error,
                state,
            });
        }
    }
    Ok(VerifyReport {
        suite: opts.suite,
        n: opts.n,
        seed: opts.seed,
        tol: opts.tol,
        passed: properties.iter().map(|p| p.passed).sum(),
        failed: properties.iter().map(|p| p.failed).sum(),
        properties,
        failures,
    })
}

/// Names of the properties a suite runs, in report order.
pub fn property_names(suite: Suite) -> Vec<&'static str> {
    PROPERTIES
        .iter()
        .filter(|p| suite.selects(p.group))
        .map(|p| p.name)
        .collect()
}

use Count::{Fraction, Once, PerN};
use Suite::{Ckw, Fierz, Fock, Invariants, Rdm};

static PROPERTIES: &[Property] = &[
    prop("antisymmetry", Invariants, 0.0, PerN, antisymmetry),
    prop("group_action", Invariants, 1e-12, PerN, group_action),
    prop("dual_involution", Invariants, 1e-12, PerN, dual_involution),
    prop("dual_antilinearity", Invariants, 1e-12, PerN, dual_antilinearity),
    prop("unitary_isometry", Invariants, 1e-12, PerN, unitary_isometry),
    prop("dual_matches_chi", Invariants, 1e-12, PerN, dual_matches_chi),
    prop("k_covariance", Invariants, 1e-10, PerN, k_covariance),
    prop(
        "quartic_relative_invariance",
        Invariants,
        1e-10,
        PerN,
        quartic_relative_invariance,
    ),
    prop("ckw_inequality", Invariants, 1e-11, PerN, ckw_inequality),
    prop(
        "kk_dagger_rdm_identity",
        Invariants,
        1e-11,
        PerN,
        kk_dagger_rdm_identity,
    ),
    prop(
        "kk_dagger_two_particle_form",
        Invariants,
        1e-11,
        PerN,
        kk_dagger_two_particle_form,
    ),
    prop(
        "anticommutator_identity",
        Invariants,
        1e-10,
        PerN,
        anticommutator_identity,
    ),
    prop(
        "zero_con_phase_alignment",
        Invariants,
        1e-4,
        PerN,
        zero_con_phase_alignment,
    ),
    prop("class_invariance", Invariants, 0.0, PerN, class_invariance),
    prop("ckw_equations", Ckw, 1e-9, PerN, ckw_equations),
    prop("monogamy", Ckw, 1e-9, PerN, monogamy),
    prop("qubit_closed_forms", Ckw, 1e-10, Once, qubit_closed_forms),
    prop("embedding_isometry", Ckw, 4.0 * f64::EPSILON, PerN, embedding_isometry),
    prop("block_structure", Ckw, 1e-12, PerN, block_structure),
    prop("slocc_compatibility", Ckw, 1e-11, PerN, slocc_compatibility),
    prop("pair_hosting", Ckw, 1e-12, PerN, pair_hosting),
    prop("dual_embedding", Ckw, 1e-11, PerN, dual_embedding),
    prop("hyperdeterminant", Ckw, 1e-12, PerN, hyperdeterminant),
    prop(
        "concurrence_hermitian_agreement",
        Ckw,
        1e-7,
        PerN,
        concurrence_hermitian_agreement,
    ),
    prop("borland_dennis", Rdm, 1e-10, PerN, borland_dennis),
    prop("two_rdm_spectrum", Rdm, 1e-10, PerN, two_rdm_spectrum),
    prop("entropy_upper_bound", Rdm, 1e-9, PerN, entropy_upper_bound),
    prop("zero_con_spectrum", Rdm, 1e-10, PerN, zero_con_spectral),
    prop("biseparable_spectrum", Rdm, 1e-8, PerN, biseparable_spectral),
    prop("w_special_family", Rdm, 1e-9, PerN, w_special_family),
    prop("dual_one_rdm", Rdm, 1e-11, PerN, dual_one_rdm),
    prop("k_rho_k_rho_identity", Rdm, 1e-9, PerN, k_rho_k_rho_identity),
    prop(
        "zero_con_separable_orbitals",
        Rdm,
        1e-8,
        PerN,
        zero_con_separable_orbitals,
    ),
    prop("commutator_closed_form", Rdm, 1e-9, PerN, commutator_closed_form),
    prop("car_relations", Fock, 0.0, Once, car_relations),
    prop("chi_structure", Fock, 1e-12, Once, chi_structure),
    prop("pairing_spin_invariance", Fock, 1e-9, PerN, pairing_spin_invariance),
    prop(
        "transpose_reverses_products",
        Fock,
        0.0,
        PerN,
        transpose_reverses_products,
    ),
    prop("transpose_adjointness", Fock, 1e-12, PerN, transpose_adjointness),
    prop("dual_occupations", Fock, 1e-11, PerN, dual_occupations),
    prop("parity_preservation", Fock, 1e-12, PerN, parity_preservation),
    prop("generator_action", Fock, 1e-10, PerN, generator_action),
    prop("b_transform_purity", Fock, 0.0, PerN, b_transform_purity),
    prop("local_embedding", Fock, 1e-10, PerN, local_embedding),
    prop("k_matrix_from_pairing", Fock, 1e-10, PerN, k_from_pairing),
    prop("theta_duality", Fierz, 1e-12, Once, theta_duality),
    prop("fierz_d3", Fierz, 1e-9, PerN, fierz_d3),
    prop("fierz_d4", Fierz, 1e-9, Fraction(5), fierz_d4),
    prop("fierz_kk_dagger", Fierz, 1e-9, Fraction(10), fierz_kk),
    prop("projector_expansions", Fierz, 1e-10, Fraction(2), projector_expansions),
];

// ---- helpers ----

fn fermi(rng: &mut ChaCha8Rng, state: &mut Value) -> FermiState336 {
    let p = random::normalized_fermi_state(rng);
    *state = fermion_value(&p);
    p
}

fn qubits(rng: &mut ChaCha8Rng, state: &mut Value) -> ThreeQubitState {
    let psi = random::normalized_qubit_state(rng);
    *state = qubits_value(&psi);
    psi
}

fn fock(rng: &mut ChaCha8Rng, d: usize, state: &mut Value) -> Result<FockState> {
    let psi = random::fock_state(rng, d)?;
    *state = fock_value(&psi);
    Ok(psi)
}

fn zero_con_state(rng: &mut ChaCha8Rng, state: &mut Value) -> Result<FermiState336> {
    let (a, b) = (random::complex_gaussian(rng), random::complex_gaussian(rng));
    let p = (FermiState336::slater(0, 1, 2)? * a + FermiState336::slater(3, 4, 5)? * b).normalized()?;
    *state = fermion_value(&p);
    Ok(p)
}

fn slocc_image(rng: &mut ChaCha8Rng, base: FermiState336, cap: f64, state: &mut Value) -> Result<FermiState336> {
    let g = random::slocc(rng, cap)?;
    let p = base.apply_slocc(&g).normalized()?;
    *state = fermion_value(&p);
    Ok(p)
}

fn descending(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Distance of `x` from `[lo, hi]`.
fn outside(x: f64, lo: f64, hi: f64) -> f64 {
    (lo - x).max(x - hi).max(0.0)
}

fn flag(ok: bool) -> f64 {
    if ok {
        0.0
    } else {
        f64::INFINITY
    }
}

fn unitary(rng: &mut ChaCha8Rng) -> Result<SloccTransform> {
    SloccTransform::new(random::complex_matrix(rng, 6, 6).qr().q())
}

// ---- tensor algebra and K ----

fn antisymmetry(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let perms: [([usize; 3], f64); 6] = [
        ([0, 1, 2], 1.0),
        ([1, 2, 0], 1.0),
        ([2, 0, 1], 1.0),
        ([1, 0, 2], -1.0),
        ([0, 2, 1], -1.0),
        ([2, 1, 0], -1.0),
    ];
    let mut worst: f64 = 0.0;
    for t in TRIPLES {
        let base = p.amplitude(t[0], t[1], t[2])?;
        for (s, sign) in perms {
            let v = p.amplitude(t[s[0]], t[s[1]], t[s[2]])?;
            worst = worst.max((v - base * sign).norm());
        }
        worst = worst.max(p.amplitude(t[0], t[0], t[2])?.norm());
    }
    Ok(worst)
}

fn group_action(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let g = random::slocc(rng, TIGHT_CAP)?;
    let h = random::slocc(rng, TIGHT_CAP)?;
    // g·h acts as h after g
    let lhs = p.apply_slocc(&g.compose(&h)?);
    let rhs = p.apply_slocc(&g).apply_slocc(&h);
    Ok(lhs.distance(&rhs) / lhs.norm())
}

fn dual_involution(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    Ok(p.dual().dual().distance(&(p * -1.0)))
}

fn dual_antilinearity(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let z = random::complex_gaussian(rng);
    Ok(p.scale(z).dual().distance(&p.dual().scale(z.conj())) / z.norm().max(1.0))
}

fn unitary_isometry(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let u = unitary(rng)?;
    Ok((p.apply_slocc(&u).norm() - 1.0).abs())
}

fn dual_matches_chi(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let via_chi = chi_dual(&FockState::from_fermi_state(&p)).to_fermi_state()?;
    Ok(via_chi.distance(&p.dual()))
}

fn k_covariance(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let g = random::slocc(rng, DEFAULT_CONDITION_CAP)?;
    let moved = k_matrix(&p.apply_slocc(&g)).0;
    let expect = g.inverse() * k_matrix(&p).0 * g.matrix() * g.det();
    Ok((&moved - expect).norm() / moved.norm())
}

fn quartic_relative_invariance(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let g = random::slocc(rng, DEFAULT_CONDITION_CAP)?;
    let moved = quartic_d(&p.apply_slocc(&g));
    let expect = quartic_d(&p) * g.det() * g.det();
    Ok((moved - expect).norm() / moved.norm().max(expect.norm()))
}

fn ckw_inequality(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = if index.is_multiple_of(2) {
        fermi(rng, state)
    } else {
        let coeffs = [0; 4].map(|_| random::complex_gaussian(rng));
        let p = crate::sampling::canonical_four(coeffs).normalized()?;
        *state = fermion_value(&p);
        p
    };
    let d6 = 6.0 * quartic_d(&p).norm();
    let middle = 3.0 - one_rdm(&p).trace_pow(2);
    let kk = k_matrix(&p).trace_kk_dagger();
    Ok((d6 - middle).max(middle - 1.5).max(d6 - kk).max(kk - 1.5))
}

fn kk_dagger_rdm_identity(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    // odd instances keep the raw Gaussian norm
    let p = if index.is_multiple_of(2) {
        fermi(rng, state)
    } else {
        let p = random::fermi_state(rng);
        *state = fermion_value(&p);
        p
    };
    let rho = one_rdm(&p);
    let t1 = rho.trace();
    let rhs = (t1 * t1 - 3.0 * rho.trace_pow(2)) / 3.0;
    Ok((k_matrix(&p).trace_kk_dagger() - rhs).abs())
}

fn kk_dagger_two_particle_form(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(two_particle_kk_residual(&fermi(rng, state)))
}

fn anticommutator_identity(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(anticommutator_identity_residual(&fermi(rng, state)))
}

fn zero_con_phase_alignment(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = zero_con_state(rng, state)?;
    if concurrence(&p) >= 1e-10 {
        return Err(domain(format!("constructed state has Con = {:e}", concurrence(&p))));
    }
    phase_alignment_residual(&p).ok_or_else(|| domain("phase of Tr K² undefined"))
}

fn class_invariance(rng: &mut ChaCha8Rng, index: usize, ctx: &Ctx, state: &mut Value) -> Result<f64> {
    let base = match index % 4 {
        0 => FermiState336::slater(0, 1, 2)?,
        1 => canonical_biseparable(),
        2 => canonical_w(),
        _ => random::normalized_fermi_state(rng),
    };
    *state = fermion_value(&base);
    let before = classify(&base, ctx.tol)?.label;
    let g = random::slocc(rng, DEFAULT_CONDITION_CAP)?;
    let after = classify(&base.apply_slocc(&g).normalized()?, ctx.tol)?.label;
    Ok(flag(before == after))
}

// ---- three-qubit bridge ----

fn ckw_equations(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(ckw_report(&qubits(rng, state))?.max_residual())
}

fn monogamy(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(-ckw_report(&qubits(rng, state))?.monogamy_slack)
}

fn qubit_closed_forms(_: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let ghz = ThreeQubitState::ghz();
    let w = ThreeQubitState::w();
    *state = qubits_value(&w);
    let mut worst: f64 = (three_tangle(&ghz) - 1.0).abs();
    worst = worst.max((qubit_rdm_det(&ghz, 0) - 0.25).abs());
    worst = worst.max(three_tangle(&w).abs());
    worst = worst.max((concurrence(&embed(&w)) - 4.0 / 3.0).abs());
    for pair in Pair::ALL {
        worst = worst.max(concurrence_pair(&ghz, pair)?.abs());
        worst = worst.max((concurrence_pair(&w, pair)? - 2.0 / 3.0).abs());
    }
    Ok(worst)
}

fn embedding_isometry(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let psi = random::qubit_state(rng);
    *state = qubits_value(&psi);
    Ok((embed(&psi).norm_sq() - psi.norm_sq()).abs() / psi.norm_sq())
}

fn block_structure(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(block_structure_residual(&qubits(rng, state)))
}

fn slocc_compatibility(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let psi = qubits(rng, state);
    let g: Vec<CMatrix> = (0..3)
        .map(|_| random::square_with_condition_cap(rng, 2, TIGHT_CAP))
        .collect::<Result<_>>()?;
    let moved = psi.apply_local([&g[0], &g[1], &g[2]])?;
    Ok(slocc_compatibility_residual(&psi, [&g[0], &g[1], &g[2]])? / moved.norm())
}

fn pair_hosting(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(pair_hosting_residual(&qubits(rng, state)))
}

fn dual_embedding(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(dual_embedding_check(&qubits(rng, state)))
}

fn hyperdeterminant(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(hyperdeterminant_residual(&qubits(rng, state)))
}

fn concurrence_hermitian_agreement(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let psi = qubits(rng, state);
    let mut worst: f64 = 0.0;
    for pair in Pair::ALL {
        worst = worst.max((concurrence_pair(&psi, pair)? - concurrence_pair_hermitian(&psi, pair)?).abs());
    }
    Ok(worst)
}

// ---- reduced density matrices ----

fn borland_dennis(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let bd = one_rdm(&fermi(rng, state)).borland_dennis();
    Ok(bd.max_equality_residual().max(-bd.inequality_slack))
}

fn two_rdm_spectrum(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = if index.is_multiple_of(2) {
        slocc_image(rng, canonical_w(), DEFAULT_CONDITION_CAP, state)?
    } else {
        fermi(rng, state)
    };
    let one = one_rdm(&p).spectrum();
    let two = descending(two_rdm(&p).spectrum());
    let rest = two[6..].iter().map(|x| x.abs()).fold(0.0, f64::max);
    Ok(max_abs_diff(&one, &two[..6]).max(rest))
}

fn entropy_upper_bound(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    let x = k_matrix(&p).trace_kk_dagger();
    let s = spectral_entropy(&one_rdm(&p).spectrum())?;
    Ok(s - EntropyCurve::ZeroCon.eval(x.clamp(0.0, 1.5))?)
}

fn zero_con_spectral(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = zero_con_state(rng, state)?;
    let expect = descending(zero_con_spectrum(quartic_d(&p).norm().min(0.25))?.to_vec());
    Ok(max_abs_diff(&one_rdm(&p).spectrum(), &expect))
}

fn biseparable_spectral(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = slocc_image(rng, canonical_biseparable(), DEFAULT_CONDITION_CAP, state)?;
    let x = k_matrix(&p).trace_kk_dagger().clamp(0.0, 1.0);
    let spectrum = one_rdm(&p).spectrum();
    let curve = EntropyCurve::Biseparable;
    let entropy = (spectral_entropy(&spectrum)? - curve.eval(x)?).abs();
    Ok(max_abs_diff(&spectrum, &curve.spectrum(x)?).max(entropy))
}

/// `(|00⟩|c0⟩ + |11⟩|c1⟩)/√2` with unit `c0, c1`: qubits A and B are
/// maximally mixed, so four one-particle eigenvalues equal 1/2.
fn w_special_family(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let unit = |rng: &mut ChaCha8Rng| loop {
        let v = random::complex_vec(rng, 2);
        let n = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if n > 1e-3 {
            return [v[0] / n, v[1] / n];
        }
    };
    let (c0, c1) = (unit(rng), unit(rng));
    let mut psi = ThreeQubitState::default();
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for k in 0..2 {
        psi.set(0, 0, k, c0[k] * h)?;
        psi.set(1, 1, k, c1[k] * h)?;
    }
    *state = qubits_value(&psi);
    let p = embed(&psi);
    let x = k_matrix(&p).trace_kk_dagger();
    let spectrum = one_rdm(&p).spectrum();
    let curve = EntropyCurve::WSpecial;
    let halves = spectrum[1..5].iter().map(|l| (l - 0.5).abs()).fold(0.0, f64::max);
    let entropy = (spectral_entropy(&spectrum)? - curve.eval(x.clamp(1.0, 1.5))?).abs();
    Ok((x - curve.invert_spectrum(&spectrum))
        .abs()
        .max(outside(x, 1.0, 1.5))
        .max(halves)
        .max(entropy))
}

fn dual_one_rdm(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    dual_one_rdm_check(&fermi(rng, state))
}

fn k_rho_k_rho_identity(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(tr_k_rho_k_rho_identity_residual(&fermi(rng, state)))
}

fn zero_con_separable_orbitals(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = zero_con_state(rng, state)?;
    let (_, commutator) = k_rho_commutator(&p);
    let worst_orbital = natural_orbitals(&p)
        .iter()
        .map(|o| (o.pair_state.wedge_square_norm() / o.pair_state.norm_sq()).max(o.residual))
        .fold(0.0, f64::max);
    Ok(commutator.max(worst_orbital))
}

fn commutator_closed_form(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    Ok(commutator_closed_form_residual(&zero_con_state(rng, state)?))
}

// ---- Fock space ----

fn car_relations(_: &mut ChaCha8Rng, _: usize, _: &Ctx, _: &mut Value) -> Result<f64> {
    (1..=8).map(car_violation).try_fold(0.0, |m, v| Ok(f64::max(m, v?)))
}

fn chi_structure(_: &mut ChaCha8Rng, _: usize, _: &Ctx, _: &mut Value) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for d in 2..=8 {
        let r = chi_properties_check(d)?;
        let sign = if (d * (d - 1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        worst = worst
            .max(flag(r.square_residual == 0.0 && r.expected_square == sign))
            .max(r.antiunitary_residual)
            .max(r.defining_residual)
            .max(r.symmetry_residual);
    }
    Ok(worst)
}

fn mode_count(index: usize, lo: usize, hi: usize) -> usize {
    lo + index % (hi - lo + 1)
}

fn pairing_spin_invariance(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let d = mode_count(index, 2, 5);
    let phi = random::fock_state(rng, d)?;
    let psi = fock(rng, d, state)?;
    let norm = rng.random_range(0.1..=1.0);
    let gen = random::spin_generator(rng, d, norm)?;
    pairing_invariance_residual(&gen, &phi, &psi)
}

fn random_word(rng: &mut ChaCha8Rng, d: usize) -> Vec<Generator> {
    let len = rng.random_range(1..=3);
    (0..len)
        .map(|_| {
            let i = rng.random_range(0..d);
            if rng.random::<bool>() {
                Generator::Create(i)
            } else {
                Generator::Annihilate(i)
            }
        })
        .collect()
}

fn transpose_reverses_products(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, _: &mut Value) -> Result<f64> {
    let d = mode_count(index, 2, 4);
    let x = CliffordOp::word(d, &random_word(rng, d))?;
    let y = CliffordOp::word(d, &random_word(rng, d))?;
    let lhs = transpose(&x.compose(&y)?)?;
    let rhs = transpose(&y)?.compose(&transpose(&x)?)?;
    Ok(lhs.max_diff(&rhs))
}

fn transpose_adjointness(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let d = mode_count(index, 2, 4);
    let mut a = CliffordOp::zero(d)?;
    for _ in 0..4 {
        a = &a + &CliffordOp::word(d, &random_word(rng, d))?.scale(random::complex_gaussian(rng));
    }
    let phi = random::fock_state(rng, d)?;
    let psi = fock(rng, d, state)?;
    let lhs = bilinear_pairing(&phi, &a.apply(&psi)?)?;
    let rhs = bilinear_pairing(&transpose(&a)?.apply(&phi)?, &psi)?;
    Ok((lhs - rhs).norm())
}

fn dual_occupations(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    dual_occupation_residual(&fock(rng, mode_count(index, 3, 6), state)?)
}

fn parity_preservation(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let d = mode_count(index, 2, 5);
    let psi = fock(rng, d, state)?;
    let gen = random::spin_generator(rng, d, 1.0)?;
    parity_leakage(&gen, &psi)
}

fn generator_action(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, _: &mut Value) -> Result<f64> {
    let d = mode_count(index, 2, 4);
    let gen = random::spin_generator(rng, d, 1.0)?;
    generator_action_residual(&gen)
}

fn b_transform_purity(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let d = mode_count(index, 2, 6);
    let slater = FockState::basis(d, rng.random_range(0..1usize << d))?;
    let gen = SpinGenerator::from_b(random::antisymmetric(rng, d, 0.5))?;
    let psi = spin_transform(&gen, &slater)?;
    *state = fock_value(&psi);
    Ok((annihilator_dimension(&psi, 1e-9)? as f64 - d as f64).abs())
}

fn local_embedding(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, _: &mut Value) -> Result<f64> {
    let dims: &[usize] = match index % 3 {
        0 => &[2, 2],
        1 => &[2, 3],
        _ => &[2, 2, 2],
    };
    let amps = random::complex_vec(rng, dims.iter().product());
    let gs: Vec<CMatrix> = dims
        .iter()
        .map(|&n| random::square_with_condition_cap(rng, n, TIGHT_CAP))
        .collect::<Result<_>>()?;
    local_embedding_residual(&amps, dims, &gs)
}

fn k_from_pairing(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let p = fermi(rng, state);
    Ok((k_matrix_from_pairing(&FockState::from_fermi_state(&p))? - k_matrix(&p).0).norm())
}

// ---- Fierz identities ----

fn theta_duality(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, _: &mut Value) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for d in 1..=4 {
        let basis = theta_basis(d)?;
        worst = worst.max(basis.duality_residual());
        let m = random::complex_matrix(rng, 1 << d, 1 << d);
        worst = worst.max(basis.completeness_residual(&m) / m.norm());
    }
    Ok(worst)
}

fn fierz_at(rng: &mut ChaCha8Rng, d: usize, state: &mut Value) -> Result<f64> {
    let psi = fock(rng, d, state)?;
    let a = CliffordOp::from_matrix(d, random::complex_matrix(rng, 1 << d, 1 << d))?;
    let b = CliffordOp::from_matrix(d, random::complex_matrix(rng, 1 << d, 1 << d))?;
    let r = fierz_check(&psi, &a, &b)?;
    Ok(r.first.max(r.second))
}

fn fierz_d3(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    fierz_at(rng, 3, state)
}

fn fierz_d4(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    fierz_at(rng, 4, state)
}

fn fierz_kk(rng: &mut ChaCha8Rng, _: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let (rhs, kk) = fierz_kk_dagger(&fermi(rng, state))?;
    Ok((rhs - kk).abs())
}

fn projector_expansions(rng: &mut ChaCha8Rng, index: usize, _: &Ctx, state: &mut Value) -> Result<f64> {
    let r = projector_expansions_check(&fock(rng, mode_count(index, 2, 4), state)?)?;
    Ok(r.projector.max(r.chi_projector).max(r.trace_identity))
}
