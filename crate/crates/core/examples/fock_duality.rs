// Fock space over a handful of modes: the invariant pairing, the dual
// state and a spin transform.

use fermion_ckw::fock::{
    bilinear_pairing, chi_dual, dual_occupation_residual, occupation_matrix, spin_transform, SpinGenerator,
};
use fermion_ckw::random::{self, stream_rng};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = stream_rng(9, 0);
    let d = 4;
    let psi = random::fock_state(&mut rng, d)?;
    let phi = random::fock_state(&mut rng, d)?;

    let occ = occupation_matrix(&psi);
    let dual_occ = occupation_matrix(&chi_dual(&psi));
    println!("occupations {:.4?}", (0..d).map(|i| occ[(i, i)].re).collect::<Vec<_>>());
    println!(
        "dual        {:.4?}",
        (0..d).map(|i| dual_occ[(i, i)].re).collect::<Vec<_>>()
    );
    println!("particle-hole residual {:.1e}", dual_occupation_residual(&psi)?);

    let gen = random::spin_generator(&mut rng, d, 0.7)?;
    let before = bilinear_pairing(&phi, &psi)?;
    let after = bilinear_pairing(&spin_transform(&gen, &phi)?, &spin_transform(&gen, &psi)?)?;
    println!("pairing before {before:.6}, after {after:.6}");
    assert!((before - after).norm() < 1e-9);

    let b = SpinGenerator::from_b(random::antisymmetric(&mut rng, d, 0.5))?;
    let pure = spin_transform(&b, &fermion_ckw::fock::FockState::vacuum(d)?)?;
    println!("B-transform of the vacuum has norm {:.6}", pure.norm());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("fock_duality failed");
}
