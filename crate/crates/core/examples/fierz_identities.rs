// The operator basis of products of gammas and the two Fierz identities.

use fermion_ckw::fock::{fierz_check, fierz_kk_dagger, theta_basis, CliffordOp};
use fermion_ckw::random::{self, stream_rng};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = stream_rng(13, 0);
    let d = 3;
    let basis = theta_basis(d)?;
    println!(
        "{} basis operators on {d} modes, duality residual {:.1e}",
        basis.len(),
        basis.duality_residual()
    );

    let psi = random::fock_state(&mut rng, d)?;
    let a = CliffordOp::from_matrix(d, random::complex_matrix(&mut rng, 8, 8))?;
    let b = CliffordOp::from_matrix(d, random::complex_matrix(&mut rng, 8, 8))?;
    let r = fierz_check(&psi, &a, &b)?;
    println!("first identity {:.1e}, second identity {:.1e}", r.first, r.second);

    let p = random::normalized_fermi_state(&mut rng);
    let (sum, trkk) = fierz_kk_dagger(&p)?;
    println!("six modes: basis sum {sum:.12}, Tr KK^dagger {trkk:.12}");
    assert!((sum - trkk).abs() < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("fierz_identities failed");
}
