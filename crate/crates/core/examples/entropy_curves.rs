// One-particle spectra against the analytic entropy curves.

use fermion_ckw::invariants::k_matrix;
use fermion_ckw::random::{self, stream_rng};
use fermion_ckw::rdm::{natural_orbitals, one_rdm, plucker_separable, von_neumann_entropy, EntropyCurve};
use fermion_ckw::sampling::canonical_biseparable;
use fermion_ckw::tensor::FermiState336;
use num_complex::Complex64;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = stream_rng(5, 0);

    // two-term states sit on the upper curve and have separable natural orbitals
    let p = (FermiState336::slater(0, 1, 2)? * Complex64::new(0.8, 0.1) + FermiState336::slater(3, 4, 5)? * 0.4)
        .normalized()?;
    let x = k_matrix(&p).trace_kk_dagger();
    let s = von_neumann_entropy(&one_rdm(&p))?;
    println!(
        "zero-concurrence: x = {x:.6}, S = {s:.6}, curve = {:.6}",
        EntropyCurve::ZeroCon.eval(x)?
    );
    for orbital in natural_orbitals(&p) {
        assert!(plucker_separable(&orbital.pair_state, 1e-8));
    }

    let g = random::slocc(&mut rng, 1e3)?;
    let q = canonical_biseparable().apply_slocc(&g).normalized()?;
    let x = k_matrix(&q).trace_kk_dagger();
    let s = von_neumann_entropy(&one_rdm(&q))?;
    println!(
        "biseparable:      x = {x:.6}, S = {s:.6}, curve = {:.6}",
        EntropyCurve::Biseparable.eval(x)?
    );

    let r = random::normalized_fermi_state(&mut rng);
    let rho = one_rdm(&r);
    let bd = rho.borland_dennis();
    println!("random spectrum {:.4?}", rho.spectrum());
    println!(
        "Borland-Dennis worst equality {:.1e}, inequality slack {:.4}",
        bd.max_equality_residual(),
        bd.inequality_slack
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("entropy_curves failed");
}
