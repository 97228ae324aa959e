// Ranks of K, the quartic invariant and the concurrence for the four
// orbit representatives and a random state.

use fermion_ckw::invariants::{classify, concurrence, k_matrix, quartic_d, DEFAULT_RANK_TOL};
use fermion_ckw::random::{normalized_fermi_state, stream_rng};
use fermion_ckw::sampling::{canonical_biseparable, canonical_ghz, canonical_w};
use fermion_ckw::tensor::FermiState336;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let states = [
        ("slater e123", FermiState336::slater(0, 1, 2)?),
        ("e123 + e156", canonical_biseparable().normalized()?),
        ("W", canonical_w().normalized()?),
        ("e123 + e456", canonical_ghz().normalized()?),
        ("random", normalized_fermi_state(&mut stream_rng(1, 0))),
    ];
    println!(
        "{:<12} {:>10} {:>6} {:>12} {:>10}",
        "state", "class", "rank", "|D|", "Con"
    );
    for (name, p) in &states {
        let c = classify(p, DEFAULT_RANK_TOL)?;
        println!(
            "{:<12} {:>10} {:>6} {:>12.6} {:>10.6}",
            name,
            c.label,
            c.rank,
            quartic_d(p).norm(),
            concurrence(p)
        );
    }

    let ghz = k_matrix(&states[3].1);
    assert!((ghz.trace_kk_dagger() - 1.5).abs() < 1e-12);
    assert_eq!(classify(&states[2].1, DEFAULT_RANK_TOL)?.rank, 3);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("classify_states failed");
}
