// Three qubits inside three fermions: the embedding, the three-tangle and
// the pairwise concurrences behind `Con = ΣC²`.

use fermion_ckw::invariants::concurrence;
use fermion_ckw::qubit::{ckw_report, embed, three_tangle, ThreeQubitState};
use fermion_ckw::random::{normalized_qubit_state, stream_rng};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let random = normalized_qubit_state(&mut stream_rng(3, 0));
    for (name, psi) in [
        ("GHZ", ThreeQubitState::ghz()),
        ("W", ThreeQubitState::w()),
        ("random", random),
    ] {
        let report = ckw_report(&psi)?;
        let con = concurrence(&embed(&psi));
        let c2: f64 = report.concurrence_sq.iter().sum();
        println!(
            "{name:<7} tau = {:.6}  C^2 = {:.6?}  Con = {con:.6}  worst residual = {:.1e}",
            three_tangle(&psi),
            report.concurrence_sq,
            report.max_residual()
        );
        assert!((con - c2).abs() < 1e-9);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("qubit_bridge failed");
}
