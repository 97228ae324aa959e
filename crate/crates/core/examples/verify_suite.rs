// A short seeded run of the property suites.

use fermion_ckw::verify::{run, Suite, VerifyOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let report = run(&VerifyOptions::new(Suite::All, 10, 7))?;
    for p in &report.properties {
        println!(
            "{:<34} {:>4}/{:<4} worst {:.1e}",
            p.name, p.passed, p.instances, p.worst_residual
        );
    }
    println!("{} passed, {} failed", report.passed, report.failed);
    assert!(report.ok());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("verify_suite failed");
}
