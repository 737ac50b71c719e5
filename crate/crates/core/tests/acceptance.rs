//! Runs every acceptance criterion and prints one line per criterion.

use latticeforge_core::reproduce::{claim_ids, run, Options};

fn main() {
    let ids = claim_ids();
    assert_eq!(ids.len(), 12);
    let report = run(
        &Options {
            parallel: true,
            corrupt_splitting: false,
        },
        &[],
    );
    for c in &report.claims {
        let tag = if c.passed { "PASS" } else { "FAIL" };
        println!(
            "[{tag}] {:<4} {:>8.2}s  {}  ({})",
            c.id, c.seconds, c.claim, c.detail
        );
    }
    // the negative control must flip the splitting claim
    let control = run(
        &Options {
            parallel: true,
            corrupt_splitting: true,
        },
        &["C11"],
    );
    let control_ok = control.claims.len() == 1 && !control.claims[0].passed;
    println!(
        "[{}] control: corrupted splitting identity is rejected",
        if control_ok { "PASS" } else { "FAIL" }
    );
    let passed = report.passed && control_ok;
    println!(
        "{} of {} criteria pass",
        report.claims.iter().filter(|c| c.passed).count(),
        report.claims.len()
    );
    if !passed {
        std::process::exit(1);
    }
}
