//! Runs the finite-difference self-check suite. Set GELFEM_SEED to change
//! the random states.

use gelfem::verify::{run_verification, seed_from_env};

fn main() -> gelfem::Result<()> {
    let report = run_verification(seed_from_env()?, 20)?;
    for c in &report.checks {
        println!("{:<5} {:<50} {:.2e} <= {:.0e}", if c.passed() { "ok" } else { "FAIL" }, c.name, c.max_error, c.tolerance);
    }
    Ok(())
}
