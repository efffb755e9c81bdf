//! Single-element free-swelling sweep compared with the closed-form stretch.

use gelfem::analytic::linspace;
use gelfem::benchmarks::{run_free_swell, DEFAULT_EDGE};

fn main() -> gelfem::Result<()> {
    let report = run_free_swell(1e-3, 0.1, &linspace(-0.05, 0.0, 10), 1, DEFAULT_EDGE)?;
    println!("{:>10} {:>18} {:>18} {:>10}", "mu/kT", "lambda (FE)", "lambda (exact)", "rel err");
    for r in &report.rows {
        println!("{:>10.6} {:>18.13} {:>18.13} {:>10.2e}", r.mu_bar, r.lambda_fe, r.lambda_analytic, r.rel_error);
    }
    let last = report.states.last().expect("sweep is non-empty");
    let history: Vec<String> = last.residual_history.iter().map(|r| format!("{r:.3e}")).collect();
    println!("last step residuals: {}", history.join(", "));
    Ok(())
}
