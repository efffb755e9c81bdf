//! Free swelling of a 4×4×4 cube: every Gauss point should sit in the same
//! homogeneous state as the closed-form solution.

use gelfem::benchmarks::{run_free_swell, DEFAULT_EDGE};
use gelfem::{analytic, material};

fn main() -> gelfem::Result<()> {
    let (nv, chi) = (1e-3, 0.1);
    let mu_grid = analytic::linspace(-0.05, 0.0, 10);
    let start = std::time::Instant::now();
    let report = run_free_swell(nv, chi, &mu_grid, 4, DEFAULT_EDGE)?;
    let l0 = report.model.params.lambda0;

    for state in &report.states {
        let exact = material::solve_free_swelling_stretch(nv, chi, state.mu_bar)?;
        let mut worst: f64 = 0.0;
        for gp in state.gp_fields.iter().flatten() {
            let stretch = gp.f * l0;
            for i in 0..3 {
                for j in 0..3 {
                    let target = if i == j { exact } else { 0.0 };
                    worst = worst.max((stretch[(i, j)] - target).abs() / exact);
                }
            }
        }
        println!(
            "mu/kT = {:>9.6}  lambda = {:.12}  worst Gauss-point deviation {:.2e}  ({} iterations, {} substeps)",
            state.mu_bar, exact, worst, state.iterations, state.substeps
        );
    }
    println!("{} dofs solved in {:.2?}", report.model.n_dofs(), start.elapsed());
    Ok(())
}
