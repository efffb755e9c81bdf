//! Gel bar in pure solvent under axial load, by prescribed displacement and
//! by prescribed traction.

use gelfem::analytic::linspace;
use gelfem::benchmarks::{run_uniaxial, AxialControl};
use gelfem::material::solve_free_swelling_stretch;

fn main() -> gelfem::Result<()> {
    let (nv, chi, mu) = (1e-3, 0.1, 0.0);
    let l0 = solve_free_swelling_stretch(nv, chi, mu)?;
    let grid = linspace(0.9 * l0, 1.25 * l0, 8);
    for control in [AxialControl::Displacement, AxialControl::Force] {
        let report = run_uniaxial(nv, chi, mu, &grid, control)?;
        println!("{control:?} control");
        println!("{:>14} {:>14} {:>14} {:>10} {:>12}", "lambda1", "lambda2 (FE)", "lambda2 exact", "rel err", "P axial");
        for r in &report.rows {
            println!(
                "{:>14.10} {:>14.10} {:>14.10} {:>10.2e} {:>12.4e}",
                r.lambda1_fe, r.lambda2_fe, r.lambda2_analytic, r.rel_error, r.axial_stress
            );
        }
        println!("largest transverse stress {:.2e}\n", report.max_transverse_stress());
    }
    Ok(())
}
