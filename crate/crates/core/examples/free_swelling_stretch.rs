//! Stretch of a stress-free gel in equilibrium with solvent at several
//! chemical potentials.

use gelfem::material::{free_swelling_residual, solve_free_swelling_stretch};

fn main() -> gelfem::Result<()> {
    let (nv, chi) = (1e-3, 0.1);
    println!("{:>8} {:>20} {:>12}", "mu/kT", "lambda0", "residual");
    for mu in [-0.3, -0.1, -0.05, -0.02, -0.01, -0.005, -0.001, 0.0] {
        let l0 = solve_free_swelling_stretch(nv, chi, mu)?;
        println!("{mu:>8} {l0:>20.15} {:>12.2e}", free_swelling_residual(nv, chi, mu, l0));
    }

    // Solvent above saturation has no swollen equilibrium.
    match solve_free_swelling_stretch(nv, chi, 0.01) {
        Ok(l) => println!("unexpected root {l}"),
        Err(e) => println!("mu/kT = 0.01: {e}"),
    }
    Ok(())
}
