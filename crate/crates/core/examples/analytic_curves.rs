//! Closed-form free-swelling and uniaxial curves as CSV on stdout.

use gelfem::analytic::{free_swelling_curve, linspace, uniaxial_curve, DEFAULT_CURVE_POINTS};
use gelfem::io;

fn main() -> gelfem::Result<()> {
    let (nv, chi) = (1e-3, 0.1);
    let out = std::io::stdout();
    io::csv::write_free_swelling_curve(out.lock(), &free_swelling_curve(nv, chi, &linspace(-0.05, 0.0, DEFAULT_CURVE_POINTS))?)?;
    println!();
    io::csv::write_uniaxial_curve(out.lock(), &uniaxial_curve(nv, chi, 0.0, &linspace(3.0, 4.5, DEFAULT_CURVE_POINTS))?)?;
    Ok(())
}
