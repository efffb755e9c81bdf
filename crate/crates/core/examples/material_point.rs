//! Stress, tangent and nominal stress at a single material point.

use gelfem::material::{self, DeformationState, MaterialParams};
use gelfem::voigt;
use nalgebra::Matrix3;

fn main() -> gelfem::Result<()> {
    let params = MaterialParams::new(1e-3, 0.1, -0.02)?;
    println!("reference stretch lambda0 = {:.12}", params.lambda0);

    let at_rest = material::stress_and_tangent(&params, &DeformationState::identity())?;
    println!("free-swelling state: |S| = {:.2e}, W = {:.12e}", at_rest.s.norm(), at_rest.w);

    // 10% axial stretch with a little shear, at a slightly wetter solvent.
    let params = params.with_mu(-0.015);
    let fp = Matrix3::new(1.1, 0.05, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.98);
    let state = DeformationState::from_deformation_gradient(fp)?;
    let st = material::stress_and_tangent(&params, &state)?;
    let row = |v: &[f64]| v.iter().map(|x| format!("{x:+.6e}")).collect::<Vec<_>>().join(" ");
    println!("S (Voigt 11,22,33,23,13,12) = {}", row(st.s.as_slice()));
    println!("D diagonal = {}", row(st.d.diagonal().as_slice()));
    println!("D asymmetry = {:.2e}", (st.d - st.d.transpose()).norm());

    let p = material::nominal_stress(&params, &state)?;
    let fs = state.fp * voigt::voigt_to_stress(&st.s);
    println!("|P - F S| / |P| = {:.2e}", (p - fs).norm() / p.norm());

    // Compressing below the dry-network volume is rejected.
    let crushed = DeformationState::from_deformation_gradient(Matrix3::identity() * (0.99 / params.lambda0))?;
    if let Err(e) = material::energy(&params, &crushed) {
        println!("crushed state: {e}");
    }
    Ok(())
}
