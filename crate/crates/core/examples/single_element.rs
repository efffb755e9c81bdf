//! One hex element: internal force and stiffness at the free-swelling state
//! and under a homogeneous stretch.

use gelfem::element::{self, Hex8Element, NodalMatrix, DEFAULT_GAUSS_RULE};
use gelfem::material::MaterialParams;
use gelfem::mesh::generate_cube_mesh;

fn main() -> gelfem::Result<()> {
    let params = MaterialParams::new(1e-3, 0.1, -0.05)?;
    let (nodes, elements) = generate_cube_mesh(1, 1, 1, 2.0)?;
    let el: &Hex8Element = &elements[0];
    let coords = el.gather(&nodes);

    let rest = element::evaluate(&coords, &NodalMatrix::zeros(), &params, DEFAULT_GAUSS_RULE, true)?;
    println!("at rest: |f_int| = {:.2e}", rest.f_int.norm());
    let eig = rest.stiffness.symmetric_eigenvalues();
    let scale = eig.amax();
    let zero = eig.iter().filter(|v| v.abs() < 1e-10 * scale).count();
    let positive = eig.iter().filter(|v| **v >= 1e-10 * scale).count();
    println!("stiffness eigenvalues: {zero} rigid-body (near zero), {positive} positive");

    // 5% stretch along x with the solvent unchanged.
    let u = NodalMatrix::from_fn(|a, d| if d == 0 { 0.05 * coords[(a, 0)] } else { 0.0 });
    let loaded = element::evaluate(&coords, &u, &params, DEFAULT_GAUSS_RULE, true)?;
    println!("stretched: energy = {:.6e}", loaded.energy);
    for a in 0..8 {
        let f = loaded.f_int.fixed_rows::<3>(3 * a);
        println!(
            "  node {a} at ({}, {}, {}): f_int = ({:+.4e}, {:+.4e}, {:+.4e})",
            coords[(a, 0)], coords[(a, 1)], coords[(a, 2)], f[0], f[1], f[2]
        );
    }
    let asym = (loaded.stiffness - loaded.stiffness.transpose()).norm() / loaded.stiffness.norm();
    println!("relative stiffness asymmetry {asym:.2e}");
    Ok(())
}
