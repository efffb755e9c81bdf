//! Legacy ASCII VTK unstructured-grid output.

use std::io::Write;

use nalgebra::Vector6;

use super::format_float;
use crate::element::GaussPointResult;
use crate::error::Result;
use crate::solver::{Model, SolutionState};

const VTK_HEXAHEDRON: u8 = 12;

/// Volume-weighted mean of S (Voigt) and W over the Gauss points of one element.
pub fn element_average(gauss: &[GaussPointResult]) -> (Vector6<f64>, f64) {
    let vol: f64 = gauss.iter().map(|g| g.dvol).sum();
    let s = gauss.iter().map(|g| g.s * g.dvol).sum::<Vector6<f64>>() / vol;
    let w = gauss.iter().map(|g| g.w * g.dvol).sum::<f64>() / vol;
    (s, w)
}

/// Writes the deformed mesh with nodal displacements and element-averaged
/// stress and energy density.
pub fn write_vtk<W: Write>(out: &mut W, model: &Model, state: &SolutionState) -> Result<()> {
    let n = model.nodes.len();
    let ne = model.elements.len();
    writeln!(out, "# vtk DataFile Version 3.0")?;
    writeln!(
        out,
        "gelfem mu_bar={} load_factor={}",
        format_float(state.mu_bar),
        format_float(state.load_factor)
    )?;
    writeln!(out, "ASCII")?;
    writeln!(out, "DATASET UNSTRUCTURED_GRID")?;

    writeln!(out, "POINTS {n} double")?;
    for (i, x) in model.nodes.iter().enumerate() {
        let y = x + state.displacement(i);
        writeln!(out, "{} {} {}", format_float(y[0]), format_float(y[1]), format_float(y[2]))?;
    }

    writeln!(out, "CELLS {ne} {}", 9 * ne)?;
    for el in &model.elements {
        let ids: Vec<String> = el.node_ids.iter().map(ToString::to_string).collect();
        writeln!(out, "8 {}", ids.join(" "))?;
    }
    writeln!(out, "CELL_TYPES {ne}")?;
    for _ in 0..ne {
        writeln!(out, "{VTK_HEXAHEDRON}")?;
    }

    writeln!(out, "POINT_DATA {n}")?;
    writeln!(out, "VECTORS displacement double")?;
    for i in 0..n {
        let u = state.displacement(i);
        writeln!(out, "{} {} {}", format_float(u[0]), format_float(u[1]), format_float(u[2]))?;
    }

    let averages: Vec<(Vector6<f64>, f64)> = state.gp_fields.iter().map(|g| element_average(g)).collect();
    writeln!(out, "CELL_DATA {ne}")?;
    writeln!(out, "FIELD FieldData 2")?;
    writeln!(out, "S 6 {ne} double")?;
    for (s, _) in &averages {
        let row: Vec<String> = s.iter().map(|&v| format_float(v)).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    writeln!(out, "W 1 {ne} double")?;
    for (_, w) in &averages {
        writeln!(out, "{}", format_float(*w))?;
    }
    Ok(())
}
