//! CSV tables: convergence logs, analytic curves, FE-vs-analytic comparisons
//! and per-node / per-element fields. Every table starts with a header row.

use std::io::Write;

use super::format_float;
use super::vtk::element_average;
use crate::analytic::{FreeSwellingCurve, UniaxialCurve};
use crate::benchmarks::{FreeSwellRow, UniaxialRow};
use crate::error::Result;
use crate::solver::{Model, SolutionState};

fn table<W: Write, const N: usize>(
    out: W,
    header: [&str; N],
    rows: impl IntoIterator<Item = [String; N]>,
) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header).map_err(std::io::Error::from)?;
    for row in rows {
        w.write_record(&row).map_err(std::io::Error::from)?;
    }
    w.flush()?;
    Ok(())
}

fn f(x: f64) -> String {
    format_float(x)
}

/// One row per Newton iteration of every state.
pub fn write_convergence_log<W: Write>(out: W, states: &[SolutionState]) -> Result<()> {
    let rows = states.iter().enumerate().flat_map(|(step, s)| {
        s.residual_history.iter().enumerate().map(move |(it, &r)| {
            [
                step.to_string(),
                f(s.mu_bar),
                f(s.load_factor),
                s.substeps.to_string(),
                it.to_string(),
                f(r),
            ]
        })
    });
    table(out, ["step", "mu_bar", "load_factor", "substeps", "iteration", "residual"], rows)
}

pub fn write_free_swelling_curve<W: Write>(out: W, curve: &FreeSwellingCurve) -> Result<()> {
    let rows = curve
        .mu_bar_grid
        .iter()
        .zip(&curve.lambda_grid)
        .map(|(&m, &l)| [f(m), f(l)]);
    table(out, ["mu_bar", "lambda"], rows)
}

pub fn write_uniaxial_curve<W: Write>(out: W, curve: &UniaxialCurve) -> Result<()> {
    let rows = (0..curve.lambda1_grid.len())
        .map(|i| [f(curve.lambda1_grid[i]), f(curve.lambda2_grid[i]), f(curve.stress_grid[i])]);
    table(out, ["lambda1", "lambda2", "stress"], rows)
}

pub fn write_free_swell_table<W: Write>(out: W, rows: &[FreeSwellRow]) -> Result<()> {
    let rows = rows
        .iter()
        .map(|r| [f(r.mu_bar), f(r.delta), f(r.lambda_fe), f(r.lambda_analytic), f(r.rel_error)]);
    table(out, ["mu_bar", "delta", "lambda_fe", "lambda_analytic", "rel_error"], rows)
}

pub fn write_uniaxial_table<W: Write>(out: W, rows: &[UniaxialRow]) -> Result<()> {
    let rows = rows.iter().map(|r| {
        [
            f(r.lambda1_target),
            f(r.lambda1_fe),
            f(r.lambda2_fe),
            f(r.lambda2_analytic),
            f(r.rel_error),
            f(r.transverse_stress),
            f(r.axial_stress),
        ]
    });
    table(
        out,
        [
            "lambda1_target",
            "lambda1_fe",
            "lambda2_fe",
            "lambda2_analytic",
            "rel_error",
            "transverse_stress",
            "axial_stress",
        ],
        rows,
    )
}

/// Reference coordinates and displacement of every node.
pub fn write_nodal_fields<W: Write>(out: W, model: &Model, state: &SolutionState) -> Result<()> {
    let rows = model.nodes.iter().enumerate().map(|(i, x)| {
        let u = state.displacement(i);
        [i.to_string(), f(x[0]), f(x[1]), f(x[2]), f(u[0]), f(u[1]), f(u[2])]
    });
    table(out, ["node", "x", "y", "z", "ux", "uy", "uz"], rows)
}

/// Element-averaged S (Voigt) and W.
pub fn write_element_fields<W: Write>(out: W, state: &SolutionState) -> Result<()> {
    let rows = state.gp_fields.iter().enumerate().map(|(e, g)| {
        let (s, w) = element_average(g);
        [e.to_string(), f(s[0]), f(s[1]), f(s[2]), f(s[3]), f(s[4]), f(s[5]), f(w)]
    });
    table(out, ["element", "S11", "S22", "S33", "S23", "S13", "S12", "W"], rows)
}
