//! Homogeneous cube benchmarks with closed-form counterparts: free swelling
//! under a chemical-potential sweep and a bar under axial load.

use nalgebra::Matrix3;

use crate::analytic;
use crate::element::Hex8Element;
use crate::error::{GelError, Result};
use crate::material::MaterialParams;
use crate::mesh::{self, Axis, NodeSelector};
use crate::solver::{self, ContinuationSchedule, DirichletBc, Model, NodalLoad, SolutionState, SolverSettings};
use crate::voigt;

/// Free-swelling edge length of the benchmark cube.
pub const DEFAULT_EDGE: f64 = 2.0;

/// Roller constraints on the three coordinate planes through the origin.
pub fn symmetry_constraints(nodes: &[nalgebra::Vector3<f64>]) -> Vec<DirichletBc> {
    let mut bcs = Vec::new();
    for axis in [Axis::X, Axis::Y, Axis::Z] {
        for node in NodeSelector::plane(axis, 0.0).select(nodes) {
            bcs.push(DirichletBc {
                node,
                dof: axis,
                value: 0.0,
            });
        }
    }
    bcs.sort_by_key(|bc| (bc.node, bc.dof));
    bcs
}

fn cube(divisions: usize, edge: f64) -> Result<(Vec<nalgebra::Vector3<f64>>, Vec<Hex8Element>)> {
    mesh::generate_cube_mesh(divisions, divisions, divisions, edge)
}

/// Node at (L, L, L).
fn far_corner(nodes: &[nalgebra::Vector3<f64>], edge: f64) -> usize {
    NodeSelector::plane(Axis::X, edge)
        .and(Axis::Y, edge)
        .and(Axis::Z, edge)
        .select(nodes)[0]
}

/// Cube model swept through `mu_grid`; the reference is free swelling at `mu_grid[0]`.
pub fn free_swell_model(nv: f64, chi: f64, mu_grid: &[f64], divisions: usize, edge: f64) -> Result<Model> {
    let mu0 = *mu_grid
        .first()
        .ok_or_else(|| GelError::ParameterDomain("empty chemical-potential sweep".into()))?;
    if let Some(m) = mu_grid.iter().find(|m| !(**m <= 0.0)) {
        return Err(GelError::ParameterDomain(format!("mu/kT values must be <= 0, got {m}")));
    }
    let params = MaterialParams::new(nv, chi, mu0)?;
    let (nodes, elements) = cube(divisions, edge)?;
    Ok(Model {
        dirichlet: symmetry_constraints(&nodes),
        nodes,
        elements,
        loads: Vec::new(),
        params,
        schedule: ContinuationSchedule {
            mu_path: mu_grid.to_vec(),
            load_factor_path: vec![0.0; mu_grid.len()],
        },
        settings: SolverSettings::default(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeSwellRow {
    pub mu_bar: f64,
    /// Edge displacement measured from the reference cube.
    pub delta: f64,
    pub lambda_fe: f64,
    pub lambda_analytic: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug)]
pub struct FreeSwellReport {
    pub model: Model,
    pub edge: f64,
    pub states: Vec<SolutionState>,
    pub rows: Vec<FreeSwellRow>,
}

impl FreeSwellReport {
    pub fn max_rel_error(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_error).fold(0.0, f64::max)
    }
}

pub fn run_free_swell(nv: f64, chi: f64, mu_grid: &[f64], divisions: usize, edge: f64) -> Result<FreeSwellReport> {
    let model = free_swell_model(nv, chi, mu_grid, divisions, edge)?;
    let states = solver::run_continuation(&model)?;
    let curve = analytic::free_swelling_curve(nv, chi, mu_grid)?;
    let corner = far_corner(&model.nodes, edge);
    let rows = states
        .iter()
        .zip(&curve.lambda_grid)
        .map(|(s, &exact)| {
            let delta = s.displacement(corner)[0];
            let lambda_fe = analytic::stretch_from_displacement(delta, edge, model.params.lambda0);
            FreeSwellRow {
                mu_bar: s.mu_bar,
                delta,
                lambda_fe,
                lambda_analytic: exact,
                rel_error: ((lambda_fe - exact) / exact).abs(),
            }
        })
        .collect();
    Ok(FreeSwellReport {
        model,
        edge,
        states,
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AxialControl {
    /// Prescribed displacement of the loaded face.
    Displacement,
    /// Uniform nominal traction on the loaded face, lumped to its nodes.
    Force,
}

/// Single-cube bar at constant μ/kT, loaded along x to reach `lambda1`
/// (axial stretch from the dry state) over `n_steps` schedule states.
pub fn uniaxial_model(
    nv: f64,
    chi: f64,
    mu_bar: f64,
    lambda1: f64,
    control: AxialControl,
    edge: f64,
    n_steps: usize,
) -> Result<Model> {
    let params = MaterialParams::new(nv, chi, mu_bar)?;
    let (nodes, elements) = cube(1, edge)?;
    let mut dirichlet = symmetry_constraints(&nodes);
    let mut loads = Vec::new();
    let face = NodeSelector::plane(Axis::X, edge);
    match control {
        AxialControl::Displacement => {
            let delta = (lambda1 / params.lambda0 - 1.0) * edge;
            for node in face.select(&nodes) {
                dirichlet.push(DirichletBc {
                    node,
                    dof: Axis::X,
                    value: delta,
                });
            }
            dirichlet.sort_by_key(|bc| (bc.node, bc.dof));
        }
        AxialControl::Force => {
            let l2 = analytic::uniaxial_transverse_stretch(nv, chi, mu_bar, lambda1)?;
            // Nominal traction per unit free-swelling area.
            let traction = analytic::uniaxial_axial_stress(nv, chi, mu_bar, lambda1, l2)?
                / (params.lambda0 * params.lambda0);
            let (weights, _) = mesh::face_area_weights(&nodes, &elements, &face);
            for (node, w) in weights {
                loads.push(NodalLoad {
                    node,
                    dof: Axis::X,
                    force: traction * w,
                });
            }
        }
    }
    Ok(Model {
        nodes,
        elements,
        dirichlet,
        loads,
        params,
        schedule: ContinuationSchedule::load_ramp(mu_bar, n_steps)?,
        settings: SolverSettings::default(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniaxialRow {
    pub lambda1_target: f64,
    pub lambda1_fe: f64,
    pub lambda2_fe: f64,
    pub lambda2_analytic: f64,
    pub rel_error: f64,
    /// Largest transverse nominal stress over all Gauss points, per unit dry area.
    pub transverse_stress: f64,
    /// Axial nominal stress per unit dry area (mean over Gauss points).
    pub axial_stress: f64,
}

#[derive(Clone, Debug)]
pub struct UniaxialReport {
    pub models: Vec<Model>,
    pub states: Vec<SolutionState>,
    pub rows: Vec<UniaxialRow>,
}

impl UniaxialReport {
    pub fn max_rel_error(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_error).fold(0.0, f64::max)
    }

    pub fn max_transverse_stress(&self) -> f64 {
        self.rows.iter().map(|r| r.transverse_stress).fold(0.0, f64::max)
    }
}

/// Load steps used to reach each point of a uniaxial sweep.
pub const UNIAXIAL_LOAD_STEPS: usize = 5;

pub fn run_uniaxial(
    nv: f64,
    chi: f64,
    mu_bar: f64,
    lambda1_grid: &[f64],
    control: AxialControl,
) -> Result<UniaxialReport> {
    let edge = DEFAULT_EDGE;
    let mut report = UniaxialReport {
        models: Vec::new(),
        states: Vec::new(),
        rows: Vec::new(),
    };
    for &lambda1 in lambda1_grid {
        let model = uniaxial_model(nv, chi, mu_bar, lambda1, control, edge, UNIAXIAL_LOAD_STEPS)?;
        let state = solver::run_continuation(&model)?
            .pop()
            .expect("schedule has at least one state");
        let l0 = model.params.lambda0;
        let tip = state.displacement(far_corner(&model.nodes, edge));
        let lambda1_fe = analytic::stretch_from_displacement(tip[0], edge, l0);
        let lambda2_fe = analytic::stretch_from_displacement(tip[1], edge, l0);
        let lambda2_analytic = analytic::uniaxial_transverse_stretch(nv, chi, mu_bar, lambda1_fe)?;
        let mut transverse: f64 = 0.0;
        let mut axial = 0.0;
        let gps = &state.gp_fields[0];
        for gp in gps {
            // Dry-frame nominal stress P = λ₀² F′S′.
            let p: Matrix3<f64> = l0 * l0 * gp.f * voigt::voigt_to_stress(&gp.s);
            transverse = transverse.max(p[(1, 1)].abs()).max(p[(2, 2)].abs());
            axial += p[(0, 0)] / gps.len() as f64;
        }
        report.rows.push(UniaxialRow {
            lambda1_target: lambda1,
            lambda1_fe,
            lambda2_fe,
            lambda2_analytic,
            rel_error: ((lambda2_fe - lambda2_analytic) / lambda2_analytic).abs(),
            transverse_stress: transverse,
            axial_stress: axial,
        });
        report.models.push(model);
        report.states.push(state);
    }
    Ok(report)
}
