//! Self-check suite behind `gelfem verify`: closed-form residuals and
//! finite-difference checks of stress, tangent, B-matrix, internal force and
//! element stiffness at random admissible states.

use nalgebra::{Matrix3, Vector6};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic;
use crate::element::{self, NodalMatrix, DEFAULT_GAUSS_RULE, NODE_PARENT_COORDS};
use crate::error::{GelError, Result};
use crate::material::{self, DeformationState, MaterialParams};
use crate::voigt;

/// Environment variable holding the seed of the random-state generator.
pub const SEED_ENV: &str = "GELFEM_SEED";
pub const DEFAULT_SEED: u64 = 20_240_101;
pub const DEFAULT_SAMPLES: usize = 100;

/// Seed from `GELFEM_SEED`, or [`DEFAULT_SEED`] when unset.
pub fn seed_from_env() -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| GelError::Parse(format!("{SEED_ENV} must be an unsigned integer, got '{s}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.max_error <= self.tolerance
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

/// Random material constants and a random admissible deformation measured
/// from their free-swelling state, with total swelling ratio above 1.05.
pub fn random_material_state(rng: &mut impl Rng) -> (MaterialParams, DeformationState) {
    loop {
        let nv = 10f64.powf(rng.random_range(-4.0..-2.0));
        let chi = rng.random_range(0.0..0.6);
        let mu0 = rng.random_range(-0.1..0.0);
        let Ok(params) = MaterialParams::new(nv, chi, mu0) else {
            continue;
        };
        let params = params.with_mu((mu0 + rng.random_range(-0.02..0.02)).min(0.0));
        let fp = Matrix3::identity() + Matrix3::from_fn(|_, _| rng.random_range(-0.25..0.25));
        if params.lambda0.powi(3) * fp.determinant() <= 1.05 {
            continue;
        }
        if let Ok(state) = DeformationState::from_deformation_gradient(fp) {
            return (params, state);
        }
    }
}

/// Random well-shaped hex (perturbed cube of edge 2) and nodal displacements
/// of a homogeneous admissible stretch plus a small perturbation.
pub fn random_element_state(rng: &mut impl Rng) -> (MaterialParams, NodalMatrix, NodalMatrix) {
    loop {
        let (params, state) = random_material_state(rng);
        let coords = NodalMatrix::from_fn(|a, d| {
            NODE_PARENT_COORDS[a][d] + 1.0 + rng.random_range(-0.15..0.15)
        });
        let mut u = NodalMatrix::zeros();
        for a in 0..8 {
            let x = coords.row(a).transpose();
            let du = (state.fp - Matrix3::identity()) * x;
            for d in 0..3 {
                u[(a, d)] = du[d] + rng.random_range(-0.03..0.03);
            }
        }
        if element::evaluate(&coords, &u, &params, DEFAULT_GAUSS_RULE, false).is_ok() {
            return (params, coords, u);
        }
    }
}

/// Voigt strain perturbation applied to C = I + 2E (engineering shears).
fn perturb_c(c: &Matrix3<f64>, k: usize, h: f64) -> Matrix3<f64> {
    let (i, j) = voigt::VOIGT_PAIRS[k];
    let mut out = *c;
    if i == j {
        out[(i, i)] += 2.0 * h;
    } else {
        out[(i, j)] += h;
        out[(j, i)] += h;
    }
    out
}

fn state_at(c: Matrix3<f64>) -> DeformationState {
    DeformationState::from_right_cauchy_green(c).expect("perturbed state stays positive definite")
}

fn rel(err: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        err / scale
    } else {
        err
    }
}

/// Relative error of S against central differences of W with respect to E.
pub fn stress_fd_error(params: &MaterialParams, state: &DeformationState, h: f64) -> Result<f64> {
    let s = material::stress_and_tangent(params, state)?.s;
    let mut fd = Vector6::zeros();
    for k in 0..6 {
        let wp = material::energy(params, &state_at(perturb_c(&state.cp, k, h)))?;
        let wm = material::energy(params, &state_at(perturb_c(&state.cp, k, -h)))?;
        fd[k] = (wp - wm) / (2.0 * h);
    }
    Ok(rel((fd - s).norm(), s.norm()))
}

/// Relative error of D against central differences of S with respect to E.
pub fn tangent_fd_error(params: &MaterialParams, state: &DeformationState, h: f64) -> Result<f64> {
    let d = material::stress_and_tangent(params, state)?.d;
    let mut fd = nalgebra::Matrix6::zeros();
    for k in 0..6 {
        let sp = material::stress_and_tangent(params, &state_at(perturb_c(&state.cp, k, h)))?.s;
        let sm = material::stress_and_tangent(params, &state_at(perturb_c(&state.cp, k, -h)))?.s;
        fd.set_column(k, &((sp - sm) / (2.0 * h)));
    }
    Ok(rel((fd - d).norm(), d.norm()))
}

/// Relative mismatch of `δ₁ + δ₂ = 4 I₃² ∂²Ŵ′/∂I₃²`.
pub fn tangent_identity_error(params: &MaterialParams, state: &DeformationState) -> Result<f64> {
    let derivs = material::invariant_derivatives(params, state)?;
    let (d1, d2) = material::tangent_coefficients(&derivs, state.i3p);
    let rhs = 4.0 * state.i3p * state.i3p * derivs.d2w_di3;
    Ok(rel((d1 + d2 - rhs).abs(), rhs.abs()))
}

fn perturbed(u: &NodalMatrix, dof: usize, h: f64) -> NodalMatrix {
    let mut out = *u;
    out[(dof / 3, dof % 3)] += h;
    out
}

/// Largest absolute error of B·δu against central differences of the Green strain.
pub fn b_matrix_fd_error(coords: &NodalMatrix, u: &NodalMatrix, h: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for gp in element::gauss_point_data(coords, DEFAULT_GAUSS_RULE)? {
        let green = |u: &NodalMatrix| {
            let f = element::deformation_gradient(&gp.dn_dx, u);
            voigt::green_strain(&(f.transpose() * f))
        };
        let b = element::b_matrix(&gp.dn_dx, &element::deformation_gradient(&gp.dn_dx, u));
        for dof in 0..24 {
            let fd = (green(&perturbed(u, dof, h)) - green(&perturbed(u, dof, -h))) / (2.0 * h);
            worst = worst.max((fd - b.column(dof)).amax());
        }
    }
    Ok(worst)
}

/// Relative error of f_int against central differences of the element energy.
pub fn internal_force_fd_error(
    params: &MaterialParams,
    coords: &NodalMatrix,
    u: &NodalMatrix,
    h: f64,
) -> Result<f64> {
    let f = element::internal_force(coords, u, params, DEFAULT_GAUSS_RULE)?;
    let mut fd = element::ElementVector::zeros();
    for dof in 0..24 {
        let ep = element::strain_energy(coords, &perturbed(u, dof, h), params, DEFAULT_GAUSS_RULE)?;
        let em = element::strain_energy(coords, &perturbed(u, dof, -h), params, DEFAULT_GAUSS_RULE)?;
        fd[dof] = (ep - em) / (2.0 * h);
    }
    Ok(rel((fd - f).norm(), f.norm()))
}

/// Relative error of K_e against central differences of f_int.
pub fn stiffness_fd_error(
    params: &MaterialParams,
    coords: &NodalMatrix,
    u: &NodalMatrix,
    h: f64,
) -> Result<f64> {
    let k = element::stiffness(coords, u, params, DEFAULT_GAUSS_RULE)?;
    let mut fd = element::ElementMatrix::zeros();
    for dof in 0..24 {
        let fp = element::internal_force(coords, &perturbed(u, dof, h), params, DEFAULT_GAUSS_RULE)?;
        let fm = element::internal_force(coords, &perturbed(u, dof, -h), params, DEFAULT_GAUSS_RULE)?;
        fd.set_column(dof, &((fp - fm) / (2.0 * h)));
    }
    Ok(rel((fd - k).norm(), k.norm()))
}

fn worst_of(
    name: &'static str,
    tolerance: f64,
    samples: usize,
    mut check: impl FnMut() -> Result<f64>,
) -> Result<CheckResult> {
    let mut max_error: f64 = 0.0;
    for _ in 0..samples {
        max_error = max_error.max(check()?);
    }
    Ok(CheckResult {
        name,
        samples,
        max_error,
        tolerance,
    })
}

/// Runs every check; `samples` random states per randomized check.
pub fn run_verification(seed: u64, samples: usize) -> Result<VerifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let (nv, chi) = (1e-3, 0.1);
    let mu_grid = analytic::linspace(-0.3, 0.0, 31);
    let mut residual: f64 = 0.0;
    let mut uniaxial: f64 = 0.0;
    let mut transverse: f64 = 0.0;
    for &mu in &mu_grid {
        let l0 = material::solve_free_swelling_stretch(nv, chi, mu)?;
        residual = residual.max(material::free_swelling_residual(nv, chi, mu, l0).abs());
        for factor in [0.8, 0.95, 1.05, 1.3] {
            let l1 = factor * l0;
            let l2 = analytic::uniaxial_transverse_stretch(nv, chi, mu, l1)?;
            uniaxial = uniaxial.max(analytic::uniaxial_residual(nv, chi, mu, l1, l2).abs());
            transverse =
                transverse.max(analytic::uniaxial_transverse_stress(nv, chi, mu, l1, l2)?.abs());
        }
    }
    checks.push(CheckResult {
        name: "free-swelling residual at computed stretch",
        samples: mu_grid.len(),
        max_error: residual,
        tolerance: 1e-12,
    });
    checks.push(CheckResult {
        name: "uniaxial residual at computed transverse stretch",
        samples: 4 * mu_grid.len(),
        max_error: uniaxial,
        tolerance: 1e-12,
    });
    checks.push(CheckResult {
        name: "uniaxial transverse nominal stress",
        samples: 4 * mu_grid.len(),
        max_error: transverse,
        tolerance: 1e-8,
    });

    checks.push(worst_of("stress vs energy differences", 1e-6, samples, || {
        let (p, s) = random_material_state(&mut rng);
        stress_fd_error(&p, &s, 1e-6)
    })?);
    checks.push(worst_of("tangent vs stress differences", 1e-5, samples, || {
        let (p, s) = random_material_state(&mut rng);
        tangent_fd_error(&p, &s, 1e-6)
    })?);
    checks.push(worst_of("tangent coefficient identity", 1e-12, samples, || {
        let (p, s) = random_material_state(&mut rng);
        tangent_identity_error(&p, &s)
    })?);
    checks.push(worst_of("B-matrix vs Green-strain differences", 1e-8, samples, || {
        let (_, c, u) = random_element_state(&mut rng);
        b_matrix_fd_error(&c, &u, 1e-6)
    })?);
    checks.push(worst_of("internal force vs energy differences", 1e-6, samples, || {
        let (p, c, u) = random_element_state(&mut rng);
        internal_force_fd_error(&p, &c, &u, 1e-5)
    })?);
    checks.push(worst_of("element stiffness vs force differences", 1e-5, samples, || {
        let (p, c, u) = random_element_state(&mut rng);
        stiffness_fd_error(&p, &c, &u, 1e-6)
    })?);

    Ok(VerifyReport { seed, checks })
}
