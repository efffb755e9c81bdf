//! Reference values and independent oracles shared by the integration tests.
//!
//! The scalar oracles evaluate the closed-form conditions in their plain
//! textbook form (no cancellation-avoiding rewrites) and solve them by pure
//! bisection, so they share no code path with the library's root finder.
#![allow(dead_code, clippy::excessive_precision)]

use gelfem::element::{self, NodalMatrix, NODE_PARENT_COORDS};
use gelfem::material::{self, DeformationState, MaterialParams};
use gelfem::voigt::VOIGT_PAIRS;
use nalgebra::{Matrix3, Matrix6, Vector6};
use rand::Rng;

pub const NV: f64 = 1e-3;
pub const CHI: f64 = 0.1;

/// Free-swelling stretch at (Nv, χ, μ/kT) = (1e-3, 0.1, 0), 40-digit arithmetic.
pub const LAMBDA0_SATURATED: f64 = 3.389953954494804532852854;
/// Same at μ/kT = −0.05.
pub const LAMBDA0_MU_M005: f64 = 1.482077550412338171961901;
/// Transverse stretch of the bar at λ₁ = 1.1 λ₀, μ/kT = 0.
pub const LAMBDA2_AT_1P1: f64 = 3.3129840667409962549747;
/// Axial nominal stress per dry area at that state.
pub const AXIAL_STRESS_AT_1P1: f64 = 0.00078552952938713459;
/// Free energy per free-swelling volume at F′ = I, μ/kT = 0.
pub const ENERGY_AT_REFERENCE: f64 = -0.025093177916490946788;

/// Plain bisection to an absolute bracket width.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, width: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) < 0.0, "oracle bracket [{lo}, {hi}] does not change sign");
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn free_swelling_condition(nv: f64, chi: f64, mu: f64, l: f64) -> f64 {
    let l3 = l.powi(3);
    nv * (1.0 / l - 1.0 / l3) + (1.0 - 1.0 / l3).ln() + 1.0 / l3 + chi / l3.powi(2) - mu
}

pub fn oracle_free_swelling(nv: f64, chi: f64, mu: f64) -> f64 {
    bisect(|l| free_swelling_condition(nv, chi, mu, l), 1.0001, 20.0, 1e-13)
}

pub fn uniaxial_condition(nv: f64, chi: f64, mu: f64, l1: f64, l2: f64) -> f64 {
    let j = l1 * l2 * l2;
    nv * (l2 - 1.0 / l2) + (j * (1.0 - 1.0 / j).ln() + 1.0 + chi / j - mu * j) / l2
}

pub fn oracle_transverse_stretch(nv: f64, chi: f64, mu: f64, l1: f64, lo: f64, hi: f64) -> f64 {
    bisect(|l2| uniaxial_condition(nv, chi, mu, l1, l2), lo, hi, 1e-13)
}

/// Dry-frame energy written out directly from the invariants.
pub fn dry_energy_direct(nv: f64, chi: f64, mu: f64, f: &Matrix3<f64>) -> f64 {
    let i = (f.transpose() * f).trace();
    let j = f.determinant();
    0.5 * nv * (i - 3.0 - 2.0 * j.ln()) - ((j - 1.0) * (j / (j - 1.0)).ln() + chi / j) - mu * (j - 1.0)
}

fn bump(c: &Matrix3<f64>, k: usize, h: f64) -> Matrix3<f64> {
    let (i, j) = VOIGT_PAIRS[k];
    let mut out = *c;
    if i == j {
        out[(i, i)] += 2.0 * h;
    } else {
        out[(i, j)] += h;
        out[(j, i)] += h;
    }
    out
}

fn at(c: Matrix3<f64>) -> DeformationState {
    DeformationState::from_right_cauchy_green(c).unwrap()
}

/// Central differences of W with respect to the Voigt Green strain.
pub fn fd_stress(p: &MaterialParams, s: &DeformationState, h: f64) -> Vector6<f64> {
    Vector6::from_fn(|k, _| {
        let wp = material::energy(p, &at(bump(&s.cp, k, h))).unwrap();
        let wm = material::energy(p, &at(bump(&s.cp, k, -h))).unwrap();
        (wp - wm) / (2.0 * h)
    })
}

/// Central differences of S with respect to the Voigt Green strain.
pub fn fd_tangent(p: &MaterialParams, s: &DeformationState, h: f64) -> Matrix6<f64> {
    let mut d = Matrix6::zeros();
    for k in 0..6 {
        let sp = material::stress_and_tangent(p, &at(bump(&s.cp, k, h))).unwrap().s;
        let sm = material::stress_and_tangent(p, &at(bump(&s.cp, k, -h))).unwrap().s;
        d.set_column(k, &((sp - sm) / (2.0 * h)));
    }
    d
}

pub fn nudge(u: &NodalMatrix, dof: usize, h: f64) -> NodalMatrix {
    let mut out = *u;
    out[(dof / 3, dof % 3)] += h;
    out
}

/// Central-difference Jacobian of the element internal force.
pub fn fd_element_stiffness(p: &MaterialParams, x: &NodalMatrix, u: &NodalMatrix, h: f64) -> element::ElementMatrix {
    let mut k = element::ElementMatrix::zeros();
    for dof in 0..24 {
        let fp = element::internal_force(x, &nudge(u, dof, h), p, 2).unwrap();
        let fm = element::internal_force(x, &nudge(u, dof, -h), p, 2).unwrap();
        k.set_column(dof, &((fp - fm) / (2.0 * h)));
    }
    k
}

/// Random gel constants and an admissible F′ with λ₀³ det F′ > 1.05.
pub fn random_state(rng: &mut impl Rng) -> (MaterialParams, DeformationState) {
    loop {
        let nv = 10f64.powf(rng.random_range(-4.0..-2.0));
        let chi = rng.random_range(0.0..0.6);
        let mu0 = rng.random_range(-0.2..0.0);
        let p = MaterialParams::new(nv, chi, mu0).unwrap();
        let p = p.with_mu((mu0 + rng.random_range(-0.02..0.02)).min(0.0));
        let fp = Matrix3::identity() + Matrix3::from_fn(|_, _| rng.random_range(-0.3..0.3));
        if fp.determinant() > 0.0 && p.lambda0.powi(3) * fp.determinant() > 1.05 {
            return (p, DeformationState::from_deformation_gradient(fp).unwrap());
        }
    }
}

/// Random admissible element state: perturbed cube of edge 2 with a
/// homogeneous deformation plus nodal noise.
pub fn random_element(rng: &mut impl Rng) -> (MaterialParams, NodalMatrix, NodalMatrix) {
    loop {
        let (p, s) = random_state(rng);
        let x = NodalMatrix::from_fn(|a, d| NODE_PARENT_COORDS[a][d] + 1.0 + rng.random_range(-0.2..0.2));
        let mut u = NodalMatrix::zeros();
        for a in 0..8 {
            let du = (s.fp - Matrix3::identity()) * x.row(a).transpose();
            for d in 0..3 {
                u[(a, d)] = du[d] + rng.random_range(-0.05..0.05);
            }
        }
        if element::evaluate(&x, &u, &p, 2, false).is_ok() {
            return (p, x, u);
        }
    }
}

pub fn rel_err_vec(a: &[f64], b: &[f64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let den: f64 = b.iter().map(|y| y * y).sum::<f64>().sqrt();
    num / den
}
