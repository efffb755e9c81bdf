//! Closed-form homogeneous solutions: free swelling and the uniaxially
//! loaded bar. Used as reference curves and as oracles for the FE runs.

use nalgebra::Matrix3;

use crate::error::{GelError, Result};
use crate::material::{self, log_excess, ADMISSIBILITY_GUARD};
use crate::roots::bisect_then_newton;

pub const DEFAULT_CURVE_POINTS: usize = 50;

#[derive(Clone, Debug, PartialEq)]
pub struct FreeSwellingCurve {
    pub mu_bar_grid: Vec<f64>,
    pub lambda_grid: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct UniaxialCurve {
    /// Axial stretches measured from the dry network.
    pub lambda1_grid: Vec<f64>,
    pub lambda2_grid: Vec<f64>,
    /// Axial nominal stress per unit dry area, in kT/v.
    pub stress_grid: Vec<f64>,
}

/// Equally spaced grid including both endpoints.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|k| {
                if k == n - 1 {
                    b
                } else {
                    a + (b - a) * k as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

pub fn free_swelling_curve(nv: f64, chi: f64, mu_grid: &[f64]) -> Result<FreeSwellingCurve> {
    let lambda_grid = mu_grid
        .iter()
        .map(|&mu| {
            material::solve_free_swelling_stretch(nv, chi, mu).map_err(|e| {
                GelError::ParameterDomain(format!("free swelling at mu/kT = {mu}: {e}"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeSwellingCurve {
        mu_bar_grid: mu_grid.to_vec(),
        lambda_grid,
    })
}

/// Transverse-equilibrium residual of a bar with axial stretch `lambda1` and
/// transverse stretch `lambda2` (both from the dry state), written as
/// `Nv(λ₂ − 1/λ₂) + [J ln(1 − 1/J) + 1 + χ/J − (μ/kT) J] / λ₂`, `J = λ₁λ₂²`.
pub fn uniaxial_residual(nv: f64, chi: f64, mu_bar: f64, lambda1: f64, lambda2: f64) -> f64 {
    let j = lambda1 * lambda2 * lambda2;
    nv * (lambda2 - 1.0 / lambda2)
        + (-j * log_excess(1.0 / j) + chi / j - mu_bar * j) / lambda2
}

fn uniaxial_residual_slope(nv: f64, chi: f64, mu_bar: f64, lambda1: f64, lambda2: f64) -> f64 {
    let j = lambda1 * lambda2 * lambda2;
    let g = -j * log_excess(1.0 / j) + chi / j - mu_bar * j;
    let dg = (-1.0 / j).ln_1p() + 1.0 / (j - 1.0) - chi / (j * j) - mu_bar;
    nv * (1.0 + 1.0 / (lambda2 * lambda2)) + 2.0 * lambda1 * dg - g / (lambda2 * lambda2)
}

/// Transverse nominal stress `P₂₂` from the general stress expression at
/// `F = diag(λ₁, λ₂, λ₂)`; zero exactly when [`uniaxial_residual`] is.
pub fn uniaxial_transverse_stress(nv: f64, chi: f64, mu_bar: f64, lambda1: f64, lambda2: f64) -> Result<f64> {
    let f = Matrix3::from_diagonal(&nalgebra::Vector3::new(lambda1, lambda2, lambda2));
    Ok(material::dry_nominal_stress(nv, chi, mu_bar, &f)?[(1, 1)])
}

/// Axial nominal stress per unit dry area at `F = diag(λ₁, λ₂, λ₂)`.
pub fn uniaxial_axial_stress(nv: f64, chi: f64, mu_bar: f64, lambda1: f64, lambda2: f64) -> Result<f64> {
    let f = Matrix3::from_diagonal(&nalgebra::Vector3::new(lambda1, lambda2, lambda2));
    Ok(material::dry_nominal_stress(nv, chi, mu_bar, &f)?[(0, 0)])
}

/// Transverse stretch of a bar held at axial stretch `lambda1` with
/// traction-free lateral faces.
pub fn uniaxial_transverse_stretch(nv: f64, chi: f64, mu_bar: f64, lambda1: f64) -> Result<f64> {
    if !(lambda1 > 0.0) || !(nv > 0.0) {
        return Err(GelError::ParameterDomain(format!(
            "need lambda1 > 0 and Nv > 0, got lambda1 = {lambda1}, Nv = {nv}"
        )));
    }
    // λ₁λ₂² must exceed the dry volume.
    let lo = ((1.0 + 10.0 * ADMISSIBILITY_GUARD) / lambda1).sqrt();
    let f = |l2: f64| {
        (
            uniaxial_residual(nv, chi, mu_bar, lambda1, l2),
            uniaxial_residual_slope(nv, chi, mu_bar, lambda1, l2),
        )
    };
    let mut hi = 2.0 * lo.max(1.0);
    while f(hi).0 <= 0.0 {
        hi *= 2.0;
        if hi > 1e8 {
            return Err(GelError::NoRoot {
                equation: "uniaxial transverse equilibrium",
                lo,
                hi,
                reason: "residual stays negative (no admissible transverse stretch)".into(),
            });
        }
    }
    if f(lo).0 >= 0.0 {
        return Err(GelError::NoRoot {
            equation: "uniaxial transverse equilibrium",
            lo,
            hi,
            reason: "residual is non-negative at the dry-volume limit".into(),
        });
    }
    bisect_then_newton(f, lo, hi, 1e-14).ok_or(GelError::NoRoot {
        equation: "uniaxial transverse equilibrium",
        lo,
        hi,
        reason: "root iteration did not settle".into(),
    })
}

pub fn uniaxial_curve(nv: f64, chi: f64, mu_bar: f64, lambda1_grid: &[f64]) -> Result<UniaxialCurve> {
    let mut lambda2_grid = Vec::with_capacity(lambda1_grid.len());
    let mut stress_grid = Vec::with_capacity(lambda1_grid.len());
    for &l1 in lambda1_grid {
        let l2 = uniaxial_transverse_stretch(nv, chi, mu_bar, l1)?;
        lambda2_grid.push(l2);
        stress_grid.push(uniaxial_axial_stress(nv, chi, mu_bar, l1, l2)?);
    }
    Ok(UniaxialCurve {
        lambda1_grid: lambda1_grid.to_vec(),
        lambda2_grid,
        stress_grid,
    })
}

/// Stretch from the dry state given an edge displacement `delta` of a cube
/// of free-swelling edge length `l`: `λ = (1 + Δ/L) λ₀`.
pub fn stretch_from_displacement(delta: f64, l: f64, lambda0: f64) -> f64 {
    (1.0 + delta / l) * lambda0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linspace_endpoints() {
        let g = linspace(-0.05, 0.0, 10);
        assert_eq!(g.len(), 10);
        assert_eq!(g[0], -0.05);
        assert_eq!(g[9], 0.0);
        assert_eq!(linspace(1.0, 2.0, 1), vec![1.0]);
    }

    #[test]
    fn displacement_to_stretch() {
        assert_eq!(stretch_from_displacement(0.0, 2.0, 1.5), 1.5);
        assert_eq!(stretch_from_displacement(2.0, 2.0, 1.5), 3.0);
    }

    #[test]
    fn slope_matches_finite_difference() {
        let (nv, chi, mu, l1) = (1e-3, 0.1, -0.01, 2.3);
        for l2 in [1.0, 1.5, 2.0, 3.0] {
            let h = 1e-6;
            let fd = (uniaxial_residual(nv, chi, mu, l1, l2 + h) - uniaxial_residual(nv, chi, mu, l1, l2 - h)) / (2.0 * h);
            let an = uniaxial_residual_slope(nv, chi, mu, l1, l2);
            assert!((fd - an).abs() < 1e-7 * an.abs().max(1.0), "{fd} vs {an}");
        }
    }

    #[test]
    fn rejects_nonpositive_stretch() {
        assert!(uniaxial_transverse_stretch(1e-3, 0.1, 0.0, 0.0).is_err());
        assert!(free_swelling_curve(1e-3, 0.1, &[0.1]).is_err());
    }
}
