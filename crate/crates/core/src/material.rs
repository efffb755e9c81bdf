//! Flory-Rehner gel constitutive kernel.
//!
//! All quantities are dimensionless: energies and stresses are in units of
//! kT/v, and the material enters only through the groups `Nv`, `χ` and `μ/kT`.
//!
//! The free energy of a gel in equilibrium with a solvent at chemical
//! potential μ, per unit dry volume, is
//!
//! ```text
//! Ŵ(F, μ) = ½ Nv (I − 3 − 2 ln J) − [(J − 1) ln(J / (J − 1)) + χ / J] − (μ/kT)(J − 1)
//! ```
//!
//! with `I = F:F` and `J = det F`. Computations use the free-swelling state
//! (isotropic stretch λ₀ from the dry network) as reference, so the kernel
//! works with `F′` measured from that state and the energy per unit
//! free-swelling volume `Ŵ′(F′) = λ₀⁻³ Ŵ(λ₀ F′)`.

use nalgebra::{Matrix3, Matrix6, Vector6};

use crate::error::{GelError, Result};
use crate::roots::bisect_then_newton;
use crate::voigt;

/// Minimum allowed excess of the total swelling ratio `λ₀³ J′` over 1.
pub const ADMISSIBILITY_GUARD: f64 = 1e-9;

/// Search bracket for the free-swelling stretch.
pub const FREE_SWELLING_BRACKET: (f64, f64) = (1.0 + 1e-4, 100.0);

const ROOT_STEP_TOL: f64 = 1e-13;

/// Dimensionless gel constants plus the free-swelling reference stretch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MaterialParams {
    /// Crosslink density times solvent molecular volume.
    pub nv: f64,
    /// Flory-Huggins mixing parameter.
    pub chi: f64,
    /// Current chemical potential μ/kT.
    pub mu_bar: f64,
    /// Chemical potential at which the reference state is free-swelling.
    pub mu0_bar: f64,
    /// Free-swelling stretch at `mu0_bar`.
    pub lambda0: f64,
}

impl MaterialParams {
    /// Builds parameters whose reference is the free-swelling state at `mu0_bar`.
    /// The current chemical potential starts equal to `mu0_bar`.
    pub fn new(nv: f64, chi: f64, mu0_bar: f64) -> Result<Self> {
        let lambda0 = solve_free_swelling_stretch(nv, chi, mu0_bar)?;
        Ok(Self {
            nv,
            chi,
            mu_bar: mu0_bar,
            mu0_bar,
            lambda0,
        })
    }

    pub fn with_mu(self, mu_bar: f64) -> Self {
        Self { mu_bar, ..self }
    }

    /// Total swelling ratio `λ₀³ J′`, checked against the dry-network barrier.
    pub fn total_jacobian(&self, jp: f64) -> Result<f64> {
        let j = self.lambda0.powi(3) * jp;
        if j.is_nan() || j <= 1.0 + ADMISSIBILITY_GUARD {
            return Err(GelError::Inadmissible {
                total_jacobian: j,
                element: None,
                gauss_point: None,
            });
        }
        Ok(j)
    }
}

/// Point kinematics measured from the free-swelling state.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationState {
    pub fp: Matrix3<f64>,
    pub cp: Matrix3<f64>,
    pub i1p: f64,
    pub i3p: f64,
    pub jp: f64,
    pub cp_inv: Matrix3<f64>,
}

impl DeformationState {
    pub fn identity() -> Self {
        Self::from_deformation_gradient(Matrix3::identity()).expect("identity is invertible")
    }

    pub fn from_deformation_gradient(fp: Matrix3<f64>) -> Result<Self> {
        let jp = fp.determinant();
        if !(jp > 0.0) {
            return Err(GelError::ParameterDomain(format!(
                "deformation gradient must have positive determinant, got {jp:e}"
            )));
        }
        let cp = fp.transpose() * fp;
        let cp_inv = cp.try_inverse().ok_or_else(|| {
            GelError::ParameterDomain("right Cauchy-Green tensor is singular".into())
        })?;
        Ok(Self {
            fp,
            i1p: cp.trace(),
            i3p: jp * jp,
            jp,
            cp,
            cp_inv,
        })
    }

    /// State from a symmetric positive definite `C′`; `F′` is taken as the
    /// right stretch tensor `U = √C′`.
    pub fn from_right_cauchy_green(cp: Matrix3<f64>) -> Result<Self> {
        let cp = 0.5 * (cp + cp.transpose());
        let eig = cp.symmetric_eigen();
        if eig.eigenvalues.iter().any(|&v| !(v > 0.0)) {
            return Err(GelError::ParameterDomain(
                "right Cauchy-Green tensor must be positive definite".into(),
            ));
        }
        let root = eig.eigenvalues.map(f64::sqrt);
        let u = eig.eigenvectors * Matrix3::from_diagonal(&root) * eig.eigenvectors.transpose();
        let i3p = cp.determinant();
        let cp_inv = cp.try_inverse().ok_or_else(|| {
            GelError::ParameterDomain("right Cauchy-Green tensor is singular".into())
        })?;
        Ok(Self {
            fp: u,
            i1p: cp.trace(),
            i3p,
            jp: i3p.sqrt(),
            cp,
            cp_inv,
        })
    }
}

/// Second Piola-Kirchhoff stress, tangent moduli and energy density, all in
/// kT/v per unit free-swelling volume.
#[derive(Clone, Debug, PartialEq)]
pub struct StressTangent {
    pub s: Vector6<f64>,
    pub d: Matrix6<f64>,
    pub w: f64,
}

/// Derivatives of `Ŵ′` with respect to the invariants of `C′`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InvariantDerivatives {
    pub dw_di1: f64,
    pub dw_di3: f64,
    pub d2w_di3: f64,
}

/// Flory-Rehner free energy per unit dry volume, as a function of `I = F:F` and `J`.
pub fn dry_energy(nv: f64, chi: f64, mu_bar: f64, i1: f64, j: f64) -> f64 {
    let mixing = if j == 1.0 {
        chi
    } else {
        (j - 1.0) * mixing_log(j) + chi / j
    };
    0.5 * nv * (i1 - 3.0 - 2.0 * j.ln()) - mixing - mu_bar * (j - 1.0)
}

/// ln(J / (J − 1)), accurate for large J.
fn mixing_log(j: f64) -> f64 {
    -(-1.0 / j).ln_1p()
}

/// `−ln(1 − x) − x` without cancellation for small x.
pub(crate) fn log_excess(x: f64) -> f64 {
    if x.abs() > 0.25 {
        return -(-x).ln_1p() - x;
    }
    // Σ_{n≥2} xⁿ/n; 0.25⁴⁰ is far below f64 resolution.
    let mut sum = 0.0;
    let mut pow = x * x;
    for n in 2..48 {
        let term = pow / n as f64;
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
        pow *= x;
    }
    sum
}

/// ∂Ŵ/∂J at fixed I.
fn dw_dj(nv: f64, chi: f64, mu_bar: f64, j: f64) -> f64 {
    -nv / j - log_excess(1.0 / j) + chi / (j * j) - mu_bar
}

/// ∂²Ŵ/∂J² at fixed I.
fn d2w_dj2(nv: f64, chi: f64, j: f64) -> f64 {
    nv / (j * j) + 1.0 / (j * j * (j - 1.0)) - 2.0 * chi / (j * j * j)
}

/// Residual of the free-swelling condition
/// `Nv(1/λ − 1/λ³) + ln(1 − 1/λ³) + 1/λ³ + χ/λ⁶ − μ/kT`.
pub fn free_swelling_residual(nv: f64, chi: f64, mu_bar: f64, lambda: f64) -> f64 {
    let l3 = lambda.powi(3);
    nv * (1.0 / lambda - 1.0 / l3) - log_excess(1.0 / l3) + chi / (l3 * l3) - mu_bar
}

fn free_swelling_residual_slope(nv: f64, chi: f64, lambda: f64) -> f64 {
    let l2 = lambda * lambda;
    let l4 = l2 * l2;
    let l3 = l2 * lambda;
    nv * (-1.0 / l2 + 3.0 / l4) + 3.0 / (l4 * (1.0 - 1.0 / l3)) - 3.0 / l4
        - 6.0 * chi / (l4 * l3)
}

/// Stretch λ₀ of the stress-free, isotropically swollen gel in equilibrium
/// with a solvent at `mu0_bar`.
pub fn solve_free_swelling_stretch(nv: f64, chi: f64, mu0_bar: f64) -> Result<f64> {
    if !(nv > 0.0) {
        return Err(GelError::ParameterDomain(format!("Nv must be positive, got {nv}")));
    }
    if !chi.is_finite() {
        return Err(GelError::ParameterDomain(format!("chi must be finite, got {chi}")));
    }
    if !(mu0_bar <= 0.0) {
        return Err(GelError::ParameterDomain(format!(
            "mu/kT must be <= 0 (solvent at or below saturation), got {mu0_bar}"
        )));
    }
    let (lo, hi) = FREE_SWELLING_BRACKET;
    let f = |l: f64| {
        (
            free_swelling_residual(nv, chi, mu0_bar, l),
            free_swelling_residual_slope(nv, chi, l),
        )
    };
    let flo = f(lo).0;
    let fhi = f(hi).0;
    if flo >= 0.0 || fhi <= 0.0 {
        let reason = if flo >= 0.0 {
            format!("residual at lower bound is {flo:e} >= 0 (gel would not swell past lambda = {lo})")
        } else {
            format!("residual at upper bound is {fhi:e} <= 0 (swelling exceeds lambda = {hi})")
        };
        return Err(GelError::NoRoot {
            equation: "free-swelling condition",
            lo,
            hi,
            reason,
        });
    }
    bisect_then_newton(f, lo, hi, ROOT_STEP_TOL).ok_or(GelError::NoRoot {
        equation: "free-swelling condition",
        lo,
        hi,
        reason: "root iteration did not settle".into(),
    })
}

/// Free energy `Ŵ′` per unit free-swelling volume.
pub fn energy(params: &MaterialParams, state: &DeformationState) -> Result<f64> {
    let j = params.total_jacobian(state.jp)?;
    let l0 = params.lambda0;
    let i1 = l0 * l0 * state.i1p;
    Ok(dry_energy(params.nv, params.chi, params.mu_bar, i1, j) / l0.powi(3))
}

pub fn invariant_derivatives(
    params: &MaterialParams,
    state: &DeformationState,
) -> Result<InvariantDerivatives> {
    let j = params.total_jacobian(state.jp)?;
    let l0 = params.lambda0;
    let jp = state.jp;
    // Ŵ′ = λ₀⁻³ Ŵ(λ₀² I₁′, λ₀³ J′); dJ′/dI₃′ = 1/(2J′), d²J′/dI₃′² = −1/(4J′³).
    let dw_djp = dw_dj(params.nv, params.chi, params.mu_bar, j);
    let d2w_djp = l0.powi(3) * d2w_dj2(params.nv, params.chi, j);
    let dj_di3 = 0.5 / jp;
    let d2j_di3 = -0.25 / (jp * jp * jp);
    Ok(InvariantDerivatives {
        dw_di1: 0.5 * params.nv / l0,
        dw_di3: dw_djp * dj_di3,
        d2w_di3: d2w_djp * dj_di3 * dj_di3 + dw_djp * d2j_di3,
    })
}

/// Coefficients (δ₁, δ₂) of `D = δ₁ C⁻¹⊗C⁻¹ + δ₂ C⁻¹⊙C⁻¹`.
pub fn tangent_coefficients(derivs: &InvariantDerivatives, i3p: f64) -> (f64, f64) {
    let delta1 = 4.0 * (i3p * derivs.dw_di3 + i3p * i3p * derivs.d2w_di3);
    let delta2 = -4.0 * i3p * derivs.dw_di3;
    (delta1, delta2)
}

/// Second Piola-Kirchhoff stress `S = 2∂Ŵ′/∂C′` and tangent `D = 2∂S/∂C′` in Voigt form.
pub fn stress_and_tangent(params: &MaterialParams, state: &DeformationState) -> Result<StressTangent> {
    let w = energy(params, state)?;
    let derivs = invariant_derivatives(params, state)?;
    let ci = &state.cp_inv;
    let s = 2.0 * (derivs.dw_di1 * Matrix3::identity() + state.i3p * derivs.dw_di3 * ci);
    let (delta1, delta2) = tangent_coefficients(&derivs, state.i3p);
    let d = delta1 * voigt::outer_product(ci, ci) + delta2 * voigt::symmetric_product(ci, ci);
    Ok(StressTangent {
        s: voigt::stress_to_voigt(&s),
        d,
        w,
    })
}

/// First Piola-Kirchhoff stress `P = ∂Ŵ/∂F` per unit dry area, evaluated
/// directly at a deformation gradient measured from the dry network.
pub fn dry_nominal_stress(nv: f64, chi: f64, mu_bar: f64, f: &Matrix3<f64>) -> Result<Matrix3<f64>> {
    let j = f.determinant();
    if !(j > 1.0 + ADMISSIBILITY_GUARD) {
        return Err(GelError::Inadmissible {
            total_jacobian: j,
            element: None,
            gauss_point: None,
        });
    }
    let f_inv_t = f
        .try_inverse()
        .expect("positive determinant implies invertible")
        .transpose();
    let mixing = j * log_excess(1.0 / j) - chi / j;
    Ok(nv * (f - f_inv_t) - mixing * f_inv_t - mu_bar * j * f_inv_t)
}

/// Nominal stress `P′ = ∂Ŵ′/∂F′` in the free-swelling frame, obtained from
/// the dry-frame expression at `F = λ₀F′` scaled by λ₀⁻².
pub fn nominal_stress(params: &MaterialParams, state: &DeformationState) -> Result<Matrix3<f64>> {
    params.total_jacobian(state.jp)?;
    let l0 = params.lambda0;
    let p = dry_nominal_stress(params.nv, params.chi, params.mu_bar, &(l0 * state.fp))?;
    Ok(p / (l0 * l0))
}
