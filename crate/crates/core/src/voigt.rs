//! Voigt packing of symmetric 3×3 tensors, order (11, 22, 33, 23, 13, 12).
//!
//! Stress-like quantities pack the tensor components directly. Strain-like
//! quantities carry engineering shears (factor 2 on the off-diagonal slots).

use nalgebra::{Matrix3, Matrix6, Vector6};

/// Tensor index pairs for each Voigt slot.
pub const VOIGT_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

pub fn stress_to_voigt(m: &Matrix3<f64>) -> Vector6<f64> {
    Vector6::from_fn(|a, _| {
        let (i, j) = VOIGT_PAIRS[a];
        0.5 * (m[(i, j)] + m[(j, i)])
    })
}

pub fn strain_to_voigt(m: &Matrix3<f64>) -> Vector6<f64> {
    Vector6::from_fn(|a, _| {
        let (i, j) = VOIGT_PAIRS[a];
        if i == j {
            m[(i, i)]
        } else {
            m[(i, j)] + m[(j, i)]
        }
    })
}

pub fn voigt_to_stress(v: &Vector6<f64>) -> Matrix3<f64> {
    let mut m = Matrix3::zeros();
    for (a, &(i, j)) in VOIGT_PAIRS.iter().enumerate() {
        m[(i, j)] = v[a];
        m[(j, i)] = v[a];
    }
    m
}

/// Green-Lagrange strain E = ½(C − I) in Voigt form with engineering shears.
pub fn green_strain(c: &Matrix3<f64>) -> Vector6<f64> {
    strain_to_voigt(&(0.5 * (c - Matrix3::identity())))
}

/// Voigt matrix of A ⊗ B, `(A ⊗ B)_ijkl = A_ij B_kl`.
pub fn outer_product(a: &Matrix3<f64>, b: &Matrix3<f64>) -> Matrix6<f64> {
    Matrix6::from_fn(|r, c| {
        let (i, j) = VOIGT_PAIRS[r];
        let (k, l) = VOIGT_PAIRS[c];
        a[(i, j)] * b[(k, l)]
    })
}

/// Voigt matrix of the symmetrized product A ⊙ B,
/// `(A ⊙ B)_ijkl = ½(A_ik B_jl + A_il B_jk)`.
pub fn symmetric_product(a: &Matrix3<f64>, b: &Matrix3<f64>) -> Matrix6<f64> {
    Matrix6::from_fn(|r, c| {
        let (i, j) = VOIGT_PAIRS[r];
        let (k, l) = VOIGT_PAIRS[c];
        0.5 * (a[(i, k)] * b[(j, l)] + a[(i, l)] * b[(j, k)])
    })
}
