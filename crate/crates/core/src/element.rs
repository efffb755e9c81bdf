//! Trilinear 8-node hexahedron in the total-Lagrangian frame.
//!
//! Corner ordering follows the VTK hexahedron: bottom face (ζ = −1)
//! counter-clockwise, then the top face (ζ = +1) in the same order.

use nalgebra::{Matrix3, SMatrix, SVector, Vector3};

use crate::error::{GelError, Result};
use crate::material::{self, DeformationState, MaterialParams};
use crate::voigt;

/// Nodal values of a vector field, one row per corner node.
pub type NodalMatrix = SMatrix<f64, 8, 3>;
pub type ElementVector = SVector<f64, 24>;
pub type ElementMatrix = SMatrix<f64, 24, 24>;
pub type BMatrix = SMatrix<f64, 6, 24>;

pub const NODE_PARENT_COORDS: [[f64; 3]; 8] = [
    [-1.0, -1.0, -1.0],
    [1.0, -1.0, -1.0],
    [1.0, 1.0, -1.0],
    [-1.0, 1.0, -1.0],
    [-1.0, -1.0, 1.0],
    [1.0, -1.0, 1.0],
    [1.0, 1.0, 1.0],
    [-1.0, 1.0, 1.0],
];

/// Local node indices of the six faces, each ordered counter-clockwise when
/// seen from outside the element.
pub const FACES: [[usize; 4]; 6] = [
    [0, 3, 2, 1],
    [4, 5, 6, 7],
    [0, 1, 5, 4],
    [1, 2, 6, 5],
    [2, 3, 7, 6],
    [3, 0, 4, 7],
];

pub const DEFAULT_GAUSS_RULE: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hex8Element {
    pub node_ids: [usize; 8],
    /// Gauss points per parent axis (1, 2 or 3).
    pub gauss_rule: usize,
}

impl Hex8Element {
    pub fn new(node_ids: [usize; 8]) -> Self {
        Self {
            node_ids,
            gauss_rule: DEFAULT_GAUSS_RULE,
        }
    }

    pub fn gather(&self, field: &[Vector3<f64>]) -> NodalMatrix {
        NodalMatrix::from_fn(|i, k| field[self.node_ids[i]][k])
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussPointData {
    pub xi: Vector3<f64>,
    pub weight: f64,
    /// Shape-function gradients with respect to the reference coordinates.
    pub dn_dx: NodalMatrix,
    /// Determinant of ∂X/∂ξ.
    pub jxi: f64,
}

/// 1D Gauss-Legendre points and weights on [−1, 1].
pub fn gauss_legendre(n: usize) -> Option<(&'static [f64], &'static [f64])> {
    const P1: [f64; 1] = [0.0];
    const W1: [f64; 1] = [2.0];
    const P2: [f64; 2] = [-0.577_350_269_189_625_8, 0.577_350_269_189_625_8];
    const W2: [f64; 2] = [1.0, 1.0];
    const P3: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
    const W3: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    match n {
        1 => Some((&P1, &W1)),
        2 => Some((&P2, &W2)),
        3 => Some((&P3, &W3)),
        _ => None,
    }
}

/// Tensor-product quadrature points on the parent cube, ξ varying fastest.
pub fn parent_quadrature(n: usize) -> Result<Vec<(Vector3<f64>, f64)>> {
    let (pts, wts) = gauss_legendre(n).ok_or_else(|| {
        GelError::InvalidModel(format!("unsupported Gauss rule {n} (expected 1, 2 or 3)"))
    })?;
    let mut out = Vec::with_capacity(n * n * n);
    for k in 0..n {
        for j in 0..n {
            for i in 0..n {
                out.push((Vector3::new(pts[i], pts[j], pts[k]), wts[i] * wts[j] * wts[k]));
            }
        }
    }
    Ok(out)
}

pub fn shape_functions(xi: &Vector3<f64>) -> [f64; 8] {
    std::array::from_fn(|a| {
        let c = NODE_PARENT_COORDS[a];
        0.125 * (1.0 + c[0] * xi[0]) * (1.0 + c[1] * xi[1]) * (1.0 + c[2] * xi[2])
    })
}

pub fn shape_parent_gradients(xi: &Vector3<f64>) -> NodalMatrix {
    NodalMatrix::from_fn(|a, d| {
        let c = NODE_PARENT_COORDS[a];
        let f = |k: usize| 1.0 + c[k] * xi[k];
        match d {
            0 => 0.125 * c[0] * f(1) * f(2),
            1 => 0.125 * c[1] * f(0) * f(2),
            _ => 0.125 * c[2] * f(0) * f(1),
        }
    })
}

/// Reference-frame shape-function gradients and Jacobian determinant at `xi`.
pub fn shape_gradients(coords: &NodalMatrix, xi: &Vector3<f64>) -> Result<(NodalMatrix, f64)> {
    let dn_dxi = shape_parent_gradients(xi);
    // dX_i/dξ_j
    let jac: Matrix3<f64> = coords.transpose() * dn_dxi;
    let det = jac.determinant();
    if !(det > 0.0) {
        return Err(GelError::InvertedElement {
            jacobian: det,
            element: None,
            gauss_point: None,
        });
    }
    let inv = jac.try_inverse().expect("positive determinant implies invertible");
    Ok((dn_dxi * inv, det))
}

pub fn gauss_point_data(coords: &NodalMatrix, rule: usize) -> Result<Vec<GaussPointData>> {
    parent_quadrature(rule)?
        .into_iter()
        .enumerate()
        .map(|(g, (xi, weight))| {
            let (dn_dx, jxi) = shape_gradients(coords, &xi).map_err(|e| match e {
                GelError::InvertedElement { jacobian, element, .. } => GelError::InvertedElement {
                    jacobian,
                    element,
                    gauss_point: Some(g),
                },
                other => other,
            })?;
            Ok(GaussPointData {
                xi,
                weight,
                dn_dx,
                jxi,
            })
        })
        .collect()
}

/// `F′ = I + Σ_I u_I ⊗ ∇N_I`.
pub fn deformation_gradient(dn_dx: &NodalMatrix, u: &NodalMatrix) -> Matrix3<f64> {
    Matrix3::identity() + u.transpose() * dn_dx
}

/// Green-strain variation matrix: `δE = B·δu` with engineering shears in
/// Voigt order (11, 22, 33, 23, 13, 12) and δu ordered node-major (x, y, z).
pub fn b_matrix(dn_dx: &NodalMatrix, f: &Matrix3<f64>) -> BMatrix {
    let mut b = BMatrix::zeros();
    for node in 0..8 {
        let g = dn_dx.row(node);
        for j in 0..3 {
            let col = 3 * node + j;
            b[(0, col)] = g[0] * f[(j, 0)];
            b[(1, col)] = g[1] * f[(j, 1)];
            b[(2, col)] = g[2] * f[(j, 2)];
            b[(3, col)] = g[1] * f[(j, 2)] + g[2] * f[(j, 1)];
            b[(4, col)] = g[0] * f[(j, 2)] + g[2] * f[(j, 0)];
            b[(5, col)] = g[0] * f[(j, 1)] + g[1] * f[(j, 0)];
        }
    }
    b
}

/// Per-Gauss-point output of an element evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPointResult {
    pub f: Matrix3<f64>,
    pub s: SVector<f64, 6>,
    pub w: f64,
    /// Integration weight times reference Jacobian.
    pub dvol: f64,
}

#[derive(Clone, Debug)]
pub struct ElementResponse {
    pub f_int: ElementVector,
    pub stiffness: ElementMatrix,
    pub energy: f64,
    pub gauss: Vec<GaussPointResult>,
}

/// Evaluates internal force, stiffness (material + geometric), stored energy
/// and Gauss-point fields in one pass.
pub fn evaluate(
    coords: &NodalMatrix,
    u: &NodalMatrix,
    params: &MaterialParams,
    rule: usize,
    with_stiffness: bool,
) -> Result<ElementResponse> {
    let mut f_int = ElementVector::zeros();
    let mut k = ElementMatrix::zeros();
    let mut energy = 0.0;
    let gps = gauss_point_data(coords, rule)?;
    let mut gauss = Vec::with_capacity(gps.len());
    for (g, gp) in gps.iter().enumerate() {
        let f = deformation_gradient(&gp.dn_dx, u);
        let state = DeformationState::from_deformation_gradient(f).map_err(|_| {
            GelError::Inadmissible {
                total_jacobian: params.lambda0.powi(3) * f.determinant(),
                element: None,
                gauss_point: Some(g),
            }
        })?;
        let st = material::stress_and_tangent(params, &state).map_err(|e| e.at_gauss_point(g))?;
        let dvol = gp.weight * gp.jxi;
        let b = b_matrix(&gp.dn_dx, &f);
        f_int += b.transpose() * st.s * dvol;
        energy += st.w * dvol;
        if with_stiffness {
            k += b.transpose() * st.d * b * dvol;
            let s_mat = voigt::voigt_to_stress(&st.s);
            for a in 0..8 {
                let ga = gp.dn_dx.row(a).transpose();
                let sga = s_mat * ga;
                for c in 0..8 {
                    let kab = gp.dn_dx.row(c).dot(&sga.transpose()) * dvol;
                    for d in 0..3 {
                        k[(3 * a + d, 3 * c + d)] += kab;
                    }
                }
            }
        }
        gauss.push(GaussPointResult {
            f,
            s: st.s,
            w: st.w,
            dvol,
        });
    }
    Ok(ElementResponse {
        f_int,
        stiffness: k,
        energy,
        gauss,
    })
}

/// Internal nodal forces `∫ Bᵀ{S} dΩ₀`.
pub fn internal_force(
    coords: &NodalMatrix,
    u: &NodalMatrix,
    params: &MaterialParams,
    rule: usize,
) -> Result<ElementVector> {
    evaluate(coords, u, params, rule, false).map(|r| r.f_int)
}

/// Tangent stiffness `K_mat + K_geo`.
pub fn stiffness(
    coords: &NodalMatrix,
    u: &NodalMatrix,
    params: &MaterialParams,
    rule: usize,
) -> Result<ElementMatrix> {
    evaluate(coords, u, params, rule, true).map(|r| r.stiffness)
}

/// Stored free energy `∫ Ŵ′ dΩ₀`.
pub fn strain_energy(
    coords: &NodalMatrix,
    u: &NodalMatrix,
    params: &MaterialParams,
    rule: usize,
) -> Result<f64> {
    evaluate(coords, u, params, rule, false).map(|r| r.energy)
}

/// Nodal displacements as a flat 24-vector in the element dof order.
pub fn flatten_nodal(u: &NodalMatrix) -> ElementVector {
    ElementVector::from_fn(|r, _| u[(r / 3, r % 3)])
}
