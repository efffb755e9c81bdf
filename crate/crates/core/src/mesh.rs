//! Structured box meshes, node-set selectors and face-load lumping.

use std::fmt;
use std::str::FromStr;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::element::{self, Hex8Element, FACES};
use crate::error::{GelError, Result};

/// Absolute tolerance used by plane selectors.
pub const SELECTOR_TOL: f64 = 1e-9;

/// Nodes and elements of a structured `nx × ny × nz` box with edge length
/// `l` along every axis. Nodes are numbered x fastest, then y, then z.
pub fn generate_cube_mesh(
    nx: usize,
    ny: usize,
    nz: usize,
    l: f64,
) -> Result<(Vec<Vector3<f64>>, Vec<Hex8Element>)> {
    generate_box_mesh([nx, ny, nz], [l, l, l])
}

pub fn generate_box_mesh(
    divisions: [usize; 3],
    lengths: [f64; 3],
) -> Result<(Vec<Vector3<f64>>, Vec<Hex8Element>)> {
    let [nx, ny, nz] = divisions;
    if nx == 0 || ny == 0 || nz == 0 {
        return Err(GelError::InvalidModel(format!(
            "mesh divisions must be >= 1, got ({nx}, {ny}, {nz})"
        )));
    }
    if lengths.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
        return Err(GelError::InvalidModel(format!(
            "mesh lengths must be positive, got {lengths:?}"
        )));
    }
    let id = |i: usize, j: usize, k: usize| i + (nx + 1) * (j + (ny + 1) * k);
    let mut nodes = Vec::with_capacity((nx + 1) * (ny + 1) * (nz + 1));
    for k in 0..=nz {
        for j in 0..=ny {
            for i in 0..=nx {
                nodes.push(Vector3::new(
                    lengths[0] * i as f64 / nx as f64,
                    lengths[1] * j as f64 / ny as f64,
                    lengths[2] * k as f64 / nz as f64,
                ));
            }
        }
    }
    let mut elements = Vec::with_capacity(nx * ny * nz);
    for k in 0..nz {
        for j in 0..ny {
            for i in 0..nx {
                elements.push(Hex8Element::new([
                    id(i, j, k),
                    id(i + 1, j, k),
                    id(i + 1, j + 1, k),
                    id(i, j + 1, k),
                    id(i, j, k + 1),
                    id(i + 1, j, k + 1),
                    id(i + 1, j + 1, k + 1),
                    id(i, j + 1, k + 1),
                ]));
            }
        }
    }
    Ok((nodes, elements))
}

/// Mesh volume by quadrature of the reference Jacobian.
pub fn mesh_volume(nodes: &[Vector3<f64>], elements: &[Hex8Element]) -> Result<f64> {
    let mut vol = 0.0;
    for (e, el) in elements.iter().enumerate() {
        let coords = el.gather(nodes);
        for gp in element::gauss_point_data(&coords, el.gauss_rule).map_err(|err| err.in_element(e))? {
            vol += gp.weight * gp.jxi;
        }
    }
    Ok(vol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        [Axis::X, Axis::Y, Axis::Z].get(i).copied()
    }
}

impl FromStr for Axis {
    type Err = GelError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            other => Err(GelError::Parse(format!("unknown axis '{other}' (expected x, y or z)"))),
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        })
    }
}

/// Conjunction of axis-aligned plane predicates, e.g. `X==0 & Y==2`.
/// The empty conjunction (`all`) selects every node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct NodeSelector {
    planes: Vec<(Axis, f64)>,
}

impl NodeSelector {
    pub fn all() -> Self {
        Self { planes: Vec::new() }
    }

    pub fn plane(axis: Axis, value: f64) -> Self {
        Self {
            planes: vec![(axis, value)],
        }
    }

    pub fn and(mut self, axis: Axis, value: f64) -> Self {
        self.planes.push((axis, value));
        self
    }

    pub fn matches(&self, x: &Vector3<f64>) -> bool {
        self.planes
            .iter()
            .all(|&(axis, v)| (x[axis.index()] - v).abs() <= SELECTOR_TOL)
    }

    pub fn select(&self, nodes: &[Vector3<f64>]) -> Vec<usize> {
        nodes
            .iter()
            .enumerate()
            .filter(|(_, x)| self.matches(x))
            .map(|(i, _)| i)
            .collect()
    }
}

impl FromStr for NodeSelector {
    type Err = GelError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("all") {
            return Ok(Self::all());
        }
        let mut sel = Self::all();
        for term in s.split('&') {
            let (lhs, rhs) = term.split_once("==").ok_or_else(|| {
                GelError::Parse(format!("selector term '{}' is not of the form AXIS==VALUE", term.trim()))
            })?;
            let axis: Axis = lhs.parse()?;
            let value: f64 = rhs.trim().parse().map_err(|_| {
                GelError::Parse(format!("selector value '{}' is not a number", rhs.trim()))
            })?;
            sel = sel.and(axis, value);
        }
        Ok(sel)
    }
}

impl TryFrom<String> for NodeSelector {
    type Error = GelError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<NodeSelector> for String {
    fn from(s: NodeSelector) -> Self {
        s.to_string()
    }
}

impl fmt::Display for NodeSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.planes.is_empty() {
            return f.write_str("all");
        }
        let terms: Vec<String> = self
            .planes
            .iter()
            .map(|(a, v)| format!("{}=={v:?}", a.to_string().to_uppercase()))
            .collect();
        f.write_str(&terms.join(" & "))
    }
}

/// Nodal weights `∫ N_I dA` over all element faces whose four nodes match
/// `face`, summed per node. Returns `(node, weight)` sorted by node id and the
/// total face area.
pub fn face_area_weights(
    nodes: &[Vector3<f64>],
    elements: &[Hex8Element],
    face: &NodeSelector,
) -> (Vec<(usize, f64)>, f64) {
    let (pts, wts) = element::gauss_legendre(2).expect("2-point rule exists");
    let mut acc = std::collections::BTreeMap::<usize, f64>::new();
    let mut area = 0.0;
    for el in elements {
        for f in FACES {
            let ids = f.map(|a| el.node_ids[a]);
            if !ids.iter().all(|&n| face.matches(&nodes[n])) {
                continue;
            }
            let x = ids.map(|n| nodes[n]);
            for (i, &s) in pts.iter().enumerate() {
                for (j, &t) in pts.iter().enumerate() {
                    let n = [
                        0.25 * (1.0 - s) * (1.0 - t),
                        0.25 * (1.0 + s) * (1.0 - t),
                        0.25 * (1.0 + s) * (1.0 + t),
                        0.25 * (1.0 - s) * (1.0 + t),
                    ];
                    let dn_ds = [-0.25 * (1.0 - t), 0.25 * (1.0 - t), 0.25 * (1.0 + t), -0.25 * (1.0 + t)];
                    let dn_dt = [-0.25 * (1.0 - s), -0.25 * (1.0 + s), 0.25 * (1.0 + s), 0.25 * (1.0 - s)];
                    let mut a1 = Vector3::zeros();
                    let mut a2 = Vector3::zeros();
                    for k in 0..4 {
                        a1 += x[k] * dn_ds[k];
                        a2 += x[k] * dn_dt[k];
                    }
                    let da = a1.cross(&a2).norm() * wts[i] * wts[j];
                    area += da;
                    for k in 0..4 {
                        *acc.entry(ids[k]).or_insert(0.0) += n[k] * da;
                    }
                }
            }
        }
    }
    (acc.into_iter().collect(), area)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_shared_nodes() {
        let (n, e) = generate_cube_mesh(1, 1, 1, 2.0).unwrap();
        assert_eq!((n.len(), e.len()), (8, 1));
        assert_eq!(n[7], Vector3::new(2.0, 2.0, 2.0));
        assert_eq!(e[0].node_ids[6], 7);
        let (n, e) = generate_cube_mesh(2, 1, 1, 2.0).unwrap();
        assert_eq!((n.len(), e.len()), (12, 2));
        let shared = e[0].node_ids.iter().filter(|id| e[1].node_ids.contains(id)).count();
        assert_eq!(shared, 4);
        assert!(generate_cube_mesh(0, 1, 1, 1.0).is_err());
        assert!(generate_cube_mesh(1, 1, 1, -1.0).is_err());
    }

    #[test]
    fn volume_by_quadrature() {
        let (n, e) = generate_cube_mesh(3, 2, 4, 2.0).unwrap();
        assert!((mesh_volume(&n, &e).unwrap() - 8.0).abs() < 1e-12);
    }

    #[test]
    fn selector_parse_and_display() {
        let s: NodeSelector = "X==0 & z == 2.5".parse().unwrap();
        assert_eq!(s, NodeSelector::plane(Axis::X, 0.0).and(Axis::Z, 2.5));
        assert_eq!(s.to_string().parse::<NodeSelector>().unwrap(), s);
        assert_eq!("all".parse::<NodeSelector>().unwrap(), NodeSelector::all());
        assert!("X=0".parse::<NodeSelector>().is_err());
        assert!("W==0".parse::<NodeSelector>().is_err());
        assert!("X==abc".parse::<NodeSelector>().is_err());
    }

    #[test]
    fn face_weights_on_refined_face() {
        let (n, e) = generate_cube_mesh(2, 2, 1, 2.0).unwrap();
        let (w, area) = face_area_weights(&n, &e, &NodeSelector::plane(Axis::Z, 2.0));
        assert!((area - 4.0).abs() < 1e-14);
        assert_eq!(w.len(), 9);
        let total: f64 = w.iter().map(|p| p.1).sum();
        assert!((total - 4.0).abs() < 1e-14);
        // Corner 1/4 of a 1×1 face, center node touches four faces.
        let corner = w.iter().find(|p| p.0 == 9).unwrap().1;
        let center = w.iter().find(|p| p.0 == 13).unwrap().1;
        assert!((corner - 0.25).abs() < 1e-14);
        assert!((center - 1.0).abs() < 1e-14);
    }
}
