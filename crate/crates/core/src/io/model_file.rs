//! TOML model description.
//!
//! ```toml
//! [material]
//! Nv = 0.001
//! chi = 0.1
//! mu0_bar = -0.05
//! mu_target = 0.0
//!
//! [mesh]
//! generator = "cube(1,1,1,2.0)"
//!
//! [[bcs]]
//! selector = "X==0"
//! dof = "x"
//! value = 0.0
//!
//! [[face_loads]]
//! face = "X==2"
//! dof = "x"
//! force = 0.001
//!
//! [schedule]
//! n_steps = 10
//! ```
//!
//! `[mesh]` takes either a `generator` or inline `nodes` and `elements`.
//! `[[loads]]` split their total force equally over the selected nodes;
//! `[[face_loads]]` distribute it consistently over the selected face area.

use std::collections::BTreeMap;
use std::path::Path;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::element::Hex8Element;
use crate::error::{GelError, Result};
use crate::material::MaterialParams;
use crate::mesh::{self, Axis, NodeSelector};
use crate::solver::{ContinuationSchedule, DirichletBc, Model, NodalLoad, SolverSettings};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub material: MaterialSection,
    pub mesh: MeshSection,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub bcs: Vec<BcEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub loads: Vec<LoadEntry>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub face_loads: Vec<FaceLoadEntry>,
    pub schedule: ScheduleSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaterialSection {
    #[serde(rename = "Nv")]
    pub nv: f64,
    pub chi: f64,
    /// Chemical potential of the free-swelling reference.
    pub mu0_bar: f64,
    /// Chemical potential at the end of the schedule; defaults to `mu0_bar`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu_target: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<[f64; 3]>>,
    /// Corner node ids in VTK hexahedron order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<[usize; 8]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BcEntry {
    pub selector: NodeSelector,
    pub dof: Axis,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoadEntry {
    pub selector: NodeSelector,
    pub dof: Axis,
    /// Total force, shared equally by the selected nodes.
    pub force: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceLoadEntry {
    pub face: NodeSelector,
    pub dof: Axis,
    /// Total force, distributed as a uniform traction over the face.
    pub force: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleSection {
    pub n_steps: usize,
}

/// Parses `cube(nx,ny,nz,L)`.
pub fn parse_generator(spec: &str) -> Result<([usize; 3], f64)> {
    let bad = || GelError::Parse(format!("mesh generator '{spec}' is not of the form cube(nx,ny,nz,L)"));
    let inner = spec
        .trim()
        .strip_prefix("cube(")
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(bad)?;
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(bad());
    }
    let mut div = [0usize; 3];
    for (d, p) in div.iter_mut().zip(&parts) {
        *d = p.parse().map_err(|_| bad())?;
    }
    let l = parts[3].parse().map_err(|_| bad())?;
    Ok((div, l))
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| GelError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text).map_err(|e| match e {
            GelError::Parse(msg) => GelError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| GelError::Parse(e.to_string()))
    }

    /// Nodes and elements, from the generator or the inline lists.
    pub fn mesh(&self) -> Result<(Vec<Vector3<f64>>, Vec<Hex8Element>)> {
        let m = &self.mesh;
        match (&m.generator, &m.nodes, &m.elements) {
            (Some(spec), None, None) => {
                let ([nx, ny, nz], l) = parse_generator(spec)?;
                mesh::generate_cube_mesh(nx, ny, nz, l)
            }
            (None, Some(nodes), Some(elements)) => Ok((
                nodes.iter().map(|p| Vector3::from(*p)).collect(),
                elements.iter().map(|ids| Hex8Element::new(*ids)).collect(),
            )),
            _ => Err(GelError::Parse(
                "[mesh] needs either `generator` or both `nodes` and `elements`".into(),
            )),
        }
    }

    /// Same model with the mesh written out node by node.
    pub fn with_inline_mesh(&self) -> Result<Self> {
        let (nodes, elements) = self.mesh()?;
        Ok(Self {
            mesh: MeshSection {
                generator: None,
                nodes: Some(nodes.iter().map(|x| [x[0], x[1], x[2]]).collect()),
                elements: Some(elements.iter().map(|e| e.node_ids).collect()),
            },
            ..self.clone()
        })
    }

    pub fn to_model(&self) -> Result<Model> {
        let mat = &self.material;
        let params = MaterialParams::new(mat.nv, mat.chi, mat.mu0_bar)?;
        let (nodes, elements) = self.mesh()?;

        let mut constrained = BTreeMap::<(usize, Axis), f64>::new();
        for bc in &self.bcs {
            for node in select_nonempty(&bc.selector, &nodes)? {
                match constrained.insert((node, bc.dof), bc.value) {
                    Some(prev) if prev != bc.value => {
                        return Err(GelError::InvalidModel(format!(
                            "node {node} dof {} prescribed both {prev} and {}",
                            bc.dof, bc.value
                        )))
                    }
                    _ => {}
                }
            }
        }
        let dirichlet = constrained
            .into_iter()
            .map(|((node, dof), value)| DirichletBc { node, dof, value })
            .collect();

        let mut loads = Vec::new();
        for l in &self.loads {
            let sel = select_nonempty(&l.selector, &nodes)?;
            let share = l.force / sel.len() as f64;
            loads.extend(sel.into_iter().map(|node| NodalLoad {
                node,
                dof: l.dof,
                force: share,
            }));
        }
        for fl in &self.face_loads {
            let (weights, area) = mesh::face_area_weights(&nodes, &elements, &fl.face);
            if weights.is_empty() || !(area > 0.0) {
                return Err(GelError::InvalidModel(format!(
                    "face selector '{}' matches no element face",
                    fl.face
                )));
            }
            loads.extend(weights.into_iter().map(|(node, w)| NodalLoad {
                node,
                dof: fl.dof,
                force: fl.force * w / area,
            }));
        }

        let schedule = ContinuationSchedule::linear(
            mat.mu0_bar,
            mat.mu_target.unwrap_or(mat.mu0_bar),
            self.schedule.n_steps,
        )?;
        let model = Model {
            nodes,
            elements,
            dirichlet,
            loads,
            params,
            schedule,
            settings: SolverSettings::default(),
        };
        model.validate()?;
        Ok(model)
    }
}

fn select_nonempty(sel: &NodeSelector, nodes: &[Vector3<f64>]) -> Result<Vec<usize>> {
    let ids = sel.select(nodes);
    if ids.is_empty() {
        return Err(GelError::InvalidModel(format!("selector '{sel}' matches no nodes")));
    }
    Ok(ids)
}

/// Free-swelling cube on a generated mesh with symmetry rollers on the
/// three coordinate planes, swept from `mu0_bar` to `mu_target`.
pub fn free_swell_cube(
    nv: f64,
    chi: f64,
    mu0_bar: f64,
    mu_target: f64,
    divisions: [usize; 3],
    edge: f64,
    n_steps: usize,
) -> ModelFile {
    let [nx, ny, nz] = divisions;
    ModelFile {
        material: MaterialSection {
            nv,
            chi,
            mu0_bar,
            mu_target: Some(mu_target),
        },
        mesh: MeshSection {
            generator: Some(format!("cube({nx},{ny},{nz},{edge:?})")),
            ..Default::default()
        },
        bcs: [Axis::X, Axis::Y, Axis::Z]
            .into_iter()
            .map(|axis| BcEntry {
                selector: NodeSelector::plane(axis, 0.0),
                dof: axis,
                value: 0.0,
            })
            .collect(),
        loads: Vec::new(),
        face_loads: Vec::new(),
        schedule: ScheduleSection { n_steps },
    }
}
