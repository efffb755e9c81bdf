//! Global assembly, Dirichlet elimination and Newton-Raphson continuation.
//!
//! Each load step solves `(K_mat + K_geo) ΔU = R − F` over the free dofs,
//! with prescribed dofs held exactly at their scaled values. Steps that fail
//! are split in half recursively up to `SolverSettings::max_bisection_depth`.

use nalgebra::{DMatrix, DVector, Vector3};
use nalgebra_sparse::factorization::CscCholesky;
use nalgebra_sparse::{CooMatrix, CscMatrix};

use crate::element::{self, GaussPointResult, Hex8Element};
use crate::error::{GelError, Result};
use crate::material::MaterialParams;
use crate::mesh::Axis;

/// Below this many free dofs the linear system is solved densely.
pub const DENSE_SOLVE_LIMIT: usize = 300;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirichletBc {
    pub node: usize,
    pub dof: Axis,
    /// Prescribed displacement at load factor 1.
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NodalLoad {
    pub node: usize,
    pub dof: Axis,
    /// Force at load factor 1, in kT/v times length².
    pub force: f64,
}

/// Sequence of (μ/kT, load factor) states, the first being the stress-free start.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationSchedule {
    pub mu_path: Vec<f64>,
    pub load_factor_path: Vec<f64>,
}

impl ContinuationSchedule {
    /// `n_steps` equally spaced states from `(mu0, 0)` to `(mu_target, 1)`.
    /// A single-state schedule holds only the starting state.
    pub fn linear(mu0: f64, mu_target: f64, n_steps: usize) -> Result<Self> {
        if n_steps == 0 {
            return Err(GelError::InvalidModel("schedule needs n_steps >= 1".into()));
        }
        let t = |k: usize| {
            if n_steps == 1 {
                0.0
            } else {
                k as f64 / (n_steps - 1) as f64
            }
        };
        Ok(Self {
            mu_path: (0..n_steps).map(|k| mu0 + (mu_target - mu0) * t(k)).collect(),
            load_factor_path: (0..n_steps).map(t).collect(),
        })
    }

    /// Constant chemical potential, load factor ramped over `n_steps` states.
    pub fn load_ramp(mu: f64, n_steps: usize) -> Result<Self> {
        let mut s = Self::linear(mu, mu, n_steps)?;
        s.mu_path.iter_mut().for_each(|m| *m = mu);
        Ok(s)
    }

    pub fn n_steps(&self) -> usize {
        self.mu_path.len()
    }

    pub fn validate(&self, mu0: f64) -> Result<()> {
        if self.mu_path.is_empty() || self.mu_path.len() != self.load_factor_path.len() {
            return Err(GelError::InvalidModel(format!(
                "schedule paths must be non-empty and of equal length (mu: {}, factor: {})",
                self.mu_path.len(),
                self.load_factor_path.len()
            )));
        }
        if self.mu_path[0] != mu0 || self.load_factor_path[0] != 0.0 {
            return Err(GelError::InvalidModel(format!(
                "schedule must start at the reference state (mu0 = {mu0}, factor 0), got ({}, {})",
                self.mu_path[0], self.load_factor_path[0]
            )));
        }
        if let Some(m) = self.mu_path.iter().find(|m| !(**m <= 0.0)) {
            return Err(GelError::InvalidModel(format!("schedule mu/kT must be <= 0, got {m}")));
        }
        if let Some(f) = self
            .load_factor_path
            .iter()
            .find(|f| !(0.0..=1.0).contains(*f))
        {
            return Err(GelError::InvalidModel(format!(
                "load factors must lie in [0, 1], got {f}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverSettings {
    /// Relative force-residual tolerance, scaled by max(1, ‖R‖).
    pub rtol: f64,
    /// Absolute tolerance on the Newton increment norm.
    pub atol_u: f64,
    pub max_iterations: usize,
    /// Maximum halvings of a rejected Newton update.
    pub max_halvings: usize,
    /// A trial update is rejected if it raises the residual by more than this factor.
    pub residual_growth_limit: f64,
    pub max_bisection_depth: usize,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol_u: 1e-12,
            max_iterations: 30,
            max_halvings: 8,
            residual_growth_limit: 10.0,
            max_bisection_depth: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    /// Reference (free-swelling) coordinates.
    pub nodes: Vec<Vector3<f64>>,
    pub elements: Vec<Hex8Element>,
    pub dirichlet: Vec<DirichletBc>,
    pub loads: Vec<NodalLoad>,
    pub params: MaterialParams,
    pub schedule: ContinuationSchedule,
    pub settings: SolverSettings,
}

pub fn dof_index(node: usize, dof: Axis) -> usize {
    3 * node + dof.index()
}

impl Model {
    pub fn n_dofs(&self) -> usize {
        3 * self.nodes.len()
    }

    /// Checks indices, constraint uniqueness and the schedule. Rigid-body
    /// coverage is checked separately by [`Model::check_rigid_body_constraints`].
    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        for (e, el) in self.elements.iter().enumerate() {
            if let Some(id) = el.node_ids.iter().find(|&&id| id >= n) {
                return Err(GelError::InvalidModel(format!(
                    "element {e} references node {id}, mesh has {n} nodes"
                )));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for bc in &self.dirichlet {
            if bc.node >= n {
                return Err(GelError::InvalidModel(format!("constraint on missing node {}", bc.node)));
            }
            if !seen.insert((bc.node, bc.dof)) {
                return Err(GelError::InvalidModel(format!(
                    "node {} dof {} is constrained more than once",
                    bc.node, bc.dof
                )));
            }
        }
        if let Some(l) = self.loads.iter().find(|l| l.node >= n) {
            return Err(GelError::InvalidModel(format!("load on missing node {}", l.node)));
        }
        self.schedule.validate(self.params.mu0_bar)
    }

    /// Fails with a singular-system error unless the constraints remove all
    /// six rigid-body modes.
    pub fn check_rigid_body_constraints(&self) -> Result<()> {
        if self.nodes.is_empty() {
            return Err(GelError::SingularSystem("mesh has no nodes".into()));
        }
        let centroid = self.nodes.iter().sum::<Vector3<f64>>() / self.nodes.len() as f64;
        let scale = self
            .nodes
            .iter()
            .map(|x| (x - centroid).norm())
            .fold(0.0, f64::max)
            .max(1.0);
        let mut modes = DMatrix::zeros(self.dirichlet.len(), 6);
        for (r, bc) in self.dirichlet.iter().enumerate() {
            let x = (self.nodes[bc.node] - centroid) / scale;
            let d = bc.dof.index();
            modes[(r, d)] = 1.0;
            for (m, axis) in [Vector3::x(), Vector3::y(), Vector3::z()].iter().enumerate() {
                modes[(r, 3 + m)] = axis.cross(&x)[d];
            }
        }
        let rank = if self.dirichlet.is_empty() {
            0
        } else {
            modes.svd(false, false).rank(1e-10)
        };
        if rank < 6 {
            return Err(GelError::SingularSystem(format!(
                "constraints leave {} rigid-body mode(s) unrestrained",
                6 - rank
            )));
        }
        Ok(())
    }

    fn free_dof_map(&self) -> (Vec<Option<usize>>, usize) {
        let mut map: Vec<Option<usize>> = vec![Some(0); self.n_dofs()];
        for bc in &self.dirichlet {
            map[dof_index(bc.node, bc.dof)] = None;
        }
        let mut next = 0;
        for slot in map.iter_mut().flatten() {
            *slot = next;
            next += 1;
        }
        (map, next)
    }

    /// Global external force vector at load factor 1.
    pub fn load_vector(&self) -> DVector<f64> {
        let mut r = DVector::zeros(self.n_dofs());
        for l in &self.loads {
            r[dof_index(l.node, l.dof)] += l.force;
        }
        r
    }

    fn nodal_field(&self, u: &DVector<f64>) -> Vec<Vector3<f64>> {
        (0..self.nodes.len())
            .map(|i| Vector3::new(u[3 * i], u[3 * i + 1], u[3 * i + 2]))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Assembly {
    pub stiffness: Option<CscMatrix<f64>>,
    pub f_int: DVector<f64>,
    pub energy: f64,
    /// Gauss-point fields per element.
    pub gauss: Vec<Vec<GaussPointResult>>,
}

fn assemble_impl(model: &Model, u: &DVector<f64>, mu_bar: f64, with_stiffness: bool) -> Result<Assembly> {
    let params = model.params.with_mu(mu_bar);
    let disp = model.nodal_field(u);
    let n = model.n_dofs();
    let mut f_int = DVector::zeros(n);
    let mut coo = CooMatrix::new(n, n);
    let mut energy = 0.0;
    let mut gauss = Vec::with_capacity(model.elements.len());
    let mut failures = Vec::new();
    for (e, el) in model.elements.iter().enumerate() {
        let coords = el.gather(&model.nodes);
        let ue = el.gather(&disp);
        let resp = match element::evaluate(&coords, &ue, &params, el.gauss_rule, with_stiffness) {
            Ok(r) => r,
            Err(err) => {
                failures.push(err.in_element(e));
                continue;
            }
        };
        let dofs: Vec<usize> = el
            .node_ids
            .iter()
            .flat_map(|&nid| (0..3).map(move |d| 3 * nid + d))
            .collect();
        for (a, &ga) in dofs.iter().enumerate() {
            f_int[ga] += resp.f_int[a];
            if with_stiffness {
                for (b, &gb) in dofs.iter().enumerate() {
                    coo.push(ga, gb, resp.stiffness[(a, b)]);
                }
            }
        }
        energy += resp.energy;
        gauss.push(resp.gauss);
    }
    match failures.len() {
        0 => {}
        1 => return Err(failures.pop().expect("one failure")),
        _ => return Err(GelError::ElementFailures(failures)),
    }
    Ok(Assembly {
        stiffness: with_stiffness.then(|| CscMatrix::from(&coo)),
        f_int,
        energy,
        gauss,
    })
}

/// Global tangent stiffness and internal force at displacement `u`.
pub fn assemble(model: &Model, u: &DVector<f64>, mu_bar: f64) -> Result<Assembly> {
    assemble_impl(model, u, mu_bar, true)
}

/// Internal force, energy and Gauss-point fields without the stiffness.
pub fn assemble_forces(model: &Model, u: &DVector<f64>, mu_bar: f64) -> Result<Assembly> {
    assemble_impl(model, u, mu_bar, false)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reaction {
    pub node: usize,
    pub dof: Axis,
    pub force: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolutionState {
    pub mu_bar: f64,
    pub load_factor: f64,
    /// Nodal displacements from the free-swelling reference, node-major.
    pub u: DVector<f64>,
    /// Free-dof residual norm before each Newton solve, ending with the converged value.
    pub residual_history: Vec<f64>,
    pub iterations: usize,
    /// Number of sub-steps used to reach this state (1 when no bisection was needed).
    pub substeps: usize,
    pub gp_fields: Vec<Vec<GaussPointResult>>,
    pub reactions: Vec<Reaction>,
}

impl SolutionState {
    pub fn displacement(&self, node: usize) -> Vector3<f64> {
        Vector3::new(self.u[3 * node], self.u[3 * node + 1], self.u[3 * node + 2])
    }

    pub fn final_residual(&self) -> f64 {
        self.residual_history.last().copied().unwrap_or(0.0)
    }
}

fn restrict(v: &DVector<f64>, map: &[Option<usize>], n_free: usize) -> DVector<f64> {
    let mut out = DVector::zeros(n_free);
    for (g, slot) in map.iter().enumerate() {
        if let Some(i) = slot {
            out[*i] = v[g];
        }
    }
    out
}

fn restrict_matrix(k: &CscMatrix<f64>, map: &[Option<usize>], n_free: usize) -> CscMatrix<f64> {
    let mut coo = CooMatrix::new(n_free, n_free);
    for (i, j, v) in k.triplet_iter() {
        if let (Some(a), Some(b)) = (map[i], map[j]) {
            coo.push(a, b, *v);
        }
    }
    CscMatrix::from(&coo)
}

fn solve_dense(k: &CscMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    let dense = DMatrix::from(k);
    let lu = dense.full_piv_lu();
    let u = lu.u();
    let diag = u.diagonal().map(f64::abs);
    let (max, min) = (diag.max(), diag.min());
    if !(min > 1e-14 * max) {
        return Err(GelError::SingularSystem(format!(
            "tangent stiffness is rank deficient (pivot ratio {:.3e})",
            if max > 0.0 { min / max } else { 0.0 }
        )));
    }
    lu.solve(rhs)
        .ok_or_else(|| GelError::SingularSystem("tangent stiffness is singular".into()))
}

/// Solves the reduced tangent system, sparse Cholesky above the dense limit.
pub fn solve_linear(k: &CscMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    if k.nrows() == 0 {
        return Ok(DVector::zeros(0));
    }
    if k.nrows() < DENSE_SOLVE_LIMIT {
        return solve_dense(k, rhs);
    }
    match CscCholesky::factor(k) {
        Ok(chol) => Ok(chol.solve(rhs).column(0).into_owned()),
        Err(_) => {
            log::debug!("sparse Cholesky failed (indefinite tangent), falling back to dense LU");
            solve_dense(k, rhs)
        }
    }
}

/// Newton-Raphson equilibrium at `(mu_bar, load_factor)`, warm-started from `u_prev`.
pub fn solve_step(
    model: &Model,
    u_prev: &DVector<f64>,
    mu_bar: f64,
    load_factor: f64,
) -> Result<SolutionState> {
    let settings = &model.settings;
    let (map, n_free) = model.free_dof_map();
    let f_ext = model.load_vector() * load_factor;
    let f_ext_free = restrict(&f_ext, &map, n_free);
    let tol = settings.rtol * f_ext_free.norm().max(1.0);

    let mut u = u_prev.clone();
    for bc in &model.dirichlet {
        u[dof_index(bc.node, bc.dof)] = load_factor * bc.value;
    }

    let mut asm = assemble(model, &u, mu_bar)?;
    let mut history = Vec::new();
    let mut iterations = 0;
    loop {
        let residual = &f_ext_free - restrict(&asm.f_int, &map, n_free);
        let rnorm = residual.norm();
        history.push(rnorm);
        if !rnorm.is_finite() {
            return Err(GelError::NonConvergence {
                iterations,
                residual: rnorm,
                reason: "residual is not finite".into(),
            });
        }
        let k_free = restrict_matrix(asm.stiffness.as_ref().expect("assembled with stiffness"), &map, n_free);
        let du = solve_linear(&k_free, &residual)?;
        // Converged when both the residual and the Newton correction it implies are small.
        if rnorm < tol && du.norm() < settings.atol_u {
            break;
        }
        if iterations == settings.max_iterations {
            return Err(GelError::NonConvergence {
                iterations,
                residual: rnorm,
                reason: "iteration limit reached".into(),
            });
        }
        iterations += 1;

        let mut alpha = 1.0;
        let mut accepted = None;
        for _ in 0..=settings.max_halvings {
            let mut trial = u.clone();
            for (g, slot) in map.iter().enumerate() {
                if let Some(i) = slot {
                    trial[g] += alpha * du[*i];
                }
            }
            if let Ok(trial_asm) = assemble(model, &trial, mu_bar) {
                let trial_r = (&f_ext_free - restrict(&trial_asm.f_int, &map, n_free)).norm();
                if trial_r <= settings.residual_growth_limit * rnorm.max(tol) {
                    accepted = Some((trial, trial_asm));
                    break;
                }
            }
            alpha *= 0.5;
        }
        let Some((trial, trial_asm)) = accepted else {
            return Err(GelError::NonConvergence {
                iterations,
                residual: rnorm,
                reason: format!(
                    "update rejected after {} halvings (inadmissible state or residual growth)",
                    settings.max_halvings
                ),
            });
        };
        u = trial;
        asm = trial_asm;
    }

    let reactions = model
        .dirichlet
        .iter()
        .map(|bc| {
            let g = dof_index(bc.node, bc.dof);
            Reaction {
                node: bc.node,
                dof: bc.dof,
                force: asm.f_int[g] - f_ext[g],
            }
        })
        .collect();
    Ok(SolutionState {
        mu_bar,
        load_factor,
        u,
        residual_history: history,
        iterations,
        substeps: 1,
        gp_fields: asm.gauss,
        reactions,
    })
}

fn advance(
    model: &Model,
    from: &SolutionState,
    target: (f64, f64),
    depth: usize,
) -> Result<SolutionState> {
    match solve_step(model, &from.u, target.0, target.1) {
        Ok(state) => Ok(state),
        Err(err) if err.is_recoverable() && depth < model.settings.max_bisection_depth => {
            log::debug!(
                "step to (mu = {}, factor = {}) failed at depth {depth}: {err}; bisecting",
                target.0,
                target.1
            );
            let mid = (
                0.5 * (from.mu_bar + target.0),
                0.5 * (from.load_factor + target.1),
            );
            let half = advance(model, from, mid, depth + 1)?;
            let mut end = advance(model, &half, target, depth + 1)?;
            end.substeps += half.substeps;
            Ok(end)
        }
        Err(err) if err.is_recoverable() => Err(GelError::ContinuationFailed {
            last_mu: from.mu_bar,
            last_factor: from.load_factor,
            source: Box::new(err),
        }),
        Err(err) => Err(err),
    }
}

/// Runs the schedule, returning one converged state per schedule entry.
pub fn run_continuation(model: &Model) -> Result<Vec<SolutionState>> {
    model.validate()?;
    model.check_rigid_body_constraints()?;
    let schedule = &model.schedule;
    let start = solve_step(
        model,
        &DVector::zeros(model.n_dofs()),
        schedule.mu_path[0],
        schedule.load_factor_path[0],
    )?;
    let mut states = vec![start];
    for (&mu, &factor) in schedule.mu_path.iter().zip(&schedule.load_factor_path).skip(1) {
        let prev = states.last().expect("non-empty");
        let next = advance(model, prev, (mu, factor), 0)?;
        states.push(next);
    }
    Ok(states)
}
