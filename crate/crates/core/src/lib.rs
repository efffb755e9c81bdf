//! Total-Lagrangian finite elements for Flory-Rehner gels in equilibrium
//! with a solvent and mechanical load.
//!
//! Displacements are measured from the free-swelling state, so the dry-network
//! singularity of the free energy never enters the computation. Stresses and
//! energies are dimensionless (units of kT/v).

// Guards written as `!(x > 0.0)` reject NaN too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod benchmarks;
pub mod cli;
pub mod element;
pub mod error;
pub mod io;
pub mod material;
pub mod mesh;
mod roots;
pub mod solver;
pub mod verify;
pub mod voigt;

pub use error::{GelError, Result};
pub use material::{DeformationState, MaterialParams, StressTangent};
pub use solver::{ContinuationSchedule, Model, SolutionState, SolverSettings};
