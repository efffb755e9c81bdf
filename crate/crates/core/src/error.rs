use thiserror::Error;

pub type Result<T> = std::result::Result<T, GelError>;

/// Process exit codes used by the `gelfem` driver.
pub mod exit_code {
    pub const SUCCESS: i32 = 0;
    pub const IO: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const CONVERGENCE: i32 = 3;
    pub const INADMISSIBLE: i32 = 4;
    pub const SINGULAR: i32 = 5;
    /// `verify` ran to completion but at least one check exceeded its tolerance.
    pub const CHECK_FAILED: i32 = 6;
}

#[derive(Debug, Error)]
pub enum GelError {
    #[error("parameter domain error: {0}")]
    ParameterDomain(String),

    #[error("no root of {equation} in [{lo}, {hi}]: {reason}")]
    NoRoot {
        equation: &'static str,
        lo: f64,
        hi: f64,
        reason: String,
    },

    #[error("total volume at/below dry network (lambda0^3 * J' = {total_jacobian:.6e}){}", location(*.element, *.gauss_point))]
    Inadmissible {
        total_jacobian: f64,
        element: Option<usize>,
        gauss_point: Option<usize>,
    },

    #[error("inverted element: reference Jacobian {jacobian:.6e}{}", location(*.element, *.gauss_point))]
    InvertedElement {
        jacobian: f64,
        element: Option<usize>,
        gauss_point: Option<usize>,
    },

    #[error("Newton iteration did not converge after {iterations} iterations (last residual {residual:.6e}): {reason}")]
    NonConvergence {
        iterations: usize,
        residual: f64,
        reason: String,
    },

    #[error("{} element(s) failed: {}", .0.len(), .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    ElementFailures(Vec<GelError>),

    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("continuation failed after last good state (mu_bar = {last_mu}, load factor = {last_factor}): {source}")]
    ContinuationFailed {
        last_mu: f64,
        last_factor: f64,
        #[source]
        source: Box<GelError>,
    },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn location(element: Option<usize>, gauss_point: Option<usize>) -> String {
    match (element, gauss_point) {
        (Some(e), Some(g)) => format!(" at element {e}, Gauss point {g}"),
        (Some(e), None) => format!(" at element {e}"),
        (None, Some(g)) => format!(" at Gauss point {g}"),
        (None, None) => String::new(),
    }
}

impl GelError {
    /// Attaches an element index to point-level errors raised inside an element routine.
    pub fn in_element(self, id: usize) -> Self {
        match self {
            GelError::Inadmissible {
                total_jacobian,
                gauss_point,
                ..
            } => GelError::Inadmissible {
                total_jacobian,
                element: Some(id),
                gauss_point,
            },
            GelError::InvertedElement {
                jacobian,
                gauss_point,
                ..
            } => GelError::InvertedElement {
                jacobian,
                element: Some(id),
                gauss_point,
            },
            other => other,
        }
    }

    pub(crate) fn at_gauss_point(self, gp: usize) -> Self {
        match self {
            GelError::Inadmissible {
                total_jacobian,
                element,
                ..
            } => GelError::Inadmissible {
                total_jacobian,
                element,
                gauss_point: Some(gp),
            },
            other => other,
        }
    }

    /// Whether a failed load step may succeed when split into smaller steps.
    pub fn is_recoverable(&self) -> bool {
        match self {
            GelError::NonConvergence { .. } | GelError::Inadmissible { .. } => true,
            GelError::ElementFailures(list) => list.iter().all(GelError::is_recoverable),
            _ => false,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            GelError::Parse(_) | GelError::InvalidModel(_) | GelError::ParameterDomain(_) => {
                exit_code::PARSE
            }
            GelError::NoRoot { .. } => exit_code::PARSE,
            GelError::Inadmissible { .. } | GelError::InvertedElement { .. } => {
                exit_code::INADMISSIBLE
            }
            GelError::NonConvergence { .. } => exit_code::CONVERGENCE,
            GelError::SingularSystem(_) => exit_code::SINGULAR,
            GelError::ElementFailures(list) => list
                .first()
                .map_or(exit_code::INADMISSIBLE, GelError::exit_code),
            GelError::ContinuationFailed { source, .. } => match source.exit_code() {
                exit_code::INADMISSIBLE => exit_code::INADMISSIBLE,
                exit_code::SINGULAR => exit_code::SINGULAR,
                _ => exit_code::CONVERGENCE,
            },
            GelError::Io(_) => exit_code::IO,
        }
    }
}
