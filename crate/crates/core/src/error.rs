use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension must be at least 2, got {0}")]
    Dimension(usize),
    #[error("side length must be at least {min}, got {got}")]
    Side { min: usize, got: usize },
    #[error("edge index {0} is not an edge of the lattice")]
    UnknownEdge(usize),
    #[error("basis is not orthonormal: gram deviation {deviation:e} exceeds {tolerance:e}")]
    NotOrthonormal { deviation: f64, tolerance: f64 },
    #[error("operator is singular: {count} eigenvalue(s) at or below {tolerance:e}")]
    SingularOperator { count: usize, tolerance: f64 },
    #[error("eigenvalue iteration did not converge at index {index} after {iterations} sweeps")]
    NoConvergence { index: usize, iterations: usize },
    #[error("embedding margin must be at least 2, got {0}")]
    Margin(usize),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("grid size must be at least 2, got {0}")]
    Grid(usize),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
