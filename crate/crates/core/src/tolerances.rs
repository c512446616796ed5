//! Numerical thresholds shared by the library, the CLI checks, and the test suites.
//!
//! Every threshold that decides pass/fail lives here so reports can echo it.

/// Relative off-diagonal threshold for QL deflation.
pub const QL_DEFLATION: f64 = 1e-12;

/// Eigenvalues at or below `SINGULAR_RELATIVE * lambda_max` count as zero.
pub const SINGULAR_RELATIVE: f64 = 1e-10;

/// Interlacing slack, scaled by the operator norm.
pub const INTERLACING_RELATIVE: f64 = 1e-8;

/// Gram-matrix deviation allowed for a basis to count as orthonormal.
pub const ORTHONORMAL: f64 = 1e-10;

/// Residual bound `|A v - lambda v| <= EIGEN_RESIDUAL * |A|`.
pub const EIGEN_RESIDUAL: f64 = 1e-8;

/// Relative tolerance for identities between real quadratic forms.
pub const FORM_RELATIVE: f64 = 1e-10;

/// Tolerance for the sigma/Maxwell identity, scaled by `1 + |sigma(u,u)|`.
pub const SIGMA_MAXWELL: f64 = 1e-9;

/// Elementwise agreement between analytic and numeric torus spectra.
pub const SPECTRUM_MATCH: f64 = 1e-8;

/// Agreement of closed-form free energies with their log-sum evaluation.
pub const CLOSED_FORM: f64 = 1e-9;

/// Sloppy PSD check: `lambda_min >= -PSD_RELATIVE * |A|`.
pub const PSD_RELATIVE: f64 = 1e-10;
