//! Lattice Maxwell theory on the box `{0,..,n}^d`: plaquette forms in the axial
//! gauge, the difference operators behind them, periodic comparison operators,
//! and the free-energy constant `K_d`.

pub mod eigen;
pub mod error;
pub mod field;
pub mod forms;
pub mod gauge;
pub mod kd;
pub mod lattice;
pub mod periodic;
pub mod spectral;
pub mod tolerances;

pub use error::{Error, Result};
pub use field::{BoxDomain, OneForm, SiteField};
pub use forms::{assemble_sigma, sigma_form, SigmaMatrix};
pub use gauge::{AxialGauge, EdgeField};
pub use kd::{
    kd_analytic_d2, kd_value, leading_order_free_energy, FreeEnergyPrediction, KdEstimate,
};
pub use lattice::{Edge, Lattice, LatticeSummary, Plaquette, Vertex};
pub use periodic::{
    analytic_spectrum, periodic_free_energy, torus_operator, AnalyticSpectrum, TorusField,
};
pub use spectral::{BasisLabel, SpectrumReport, SymmetricOperator};
