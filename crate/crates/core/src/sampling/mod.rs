//! Finite sampling machinery: separated covering lattices on the sphere and
//! the product of two spheres, positive cubature weights exact on tensor
//! harmonic spaces, and exact reconstruction of band-limited rotation-group
//! functions from finitely many circle-transform samples.

pub mod cubature;
pub mod discrete;
pub mod lattice;

pub use cubature::{cubature_weights, CubatureLattice, CubatureWeights};
pub use discrete::{
    degree_for_rho, discrete_coefficients, discrete_invert, required_product_degree,
    rho_for_bandwidth, DiscreteReport, DEFAULT_DENSITY_CONSTANT,
};
pub use lattice::{
    build_lattice_s2, certify_s2, product_lattice, recheck_lattice, Certification, LatticePoints,
    MetricLattice, AUDIT_PROBE_SEED, BUILD_PROBE_SEED,
};
