//! Vector algebra on the unit sphere, measurement-setting constructions,
//! spherical sampling, and quadrature rules.

mod frames;
mod quadrature;
mod sampling;
mod vector;

pub use frames::{
    branciard_settings, chsh_optimal_settings, vectors_in_plane, BranciardSettings, ChshSettings, Plane, Triad,
};
pub use quadrature::{circle_nodes, gauss_legendre, SphereQuadrature};
pub use sampling::{sample_cap_uniform, sample_unit_uniform, stream, SimRng};
pub use vector::{cross, dot, UnitVector3, Vec3, ORTHO_TOL};
