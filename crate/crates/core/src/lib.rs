//! Local hidden-variable models of the spin singlet.
//!
//! Three model families that are local in the sense of setting independence
//! yet break either outcome independence or Malus's law, evaluated against
//! the CHSH, Leggett, and Branciard inequalities by closed-form correlators,
//! spherical quadrature, and seeded Monte-Carlo sampling.

pub mod correlators;
pub mod error;
pub mod geometry;
pub mod harness;
pub mod inequalities;
pub mod models;
