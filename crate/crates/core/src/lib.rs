//! WRT invariants of integer surgeries on the figure-eight knot and their
//! optimistic limits via dilogarithm potentials.

pub mod cli;
pub mod error;
pub mod geometry_reference;
pub mod potential;
pub mod quantum_invariants;
pub mod saddle_solver;
pub mod specfun;

pub use error::{Error, Result};
