//! Correlation dynamics of Bose- and Fermi-Hubbard lattices in an expansion
//! in inverse powers of the coordination number, together with an exact
//! diagonalization engine for small one-dimensional chains.
//!
//! The crate is organised by physical subsystem:
//!
//! * [`lattice`]: hypercubic geometry, structure factor and momentum grids.
//! * [`bose_z1`]: first-order bosonic particle/hole correlators.
//! * [`bose_z2`]: second-order observables (renormalised gap, number and
//!   parity correlations, light cone).
//! * [`bose_tilt`]: pair creation in a tilted Mott lattice and the
//!   Sauter-Schwinger analogue.
//! * [`floquet`]: resonant tunnelling under strong periodic driving.
//! * [`fermi`]: charge modes of the half-filled Fermi-Hubbard model.
//! * [`exact_diag`]: Fock-space exact diagonalization with momentum sectors.
//! * [`cli`]: configuration, experiment orchestration and table output.

pub mod bose_tilt;
pub mod bose_z1;
pub mod bose_z2;
pub mod cli;
pub mod error;
pub mod exact_diag;
pub mod fermi;
pub mod floquet;
pub mod lattice;
pub mod linalg;
pub mod ode;

pub use error::{Error, Result};
