//! Storage-error analysis for quantum data held in the ground space of a
//! mean-field Heisenberg ferromagnet.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectrum`]: analytic eigenvalues, multiplicities and gap estimates of
//!   the all-to-all Heisenberg Hamiltonian, plus harmonic-number utilities.
//! - [`divdiff`]: confluent divided differences of `x -> exp(-i x tau)` and a
//!   recursive upper bound on them evaluated at Heisenberg levels.
//! - [`frechet`]: Davis' divided-difference expansion of Fréchet derivatives
//!   of the evolution operator, the Taylor remainder and its contour bound.
//! - [`bounds`]: closed-form storage-error and lifetime bounds, lifetime
//!   enhancement sweeps and contour grids.
//! - [`sim`]: a dense state-vector / density-matrix oracle for small `n`.
//! - [`verify`]: the numerical verification batteries behind `ferromem verify`.
//!
//! Units throughout: `hbar = 1`, energies and rates in GHz, times in ns.

pub mod bounds;
pub mod divdiff;
mod error;
pub mod frechet;
pub mod linalg;
pub mod output;
pub mod sim;
pub mod spectrum;
pub mod verify;

pub use error::{Error, Result, ValidityFlag};
