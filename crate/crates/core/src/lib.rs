//! Conductor bounds for character twists.
//!
//! If `pi_1 ⊗ chi ≅ pi_2` for cuspidal representations of `GL(n)` with
//! arithmetic conductors `N1`, `N2` and `chi` of conductor `Q`, then
//! `Q^n | N1 N2`, and `Q^n | lcm(N1, N2)` under discrete-series or
//! trivial-central-character hypotheses. This crate makes those statements
//! executable:
//!
//! * [`arith`] factored integers and divisibility,
//! * [`local`] conductor exponents of twists at a finite place,
//! * [`dirichlet`] exact Dirichlet characters,
//! * [`global`] admissible twisting conductors and the extremal
//!   constructions,
//! * [`arch`] archimedean conductors and the analytic-conductor bound,
//! * [`scan`] twist detection between two Hecke-eigenvalue tables,
//! * [`sample`] seeded random data for property sweeps,
//! * [`app`] the command-line front end and self-verification suites.

pub mod app;
pub mod arch;
pub mod arith;
pub mod dirichlet;
pub mod error;
pub mod global;
pub mod local;
pub mod sample;
pub mod scan;

pub use arith::FactoredInteger;
pub use error::{Error, Result};
