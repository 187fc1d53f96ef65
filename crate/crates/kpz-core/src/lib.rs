//! Simulation and exact-formula toolkit for the facilitated TASEP and
//! half-space last passage percolation.
//!
//! The crate has three layers:
//!
//! * stochastic models: event-driven FTASEP(α) and half-line TASEP
//!   simulators, the gap mapping between them, and half-quadrant
//!   exponential LPP ([`particles`], [`halfline`], [`lpp`]);
//! * exact formulas: contour quadrature on ray pairs ([`quad`]), matrix
//!   kernels ([`kernels`]), dense Pfaffians and Fredholm
//!   determinants/Pfaffians ([`pfaffian`], [`fredholm`]), and the limit
//!   distribution functions built from them ([`dist`]);
//! * statistics: empirical CDFs, KS distances and the experiment harness
//!   that cross-validates simulation against the exact laws ([`stats`],
//!   [`harness`]).
//!
//! All numerics are double precision. Randomness is fully reproducible:
//! every run derives per-replicate streams from a master seed with
//! [`seeding::derive_seed`].

pub mod error;
pub mod fredholm;
pub mod halfline;
pub mod harness;
pub mod hydro;
pub mod kernels;
pub mod lpp;
pub mod particles;
pub mod pfaffian;
pub mod quad;
pub mod rmt;
pub mod seeding;
pub mod special;
pub mod stats;

pub mod dist;

pub use error::{Error, Result};
