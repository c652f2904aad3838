//! Entanglement characterization for small qubit clusters.
//!
//! This crate computes concurrence-family entanglement measures and numerically
//! optimized Mermin-Klyshko Bell operators for pure 3- and 4-qubit states:
//!
//! - [`state`]: pure states, density matrices, observables, partial traces.
//! - [`measures`]: concurrence, i-concurrence, global entanglement `Q`, 3-tangle.
//! - [`bell`]: the Mermin-Klyshko polynomials `F_3`, `F'_3`, `F_4`, `F'_4` and the
//!   classification ladder on their squared expectation sums.
//! - [`optimizer`]: multistart maximization of Bell expectations over per-qubit
//!   measurement directions, plus threshold-crossing search along model parameters.
//! - [`models`]: two Heisenberg spin clusters (an anisotropic 3-qubit ring and a
//!   4-qubit chain with a star bond), their analytic eigensystems and closed-form
//!   measure formulas.
//! - [`sweep`]: parameter sweeps, one-parameter fits and figure-data tables
//!   backing the `entbell` command-line tool.

pub mod bell;
pub mod error;
pub mod measures;
pub mod models;
pub mod optimizer;
pub mod state;
pub mod sweep;
pub mod tolerances;

pub use error::{Error, Result};
pub use state::{C64, DensityMatrix, Observable, PureState};
