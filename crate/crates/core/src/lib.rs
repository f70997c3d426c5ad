//! Exact-arithmetic laboratory for two-player zero-sum matrix games.
//!
//! The crate computes equilibrium sets with rational arithmetic, decides the
//! geometric conditions under which fictitious play cannot settle at a single
//! equilibrium, simulates fictitious play under pluggable tie-breaking rules,
//! and checks structural invariants on the resulting trajectories.
//!
//! Indices are 0-based in the Rust API. Textual output (JSON, CSV, `Display`)
//! uses 1-based action labels.

pub mod construct;
pub mod diagnostics;
pub mod equilibrium;
pub mod error;
pub mod fp;
pub mod library;
pub mod linalg;
pub mod lp;
pub mod matrix;
pub mod polytope;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{ActionSet, MixedStrategy, PayoffMatrix};
pub use rational::Rational;
