//! Fictitious play with exact tie detection and pluggable tie-breaking.

pub mod config;
pub mod engine;
pub mod tiebreak;
pub mod trajectory;

pub use config::{FpConfig, TieRule};
pub use engine::{fp_init, fp_run, fp_run_with, fp_step, FpState, Player, StepRecord};
pub use tiebreak::{Frequency, TieBreaker, TieContext};
pub use trajectory::{StateRecord, Trajectory, TrajectoryMeta};
