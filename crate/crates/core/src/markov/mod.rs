//! Random down-walks on the Tesler poset and the Markov-chain tools used to
//! analyse them exactly.

mod chain;
mod kernel;
mod walk;

pub use chain::{absorbing_analysis, equilibrium, evolve, Absorption, TransitionMatrix};
pub use kernel::{expected_rejections, walk_transition_matrix, RejectionReport, WalkKernel};
pub use walk::{simulate, sweep, sweep_to_csv, walk_step, SimReport, StepOutcome, WalkConfig};
