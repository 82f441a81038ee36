//! Exact combinatorics of Kostant's partition function in type A.
//!
//! One instance is named by its hook sums, weight or height (see
//! [`vectors`]) and has four equinumerous families of objects: Tesler
//! matrices, integral flows, Kostant pictures and Lusztig data
//! ([`structures`]). [`enumeration`] lists and counts them, [`orders`]
//! builds the merge, excess-merge and two-sided dictionary posets on them,
//! [`markov`] runs and solves the random down-walk on the Tesler poset, and
//! [`logcount`] computes the exact quantities behind log-asymptotics.

pub mod enumeration;
pub mod error;
pub mod logcount;
pub mod markov;
pub mod orders;
pub mod structures;
pub mod vectors;

pub use enumeration::{
    enumerate_kostant, enumerate_tesler, kpf_count, kpf_count_height, InstanceSet, KostantIter,
};
pub use error::{KpfError, Result};
pub use orders::{build_poset, OrderKind, Poset};
pub use structures::{
    IntegralFlow, KostantPicture, LusztigDatum, Representation, Structure, TeslerMatrix,
};
pub use vectors::{
    height_from_weight, weight_from_height, weight_from_hooks, Height, HookSum, Weight,
};
