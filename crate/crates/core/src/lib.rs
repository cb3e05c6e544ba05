//! Exact and certified computations on Culler–Vogtmann Outer space.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs: words and automorphisms of the free group `F_N`,
//! marked metric graphs, candidate loops and the extremal Lipschitz
//! distortion, geodesic currents in the rose chart, generic stretching
//! factors computed exactly from a finite drift chain, and growth fits for
//! iterated automorphisms.
//!
//! Exact quantities are [`Q`] (arbitrary precision rationals). Floating
//! point only appears where the quantity is transcendental (entropy,
//! logarithms, the double-exponential current) or statistical (Monte Carlo).
#![no_std]
#![deny(unsafe_code)]
#![warn(missing_debug_implementations, rust_2018_idioms)]

extern crate alloc;

pub mod asymptotics;
pub mod automorphisms;
pub mod currents;
pub mod entropy;
pub mod enumerate;
pub mod folding;
pub mod graph;
pub mod lipschitz;
pub mod rational;
pub mod stretch;
pub mod words;

mod error;

pub use automorphisms::{Automorphism, Endomorphism, NielsenMove};
pub use currents::{Current, WeightTable, WeightValue};
pub use error::{Error, Result};
pub use graph::{EdgePath, GraphSpec, MarkedGraph};
pub use lipschitz::CandidateSet;
pub use rational::Q;
pub use stretch::{DriftMachine, DriftResult};
pub use words::{CyclicWord, Letter, Word};

#[cfg(test)]
pub(crate) mod testutil;
