//! Quantum resources of an electron-positron pair under Lorentz boosts.
//!
//! The crate builds the two-branch pair state over eight named degrees of
//! freedom (three momentum components and a spin per particle), applies boosts
//! through numerically extracted Wigner rotations, and quantifies genuine
//! multipartite entanglement (generalized concurrence), quantum coherence in
//! the σ_z bases, and the combination of both that stays invariant between
//! frames.
//!
//! Modules:
//! - [`relativity`]: boosts, standard boosts, Wigner rotations, branch momenta.
//! - [`quantum`]: multi-party pure states, density matrices, partial trace,
//!   entropies, dephasing.
//! - [`resources`]: bipartitions, generalized concurrence, coherence
//!   quantifiers, the separability certificate and the invariant combination.
//! - [`pairsim`]: the pair scenario itself and its closed-form resource report.

mod dd;

pub mod error;
pub mod pairsim;
pub mod quantum;
pub mod relativity;
pub mod resources;

pub use error::{Error, Result};
