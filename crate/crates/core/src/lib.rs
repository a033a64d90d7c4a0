//! Symmetry-respecting variational quantum circuits for finite groups, and
//! training of (almost-)equivariant data embeddings between two group
//! representations.
//!
//! The crate is organized in layers:
//!
//! - [`tensor`]: dense complex matrices, Kronecker products, Hermitian
//!   matrix exponentials, commutator norms.
//! - [`sim`]: statevector simulation and Pauli-observable expectation values.
//! - [`groups`]: finite groups given by generators, unitary and permutation
//!   representations, SWAP-network compilation, twirling, commutant checks.
//! - [`circuits`]: the circuit IR, data-embedding architectures, and circuit
//!   estimates.
//! - [`experiments`]: the built-in experiments (line classification, C2,
//!   C2xC2, D4, S6, intertwiner) with their data generators and group actions.
//! - [`learner`]: the squared invariance-gap loss, SPSA gradient estimation,
//!   and the gradient-descent training loop with full trajectory recording.
//!
//! The core is `no_std` (with `alloc`); all file formats, CLI handling and
//! wall-clock timing live in the companion `symvqc-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod circuits;
pub mod error;
pub mod experiments;
pub mod groups;
pub mod learner;
pub mod sim;
pub mod tensor;

pub use error::Error;

/// Convenience result alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
