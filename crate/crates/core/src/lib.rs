//! Painted-tree combinatorial Hopf algebras, their face posets, and the
//! graph-tubing models of the polytopes they index.
//!
//! The crate is organised bottom-up:
//!
//! * [`tree`]: plane trees, weak orders on their gaps, forests, and the
//!   forgetful maps `beta`, `tau`, `kappa`.
//! * [`painted`]: painted trees in the twelve families, splitting, grafting
//!   and family projections.
//! * [`sum`] and [`hopf`]: exact integer linear combinations, coproducts,
//!   module actions, one-sided products and antipodes.
//! * [`growth`]: the painted growth preorder, Hasse diagrams, f-vectors.
//! * [`tubing`]: graphs, tubes, (marked) tubings and their posets.
//! * [`bijection`]: the maps between tubing posets and painted-tree posets.
//! * [`enumeration`]: closed-form counts with exact arithmetic.
//! * [`shuffle`]: the shuffle product on maximal star-graph tubings.
//! * [`verify`]: the bounded verification sweeps used by the CLI and the
//!   acceptance suite.

pub mod bijection;
pub mod enumeration;
pub mod error;
pub mod growth;
pub mod hopf;
pub mod painted;
pub mod par;
pub mod shuffle;
pub mod sum;
pub mod tree;
pub mod tubing;
pub mod verify;

pub use error::{Error, Result};
