//! Exact computer algebra for homogeneous and colored coupled cell networks.
//!
//! A network is a collection of maps `σ_1, …, σ_n` on the cells `{1, …, N}`.
//! Once the collection is closed under composition (a semigroup), the
//! admissible vector fields `γ_f` are closed under composition and Lie
//! bracket, and both operations can be computed on the level of the cell
//! function `f` alone. This crate implements that calculus with exact
//! rational arithmetic, together with the SN-decomposition of linear
//! network maps, local normal forms, symmetry and synchrony analysis, and
//! the colored (semigroupoid) generalisation.
//!
//! The crate is `no_std` and only needs `alloc`. Cells and map indices are
//! stored 0-based; every human facing rendering is 1-based.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod colored;
pub mod error;
pub mod finmap;
pub mod liealg;
pub mod linalg;
pub mod network;
pub mod normalform;
pub mod poly;
pub mod polyspace;
pub mod rational;
pub mod structure;
pub mod unipoly;
pub mod vfield;

pub use error::{Error, Result};
pub use finmap::{FiniteMap, SemigroupTable};
pub use linalg::RationalMatrix;
pub use network::{IndexSelection, NetworkSpec};
pub use poly::{Monomial, Poly};
pub use polyspace::{GradedBasis, PolyMap};
pub use rational::Q;
