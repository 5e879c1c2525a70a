//! Finite posets, their crosscut posets and crosscut complexes, and the
//! finite-space machinery used to check what those constructions say about
//! homotopy type and fixed points.
//!
//! The crate is `no_std` and only needs `alloc`. Parsing, file formats and
//! the command line live in the companion `crosscut` crate.
//!
//! Elements of a [`FinitePoset`] are dense ids `0..n`; subsets are
//! [`ElementSet`] bit vectors. Every routine iterates in ascending id order,
//! so results (including counterexample witnesses) are reproducible.

#![no_std]

extern crate alloc;

mod bitset;
mod error;
mod iso;
mod limits;
mod poset;

pub mod complex;
pub mod crosscut;
pub mod finite_space;
pub mod fixed_points;
pub mod homology;
pub mod stars;

pub use bitset::ElementSet;
pub use error::{Error, Result};
pub use iso::is_isomorphic;
pub use limits::Limits;
pub use poset::{set_label, FinitePoset, MonotoneMap};
