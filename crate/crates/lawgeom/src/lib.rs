//! Geometry groups of algebraic laws, computed on labeled binary trees.
//!
//! The library implements partial actions of rotation and permutation
//! operators on finite rooted binary trees, a seed calculus that decides
//! word equality in the groups these actions generate (Thompson's groups
//! F and V, the semi-commutative group 𝔖_•, and the braided group B_•),
//! construction words that carry a vine to an arbitrary tree, machine
//! generated relation families with seed-based verifiers, twisted
//! operators over pluggable self-distributive bracket structures, and
//! exact dyadic piecewise-linear realizations.
//!
//! Modules are layered bottom-up: `tree` (trees, addresses, unification),
//! `ld` (bracket structures), `free` (free-group words), `ops` (operator
//! letters and partial actions), `seeds` (word equality), `constructions`
//! (vine-to-tree words), `presentations` (relation families and
//! verifiers), `bv` (the braided group and its faithful representation),
//! and `realization` (piecewise-linear maps on [0,1]).

pub mod bv;
pub mod constructions;
pub mod error;
pub mod free;
pub mod ld;
pub mod ops;
pub mod presentations;
pub mod realization;
pub mod seeds;
pub mod tree;

pub use error::{Error, Result};
