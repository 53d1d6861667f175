//! Exact verification toolkit for a family of pseudo-automorphisms of rational threefolds
//! and the surface maps they induce.

pub mod error;
pub mod exact;
pub mod lattice;
pub mod mpoly;
pub mod numclass;
pub mod par;
pub mod report;
pub mod threefold;
pub mod torus3;

pub use error::{Error, Result};
