//! Exact computation of modular invariant rings of cyclic groups of order 2p.

pub mod cli;
pub mod error;
pub mod field;
pub mod geometry;
pub mod groebner;
pub mod invariants;
pub mod matrix;
pub mod poly;
pub mod rep;
pub mod structure;

pub use error::{Error, Result};
