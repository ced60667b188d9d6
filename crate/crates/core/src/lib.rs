//! Dimensions of spaces of cusp forms `S_k(Gamma_0(N), chi)` and of their
//! newspaces, computed from explicit multiplicative formulas, plus the
//! exhaustive searches that classify every small space.

pub mod arith;
pub mod characters;
pub mod classify;
pub mod cli_io;
pub mod dimfull;
pub mod dimnew;
pub mod error;

pub use error::{Error, Result};
