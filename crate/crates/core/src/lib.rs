//! Exact symbolic engine for Macdonald processes in the free-field picture.
//!
//! Scalars live in Q(q,t) ([`coefficients::RatFunc`]); symmetric functions are
//! kept in the power-sum basis, which doubles as the Fock space basis.

pub mod cli;
pub mod coefficients;
pub mod dimgen;
pub mod error;
pub mod fockvertex;
pub mod macdonald;
pub mod partitions;
pub mod process;
pub mod symfunc;
pub mod verify;

pub use error::{Error, Result};
