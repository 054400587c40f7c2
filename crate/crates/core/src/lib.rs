//! Exact decomposition of zero-dimensional regular chains over the rationals
//! into simple sets with multiplicity arrays, multiplicity queries at zeros,
//! and real root isolation with multiplicity.

pub mod arith;
pub mod chains;
pub mod cli;
pub mod dualspace;
pub mod error;
pub mod isolate;
pub mod pgcd;
pub mod psqf;
pub mod reg2sim;

pub use error::{Error, Result};
