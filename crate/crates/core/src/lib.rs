pub mod analysis;
pub mod arith;
pub mod cli;
pub mod constructions;
mod error;
pub mod family;
pub mod linalg;
pub mod random;
pub mod structure;
pub mod verdict;

pub use error::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u32 = 65536;
