//! Exact decision procedure for regular singularity at 0 of p-Mahler
//! systems `phi_p(Y) = A Y`, with the constant system and the Puiseux gauge
//! transformation when the answer is positive.

pub mod cli;
pub mod companion;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod linalg;
pub mod regsing;
pub mod system;

pub use error::{Error, Result};
