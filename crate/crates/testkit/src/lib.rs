//! Random generators and brute-force oracles for testing smtrecon.
//!
//! Everything here is test infrastructure: the generators are seeded by the
//! caller and the oracles evaluate terms directly in small finite models,
//! independently of the checker.

pub mod arith;
pub mod eval;
pub mod goals;
pub mod instances;
pub mod proofs;
pub mod terms;

pub use eval::{for_each_model, Interp, Value};

use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn seeded(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
