//! Discrete-time coined quantum walks on Cayley graphs of the symmetric
//! group, together with exact amplitude formulas used to cross-check the
//! simulation: generating-sequence path counts, irreducible character sums
//! and the Walsh-sign closed form of the Hadamard walk.

pub mod analytics;
pub mod caps;
pub mod chartable;
pub mod coins;
pub mod engine;
pub mod error;
pub mod pathsum;
pub mod permgroup;
pub mod walsh;

pub use caps::Caps;
pub use chartable::CharacterTable;
pub use coins::{CoinKind, CoinOperator, GroverParams};
pub use engine::{Distribution, Walk, WalkState};
pub use error::{Error, Result};
pub use permgroup::{CayleyGraph, GeneratingSet, Partition, Permutation};

pub use num_bigint::{BigInt, BigUint};
pub use num_complex::Complex64;
pub use num_rational::BigRational;
