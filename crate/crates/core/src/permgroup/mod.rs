//! Permutations of {0..n}, cycle types, and Cayley graphs of S_n.

mod cayley;
mod partition;
mod permutation;

pub use cayley::{is_conjugate_invariant, CayleyGraph, GeneratingSet, GeneratorEntry, SuccTables};
pub use partition::{conjugacy_classes, partitions, Partition};
pub use permutation::{factorial, Permutation, MAX_RANKED_DEGREE};
