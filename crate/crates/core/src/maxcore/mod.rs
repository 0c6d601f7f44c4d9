//! The max-times semiring kernel: matrices, permutations, intervals and the
//! text format.

pub mod inequalities;
mod interval;
mod matrix;
mod permutation;
pub mod text;

pub use interval::Interval;
pub use matrix::MaxMatrix;
pub use permutation::{AllPermutations, Permutation};
