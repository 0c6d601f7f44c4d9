//! Max numerical ranges: closed forms for `W_max(A)` and `W_max^k(A)`, and
//! constructive witnesses for every value inside them.
//!
//! For `1 ≤ k < n` the k-range is the interval `[c, d]` where `c` is the k-th
//! smallest diagonal entry and `d = ‖A‖`; for `k = n` it collapses to the
//! singleton `{tr⊗(A)}` because `X_{n×n}` only holds permutation matrices.

mod laws;
mod witness;

pub use laws::w_max_k_law_suite;
pub use witness::{witness_for, Witness, WitnessCase};

use crate::error::{Error, Result};
use crate::maxcore::{Interval, MaxMatrix};
use crate::scalar::Scalar;

/// `W_max(A) = [min_i a_ii, ‖A‖]`.
pub fn w_max<T: Scalar>(a: &MaxMatrix<T>) -> Result<Interval<T>> {
    a.require_square("w_max")?;
    let lo = a
        .diagonal()
        .into_iter()
        .fold(T::infinity(), |m, v| m.min(v));
    Interval::new(lo, a.norm_max())
}

/// `W_max^k(A)`.
pub fn w_max_k<T: Scalar>(a: &MaxMatrix<T>, k: usize) -> Result<Interval<T>> {
    let n = a.require_square("w_max_k")?;
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    if k == n {
        return Interval::singleton(a.trace_max()?);
    }
    Interval::new(kth_smallest_diagonal(a, k), a.norm_max())
}

/// `min over k-subsets of the max selected diagonal entry`, i.e. the k-th
/// smallest diagonal entry (1-based `k`).
pub(crate) fn kth_smallest_diagonal<T: Scalar>(a: &MaxMatrix<T>, k: usize) -> T {
    let mut d = a.diagonal();
    d.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    d[k - 1]
}
