//! Spectral inclusions: the max convex hulls of the k-geometric and
//! k-tropical spectra against the k-numerical range.
//!
//! Both inclusions hold for `1 ≤ k < n`. At `k = n` they can fail, since
//! `W^n(A)` collapses to `{tr⊗(A)}` while `μ(A)` may come from an
//! off-diagonal cycle.

use crate::charpoly;
use crate::cnumrange::conv_max;
use crate::error::Result;
use crate::maxcore::{Interval, MaxMatrix};
use crate::numrange::w_max_k;
use crate::scalar::Scalar;
use crate::spectra;

#[derive(Debug, Clone, PartialEq)]
pub struct InclusionReport<T> {
    pub k: usize,
    pub range: Interval<T>,
    pub geometric: Interval<T>,
    pub tropical: Interval<T>,
    pub geometric_ok: bool,
    pub tropical_ok: bool,
}

impl<T> InclusionReport<T> {
    pub fn passed(&self) -> bool {
        self.geometric_ok && self.tropical_ok
    }
}

/// Compares `conv⊗(σ_max^k(A))` and `conv⊗(σ_trop^k(A))` with `W_max^k(A)`.
pub fn spectral_inclusion<T: Scalar>(a: &MaxMatrix<T>, k: usize, cap: usize) -> Result<InclusionReport<T>> {
    let range = w_max_k(a, k)?;
    let geometric = conv_max(&spectra::sigma_max_k(a, k)?)?;
    let tropical = conv_max(&charpoly::sigma_trop_k(a, k, cap)?)?;
    Ok(InclusionReport {
        k,
        range,
        geometric,
        tropical,
        geometric_ok: geometric.is_subset_of(&range),
        tropical_ok: tropical.is_subset_of(&range),
    })
}
