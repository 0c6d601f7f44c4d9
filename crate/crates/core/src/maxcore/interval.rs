use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{approx_eq, tolerance, Scalar};

/// Closed interval `[lo, hi] ⊆ ℝ₊`; `lo == hi` encodes a singleton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    lo: T,
    hi: T,
}

impl<T: Scalar> Interval<T> {
    pub fn new(lo: T, hi: T) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && T::zero() <= lo && lo <= hi) {
            return Err(Error::InvalidParameter(format!(
                "interval requires 0 <= lo <= hi, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn singleton(v: T) -> Result<Self> {
        Self::new(v, v)
    }

    pub fn lo(&self) -> T {
        self.lo
    }

    pub fn hi(&self) -> T {
        self.hi
    }

    pub fn is_singleton(&self) -> bool {
        self.lo == self.hi
    }

    /// Membership with the relative tolerance of [`Scalar::rel_tol`].
    pub fn contains(&self, z: T) -> bool {
        z >= self.lo - tolerance(self.lo) && z <= self.hi + tolerance(self.hi)
    }

    /// Pulls a value that is [`contains`](Self::contains)-inside onto the
    /// exact interval.
    pub fn clamp(&self, z: T) -> T {
        z.max(self.lo).min(self.hi)
    }

    /// `self ⊆ other`, endpoints compared with tolerance.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        other.contains(self.lo) && other.contains(self.hi)
    }

    pub fn approx_eq(&self, other: &Self) -> bool {
        approx_eq(self.lo, other.lo) && approx_eq(self.hi, other.hi)
    }

    /// `αI ⊕ β = {max(αz, β) : z ∈ I}`.
    pub fn scale_oplus(&self, alpha: T, beta: T) -> Self {
        Self {
            lo: (alpha * self.lo).oplus(beta),
            hi: (alpha * self.hi).oplus(beta),
        }
    }

    /// `I ⊕ J = {max(u, v) : u ∈ I, v ∈ J}`.
    pub fn oplus(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.oplus(other.lo),
            hi: self.hi.oplus(other.hi),
        }
    }
}

impl<T: Scalar> fmt::Display for Interval<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}
