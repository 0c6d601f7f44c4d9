//! Scalar abstraction for the max-times semiring.
//!
//! Everything in this crate is generic over [`Scalar`], a nonnegative real
//! carried by a floating point type. `f64` is the working precision; `f32` is
//! supported with correspondingly looser comparison tolerances.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A floating point type usable as a max-times scalar.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative tolerance used for closed-form comparisons.
    fn rel_tol() -> Self;
    /// Absolute floor under the relative tolerance.
    fn abs_floor() -> Self;
    /// Absolute tolerance for collinearity tests in log space.
    fn log_collinear_tol() -> Self;

    /// Converts an `f64` literal. Panics only if the target type cannot
    /// represent finite `f64` values at all, which no implementor does.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `max(a, b)`, the semiring addition.
    #[inline]
    fn oplus(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Scalar for f64 {
    fn rel_tol() -> Self {
        1e-9
    }
    fn abs_floor() -> Self {
        1e-12
    }
    fn log_collinear_tol() -> Self {
        1e-12
    }
}

impl Scalar for f32 {
    fn rel_tol() -> Self {
        1e-5
    }
    fn abs_floor() -> Self {
        1e-6
    }
    fn log_collinear_tol() -> Self {
        1e-5
    }
}

/// Tolerance band around `reference`: `rel_tol * |reference|`, floored.
#[inline]
pub fn tolerance<T: Scalar>(reference: T) -> T {
    (T::rel_tol() * reference.abs()).max(T::abs_floor())
}

/// `|a - b| <= rel_tol * max(|a|, |b|)`, with the absolute floor.
#[inline]
pub fn approx_eq<T: Scalar>(a: T, b: T) -> bool {
    (a - b).abs() <= tolerance(a.abs().max(b.abs()))
}

/// `a <= b` up to tolerance.
#[inline]
pub fn approx_le<T: Scalar>(a: T, b: T) -> bool {
    a <= b + tolerance(a.abs().max(b.abs()))
}

/// Sorts descending and merges values that are [`approx_eq`] to their
/// predecessor. The first (largest) representative of each cluster is kept.
pub fn dedup_desc<T: Scalar>(mut values: Vec<T>) -> Vec<T> {
    values.sort_by(|a, b| b.partial_cmp(a).expect("no NaN"));
    let mut out: Vec<T> = Vec::with_capacity(values.len());
    for v in values {
        match out.last() {
            Some(&last) if approx_eq(last, v) => {}
            _ => out.push(v),
        }
    }
    out
}

/// Ascending counterpart of [`dedup_desc`].
pub fn dedup_asc<T: Scalar>(values: Vec<T>) -> Vec<T> {
    let mut out = dedup_desc(values);
    out.reverse();
    out
}

/// True when every element of `sub` is [`approx_eq`] to some element of `sup`.
pub fn set_subset<T: Scalar>(sub: &[T], sup: &[T]) -> bool {
    sub.iter().all(|&x| sup.iter().any(|&y| approx_eq(x, y)))
}

/// Two-way [`set_subset`].
pub fn set_eq<T: Scalar>(a: &[T], b: &[T]) -> bool {
    set_subset(a, b) && set_subset(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_has_floor() {
        assert_eq!(tolerance(0.0f64), 1e-12);
        assert_eq!(tolerance(1e6f64), 1e-3);
    }

    #[test]
    fn dedup_merges_close_values() {
        let v = dedup_desc(vec![1.0, 3.0, 1.0 + 1e-14, 2.0, 3.0]);
        assert_eq!(v, vec![3.0, 2.0, 1.0 + 1e-14]);
    }

    #[test]
    fn f32_tolerances_are_looser() {
        assert!(approx_eq(1.0f32, 1.0f32 + 4.0 * f32::EPSILON));
        assert!(!approx_eq(1.0f64, 1.0 + 1e-6));
    }

    #[test]
    fn set_relations() {
        assert!(set_subset(&[1.0, 2.0], &[2.0, 1.0, 5.0]));
        assert!(!set_eq(&[1.0, 2.0], &[2.0, 1.0, 5.0]));
        assert!(set_eq(&[1.0, 2.0, 2.0], &[2.0, 1.0]));
    }
}
