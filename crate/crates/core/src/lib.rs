//! Max-times linear algebra for nonnegative matrices.
//!
//! The semiring is `(ℝ₊, max, ×)`. On top of a dense [`MaxMatrix`] the crate
//! computes k-numerical ranges with constructive witnesses, geometric and
//! tropical max spectra, characteristic maxpolynomials and c-numerical
//! ranges over the permutation group. The [`oracles`] module holds naive
//! reference implementations used to cross-check all of these.
//!
//! Everything is generic over [`Scalar`] (`f64` or `f32`); the aliases below
//! fix the working precision.

pub mod charpoly;
pub mod cnumrange;
pub mod error;
pub mod fixtures;
pub mod inclusion;
pub mod isometry;
pub mod maxcore;
pub mod numrange;
pub mod oracles;
pub mod probe;
pub mod random;
pub mod report;
pub mod scalar;
pub mod spectra;

pub use error::{Error, IsometryProperty, Result};
pub use isometry::{Isometry, LipschitzGap};
pub use maxcore::{Interval, MaxMatrix, Permutation};
pub use report::{LawCheck, LawReport};
pub use scalar::Scalar;
pub use spectra::{FrobeniusForm, Spectrum, SpectrumKind};

pub type Matrix = MaxMatrix<f64>;
pub type Matrix32 = MaxMatrix<f32>;
pub type Range = Interval<f64>;
pub type Range32 = Interval<f32>;
pub type Iso = Isometry<f64>;
pub type Iso32 = Isometry<f32>;

/// Environment variable overriding every brute-force cap.
pub const CAP_ENV: &str = "TROPIRANGE_CAP";

/// `default`, unless [`CAP_ENV`] holds a positive integer.
pub fn cap_from_env(default: usize) -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&c| c > 0)
        .unwrap_or(default)
}
