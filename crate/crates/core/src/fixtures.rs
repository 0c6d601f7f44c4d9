//! Small named matrices used as regression fixtures.

use crate::maxcore::MaxMatrix;
use crate::scalar::Scalar;

/// A 6×6 matrix with ascending diagonal `2.5, 3, 5.2, 6.2, 7.4, 8.3` and
/// maximum entry 9 at position (4, 5).
pub fn six_by_six<T: Scalar>() -> MaxMatrix<T> {
    MaxMatrix::from_f64_rows(&[
        &[2.5, 5.2, 4.1, 2.3, 4.0, 3.5],
        &[5.0, 3.0, 6.2, 3.0, 3.5, 4.7],
        &[3.7, 4.0, 5.2, 6.0, 5.8, 4.3],
        &[2.5, 6.0, 1.7, 6.2, 9.0, 8.1],
        &[7.2, 5.3, 4.2, 6.1, 7.4, 7.0],
        &[8.1, 7.6, 5.9, 3.8, 9.0, 8.3],
    ])
    .expect("valid fixture")
}

/// A 4×4 matrix whose full-rank range is `{4}` even though `‖A‖ = 8`.
pub fn four_by_four<T: Scalar>() -> MaxMatrix<T> {
    MaxMatrix::from_f64_rows(&[
        &[4.0, 7.0, 5.0, 8.0],
        &[8.0, 2.0, 0.0, 7.0],
        &[2.0, 8.0, 1.0, 4.0],
        &[1.0, 6.0, 2.0, 2.0],
    ])
    .expect("valid fixture")
}

/// `[[0, 1], [1, 0]]`.
pub fn flip<T: Scalar>() -> MaxMatrix<T> {
    MaxMatrix::from_f64_rows(&[&[0.0, 1.0], &[1.0, 0.0]]).expect("valid fixture")
}
