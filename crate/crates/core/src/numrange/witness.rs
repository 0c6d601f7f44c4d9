use crate::error::{Error, Result};
use crate::isometry::{canonical_embedding, f_a, validate_isometry, Isometry};
use crate::maxcore::{MaxMatrix, Permutation};
use crate::scalar::{tolerance, Scalar};

use super::w_max_k;

/// Which construction produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessCase {
    /// `k = n`: any permutation matrix, here the identity.
    FullRank,
    /// `‖A‖ = 0`: the range is `{0}`.
    ZeroMatrix,
    /// `z = c`: basis columns on the k smallest diagonal entries.
    LowerEndpoint,
    /// `z = d`: one column with ones at both ends of the maximal entry.
    UpperEndpoint,
    /// `k < s`, `a_tt ≤ z ≤ a_rs`.
    Case1I,
    /// `k < s`, `z < a_tt`, `p ≤ a_kk`.
    Case1IIa,
    /// `k < s`, `z < a_tt`, `p > a_kk`, `z ≤ p²/a_tt`.
    Case1IIbLow,
    /// `k < s`, `z < a_tt`, `p > a_kk`, `z > p²/a_tt`.
    Case1IIbHigh,
    /// `k ≥ s`, `a_{k+1,k+1} ≤ z ≤ a_rs`.
    Case2I,
    /// `k ≥ s`, `z < a_{k+1,k+1}`, `p ≤ a_kk`.
    Case2IIa,
    /// `k ≥ s`, `z < a_{k+1,k+1}`, `p > a_kk`, `z ≤ p²/a_{k+1,k+1}`.
    Case2IIbLow,
    /// `k ≥ s`, `z < a_{k+1,k+1}`, `p > a_kk`, `z > p²/a_{k+1,k+1}`.
    Case2IIbHigh,
}

impl WitnessCase {
    pub fn label(&self) -> &'static str {
        match self {
            WitnessCase::FullRank => "full-rank",
            WitnessCase::ZeroMatrix => "zero-matrix",
            WitnessCase::LowerEndpoint => "lower-endpoint",
            WitnessCase::UpperEndpoint => "upper-endpoint",
            WitnessCase::Case1I => "case1.i",
            WitnessCase::Case1IIa => "case1.ii.a",
            WitnessCase::Case1IIbLow => "case1.ii.b.1",
            WitnessCase::Case1IIbHigh => "case1.ii.b.2",
            WitnessCase::Case2I => "case2.i",
            WitnessCase::Case2IIa => "case2.ii.a",
            WitnessCase::Case2IIbLow => "case2.ii.b.1",
            WitnessCase::Case2IIbHigh => "case2.ii.b.2",
        }
    }
}

/// An isometry `X` together with the achieved value `f_A(X)`.
#[derive(Debug, Clone)]
pub struct Witness<T> {
    pub isometry: Isometry<T>,
    pub value: T,
    pub case: WitnessCase,
    /// Whether the maximal entry sat below the diagonal of the sorted matrix,
    /// so the construction ran on its transpose.
    pub transposed: bool,
    /// The diagonal-sorting permutation the construction ran under.
    pub sort: Permutation,
}

/// Constructs `X ∈ X_{n×k}` with `f_A(X) = z` for any `z ∈ W_max^k(A)`.
///
/// The matrix is first conjugated to ascending diagonal, the maximal entry
/// `a_rs` is taken with `r ≤ s` (transposing if needed, which leaves `f_A`
/// unchanged), and the witness is built by case analysis on `z`. Columns are
/// then mapped back through the sorting permutation.
pub fn witness_for<T: Scalar>(a: &MaxMatrix<T>, k: usize, z: T) -> Result<Witness<T>> {
    let n = a.require_square("witness_for")?;
    let range = w_max_k(a, k)?;
    if !z.is_finite() || !range.contains(z) {
        return Err(Error::ValueOutOfRange {
            z: z.as_f64(),
            lo: range.lo().as_f64(),
            hi: range.hi().as_f64(),
        });
    }
    let z = range.clamp(z);

    if k == n {
        let x = canonical_embedding(n, &(0..n).collect::<Vec<_>>())?;
        return finish(a, x, WitnessCase::FullRank, false, Permutation::identity(n));
    }
    if range.hi() == T::zero() {
        let x = canonical_embedding(n, &(0..k).collect::<Vec<_>>())?;
        return finish(a, x, WitnessCase::ZeroMatrix, false, Permutation::identity(n));
    }

    let sort = a.sort_diagonal_permutation()?;
    let b = a.conjugate_by_permutation(&sort)?;
    let (mut r, mut s) = b.argmax();
    let transposed = r > s;
    if transposed {
        std::mem::swap(&mut r, &mut s);
    }
    // f_A is transpose-invariant, so a witness for Bᵗ serves B as well
    let b = if transposed { b.transpose() } else { b };
    let (y, case) = sorted_witness(&b, k, z, r, s)?;
    let x = y.permute_rows(&sort)?;
    finish(a, x, case, transposed, sort)
}

fn finish<T: Scalar>(
    a: &MaxMatrix<T>,
    x: Isometry<T>,
    case: WitnessCase,
    transposed: bool,
    sort: Permutation,
) -> Result<Witness<T>> {
    let value = f_a(a, &x)?;
    Ok(Witness {
        isometry: x,
        value,
        case,
        transposed,
        sort,
    })
}

/// First `count` indices in ascending order that avoid `skip`.
fn basis_indices(n: usize, count: usize, skip: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !skip.contains(i)).take(count).collect()
}

/// Isometry whose first column is `e_anchor + weight·e_other` (the second
/// term omitted when the rows coincide), followed by basis columns.
fn build<T: Scalar>(n: usize, anchor: usize, other: usize, weight: T, basis: &[usize]) -> Result<Isometry<T>> {
    let k = basis.len() + 1;
    let mut data = vec![T::zero(); n * k];
    data[anchor * k] = T::one();
    if other != anchor {
        data[other * k] = weight;
    }
    for (c, &l) in basis.iter().enumerate() {
        data[l * k + c + 1] = T::one();
    }
    validate_isometry(&MaxMatrix::new(n, k, data)?)
}

/// Witness for a matrix with ascending diagonal, `1 ≤ k < n`, `‖B‖ = b_rs > 0`
/// with `r ≤ s`, and `z ∈ [b_kk, b_rs]`. Indices are 0-based; `kk` below is
/// the 0-based position of the k-th diagonal entry.
fn sorted_witness<T: Scalar>(
    b: &MaxMatrix<T>,
    k: usize,
    z: T,
    r: usize,
    s: usize,
) -> Result<(Isometry<T>, WitnessCase)> {
    let n = b.rows();
    let kk = k - 1;
    let c = b.get(kk, kk);
    let d = b.get(r, s);

    if (z - c).abs() <= tolerance(c) {
        let x = canonical_embedding(n, &(0..k).collect::<Vec<_>>())?;
        return Ok((x, WitnessCase::LowerEndpoint));
    }
    if (z - d).abs() <= tolerance(d) {
        let x = build(n, r, s, T::one(), &basis_indices(n, k - 1, &[r, s]))?;
        return Ok((x, WitnessCase::UpperEndpoint));
    }

    let case1 = kk < s;
    let t = if case1 { r.max(kk) } else { kk + 1 };
    let btt = b.get(t, t);

    if btt <= z {
        let x = build(n, r, s, z / d, &basis_indices(n, k - 1, &[r, s]))?;
        let case = if case1 { WitnessCase::Case1I } else { WitnessCase::Case2I };
        return Ok((x, case));
    }

    // c ≤ z < b_tt: anchor one column at `low` and grow it towards `t`.
    let low = if k >= 2 { kk - 1 } else { kk };
    let basis: Vec<usize> = (0..=kk).filter(|&i| i != low).collect();
    let p = b.get(low, t).oplus(b.get(t, low));
    let (weight, case) = if p <= c {
        let case = if case1 { WitnessCase::Case1IIa } else { WitnessCase::Case2IIa };
        ((z / btt).sqrt(), case)
    } else if z <= p * p / btt {
        let case = if case1 { WitnessCase::Case1IIbLow } else { WitnessCase::Case2IIbLow };
        (z / p, case)
    } else {
        let case = if case1 { WitnessCase::Case1IIbHigh } else { WitnessCase::Case2IIbHigh };
        ((z / btt).sqrt(), case)
    };
    Ok((build(n, low, t, weight, &basis)?, case))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random;

    fn close(value: f64, z: f64) -> bool {
        (value - z).abs() <= 1e-9 * z.max(1.0)
    }

    #[test]
    fn lower_endpoint_is_canonical_embedding() {
        let a = fixtures::six_by_six::<f64>();
        let w = witness_for(&a, 2, 3.0).unwrap();
        assert_eq!(w.case, WitnessCase::LowerEndpoint);
        assert_eq!(w.value, 3.0);
        assert_eq!(w.isometry.anchors(), &[vec![0], vec![1]]);
    }

    #[test]
    fn upper_endpoint_uses_two_anchor_column() {
        let a = fixtures::six_by_six::<f64>();
        let w = witness_for(&a, 3, 9.0).unwrap();
        assert_eq!(w.case, WitnessCase::UpperEndpoint);
        assert_eq!(w.value, 9.0);
        assert_eq!(w.isometry.anchors()[0], vec![3, 4]);
    }

    #[test]
    fn out_of_range_reports_interval() {
        let a = fixtures::six_by_six::<f64>();
        let err = witness_for(&a, 4, 6.0).unwrap_err();
        assert_eq!(err, Error::ValueOutOfRange { z: 6.0, lo: 6.2, hi: 9.0 });
        assert!(witness_for(&a, 6, 9.0).is_err());
        let w = witness_for(&a, 6, 8.3).unwrap();
        assert_eq!(w.case, WitnessCase::FullRank);
        assert_eq!(w.value, 8.3);
        assert!(witness_for(&a, 2, f64::NAN).is_err());
    }

    #[test]
    fn zero_matrix_short_circuits() {
        let a = MaxMatrix::<f64>::zeros(4, 4).unwrap();
        let w = witness_for(&a, 2, 0.0).unwrap();
        assert_eq!(w.case, WitnessCase::ZeroMatrix);
        assert_eq!(w.value, 0.0);
        assert!(witness_for(&a, 2, 0.5).is_err());
    }

    #[test]
    fn zero_lower_endpoint_needs_no_division() {
        let a = MaxMatrix::<f64>::from_f64_rows(&[&[0.0, 3.0, 0.0], &[1.0, 0.0, 0.0], &[0.0, 2.0, 5.0]]).unwrap();
        let w = witness_for(&a, 2, 0.0).unwrap();
        assert_eq!(w.value, 0.0);
    }

    #[test]
    fn random_grid_hits_every_value() {
        let mut rng = random::rng(99);
        for _ in 0..40 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 6, 0.8, false).unwrap();
            let range = w_max_k(&a, 3).unwrap();
            for i in 0..=100 {
                let z = range.lo() + (range.hi() - range.lo()) * i as f64 / 100.0;
                let w = witness_for(&a, 3, z).unwrap();
                assert!(close(w.value, z), "z = {z}, got {} via {:?}", w.value, w.case);
            }
        }
    }

    /// Hand-built sorted matrices steering into each branch of the case tree.
    #[test]
    fn every_case_is_reachable() {
        let mut seen = std::collections::HashSet::new();
        // Case 1: argmax (0, 3), k = 2 → t = max(r, k) = k-th index.
        let case1 = MaxMatrix::<f64>::from_f64_rows(&[
            &[1.0, 0.5, 0.2, 10.0],
            &[0.5, 2.0, 0.1, 0.3],
            &[6.0, 0.1, 5.0, 0.1],
            &[0.1, 0.1, 0.1, 6.0],
        ])
        .unwrap();
        // k = 2: c = 2, t = index 1 (b_tt = 2): only case (i)
        for z in [3.0, 7.5] {
            let w = witness_for(&case1, 2, z).unwrap();
            assert!(close(w.value, z));
            seen.insert(w.case);
        }
        // Case 1 with t above k: argmax (2, 3), k = 1, t = 2, p = max(b_02, b_20) = 6 > c = 1.
        let case1b = MaxMatrix::<f64>::from_f64_rows(&[
            &[1.0, 0.5, 0.2, 0.1],
            &[0.5, 2.0, 0.1, 0.3],
            &[3.0, 0.1, 7.0, 10.0],
            &[0.1, 0.1, 0.1, 8.0],
        ])
        .unwrap();
        for z in [1.2, 2.0, 6.5, 7.5] {
            let w = witness_for(&case1b, 1, z).unwrap();
            assert!(close(w.value, z), "z = {z} via {:?}", w.case);
            seen.insert(w.case);
        }
        let case1a = case1b.with_entry(2, 0, 0.5).unwrap();
        let w = witness_for(&case1a, 1, 3.0).unwrap();
        assert!(close(w.value, 3.0));
        seen.insert(w.case);
        // Case 2: argmax (0, 1), k = 2 ≥ s.
        let case2 = MaxMatrix::<f64>::from_f64_rows(&[
            &[1.0, 10.0, 0.5, 0.2],
            &[0.1, 2.0, 0.5, 0.2],
            &[0.1, 0.1, 6.0, 0.2],
            &[0.1, 0.1, 0.1, 7.0],
        ])
        .unwrap();
        for z in [3.0, 8.0] {
            let w = witness_for(&case2, 2, z).unwrap();
            assert!(close(w.value, z), "z = {z} via {:?}", w.case);
            seen.insert(w.case);
        }
        // p = max(b_02, b_20) > c = 2 in case 2
        let case2b = case2.with_entry(0, 2, 4.0).unwrap();
        for z in [2.5, 5.0] {
            let w = witness_for(&case2b, 2, z).unwrap();
            assert!(close(w.value, z), "z = {z} via {:?}", w.case);
            seen.insert(w.case);
        }
        for case in [
            WitnessCase::Case1I,
            WitnessCase::Case1IIa,
            WitnessCase::Case1IIbLow,
            WitnessCase::Case1IIbHigh,
            WitnessCase::Case2I,
            WitnessCase::Case2IIa,
            WitnessCase::Case2IIbLow,
            WitnessCase::Case2IIbHigh,
        ] {
            assert!(seen.contains(&case), "{case:?} not reached; saw {seen:?}");
        }
    }

    #[test]
    fn transposed_argmax_is_recorded() {
        let a = MaxMatrix::<f64>::from_f64_rows(&[&[1.0, 0.0, 0.0], &[0.0, 2.0, 0.0], &[9.0, 0.0, 3.0]]).unwrap();
        let w = witness_for(&a, 1, 5.0).unwrap();
        assert!(w.transposed);
        assert!(close(w.value, 5.0));
    }
}
