//! The set `X_{n×k} = {X ≥ 0 : Xᵗ ⊗ X = I_k}` and the quadratic form
//! `f_A(X) = tr⊗(Xᵗ ⊗ A ⊗ X)`.
//!
//! An `n×k` matrix is in the set exactly when its entries lie in `[0, 1]`,
//! distinct columns have disjoint supports and each column peaks at 1. Such a
//! matrix always carries a `k×k` permutation submatrix, and for `k = n` it is
//! a permutation matrix.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, IsometryProperty, Result};
use crate::maxcore::{MaxMatrix, Permutation};
use crate::random;
use crate::scalar::Scalar;

/// A validated element of `X_{n×k}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry<T> {
    matrix: MaxMatrix<T>,
    /// For each column, the rows where it equals 1.
    anchors: Vec<Vec<usize>>,
}

fn violation(property: IsometryProperty, detail: String) -> Error {
    Error::NotAnIsometry { property, detail }
}

/// Checks every structural property of `X_{n×k}` and wraps the matrix.
///
/// Comparisons are exact: structural zeros and ones must be stored exactly.
/// Error details use 1-based row and column numbers.
pub fn validate_isometry<T: Scalar>(m: &MaxMatrix<T>) -> Result<Isometry<T>> {
    let (n, k) = m.shape();
    if k > n {
        return Err(violation(
            IsometryProperty::Shape,
            format!("{k} columns exceed {n} rows"),
        ));
    }

    for l in 0..n {
        for i in 0..k {
            let v = m.get(l, i);
            if v > T::one() {
                return Err(violation(
                    IsometryProperty::UnitBox,
                    format!("entry ({}, {}) = {v} exceeds 1", l + 1, i + 1),
                ));
            }
        }
    }

    let mut owner: Vec<Option<usize>> = vec![None; n];
    for (l, slot) in owner.iter_mut().enumerate() {
        for i in 0..k {
            if m.get(l, i) != T::zero() {
                if let Some(j) = *slot {
                    return Err(violation(
                        IsometryProperty::DisjointSupports,
                        format!("columns {},{} overlap at row {}", j + 1, i + 1, l + 1),
                    ));
                }
                *slot = Some(i);
            }
        }
    }

    for i in 0..k {
        let peak = m.column_values(i).into_iter().fold(T::zero(), T::oplus);
        if peak != T::one() {
            return Err(violation(
                IsometryProperty::ColumnPeak,
                format!("column {} peaks at {peak}", i + 1),
            ));
        }
    }

    let anchors: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..n).filter(|&l| m.get(l, i) == T::one()).collect())
        .collect();

    // A private anchor: x_li = 1 and every other column vanishes at row l.
    let mut chosen = Vec::with_capacity(k);
    for (i, rows) in anchors.iter().enumerate() {
        let private = rows
            .iter()
            .copied()
            .find(|&l| (0..k).all(|j| j == i || m.get(l, j) == T::zero()));
        match private {
            Some(l) => chosen.push(l),
            None => {
                return Err(violation(
                    IsometryProperty::PrivateAnchor,
                    format!("column {} has no private row equal to 1", i + 1),
                ))
            }
        }
    }

    let sub = MaxMatrix::from_fn(k, k, |a, b| m.get(chosen[a], b))?;
    let is_perm = (0..k).all(|a| (0..k).filter(|&b| sub.get(a, b) == T::one()).count() == 1)
        && (0..k).all(|b| (0..k).filter(|&a| sub.get(a, b) == T::one()).count() == 1)
        && sub.as_slice().iter().all(|&v| v == T::zero() || v == T::one());
    if !is_perm {
        return Err(violation(
            IsometryProperty::PermutationSubmatrix,
            format!("rows {:?} do not form a permutation submatrix", chosen.iter().map(|l| l + 1).collect::<Vec<_>>()),
        ));
    }

    debug_assert_eq!(
        m.transpose().max_mul(m).ok(),
        MaxMatrix::identity(k).ok(),
        "structural checks imply Xᵗ ⊗ X = I"
    );

    Ok(Isometry {
        matrix: m.clone(),
        anchors,
    })
}

impl<T: Scalar> Isometry<T> {
    pub fn matrix(&self) -> &MaxMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> MaxMatrix<T> {
        self.matrix
    }

    /// Ambient dimension `n`.
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// Number of columns `k`.
    pub fn k(&self) -> usize {
        self.matrix.cols()
    }

    /// Rows (0-based) where each column equals 1.
    pub fn anchors(&self) -> &[Vec<usize>] {
        &self.anchors
    }

    /// One anchor row per column; together they index a `k×k` permutation
    /// submatrix.
    pub fn permutation_rows(&self) -> Vec<usize> {
        self.anchors.iter().map(|rows| rows[0]).collect()
    }

    /// Removes column `i`.
    pub fn drop_column(&self, i: usize) -> Result<Self> {
        let k = self.k();
        if i >= k {
            return Err(Error::IndexOutOfRange { index: i, n: k });
        }
        if k == 1 {
            return Err(Error::KOutOfRange { k: 0, n: self.n() });
        }
        let keep: Vec<usize> = (0..k).filter(|&j| j != i).collect();
        let m = MaxMatrix::from_fn(self.n(), k - 1, |l, c| self.matrix.get(l, keep[c]))?;
        validate_isometry(&m)
    }

    /// `U ⊗ X` for the permutation matrix `U` of `sigma`.
    pub fn permute_rows(&self, sigma: &Permutation) -> Result<Self> {
        let u = sigma.to_matrix::<T>();
        validate_isometry(&u.max_mul(&self.matrix)?)
    }
}

/// `X = [e_{i_1}, .., e_{i_k}]` for distinct 0-based `indices`.
pub fn canonical_embedding<T: Scalar>(n: usize, indices: &[usize]) -> Result<Isometry<T>> {
    if indices.is_empty() {
        return Err(Error::KOutOfRange { k: 0, n });
    }
    let mut seen = vec![false; n];
    for &i in indices {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        if std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidParameter(format!("duplicate index {}", i + 1)));
        }
    }
    let m = MaxMatrix::from_fn(n, indices.len(), |l, c| {
        if indices[c] == l {
            T::one()
        } else {
            T::zero()
        }
    })?;
    validate_isometry(&m)
}

/// `f_A(X) = ⊕_i (x⁽ⁱ⁾)ᵗ ⊗ A ⊗ x⁽ⁱ⁾ = max_i max_{p,q} x_p a_pq x_q`.
pub fn f_a<T: Scalar>(a: &MaxMatrix<T>, x: &Isometry<T>) -> Result<T> {
    quadratic_form(a, x.matrix())
}

/// `tr⊗(Xᵗ ⊗ A ⊗ X)` for any nonnegative `X` of compatible shape.
pub fn quadratic_form<T: Scalar>(a: &MaxMatrix<T>, x: &MaxMatrix<T>) -> Result<T> {
    let n = a.require_square("f_A")?;
    if x.rows() != n {
        return Err(Error::DimensionMismatch {
            op: "f_A",
            left: a.shape(),
            right: x.shape(),
        });
    }
    let mut best = T::zero();
    for c in 0..x.cols() {
        let support: Vec<(usize, T)> = (0..n)
            .map(|l| (l, x.get(l, c)))
            .filter(|&(_, v)| v > T::zero())
            .collect();
        for &(p, xp) in &support {
            for &(q, xq) in &support {
                best = best.oplus(xp * a.get(p, q) * xq);
            }
        }
    }
    Ok(best)
}

/// Draws a random element of `X_{n×k}`.
///
/// Anchor rows are a uniformly random injection of the `k` columns into the
/// rows. Every other row joins one of the `k` columns or stays zero, each
/// option with probability `1/(k+1)`, and receives a magnitude uniform on
/// `[0, 1)`. This is not a uniform measure on the set.
pub fn sample_isometry_with<T: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Result<Isometry<T>> {
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let mut rows: Vec<usize> = (0..n).collect();
    rows.shuffle(rng);
    let mut data = vec![T::zero(); n * k];
    for (c, &l) in rows[..k].iter().enumerate() {
        data[l * k + c] = T::one();
    }
    for &l in &rows[k..] {
        let c = rng.gen_range(0..=k);
        if c < k {
            data[l * k + c] = T::lit(rng.gen::<f64>());
        }
    }
    validate_isometry(&MaxMatrix::new(n, k, data)?)
}

/// Seeded wrapper around [`sample_isometry_with`].
pub fn sample_isometry<T: Scalar>(n: usize, k: usize, seed: u64) -> Result<Isometry<T>> {
    sample_isometry_with(&mut random::rng(seed), n, k)
}

/// Both sides of the Lipschitz estimate for `f_A`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LipschitzGap<T> {
    /// `|f_A(X) - f_A(Y)|`.
    pub lhs: T,
    /// `‖A‖ · ‖X⊗Xᵗ - Y⊗Yᵗ‖`.
    pub rhs: T,
    /// `‖A‖ · (‖X‖ + ‖Y‖) · ‖X - Y‖`, which dominates `rhs`.
    pub outer: T,
}

pub fn lipschitz_gap<T: Scalar>(a: &MaxMatrix<T>, x: &Isometry<T>, y: &Isometry<T>) -> Result<LipschitzGap<T>> {
    if x.matrix().shape() != y.matrix().shape() {
        return Err(Error::DimensionMismatch {
            op: "lipschitz_gap",
            left: x.matrix().shape(),
            right: y.matrix().shape(),
        });
    }
    let lhs = (f_a(a, x)? - f_a(a, y)?).abs();
    let (xm, ym) = (x.matrix(), y.matrix());
    let xx = xm.max_mul(&xm.transpose())?;
    let yy = ym.max_mul(&ym.transpose())?;
    let norm_a = a.norm_max();
    let rhs = norm_a * xx.dist(&yy)?;
    let outer = norm_a * (xm.norm_max() + ym.norm_max()) * xm.dist(ym)?;
    Ok(LipschitzGap { lhs, rhs, outer })
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = MaxMatrix<f64>;

    #[test]
    fn canonical_columns_are_valid() {
        let x = validate_isometry(&M::from_f64_rows(&[&[1.0, 0.0], &[0.0, 1.0], &[0.0, 0.0], &[0.0, 0.0]]).unwrap()).unwrap();
        assert_eq!(x.anchors(), &[vec![0], vec![1]]);
        let e = canonical_embedding::<f64>(5, &[1, 3, 4]).unwrap();
        assert_eq!(e.matrix().column_values(1), vec![0.0, 0.0, 0.0, 1.0, 0.0]);
        assert_eq!(e.permutation_rows(), vec![1, 3, 4]);
    }

    #[test]
    fn single_column_with_fraction() {
        let x = validate_isometry(&M::column(&[1.0, 0.5]).unwrap()).unwrap();
        assert_eq!(x.anchors(), &[vec![0]]);
    }

    #[test]
    fn overlapping_columns_rejected() {
        let err = validate_isometry(&M::from_f64_rows(&[&[1.0, 1.0], &[0.0, 0.0]]).unwrap()).unwrap_err();
        assert_eq!(err.to_string(), "not an isometry (disjoint supports): columns 1,2 overlap at row 1");
    }

    #[test]
    fn other_violations() {
        let wide = M::zeros(2, 3).unwrap();
        assert!(matches!(
            validate_isometry(&wide),
            Err(Error::NotAnIsometry { property: IsometryProperty::Shape, .. })
        ));
        let big = M::column(&[1.5, 0.0]).unwrap();
        assert!(matches!(
            validate_isometry(&big),
            Err(Error::NotAnIsometry { property: IsometryProperty::UnitBox, .. })
        ));
        let low = M::column(&[0.5, 0.25]).unwrap();
        assert!(matches!(
            validate_isometry(&low),
            Err(Error::NotAnIsometry { property: IsometryProperty::ColumnPeak, .. })
        ));
    }

    #[test]
    fn canonical_embedding_errors() {
        assert!(canonical_embedding::<f64>(3, &[0, 0]).is_err());
        assert!(canonical_embedding::<f64>(3, &[3]).is_err());
        assert!(canonical_embedding::<f64>(3, &[]).is_err());
    }

    #[test]
    fn f_a_identity_is_trace() {
        let a = M::from_f64_rows(&[&[1.0, 5.0, 0.0], &[2.0, 3.0, 1.0], &[0.0, 4.0, 2.0]]).unwrap();
        let x = canonical_embedding::<f64>(3, &[0, 1, 2]).unwrap();
        assert_eq!(f_a(&a, &x).unwrap(), a.trace_max().unwrap());
    }

    #[test]
    fn f_a_on_sorted_diagonal_embedding_is_kth_diagonal() {
        let a = M::from_f64_rows(&[
            &[1.0, 9.0, 0.0, 4.0],
            &[2.0, 2.0, 1.0, 0.0],
            &[0.0, 4.0, 3.0, 8.0],
            &[5.0, 0.0, 0.0, 6.0],
        ])
        .unwrap();
        for k in 1..=4 {
            let idx: Vec<usize> = (0..k).collect();
            let x = canonical_embedding::<f64>(4, &idx).unwrap();
            assert_eq!(f_a(&a, &x).unwrap(), a.get(k - 1, k - 1));
        }
    }

    #[test]
    fn f_a_matches_matrix_product_route() {
        let mut rng = random::rng(11);
        for _ in 0..50 {
            let a: M = random::random_matrix(&mut rng, 5, 0.7, false).unwrap();
            let x: Isometry<f64> = sample_isometry_with(&mut rng, 5, 3).unwrap();
            let xm = x.matrix();
            let via_products = xm.transpose().max_mul(&a).unwrap().max_mul(xm).unwrap().trace_max().unwrap();
            let direct = f_a(&a, &x).unwrap();
            assert!((via_products - direct).abs() <= 1e-12 * direct.max(1.0));
        }
    }

    #[test]
    fn full_rank_samples_are_permutations() {
        for seed in 0..20 {
            let x = sample_isometry::<f64>(4, 4, seed).unwrap();
            let m = x.matrix();
            assert!(m.as_slice().iter().all(|&v| v == 0.0 || v == 1.0));
            assert_eq!(m.max_mul(&m.transpose()).unwrap(), M::identity(4).unwrap());
        }
        assert!(sample_isometry::<f64>(3, 4, 0).is_err());
        assert!(sample_isometry::<f64>(3, 0, 0).is_err());
    }

    #[test]
    fn lipschitz_gap_zero_on_diagonal() {
        let a = M::from_f64_rows(&[&[1.0, 2.0], &[3.0, 4.0]]).unwrap();
        let x = sample_isometry::<f64>(2, 1, 3).unwrap();
        let g = lipschitz_gap(&a, &x, &x).unwrap();
        assert_eq!((g.lhs, g.rhs), (0.0, 0.0));
        let y = sample_isometry::<f64>(2, 2, 3).unwrap();
        assert!(lipschitz_gap(&a, &x, &y).is_err());
    }

    #[test]
    fn structural_closure_properties() {
        let mut rng = random::rng(5);
        for _ in 0..100 {
            let x: Isometry<f64> = sample_isometry_with(&mut rng, 6, 3).unwrap();
            let sigma = random::random_permutation(&mut rng, 6);
            assert!(x.permute_rows(&sigma).is_ok());
            for i in 0..3 {
                assert_eq!(x.drop_column(i).unwrap().k(), 2);
            }
        }
    }
}
