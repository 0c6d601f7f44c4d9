use crate::error::{Error, Result};
use crate::maxcore::{Interval, MaxMatrix, Permutation};
use crate::report::LawReport;
use crate::scalar::Scalar;

use super::w_max_k;

/// Above this size principal-submatrix inclusion is only checked on
/// contiguous index windows instead of every subset.
const SUBSET_LIMIT: usize = 10;

/// Checks the algebraic laws of the k-numerical range on computed intervals:
/// scaling and sums, conjugation invariance, principal-submatrix inclusion,
/// transpose invariance and nesting in `k`.
pub fn w_max_k_law_suite<T: Scalar>(
    a: &MaxMatrix<T>,
    b: &MaxMatrix<T>,
    alpha: T,
    beta: T,
    k: usize,
) -> Result<LawReport> {
    let n = a.require_square("w_max_k_law_suite")?;
    if b.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            op: "w_max_k_law_suite",
            left: a.shape(),
            right: b.shape(),
        });
    }
    if !(alpha >= T::zero() && beta >= T::zero() && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidParameter("alpha and beta must be finite and nonnegative".into()));
    }
    let wa = w_max_k(a, k)?;
    let mut report = LawReport::new();

    // scaling: W(αA ⊕ βI) = αW(A) ⊕ β, endpoint for endpoint
    let scaled = a
        .scale(alpha)?
        .max_add(&MaxMatrix::identity(n)?.scale(beta)?)?;
    let lhs = w_max_k(&scaled, k)?;
    let rhs = wa.scale_oplus(alpha, beta);
    report.check(format!("scaling k={k}"), lhs == rhs, || {
        format!("W(αA⊕βI) = {lhs} but αW(A)⊕β = {rhs} (α={alpha}, β={beta})")
    });

    let wb = w_max_k(b, k)?;
    let wsum = w_max_k(&a.max_add(b)?, k)?;
    let bound = wa.oplus(&wb);
    report.check(format!("sum inclusion k={k}"), wsum.is_subset_of(&bound), || {
        format!("W(A⊕B) = {wsum} not inside W(A)⊕W(B) = {bound}")
    });
    if k == n {
        report.check("sum equality k=n", wsum.approx_eq(&bound), || {
            format!("W(A⊕B) = {wsum} differs from W(A)⊕W(B) = {bound}")
        });
    }

    let mut perms = vec![
        Permutation::new((0..n).rev().collect())?,
        Permutation::new((0..n).map(|i| (i + 1) % n).collect())?,
        a.sort_diagonal_permutation()?,
    ];
    if n >= 2 {
        perms.push(Permutation::transposition(n, 0, n - 1)?);
    }
    for sigma in &perms {
        let conj = w_max_k(&a.conjugate_by_permutation(sigma)?, k)?;
        report.check(format!("conjugation invariance k={k} σ={:?}", sigma.as_slice()), conj == wa, || {
            format!("W(PᵗAP) = {conj} but W(A) = {wa}")
        });
    }

    let mut sub_fail: Option<String> = None;
    for idx in principal_index_sets(n, k) {
        let sub = a.principal_submatrix(&idx)?;
        let ws = w_max_k(&sub, k)?;
        if !ws.is_subset_of(&wa) && sub_fail.is_none() {
            sub_fail = Some(format!("indices {idx:?}: W(B) = {ws} not inside W(A) = {wa}"));
        }
    }
    report.check(format!("principal submatrix inclusion k={k}"), sub_fail.is_none(), || {
        sub_fail.clone().unwrap_or_default()
    });

    let wt = w_max_k(&a.transpose(), k)?;
    report.check(format!("transpose invariance k={k}"), wt == wa, || {
        format!("W(Aᵗ) = {wt} but W(A) = {wa}")
    });

    let chain: Vec<Interval<T>> = (1..=n).map(|j| w_max_k(a, j)).collect::<Result<_>>()?;
    let broken = chain.windows(2).position(|w| !w[1].is_subset_of(&w[0]));
    report.check("nesting over k", broken.is_none(), || {
        let j = broken.unwrap_or(0);
        format!("W^{}(A) = {} not inside W^{}(A) = {}", j + 2, chain[j + 1], j + 1, chain[j])
    });

    Ok(report)
}

/// Index sets of principal submatrices of order at least `k`.
fn principal_index_sets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if n <= SUBSET_LIMIT {
        (1u32..(1 << n))
            .filter(|m| m.count_ones() as usize >= k)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    } else {
        (k..=n)
            .flat_map(|len| (0..=n - len).map(move |start| (start..start + len).collect()))
            .collect()
    }
}
