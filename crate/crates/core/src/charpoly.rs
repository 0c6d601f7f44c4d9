//! The characteristic maxpolynomial `X_A(x) = perm(xI ⊕ A) = ⊕_k δ_k x^{n−k}`.
//!
//! `δ_k` is the largest max permanent among the k×k principal submatrices.
//! A coefficient is essential when its term strictly dominates on some open
//! interval of `x`; in `(degree, ln δ)` coordinates these are exactly the
//! strict vertices of the upper concave hull. Consecutive essential indices
//! `i < j` give the root `(δ_j / δ_i)^{1/(j−i)}` with multiplicity `j − i`.

use crate::error::{Error, Result};
use crate::maxcore::MaxMatrix;
use crate::report::LawReport;
use crate::scalar::{approx_eq, approx_le, Scalar};
use crate::spectra::{Spectrum, SpectrumKind};

/// Default brute-force limit for permanents and δ coefficients.
pub const PERMANENT_CAP: usize = 10;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// Max permanent of the principal submatrix on `idx`. Rows are assigned in
/// order so each product is accumulated `a_{0σ(0)} · a_{1σ(1)} · …`.
fn permanent_on<T: Scalar>(a: &MaxMatrix<T>, idx: &[usize]) -> T {
    let k = idx.len();
    let mut dp = vec![T::zero(); 1 << k];
    dp[0] = T::one();
    for mask in 0usize..(1 << k) {
        let cur = dp[mask];
        if cur == T::zero() {
            continue;
        }
        let filled = mask.count_ones() as usize;
        if filled == k {
            continue;
        }
        let row = idx[filled];
        for (c, &col) in idx.iter().enumerate() {
            if mask >> c & 1 == 0 {
                let next = mask | 1 << c;
                dp[next] = dp[next].oplus(cur * a.get(row, col));
            }
        }
    }
    dp[(1 << k) - 1]
}

/// `perm(A) = max_σ ∏ a_{iσ(i)}`.
pub fn max_permanent<T: Scalar>(a: &MaxMatrix<T>, cap: usize) -> Result<T> {
    let n = a.require_square("max_permanent")?;
    check_cap(n, cap)?;
    Ok(permanent_on(a, &(0..n).collect::<Vec<_>>()))
}

/// `δ_0 … δ_n`, with `δ_0 = 1`.
pub fn delta_coefficients<T: Scalar>(a: &MaxMatrix<T>, cap: usize) -> Result<Vec<T>> {
    let n = a.require_square("delta_coefficients")?;
    check_cap(n, cap)?;
    let mut deltas = vec![T::zero(); n + 1];
    deltas[0] = T::one();
    for mask in 1usize..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let k = idx.len();
        deltas[k] = deltas[k].oplus(permanent_on(a, &idx));
    }
    Ok(deltas)
}

/// Essential flags by the upper concave hull of `(i, ln δ_i)` over the
/// positive coefficients. Points on a hull edge (within the log tolerance)
/// are inessential.
pub fn essential_flags<T: Scalar>(deltas: &[T]) -> Vec<bool> {
    let tol = T::log_collinear_tol();
    let pts: Vec<(usize, T)> = deltas
        .iter()
        .enumerate()
        .filter(|(_, &d)| d > T::zero())
        .map(|(i, &d)| (i, d.ln()))
        .collect();
    let mut hull: Vec<(usize, T)> = Vec::with_capacity(pts.len());
    for p in pts {
        while hull.len() >= 2 {
            let (i1, y1) = hull[hull.len() - 2];
            let (i2, y2) = hull[hull.len() - 1];
            let t = T::lit((i2 - i1) as f64) / T::lit((p.0 - i1) as f64);
            let on_line = y1 + (p.1 - y1) * t;
            if y2 <= on_line + tol {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut flags = vec![false; deltas.len()];
    for (i, _) in hull {
        flags[i] = true;
    }
    flags
}

fn essential_indices(flags: &[bool]) -> Vec<usize> {
    flags.iter().enumerate().filter(|(_, &e)| e).map(|(i, _)| i).collect()
}

/// `(δ_j / δ_i)^{1/(j−i)}` for `i < j`.
fn ratio<T: Scalar>(deltas: &[T], i: usize, j: usize) -> T {
    (deltas[j] / deltas[i]).powf(T::one() / T::lit((j - i) as f64))
}

/// Tropical roots with algebraic multiplicities, including the root 0 with
/// multiplicity `n − i_t` when the last essential index `i_t` is below `n`.
pub fn tropical_roots<T: Scalar>(deltas: &[T], essential: &[bool]) -> Spectrum<T> {
    let n = deltas.len() - 1;
    let idx = essential_indices(essential);
    let mut pairs: Vec<(T, usize)> = idx
        .windows(2)
        .map(|w| (ratio(deltas, w[0], w[1]), w[1] - w[0]))
        .collect();
    let last = idx.last().copied().unwrap_or(0);
    if last < n {
        pairs.push((T::zero(), n - last));
    }
    Spectrum::from_pairs(SpectrumKind::Tropical, pairs)
}

/// `⊕_i δ_i x^{n−i}`.
pub fn charpoly_eval<T: Scalar>(deltas: &[T], x: T) -> T {
    let n = deltas.len() - 1;
    deltas
        .iter()
        .enumerate()
        .fold(T::zero(), |m, (i, &d)| m.oplus(d * x.powi((n - i) as i32)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaxPolynomial<T> {
    pub deltas: Vec<T>,
    pub essential: Vec<bool>,
    /// All roots including 0, so multiplicities sum to `n`.
    pub roots: Spectrum<T>,
    /// Multiplicity of the root 0, `n − i_t`.
    pub zero_mult: usize,
}

impl<T: Scalar> MaxPolynomial<T> {
    pub fn from_deltas(deltas: Vec<T>) -> Self {
        let essential = essential_flags(&deltas);
        let roots = tropical_roots(&deltas, &essential);
        let last = essential_indices(&essential).last().copied().unwrap_or(0);
        let zero_mult = deltas.len() - 1 - last;
        MaxPolynomial {
            deltas,
            essential,
            roots,
            zero_mult,
        }
    }

    pub fn degree(&self) -> usize {
        self.deltas.len() - 1
    }

    pub fn essential_indices(&self) -> Vec<usize> {
        essential_indices(&self.essential)
    }

    /// Roots at consecutive essential pairs, in order `λ_{i_1} > λ_{i_2} > …`
    /// without merging or the zero root.
    pub fn ordered_roots(&self) -> Vec<T> {
        self.essential_indices()
            .windows(2)
            .map(|w| ratio(&self.deltas, w[0], w[1]))
            .collect()
    }

    pub fn eval(&self, x: T) -> T {
        charpoly_eval(&self.deltas, x)
    }
}

pub fn characteristic_polynomial<T: Scalar>(a: &MaxMatrix<T>, cap: usize) -> Result<MaxPolynomial<T>> {
    Ok(MaxPolynomial::from_deltas(delta_coefficients(a, cap)?))
}

/// `σ_trop(A)`.
pub fn sigma_trop<T: Scalar>(a: &MaxMatrix<T>, cap: usize) -> Result<Spectrum<T>> {
    Ok(characteristic_polynomial(a, cap)?.roots)
}

/// `σ_trop^k(A)`: distinct values, descending.
pub fn sigma_trop_k<T: Scalar>(a: &MaxMatrix<T>, k: usize, cap: usize) -> Result<Vec<T>> {
    let n = a.require_square("sigma_trop_k")?;
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    sigma_trop(a, cap)?.k_subset_maxima(k)
}

fn require_sorted_diagonal<T: Scalar>(a: &MaxMatrix<T>) -> Result<()> {
    match a.first_diagonal_descent() {
        Some(position) => Err(Error::DiagonalNotSorted { position }),
        None => Ok(()),
    }
}

/// Diagonal bounds for a matrix with ascending diagonal: each root at a
/// consecutive essential pair `(i, j)` is at least `a_{n−i,n−i}` (1-based),
/// and `δ_{i+1} ≥ δ_i · a_{n−i,n−i}` for every `i`.
pub fn diagonal_bound_check<T: Scalar>(a: &MaxMatrix<T>, cap: usize) -> Result<LawReport> {
    let n = a.require_square("diagonal_bound_check")?;
    require_sorted_diagonal(a)?;
    let p = characteristic_polynomial(a, cap)?;
    let diag = a.diagonal();
    let mut report = LawReport::new();

    for i in 0..n {
        let lhs = p.deltas[i + 1];
        let rhs = p.deltas[i] * diag[n - 1 - i];
        report.check(format!("delta step bound i={i}"), approx_le(rhs, lhs), || {
            format!("δ_{} = {lhs} < δ_{i}·a = {rhs}", i + 1)
        });
    }
    for w in p.essential_indices().windows(2) {
        let (i, j) = (w[0], w[1]);
        let root = ratio(&p.deltas, i, j);
        let bound = diag[n - 1 - i];
        report.check(format!("root diagonal bound ({i},{j})"), approx_le(bound, root), || {
            format!("root {root} below diagonal entry {bound} at position {}", n - i)
        });
    }
    Ok(report)
}

/// Structural invariants of the maxpolynomial of `a`: root ordering, the
/// extremal ratio identities, piecewise evaluation, the diagonal bounds
/// (after sorting the diagonal) and the zero diagonal entry forced by each vanishing `δ_i`.
pub fn charpoly_invariants<T: Scalar>(a: &MaxMatrix<T>, cap: usize) -> Result<LawReport> {
    let n = a.require_square("charpoly_invariants")?;
    let sorted = a.conjugate_by_permutation(&a.sort_diagonal_permutation()?)?;
    let p = characteristic_polynomial(&sorted, cap)?;
    let d = &p.deltas;
    let idx = p.essential_indices();
    let roots = p.ordered_roots();
    let mut report = LawReport::new();

    let last_nonzero = (0..=n).rev().find(|&i| d[i] > T::zero()).unwrap_or(0);
    report.check(
        "first and last nonzero terms essential",
        p.essential[0] && p.essential[last_nonzero],
        || format!("flags {:?}", p.essential),
    );
    report.check(
        "multiplicities sum to n",
        p.roots.total_multiplicity() == n,
        || format!("roots {} for n = {n}", p.roots),
    );

    let descent = roots.windows(2).position(|w| w[0] <= w[1]);
    report.check("roots strictly decreasing", descent.is_none(), || format!("{roots:?}"));

    // backward ratios into i_m are minimised by the predecessor; forward ratios
    // out of i_m are maximised by the successor
    let t = idx.len() - 1;
    let mut extremal_fail = None;
    for m in 1..=t {
        let min_back = (0..m).map(|l| ratio(d, idx[l], idx[m])).fold(T::infinity(), |x, y| x.min(y));
        if !approx_eq(min_back, roots[m - 1]) && extremal_fail.is_none() {
            extremal_fail = Some(format!("backward min at i_{m}: {min_back} vs {}", roots[m - 1]));
        }
    }
    for m in 0..t {
        let max_fwd = (m + 1..=t).map(|l| ratio(d, idx[m], idx[l])).fold(T::zero(), |x, y| x.max(y));
        if !approx_eq(max_fwd, roots[m]) && extremal_fail.is_none() {
            extremal_fail = Some(format!("forward max at i_{m}: {max_fwd} vs {}", roots[m]));
        }
    }
    report.check("extremal ratio identities", extremal_fail.is_none(), || extremal_fail.clone().unwrap_or_default());

    let mut piece_fail = None;
    for m in 0..=t {
        let hi = if m == 0 { None } else { Some(roots[m - 1]) };
        let lo = if m == t { T::zero() } else { roots[m] };
        let mut xs = vec![lo];
        match hi {
            Some(h) => {
                xs.push(h);
                xs.push((lo + h) / T::lit(2.0));
                if lo > T::zero() {
                    xs.push((lo * h).sqrt());
                }
            }
            None => {
                xs.push(lo + T::one());
                xs.push(lo * T::lit(3.0) + T::lit(10.0));
            }
        }
        for x in xs {
            let full = p.eval(x);
            let term = d[idx[m]] * x.powi((n - idx[m]) as i32);
            if !approx_eq(full, term) && piece_fail.is_none() {
                piece_fail = Some(format!("x = {x}: X_A = {full} but δ_{}x^{} = {term}", idx[m], n - idx[m]));
            }
        }
    }
    report.check("piecewise evaluation", piece_fail.is_none(), || piece_fail.clone().unwrap_or_default());

    report.extend(diagonal_bound_check(&sorted, cap)?);

    let diag = sorted.diagonal();
    let zero_fail = (1..=n).find(|&i| d[i] == T::zero() && diag[n - i] != T::zero());
    report.check("zero coefficient forces zero diagonal", zero_fail.is_none(), || {
        let i = zero_fail.unwrap_or(0);
        format!("δ_{i} = 0 but sorted diagonal entry {} is {}", n - i + 1, diag[n - i])
    });

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random;
    use crate::scalar::set_eq;

    /// Independent permanent: recursion over unused columns.
    fn perm_brute(a: &MaxMatrix<f64>) -> f64 {
        fn go(a: &MaxMatrix<f64>, row: usize, used: &mut [bool], acc: f64) -> f64 {
            if row == a.rows() {
                return acc;
            }
            let mut best = 0.0f64;
            for c in 0..a.rows() {
                if !used[c] {
                    used[c] = true;
                    best = best.max(go(a, row + 1, used, acc * a.get(row, c)));
                    used[c] = false;
                }
            }
            best
        }
        go(a, 0, &mut vec![false; a.rows()], 1.0)
    }

    /// Brute-force essentiality: a term is essential when it strictly beats
    /// every other term somewhere on a fine log grid or at x = 0.
    fn essential_by_grid(d: &[f64]) -> Vec<bool> {
        let n = d.len() - 1;
        let mut out = vec![false; n + 1];
        if d[n] > 0.0 {
            out[n] = true;
        }
        for g in 0..=4000 {
            let x = 10f64.powf(-4.0 + 8.0 * g as f64 / 4000.0);
            let terms: Vec<f64> = (0..=n).map(|i| d[i] * x.powi((n - i) as i32)).collect();
            for i in 0..=n {
                if (0..=n).all(|j| j == i || terms[i] > terms[j] * (1.0 + 1e-9)) {
                    out[i] = true;
                }
            }
        }
        out
    }

    #[test]
    fn permanent_examples() {
        let d = MaxMatrix::diag(&[2.0, 3.0, 0.5]).unwrap();
        assert_eq!(max_permanent(&d, 10).unwrap(), 3.0);
        assert_eq!(max_permanent(&fixtures::flip::<f64>(), 10).unwrap(), 1.0);
        let big = MaxMatrix::<f64>::identity(11).unwrap();
        assert!(matches!(max_permanent(&big, 10), Err(Error::CapExceeded { n: 11, cap: 10 })));
        assert_eq!(max_permanent(&big, 11).unwrap(), 1.0);
    }

    #[test]
    fn permanent_matches_enumeration_exactly() {
        let mut rng = random::rng(21);
        for _ in 0..100 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 6, 0.7, false).unwrap();
            assert_eq!(max_permanent(&a, 10).unwrap(), perm_brute(&a));
        }
    }

    #[test]
    fn delta_examples() {
        let i4 = MaxMatrix::<f64>::identity(4).unwrap();
        assert_eq!(delta_coefficients(&i4, 10).unwrap(), vec![1.0; 5]);
        assert_eq!(delta_coefficients(&fixtures::flip::<f64>(), 10).unwrap(), vec![1.0, 0.0, 1.0]);
    }

    #[test]
    fn identity_polynomial() {
        let p = characteristic_polynomial(&MaxMatrix::<f64>::identity(4).unwrap(), 10).unwrap();
        assert_eq!(p.essential, vec![true, false, false, false, true]);
        assert_eq!(p.roots.entries(), &[(1.0, 4)]);
        assert_eq!(p.zero_mult, 0);
        assert_eq!(essential_by_grid(&p.deltas), p.essential);
    }

    #[test]
    fn flip_polynomial() {
        let p = characteristic_polynomial(&fixtures::flip::<f64>(), 10).unwrap();
        assert_eq!(p.essential, vec![true, false, true]);
        assert_eq!(p.roots.entries(), &[(1.0, 2)]);
        assert_eq!(sigma_trop_k(&fixtures::flip::<f64>(), 2, 10).unwrap(), vec![1.0]);
    }

    #[test]
    fn zero_root_multiplicity() {
        let a = MaxMatrix::from_f64_rows(&[&[0.0, 3.0, 0.0], &[0.0, 0.0, 0.0], &[0.0, 0.0, 2.0]]).unwrap();
        let p = characteristic_polynomial(&a, 10).unwrap();
        assert_eq!(p.deltas, vec![1.0, 2.0, 0.0, 0.0]);
        assert_eq!(p.zero_mult, 2);
        assert_eq!(p.roots.entries(), &[(2.0, 1), (0.0, 2)]);
    }

    #[test]
    fn flags_agree_with_grid_scan() {
        let mut rng = random::rng(22);
        for _ in 0..60 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 5, 0.6, false).unwrap();
            let d = delta_coefficients(&a, 10).unwrap();
            assert_eq!(essential_flags(&d), essential_by_grid(&d), "{d:?}");
        }
    }

    #[test]
    fn evaluation_edges() {
        let d = vec![1.0, 4.0, 2.0, 0.5];
        assert_eq!(charpoly_eval(&d, 0.0), 0.5);
        assert_eq!(charpoly_eval(&d, 100.0), 1e6);
    }

    #[test]
    fn invariants_hold_on_random_matrices() {
        let mut rng = random::rng(23);
        for density in [0.3, 0.6, 1.0] {
            for _ in 0..40 {
                let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 6, density, false).unwrap();
                let r = charpoly_invariants(&a, 10).unwrap();
                assert!(r.all_passed(), "{r}\n{a:?}");
            }
        }
    }

    #[test]
    fn bound_check_rejects_unsorted_diagonal() {
        let a = MaxMatrix::diag(&[3.0, 1.0]).unwrap();
        assert!(matches!(diagonal_bound_check(&a, 10), Err(Error::DiagonalNotSorted { .. })));
        let r = diagonal_bound_check(&MaxMatrix::<f64>::identity(3).unwrap(), 10).unwrap();
        assert!(r.all_passed());
    }

    #[test]
    fn conjugation_leaves_polynomial_unchanged() {
        let mut rng = random::rng(24);
        for _ in 0..30 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 5, 0.6, false).unwrap();
            let sigma = random::random_permutation(&mut rng, 5);
            let p = characteristic_polynomial(&a, 10).unwrap();
            let q = characteristic_polynomial(&a.conjugate_by_permutation(&sigma).unwrap(), 10).unwrap();
            assert!(p.deltas.iter().zip(&q.deltas).all(|(x, y)| approx_eq(*x, *y)));
            assert_eq!(p.essential, q.essential);
            assert!(set_eq(&p.roots.values(), &q.roots.values()));
        }
    }

    #[test]
    fn k_spectrum_matches_subset_enumeration() {
        let mut rng = random::rng(25);
        for _ in 0..30 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 5, 0.5, false).unwrap();
            let listed = sigma_trop(&a, 10).unwrap().expanded();
            for k in [2, 3] {
                let mut brute = Vec::new();
                for mask in 0u32..32 {
                    if mask.count_ones() as usize == k {
                        brute.push((0..5).filter(|i| mask >> i & 1 == 1).map(|i| listed[i]).fold(0.0, f64::max));
                    }
                }
                assert!(set_eq(&sigma_trop_k(&a, k, 10).unwrap(), &brute));
            }
        }
    }
}
