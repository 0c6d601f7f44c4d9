//! The max c-numerical range and its matrix generalisation, both over the
//! permutation group, plus max convex hulls of finite sets.
//!
//! For a permutation matrix `X` with columns `e_{σ(j)}`,
//! `tr⊗(C ⊗ Xᵗ ⊗ A ⊗ X) = max_{i,l} c_il · a_{σ(l)σ(i)}`. A vector `c` stands
//! for `diag(c)`.

use crate::error::{Error, Result};
use crate::maxcore::{Interval, MaxMatrix, Permutation};
use crate::report::LawReport;
use crate::scalar::{dedup_asc, set_eq, set_subset, Scalar};

/// Default brute-force limit for enumerating `S_n`.
pub const PERMUTATION_CAP: usize = 9;

/// `conv⊗(M) = [min M, max M]` for a finite nonempty set.
pub fn conv_max<T: Scalar>(values: &[T]) -> Result<Interval<T>> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    let lo = values.iter().fold(T::infinity(), |m, &v| m.min(v));
    let hi = values.iter().fold(T::neg_infinity(), |m, &v| m.max(v));
    Interval::new(lo, hi)
}

/// Weights `α` with `⊕ α_i = 1` realising `t ∈ conv⊗(M)` as `⊕ α_i x_i`:
/// weight 1 on a minimal element and `t / x_i` on every element from `t` up.
pub fn conv_max_weights<T: Scalar>(values: &[T], t: T) -> Result<Vec<T>> {
    let hull = conv_max(values)?;
    if !hull.contains(t) {
        return Err(Error::ValueOutOfRange {
            z: t.as_f64(),
            lo: hull.lo().as_f64(),
            hi: hull.hi().as_f64(),
        });
    }
    let t = hull.clamp(t);
    let argmin = values
        .iter()
        .position(|&v| v == hull.lo())
        .expect("minimum is attained");
    Ok(values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            if i == argmin {
                T::one()
            } else if v >= t {
                t / v
            } else {
                T::zero()
            }
        })
        .collect())
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

/// `W_max^c(A) = {max_i c_i · a_{σ(i)σ(i)} : σ ∈ S_n}`, ascending.
pub fn w_max_c<T: Scalar>(a: &MaxMatrix<T>, c: &[T], cap: usize) -> Result<Vec<T>> {
    let n = a.require_square("w_max_c")?;
    if c.len() != n {
        return Err(Error::DimensionMismatch {
            op: "w_max_c",
            left: a.shape(),
            right: (c.len(), 1),
        });
    }
    if c.iter().any(|&v| !(v.is_finite() && v >= T::zero())) {
        return Err(Error::InvalidParameter("c must be finite and nonnegative".into()));
    }
    check_cap(n, cap)?;
    let diag = a.diagonal();
    let values = Permutation::all(n)
        .map(|s| (0..n).fold(T::zero(), |m, i| m.oplus(c[i] * diag[s.apply(i)])))
        .collect();
    Ok(dedup_asc(values))
}

/// `conv⊗(W_max^c(A))`.
pub fn w_max_c_hull<T: Scalar>(a: &MaxMatrix<T>, c: &[T], cap: usize) -> Result<Interval<T>> {
    conv_max(&w_max_c(a, c, cap)?)
}

/// `W_max^C(A) = {tr⊗(C ⊗ Xᵗ ⊗ A ⊗ X) : X ∈ U_n}`, ascending.
pub fn w_max_c_matrix<T: Scalar>(a: &MaxMatrix<T>, c: &MaxMatrix<T>, cap: usize) -> Result<Vec<T>> {
    let n = a.require_square("w_max_c_matrix")?;
    if c.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            op: "w_max_c_matrix",
            left: a.shape(),
            right: c.shape(),
        });
    }
    check_cap(n, cap)?;
    let values = Permutation::all(n)
        .map(|s| {
            let mut best = T::zero();
            for i in 0..n {
                for l in 0..n {
                    best = best.oplus(c.get(i, l) * a.get(s.apply(l), s.apply(i)));
                }
            }
            best
        })
        .collect();
    Ok(dedup_asc(values))
}

/// `{u ⊕ v : u ∈ s, v ∈ t}`.
pub fn set_oplus<T: Scalar>(s: &[T], t: &[T]) -> Vec<T> {
    dedup_asc(s.iter().flat_map(|&u| t.iter().map(move |&v| u.oplus(v))).collect())
}

fn is_symmetric<T: Scalar>(c: &MaxMatrix<T>) -> bool {
    c.transpose() == *c
}

/// Checks the algebraic laws of the C-numerical range as set identities:
/// scaling, the two sum inclusions, conjugation invariance, transpose
/// invariance for symmetric `C`, the `αI` closed form and the symmetry
/// `W^C(A) = W^A(C)`.
pub fn c_range_law_suite<T: Scalar>(
    a: &MaxMatrix<T>,
    b: &MaxMatrix<T>,
    c: &MaxMatrix<T>,
    d: &MaxMatrix<T>,
    alpha: T,
    beta: T,
    cap: usize,
) -> Result<LawReport> {
    let n = a.require_square("c_range_law_suite")?;
    for m in [b, c, d] {
        if m.shape() != a.shape() {
            return Err(Error::DimensionMismatch {
                op: "c_range_law_suite",
                left: a.shape(),
                right: m.shape(),
            });
        }
    }
    if !(alpha >= T::zero() && beta >= T::zero() && alpha.is_finite() && beta.is_finite()) {
        return Err(Error::InvalidParameter("alpha and beta must be finite and nonnegative".into()));
    }
    let w = |x: &MaxMatrix<T>, y: &MaxMatrix<T>| w_max_c_matrix(x, y, cap);
    let mut report = LawReport::new();
    let wa = w(a, c)?;

    let shifted = a.scale(alpha)?.max_add(&MaxMatrix::identity(n)?.scale(beta)?)?;
    let lhs = w(&shifted, c)?;
    let trc = c.trace_max()?;
    let rhs = dedup_asc(wa.iter().map(|&v| (alpha * v).oplus(beta * trc)).collect());
    report.check("scaling", set_eq(&lhs, &rhs), || {
        format!("W^C(αA⊕βI) = {lhs:?} but αW^C(A)⊕β·tr(C) = {rhs:?}")
    });

    let wsum = w(&a.max_add(b)?, c)?;
    let bound = set_oplus(&wa, &w(b, c)?);
    report.check("sum inclusion in A", set_subset(&wsum, &bound), || {
        format!("W^C(A⊕B) = {wsum:?} not inside {bound:?}")
    });
    let wcd = w(a, &c.max_add(d)?)?;
    let bound = set_oplus(&wa, &w(a, d)?);
    report.check("sum inclusion in C", set_subset(&wcd, &bound), || {
        format!("W^(C⊕D)(A) = {wcd:?} not inside {bound:?}")
    });

    let mut perms = vec![
        Permutation::new((0..n).rev().collect())?,
        Permutation::new((0..n).map(|i| (i + 1) % n).collect())?,
    ];
    if n >= 2 {
        perms.push(Permutation::transposition(n, 0, 1)?);
    }
    for sigma in &perms {
        let conj = w(&a.conjugate_by_permutation(sigma)?, c)?;
        report.check(format!("conjugation invariance σ={:?}", sigma.as_slice()), set_eq(&conj, &wa), || {
            format!("W^C(UᵗAU) = {conj:?} but W^C(A) = {wa:?}")
        });
    }

    let sym = c.max_add(&c.transpose())?;
    let mut symmetric = vec![sym];
    if is_symmetric(c) {
        symmetric.push(c.clone());
    }
    for s in &symmetric {
        let wt = w(&a.transpose(), s)?;
        let ws = w(a, s)?;
        report.check("transpose invariance for symmetric C", set_eq(&wt, &ws), || {
            format!("W^C(Aᵗ) = {wt:?} but W^C(A) = {ws:?}")
        });
    }

    let scalar = w(a, &MaxMatrix::identity(n)?.scale(alpha)?)?;
    let expect = alpha * a.trace_max()?;
    report.check("αI closed form", set_eq(&scalar, &[expect]), || {
        format!("W^(αI)(A) = {scalar:?} but α·tr(A) = {expect}")
    });

    let swapped = w(c, a)?;
    report.check("symmetry in A and C", set_eq(&wa, &swapped), || {
        format!("W^C(A) = {wa:?} but W^A(C) = {swapped:?}")
    });

    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    fn diag(v: &[f64]) -> MaxMatrix<f64> {
        MaxMatrix::diag(v).unwrap()
    }

    #[test]
    fn conv_examples() {
        assert_eq!(conv_max(&[5.0]).unwrap(), Interval::singleton(5.0).unwrap());
        assert_eq!(conv_max(&[0.0, 1.0]).unwrap(), Interval::new(0.0, 1.0).unwrap());
        assert_eq!(conv_max(&[2.0, 7.0, 4.0]).unwrap(), Interval::new(2.0, 7.0).unwrap());
        assert!(matches!(conv_max::<f64>(&[]), Err(Error::EmptySet)));
    }

    #[test]
    fn conv_weights_realise_every_point() {
        let m = [2.0, 7.0, 4.0];
        for g in 0..=50 {
            let t = 2.0 + 5.0 * g as f64 / 50.0;
            let w = conv_max_weights(&m, t).unwrap();
            assert_eq!(w.iter().cloned().fold(0.0, f64::max), 1.0);
            let got = w.iter().zip(&m).map(|(a, x)| a * x).fold(0.0, f64::max);
            assert!((got - t).abs() < 1e-12, "t = {t}: {got}");
        }
        assert!(conv_max_weights(&m, 8.0).is_err());
    }

    #[test]
    fn conv_combinations_stay_inside() {
        let m = [2.0, 7.0, 4.0];
        let hull = conv_max(&m).unwrap();
        let steps = 8;
        for i in 0..=steps {
            for j in 0..=steps {
                let alphas = [1.0, i as f64 / steps as f64, j as f64 / steps as f64];
                for rot in 0..3 {
                    let v = (0..3).map(|q| alphas[(q + rot) % 3] * m[q]).fold(0.0, f64::max);
                    assert!(hull.contains(v));
                }
            }
        }
    }

    #[test]
    fn c_range_examples() {
        assert_eq!(w_max_c(&diag(&[3.0, 5.0]), &[2.0, 1.0], 9).unwrap(), vec![6.0, 10.0]);
        assert_eq!(w_max_c_hull(&diag(&[3.0, 5.0]), &[2.0, 1.0], 9).unwrap(), Interval::new(6.0, 10.0).unwrap());
        let a: MaxMatrix<f64> = random::gen_matrix(5, 0.8, 1, false).unwrap();
        assert_eq!(w_max_c(&a, &[2.0; 5], 9).unwrap().len(), 1);
        let constant = a.with_entry(0, 0, 1.0).unwrap();
        let constant = (1..5).fold(constant, |m, i| m.with_entry(i, i, 1.0).unwrap());
        assert_eq!(w_max_c(&constant, &[1.0, 2.0, 3.0, 4.0, 5.0], 9).unwrap(), vec![5.0]);
        let lo = a.diagonal().into_iter().fold(f64::INFINITY, f64::min);
        let hi = a.trace_max().unwrap();
        assert_eq!(w_max_c_hull(&a, &[1.0, 0.0, 0.0, 0.0, 0.0], 9).unwrap(), Interval::new(lo, hi).unwrap());
        assert_eq!(
            w_max_c_hull(&a, &[0.5; 5], 9).unwrap(),
            Interval::singleton(0.5 * a.trace_max().unwrap()).unwrap()
        );
    }

    #[test]
    fn errors() {
        let a = MaxMatrix::<f64>::identity(10).unwrap();
        assert!(matches!(w_max_c(&a, &[1.0; 10], 9), Err(Error::CapExceeded { n: 10, cap: 9 })));
        assert!(w_max_c(&a, &[1.0; 3], 9).is_err());
        let c = MaxMatrix::<f64>::identity(3).unwrap();
        assert!(w_max_c_matrix(&a, &c, 12).is_err());
    }

    #[test]
    fn single_entry_c() {
        let a: MaxMatrix<f64> = random::gen_matrix(4, 1.0, 2, false).unwrap();
        let rr = MaxMatrix::zeros(4, 4).unwrap().with_entry(2, 2, 1.0).unwrap();
        assert!(set_eq(&w_max_c_matrix(&a, &rr, 9).unwrap(), &a.diagonal()));
        let rs = MaxMatrix::zeros(4, 4).unwrap().with_entry(0, 3, 1.0).unwrap();
        let off: Vec<f64> = (0..4)
            .flat_map(|i| (0..4).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a.get(i, j))
            .collect();
        assert!(set_eq(&w_max_c_matrix(&a, &rs, 9).unwrap(), &off));
    }

    #[test]
    fn diagonal_c_agrees_with_vector_form() {
        let mut rng = random::rng(31);
        for _ in 0..20 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 5, 0.7, false).unwrap();
            let c: MaxMatrix<f64> = random::random_matrix(&mut rng, 5, 1.0, false).unwrap();
            let cv = c.diagonal();
            assert!(set_eq(&w_max_c(&a, &cv, 9).unwrap(), &w_max_c_matrix(&a, &diag(&cv), 9).unwrap()));
        }
    }

    #[test]
    fn laws_on_random_quadruples() {
        let mut rng = random::rng(32);
        for _ in 0..20 {
            let ms: Vec<MaxMatrix<f64>> = (0..4)
                .map(|_| random::random_matrix(&mut rng, 5, 0.6, false).unwrap())
                .collect();
            let r = c_range_law_suite(&ms[0], &ms[1], &ms[2], &ms[3], 0.8, 3.0, 9).unwrap();
            assert!(r.all_passed(), "{r}");
        }
        let a: MaxMatrix<f64> = random::gen_matrix(4, 0.9, 5, false).unwrap();
        let r = c_range_law_suite(&a, &a, &a, &a, 1.0, 0.0, 9).unwrap();
        assert!(r.all_passed(), "{r}");
    }

    #[test]
    fn coarse_bounds() {
        let mut rng = random::rng(33);
        for _ in 0..20 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 5, 0.7, false).unwrap();
            let c: Vec<f64> = (0..5).map(|i| i as f64 * 0.7).collect();
            let vals = w_max_c(&a, &c, 9).unwrap();
            let cmin = c.iter().cloned().fold(f64::INFINITY, f64::min);
            let cmax = c.iter().cloned().fold(0.0, f64::max);
            let dmin = a.diagonal().into_iter().fold(f64::INFINITY, f64::min);
            for v in vals {
                assert!(v >= cmin * dmin && v <= cmax * a.norm_max());
            }
        }
    }
}
