//! Perturbation inequalities for `tr⊗` and the max product, returned as
//! reports so they can be swept over random inputs.

use crate::error::Result;
use crate::report::LawReport;
use crate::scalar::{approx_eq, approx_le, Scalar};

use super::MaxMatrix;

/// `|tr⊗A − tr⊗B| ≤ tr⊗|A − B| ≤ ‖A − B‖`.
pub fn trace_gap_check<T: Scalar>(a: &MaxMatrix<T>, b: &MaxMatrix<T>) -> Result<LawReport> {
    let lhs = (a.trace_max()? - b.trace_max()?).abs();
    let diff = a.abs_diff(b)?;
    let mid = diff.trace_max()?;
    let rhs = diff.norm_max();
    let mut r = LawReport::new();
    r.check("trace gap below trace of difference", approx_le(lhs, mid), || {
        format!("|trA − trB| = {lhs} > tr|A−B| = {mid}")
    });
    r.check("trace of difference below norm", mid <= rhs, || format!("{mid} > {rhs}"));
    Ok(r)
}

/// `|A⊗B − A⊗C| ≤ A⊗|B − C|` and `|B⊗A − C⊗A| ≤ |B − C|⊗A` entrywise, with
/// the norm consequences `‖·‖ ≤ ‖A‖·‖B − C‖`.
pub fn product_gap_check<T: Scalar>(a: &MaxMatrix<T>, b: &MaxMatrix<T>, c: &MaxMatrix<T>) -> Result<LawReport> {
    let bc = b.abs_diff(c)?;
    let mut r = LawReport::new();

    let left = a.max_mul(b)?.abs_diff(&a.max_mul(c)?)?;
    let left_bound = a.max_mul(&bc)?;
    let right = b.max_mul(a)?.abs_diff(&c.max_mul(a)?)?;
    let right_bound = bc.max_mul(a)?;
    let entrywise = |x: &MaxMatrix<T>, y: &MaxMatrix<T>| {
        x.as_slice().iter().zip(y.as_slice()).position(|(&u, &v)| !approx_le(u, v))
    };

    let bad = entrywise(&left, &left_bound);
    r.check("left product gap entrywise", bad.is_none(), || format!("first violation at flat index {bad:?}"));
    let bad = entrywise(&right, &right_bound);
    r.check("right product gap entrywise", bad.is_none(), || format!("first violation at flat index {bad:?}"));

    let norm_bound = a.norm_max() * bc.norm_max();
    r.check("left product gap norm", approx_le(left.norm_max(), norm_bound), || {
        format!("{} > {norm_bound}", left.norm_max())
    });
    r.check("right product gap norm", approx_le(right.norm_max(), norm_bound), || {
        format!("{} > {norm_bound}", right.norm_max())
    });
    Ok(r)
}

/// `tr⊗(X⊗Y) = tr⊗(Y⊗X)` for `X` n×k and `Y` k×n.
pub fn trace_commutes<T: Scalar>(x: &MaxMatrix<T>, y: &MaxMatrix<T>) -> Result<bool> {
    Ok(approx_eq(x.max_mul(y)?.trace_max()?, y.max_mul(x)?.trace_max()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random;

    #[test]
    fn random_triples() {
        let mut rng = random::rng(51);
        for _ in 0..200 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 4, 0.7, false).unwrap();
            let b: MaxMatrix<f64> = random::random_matrix(&mut rng, 4, 0.7, false).unwrap();
            let c: MaxMatrix<f64> = random::random_matrix(&mut rng, 4, 0.7, false).unwrap();
            assert!(trace_gap_check(&a, &b).unwrap().all_passed());
            let r = product_gap_check(&a, &b, &c).unwrap();
            assert!(r.all_passed(), "{r}");
        }
    }

    #[test]
    fn rectangular_trace_commutes() {
        let x = MaxMatrix::<f64>::from_f64_rows(&[&[1.0, 2.0], &[3.0, 0.5], &[0.0, 4.0]]).unwrap();
        let y = MaxMatrix::<f64>::from_f64_rows(&[&[2.0, 0.0, 1.0], &[1.0, 1.0, 3.0]]).unwrap();
        assert!(trace_commutes(&x, &y).unwrap());
    }
}
