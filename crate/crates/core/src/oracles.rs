//! Deliberately naive reference implementations.
//!
//! Nothing here reuses the production algorithms: permanents are plain
//! recursion, cycle means come from enumerating simple cycles, radii from
//! iterating the power sequence, and roots from scanning the graph of
//! `X_A` for kinks. The cross-check runners pit each oracle against its
//! production counterpart on seeded random instances.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::charpoly;
use crate::error::{Error, Result};
use crate::isometry::sample_isometry_with;
use crate::maxcore::MaxMatrix;
use crate::numrange::{w_max_k, witness_for};
use crate::random;
use crate::scalar::{approx_eq, Scalar};
use crate::spectra;

/// Max permanent by recursion over unused columns, row by row.
pub fn oracle_permanent<T: Scalar>(a: &MaxMatrix<T>) -> T {
    fn go<T: Scalar>(a: &MaxMatrix<T>, row: usize, used: &mut [bool], acc: T) -> T {
        if row == a.rows() {
            return acc;
        }
        let mut best = T::zero();
        for c in 0..a.cols() {
            if !used[c] {
                used[c] = true;
                best = best.max(go(a, row + 1, used, acc * a.get(row, c)));
                used[c] = false;
            }
        }
        best
    }
    go(a, 0, &mut vec![false; a.cols()], T::one())
}

/// `δ_k` by building every principal submatrix and taking its
/// [`oracle_permanent`].
pub fn oracle_deltas<T: Scalar>(a: &MaxMatrix<T>) -> Result<Vec<T>> {
    let n = a.require_square("oracle_deltas")?;
    let mut out = vec![T::zero(); n + 1];
    out[0] = T::one();
    let mut chosen = Vec::with_capacity(n);
    fn subsets<T: Scalar>(a: &MaxMatrix<T>, next: usize, chosen: &mut Vec<usize>, out: &mut [T]) -> Result<()> {
        if !chosen.is_empty() {
            let p = oracle_permanent(&a.principal_submatrix(chosen)?);
            let k = chosen.len();
            if p > out[k] {
                out[k] = p;
            }
        }
        for i in next..a.rows() {
            chosen.push(i);
            subsets(a, i + 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }
    subsets(a, 0, &mut chosen, &mut out)?;
    Ok(out)
}

/// Max permanent through a min-cost assignment on `−ln a_ij`
/// (Hungarian method with potentials). Zero entries get a prohibitive cost.
pub fn oracle_assignment_permanent<T: Scalar>(a: &MaxMatrix<T>) -> Result<T> {
    let n = a.require_square("oracle_assignment_permanent")?;
    const FORBIDDEN: f64 = 1e12;
    let cost = |i: usize, j: usize| {
        let x = a.get(i, j).as_f64();
        if x > 0.0 {
            -x.ln()
        } else {
            FORBIDDEN
        }
    };
    // 1-based arrays, column 0 is the virtual start
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut total = 0.0;
    for j in 1..=n {
        let c = cost(p[j] - 1, j - 1);
        if c >= FORBIDDEN {
            return Ok(T::zero());
        }
        total += c;
    }
    Ok(T::lit((-total).exp()))
}

/// `μ(A)` by enumerating every simple cycle, each rooted at its smallest
/// node.
pub fn oracle_cycles_mu<T: Scalar>(a: &MaxMatrix<T>) -> Result<T> {
    let n = a.require_square("oracle_cycles_mu")?;
    fn dfs<T: Scalar>(a: &MaxMatrix<T>, root: usize, v: usize, prod: T, len: usize, on_path: &mut [bool], best: &mut T) {
        for w in root..a.rows() {
            let x = a.get(v, w);
            if x == T::zero() {
                continue;
            }
            if w == root {
                let mean = (prod * x).powf(T::one() / T::lit((len + 1) as f64));
                *best = best.max(mean);
            } else if !on_path[w] {
                on_path[w] = true;
                dfs(a, root, w, prod * x, len + 1, on_path, best);
                on_path[w] = false;
            }
        }
    }
    let mut best = T::zero();
    for root in 0..n {
        let mut on_path = vec![false; n];
        on_path[root] = true;
        dfs(a, root, root, T::one(), 0, &mut on_path, &mut best);
    }
    Ok(best)
}

/// `‖A^m ⊗ e_j‖^{1/m}`, iterating a normalised vector and accumulating the
/// scale in log space.
pub fn oracle_power_radius<T: Scalar>(a: &MaxMatrix<T>, j: usize, m: usize) -> Result<T> {
    let n = a.require_square("oracle_power_radius")?;
    if j >= n {
        return Err(Error::IndexOutOfRange { index: j, n });
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be positive".into()));
    }
    let mut x = vec![0.0f64; n];
    x[j] = 1.0;
    let mut log_scale = 0.0f64;
    for _ in 0..m {
        let y: Vec<f64> = (0..n)
            .map(|i| (0..n).map(|l| a.get(i, l).as_f64() * x[l]).fold(0.0, f64::max))
            .collect();
        let top = y.iter().cloned().fold(0.0, f64::max);
        if top == 0.0 {
            return Ok(T::zero());
        }
        log_scale += top.ln();
        x = y.into_iter().map(|v| v / top).collect();
    }
    Ok(T::lit((log_scale / m as f64).exp()))
}

/// Smallest and largest `f_A(X)` over `trials` sampled isometries, with the
/// quadratic form evaluated column by column from scratch.
pub fn oracle_range_sampler<T: Scalar>(a: &MaxMatrix<T>, k: usize, trials: usize, seed: u64) -> Result<(T, T)> {
    let n = a.require_square("oracle_range_sampler")?;
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be positive".into()));
    }
    let mut rng = random::rng(seed);
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for _ in 0..trials {
        let x = sample_isometry_with::<T, _>(&mut rng, n, k)?;
        let v = oracle_form(a, x.matrix());
        lo = lo.min(v);
        hi = hi.max(v);
    }
    Ok((lo, hi))
}

/// `max_{c,p,q} x_pc · a_pq · x_qc`, the diagonal of `Xᵗ⊗A⊗X` read off directly.
pub fn oracle_form<T: Scalar>(a: &MaxMatrix<T>, x: &MaxMatrix<T>) -> T {
    let mut best = T::zero();
    for c in 0..x.cols() {
        for p in 0..x.rows() {
            for q in 0..x.rows() {
                best = best.max(x.get(p, c) * a.get(p, q) * x.get(q, c));
            }
        }
    }
    best
}

#[derive(Debug, Clone, PartialEq)]
pub struct SlopeRoots {
    /// Estimated positive roots with the slope jump at each, ascending.
    pub breaks: Vec<(f64, usize)>,
    /// Slope of `ln X_A` against `ln x` left of every break.
    pub zero_mult: usize,
    /// Grid spacing in natural-log units.
    pub spacing: f64,
}

impl SlopeRoots {
    /// Positive roots listed with multiplicity, descending.
    pub fn expanded(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .breaks
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect();
        out.reverse();
        out
    }
}

/// Locates the kinks of `x ↦ X_A(x)` on a log-spaced grid of `grid` points.
/// In log-log coordinates `X_A` is piecewise linear with integer slopes;
/// wherever the slope changes between two clean cells the two lines are
/// intersected to estimate the root.
pub fn oracle_slope_roots<T: Scalar>(deltas: &[T], grid: usize) -> Result<SlopeRoots> {
    if deltas.is_empty() || grid < 3 {
        return Err(Error::InvalidParameter("need coefficients and at least 3 grid points".into()));
    }
    let d: Vec<f64> = deltas.iter().map(|v| v.as_f64()).collect();
    let n = d.len() - 1;
    let positive: Vec<usize> = (0..=n).filter(|&i| d[i] > 0.0).collect();
    let last = *positive.last().unwrap_or(&0);
    let (lo, hi) = if last == 0 {
        (1.0, 1.0)
    } else {
        let hi = positive
            .iter()
            .filter(|&&i| i > 0)
            .map(|&i| d[i].powf(1.0 / i as f64))
            .fold(0.0, f64::max);
        let lo = positive
            .iter()
            .filter(|&&i| i < last)
            .map(|&i| (d[last] / d[i]).powf(1.0 / (last - i) as f64))
            .fold(f64::INFINITY, f64::min);
        (lo, hi)
    };
    let (u0, u1) = (lo.ln() - 2.0, hi.ln() + 2.0);
    let h = (u1 - u0) / (grid - 1) as f64;
    let log_x = |u: f64| {
        positive
            .iter()
            .map(|&i| d[i].ln() + (n - i) as f64 * u)
            .fold(f64::NEG_INFINITY, f64::max)
    };
    let us: Vec<f64> = (0..grid).map(|g| u0 + h * g as f64).collect();
    let ys: Vec<f64> = us.iter().map(|&u| log_x(u)).collect();

    let mut breaks = Vec::new();
    let mut prev: Option<(i64, f64, f64)> = None;
    let mut first_slope = None;
    for g in 0..grid - 1 {
        let s = (ys[g + 1] - ys[g]) / h;
        let r = s.round();
        // a kink inside the cell shows up as a midpoint below the chord, even
        // when the chord slope happens to be an integer
        let chord_mid = 0.5 * (ys[g] + ys[g + 1]);
        let sag = chord_mid - log_x(us[g] + 0.5 * h);
        if (s - r).abs() > 1e-6 || sag > 1e-9 * chord_mid.abs().max(1.0) {
            continue;
        }
        let slope = r as i64;
        first_slope.get_or_insert(slope);
        match prev {
            Some((ps, pu, py)) if ps != slope => {
                let u = (ys[g] - py + ps as f64 * pu - slope as f64 * us[g]) / (ps - slope) as f64;
                breaks.push((u.exp(), (slope - ps) as usize));
            }
            _ => {}
        }
        prev = Some((slope, us[g], ys[g]));
    }
    Ok(SlopeRoots {
        breaks,
        zero_mult: first_slope.unwrap_or(0) as usize,
        spacing: h,
    })
}

/// Outcome of one oracle-versus-production batch.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossCheck {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl CrossCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub const ORACLE_NAMES: &[&str] = &[
    "permanent",
    "assignment",
    "deltas",
    "cycles-mu",
    "power-radius",
    "range-sampler",
    "slope-roots",
];

/// Grid size used by the slope-break cross-check.
pub const SLOPE_GRID: usize = 1000;

fn random_instance(rng: &mut ChaCha8Rng, n_max: usize) -> Result<MaxMatrix<f64>> {
    let n = rng.gen_range(1..=n_max);
    let density = [0.3, 0.6, 1.0][rng.gen_range(0..3)];
    random::random_matrix(rng, n, density, false)
}

/// Compares a production root multiset with the slope-break estimate.
pub fn roots_match_slopes(roots: &crate::spectra::Spectrum<f64>, est: &SlopeRoots) -> bool {
    let mut prod: Vec<f64> = roots.expanded().into_iter().filter(|&v| v > 0.0).collect();
    prod.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let got = est.expanded();
    let zero = roots.entries().iter().find(|e| e.0 == 0.0).map_or(0, |e| e.1);
    prod.len() == got.len()
        && zero == est.zero_mult
        && prod
            .iter()
            .zip(&got)
            .all(|(p, g)| (p.ln() - g.ln()).abs() <= 2.0 * est.spacing)
}

/// Runs the named oracle against production on `trials` seeded instances.
pub fn cross_check(name: &str, trials: usize, seed: u64) -> Result<CrossCheck> {
    let mut rng = random::rng(seed);
    let mut failures = 0;
    let mut first_failure = None;
    let mut fail = |msg: String| {
        failures += 1;
        first_failure.get_or_insert(msg);
    };
    let cap = charpoly::PERMANENT_CAP;
    for t in 0..trials {
        match name {
            "permanent" => {
                let a = random_instance(&mut rng, 6)?;
                let (want, got) = (oracle_permanent(&a), charpoly::max_permanent(&a, cap)?);
                if want != got {
                    fail(format!("trial {t}: oracle {want}, production {got}"));
                }
            }
            "assignment" => {
                let a = random_instance(&mut rng, 6)?;
                let (want, got) = (oracle_assignment_permanent(&a)?, charpoly::max_permanent(&a, cap)?);
                if !approx_eq(want, got) {
                    fail(format!("trial {t}: oracle {want}, production {got}"));
                }
            }
            "deltas" => {
                let a = random_instance(&mut rng, 6)?;
                let (want, got) = (oracle_deltas(&a)?, charpoly::delta_coefficients(&a, cap)?);
                if want != got {
                    fail(format!("trial {t}: oracle {want:?}, production {got:?}"));
                }
            }
            "cycles-mu" => {
                let a = random_instance(&mut rng, 7)?;
                let (want, got) = (oracle_cycles_mu(&a)?, spectra::mu(&a)?);
                if !approx_eq(want, got) {
                    fail(format!("trial {t}: oracle {want}, production {got}"));
                }
            }
            "power-radius" => {
                let density = [0.3, 0.6, 1.0][rng.gen_range(0..3)];
                let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 6, density, false)?;
                let n = a.rows();
                let f = spectra::frobenius_form(&a)?;
                for j in 0..n {
                    let want = oracle_power_radius(&a, j, 4 * n * n)?;
                    let got = f.local_radius_ej(j)?;
                    if (want - got).abs() > 5e-2 * want.max(got) {
                        fail(format!("trial {t}, j={j}: oracle {want}, production {got}"));
                    }
                }
            }
            "range-sampler" => {
                let a = random_instance(&mut rng, 6)?;
                let n = a.rows();
                let k = rng.gen_range(1..=n);
                let w = w_max_k(&a, k)?;
                let (lo, hi) = oracle_range_sampler(&a, k, 200, seed ^ t as u64)?;
                if !(w.contains(lo) && w.contains(hi)) {
                    fail(format!("trial {t}: observed [{lo}, {hi}] outside {w}"));
                }
                let ends = [w.lo(), w.hi()];
                for z in ends {
                    let x = witness_for(&a, k, z)?;
                    let v = oracle_form(&a, x.isometry.matrix());
                    if !approx_eq(v, z) {
                        fail(format!("trial {t}: witness for {z} reaches {v}"));
                    }
                }
            }
            "slope-roots" => {
                let a = random_instance(&mut rng, 6)?;
                let p = charpoly::characteristic_polynomial(&a, cap)?;
                let est = oracle_slope_roots(&p.deltas, SLOPE_GRID)?;
                if !roots_match_slopes(&p.roots, &est) {
                    fail(format!("trial {t}: roots {}, slope breaks {:?}", p.roots, est.breaks));
                }
            }
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown oracle '{other}', expected one of {}",
                    ORACLE_NAMES.join(", ")
                )))
            }
        }
    }
    if trials == 0 && !ORACLE_NAMES.contains(&name) {
        return Err(Error::InvalidParameter(format!("unknown oracle '{name}'")));
    }
    Ok(CrossCheck {
        name: name.to_string(),
        trials,
        failures,
        first_failure,
    })
}
