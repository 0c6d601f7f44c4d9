//! Geometric max eigenvalues.
//!
//! The digraph of `A` has an edge `i → j` whenever `a_ij > 0`. Its strongly
//! connected components are the classes of the Frobenius normal form; each
//! class carries the maximum cycle geometric mean of its block (0 for a
//! trivial class), and the local spectral radius at `e_j` is the largest
//! radius among classes from which `j` can be reached.

use std::fmt;

use crate::error::{Error, Result};
use crate::maxcore::MaxMatrix;
use crate::scalar::{approx_eq, dedup_desc, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectrumKind {
    /// Standard-vector multiplicities: values of `r_{e_j}(A)`.
    Geometric,
    /// Algebraic multiplicities: roots of the characteristic maxpolynomial.
    Tropical,
}

impl SpectrumKind {
    pub fn label(self) -> &'static str {
        match self {
            SpectrumKind::Geometric => "geometric",
            SpectrumKind::Tropical => "tropical",
        }
    }
}

/// A finite multiset of nonnegative eigenvalues, stored as distinct values in
/// descending order with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    kind: SpectrumKind,
    entries: Vec<(T, usize)>,
}

impl<T: Scalar> Spectrum<T> {
    /// Groups a list of values (with repetition) into a spectrum.
    pub fn from_values(kind: SpectrumKind, values: &[T]) -> Self {
        Self::from_pairs(kind, values.iter().map(|&v| (v, 1)).collect())
    }

    /// Sorts descending and merges values within tolerance, summing
    /// multiplicities. Pairs with multiplicity 0 are dropped.
    pub fn from_pairs(kind: SpectrumKind, mut pairs: Vec<(T, usize)>) -> Self {
        pairs.retain(|&(_, m)| m > 0);
        pairs.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("no NaN"));
        let mut entries: Vec<(T, usize)> = Vec::with_capacity(pairs.len());
        for (v, m) in pairs {
            match entries.last_mut() {
                Some(last) if approx_eq(last.0, v) => last.1 += m,
                _ => entries.push((v, m)),
            }
        }
        Spectrum { kind, entries }
    }

    pub fn kind(&self) -> SpectrumKind {
        self.kind
    }

    pub fn entries(&self) -> &[(T, usize)] {
        &self.entries
    }

    /// Distinct values, descending.
    pub fn values(&self) -> Vec<T> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Largest value, or 0 for an empty spectrum.
    pub fn max_value(&self) -> T {
        self.entries.first().map_or(T::zero(), |e| e.0)
    }

    /// Values listed with multiplicity, descending.
    pub fn expanded(&self) -> Vec<T> {
        self.entries
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    /// Distinct values of `max(S)` over all k-element sub-multisets `S` of
    /// the expanded list: the `len − k + 1` largest listed values.
    pub fn k_subset_maxima(&self, k: usize) -> Result<Vec<T>> {
        let all = self.expanded();
        let n = all.len();
        if k == 0 || k > n {
            return Err(Error::KOutOfRange { k, n });
        }
        Ok(dedup_desc(all[..=n - k].to_vec()))
    }
}

impl<T: Scalar> fmt::Display for Spectrum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (v, m)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
            if *m > 1 {
                write!(f, " (×{m})")?;
            }
        }
        write!(f, "}}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusForm<T> {
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_radius: Vec<T>,
    /// `reach[μ][ν]`: class `μ` accesses class `ν`. Reflexive.
    reach: Vec<Vec<bool>>,
}

impl<T: Scalar> FrobeniusForm<T> {
    pub fn n(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_of(&self, node: usize) -> usize {
        self.class_of[node]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_radius(&self) -> &[T] {
        &self.class_radius
    }

    pub fn accesses(&self, from: usize, to: usize) -> bool {
        self.reach[from][to]
    }

    /// Maximum class radius, i.e. `μ(A)`.
    pub fn mu(&self) -> T {
        self.class_radius.iter().fold(T::zero(), |m, &r| m.oplus(r))
    }

    /// `r_{e_j}(A)`: the largest radius among classes accessing `j`.
    pub fn local_radius_ej(&self, j: usize) -> Result<T> {
        let n = self.n();
        if j >= n {
            return Err(Error::IndexOutOfRange { index: j, n });
        }
        let target = self.class_of[j];
        Ok((0..self.classes.len())
            .filter(|&c| self.reach[c][target])
            .fold(T::zero(), |m, c| m.oplus(self.class_radius[c])))
    }

    /// `r_x(A)` for a nonzero column vector `x`.
    pub fn local_radius_x(&self, x: &MaxMatrix<T>) -> Result<T> {
        let n = self.n();
        if x.shape() != (n, 1) {
            return Err(Error::DimensionMismatch {
                op: "local_radius_x",
                left: (n, n),
                right: x.shape(),
            });
        }
        let support: Vec<usize> = (0..n).filter(|&i| x.get(i, 0) > T::zero()).collect();
        if support.is_empty() {
            return Err(Error::ZeroVector);
        }
        support
            .into_iter()
            .try_fold(T::zero(), |m, i| Ok(m.oplus(self.local_radius_ej(i)?)))
    }
}

/// Strongly connected components of the positive-entry digraph, their
/// radii and the access relation between them.
pub fn frobenius_form<T: Scalar>(a: &MaxMatrix<T>) -> Result<FrobeniusForm<T>> {
    let n = a.require_square("frobenius_form")?;
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| a.get(i, j) > T::zero()).collect())
        .collect();

    let classes = tarjan(&adj);
    let mut class_of = vec![0; n];
    for (c, members) in classes.iter().enumerate() {
        for &v in members {
            class_of[v] = c;
        }
    }

    let class_radius = classes.iter().map(|members| class_radius(a, members)).collect();

    let l = classes.len();
    let mut succ = vec![Vec::new(); l];
    for i in 0..n {
        for &j in &adj[i] {
            let (ci, cj) = (class_of[i], class_of[j]);
            if ci != cj && !succ[ci].contains(&cj) {
                succ[ci].push(cj);
            }
        }
    }
    let reach = (0..l)
        .map(|start| {
            let mut seen = vec![false; l];
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(c) = stack.pop() {
                for &d in &succ[c] {
                    if !seen[d] {
                        seen[d] = true;
                        stack.push(d);
                    }
                }
            }
            seen
        })
        .collect();

    Ok(FrobeniusForm {
        class_of,
        classes,
        class_radius,
        reach,
    })
}

/// Tarjan's algorithm. Components come out in reverse topological order of
/// the condensation; members of each component are sorted.
fn tarjan(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        next: usize,
        out: Vec<Vec<usize>>,
    }

    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = Some(s.next);
        s.low[v] = s.next;
        s.next += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for &w in &s.adj[v] {
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                Some(_) => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            let mut comp = Vec::new();
            loop {
                let w = s.stack.pop().expect("nonempty stack");
                s.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            comp.sort_unstable();
            s.out.push(comp);
        }
    }

    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        next: 0,
        out: Vec::new(),
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.out
}

/// Maximum cycle geometric mean inside one strongly connected class, by
/// Karp's recurrence on log weights. A single node without a loop is a
/// trivial class with radius 0.
fn class_radius<T: Scalar>(a: &MaxMatrix<T>, members: &[usize]) -> T {
    let m = members.len();
    if m == 1 {
        return a.get(members[0], members[0]);
    }
    let w = |u: usize, v: usize| {
        let x = a.get(members[u], members[v]);
        if x > T::zero() {
            Some(x.ln())
        } else {
            None
        }
    };
    // d[k][v]: heaviest walk of exactly k edges from node 0 to v.
    let mut d: Vec<Vec<Option<T>>> = vec![vec![None; m]; m + 1];
    d[0][0] = Some(T::zero());
    for k in 1..=m {
        for v in 0..m {
            let mut best: Option<T> = None;
            for u in 0..m {
                if let (Some(du), Some(wuv)) = (d[k - 1][u], w(u, v)) {
                    let cand = du + wuv;
                    best = Some(best.map_or(cand, |b| b.max(cand)));
                }
            }
            d[k][v] = best;
        }
    }
    let mut lambda = T::neg_infinity();
    for v in 0..m {
        let Some(dm) = d[m][v] else { continue };
        let worst = (0..m)
            .filter_map(|k| d[k][v].map(|dk| (dm - dk) / T::lit((m - k) as f64)))
            .fold(T::infinity(), |acc, x| acc.min(x));
        lambda = lambda.max(worst);
    }
    lambda.exp()
}

/// Maximum cycle geometric mean `μ(A)`; 0 when the digraph is acyclic.
pub fn mu<T: Scalar>(a: &MaxMatrix<T>) -> Result<T> {
    Ok(frobenius_form(a)?.mu())
}

pub fn local_radius_ej<T: Scalar>(f: &FrobeniusForm<T>, j: usize) -> Result<T> {
    f.local_radius_ej(j)
}

pub fn local_radius_x<T: Scalar>(f: &FrobeniusForm<T>, x: &MaxMatrix<T>) -> Result<T> {
    f.local_radius_x(x)
}

/// `σ_max(A)` with standard-vector multiplicities.
pub fn sigma_max<T: Scalar>(a: &MaxMatrix<T>) -> Result<Spectrum<T>> {
    let f = frobenius_form(a)?;
    let radii = (0..f.n())
        .map(|j| f.local_radius_ej(j))
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum::from_values(SpectrumKind::Geometric, &radii))
}

/// `σ_max^k(A)`: distinct values, descending.
pub fn sigma_max_k<T: Scalar>(a: &MaxMatrix<T>, k: usize) -> Result<Vec<T>> {
    sigma_max(a)?.k_subset_maxima(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::random;
    use crate::scalar::set_eq;

    fn m(rows: &[&[f64]]) -> MaxMatrix<f64> {
        MaxMatrix::from_f64_rows(rows).unwrap()
    }

    /// Brute force over simple cycles, rooted at their smallest node.
    fn cycle_mean_brute(a: &MaxMatrix<f64>) -> f64 {
        fn go(a: &MaxMatrix<f64>, start: usize, v: usize, prod: f64, len: usize, used: &mut Vec<bool>, best: &mut f64) {
            for w in start..a.rows() {
                let x = a.get(v, w);
                if x == 0.0 {
                    continue;
                }
                if w == start {
                    *best = best.max((prod * x).powf(1.0 / (len + 1) as f64));
                } else if !used[w] {
                    used[w] = true;
                    go(a, start, w, prod * x, len + 1, used, best);
                    used[w] = false;
                }
            }
        }
        let mut best = 0.0;
        for s in 0..a.rows() {
            let mut used = vec![false; a.rows()];
            used[s] = true;
            go(a, s, s, 1.0, 0, &mut used, &mut best);
        }
        best
    }

    #[test]
    fn irreducible_is_one_class() {
        let a = m(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.0]]);
        let f = frobenius_form(&a).unwrap();
        assert_eq!(f.classes().len(), 1);
        for j in 0..3 {
            assert_eq!(f.local_radius_ej(j).unwrap(), f.mu());
        }
    }

    #[test]
    fn strictly_upper_triangular_has_trivial_classes() {
        let a = m(&[&[0.0, 2.0, 3.0], &[0.0, 0.0, 6.0], &[0.0, 0.0, 0.0]]);
        let f = frobenius_form(&a).unwrap();
        assert_eq!(f.classes().len(), 3);
        assert!(f.class_radius().iter().all(|&r| r == 0.0));
        assert_eq!(f.mu(), 0.0);
        for j in 0..3 {
            assert_eq!(f.local_radius_ej(j).unwrap(), 0.0);
        }
    }

    #[test]
    fn two_block_cycles() {
        // 2-cycles with products 4 and 9, linked one way.
        let a = m(&[
            &[0.0, 2.0, 1.0, 0.0],
            &[2.0, 0.0, 0.0, 0.0],
            &[0.0, 0.0, 0.0, 3.0],
            &[0.0, 0.0, 3.0, 0.0],
        ]);
        let f = frobenius_form(&a).unwrap();
        assert_eq!(f.classes().len(), 2);
        let mut radii = f.class_radius().to_vec();
        radii.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!(approx_eq(radii[0], 2.0) && approx_eq(radii[1], 3.0));
        assert!(approx_eq(radii[0], cycle_mean_brute(&a.principal_submatrix(&[0, 1]).unwrap())));
        // class {0,1} reaches node 2, class {2,3} does not reach 0
        assert!(approx_eq(f.local_radius_ej(2).unwrap(), 3.0));
        assert!(approx_eq(f.local_radius_ej(0).unwrap(), 2.0));
    }

    #[test]
    fn flip_matrix() {
        let a = fixtures::flip::<f64>();
        assert!(approx_eq(mu(&a).unwrap(), 1.0));
        let s = sigma_max(&a).unwrap();
        assert_eq!(s.entries().len(), 1);
        assert!(approx_eq(s.entries()[0].0, 1.0));
        assert_eq!(s.entries()[0].1, 2);
    }

    #[test]
    fn diagonal_matrices() {
        let a = MaxMatrix::diag(&[2.0, 2.0, 5.0]).unwrap();
        assert!(approx_eq(mu(&a).unwrap(), 5.0));
        let s = sigma_max(&a).unwrap();
        assert_eq!(s.entries(), &[(5.0, 1), (2.0, 2)]);
    }

    #[test]
    fn mu_matches_cycle_enumeration() {
        let mut rng = random::rng(11);
        for n in 1..=7 {
            for _ in 0..20 {
                let a: MaxMatrix<f64> = random::random_matrix(&mut rng, n, 0.4, false).unwrap();
                let got = mu(&a).unwrap();
                let want = cycle_mean_brute(&a);
                assert!(approx_eq(got, want), "n={n}: {got} vs {want}\n{a:?}");
            }
        }
    }

    #[test]
    fn class_radius_is_mu_of_block() {
        let mut rng = random::rng(12);
        for _ in 0..50 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 6, 0.3, false).unwrap();
            let f = frobenius_form(&a).unwrap();
            for (c, members) in f.classes().iter().enumerate() {
                let sub = a.principal_submatrix(members).unwrap();
                assert!(approx_eq(f.class_radius()[c], mu(&sub).unwrap()));
            }
        }
    }

    #[test]
    fn reach_is_reflexive_and_transitive() {
        let mut rng = random::rng(13);
        for _ in 0..30 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 7, 0.25, false).unwrap();
            let f = frobenius_form(&a).unwrap();
            let l = f.classes().len();
            for x in 0..l {
                assert!(f.accesses(x, x));
                for y in 0..l {
                    for z in 0..l {
                        if f.accesses(x, y) && f.accesses(y, z) {
                            assert!(f.accesses(x, z));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn local_radius_x_over_support() {
        let a = m(&[&[0.0, 2.0, 1.0, 0.0], &[2.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 3.0], &[0.0, 0.0, 3.0, 0.0]]);
        let f = frobenius_form(&a).unwrap();
        let x = MaxMatrix::column(&[0.5, 0.0, 0.0, 0.0]).unwrap();
        assert!(approx_eq(f.local_radius_x(&x).unwrap(), 2.0));
        let all = MaxMatrix::column(&[1.0; 4]).unwrap();
        assert!(approx_eq(f.local_radius_x(&all).unwrap(), f.mu()));
        let zero = MaxMatrix::column(&[0.0; 4]).unwrap();
        assert!(matches!(f.local_radius_x(&zero), Err(Error::ZeroVector)));
        assert!(f.local_radius_ej(4).is_err());
    }

    #[test]
    fn k_spectrum_matches_subset_enumeration() {
        let mut rng = random::rng(14);
        for _ in 0..30 {
            let a: MaxMatrix<f64> = random::random_matrix(&mut rng, 5, 0.35, false).unwrap();
            let s = sigma_max(&a).unwrap();
            assert_eq!(s.total_multiplicity(), 5);
            assert!(approx_eq(s.max_value(), mu(&a).unwrap()));
            let listed = s.expanded();
            for k in 1..=5 {
                let mut brute = Vec::new();
                for mask in 0u32..32 {
                    if mask.count_ones() as usize == k {
                        let best = (0..5).filter(|i| mask >> i & 1 == 1).map(|i| listed[i]).fold(0.0, f64::max);
                        brute.push(best);
                    }
                }
                assert!(set_eq(&sigma_max_k(&a, k).unwrap(), &brute));
            }
            assert_eq!(sigma_max_k(&a, 1).unwrap(), s.values());
            assert_eq!(sigma_max_k(&a, 5).unwrap(), vec![s.max_value()]);
            assert!(sigma_max_k(&a, 6).is_err());
        }
    }
}
