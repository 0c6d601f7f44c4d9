//! A discretised look at the connectivity of `X_{n×k}`.
//!
//! Every isometry whose entries lie on the grid `{0, 1/m, …, 1}` is
//! enumerated, and two of them are joined when they differ in a single entry
//! by `step` grid levels. The component structure of that graph is evidence
//! about the continuous set, never a proof.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::isometry::validate_isometry;
use crate::maxcore::MaxMatrix;

pub const MAX_N: usize = 4;
pub const MAX_GRID: usize = 6;
pub const DISCLAIMER: &str = "discretized evidence, not a proof";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub n: usize,
    pub k: usize,
    pub grid: usize,
    pub step: usize,
    /// Number of valid grid isometries.
    pub states: usize,
    pub components: usize,
    /// Component sizes, descending.
    pub sizes: Vec<usize>,
    pub evidence: &'static str,
}

/// Row states: 0 is the zero row, `1 + c·m + (v − 1)` puts level `v ∈ 1..=m`
/// in column `c`. Disjoint supports allow at most one nonzero per row, so
/// this covers every candidate.
fn row_level(state: usize, m: usize) -> Option<(usize, usize)> {
    (state > 0).then(|| ((state - 1) / m, (state - 1) % m + 1))
}

fn row_state(col: usize, level: usize, m: usize) -> usize {
    if level == 0 {
        0
    } else {
        1 + col * m + level - 1
    }
}

fn decode(mut code: usize, n: usize, base: usize) -> Vec<usize> {
    let mut rows = vec![0; n];
    for r in rows.iter_mut() {
        *r = code % base;
        code /= base;
    }
    rows
}

fn encode(rows: &[usize], base: usize) -> usize {
    rows.iter().rev().fold(0, |acc, &r| acc * base + r)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Enumerates grid isometries and reports the components of the
/// single-entry move graph.
pub fn probe_connect(n: usize, k: usize, grid: usize, step: usize) -> Result<ProbeReport> {
    if n == 0 || n > MAX_N || grid == 0 || grid > MAX_GRID || k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "probe limits: 1 ≤ k ≤ n ≤ {MAX_N} and 1 ≤ grid ≤ {MAX_GRID} (got n={n}, k={k}, grid={grid})"
        )));
    }
    if step == 0 || step > grid {
        return Err(Error::InvalidParameter(format!("step must be in 1..={grid}")));
    }
    let m = grid;
    let base = k * m + 1;
    let total = base.pow(n as u32);
    let scale = m as f64;

    let mut index: HashMap<usize, usize> = HashMap::new();
    let mut codes = Vec::new();
    for code in 0..total {
        let rows = decode(code, n, base);
        let mat = MaxMatrix::from_fn(n, k, |r, c| match row_level(rows[r], m) {
            Some((col, level)) if col == c => level as f64 / scale,
            _ => 0.0,
        })?;
        if validate_isometry(&mat).is_ok() {
            index.insert(code, codes.len());
            codes.push(code);
        }
    }

    let mut parent: Vec<usize> = (0..codes.len()).collect();
    for (i, &code) in codes.iter().enumerate() {
        let rows = decode(code, n, base);
        for r in 0..n {
            let moves: Vec<usize> = match row_level(rows[r], m) {
                None => (0..k).filter(|_| step <= m).map(|c| row_state(c, step, m)).collect(),
                Some((c, v)) => {
                    let mut out = Vec::new();
                    if v + step <= m {
                        out.push(row_state(c, v + step, m));
                    }
                    if v >= step {
                        out.push(row_state(c, v - step, m));
                    }
                    out
                }
            };
            for s in moves {
                let mut next = rows.clone();
                next[r] = s;
                if let Some(&j) = index.get(&encode(&next, base)) {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    if ri != rj {
                        parent[ri] = rj;
                    }
                }
            }
        }
    }

    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for i in 0..codes.len() {
        *sizes.entry(find(&mut parent, i)).or_default() += 1;
    }
    let mut sizes: Vec<usize> = sizes.into_values().collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));

    Ok(ProbeReport {
        n,
        k,
        grid,
        step,
        states: codes.len(),
        components: sizes.len(),
        sizes,
        evidence: DISCLAIMER,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rank_is_discrete() {
        let fact = [1, 1, 2, 6, 24];
        for n in 1..=4 {
            let r = probe_connect(n, n, 2, 1).unwrap();
            assert_eq!(r.states, fact[n]);
            assert_eq!(r.components, fact[n]);
        }
    }

    #[test]
    fn single_column_in_the_plane_is_connected() {
        let r = probe_connect(2, 1, 2, 1).unwrap();
        assert_eq!(r.states, 5);
        assert_eq!(r.components, 1);
        assert_eq!(r.evidence, DISCLAIMER);
    }

    #[test]
    fn guard() {
        assert!(probe_connect(5, 2, 2, 1).is_err());
        assert!(probe_connect(3, 2, 7, 1).is_err());
        assert!(probe_connect(3, 0, 2, 1).is_err());
        assert!(probe_connect(3, 2, 2, 3).is_err());
    }

    #[test]
    fn exploratory_case_runs() {
        let r = probe_connect(3, 2, 2, 1).unwrap();
        assert_eq!(r.sizes.iter().sum::<usize>(), r.states);
    }
}
