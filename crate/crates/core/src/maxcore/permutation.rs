use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::MaxMatrix;

/// A bijection `σ` on `{0, .., n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n {
                return Err(Error::InvalidPermutation(format!("image {} exceeds {}", v + 1, n)));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!("image {} repeated", v + 1)));
            }
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    /// Swaps `i` and `j`, fixing everything else.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut map: Vec<usize> = (0..n).collect();
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), n });
        }
        map.swap(i, j);
        Ok(Self { map })
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Self { map: inv }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation(format!(
                "cannot compose lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(Self {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        })
    }

    /// Permutation matrix whose column `j` is `e_{σ(j)}`, so that
    /// `(Pᵗ ⊗ A ⊗ P)_{ij} = a_{σ(i)σ(j)}`.
    pub fn to_matrix<T: Scalar>(&self) -> MaxMatrix<T> {
        let n = self.map.len();
        let mut data = vec![T::zero(); n * n];
        for (j, &i) in self.map.iter().enumerate() {
            data[i * n + j] = T::one();
        }
        MaxMatrix::from_parts(n, n, data)
    }

    /// All `n!` permutations of `{0, .., n-1}` (Heap's algorithm).
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            current: (0..n).collect(),
            counters: vec![0; n],
            index: 0,
            started: false,
        }
    }
}

/// Iterator produced by [`Permutation::all`].
pub struct AllPermutations {
    current: Vec<usize>,
    counters: Vec<usize>,
    index: usize,
    started: bool,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        if !self.started {
            self.started = true;
            return Some(Permutation { map: self.current.clone() });
        }
        let n = self.current.len();
        while self.index < n {
            if self.counters[self.index] < self.index {
                if self.index.is_multiple_of(2) {
                    self.current.swap(0, self.index);
                } else {
                    self.current.swap(self.counters[self.index], self.index);
                }
                self.counters[self.index] += 1;
                self.index = 0;
                return Some(Permutation { map: self.current.clone() });
            }
            self.counters[self.index] = 0;
            self.index += 1;
        }
        None
    }
}
