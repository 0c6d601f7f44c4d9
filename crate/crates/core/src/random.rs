//! Seeded random instances: matrices, permutations.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::maxcore::{MaxMatrix, Permutation};
use crate::scalar::Scalar;

/// Upper end of generated entries.
pub const ENTRY_SCALE: f64 = 10.0;

/// Deterministic RNG for a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random `n x n` matrix. Each entry is nonzero with probability `density`,
/// and nonzero entries are uniform on `(0, 10]`. With `sorted_diag` the
/// diagonal is rearranged into ascending order.
pub fn random_matrix<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    density: f64,
    sorted_diag: bool,
) -> Result<MaxMatrix<T>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidParameter(format!("density {density} outside [0, 1]")));
    }
    let mut data = Vec::with_capacity(n * n);
    for _ in 0..n * n {
        let v = if density > 0.0 && rng.gen_bool(density) {
            ENTRY_SCALE * (1.0 - rng.gen::<f64>())
        } else {
            0.0
        };
        data.push(T::lit(v));
    }
    if sorted_diag {
        let mut diag: Vec<T> = (0..n).map(|i| data[i * n + i]).collect();
        diag.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        for (i, d) in diag.into_iter().enumerate() {
            data[i * n + i] = d;
        }
    }
    MaxMatrix::new(n, n, data)
}

/// Seeded convenience wrapper around [`random_matrix`].
pub fn gen_matrix<T: Scalar>(n: usize, density: f64, seed: u64, sorted_diag: bool) -> Result<MaxMatrix<T>> {
    random_matrix(&mut rng(seed), n, density, sorted_diag)
}

pub fn random_permutation<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Permutation {
    let mut map: Vec<usize> = (0..n).collect();
    map.shuffle(rng);
    Permutation::new(map).expect("shuffle of 0..n is a bijection")
}
