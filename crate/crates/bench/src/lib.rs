//! Inputs shared by the kernel benchmarks.

use dirseries::random::random_dir;
use dirseries::{DirSeries, Polynomial};

/// A random series with unit leading coefficient, reproducible per `seed`.
pub fn unit_series(trunc: usize, seed: u64) -> DirSeries {
    random_dir(trunc, seed, true)
}

/// A random series with zero leading coefficient.
pub fn tail_series(trunc: usize, seed: u64) -> DirSeries {
    random_dir(trunc, seed, false).map_indexed(|n, c| if n == 1 { Polynomial::zero() } else { c.clone() })
}
