//! Deterministic pseudo-random series with small rational coefficients, for
//! property tests and benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{rat, Polynomial};
use crate::series::{DirSeries, OrdSeries};

fn small_rational(rng: &mut ChaCha8Rng) -> Polynomial {
    let n: i64 = rng.random_range(-4..=4);
    let d: i64 = rng.random_range(1..=3);
    Polynomial::constant(rat(n, d))
}

/// Random Dirichlet series; `unit_leading` pins `a_1 = 1`, otherwise `a_1`
/// is random as well (possibly zero).
pub fn random_dir(trunc: usize, seed: u64, unit_leading: bool) -> DirSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DirSeries::from_fn(trunc, |n| if n == 1 && unit_leading { Polynomial::one() } else { small_rational(&mut rng) })
}

/// Random ordinary series; `unit_constant` pins `a_0 = 1`.
pub fn random_ord(trunc: usize, seed: u64, unit_constant: bool) -> OrdSeries {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    OrdSeries::from_fn(trunc, |n| if n == 0 && unit_constant { Polynomial::one() } else { small_rational(&mut rng) })
}
