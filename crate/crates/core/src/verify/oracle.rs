//! Reference values computed without the series kernels.

/// Möbius function on `0..=n` by a sieve.
pub fn mobius(n: usize) -> Vec<i64> {
    let mut mu = vec![1i64; n + 1];
    let mut composite = vec![false; n + 1];
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for j in (p..=n).step_by(p) {
            if j > p {
                composite[j] = true;
            }
            mu[j] = -mu[j];
        }
        for j in (p * p..=n).step_by(p * p) {
            mu[j] = 0;
        }
    }
    mu
}

/// Squarefree indicator on `0..=n`.
pub fn squarefree(n: usize) -> Vec<bool> {
    let mut sf = vec![true; n + 1];
    let mut k = 2;
    while k * k <= n {
        for j in (k * k..=n).step_by(k * k) {
            sf[j] = false;
        }
        k += 1;
    }
    sf
}

pub fn divisor_count(n: u64) -> u64 {
    (1..=n).filter(|d| n.is_multiple_of(*d)).count() as u64
}

pub fn is_prime_trial(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `(p, m)` when `n = p^m` with `m >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut rest = n;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

/// Number of ordered factorizations of `n` into `m` factors `>= 2`, by
/// direct recursion over all candidate first factors.
pub fn ordered_count(n: u64, m: u32) -> u64 {
    if m == 0 {
        return u64::from(n == 1);
    }
    (2..=n).filter(|k| n.is_multiple_of(*k)).map(|k| ordered_count(n / k, m - 1)).sum()
}
