//! Integer factorization combinatorics: divisors, multiplicative partitions,
//! the additive and multiplicative Bell polynomials, and the f-weighted
//! binomial coefficients `(n d)_f = f(n) / (f(d) f(n/d))`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;

use crate::arith::{factorial, Polynomial, Rational};
use crate::error::{Error, Result};

const SIEVE_LIMIT: u64 = 1000;

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = SIEVE_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

/// `n = p1^m1 * ... * pr^mr` with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CanonicalDecomposition {
    factors: Vec<(u64, u32)>,
}

impl CanonicalDecomposition {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u64 {
        self.factors.iter().map(|&(p, m)| p.pow(m)).product()
    }

    /// Total multiplicity `s(n) = m1 + ... + mr`.
    pub fn s(&self) -> u32 {
        self.factors.iter().map(|&(_, m)| m).sum()
    }

    /// `f(n) = m1! ... mr!`.
    pub fn f(&self) -> BigInt {
        self.factors.iter().map(|&(_, m)| factorial(m as u64)).product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }
}

pub fn factorize(n: u64) -> CanonicalDecomposition {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut rest = n;
    let mut factors = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut m = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            m += 1;
        }
        if m > 0 {
            factors.push((p, m));
        }
    };
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        take(p, &mut rest);
    }
    let mut d = SIEVE_LIMIT + 1;
    while d * d <= rest {
        take(d, &mut rest);
        d += 2;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    CanonicalDecomposition { factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).factors == [(n, 1)]
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &(p, m) in factorize(n).factors() {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..m {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn s_of(n: u64) -> u32 {
    factorize(n).s()
}

pub fn f_of(n: u64) -> BigInt {
    factorize(n).f()
}

/// `(n d)_f = f(n) / (f(d) f(n/d))`.
pub fn binom_f(n: u64, d: u64) -> Result<Rational> {
    if d == 0 || !n.is_multiple_of(d) {
        return Err(Error::NotADivisor { n, d });
    }
    Ok(Rational::new(f_of(n), f_of(d) * f_of(n / d)))
}

/// Ordered tuples `(k1, ..., km)`, every `ki >= 2`, with product `n`, in
/// lexicographic order.
pub fn ordered_factorizations(n: u64, m: u32) -> Vec<Vec<u64>> {
    fn go(n: u64, m: u32, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if m == 0 {
            if n == 1 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in divisors(n).into_iter().filter(|&k| k >= 2) {
            prefix.push(k);
            go(n / k, m - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, &mut Vec::new(), &mut out);
    out
}

/// Unordered factorizations of `n` into exactly `m` factors `>= 2`, each a
/// non-increasing list.
pub fn multiplicative_partitions(n: u64, m: u32) -> Vec<Vec<u64>> {
    fn go(n: u64, m: u32, max: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if m == 0 {
            if n == 1 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in divisors(n).into_iter().rev().filter(|&k| k >= 2 && k <= max) {
            prefix.push(k);
            go(n / k, m - 1, k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, m, n, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `n` into exactly `m` parts as multiplicity vectors
/// `(m1, ..., mn)` with `sum k*mk = n` and `sum mk = m`.
pub fn partitions_into_parts(n: u32, m: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, parts: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 0 {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in (1..=max.min(rest)).rev() {
            prefix.push(k);
            go(rest - k, parts - 1, k, prefix, out);
            prefix.pop();
        }
    }
    let mut lists = Vec::new();
    go(n, m, n, &mut Vec::new(), &mut lists);
    lists
        .into_iter()
        .map(|parts| {
            let mut mult = vec![0u32; n as usize];
            for k in parts {
                mult[k as usize - 1] += 1;
            }
            mult
        })
        .collect()
}

fn multinomial(m: u32, counts: impl IntoIterator<Item = u32>) -> Rational {
    let denom: BigInt = counts.into_iter().map(|c| factorial(c as u64)).product();
    Rational::new(factorial(m as u64), denom)
}

/// Additive (partial ordinary) Bell polynomial `B_{n,m}(a1, ..., an)`;
/// `value(k)` supplies `a_k`.
pub fn bell_b(n: u32, m: u32, value: impl Fn(u32) -> Polynomial) -> Polynomial {
    let values: Vec<Polynomial> = (1..=n).map(&value).collect();
    let mut out = Polynomial::zero();
    for mult in partitions_into_parts(n, m) {
        let mut term = Polynomial::constant(multinomial(m, mult.iter().copied()));
        for (k, &e) in mult.iter().enumerate() {
            if e > 0 {
                term = &term * &values[k].pow(e);
            }
        }
        out += &term;
    }
    out
}

/// Multiplicative Bell polynomial `B~_{n,m}(a2, ..., an)`, summed over the
/// decompositions of `n` into `m` factors; `value(k)` supplies `a_k`.
/// `B~_{1,0} = 1`.
pub fn bell_btilde(n: u64, m: u32, value: impl Fn(u64) -> Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for factors in multiplicative_partitions(n, m) {
        let mut counts: BTreeMap<u64, u32> = BTreeMap::new();
        for k in factors {
            *counts.entry(k).or_default() += 1;
        }
        let mut term = Polynomial::constant(multinomial(m, counts.values().copied()));
        for (&k, &e) in &counts {
            term = &term * &value(k).pow(e);
        }
        out += &term;
    }
    out
}
