//! Exact scalars and the polynomial coefficient ring.
//!
//! Scalars are arbitrary-precision rationals. Series coefficients live in
//! `Q[phi, beta, psi, L2, L3, ..., a1, a2, ...]`, where each `L<p>` stands
//! for ln p. Logarithms of distinct primes are linearly independent over Q,
//! so `ln n = sum m_i * L<p_i>` turns every identity involving ln n into a
//! polynomial identity decidable by structural equality.

mod poly;
mod symbol;
mod text;

pub use poly::{Monomial, Polynomial};
pub use symbol::Symbol;

use num_bigint::BigInt;
use num_traits::One;

use crate::comb::factorize;

/// Arbitrary-precision fraction, always normalized with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// `s (s-1) ... (s-m+1) / m!`, the coefficient of x^m in (1+x)^s.
pub fn binom_poly(s: Symbol, m: u32) -> Polynomial {
    let var = Polynomial::symbol(s);
    let mut out = Polynomial::one();
    for i in 0..m {
        let factor = &var - &Polynomial::int(i as i64);
        out = (&out * &factor).scale(&rat(1, i as i64 + 1));
    }
    out
}

/// Rising factorial `s (s+1) ... (s+m-1)`.
pub fn rising_poly(s: Symbol, m: u32) -> Polynomial {
    let var = Polynomial::symbol(s);
    (0..m).fold(Polynomial::one(), |acc, i| &acc * &(&var + &Polynomial::int(i as i64)))
}

/// ln n as `sum m_i L<p_i>` over the canonical decomposition; zero for n = 1.
pub fn log_n_poly(n: u64) -> Polynomial {
    assert!(n >= 1, "ln is only defined for positive integers");
    let mut out = Polynomial::zero();
    for (p, m) in factorize(n).factors() {
        out += &Polynomial::symbol(Symbol::Log(*p)).scale(&int(*m as i64));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn eval_at(p: &Polynomial, s: Symbol, v: i64) -> Rational {
        let mut asg = HashMap::new();
        asg.insert(s, int(v));
        p.eval(&asg).unwrap()
    }

    /// Pascal-triangle oracle, independent of `binomial`.
    fn pascal(n: usize, k: usize) -> i64 {
        let mut row = vec![1i64];
        for _ in 0..n {
            let mut next = vec![1i64; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn binom_poly_values() {
        assert_eq!(binom_poly(Symbol::Phi, 0), Polynomial::one());
        assert_eq!(binom_poly(Symbol::Phi, 2), "phi^2 * 1/2 - phi * 1/2".parse().unwrap());
        assert_eq!(eval_at(&binom_poly(Symbol::Phi, 3), Symbol::Phi, 6), int(20));
        assert_eq!(eval_at(&binom_poly(Symbol::Phi, 3), Symbol::Phi, 5), int(10));
        for t in 0..12 {
            for m in 0..=t {
                assert_eq!(eval_at(&binom_poly(Symbol::Phi, m as u32), Symbol::Phi, t as i64), int(pascal(t, m)));
                assert_eq!(binomial(t as u64, m as u64), BigInt::from(pascal(t, m)));
            }
        }
    }

    #[test]
    fn rising_poly_values() {
        assert_eq!(rising_poly(Symbol::Phi, 0), Polynomial::one());
        assert_eq!(rising_poly(Symbol::Phi, 2), "phi^2 + phi".parse().unwrap());
        assert_eq!(eval_at(&rising_poly(Symbol::Phi, 3), Symbol::Phi, 2), int(24));
    }

    #[test]
    fn log_n_values() {
        assert!(log_n_poly(1).is_zero());
        assert_eq!(log_n_poly(12), "2*L2 + L3".parse().unwrap());
        assert_eq!(log_n_poly(30), "L2 + L3 + L5".parse().unwrap());
    }

    #[test]
    fn log_is_additive_exhaustively() {
        let logs: Vec<Polynomial> =
            (0..=10_000u64).map(|n| if n == 0 { Polynomial::zero() } else { log_n_poly(n) }).collect();
        for n in 1..=100usize {
            for m in 1..=100usize {
                assert_eq!(logs[n * m], &logs[n] + &logs[m], "n={n} m={m}");
            }
        }
    }

    #[test]
    fn factorial_small() {
        assert_eq!(factorial(0), BigInt::from(1));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
