use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use super::OrdSeries;
use crate::arith::{binom_poly, factorial, int, log_n_poly, rat, Polynomial, Rational, Symbol};
use crate::comb::divisors;
use crate::error::{Error, Result};
use crate::fault;

/// Truncated series `sum_{n=1}^{N} a_n x^n` under Dirichlet composition.
///
/// There is no constant term. `coeff(n)` is valid for `1 <= n <= trunc()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirSeries {
    coeffs: Vec<Polynomial>,
}

impl DirSeries {
    pub fn zero(trunc: usize) -> Self {
        DirSeries { coeffs: vec![Polynomial::zero(); trunc] }
    }

    /// The unit `x` of Dirichlet composition.
    pub fn identity(trunc: usize) -> Self {
        Self::monomial(1, trunc)
    }

    /// `x^k`, truncated.
    pub fn monomial(k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if (1..=trunc).contains(&k) {
            s.coeffs[k - 1] = Polynomial::one();
        }
        s
    }

    pub fn from_fn(trunc: usize, mut f: impl FnMut(u64) -> Polynomial) -> Self {
        DirSeries { coeffs: (1..=trunc as u64).map(&mut f).collect() }
    }

    pub fn from_rationals(trunc: usize, mut f: impl FnMut(u64) -> Rational) -> Self {
        Self::from_fn(trunc, |n| Polynomial::constant(f(n)))
    }

    /// `coeffs[0]` is the coefficient of `x^1`.
    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Self {
        DirSeries { coeffs }
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: u64) -> &Polynomial {
        assert!(n >= 1 && n as usize <= self.coeffs.len(), "index {n} outside 1..={}", self.coeffs.len());
        &self.coeffs[n as usize - 1]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Polynomial> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    pub fn truncate(&self, trunc: usize) -> DirSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc, Polynomial::zero());
        DirSeries { coeffs }
    }

    pub fn map(&self, f: impl FnMut(&Polynomial) -> Polynomial) -> DirSeries {
        DirSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn map_indexed(&self, mut f: impl FnMut(u64, &Polynomial) -> Polynomial) -> DirSeries {
        DirSeries { coeffs: self.coeffs.iter().enumerate().map(|(i, c)| f(i as u64 + 1, c)).collect() }
    }

    pub fn scale(&self, c: &Polynomial) -> DirSeries {
        self.map(|a| a * c)
    }

    fn leading_is_one(&self) -> bool {
        self.coeffs.first().is_some_and(Polynomial::is_one)
    }

    fn leading_is_zero(&self) -> bool {
        self.coeffs.first().is_none_or(Polynomial::is_zero)
    }
}

impl Add for &DirSeries {
    type Output = DirSeries;
    fn add(self, rhs: &DirSeries) -> DirSeries {
        let n = self.trunc().min(rhs.trunc());
        DirSeries { coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &DirSeries {
    type Output = DirSeries;
    fn sub(self, rhs: &DirSeries) -> DirSeries {
        let n = self.trunc().min(rhs.trunc());
        DirSeries { coeffs: (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

/// Dirichlet composition `c_n = sum_{d | n} a_d b_{n/d}`; truncation is the
/// smaller of the two.
pub fn dir_mul(a: &DirSeries, b: &DirSeries) -> DirSeries {
    let n = a.trunc().min(b.trunc());
    let mut c = vec![Polynomial::zero(); n];
    for d in 1..=n {
        let ad = &a.coeffs[d - 1];
        if ad.is_zero() {
            continue;
        }
        for k in 1..=n / d {
            c[d * k - 1].add_mul(ad, &b.coeffs[k - 1]);
        }
    }
    for (i, v) in c.iter_mut().enumerate() {
        fault::corrupt(i + 1, v);
    }
    DirSeries { coeffs: c }
}

/// Single coefficient `[x^n] (a o b)`.
pub fn dir_mul_coeff(a: &DirSeries, b: &DirSeries, n: u64) -> Polynomial {
    let mut out = Polynomial::zero();
    for d in divisors(n) {
        out.add_mul(a.coeff(d), b.coeff(n / d));
    }
    fault::corrupt(n as usize, &mut out);
    out
}

fn leading_unit(a: &DirSeries) -> Result<Rational> {
    match a.coeffs.first().and_then(Polynomial::as_constant) {
        Some(c) if !c.is_zero() => Ok(c),
        _ => Err(Error::NonUnitLeadingCoefficient),
    }
}

/// The series `b` with `a o b = x`.
pub fn dir_inverse(a: &DirSeries) -> Result<DirSeries> {
    let inv_lead = leading_unit(a)?.recip();
    let n = a.trunc();
    let mut acc = vec![Polynomial::zero(); n];
    let mut b = vec![Polynomial::zero(); n];
    for k in 1..=n {
        b[k - 1] = if k == 1 { Polynomial::constant(inv_lead.clone()) } else { (-&acc[k - 1]).scale(&inv_lead) };
        if b[k - 1].is_zero() {
            continue;
        }
        for d in 2..=n / k {
            acc[d * k - 1].add_mul(&a.coeffs[d - 1], &b[k - 1]);
        }
    }
    Ok(DirSeries { coeffs: b })
}

/// k-fold composition power; negative powers go through the inverse.
pub fn dir_pow_int(a: &DirSeries, k: i64) -> Result<DirSeries> {
    let base = if k < 0 { dir_inverse(a)? } else { a.clone() };
    let mut e = k.unsigned_abs();
    let mut result = DirSeries::identity(a.trunc());
    let mut square = base;
    while e > 0 {
        if e & 1 == 1 {
            result = dir_mul(&result, &square);
        }
        e >>= 1;
        if e > 0 {
            square = dir_mul(&square, &square);
        }
    }
    Ok(result)
}

/// `a(x^k) = x^k o a`, keeping the truncation.
pub fn dir_subst_xk(a: &DirSeries, k: u64) -> DirSeries {
    assert!(k >= 1);
    let n = a.trunc();
    let mut out = DirSeries::zero(n);
    for j in 1..=n / k as usize {
        out.coeffs[k as usize * j - 1] = a.coeffs[j - 1].clone();
    }
    out
}

/// `c^(1), c^(2), ...` up to the last nonzero power. Requires `c_1 = 0`,
/// which makes `c^(m)` vanish below index `2^m`, so at most `log2 N`
/// powers are needed.
fn power_ladder(c: &DirSeries) -> Vec<DirSeries> {
    debug_assert!(c.leading_is_zero());
    let max = c.trunc().max(1).ilog2() as usize;
    let mut ladder = Vec::new();
    let mut pow = c.clone();
    while !pow.is_zero() && ladder.len() < max {
        let next = dir_mul(&pow, c);
        ladder.push(pow);
        pow = next;
    }
    ladder
}

fn minus_x(a: &DirSeries) -> DirSeries {
    let mut c = a.clone();
    if let Some(first) = c.coeffs.first_mut() {
        *first -= &Polynomial::one();
    }
    c
}

/// `f o (a) = x f_0 + sum_{m>=1} f_m a^(m)` for `a_1 = 0`. Exact up to the
/// truncation of `a` as long as `f` carries every needed `f_m`
/// (`m <= log2 N`).
pub fn dir_apply_series(f: &OrdSeries, a: &DirSeries) -> Result<DirSeries> {
    if !a.leading_is_zero() {
        return Err(Error::LeadingCoefficientNotZero);
    }
    let mut out = DirSeries::identity(a.trunc()).scale(f.coeff(0));
    for (i, pow) in power_ladder(a).iter().enumerate() {
        let m = i + 1;
        if m > f.trunc() {
            break;
        }
        let fm = f.coeff(m);
        if !fm.is_zero() {
            out = &out + &pow.scale(fm);
        }
    }
    Ok(out)
}

/// Sum `x + sum_m w(m) c^(m)` over the power ladder of `c`.
fn ladder_sum(c: &DirSeries, weight: impl Fn(u32) -> Polynomial) -> DirSeries {
    let mut out = DirSeries::identity(c.trunc());
    for (i, pow) in power_ladder(c).iter().enumerate() {
        out = &out + &pow.scale(&weight(i as u32 + 1));
    }
    out
}

/// `a^(psi) = sum_m C(psi, m) (a - x)^(m)` with coefficients polynomial in
/// `psi`. Requires `a_1 = 1`.
pub fn dir_pow_param(a: &DirSeries) -> Result<DirSeries> {
    if !a.leading_is_one() {
        return Err(Error::LeadingCoefficientNotOne);
    }
    Ok(ladder_sum(&minus_x(a), |m| binom_poly(Symbol::Psi, m)))
}

/// `log o a = sum_m (-1)^(m+1) (a - x)^(m) / m`. Requires `a_1 = 1`.
pub fn dir_log(a: &DirSeries) -> Result<DirSeries> {
    if !a.leading_is_one() {
        return Err(Error::LeadingCoefficientNotOne);
    }
    let mut out = ladder_sum(&minus_x(a), |m| {
        let sign = if m % 2 == 1 { 1 } else { -1 };
        Polynomial::constant(rat(sign, m as i64))
    });
    out.coeffs[0] = Polynomial::zero();
    Ok(out)
}

/// `x + sum_m psi^m b^(m) / m!`. Requires `b_1 = 0`.
pub fn dir_exp_param(b: &DirSeries) -> Result<DirSeries> {
    if !b.leading_is_zero() {
        return Err(Error::LeadingCoefficientNotZero);
    }
    let psi = Polynomial::symbol(Symbol::Psi);
    Ok(ladder_sum(b, |m| psi.pow(m).scale(&Rational::new(One::one(), factorial(m as u64)))))
}

/// `a^(value)` from the parametric power `p = a^(psi)`, keeping the first
/// `trunc` coefficients.
pub fn specialize_power(p: &DirSeries, value: &Polynomial, trunc: usize) -> DirSeries {
    let t = trunc.min(p.trunc());
    DirSeries { coeffs: p.coeffs[..t].iter().map(|c| c.substitute(Symbol::Psi, value)).collect() }
}

/// `c * a(x^k)` at truncation `trunc`, for `a` carrying at least
/// `trunc / k` coefficients.
pub fn subst_and_scale(a: &DirSeries, k: u64, c: &Polynomial, trunc: usize) -> DirSeries {
    let mut out = DirSeries::zero(trunc);
    for j in 1..=(trunc / k as usize).min(a.trunc()) {
        out.coeffs[k as usize * j - 1] = &a.coeffs[j - 1] * c;
    }
    out
}

/// `a* = sum ln n a_n x^n`.
pub fn star_derivative(a: &DirSeries) -> DirSeries {
    a.map_indexed(|n, c| if n == 1 || c.is_zero() { Polynomial::zero() } else { c * &log_n_poly(n) })
}

pub fn series_substitute_symbol(a: &DirSeries, s: Symbol, r: &Polynomial) -> DirSeries {
    a.map(|c| c.substitute(s, r))
}

/// `a_n -> n^k a_n`.
pub fn twist_int(a: &DirSeries, k: i32) -> DirSeries {
    a.map_indexed(|n, c| {
        let w = num_traits::pow(int(n as i64), k.unsigned_abs() as usize);
        let w = if k < 0 { w.recip() } else { w };
        c.scale(&w)
    })
}

/// `sum a_n x^(m^n)`: the ordinary series placed on the powers of `m`.
pub fn perfect_power_embed(a: &OrdSeries, m: u64, trunc: usize) -> Result<DirSeries> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("embedding base must be at least 2, got {m}")));
    }
    let mut out = DirSeries::zero(trunc);
    let mut idx: u64 = 1;
    for n in 0..=a.trunc() {
        if idx as usize > trunc {
            break;
        }
        out.coeffs[idx as usize - 1] = a.coeff(n).clone();
        idx = match idx.checked_mul(m) {
            Some(v) => v,
            None => break,
        };
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::binomial;
    use crate::random::random_dir;

    fn ones(n: usize) -> DirSeries {
        DirSeries::from_fn(n, |_| Polynomial::one())
    }

    fn c(v: i64) -> Polynomial {
        Polynomial::int(v)
    }

    /// Möbius function by a linear-time sieve, independent of the
    /// convolution machinery.
    fn mobius_sieve(n: usize) -> Vec<i64> {
        let mut mu = vec![1i64; n + 1];
        let mut is_comp = vec![false; n + 1];
        for p in 2..=n {
            if is_comp[p] {
                continue;
            }
            for j in (p..=n).step_by(p) {
                if j > p {
                    is_comp[j] = true;
                }
                mu[j] = -mu[j];
            }
            let sq = p * p;
            for j in (sq..=n).step_by(sq) {
                mu[j] = 0;
            }
        }
        mu
    }

    #[test]
    fn identity_is_neutral() {
        let a = random_dir(40, 7, false);
        assert_eq!(dir_mul(&DirSeries::identity(40), &a), a);
    }

    #[test]
    fn monomials_multiply_indices() {
        let got = dir_mul(&DirSeries::monomial(2, 30), &DirSeries::monomial(3, 30));
        assert_eq!(got, DirSeries::monomial(6, 30));
    }

    #[test]
    fn zeta_squared_counts_divisors() {
        let z2 = dir_mul(&ones(120), &ones(120));
        for n in 1..=120u64 {
            let d = (1..=n).filter(|d| n % d == 0).count() as i64;
            assert_eq!(z2.coeff(n), &c(d));
        }
        assert_eq!(z2.coeff(6), &c(4));
    }

    #[test]
    fn inverse_of_zeta_is_mobius() {
        let mu = mobius_sieve(1000);
        let inv = dir_inverse(&ones(1000)).unwrap();
        for (n, &m) in mu.iter().enumerate().skip(1) {
            assert_eq!(inv.coeff(n as u64), &c(m), "n={n}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        assert_eq!(dir_inverse(&DirSeries::identity(10)).unwrap(), DirSeries::identity(10));
        for seed in 0..4 {
            let a = random_dir(64, seed, true);
            let b = dir_inverse(&a).unwrap();
            assert_eq!(dir_mul(&a, &b), DirSeries::identity(64));
        }
        assert_eq!(dir_inverse(&DirSeries::monomial(2, 8)), Err(Error::NonUnitLeadingCoefficient));
    }

    #[test]
    fn integer_powers() {
        let a = random_dir(32, 3, true);
        assert_eq!(dir_pow_int(&a, 0).unwrap(), DirSeries::identity(32));
        assert_eq!(dir_pow_int(&DirSeries::monomial(2, 300), 3).unwrap(), DirSeries::monomial(8, 300));
        // (x + x^2)^(3) = sum C(3,n) x^(2^n)
        let xx2 = &DirSeries::identity(16) + &DirSeries::monomial(2, 16);
        let cube = dir_pow_int(&xx2, 3).unwrap();
        let expect = DirSeries::from_fn(16, |n| {
            if n.is_power_of_two() {
                Polynomial::constant(Rational::from_integer(binomial(3, n.trailing_zeros() as u64)))
            } else {
                Polynomial::zero()
            }
        });
        assert_eq!(cube, expect);
        let inv2 = dir_pow_int(&a, -2).unwrap();
        assert_eq!(dir_mul(&inv2, &dir_pow_int(&a, 2).unwrap()), DirSeries::identity(32));
        assert!(dir_pow_int(&DirSeries::zero(4), -1).is_err());
    }

    #[test]
    fn subst_xk_matches_monomial_product() {
        let z = ones(24);
        assert_eq!(dir_subst_xk(&z, 1), z);
        let z2 = dir_subst_xk(&z, 2);
        for n in 1..=24u64 {
            assert_eq!(z2.coeff(n), &c(i64::from(n % 2 == 0)));
        }
        let a = random_dir(48, 11, false);
        for k in 1..6 {
            assert_eq!(dir_subst_xk(&a, k), dir_mul(&DirSeries::monomial(k as usize, 48), &a));
        }
    }

    #[test]
    fn pow_param_special_cases() {
        let x = DirSeries::identity(20);
        assert_eq!(dir_pow_param(&x).unwrap(), x);
        let xx2 = &DirSeries::identity(64) + &DirSeries::monomial(2, 64);
        let p = dir_pow_param(&xx2).unwrap();
        for n in 0..=6u32 {
            assert_eq!(p.coeff(1 << n), &binom_poly(Symbol::Psi, n));
        }
        assert_eq!(dir_pow_param(&DirSeries::monomial(2, 4)), Err(Error::LeadingCoefficientNotOne));
    }

    #[test]
    fn pow_param_specializes_to_integer_powers() {
        for seed in 0..3 {
            let a = random_dir(64, seed, true);
            let p = dir_pow_param(&a).unwrap();
            assert_eq!(series_substitute_symbol(&p, Symbol::Psi, &c(3)), dir_pow_int(&a, 3).unwrap());
            assert_eq!(series_substitute_symbol(&p, Symbol::Psi, &c(2)), dir_pow_int(&a, 2).unwrap());
            assert_eq!(series_substitute_symbol(&p, Symbol::Psi, &c(0)), DirSeries::identity(64));
            // negative powers: psi -> -k against (a^(-1))^(k)
            let inv = dir_inverse(&a).unwrap();
            assert_eq!(series_substitute_symbol(&p, Symbol::Psi, &c(-2)), dir_pow_int(&inv, 2).unwrap());
        }
    }

    #[test]
    fn log_of_zeta_and_x() {
        let l = dir_log(&ones(200)).unwrap();
        for n in 1..=200u64 {
            let d = crate::comb::factorize(n);
            let expect =
                if d.is_prime_power() { Polynomial::constant(rat(1, d.s() as i64)) } else { Polynomial::zero() };
            assert_eq!(l.coeff(n), &expect, "n={n}");
        }
        assert!(dir_log(&DirSeries::identity(30)).unwrap().is_zero());
    }

    #[test]
    fn exp_of_log_is_power() {
        assert_eq!(dir_exp_param(&DirSeries::zero(10)).unwrap(), DirSeries::identity(10));
        for seed in 0..3 {
            let a = random_dir(64, seed + 20, true);
            let lhs = dir_exp_param(&dir_log(&a).unwrap()).unwrap();
            assert_eq!(lhs, dir_pow_param(&a).unwrap());
        }
        assert_eq!(dir_exp_param(&DirSeries::identity(4)), Err(Error::LeadingCoefficientNotZero));
    }

    #[test]
    fn star_derivative_basics() {
        assert!(star_derivative(&DirSeries::identity(12)).is_zero());
        assert_eq!(star_derivative(&ones(12)).coeff(12), &"2*L2 + L3".parse().unwrap());
        for seed in 0..3 {
            let a = random_dir(48, seed, false);
            let b = random_dir(48, seed + 100, false);
            let lhs = star_derivative(&dir_mul(&a, &b));
            let rhs = &dir_mul(&a, &star_derivative(&b)) + &dir_mul(&star_derivative(&a), &b);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn twist_is_a_homomorphism() {
        let a = random_dir(64, 1, false);
        let b = random_dir(64, 2, false);
        assert_eq!(twist_int(&a, 0), a);
        assert_eq!(twist_int(&DirSeries::identity(9), 5), DirSeries::identity(9));
        for k in [-2, -1, 1, 3] {
            assert_eq!(twist_int(&dir_mul(&a, &b), k), dir_mul(&twist_int(&a, k), &twist_int(&b, k)));
        }
    }

    #[test]
    fn commutativity() {
        let a = random_dir(64, 5, false);
        let b = random_dir(64, 6, false);
        assert_eq!(dir_mul(&a, &b), dir_mul(&b, &a));
    }

    #[test]
    fn apply_series_basics() {
        let a = &DirSeries::monomial(2, 20) + &DirSeries::monomial(3, 20);
        let one = OrdSeries::one(5);
        assert_eq!(dir_apply_series(&one, &a).unwrap(), DirSeries::identity(20));
        assert_eq!(dir_apply_series(&OrdSeries::x(5), &a).unwrap(), a);
        assert!(dir_apply_series(&one, &ones(4)).is_err());
    }

    #[test]
    fn perfect_power_embedding() {
        let onepx = OrdSeries::from_coeffs(vec![c(1), c(1), c(0)]);
        assert_eq!(perfect_power_embed(&onepx, 2, 10).unwrap(), &DirSeries::identity(10) + &DirSeries::monomial(2, 10));
        assert_eq!(perfect_power_embed(&OrdSeries::one(4), 3, 10).unwrap(), DirSeries::identity(10));
        assert!(perfect_power_embed(&onepx, 1, 10).is_err());
    }
}
