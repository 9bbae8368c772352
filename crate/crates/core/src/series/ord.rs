use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::arith::{factorial, int, Polynomial, Rational, Symbol};
use crate::error::{Error, Result};

/// Truncated ordinary power series `sum_{n=0}^{N} a_n x^n` under the Cauchy
/// product.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrdSeries {
    coeffs: Vec<Polynomial>,
}

impl OrdSeries {
    pub fn zero(trunc: usize) -> Self {
        OrdSeries { coeffs: vec![Polynomial::zero(); trunc + 1] }
    }

    pub fn one(trunc: usize) -> Self {
        Self::monomial(0, trunc)
    }

    pub fn x(trunc: usize) -> Self {
        Self::monomial(1, trunc)
    }

    pub fn monomial(k: usize, trunc: usize) -> Self {
        let mut s = Self::zero(trunc);
        if k <= trunc {
            s.coeffs[k] = Polynomial::one();
        }
        s
    }

    pub fn from_fn(trunc: usize, f: impl FnMut(u64) -> Polynomial) -> Self {
        OrdSeries { coeffs: (0..=trunc as u64).map(f).collect() }
    }

    /// `coeffs[k]` is the coefficient of `x^k`; must be nonempty.
    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Self {
        assert!(!coeffs.is_empty(), "an ordinary series needs a constant term");
        OrdSeries { coeffs }
    }

    /// `1/(1-x)`.
    pub fn geometric(trunc: usize) -> Self {
        Self::from_fn(trunc, |_| Polynomial::one())
    }

    /// `e^x`.
    pub fn exp_x(trunc: usize) -> Self {
        Self::from_fn(trunc, |n| Polynomial::constant(Rational::new(One::one(), factorial(n))))
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &Polynomial {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn truncate(&self, trunc: usize) -> OrdSeries {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc + 1, Polynomial::zero());
        OrdSeries { coeffs }
    }

    pub fn map(&self, f: impl FnMut(&Polynomial) -> Polynomial) -> OrdSeries {
        OrdSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn scale(&self, c: &Polynomial) -> OrdSeries {
        self.map(|a| a * c)
    }

    pub fn substitute_symbol(&self, s: Symbol, r: &Polynomial) -> OrdSeries {
        self.map(|c| c.substitute(s, r))
    }
}

impl Add for &OrdSeries {
    type Output = OrdSeries;
    fn add(self, rhs: &OrdSeries) -> OrdSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        OrdSeries { coeffs: (0..n).map(|i| &self.coeffs[i] + &rhs.coeffs[i]).collect() }
    }
}

impl Sub for &OrdSeries {
    type Output = OrdSeries;
    fn sub(self, rhs: &OrdSeries) -> OrdSeries {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        OrdSeries { coeffs: (0..n).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect() }
    }
}

pub fn ord_mul(a: &OrdSeries, b: &OrdSeries) -> OrdSeries {
    let n = a.trunc().min(b.trunc());
    let mut c = vec![Polynomial::zero(); n + 1];
    for i in 0..=n {
        if a.coeffs[i].is_zero() {
            continue;
        }
        for j in 0..=n - i {
            c[i + j].add_mul(&a.coeffs[i], &b.coeffs[j]);
        }
    }
    OrdSeries { coeffs: c }
}

/// `f(g(x))`, requiring `g_0 = 0`.
pub fn ord_compose(f: &OrdSeries, g: &OrdSeries) -> Result<OrdSeries> {
    if !g.coeffs[0].is_zero() {
        return Err(Error::ConstantTermNotZero);
    }
    let n = f.trunc().min(g.trunc());
    let g = g.truncate(n);
    let mut out = OrdSeries::zero(n);
    for k in (0..=f.trunc()).rev() {
        out = ord_mul(&out, &g);
        out.coeffs[0] += &f.coeffs[k];
    }
    Ok(out.truncate(n))
}

fn constant_unit(a: &OrdSeries) -> Result<Rational> {
    match a.coeffs[0].as_constant() {
        Some(c) if !c.is_zero() => Ok(c),
        _ => Err(Error::ConstantTermNotUnit),
    }
}

/// Multiplicative inverse `1/a`.
pub fn ord_inverse_mul(a: &OrdSeries) -> Result<OrdSeries> {
    let inv0 = constant_unit(a)?.recip();
    let n = a.trunc();
    let mut b: Vec<Polynomial> = Vec::with_capacity(n + 1);
    b.push(Polynomial::constant(inv0.clone()));
    for k in 1..=n {
        let mut acc = Polynomial::zero();
        for j in 1..=k {
            acc.add_mul(&a.coeffs[j], &b[k - j]);
        }
        b.push((-acc).scale(&inv0));
    }
    Ok(OrdSeries { coeffs: b })
}

/// `log a` for `a_0 = 1`, via `n l_n = n a_n - sum_{k<n} k l_k a_{n-k}`.
pub fn ord_log(a: &OrdSeries) -> Result<OrdSeries> {
    if !a.coeffs[0].is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let n = a.trunc();
    let mut l = vec![Polynomial::zero(); n + 1];
    for m in 1..=n {
        let mut acc = a.coeffs[m].scale(&int(m as i64));
        for (k, lk) in l.iter().enumerate().take(m).skip(1) {
            acc -= &(lk * &a.coeffs[m - k]).scale(&int(k as i64));
        }
        l[m] = acc.scale(&Rational::new(One::one(), (m as i64).into()));
    }
    Ok(OrdSeries { coeffs: l })
}

/// `exp b` for `b_0 = 0`, via `n e_n = sum_k k b_k e_{n-k}`.
pub fn ord_exp(b: &OrdSeries) -> Result<OrdSeries> {
    if !b.coeffs[0].is_zero() {
        return Err(Error::ConstantTermNotZero);
    }
    let n = b.trunc();
    let mut e = vec![Polynomial::zero(); n + 1];
    e[0] = Polynomial::one();
    for m in 1..=n {
        let mut acc = Polynomial::zero();
        for k in 1..=m {
            if !b.coeffs[k].is_zero() {
                acc += &(&b.coeffs[k] * &e[m - k]).scale(&int(k as i64));
            }
        }
        e[m] = acc.scale(&Rational::new(One::one(), (m as i64).into()));
    }
    Ok(OrdSeries { coeffs: e })
}

/// `a^psi = exp(psi log a)` for `a_0 = 1`, coefficients polynomial in `psi`.
pub fn ord_pow_param(a: &OrdSeries) -> Result<OrdSeries> {
    let l = ord_log(a)?;
    ord_exp(&l.scale(&Polynomial::symbol(Symbol::Psi)))
}
