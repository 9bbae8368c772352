use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::{Rational, Symbol};
use crate::error::{Error, Result};

type Factors = SmallVec<[(Symbol, u32); 4]>;

/// A power product of symbols. The empty product is the unit monomial.
///
/// Ordering is graded: total degree first, then the sorted factor list
/// compared lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    degree: u32,
    factors: Factors,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(s: Symbol) -> Self {
        Self::power(s, 1)
    }

    pub fn power(s: Symbol, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut factors = Factors::new();
        factors.push((s, e));
        Monomial { degree: e, factors }
    }

    /// Builds a monomial from arbitrary (symbol, exponent) pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Symbol, u32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Symbol, u32> = BTreeMap::new();
        for (s, e) in pairs {
            *map.entry(s).or_default() += e;
        }
        let factors: Factors = map.into_iter().filter(|&(_, e)| e > 0).collect();
        let degree = factors.iter().map(|&(_, e)| e).sum();
        Monomial { degree, factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.factors
    }

    pub fn exponent(&self, s: Symbol) -> u32 {
        self.factors.binary_search_by(|(t, _)| t.cmp(&s)).map(|i| self.factors[i].1).unwrap_or(0)
    }

    /// Splits off the power of `s`, returning (exponent, remaining monomial).
    pub fn split(&self, s: Symbol) -> (u32, Monomial) {
        match self.factors.binary_search_by(|(t, _)| t.cmp(&s)) {
            Ok(i) => {
                let e = self.factors[i].1;
                let mut factors = self.factors.clone();
                factors.remove(i);
                (e, Monomial { degree: self.degree - e, factors })
            }
            Err(_) => (0, self.clone()),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if other.is_one() {
            return self.clone();
        }
        if self.is_one() {
            return other.clone();
        }
        let mut factors = Factors::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    factors.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    factors.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    factors.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        factors.extend_from_slice(&a[i..]);
        factors.extend_from_slice(&b[j..]);
        Monomial { degree: self.degree + other.degree, factors }
    }
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn int(c: i64) -> Self {
        Self::constant(Rational::from_integer(c.into()))
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(Monomial::var(s), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included), `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending canonical order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|m| m.factors().iter().map(|&(s, _)| s)).collect()
    }

    pub fn degree_in(&self, s: Symbol) -> u32 {
        self.terms.keys().map(|m| m.exponent(s)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    /// `self += a * b` without materializing the product.
    pub fn add_mul(&mut self, a: &Polynomial, b: &Polynomial) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if let (Some(ca), Some(cb)) = (a.as_constant(), b.as_constant()) {
            self.add_term(Monomial::one(), ca * cb);
            return;
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca * cb;
                acc.entry(ma.mul(mb)).and_modify(|v| *v += &c).or_insert(c);
            }
        }
        for (m, c) in acc {
            self.add_term(m, c);
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces every occurrence of `s` by `r`, expanding the result.
    pub fn substitute(&self, s: Symbol, r: &Polynomial) -> Polynomial {
        let mut by_power: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            by_power.entry(e).or_default().add_term(rest, c.clone());
        }
        if by_power.keys().all(|&e| e == 0) {
            return self.clone();
        }
        let mut out = Polynomial::zero();
        let mut r_pow = Polynomial::one();
        let mut current = 0;
        for (e, part) in by_power {
            while current < e {
                r_pow = &r_pow * r;
                current += 1;
            }
            out.add_mul(&part, &r_pow);
        }
        out
    }

    /// Exact quotient by a single symbol; fails if any term lacks `s`.
    pub fn divide_by_symbol(&self, s: Symbol) -> Result<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(s);
            if e == 0 {
                return Err(Error::NotDivisible(s.to_string()));
            }
            let q = rest.mul(&Monomial::power(s, e - 1));
            terms.insert(q, c.clone());
        }
        Ok(Polynomial { terms })
    }

    pub fn eval(&self, assignment: &HashMap<Symbol, Rational>) -> Result<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for &(s, e) in m.factors() {
                let x = assignment.get(&s).ok_or_else(|| Error::MissingSymbol(s.to_string()))?;
                v *= num_traits::pow(x.clone(), e as usize);
            }
            total += v;
        }
        Ok(total)
    }

    /// First monomial (in canonical order) where the two polynomials
    /// disagree, with both coefficients.
    pub fn first_difference(&self, other: &Polynomial) -> Option<(Monomial, Rational, Rational)> {
        let keys: BTreeSet<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|m| {
            let (a, b) = (self.coefficient(m), other.coefficient(m));
            (a != b).then(|| (m.clone(), a, b))
        })
    }

    pub fn leading_sign_negative(&self) -> bool {
        self.terms.iter().next_back().is_some_and(|(_, c)| c.is_negative())
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Symbol> for Polynomial {
    fn from(s: Symbol) -> Self {
        Polynomial::symbol(s)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (mut big, small) =
            if self.terms.len() >= rhs.terms.len() { (self.clone(), rhs) } else { (rhs.clone(), self) };
        big += small;
        big
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            *c = -c.clone();
        }
        self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        out.add_mul(self, rhs);
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn phi() -> Polynomial {
        Polynomial::symbol(Symbol::Phi)
    }

    fn l(p: u64) -> Polynomial {
        Polynomial::symbol(Symbol::Log(p))
    }

    #[test]
    fn additive_inverse_prunes() {
        let z = &phi() + &(-&phi());
        assert!(z.is_zero());
        assert_eq!(z, Polynomial::zero());
    }

    #[test]
    fn collects_like_terms() {
        let lhs = &(&l(2) + &l(3)) + &l(2);
        let rhs = &l(2).scale(&rat(2, 1)) + &l(3);
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.num_terms(), 2);
    }

    #[test]
    fn products() {
        let p = &phi() * &(&phi() + &Polynomial::one());
        assert_eq!(p, &phi().pow(2) + &phi());
        let q = &l(2) * &l(3);
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.total_degree(), 2);
        // (phi + beta*(2L2+L3))^2
        let beta = Polynomial::symbol(Symbol::Beta);
        let ln12 = &l(2).scale(&rat(2, 1)) + &l(3);
        let s = &phi() + &(&beta * &ln12);
        let expanded =
            &(&phi().pow(2) + &(&(&phi() * &beta) * &ln12).scale(&rat(2, 1))) + &(&beta.pow(2) * &ln12.pow(2));
        assert_eq!(s.pow(2), expanded);
    }

    #[test]
    fn substitute_cases() {
        let psi = Polynomial::symbol(Symbol::Psi);
        let beta = Polynomial::symbol(Symbol::Beta);
        let r = &phi() + &(&beta * &l(2));
        let got = psi.pow(2).substitute(Symbol::Psi, &r);
        let want = &(&phi().pow(2) + &(&(&phi() * &beta) * &l(2)).scale(&rat(2, 1))) + &(&beta.pow(2) * &l(2).pow(2));
        assert_eq!(got, want);

        let c2 = &(&phi() * &(&phi() - &Polynomial::one())).scale(&rat(1, 2)) + &Polynomial::zero();
        assert_eq!(c2.substitute(Symbol::Phi, &Polynomial::int(2)), Polynomial::one());

        let q = &(&psi * &phi()) + &(&psi.pow(3) * &l(5));
        assert!(q.substitute(Symbol::Psi, &Polynomial::zero()).is_zero());
    }

    #[test]
    fn divide_by_symbol_cases() {
        let p = &phi().pow(2) + &phi().scale(&rat(3, 1));
        assert_eq!(p.divide_by_symbol(Symbol::Phi).unwrap(), &phi() + &Polynomial::int(3));
        assert_eq!((&phi() * &l(2)).divide_by_symbol(Symbol::Phi).unwrap(), l(2));
        assert!(matches!((&phi() + &Polynomial::one()).divide_by_symbol(Symbol::Phi), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn eval_cases() {
        let mut asg = HashMap::new();
        asg.insert(Symbol::Phi, rat(3, 1));
        assert_eq!((&phi().pow(2) + &phi()).eval(&asg).unwrap(), rat(12, 1));
        assert_eq!(Polynomial::zero().eval(&HashMap::new()).unwrap(), rat(0, 1));
        assert!(matches!(l(2).eval(&asg), Err(Error::MissingSymbol(_))));
    }

    #[test]
    fn first_difference_reports_term() {
        let a = &phi() + &Polynomial::int(1);
        let b = &phi() + &Polynomial::int(2);
        let (m, x, y) = a.first_difference(&b).unwrap();
        assert!(m.is_one());
        assert_eq!((x, y), (rat(1, 1), rat(2, 1)));
        assert!(a.first_difference(&a).is_none());
    }
}
