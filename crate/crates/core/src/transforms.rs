//! Named constructions on top of the series algebra: the special series
//! `zeta` and `eps`, the lift of ordinary series into the Dirichlet algebra,
//! generalized Lagrange families, the Abel-type identities and the expansion
//! of a series over the basis `a^(-ln n)(x^n)`.

use num_traits::One;

use crate::arith::{binomial, log_n_poly, Polynomial, Rational, Symbol};
use crate::comb::{binom_f, divisors, f_of, factorize, is_prime, s_of};
use crate::error::{Error, Result};
use crate::series::{
    dir_exp_param, dir_log, dir_mul, dir_pow_param, ord_pow_param, specialize_power, star_derivative, subst_and_scale,
    DirSeries, OrdSeries,
};

fn sym(s: Symbol) -> Polynomial {
    Polynomial::symbol(s)
}

fn f_rational(n: u64) -> Rational {
    Rational::from_integer(f_of(n))
}

/// The all-ones series, the Dirichlet analog of `1/(1-x)`.
pub fn zeta(trunc: usize) -> DirSeries {
    DirSeries::from_fn(trunc, |_| Polynomial::one())
}

/// `eps^(psi)`, built by exponentiating the prime indicator.
pub fn eps_param(trunc: usize) -> DirSeries {
    let primes = DirSeries::from_fn(trunc, |n| if is_prime(n) { Polynomial::one() } else { Polynomial::zero() });
    dir_exp_param(&primes).expect("the prime indicator has no x^1 term")
}

/// `eps = eps^(1)`, with coefficients `1/f(n)`.
pub fn eps(trunc: usize) -> DirSeries {
    eps_param(trunc).map(|c| c.substitute(Symbol::Psi, &Polynomial::one()))
}

/// Lift of an ordinary series with `a_0 = 1`: coefficient `n` of the result
/// is the product of `[x^(m_i)] a^psi` over the canonical decomposition of
/// `n`.
pub fn lift_theorem1(a: &OrdSeries, trunc: usize) -> Result<DirSeries> {
    if !a.coeff(0).is_one() {
        return Err(Error::ConstantTermNotOne);
    }
    let need = (usize::BITS - 1 - trunc.max(1).leading_zeros()) as usize;
    if a.trunc() < need {
        return Err(Error::TruncationTooSmall { have: a.trunc(), need });
    }
    let p = ord_pow_param(&a.truncate(need))?;
    Ok(DirSeries::from_fn(trunc, |n| {
        factorize(n).factors().iter().fold(Polynomial::one(), |acc, &(_, m)| &acc * p.coeff(m as usize))
    }))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaMode {
    Symbolic,
    Fixed(Rational),
}

impl BetaMode {
    pub fn value(&self) -> Polynomial {
        match self {
            BetaMode::Symbolic => sym(Symbol::Beta),
            BetaMode::Fixed(r) => Polynomial::constant(r.clone()),
        }
    }
}

/// The generalized Lagrange family `_(beta) a^(phi)` of a base series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LagrangeFamily {
    pub base: DirSeries,
    pub beta: BetaMode,
    /// Coefficients in `Q[phi, beta, L_p]`.
    pub series: DirSeries,
}

impl LagrangeFamily {
    /// The member at `phi = value`.
    pub fn at(&self, value: &Polynomial) -> DirSeries {
        self.series.map(|c| c.substitute(Symbol::Phi, value))
    }
}

/// `phi * (u / psi)(psi -> phi + shift)`, the exact form of
/// `phi / (phi + shift) * u(phi + shift)`.
fn lagrange_coefficient(u: &Polynomial, shift: &Polynomial) -> Result<Polynomial> {
    let q = u.divide_by_symbol(Symbol::Psi)?;
    let phi = sym(Symbol::Phi);
    Ok(&phi * &q.substitute(Symbol::Psi, &(&phi + shift)))
}

/// `[x^n] _(beta) a^(phi) = phi / (phi + beta ln n) [x^n] a^(phi + beta ln n)`.
pub fn lagrange_dir(a: &DirSeries, beta: BetaMode) -> Result<LagrangeFamily> {
    let p = dir_pow_param(a)?;
    let b = beta.value();
    let mut coeffs = Vec::with_capacity(a.trunc());
    for (i, u) in p.coeffs().iter().enumerate() {
        let n = i as u64 + 1;
        coeffs.push(if n == 1 { Polynomial::one() } else { lagrange_coefficient(u, &(&b * &log_n_poly(n)))? });
    }
    Ok(LagrangeFamily { base: a.clone(), beta, series: DirSeries::from_coeffs(coeffs) })
}

/// The same family read off the transform `(x - beta (log o a)*) o
/// a^(psi)` at `psi = phi + beta ln n`, without any division.
pub fn lagrange_dir_via_transform(a: &DirSeries, beta: &BetaMode) -> Result<DirSeries> {
    let b = beta.value();
    let log_star = star_derivative(&dir_log(a)?);
    let kernel = &DirSeries::identity(a.trunc()) - &log_star.scale(&b);
    let t = dir_mul(&kernel, &dir_pow_param(a)?);
    let phi = sym(Symbol::Phi);
    Ok(t.map_indexed(|n, c| c.substitute(Symbol::Psi, &(&phi + &(&b * &log_n_poly(n))))))
}

/// Ordinary generalized Lagrange series:
/// `[x^n] _(beta) a^phi = phi / (phi + beta n) [x^n] a^(phi + beta n)`.
pub fn lagrange_ord(a: &OrdSeries, beta: BetaMode) -> Result<OrdSeries> {
    let p = ord_pow_param(a)?;
    let b = beta.value();
    let mut coeffs = Vec::with_capacity(a.trunc() + 1);
    for (n, u) in p.coeffs().iter().enumerate() {
        coeffs.push(if n == 0 {
            Polynomial::one()
        } else {
            lagrange_coefficient(u, &(&b * &Polynomial::int(n as i64)))?
        });
    }
    Ok(OrdSeries::from_coeffs(coeffs))
}

/// Outcome of one identity at one index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub id: String,
    pub n: u64,
    pub holds: bool,
    /// First differing monomial with both coefficients, when the check fails.
    pub counterexample: Option<String>,
}

impl IdentityCheck {
    pub fn compare(id: impl Into<String>, n: u64, lhs: &Polynomial, rhs: &Polynomial) -> Self {
        let counterexample = lhs.first_difference(rhs).map(|(m, l, r)| format!("[{m}] lhs {l} rhs {r}"));
        IdentityCheck { id: id.into(), n, holds: counterexample.is_none(), counterexample }
    }

    pub fn flag(id: impl Into<String>, n: u64, holds: bool, detail: impl FnOnce() -> String) -> Self {
        IdentityCheck { id: id.into(), n, holds, counterexample: (!holds).then(detail) }
    }
}

/// `x (x + ln d)^(s(d) - 1)` with the value 1 at `d = 1`.
fn abel_g_closed(x: &Polynomial, d: u64) -> Polynomial {
    if d == 1 {
        return Polynomial::one();
    }
    x * &(x + &log_n_poly(d)).pow(s_of(d) - 1)
}

/// The k-th term of a classic identity and the matching Dirichlet term.
type TermPair<'a> = Box<dyn Fn(u32) -> (Polynomial, Polynomial) + 'a>;

/// Series tables shared by the Abel-type identity checks up to a bound.
pub struct AbelTables {
    /// `_(1) eps^(phi)`.
    family: DirSeries,
    /// `eps^(psi)`.
    eps_pow: DirSeries,
}

impl AbelTables {
    pub fn new(trunc: usize) -> Result<Self> {
        let e = eps(trunc);
        let family = lagrange_dir(&e, BetaMode::Fixed(Rational::one()))?.series;
        Ok(AbelTables { family, eps_pow: dir_pow_param(&e)? })
    }

    pub fn trunc(&self) -> usize {
        self.family.trunc()
    }

    /// `f(d) [x^d] _(1) eps^(v)`.
    pub fn g(&self, v: &Polynomial, d: u64) -> Polynomial {
        self.family.coeff(d).substitute(Symbol::Phi, v).scale(&f_rational(d))
    }

    /// `f(d) [x^d] eps^(v)`.
    pub fn e(&self, v: &Polynomial, d: u64) -> Polynomial {
        self.eps_pow.coeff(d).substitute(Symbol::Psi, v).scale(&f_rational(d))
    }

    /// The four identities at `n >= 2`; left sides from closed forms, right
    /// sides from the series tables. The third is multiplied through by
    /// `ln n`.
    pub fn check(&self, n: u64) -> Vec<IdentityCheck> {
        let (phi, beta) = (sym(Symbol::Phi), sym(Symbol::Beta));
        let ln = log_n_poly(n);
        let s = s_of(n);
        let pb = &phi + &beta;
        let divs = divisors(n);
        let sum = |term: &dyn Fn(u64) -> Polynomial| {
            let mut acc = Polynomial::zero();
            for &d in &divs {
                acc += &term(d).scale(&binom_f(n, d).expect("d divides n"));
            }
            acc
        };

        let lhs1 = &pb * &(&pb + &ln).pow(s - 1);
        let rhs1 = sum(&|d| &self.g(&phi, d) * &self.g(&beta, n / d));

        let lhs2 = (&pb + &ln).pow(s);
        let rhs2 = sum(&|d| &self.e(&(&phi + &log_n_poly(d)), d) * &self.g(&beta, n / d));

        let lhs3 = &ln * &(&phi * &(&phi + &ln).pow(s - 1));
        let rhs3 = sum(&|d| &(&self.e(&phi, d) * &ln) * &self.g(&log_n_poly(d), n / d));

        let lhs4 = phi.pow(s);
        let rhs4 = sum(&|d| &self.g(&phi, d) * &self.e(&-log_n_poly(d), n / d));

        vec![
            IdentityCheck::compare("abel-i", n, &lhs1, &rhs1),
            IdentityCheck::compare("abel-ii", n, &lhs2, &rhs2),
            IdentityCheck::compare("abel-iii", n, &lhs3, &rhs3),
            IdentityCheck::compare("abel-iv", n, &lhs4, &rhs4),
        ]
    }

    /// At `n = p^m` the four identities become the classical Abel identities
    /// in `x = phi`, `y = beta`, `z = L_p`. Each check confirms the classical
    /// identity and that its k-th term is the `d = p^k` term of the Dirichlet
    /// form (from the tables when `p^m` is within range, closed forms
    /// otherwise).
    pub fn check_classic(&self, p: u64, m: u32) -> Vec<IdentityCheck> {
        let n = p.pow(m);
        let z = Polynomial::symbol(Symbol::Log(p));
        let (x, y) = (sym(Symbol::Phi), sym(Symbol::Beta));
        let mz = z.scale(&Rational::from_integer(m.into()));
        let kz = |k: u32| z.scale(&Rational::from_integer(k.into()));
        // A_k(v) = v (v + k z)^(k-1), A_0 = 1
        let abel_a = |v: &Polynomial, k: u32| if k == 0 { Polynomial::one() } else { v * &(v + &kz(k)).pow(k - 1) };
        let in_range = n as usize <= self.trunc();
        let g = |v: &Polynomial, d: u64| if in_range { self.g(v, d) } else { abel_g_closed(v, d) };
        let e = |v: &Polynomial, d: u64| if in_range { self.e(v, d) } else { v.pow(s_of(d)) };

        let mut out = Vec::new();
        let forms: [(&str, Polynomial, TermPair<'_>); 4] = [
            (
                "abel-classic-i",
                &(&x + &y) * &(&(&x + &y) + &mz).pow(m - 1),
                Box::new(|k| {
                    let d = p.pow(k);
                    (&abel_a(&x, k) * &abel_a(&y, m - k), &g(&x, d) * &g(&y, n / d))
                }),
            ),
            (
                "abel-classic-ii",
                (&(&x + &y) + &mz).pow(m),
                Box::new(|k| {
                    let d = p.pow(k);
                    (&(&x + &kz(k)).pow(k) * &abel_a(&y, m - k), &e(&(&x + &log_n_poly(d)), d) * &g(&y, n / d))
                }),
            ),
            (
                "abel-classic-iii",
                &mz * &(&x * &(&x + &mz).pow(m - 1)),
                Box::new(|k| {
                    let d = p.pow(k);
                    (
                        &(&x.pow(k) * &mz) * &abel_a(&kz(k), m - k),
                        &(&e(&x, d) * &log_n_poly(n)) * &g(&log_n_poly(d), n / d),
                    )
                }),
            ),
            (
                "abel-classic-iv",
                x.pow(m),
                Box::new(|k| {
                    let d = p.pow(k);
                    (&abel_a(&x, k) * &(-kz(k)).pow(m - k), &g(&x, d) * &e(&-log_n_poly(d), n / d))
                }),
            ),
        ];
        for (id, lhs, term) in forms {
            let mut classic = Polynomial::zero();
            let mut mapped = true;
            for k in 0..=m {
                let d = p.pow(k);
                let c = Rational::from_integer(binomial(m as u64, k as u64));
                let (ck, dk) = term(k);
                mapped &= binom_f(n, d).ok() == Some(c.clone()) && ck == dk;
                classic += &ck.scale(&c);
            }
            let mut check = IdentityCheck::compare(id, n, &lhs, &classic);
            if check.holds && !mapped {
                check.holds = false;
                check.counterexample = Some("term mapping k -> p^k does not match".into());
            }
            out.push(check);
        }
        out
    }
}

/// All four Abel-type identities at a single `n >= 2`.
pub fn abel_check(n: u64) -> Result<Vec<IdentityCheck>> {
    if n < 2 {
        return Err(Error::InvalidArgument("the Abel identities start at n = 2".into()));
    }
    Ok(AbelTables::new(n as usize)?.check(n))
}

/// Tables for the mutually inverse relations satisfied by
/// `u_n(phi) = f(n) [x^n] lift(a)^(phi)` at a fixed rational `beta`.
pub struct UFamilyTables {
    /// `u_n` as a polynomial in `psi`.
    u: DirSeries,
    /// `s_k(psi) = k! [x^k] a^psi`, for the prime-power reduction.
    s: OrdSeries,
    beta: Polynomial,
}

impl UFamilyTables {
    pub fn new(a: &OrdSeries, beta: &Rational, trunc: usize) -> Result<Self> {
        let lift = lift_theorem1(a, trunc)?;
        let u = lift.map_indexed(|n, c| c.scale(&f_rational(n)));
        let p = ord_pow_param(a)?;
        let s = OrdSeries::from_fn(p.trunc(), |k| {
            p.coeff(k as usize).scale(&Rational::from_integer(crate::arith::factorial(k)))
        });
        Ok(UFamilyTables { u, s, beta: Polynomial::constant(beta.clone()) })
    }

    fn u_at(&self, n: u64, v: &Polynomial) -> Polynomial {
        self.u.coeff(n).substitute(Symbol::Psi, v)
    }

    /// `phi (u_d / psi)(phi + shift)`, 1 at `d = 1`.
    fn lagrange_u(&self, d: u64, shift: &Polynomial) -> Polynomial {
        if d == 1 {
            return Polynomial::one();
        }
        lagrange_coefficient(self.u.coeff(d), shift).expect("u_d is divisible by psi for d >= 2")
    }

    /// Both relations at `n >= 2`, the first multiplied through by `ln n`.
    pub fn check(&self, n: u64) -> Vec<IdentityCheck> {
        let phi = sym(Symbol::Phi);
        let ln = log_n_poly(n);
        let bln = &self.beta * &ln;
        let divs = divisors(n);
        let bf = |d| binom_f(n, d).expect("d divides n");

        let lhs1 = &ln * &self.lagrange_u(n, &bln);
        let mut rhs1 = Polynomial::zero();
        for &d in &divs {
            rhs1 += &(&(&self.u_at(d, &phi) * &log_n_poly(d)) * &self.u_at(n / d, &bln)).scale(&bf(d));
        }

        let lhs2 = self.u_at(n, &phi);
        let mut rhs2 = Polynomial::zero();
        for &d in &divs {
            let shift = &self.beta * &log_n_poly(d);
            rhs2 += &(&self.lagrange_u(d, &shift) * &self.u_at(n / d, &-shift.clone())).scale(&bf(d));
        }
        vec![IdentityCheck::compare("u-r1", n, &lhs1, &rhs1), IdentityCheck::compare("u-r2", n, &lhs2, &rhs2)]
    }

    /// At `n = p^m` the relations are the ordinary Lagrange inverse pair for
    /// `s_k` with `beta L_p` in place of `beta`; checks that the classical
    /// sums equal the Dirichlet-side sums.
    pub fn check_prime_power(&self, p: u64, m: u32) -> Vec<IdentityCheck> {
        let n = p.pow(m);
        let phi = sym(Symbol::Phi);
        let z = Polynomial::symbol(Symbol::Log(p));
        let kz = |k: u32| z.scale(&Rational::from_integer(k.into()));
        let s_at = |k: u32, v: &Polynomial| self.s.coeff(k as usize).substitute(Symbol::Psi, v);
        let lag = |k: u32, shift: &Polynomial| {
            if k == 0 {
                Polynomial::one()
            } else {
                lagrange_coefficient(self.s.coeff(k as usize), shift).expect("s_k is divisible by psi")
            }
        };
        let bm = &self.beta * &kz(m);
        let mut r1 = Polynomial::zero();
        let mut r2 = Polynomial::zero();
        for k in 0..=m {
            let c = Rational::from_integer(binomial(m as u64, k as u64));
            r1 += &(&(&s_at(k, &phi) * &kz(k)) * &s_at(m - k, &bm)).scale(&c);
            let shift = &self.beta * &kz(k);
            r2 += &(&lag(k, &shift) * &s_at(m - k, &-shift.clone())).scale(&c);
        }
        let l1 = &kz(m) * &lag(m, &bm);
        let l2 = s_at(m, &phi);
        let dir = self.check(n);
        let same = |i: usize, lhs: &Polynomial, rhs: &Polynomial| {
            let mut c = IdentityCheck::compare(if i == 0 { "u-lagrange-r1" } else { "u-lagrange-r2" }, n, lhs, rhs);
            if c.holds && !dir[i].holds {
                c.holds = false;
                c.counterexample = dir[i].counterexample.clone();
            }
            c
        };
        let mut out = vec![same(0, &l1, &r1), same(1, &l2, &r2)];
        // The classical sides must coincide with the Dirichlet sides built from the lift.
        let lift_l2 = self.u_at(n, &phi);
        out.push(IdentityCheck::compare("u-lagrange-lift", n, &l2, &lift_l2));
        out
    }
}

/// `u_family` relations for every `2 <= n <= trunc` plus the prime-power
/// reductions inside that range.
pub fn u_family_check(a: &OrdSeries, beta: &Rational, trunc: usize) -> Result<Vec<IdentityCheck>> {
    let t = UFamilyTables::new(a, beta, trunc)?;
    let mut out = Vec::new();
    for n in 2..=trunc as u64 {
        out.extend(t.check(n));
        let d = factorize(n);
        if d.is_prime_power() {
            let (p, m) = d.factors()[0];
            out.extend(t.check_prime_power(p, m));
        }
    }
    Ok(out)
}

/// `c_n = [x^n] b o a^(ln n)` for `n = 1..N`.
pub fn expand_over_basis(b: &DirSeries, a: &DirSeries) -> Result<Vec<Polynomial>> {
    let n = a.trunc().min(b.trunc());
    let p = dir_pow_param(&a.truncate(n))?;
    Ok((1..=n as u64)
        .map(|m| {
            let ln = log_n_poly(m);
            let mut acc = Polynomial::zero();
            for d in divisors(m) {
                acc.add_mul(b.coeff(d), &p.coeff(m / d).substitute(Symbol::Psi, &ln));
            }
            acc
        })
        .collect())
}

/// Rebuilds `b = (x - (log o a)*) o sum_n c_n a^(-ln n)(x^n)`.
pub fn reconstruct_from_basis(c: &[Polynomial], a: &DirSeries) -> Result<DirSeries> {
    let n = c.len().min(a.trunc());
    let a = a.truncate(n);
    let p = dir_pow_param(&a)?;
    let mut sum = DirSeries::zero(n);
    for (i, cm) in c.iter().enumerate().take(n) {
        if cm.is_zero() {
            continue;
        }
        let m = i as u64 + 1;
        let part = specialize_power(&p, &-log_n_poly(m), n / m as usize);
        sum = &sum + &subst_and_scale(&part, m, cm, n);
    }
    let kernel = &DirSeries::identity(n) - &star_derivative(&dir_log(&a)?);
    Ok(dir_mul(&kernel, &sum))
}
