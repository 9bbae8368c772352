//! Suite bodies. Every task recomputes its own inputs so tasks stay
//! independent and can run on any worker.

use std::collections::HashMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{golden, oracle, task, IdentityCheck, Task};
use crate::arith::{
    binom_poly, binomial, factorial, int, log_n_poly, rat, rising_poly, Monomial, Polynomial, Rational, Symbol,
};
use crate::comb::{bell_b, bell_btilde, binom_f, divisors, f_of, factorize, ordered_factorizations, s_of};
use crate::error::Result;
use crate::matrix::{
    build_column, build_mixed, build_mult, build_rd, build_riordan_ord, exp_conjugate, rd_action, rd_compose_params,
    rd_inverse, DirMatrix,
};
use crate::random::{random_dir, random_ord};
use crate::series::{
    dir_apply_series, dir_exp_param, dir_inverse, dir_log, dir_mul, dir_mul_coeff, dir_pow_int, dir_pow_param,
    dir_subst_xk, ord_log, ord_mul, perfect_power_embed, specialize_power, star_derivative, twist_int, DirSeries,
    OrdSeries,
};
use crate::transforms::{
    eps, eps_param, expand_over_basis, lagrange_dir, lagrange_dir_via_transform, lift_theorem1, reconstruct_from_basis,
    zeta, AbelTables, BetaMode, UFamilyTables,
};

const MATRIX_CAP: usize = 24;
const MIXED_CAP: usize = 16;
const SCAFFOLD_CAP: usize = 16;
const CHAIN_CAP: usize = 32;
const PRODUCT_CAP: usize = 48;
const UFAMILY_CAP: usize = 60;

fn sym(s: Symbol) -> Polynomial {
    Polynomial::symbol(s)
}

fn phi() -> Polynomial {
    sym(Symbol::Phi)
}

fn beta() -> Polynomial {
    sym(Symbol::Beta)
}

fn c(r: i64) -> Polynomial {
    Polynomial::int(r)
}

fn crat(r: Rational) -> Polynomial {
    Polynomial::constant(r)
}

/// Compare with a sub-case tag in front of the counterexample.
fn check(id: &str, tag: &str, n: u64, lhs: &Polynomial, rhs: &Polynomial) -> IdentityCheck {
    let mut out = IdentityCheck::compare(id, n, lhs, rhs);
    if let (false, Some(detail)) = (tag.is_empty(), out.counterexample.as_mut()) {
        *detail = format!("{tag}: {detail}");
    }
    out
}

fn series_eq(id: &str, tag: &str, lhs: &DirSeries, rhs: &DirSeries) -> Vec<IdentityCheck> {
    let n = lhs.trunc().min(rhs.trunc()) as u64;
    (1..=n).map(|k| check(id, tag, k, lhs.coeff(k), rhs.coeff(k))).collect()
}

fn series_eq_fn(id: &str, tag: &str, lhs: &DirSeries, rhs: impl Fn(u64) -> Polynomial) -> Vec<IdentityCheck> {
    (1..=lhs.trunc() as u64).map(|k| check(id, tag, k, lhs.coeff(k), &rhs(k))).collect()
}

/// Row-by-row comparison of two entry functions on `0..=size`.
fn rows_eq_fn(
    id: &str,
    tag: &str,
    size: usize,
    lhs: impl Fn(usize, usize) -> Polynomial,
    rhs: impl Fn(usize, usize) -> Polynomial,
) -> Vec<IdentityCheck> {
    (0..=size)
        .map(|n| {
            let diff = (0..=size).find_map(|k| {
                let (l, r) = (lhs(n, k), rhs(n, k));
                (l != r).then(|| format!("col {k}: lhs {l} rhs {r}"))
            });
            let holds = diff.is_none();
            IdentityCheck::flag(id, n as u64, holds, || {
                let d = diff.unwrap_or_default();
                if tag.is_empty() {
                    d
                } else {
                    format!("{tag}: {d}")
                }
            })
        })
        .collect()
}

fn rows_eq(id: &str, tag: &str, lhs: &DirMatrix, rhs: &DirMatrix) -> Vec<IdentityCheck> {
    rows_eq_fn(id, tag, lhs.size().max(rhs.size()), |n, k| lhs.entry(n, k), |n, k| rhs.entry(n, k))
}

fn at(p: &DirSeries, v: &Polynomial) -> DirSeries {
    specialize_power(p, v, p.trunc())
}

fn f_rat(n: u64) -> Rational {
    Rational::from_integer(f_of(n))
}

/// Random series with `a_1 = 0`.
fn random_tail(trunc: usize, seed: u64) -> DirSeries {
    random_dir(trunc, seed, true).map_indexed(|n, v| if n == 1 { Polynomial::zero() } else { v.clone() })
}

/// Random series with `a_1 = 2`, invertible but not normalized.
fn random_scaled(trunc: usize, seed: u64) -> DirSeries {
    random_dir(trunc, seed, true).map_indexed(|n, v| if n == 1 { c(2) } else { v.clone() })
}

fn without_constant(a: &OrdSeries) -> OrdSeries {
    OrdSeries::from_fn(a.trunc(), |k| if k == 0 { Polynomial::zero() } else { a.coeff(k as usize).clone() })
}

fn ladder_depth(n: usize) -> usize {
    n.max(2).ilog2() as usize
}

pub(super) fn pow(bound: usize) -> Vec<Task> {
    let n = bound;
    vec![
        task("pow-group-law", move || {
            let mut out = Vec::new();
            for seed in 0..5 {
                let p = dir_pow_param(&random_dir(n, seed, true))?;
                let (pa, pb, pab) = (at(&p, &phi()), at(&p, &beta()), at(&p, &(&phi() + &beta())));
                let tag = format!("seed {seed}");
                for k in 1..=n as u64 {
                    out.push(check("pow-group-law", &tag, k, &dir_mul_coeff(&pa, &pb, k), pab.coeff(k)));
                }
            }
            Ok(out)
        }),
        task("pow-integer", move || {
            let a = random_dir(n, 10, true);
            let p = dir_pow_param(&a)?;
            let inv = dir_inverse(&a)?;
            let mut out = series_eq("pow-integer", "psi=3", &at(&p, &c(3)), &dir_pow_int(&a, 3)?);
            out.extend(series_eq("pow-integer", "psi=-1", &at(&p, &c(-1)), &inv));
            out.extend(series_eq("pow-integer", "psi=-2", &at(&p, &c(-2)), &dir_pow_int(&inv, 2)?));
            out.extend(series_eq("pow-integer", "psi=0", &at(&p, &c(0)), &DirSeries::identity(n)));
            out.extend(series_eq("pow-integer", "psi=1", &at(&p, &c(1)), &a));
            Ok(out)
        }),
        task("pow-psi-divisible", move || {
            let p = dir_pow_param(&random_dir(n, 11, true))?;
            Ok((2..=n as u64)
                .map(|k| {
                    let holds = p.coeff(k).terms().all(|(m, _)| m.exponent(Symbol::Psi) > 0);
                    IdentityCheck::flag("pow-psi-divisible", k, holds, || format!("{} has a psi-free term", p.coeff(k)))
                })
                .collect())
        }),
        task("pow-inverse", move || {
            let mut out = Vec::new();
            for seed in 20..23 {
                let a = random_scaled(n, seed);
                let tag = format!("seed {seed}");
                out.extend(series_eq("pow-inverse", &tag, &dir_mul(&a, &dir_inverse(&a)?), &DirSeries::identity(n)));
            }
            Ok(out)
        }),
        task("pow-commutative", move || {
            let mut out = Vec::new();
            for seed in 0..3 {
                let (a, b, d) =
                    (random_dir(n, 30 + seed, false), random_dir(n, 40 + seed, false), random_dir(n, 50 + seed, false));
                let tag = format!("seed {seed}");
                out.extend(series_eq("pow-commutative", &tag, &dir_mul(&a, &b), &dir_mul(&b, &a)));
                let assoc = format!("{tag} associativity");
                out.extend(series_eq(
                    "pow-commutative",
                    &assoc,
                    &dir_mul(&dir_mul(&a, &b), &d),
                    &dir_mul(&a, &dir_mul(&b, &d)),
                ));
            }
            Ok(out)
        }),
        task("pow-iterated", move || {
            let n = n.min(CHAIN_CAP);
            let p = dir_pow_param(&random_dir(n, 12, true))?;
            let mut out = Vec::new();
            for v in [2, 3] {
                let inner = dir_pow_param(&at(&p, &c(v)))?;
                let lhs = at(&inner, &beta());
                let rhs = at(&p, &beta().scale(&int(v)));
                out.extend(series_eq("pow-iterated", &format!("phi={v}"), &lhs, &rhs));
            }
            Ok(out)
        }),
        task("pow-product", move || {
            let n = n.min(PRODUCT_CAP);
            let (a, b) = (random_dir(n, 13, true), random_dir(n, 14, true));
            let lhs = at(&dir_pow_param(&dir_mul(&a, &b))?, &phi());
            let rhs = dir_mul(&at(&dir_pow_param(&a)?, &phi()), &at(&dir_pow_param(&b)?, &phi()));
            Ok(series_eq("pow-product", "", &lhs, &rhs))
        }),
        task("pow-twist", move || {
            let (a, b) = (random_dir(n, 15, false), random_dir(n, 16, false));
            let mut out = Vec::new();
            for k in [-1, 2] {
                let lhs = twist_int(&dir_mul(&a, &b), k);
                let rhs = dir_mul(&twist_int(&a, k), &twist_int(&b, k));
                out.extend(series_eq("pow-twist", &format!("k={k}"), &lhs, &rhs));
            }
            Ok(out)
        }),
        task("pow-embed", move || {
            let mut out = Vec::new();
            for m in [2u64, 3] {
                let t = ladder_depth(n) + 1;
                let (a, b) = (random_ord(t, 17, false), random_ord(t, 18, false));
                let lhs = perfect_power_embed(&ord_mul(&a, &b), m, n)?;
                let rhs = dir_mul(&perfect_power_embed(&a, m, n)?, &perfect_power_embed(&b, m, n)?);
                out.extend(series_eq("pow-embed", &format!("m={m}"), &lhs, &rhs));
            }
            Ok(out)
        }),
        task("pow-subst", move || {
            let a = random_dir(n, 19, false);
            let mut out = Vec::new();
            for k in [2u64, 3, 5] {
                let rhs = dir_mul(&DirSeries::monomial(k as usize, n), &a);
                out.extend(series_eq("pow-subst", &format!("k={k}"), &dir_subst_xk(&a, k), &rhs));
            }
            Ok(out)
        }),
    ]
}

pub(super) fn log(bound: usize) -> Vec<Task> {
    let n = bound;
    vec![
        task("log-homomorphism", move || {
            let mut out = Vec::new();
            for seed in 0..3 {
                let (a, b) = (random_dir(n, 60 + seed, true), random_dir(n, 70 + seed, true));
                let rhs = &dir_log(&a)? + &dir_log(&b)?;
                out.extend(series_eq("log-homomorphism", &format!("seed {seed}"), &dir_log(&dir_mul(&a, &b))?, &rhs));
            }
            Ok(out)
        }),
        task("log-exp", move || {
            let mut out = Vec::new();
            for seed in 0..3 {
                let a = random_dir(n, 80 + seed, true);
                out.extend(series_eq(
                    "log-exp",
                    &format!("seed {seed}"),
                    &dir_exp_param(&dir_log(&a)?)?,
                    &dir_pow_param(&a)?,
                ));
            }
            Ok(out)
        }),
        task("log-power", move || {
            let a = random_dir(n, 83, true);
            let lhs = dir_log(&at(&dir_pow_param(&a)?, &phi()))?;
            Ok(series_eq("log-power", "", &lhs, &dir_log(&a)?.scale(&phi())))
        }),
        task("log-zeta", move || {
            let l = dir_log(&zeta(n))?;
            Ok(series_eq_fn("log-zeta", "", &l, |k| match oracle::prime_power(k) {
                Some((_, m)) => crat(rat(1, m as i64)),
                None => Polynomial::zero(),
            }))
        }),
        task("log-eps", move || {
            let l = dir_log(&eps(n))?;
            Ok(series_eq_fn("log-eps", "", &l, |k| c(oracle::is_prime_trial(k) as i64)))
        }),
        task("log-leibniz", move || {
            let mut out = Vec::new();
            for seed in 0..3 {
                let (a, b) = (random_dir(n, 90 + seed, false), random_dir(n, 95 + seed, false));
                let rhs = &dir_mul(&star_derivative(&a), &b) + &dir_mul(&a, &star_derivative(&b));
                out.extend(series_eq("log-leibniz", &format!("seed {seed}"), &star_derivative(&dir_mul(&a, &b)), &rhs));
            }
            Ok(out)
        }),
        task("log-chain", move || {
            let n = n.min(CHAIN_CAP);
            let a = random_dir(n, 84, true);
            let p = dir_pow_param(&a)?;
            let lhs = star_derivative(&at(&p, &phi()));
            let rhs = dir_mul(&at(&p, &(&phi() - &c(1))), &star_derivative(&a)).scale(&phi());
            Ok(series_eq("log-chain", "", &lhs, &rhs))
        }),
        task("log-star", move || {
            let n = n.min(PRODUCT_CAP);
            let a = random_dir(n, 85, true);
            let rhs = dir_mul(&star_derivative(&a), &dir_inverse(&a)?);
            Ok(series_eq("log-star", "", &star_derivative(&dir_log(&a)?), &rhs))
        }),
        task("log-btilde", move || {
            let n = n.min(CHAIN_CAP);
            let a = DirSeries::from_fn(n, |k| if k == 1 { Polynomial::one() } else { sym(Symbol::Coef(k)) });
            let l = dir_log(&a)?;
            Ok(series_eq_fn("log-btilde", "", &l, |k| {
                let mut acc = Polynomial::zero();
                for m in 1..=s_of(k) {
                    let sign = if m % 2 == 1 { 1 } else { -1 };
                    acc += &bell_btilde(k, m, |j| sym(Symbol::Coef(j))).scale(&rat(sign, m as i64));
                }
                acc
            }))
        }),
        task("log-srow", move || {
            let n = n.min(MATRIX_CAP);
            let a = random_dir(n, 86, true);
            let b = dir_log(&a)?;
            let column = build_column(&b, n)?;
            let rows = exp_conjugate(&column);
            let p = at(&dir_pow_param(&a)?, &phi());
            let mut out = Vec::new();
            for k in 1..=n as u64 {
                let fact = Rational::from_integer(factorial(k));
                let row = rows.row_polynomial(k as usize, Symbol::Phi);
                out.push(check("log-srow", "row vs power", k, &row, &p.coeff(k).scale(&fact)));
                let mut bell = Polynomial::zero();
                for m in 0..=s_of(k) {
                    let term = bell_btilde(k, m, |j| b.coeff(j).clone());
                    bell += &(&term * &phi().pow(m)).scale(&(&fact / Rational::from_integer(factorial(m as u64))));
                }
                out.push(check("log-srow", "row vs bell", k, &row, &bell));
            }
            Ok(out)
        }),
    ]
}

pub(super) fn thm1(bound: usize) -> Vec<Task> {
    let n = bound;
    let t = ladder_depth(n);
    vec![
        task("thm1-lift-hom", move || {
            let mut out = Vec::new();
            for seed in 0..5 {
                let (a, b) = (random_ord(t, 100 + seed, true), random_ord(t, 110 + seed, true));
                let (la, lb) = (lift_theorem1(&a, n)?, lift_theorem1(&b, n)?);
                let lab = lift_theorem1(&ord_mul(&a, &b), n)?;
                let tag = format!("seed {seed}");
                out.extend(series_eq("thm1-lift-hom", &tag, &dir_mul(&la, &lb), &lab));
                let one = Polynomial::one();
                out.extend(series_eq(
                    "thm1-lift-hom",
                    &format!("{tag} psi=1"),
                    &dir_mul(&at(&la, &one), &at(&lb, &one)),
                    &at(&lab, &one),
                ));
            }
            Ok(out)
        }),
        task("thm1-lift-power", move || {
            let mut out = Vec::new();
            for seed in 0..3 {
                let l = lift_theorem1(&random_ord(t, 120 + seed, true), n)?;
                let tag = format!("seed {seed}");
                out.extend(series_eq("thm1-lift-power", &tag, &dir_pow_param(&at(&l, &Polynomial::one()))?, &l));
            }
            Ok(out)
        }),
        task("thm1-zeta", move || {
            let p = dir_pow_param(&zeta(n))?;
            Ok(series_eq_fn("thm1-zeta", "", &p, |k| {
                factorize(k).factors().iter().fold(Polynomial::one(), |acc, &(_, m)| {
                    (&acc * &rising_poly(Symbol::Psi, m)).scale(&Rational::new(1.into(), factorial(m as u64)))
                })
            }))
        }),
        task("thm1-eps", move || {
            let p = eps_param(n);
            Ok(series_eq_fn("thm1-eps", "", &p, |k| sym(Symbol::Psi).pow(s_of(k)).scale(&f_rat(k).recip())))
        }),
        task("thm1-lift-known", move || {
            let mut out = series_eq(
                "thm1-lift-known",
                "zeta",
                &lift_theorem1(&OrdSeries::geometric(t), n)?,
                &dir_pow_param(&zeta(n))?,
            );
            out.extend(series_eq("thm1-lift-known", "eps", &lift_theorem1(&OrdSeries::exp_x(t), n)?, &eps_param(n)));
            Ok(out)
        }),
        task("thm1-squarefree", move || {
            let onepx = OrdSeries::from_fn(t, |k| c((k <= 1) as i64));
            let l = at(&lift_theorem1(&onepx, n)?, &Polynomial::one());
            let sf = oracle::squarefree(n);
            Ok(series_eq_fn("thm1-squarefree", "", &l, |k| c(sf[k as usize] as i64)))
        }),
        task("thm1-log-support", move || {
            let mut out = Vec::new();
            for seed in 0..3 {
                let a = random_ord(t, 130 + seed, true);
                let l = dir_log(&at(&lift_theorem1(&a, n)?, &Polynomial::one()))?;
                let la = ord_log(&a)?;
                out.extend(series_eq_fn(
                    "thm1-log-support",
                    &format!("seed {seed}"),
                    &l,
                    |k| match oracle::prime_power(k) {
                        Some((_, m)) => la.coeff(m as usize).clone(),
                        None => Polynomial::zero(),
                    },
                ));
            }
            Ok(out)
        }),
        task("thm1-log-eps-powers", move || {
            let l = dir_log(&eps(n))?;
            let mut out = Vec::new();
            let mut pow = l.clone();
            for m in 1..=t as u32 {
                let tag = format!("m={m}");
                out.extend(series_eq_fn("thm1-log-eps-powers", &tag, &pow, |k| {
                    if s_of(k) == m {
                        crat(Rational::new(factorial(m as u64), f_of(k)))
                    } else {
                        Polynomial::zero()
                    }
                }));
                pow = dir_mul(&pow, &l);
            }
            Ok(out)
        }),
        task("thm1-btilde-binomial", move || {
            Ok((1..=n as u64)
                .map(|k| {
                    let mut lhs = Polynomial::zero();
                    for m in 0..=s_of(k) {
                        lhs += &(&binom_poly(Symbol::Phi, m) * &bell_btilde(k, m, |_| Polynomial::one()));
                    }
                    let rhs = factorize(k).factors().iter().fold(Polynomial::one(), |acc, &(_, s)| {
                        (&acc * &rising_poly(Symbol::Phi, s)).scale(&Rational::new(1.into(), factorial(s as u64)))
                    });
                    check("thm1-btilde-binomial", "", k, &lhs, &rhs)
                })
                .collect())
        }),
    ]
}

/// `(x + sign * (log o a)*)`.
fn log_star_kernel(a: &DirSeries, sign: i64) -> Result<DirSeries> {
    Ok(&DirSeries::identity(a.trunc()) + &star_derivative(&dir_log(a)?).scale(&c(sign)))
}

/// Inputs of the inverse-pair construction: `a`, its parametric power and
/// `b = _(1) a^(1)`.
fn scaffold(n: usize) -> Result<(DirSeries, DirSeries, DirSeries)> {
    let a = random_dir(n, 200, true);
    let p = dir_pow_param(&a)?;
    let b = lagrange_dir(&a, BetaMode::Fixed(int(1)))?.at(&Polynomial::one());
    Ok((a, p, b))
}

pub(super) fn thm2(bound: usize) -> Vec<Task> {
    let n = bound;
    let s = n.min(SCAFFOLD_CAP);
    vec![
        task("thm2-transform", move || {
            let mut out = Vec::new();
            for (tag, a) in [("eps", eps(n)), ("zeta", zeta(n)), ("random", random_dir(n, 210, true))] {
                let family = lagrange_dir(&a, BetaMode::Symbolic)?;
                out.extend(series_eq(
                    "thm2-transform",
                    tag,
                    &family.series,
                    &lagrange_dir_via_transform(&a, &BetaMode::Symbolic)?,
                ));
            }
            Ok(out)
        }),
        task("thm2-eps-closed", move || {
            let family = lagrange_dir(&eps(n), BetaMode::Symbolic)?;
            Ok(series_eq_fn("thm2-eps-closed", "", &family.series, |k| {
                if k == 1 {
                    return Polynomial::one();
                }
                let shifted = &phi() + &(&beta() * &log_n_poly(k));
                (&phi() * &shifted.pow(s_of(k) - 1)).scale(&f_rat(k).recip())
            }))
        }),
        task("thm2-pairing", move || {
            let m = n.min(MATRIX_CAP);
            let mut out = Vec::new();
            for (label, a) in [("eps", eps(m)), ("random", random_dir(m, 211, true))] {
                let p = dir_pow_param(&a)?;
                for bv in [1i64, -1, 2] {
                    let fam = lagrange_dir(&a, BetaMode::Fixed(int(bv)))?;
                    let left = build_rd(&DirSeries::identity(m), &at(&p, &c(-bv)), m)?;
                    let right = build_rd(&DirSeries::identity(m), &fam.at(&c(bv)), m)?;
                    let id = DirMatrix::identity(m);
                    let tag = format!("{label} beta={bv}");
                    out.extend(rows_eq("thm2-pairing", &tag, &left.mul(&right), &id));
                    out.extend(rows_eq("thm2-pairing", &format!("{tag} reversed"), &right.mul(&left), &id));
                }
            }
            Ok(out)
        }),
        task("thm2-family-action", move || {
            let m = n.min(CHAIN_CAP);
            let a = random_dir(m, 212, true);
            let p = dir_pow_param(&a)?;
            let mut out = Vec::new();
            for bv in [1i64, 2] {
                let fam = lagrange_dir(&a, BetaMode::Fixed(int(bv)))?;
                let tag = format!("beta={bv}");
                let forward = rd_action(&fam.at(&c(bv)), &at(&p, &phi()))?;
                out.extend(series_eq("thm2-family-action", &tag, &forward, &fam.series));
                let back = rd_action(&at(&p, &c(-bv)), &fam.series)?;
                out.extend(series_eq("thm2-family-action", &format!("{tag} back"), &back, &at(&p, &phi())));
            }
            Ok(out)
        }),
        task("thm2-srow", move || {
            let m = n.min(MATRIX_CAP);
            let a = random_dir(m, 213, true);
            let rows = exp_conjugate(&build_column(&dir_log(&a)?, m)?);
            let fam = lagrange_dir(&a, BetaMode::Symbolic)?;
            Ok((1..=m as u64)
                .map(|k| {
                    let shift = &beta() * &log_n_poly(k);
                    let s_tilde = rows.row_polynomial(k as usize, Symbol::Phi);
                    let family_row = fam.series.coeff(k).scale(&Rational::from_integer(factorial(k)));
                    let lhs = &(&phi() + &shift) * &family_row;
                    let rhs = &phi() * &s_tilde.substitute(Symbol::Phi, &(&phi() + &shift));
                    check("thm2-srow", "", k, &lhs, &rhs)
                })
                .collect())
        }),
        task("thm2-inverse-pair", move || {
            let (a, p, b) = scaffold(s)?;
            let ainv = at(&p, &c(-1));
            let x = DirSeries::identity(s);
            let mut out =
                rows_eq("thm2-inverse-pair", "", &rd_inverse(&build_rd(&x, &ainv, s)?)?, &build_rd(&x, &b, s)?);
            out.extend(series_eq("thm2-inverse-pair", "<x,a^(-1)> b = a", &rd_action(&ainv, &b)?, &a));
            out.extend(series_eq("thm2-inverse-pair", "<x,b> a = b", &rd_action(&b, &a)?, &b));
            Ok(out)
        }),
        task("thm2-matrix-a", move || {
            let (_, p, b) = scaffold(s)?;
            // A(n j, n) = [x^j] a^(ln nj)
            let a_entry = |r: usize, k: usize| {
                if k == 0 || r == 0 || !r.is_multiple_of(k) {
                    return Polynomial::zero();
                }
                p.coeff((r / k) as u64).substitute(Symbol::Psi, &log_n_poly(r as u64))
            };
            let rd = build_rd(&log_star_kernel(&b, 1)?, &b, s)?;
            let mut out = rows_eq_fn("thm2-matrix-a", "rd form", s, a_entry, |r, k| rd.entry(r, k));
            for r in 1..=s {
                let mult = build_mult(&at(&p, &log_n_poly(r as u64)), s)?;
                out.extend(
                    rows_eq_fn("thm2-matrix-a", &format!("mult row {r}"), s, a_entry, |i, k| mult.entry(i, k))
                        .into_iter()
                        .filter(|c| c.n == r as u64),
                );
            }
            Ok(out)
        }),
        task("thm2-matrix-c", move || {
            let (a, p, b) = scaffold(s)?;
            let t = dir_mul(&log_star_kernel(&a, -1)?, &p);
            let c_entry = |r: usize, k: usize| {
                if k == 0 || r == 0 || !r.is_multiple_of(k) {
                    return Polynomial::zero();
                }
                t.coeff((r / k) as u64).substitute(Symbol::Psi, &log_n_poly(r as u64))
            };
            let rd = build_rd(&DirSeries::identity(s), &b, s)?;
            let mut out = rows_eq_fn("thm2-matrix-c", "rd form", s, c_entry, |r, k| rd.entry(r, k));
            for r in 1..=s {
                let mult = build_mult(&at(&t, &log_n_poly(r as u64)), s)?;
                out.extend(
                    rows_eq_fn("thm2-matrix-c", &format!("mult row {r}"), s, c_entry, |i, k| mult.entry(i, k))
                        .into_iter()
                        .filter(|c| c.n == r as u64),
                );
            }
            Ok(out)
        }),
        task("thm2-c-relation", move || {
            let (a, p, _) = scaffold(s)?;
            let t = dir_mul(&log_star_kernel(&a, -1)?, &p);
            let mut out = Vec::new();
            for k in 1..=s as u64 {
                for m in 1..=s as u64 {
                    let lm = log_n_poly(m);
                    let lhs = &lm * &t.coeff(k).substitute(Symbol::Psi, &lm);
                    let rhs = &(&lm - &log_n_poly(k)) * &p.coeff(k).substitute(Symbol::Psi, &lm);
                    out.push(check("thm2-c-relation", &format!("m={m}"), k, &lhs, &rhs));
                }
            }
            Ok(out)
        }),
        task("thm2-star-conjugation", move || {
            let (_, _, b) = scaffold(s)?;
            let d = DirMatrix::log_diagonal(s);
            let lhs = d.mul(&build_rd(&DirSeries::identity(s), &b, s)?);
            let rhs = build_rd(&log_star_kernel(&b, 1)?, &b, s)?.mul(&d);
            Ok(rows_eq("thm2-star-conjugation", "", &lhs, &rhs))
        }),
        task("thm2-star-action", move || {
            let (a, _, b) = scaffold(s)?;
            let lhs = build_rd(&log_star_kernel(&b, 1)?, &b, s)?.apply(&star_derivative(&a));
            Ok(series_eq("thm2-star-action", "", &lhs, &star_derivative(&b)))
        }),
        task("thm2-star-inverse", move || {
            let (a, p, b) = scaffold(s)?;
            let lhs = rd_inverse(&build_rd(&log_star_kernel(&b, 1)?, &b, s)?)?;
            let rhs = build_rd(&log_star_kernel(&a, -1)?, &at(&p, &c(-1)), s)?;
            Ok(rows_eq("thm2-star-inverse", "", &lhs, &rhs))
        }),
        task("thm2-basis", move || {
            let m = n.min(CHAIN_CAP);
            let mut out = Vec::new();
            for seed in 0..5 {
                let (b, a) = (random_dir(m, 220 + seed, false), random_dir(m, 230 + seed, true));
                let coeffs = expand_over_basis(&b, &a)?;
                out.extend(series_eq("thm2-basis", &format!("seed {seed}"), &reconstruct_from_basis(&coeffs, &a)?, &b));
            }
            Ok(out)
        }),
    ]
}

pub(super) fn thm3(bound: usize) -> Vec<Task> {
    let n = bound.min(MATRIX_CAP);
    let q = bound.min(MIXED_CAP);
    vec![
        task("thm3-group-law", move || {
            let mut out = Vec::new();
            for seed in 0..5 {
                let (b, a) = (random_scaled(n, 300 + seed), random_dir(n, 310 + seed, true));
                let (f, g) = (random_dir(n, 320 + seed, true), random_dir(n, 330 + seed, true));
                let raw = build_rd(&b, &a, n)?.mul(&build_rd(&f, &g, n)?);
                let (b2, a2) = rd_compose_params((&b, &a), (&f, &g))?;
                out.extend(rows_eq("thm3-group-law", &format!("seed {seed}"), &build_rd(&b2, &a2, n)?, &raw));
            }
            Ok(out)
        }),
        task("thm3-identity", move || {
            let x = DirSeries::identity(n);
            let e = build_rd(&x, &x, n)?;
            let m = build_rd(&random_scaled(n, 340), &random_dir(n, 341, true), n)?;
            let mut out = rows_eq("thm3-identity", "<x,x> = I", &e, &DirMatrix::identity(n));
            out.extend(rows_eq("thm3-identity", "M I", &m.mul(&e), &m));
            out.extend(rows_eq("thm3-identity", "I M", &e.mul(&m), &m));
            Ok(out)
        }),
        task("thm3-inverse", move || {
            let mut out = Vec::new();
            for seed in 0..3 {
                let m = build_rd(&random_scaled(n, 350 + seed), &random_dir(n, 360 + seed, true), n)?;
                let inv = rd_inverse(&m)?;
                let tag = format!("seed {seed}");
                out.extend(rows_eq("thm3-inverse", &tag, &m.mul(&inv), &DirMatrix::identity(n)));
                out.extend(rows_eq("thm3-inverse", &format!("{tag} left"), &inv.mul(&m), &DirMatrix::identity(n)));
            }
            Ok(out)
        }),
        task("thm3-factor", move || {
            let (b, a) = (random_scaled(n, 370), random_dir(n, 371, true));
            let x = DirSeries::identity(n);
            let mut out = rows_eq(
                "thm3-factor",
                "<b,x><x,a>",
                &build_mult(&b, n)?.mul(&build_rd(&x, &a, n)?),
                &build_rd(&b, &a, n)?,
            );
            let swapped = build_rd(&x, &a, n)?.mul(&build_mult(&b, n)?);
            out.extend(rows_eq("thm3-factor", "<x,a><b,x>", &swapped, &build_rd(&rd_action(&a, &b)?, &a, n)?));
            Ok(out)
        }),
        task("thm3-xx", move || {
            let (a, g) = (random_dir(n, 372, true), random_dir(n, 373, true));
            let x = DirSeries::identity(n);
            let lhs = build_rd(&x, &a, n)?.mul(&build_rd(&x, &g, n)?);
            let rhs = build_rd(&x, &dir_mul(&a, &rd_action(&a, &g)?), n)?;
            Ok(rows_eq("thm3-xx", "", &lhs, &rhs))
        }),
        task("thm3-action", move || {
            let (a, v, w) =
                (random_dir(bound, 374, true), random_dir(bound, 375, false), random_dir(bound, 376, false));
            let mut out = series_eq(
                "thm3-action",
                "matrix",
                &rd_action(&a.truncate(n), &v)?,
                &build_rd(&DirSeries::identity(n), &a, n)?.apply(&v),
            );
            let hom = dir_mul(&rd_action(&a, &v)?, &rd_action(&a, &w)?);
            out.extend(series_eq("thm3-action", "homomorphism", &rd_action(&a, &dir_mul(&v, &w))?, &hom));
            Ok(out)
        }),
        task("thm3-mult", move || {
            let (a, b) = (random_dir(n, 377, false), random_dir(n, 378, false));
            let (ma, mb) = (build_mult(&a, n)?, build_mult(&b, n)?);
            let mut out = rows_eq("thm3-mult", "commute", &ma.mul(&mb), &mb.mul(&ma));
            out.extend(rows_eq("thm3-mult", "product", &ma.mul(&mb), &build_mult(&dir_mul(&a, &b), n)?));
            Ok(out)
        }),
        task("thm3-mixed-riordan", move || {
            let a = random_tail(q, 380);
            let f = random_ord(q, 381, false);
            let lhs = build_column(&a, q)?.mul(&build_riordan_ord(&f, &OrdSeries::x(q), q)?);
            Ok(rows_eq("thm3-mixed-riordan", "", &lhs, &build_mixed(&dir_apply_series(&f, &a)?, &a, q)?))
        }),
        task("thm3-mixed-column", move || {
            let a = random_tail(q, 382);
            let g = without_constant(&random_ord(q, 383, false));
            let lhs = build_column(&a, q)?.mul(&build_riordan_ord(&OrdSeries::one(q), &g, q)?);
            Ok(rows_eq("thm3-mixed-column", "", &lhs, &build_column(&dir_apply_series(&g, &a)?, q)?))
        }),
        task("thm3-mixed-general", move || {
            let (b, a) = (random_dir(q, 384, false), random_tail(q, 385));
            let f = random_ord(q, 386, false);
            let g = without_constant(&random_ord(q, 387, false));
            let lhs = build_mixed(&b, &a, q)?.mul(&build_riordan_ord(&f, &g, q)?);
            let rhs = build_mixed(&dir_mul(&b, &dir_apply_series(&f, &a)?), &dir_apply_series(&g, &a)?, q)?;
            let mut out = rows_eq("thm3-mixed-general", "<b|a>(f,g)", &lhs, &rhs);
            out.extend(rows_eq(
                "thm3-mixed-general",
                "<b,x><x|a>",
                &build_mult(&b, q)?.mul(&build_column(&a, q)?),
                &build_mixed(&b, &a, q)?,
            ));
            Ok(out)
        }),
        task("thm3-mixed-complement", move || {
            let (f, g) = (random_scaled(q, 388), random_dir(q, 389, true));
            let (b, a) = (random_dir(q, 390, false), random_tail(q, 391));
            let lhs = build_rd(&f, &g, q)?.mul(&build_mixed(&b, &a, q)?);
            let rhs = build_mixed(&dir_mul(&f, &rd_action(&g, &b)?), &rd_action(&g, &a)?, q)?;
            Ok(rows_eq("thm3-mixed-complement", "", &lhs, &rhs))
        }),
        task("thm3-star-column", move || {
            // D~ <x|c> = <c*|c> D with D the ordinary derivative
            let cc = random_tail(q, 392);
            let lhs = DirMatrix::log_diagonal(q).mul(&build_column(&cc, q)?);
            let mixed = build_mixed(&star_derivative(&cc), &cc, q)?;
            Ok(rows_eq_fn(
                "thm3-star-column",
                "",
                q,
                |r, k| lhs.entry(r, k),
                |r, k| {
                    if k == 0 {
                        Polynomial::zero()
                    } else {
                        mixed.entry(r, k - 1).scale(&int(k as i64))
                    }
                },
            ))
        }),
    ]
}

pub(super) fn abel(bound: usize) -> Vec<Task> {
    vec![
        task("abel", move || {
            let tables = AbelTables::new(bound)?;
            let mut out: Vec<IdentityCheck> =
                (2..=bound as u64).into_par_iter().flat_map_iter(|n| tables.check(n)).collect();
            let classic: Vec<(u64, u32)> = [2u64, 3, 5, 7].iter().flat_map(|&p| (1..=7).map(move |m| (p, m))).collect();
            out.extend(classic.into_par_iter().flat_map_iter(|(p, m)| tables.check_classic(p, m)).collect::<Vec<_>>());
            Ok(out)
        }),
        task("u-family", move || {
            let t = bound.min(UFAMILY_CAP);
            let d = ladder_depth(t);
            let mut out = Vec::new();
            for (tag, a, bv) in
                [("geometric", OrdSeries::geometric(d), rat(1, 2)), ("exp", OrdSeries::exp_x(d), int(1))]
            {
                let tables = UFamilyTables::new(&a, &bv, t)?;
                let checks: Vec<IdentityCheck> = (2..=t as u64)
                    .into_par_iter()
                    .flat_map_iter(|n| {
                        let mut v = tables.check(n);
                        if let Some((p, m)) = oracle::prime_power(n) {
                            v.extend(tables.check_prime_power(p, m));
                        }
                        v
                    })
                    .collect();
                out.extend(checks.into_iter().map(|mut c| {
                    if let Some(d) = c.counterexample.as_mut() {
                        *d = format!("{tag}: {d}");
                    }
                    c
                }));
            }
            Ok(out)
        }),
    ]
}

pub(super) fn binomf(bound: usize) -> Vec<Task> {
    let n = bound as u64;
    vec![
        task("binomf-sum", move || {
            let mut out = Vec::new();
            for k in 1..=n {
                let mut acc = Rational::from_integer(0.into());
                for d in divisors(k) {
                    acc += binom_f(k, d)?;
                }
                let want = Rational::from_integer(BigInt::from(2).pow(s_of(k)));
                out.push(check("binomf-sum", "", k, &crat(acc), &crat(want)));
            }
            Ok(out)
        }),
        task("binomf-symmetry", move || {
            let mut out = Vec::new();
            for k in 1..=n {
                let ok = divisors(k)
                    .into_iter()
                    .map(|d| Ok(binom_f(k, d)? == binom_f(k, k / d)?))
                    .collect::<Result<Vec<bool>>>()?;
                out.push(IdentityCheck::flag("binomf-symmetry", k, ok.iter().all(|&b| b), || "asymmetric".into()));
            }
            Ok(out)
        }),
        task("binomf-log-sum", move || {
            let mut out = Vec::new();
            for k in 1..=n {
                let mut acc = Polynomial::zero();
                for d in divisors(k) {
                    let sign = if s_of(k / d).is_multiple_of(2) { 1 } else { -1 };
                    acc += &log_n_poly(d).scale(&(binom_f(k, d)? * int(sign)));
                }
                // The sum is ln p at a prime p and vanishes otherwise.
                let want = if oracle::is_prime_trial(k) { log_n_poly(k) } else { Polynomial::zero() };
                out.push(check("binomf-log-sum", "", k, &acc, &want));
            }
            Ok(out)
        }),
    ]
}

fn random_poly(rng: &mut ChaCha8Rng) -> Polynomial {
    let vars = [Symbol::Phi, Symbol::Beta, Symbol::Log(2), Symbol::Coef(3)];
    let mut p = Polynomial::zero();
    for _ in 0..rng.random_range(0..5) {
        let m = Monomial::from_pairs(vars.iter().map(|&v| (v, rng.random_range(0..3u32))));
        p += &Polynomial::term(m, rat(rng.random_range(-5..=5), rng.random_range(1..=4)));
    }
    p
}

pub(super) fn oracle(bound: usize) -> Vec<Task> {
    let n = bound;
    vec![
        task("oracle-mobius", move || {
            let mu = oracle::mobius(n);
            Ok(series_eq_fn("oracle-mobius", "", &dir_inverse(&zeta(n))?, |k| c(mu[k as usize])))
        }),
        task("oracle-zeta-mobius", move || {
            let mu = oracle::mobius(n);
            let mu = DirSeries::from_fn(n, |k| c(mu[k as usize]));
            Ok(series_eq("oracle-zeta-mobius", "", &dir_mul(&zeta(n), &mu), &DirSeries::identity(n)))
        }),
        task("oracle-divisor-count", move || {
            let z = zeta(n);
            Ok(series_eq_fn("oracle-divisor-count", "", &dir_mul(&z, &z), |k| c(oracle::divisor_count(k) as i64)))
        }),
        task("oracle-btilde-count", move || {
            let mut out = Vec::new();
            for k in 1..=n as u64 {
                for m in 0..=s_of(k) {
                    let b = bell_btilde(k, m, |_| Polynomial::one());
                    let brute = c(oracle::ordered_count(k, m) as i64);
                    out.push(check("oracle-btilde-count", &format!("m={m}"), k, &b, &brute));
                    let listed = c(ordered_factorizations(k, m).len() as i64);
                    out.push(check("oracle-btilde-count", &format!("m={m} enumerated"), k, &listed, &brute));
                }
            }
            Ok(out)
        }),
        task("oracle-btilde-power", move || {
            let n = n.min(CHAIN_CAP);
            let tail = DirSeries::from_fn(n, |k| if k == 1 { Polynomial::zero() } else { sym(Symbol::Coef(k)) });
            let mut out = Vec::new();
            let mut pow = tail.clone();
            for m in 1..=ladder_depth(n) as u32 {
                out.extend(series_eq_fn("oracle-btilde-power", &format!("m={m}"), &pow, |k| {
                    bell_btilde(k, m, |j| sym(Symbol::Coef(j)))
                }));
                pow = dir_mul(&pow, &tail);
            }
            Ok(out)
        }),
        task("oracle-bell-cauchy", move || {
            let n = n.min(MATRIX_CAP);
            let a = OrdSeries::from_fn(n, |k| if k == 0 { Polynomial::zero() } else { sym(Symbol::Coef(k)) });
            let mut out = Vec::new();
            let mut pow = OrdSeries::one(n);
            for m in 0..=n as u32 {
                for k in 0..=n as u32 {
                    let b = if k == 0 { c((m == 0) as i64) } else { bell_b(k, m, |j| sym(Symbol::Coef(j as u64))) };
                    out.push(check("oracle-bell-cauchy", &format!("m={m}"), k as u64, &b, pow.coeff(k as usize)));
                }
                pow = ord_mul(&pow, &a);
            }
            Ok(out)
        }),
        task("oracle-golden-column", || {
            let geom2 = DirSeries::from_fn(12, |k| c((k >= 2) as i64));
            let m = build_column(&geom2, 12)?;
            Ok(rows_eq_fn(
                "oracle-golden-column",
                "",
                12,
                |r, k| if k <= 3 { m.entry(r, k) } else { Polynomial::zero() },
                |r, k| {
                    if k <= 3 {
                        c(golden::COLUMN_GEOM2[r][k])
                    } else {
                        Polynomial::zero()
                    }
                },
            ))
        }),
        task("oracle-golden-symbolic", || {
            let a = DirSeries::from_fn(16, |k| if k == 1 { Polynomial::zero() } else { sym(Symbol::Coef(k)) });
            let m = build_column(&a, 16)?;
            let want: Vec<Vec<Polynomial>> = golden::COLUMN_SYMBOLIC
                .iter()
                .map(|row| row.iter().map(|t| t.parse()).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            Ok(rows_eq_fn(
                "oracle-golden-symbolic",
                "",
                16,
                |r, k| if k <= 4 { m.entry(r, k) } else { Polynomial::zero() },
                |r, k| want[r].get(k).cloned().unwrap_or_default(),
            ))
        }),
        task("oracle-golden-riordan", || {
            let a = OrdSeries::from_fn(6, |k| if k == 0 { Polynomial::zero() } else { sym(Symbol::Coef(k)) });
            let m = build_riordan_ord(&OrdSeries::one(6), &a, 6)?;
            let want: Vec<Vec<Polynomial>> = golden::RIORDAN_SYMBOLIC
                .iter()
                .map(|row| row.iter().map(|t| t.parse()).collect::<Result<_>>())
                .collect::<Result<_>>()?;
            Ok(rows_eq_fn(
                "oracle-golden-riordan",
                "",
                6,
                |r, k| if k <= 5 { m.entry(r, k) } else { Polynomial::zero() },
                |r, k| want[r].get(k).cloned().unwrap_or_default(),
            ))
        }),
        task("arith-ring", || {
            let mut rng = ChaCha8Rng::seed_from_u64(500);
            let mut out = Vec::new();
            for i in 1..=32u64 {
                let (p, q, r) = (random_poly(&mut rng), random_poly(&mut rng), random_poly(&mut rng));
                out.push(check("arith-ring", "distributive", i, &(&p * &(&q + &r)), &(&(&p * &q) + &(&p * &r))));
                out.push(check("arith-ring", "associative", i, &(&(&p * &q) * &r), &(&p * &(&q * &r))));
                out.push(check("arith-ring", "commutative", i, &(&p * &q), &(&q * &p)));
                let divided = (&p * &phi()).divide_by_symbol(Symbol::Phi)?;
                out.push(check("arith-ring", "divide", i, &divided, &p));
                let assignment: HashMap<Symbol, Rational> =
                    [Symbol::Phi, Symbol::Beta, Symbol::Log(2), Symbol::Coef(3)]
                        .into_iter()
                        .map(|s| (s, rat(rng.random_range(-6..=6), rng.random_range(1..=5))))
                        .collect();
                let lhs = (&p * &q).eval(&assignment)?;
                let rhs = p.eval(&assignment)? * q.eval(&assignment)?;
                out.push(check("arith-ring", "eval", i, &crat(lhs), &crat(rhs)));
            }
            Ok(out)
        }),
        task("arith-log", move || {
            Ok((1..=n as u64)
                .flat_map(|k| {
                    (1..=100u64).map(move |m| {
                        check("arith-log", &format!("m={m}"), k, &log_n_poly(k * m), &(&log_n_poly(k) + &log_n_poly(m)))
                    })
                })
                .collect())
        }),
        task("arith-binomial", move || {
            let mut out = Vec::new();
            for t in 0..=n as u64 {
                for m in 0..=t.min(12) {
                    let mut asg = HashMap::new();
                    asg.insert(Symbol::Phi, int(t as i64));
                    let v = binom_poly(Symbol::Phi, m as u32).eval(&asg)?;
                    out.push(check(
                        "arith-binomial",
                        &format!("m={m}"),
                        t,
                        &crat(v),
                        &crat(Rational::from_integer(binomial(t, m))),
                    ));
                }
            }
            Ok(out)
        }),
    ]
}
