//! Finite sections of the matrix families acting on series: multiplication
//! matrices `<a,x>`, column matrices `<x|a>`, mixed matrices `<b|a>`,
//! ordinary Riordan arrays `(b,a)` and Riordan-Dirichlet matrices `<b,a>`.
//!
//! Every matrix is stored sparsely over the index square `0..=N`. Kinds built
//! on the divisibility lattice (`<a,x>`, `<b,a>`) never populate row or
//! column 0; the column and Riordan kinds use it for the `m = 0` column.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::arith::{factorial, log_n_poly, Polynomial, Rational, Symbol};
use crate::error::{Error, Result};
use crate::series::{dir_mul, dir_pow_param, ord_mul, specialize_power, DirSeries, OrdSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixKind {
    Mult,
    Column,
    Mixed,
    RiordanOrd,
    Rd { b: DirSeries, a: DirSeries },
    Diagonal,
    Product,
    Inverse,
    Conjugated,
}

impl MatrixKind {
    pub fn name(&self) -> &'static str {
        match self {
            MatrixKind::Mult => "mult",
            MatrixKind::Column => "column",
            MatrixKind::Mixed => "mixed",
            MatrixKind::RiordanOrd => "riordan_ord",
            MatrixKind::Rd { .. } => "rd",
            MatrixKind::Diagonal => "diagonal",
            MatrixKind::Product => "product",
            MatrixKind::Inverse => "inverse",
            MatrixKind::Conjugated => "conjugated",
        }
    }

    /// First row/column index shown by the emitters.
    fn origin(&self) -> usize {
        match self {
            MatrixKind::Column | MatrixKind::Mixed | MatrixKind::RiordanOrd | MatrixKind::Conjugated => 0,
            _ => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirMatrix {
    size: usize,
    kind: MatrixKind,
    entries: BTreeMap<(usize, usize), Polynomial>,
}

/// Equality compares the size and the entries, not the kind tag.
impl PartialEq for DirMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.entries == other.entries
    }
}

impl Eq for DirMatrix {}

impl DirMatrix {
    fn empty(size: usize, kind: MatrixKind) -> Self {
        DirMatrix { size, kind, entries: BTreeMap::new() }
    }

    fn set(&mut self, n: usize, k: usize, v: Polynomial) {
        if !v.is_zero() {
            self.entries.insert((n, k), v);
        }
    }

    /// Identity on indices `1..=N`.
    pub fn identity(size: usize) -> Self {
        Self::diagonal(size, |_| Polynomial::one())
    }

    pub fn diagonal(size: usize, mut f: impl FnMut(u64) -> Polynomial) -> Self {
        let mut m = Self::empty(size, MatrixKind::Diagonal);
        for n in 1..=size {
            m.set(n, n, f(n as u64));
        }
        m
    }

    /// The star-derivative operator `diag(ln n)`.
    pub fn log_diagonal(size: usize) -> Self {
        Self::diagonal(size, log_n_poly)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> &MatrixKind {
        &self.kind
    }

    pub fn origin(&self) -> usize {
        self.kind.origin()
    }

    pub fn entry(&self, n: usize, k: usize) -> Polynomial {
        self.entries.get(&(n, k)).cloned().unwrap_or_default()
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Polynomial)> {
        self.entries.iter()
    }

    pub fn row(&self, n: usize) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.entries.range((n, 0)..=(n, usize::MAX)).map(|(&(_, k), v)| (k, v))
    }

    /// Rows `origin..=N`, each with columns `origin..=N`.
    pub fn dense_rows(&self) -> Vec<Vec<Polynomial>> {
        let o = self.origin();
        (o..=self.size).map(|n| (o..=self.size).map(|k| self.entry(n, k)).collect()).collect()
    }

    /// `sum_k entry(n,k) var^k`.
    pub fn row_polynomial(&self, n: usize, var: Symbol) -> Polynomial {
        let x = Polynomial::symbol(var);
        let mut out = Polynomial::zero();
        for (k, v) in self.row(n) {
            out.add_mul(v, &x.pow(k as u32));
        }
        out
    }

    /// Column `k` read as a Dirichlet series, rows `1..=N`.
    pub fn column_series(&self, k: usize) -> DirSeries {
        DirSeries::from_fn(self.size, |n| self.entry(n as usize, k))
    }

    /// Matrix-vector product on the coefficient vector of `v` (indices `1..=N`).
    pub fn apply(&self, v: &DirSeries) -> DirSeries {
        let n = self.size.min(v.trunc());
        DirSeries::from_fn(n, |r| {
            let mut acc = Polynomial::zero();
            for (k, e) in self.row(r as usize) {
                if (1..=n).contains(&k) {
                    acc.add_mul(e, v.coeff(k as u64));
                }
            }
            acc
        })
    }

    /// Plain matrix product over the shared index range.
    pub fn mul(&self, other: &DirMatrix) -> DirMatrix {
        assert_eq!(self.size, other.size, "matrix sizes differ");
        let mut acc: BTreeMap<(usize, usize), Polynomial> = BTreeMap::new();
        for (&(n, j), l) in &self.entries {
            for (k, r) in other.row(j) {
                acc.entry((n, k)).or_default().add_mul(l, r);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        DirMatrix { size: self.size, kind: MatrixKind::Product, entries: acc }
    }

    pub fn to_json(&self) -> String {
        let entries: serde_json::Map<String, serde_json::Value> =
            self.entries.iter().map(|(&(n, k), v)| (format!("{n},{k}"), v.to_string().into())).collect();
        let doc = serde_json::json!({
            "kind": self.kind.name(),
            "size": self.size,
            "origin": self.origin(),
            "entries": entries,
        });
        serde_json::to_string_pretty(&doc).expect("matrix serialization cannot fail")
    }
}

impl fmt::Display for DirMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.dense_rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", cells.join("\t"))?;
        }
        Ok(())
    }
}

fn require_trunc(s: &DirSeries, n: usize) -> Result<()> {
    if s.trunc() < n {
        return Err(Error::TruncationTooSmall { have: s.trunc(), need: n });
    }
    Ok(())
}

/// `<a,x>`: column `k` is `a(x^k)`.
pub fn build_mult(a: &DirSeries, size: usize) -> Result<DirMatrix> {
    require_trunc(a, size)?;
    let mut m = DirMatrix::empty(size, MatrixKind::Mult);
    for k in 1..=size {
        for j in 1..=size / k {
            m.set(j * k, k, a.coeff(j as u64).clone());
        }
    }
    Ok(m)
}

/// Columns `m = 0, 1, ...` of `<b|a>`: `b o a^(m)`, with `a^(0) = x`.
fn power_columns(b: &DirSeries, a: &DirSeries, size: usize, kind: MatrixKind) -> Result<DirMatrix> {
    if !a.coeff(1).is_zero() {
        return Err(Error::LeadingCoefficientNotZero);
    }
    let a = a.truncate(size);
    let mut m = DirMatrix::empty(size, kind);
    let mut pow = b.truncate(size);
    let mut col = 0;
    while col <= size && !pow.is_zero() {
        for n in 1..=size {
            m.set(n, col, pow.coeff(n as u64).clone());
        }
        pow = dir_mul(&pow, &a);
        col += 1;
    }
    Ok(m)
}

/// `<x|a>` for `a_1 = 0`: column `m` is `a^(m)`, column 0 is `x`.
pub fn build_column(a: &DirSeries, size: usize) -> Result<DirMatrix> {
    require_trunc(a, size)?;
    power_columns(&DirSeries::identity(size), a, size, MatrixKind::Column)
}

/// `<b|a> = <b,x><x|a>`: column `m` is `b o a^(m)`.
pub fn build_mixed(b: &DirSeries, a: &DirSeries, size: usize) -> Result<DirMatrix> {
    require_trunc(a, size)?;
    require_trunc(b, size)?;
    power_columns(b, a, size, MatrixKind::Mixed)
}

/// Ordinary Riordan array `(b,a)` on indices `0..=N`: entry `[x^n] b a^k`.
pub fn build_riordan_ord(b: &OrdSeries, a: &OrdSeries, size: usize) -> Result<DirMatrix> {
    if !a.coeff(0).is_zero() {
        return Err(Error::ConstantTermNotZero);
    }
    if b.trunc() < size || a.trunc() < size {
        return Err(Error::TruncationTooSmall { have: b.trunc().min(a.trunc()), need: size });
    }
    let a = a.truncate(size);
    let mut m = DirMatrix::empty(size, MatrixKind::RiordanOrd);
    let mut col = b.truncate(size);
    for k in 0..=size {
        for n in 0..=size {
            m.set(n, k, col.coeff(n).clone());
        }
        col = ord_mul(&col, &a);
    }
    Ok(m)
}

fn check_rd_pair(b: &DirSeries, a: &DirSeries) -> Result<()> {
    if !a.coeff(1).is_one() {
        return Err(Error::LeadingCoefficientNotOne);
    }
    match b.coeff(1).as_constant() {
        Some(c) if c != Rational::from_integer(0.into()) => Ok(()),
        _ => Err(Error::NonUnitLeadingCoefficient),
    }
}

/// `<b,a>`: column `k` is `x^k o b o a^(ln k)`.
pub fn build_rd(b: &DirSeries, a: &DirSeries, size: usize) -> Result<DirMatrix> {
    require_trunc(a, size)?;
    require_trunc(b, size)?;
    check_rd_pair(b, a)?;
    let b = b.truncate(size);
    let a = a.truncate(size);
    let p = dir_pow_param(&a)?;
    let columns: Vec<(usize, DirSeries)> = (1..=size)
        .into_par_iter()
        .map(|k| {
            let t = size / k;
            let ak = specialize_power(&p, &log_n_poly(k as u64), t);
            (k, dir_mul(&b.truncate(t), &ak))
        })
        .collect();
    let mut m = DirMatrix::empty(size, MatrixKind::Rd { b, a });
    for (k, col) in columns {
        for (j, v) in col.coeffs().iter().enumerate() {
            m.set((j + 1) * k, k, v.clone());
        }
    }
    Ok(m)
}

/// `<x,a> c = c_d o (a)`: coefficient `n` is `sum_{d|n} c_d [x^(n/d)] a^(ln d)`.
pub fn rd_action(a: &DirSeries, c: &DirSeries) -> Result<DirSeries> {
    if !a.coeff(1).is_one() {
        return Err(Error::LeadingCoefficientNotOne);
    }
    let n = a.trunc().min(c.trunc());
    let p = dir_pow_param(&a.truncate(n))?;
    let mut out = vec![Polynomial::zero(); n];
    for d in 1..=n {
        let cd = c.coeff(d as u64);
        if cd.is_zero() {
            continue;
        }
        let ad = specialize_power(&p, &log_n_poly(d as u64), n / d);
        for (j, v) in ad.coeffs().iter().enumerate() {
            out[d * (j + 1) - 1].add_mul(cd, v);
        }
    }
    Ok(DirSeries::from_coeffs(out))
}

/// The parameters `(b', a')` of `<b,a><f,g> = <b o f_d o (a), a o g_d o (a)>`.
pub fn rd_compose_params(
    (b, a): (&DirSeries, &DirSeries),
    (f, g): (&DirSeries, &DirSeries),
) -> Result<(DirSeries, DirSeries)> {
    let b2 = dir_mul(b, &rd_action(a, f)?);
    let a2 = dir_mul(a, &rd_action(a, g)?);
    Ok((b2, a2))
}

/// Product of two Riordan-Dirichlet matrices through the group law. Debug
/// builds also form the plain product and assert agreement.
pub fn rd_multiply(m1: &DirMatrix, m2: &DirMatrix) -> Result<DirMatrix> {
    let (MatrixKind::Rd { b, a }, MatrixKind::Rd { b: f, a: g }) = (&m1.kind, &m2.kind) else {
        return Err(Error::KindMismatch(format!(
            "expected two rd matrices, got {} and {}",
            m1.kind.name(),
            m2.kind.name()
        )));
    };
    if m1.size != m2.size {
        return Err(Error::KindMismatch(format!("sizes {} and {} differ", m1.size, m2.size)));
    }
    let (b2, a2) = rd_compose_params((b, a), (f, g))?;
    let out = build_rd(&b2, &a2, m1.size)?;
    debug_assert!(out == m1.mul(m2), "group law disagrees with the plain product");
    Ok(out)
}

/// Exact inverse of a matrix supported on `{(n,k) : k | n, 1 <= k <= n <= N}`
/// with unit diagonal entries, solved along the divisibility order.
pub fn rd_inverse(m: &DirMatrix) -> Result<DirMatrix> {
    if let Some((&(n, k), _)) = m.entries.iter().find(|(&(n, k), _)| k == 0 || n == 0 || n % k != 0) {
        return Err(Error::KindMismatch(format!("entry ({n},{k}) lies off the divisibility lattice")));
    }
    let size = m.size;
    let mut inv_diag = Vec::with_capacity(size + 1);
    inv_diag.push(Rational::one());
    for n in 1..=size {
        match m.entry(n, n).as_constant() {
            Some(c) if c != Rational::from_integer(0.into()) => inv_diag.push(c.recip()),
            _ => return Err(Error::SingularDiagonal(n)),
        }
    }
    let mut out = DirMatrix::empty(size, MatrixKind::Inverse);
    for k in 1..=size {
        out.set(k, k, Polynomial::constant(inv_diag[k].clone()));
        for n in (2 * k..=size).step_by(k) {
            // X(n,k) = -(1/M(n,n)) sum_{k | j | n, j < n} M(n,j) X(j,k)
            let mut acc = Polynomial::zero();
            for (j, mnj) in m.row(n) {
                if j < n && j % k == 0 {
                    if let Some(x) = out.entries.get(&(j, k)) {
                        acc.add_mul(mnj, x);
                    }
                }
            }
            out.set(n, k, (-acc).scale(&inv_diag[n]));
        }
    }
    Ok(out)
}

/// `|e^x|^(-1) M |e^x|`: entry `(n,k)` becomes `n! M(n,k) / k!`.
pub fn exp_conjugate(m: &DirMatrix) -> DirMatrix {
    let mut out = DirMatrix::empty(m.size, MatrixKind::Conjugated);
    for (&(n, k), v) in &m.entries {
        out.set(n, k, v.scale(&Rational::new(factorial(n as u64), factorial(k as u64))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_dir;
    use crate::series::dir_inverse;

    fn sym(k: u64) -> Polynomial {
        Polynomial::symbol(Symbol::Coef(k))
    }

    fn generic(n: usize) -> DirSeries {
        DirSeries::from_fn(n, sym)
    }

    #[test]
    fn mult_matrix_layout() {
        let m = build_mult(&generic(12), 12).unwrap();
        assert_eq!(m.entry(6, 3), sym(2));
        assert_eq!(m.entry(6, 1), sym(6));
        assert_eq!(m.entry(6, 6), sym(1));
        assert!(m.entry(5, 2).is_zero());
        assert_eq!(build_mult(&DirSeries::identity(9), 9).unwrap(), DirMatrix::identity(9));
        assert!(matches!(build_mult(&generic(4), 8), Err(Error::TruncationTooSmall { .. })));
    }

    #[test]
    fn mult_matrices_commute() {
        let a = build_mult(&random_dir(24, 1, false), 24).unwrap();
        let b = build_mult(&random_dir(24, 2, false), 24).unwrap();
        assert_eq!(a.mul(&b), b.mul(&a));
    }

    #[test]
    fn rd_identity_and_first_column() {
        assert_eq!(build_rd(&DirSeries::identity(16), &DirSeries::identity(16), 16).unwrap(), DirMatrix::identity(16));
        let a = random_dir(16, 3, true);
        let b = random_dir(16, 4, true);
        let m = build_rd(&b, &a, 16).unwrap();
        assert_eq!(m.column_series(1), b);
        let x = build_rd(&DirSeries::identity(16), &a, 16).unwrap();
        for n in 1..=16 {
            assert!(x.entry(n, n).is_one());
        }
    }

    #[test]
    fn rd_action_is_matrix_vector_product() {
        let a = random_dir(20, 5, true);
        let c = random_dir(20, 6, false);
        let m = build_rd(&DirSeries::identity(20), &a, 20).unwrap();
        assert_eq!(rd_action(&a, &c).unwrap(), m.apply(&c));
        assert_eq!(rd_action(&a, &DirSeries::identity(20)).unwrap(), DirSeries::identity(20));
    }

    #[test]
    fn group_law_matches_plain_product() {
        let n = 16;
        let (b, a, f, g) =
            (random_dir(n, 7, true), random_dir(n, 8, true), random_dir(n, 9, true), random_dir(n, 10, true));
        let m1 = build_rd(&b, &a, n).unwrap();
        let m2 = build_rd(&f, &g, n).unwrap();
        assert_eq!(rd_multiply(&m1, &m2).unwrap(), m1.mul(&m2));
        assert!(rd_multiply(&m1, &DirMatrix::identity(n)).is_err());
    }

    #[test]
    fn inverse_is_two_sided() {
        let m = build_rd(&random_dir(16, 11, true), &random_dir(16, 12, true), 16).unwrap();
        let inv = rd_inverse(&m).unwrap();
        assert_eq!(m.mul(&inv), DirMatrix::identity(16));
        assert_eq!(inv.mul(&m), DirMatrix::identity(16));
        assert_eq!(rd_inverse(&DirMatrix::identity(5)).unwrap(), DirMatrix::identity(5));
        let mult = build_mult(&random_dir(16, 13, true), 16).unwrap();
        let expect = build_mult(&dir_inverse(&random_dir(16, 13, true)).unwrap(), 16).unwrap();
        assert_eq!(rd_inverse(&mult).unwrap(), expect);
        assert_eq!(
            rd_inverse(&DirMatrix::diagonal(3, |n| Polynomial::int(n as i64 - 2))),
            Err(Error::SingularDiagonal(2))
        );
    }

    #[test]
    fn riordan_identity() {
        let m = build_riordan_ord(&OrdSeries::one(8), &OrdSeries::x(8), 8).unwrap();
        for n in 0..=8 {
            for k in 0..=8 {
                assert_eq!(m.entry(n, k).is_one(), n == k);
            }
        }
    }

    #[test]
    fn conjugation_rescales() {
        let m = DirMatrix::identity(6);
        assert_eq!(exp_conjugate(&m), m);
        let col = build_column(&(&DirSeries::monomial(2, 8) + &DirSeries::monomial(4, 8)), 8).unwrap();
        let c = exp_conjugate(&col);
        assert_eq!(c.entry(8, 2), Polynomial::int(2 * 40320 / 2));
        assert_eq!(c.row_polynomial(1, Symbol::Phi), Polynomial::one());
    }

    #[test]
    fn json_entries() {
        let text = build_mult(&generic(4), 4).unwrap().to_json();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["entries"]["4,2"], "a2");
        assert_eq!(v["kind"], "mult");
    }
}
