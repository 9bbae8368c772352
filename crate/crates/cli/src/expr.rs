//! The series expression language.
//!
//! ```text
//! expr  ::= ident | ident "(" args ")" | "\"" path "\""
//! args  ::= arg ("," arg)*
//! arg   ::= expr | ["-"] digits ["/" digits] | "beta" | "'" polynomial "'"
//! ```
//!
//! Whitespace is ignored between tokens. Arity and argument kinds are
//! checked while parsing, so a parsed [`Expr`] only fails at evaluation on
//! kernel preconditions, series-kind mismatches or unreadable files.

use std::fmt;

use dirseries::arith::{rat, Polynomial, Rational, Symbol};
use dirseries::series::{
    dir_apply_series, dir_exp_param, dir_inverse, dir_log, dir_mul, dir_pow_int, dir_pow_param, dir_subst_xk, ord_exp,
    ord_inverse_mul, ord_log, ord_mul, ord_pow_param, series_substitute_symbol, star_derivative, twist_int, AnySeries,
    DirSeries, OrdSeries,
};
use dirseries::transforms::{eps, lagrange_dir, lagrange_ord, lift_theorem1, zeta, BetaMode};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown function `{name}` at byte {offset}")]
    UnknownFunction { name: String, offset: usize },
    #[error("`{name}` at byte {offset} takes {expected} argument(s), got {found}")]
    ArityMismatch { name: String, offset: usize, expected: String, found: usize },
    #[error("argument {position} of `{name}` at byte {offset} must be {expected}")]
    ArgumentKind { name: String, offset: usize, position: usize, expected: &'static str },
    #[error("`{name}` expects {expected}")]
    SeriesKind { name: &'static str, expected: &'static str },
    #[error("cannot read `{path}`: {message}")]
    Literal { path: String, message: String },
    #[error(transparent)]
    Kernel(#[from] dirseries::Error),
}

/// Named constant series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// `sum_{n>=1} x^n`, Dirichlet.
    Zeta,
    /// `sum x^n / f(n)`, Dirichlet.
    Eps,
    /// `x / (1-x)`, the same series as `zeta`.
    Geom,
    /// `x^2 / (1-x)`, Dirichlet.
    Geom2,
    /// The Dirichlet identity `x`.
    X,
    /// `sum_{k>=2} a_k x^k` with indeterminate `a_k`, Dirichlet.
    Gen,
    /// `e^x`, ordinary.
    Expx,
    /// `1 + x`, ordinary.
    Onepx,
    /// `1 / (1-x)`, ordinary.
    Ogeom,
    /// `sum_{k>=1} a_k x^k` with indeterminate `a_k`, ordinary.
    Ogen,
}

const BUILTINS: [(&str, Builtin); 10] = [
    ("zeta", Builtin::Zeta),
    ("eps", Builtin::Eps),
    ("geom", Builtin::Geom),
    ("geom2", Builtin::Geom2),
    ("x", Builtin::X),
    ("gen", Builtin::Gen),
    ("expx", Builtin::Expx),
    ("onepx", Builtin::Onepx),
    ("ogeom", Builtin::Ogeom),
    ("ogen", Builtin::Ogen),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Dmul,
    Dinv,
    DpowInt,
    DpowParam,
    Dlog,
    Dexp,
    Star,
    SubstXk,
    Lift,
    LagrangeDir,
    LagrangeOrd,
    Twist,
    Apply,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Series,
    Int,
    /// A rational or single-quoted polynomial text.
    Value,
    /// A rational or `beta`.
    Beta,
}

struct Signature {
    name: &'static str,
    op: Op,
    required: &'static [Kind],
    optional: &'static [Kind],
}

const OPS: [Signature; 13] = [
    Signature { name: "dmul", op: Op::Dmul, required: &[Kind::Series, Kind::Series], optional: &[] },
    Signature { name: "dinv", op: Op::Dinv, required: &[Kind::Series], optional: &[] },
    Signature { name: "dpow_int", op: Op::DpowInt, required: &[Kind::Series, Kind::Int], optional: &[] },
    Signature { name: "dpow_param", op: Op::DpowParam, required: &[Kind::Series], optional: &[Kind::Value] },
    Signature { name: "dlog", op: Op::Dlog, required: &[Kind::Series], optional: &[] },
    Signature { name: "dexp", op: Op::Dexp, required: &[Kind::Series], optional: &[] },
    Signature { name: "star", op: Op::Star, required: &[Kind::Series], optional: &[] },
    Signature { name: "subst_xk", op: Op::SubstXk, required: &[Kind::Series, Kind::Int], optional: &[] },
    Signature { name: "lift", op: Op::Lift, required: &[Kind::Series], optional: &[] },
    Signature { name: "lagrange_dir", op: Op::LagrangeDir, required: &[Kind::Series, Kind::Beta], optional: &[] },
    Signature { name: "lagrange_ord", op: Op::LagrangeOrd, required: &[Kind::Series, Kind::Beta], optional: &[] },
    Signature { name: "twist", op: Op::Twist, required: &[Kind::Series, Kind::Int], optional: &[] },
    Signature { name: "apply", op: Op::Apply, required: &[Kind::Series, Kind::Series], optional: &[] },
];

fn signature(op: Op) -> &'static Signature {
    OPS.iter().find(|s| s.op == op).expect("every op has a signature")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Series(Expr),
    Number(Rational),
    Poly(Polynomial),
    Beta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Builtin(Builtin),
    /// Path to a series JSON document.
    Literal(String),
    Call(Op, Vec<Arg>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Builtin(b) => {
                let name = BUILTINS.iter().find(|(_, x)| x == b).map(|(n, _)| *n).expect("named builtin");
                f.write_str(name)
            }
            Expr::Literal(path) => write!(f, "\"{path}\""),
            Expr::Call(op, args) => {
                write!(f, "{}(", signature(*op).name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    match a {
                        Arg::Series(e) => write!(f, "{e}")?,
                        Arg::Number(r) if r.is_integer() => write!(f, "{}", r.numer())?,
                        Arg::Number(r) => write!(f, "{}/{}", r.numer(), r.denom())?,
                        Arg::Poly(p) => write!(f, "'{p}'")?,
                        Arg::Beta => f.write_str("beta")?,
                    }
                }
                f.write_str(")")
            }
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn syntax(&self, message: &str) -> ExprError {
        ExprError::Syntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Option<(String, usize)> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_') {
            self.pos += 1;
        }
        (self.pos > start && self.src[start].is_ascii_alphabetic())
            .then(|| (String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(), start))
            .or_else(|| {
                self.pos = start;
                None
            })
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        if self.peek() == Some(b'"') {
            return self.literal();
        }
        let Some((name, offset)) = self.ident() else {
            return Err(self.syntax("expected a series expression"));
        };
        if self.peek() != Some(b'(') {
            return BUILTINS
                .iter()
                .find(|(n, _)| *n == name)
                .map(|(_, b)| Expr::Builtin(*b))
                .ok_or(ExprError::UnknownFunction { name, offset });
        }
        let sig = OPS
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| ExprError::UnknownFunction { name: name.clone(), offset })?;
        self.pos += 1;
        let mut args = Vec::new();
        if self.peek() == Some(b')') {
            self.pos += 1;
        } else {
            loop {
                args.push(self.arg()?);
                match self.peek() {
                    Some(b',') => self.pos += 1,
                    Some(b')') => {
                        self.pos += 1;
                        break;
                    }
                    _ => return Err(self.syntax("expected `,` or `)`")),
                }
            }
        }
        let (lo, hi) = (sig.required.len(), sig.required.len() + sig.optional.len());
        if args.len() < lo || args.len() > hi {
            let expected = if lo == hi { lo.to_string() } else { format!("{lo} to {hi}") };
            return Err(ExprError::ArityMismatch { name, offset, expected, found: args.len() });
        }
        for (i, (arg, kind)) in args.iter().zip(sig.required.iter().chain(sig.optional)).enumerate() {
            let ok = match (kind, arg) {
                (Kind::Series, Arg::Series(_)) => true,
                (Kind::Int, Arg::Number(r)) => r.is_integer() && i64::try_from(r.numer()).is_ok(),
                (Kind::Value, Arg::Number(_) | Arg::Poly(_)) => true,
                (Kind::Beta, Arg::Number(_) | Arg::Beta) => true,
                _ => false,
            };
            if !ok {
                let expected = match kind {
                    Kind::Series => "a series expression",
                    Kind::Int => "an integer",
                    Kind::Value => "a rational or quoted polynomial",
                    Kind::Beta => "a rational or `beta`",
                };
                return Err(ExprError::ArgumentKind { name, offset, position: i + 1, expected });
            }
        }
        Ok(Expr::Call(sig.op, args))
    }

    fn literal(&mut self) -> Result<Expr, ExprError> {
        self.pos += 1;
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|&b| b != b'"') {
            self.pos += 1;
        }
        if self.pos >= self.src.len() {
            return Err(ExprError::Syntax { offset: start - 1, message: "unterminated path literal".into() });
        }
        let path = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        self.pos += 1;
        if path.is_empty() {
            return Err(ExprError::Syntax { offset: start - 1, message: "empty path literal".into() });
        }
        Ok(Expr::Literal(path))
    }

    fn digits(&mut self) -> Option<num_bigint::BigInt> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        (self.pos > start)
            .then(|| std::str::from_utf8(&self.src[start..self.pos]).expect("ascii").parse().expect("digits"))
    }

    fn arg(&mut self) -> Result<Arg, ExprError> {
        match self.peek() {
            Some(b) if b == b'-' || b.is_ascii_digit() => {
                let negative = b == b'-';
                if negative {
                    self.pos += 1;
                    self.skip_ws();
                }
                let numer = self.digits().ok_or_else(|| self.syntax("expected digits"))?;
                let mut value = Rational::from_integer(numer);
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let denom = self.digits().ok_or_else(|| self.syntax("expected a denominator"))?;
                    if denom == 0.into() {
                        return Err(self.syntax("zero denominator"));
                    }
                    value /= Rational::from_integer(denom);
                }
                Ok(Arg::Number(if negative { -value } else { value }))
            }
            Some(b'\'') => {
                let start = self.pos;
                self.pos += 1;
                let body = self.pos;
                while self.src.get(self.pos).is_some_and(|&b| b != b'\'') {
                    self.pos += 1;
                }
                if self.pos >= self.src.len() {
                    return Err(ExprError::Syntax { offset: start, message: "unterminated polynomial".into() });
                }
                let text = String::from_utf8_lossy(&self.src[body..self.pos]).into_owned();
                self.pos += 1;
                text.parse::<Polynomial>()
                    .map(Arg::Poly)
                    .map_err(|e| ExprError::Syntax { offset: body, message: e.to_string() })
            }
            _ => {
                let save = self.pos;
                if let Some((name, _)) = self.ident() {
                    if name == "beta" && self.peek() != Some(b'(') {
                        return Ok(Arg::Beta);
                    }
                }
                self.pos = save;
                Ok(Arg::Series(self.expr()?))
            }
        }
    }
}

fn builtin(b: Builtin, n: usize) -> AnySeries {
    let a = |k: u64| Polynomial::symbol(Symbol::Coef(k));
    match b {
        Builtin::Zeta | Builtin::Geom => AnySeries::Dir(zeta(n)),
        Builtin::Eps => AnySeries::Dir(eps(n)),
        Builtin::Geom2 => AnySeries::Dir(DirSeries::from_fn(n, |k| Polynomial::int((k >= 2) as i64))),
        Builtin::X => AnySeries::Dir(DirSeries::identity(n)),
        Builtin::Gen => AnySeries::Dir(DirSeries::from_fn(n, |k| if k == 1 { Polynomial::zero() } else { a(k) })),
        Builtin::Expx => AnySeries::Ord(OrdSeries::exp_x(n)),
        Builtin::Onepx => AnySeries::Ord(OrdSeries::from_fn(n, |k| Polynomial::int((k <= 1) as i64))),
        Builtin::Ogeom => AnySeries::Ord(OrdSeries::geometric(n)),
        Builtin::Ogen => AnySeries::Ord(OrdSeries::from_fn(n, |k| if k == 0 { Polynomial::zero() } else { a(k) })),
    }
}

fn dir(name: &'static str, s: AnySeries) -> Result<DirSeries, ExprError> {
    match s {
        AnySeries::Dir(d) => Ok(d),
        AnySeries::Ord(_) => Err(ExprError::SeriesKind { name, expected: "a Dirichlet series" }),
    }
}

fn ord(name: &'static str, s: AnySeries) -> Result<OrdSeries, ExprError> {
    match s {
        AnySeries::Ord(o) => Ok(o),
        AnySeries::Dir(_) => Err(ExprError::SeriesKind { name, expected: "an ordinary series" }),
    }
}

fn beta_mode(arg: &Arg) -> BetaMode {
    match arg {
        Arg::Number(r) => BetaMode::Fixed(r.clone()),
        _ => BetaMode::Symbolic,
    }
}

fn int_arg(arg: &Arg) -> i64 {
    match arg {
        Arg::Number(r) => i64::try_from(r.numer()).expect("checked while parsing"),
        _ => unreachable!("checked while parsing"),
    }
}

/// Evaluates at truncation `n`. Literal series keep their own truncation;
/// binary operations truncate to the shorter operand.
pub fn eval(e: &Expr, n: usize) -> Result<AnySeries, ExprError> {
    let series = |i: usize, args: &[Arg]| match &args[i] {
        Arg::Series(e) => eval(e, n),
        _ => unreachable!("checked while parsing"),
    };
    Ok(match e {
        Expr::Builtin(b) => builtin(*b, n),
        Expr::Literal(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|err| ExprError::Literal { path: path.clone(), message: err.to_string() })?;
            AnySeries::from_json(&text)
                .map_err(|err| ExprError::Literal { path: path.clone(), message: err.to_string() })?
        }
        Expr::Call(op, args) => {
            let name = signature(*op).name;
            match op {
                Op::Dmul => match (series(0, args)?, series(1, args)?) {
                    (AnySeries::Dir(a), AnySeries::Dir(b)) => AnySeries::Dir(dir_mul(&a, &b)),
                    (AnySeries::Ord(a), AnySeries::Ord(b)) => AnySeries::Ord(ord_mul(&a, &b)),
                    _ => return Err(ExprError::SeriesKind { name, expected: "two series of the same kind" }),
                },
                Op::Dinv => match series(0, args)? {
                    AnySeries::Dir(a) => AnySeries::Dir(dir_inverse(&a)?),
                    AnySeries::Ord(a) => AnySeries::Ord(ord_inverse_mul(&a)?),
                },
                Op::DpowInt => AnySeries::Dir(dir_pow_int(&dir(name, series(0, args)?)?, int_arg(&args[1]))?),
                Op::DpowParam => {
                    let value = args.get(1).map(|a| match a {
                        Arg::Number(r) => Polynomial::constant(r.clone()),
                        Arg::Poly(p) => p.clone(),
                        _ => unreachable!("checked while parsing"),
                    });
                    match series(0, args)? {
                        AnySeries::Dir(a) => {
                            let p = dir_pow_param(&a)?;
                            AnySeries::Dir(match value {
                                Some(v) => series_substitute_symbol(&p, Symbol::Psi, &v),
                                None => p,
                            })
                        }
                        AnySeries::Ord(a) => {
                            let p = ord_pow_param(&a)?;
                            AnySeries::Ord(match value {
                                Some(v) => p.substitute_symbol(Symbol::Psi, &v),
                                None => p,
                            })
                        }
                    }
                }
                Op::Dlog => match series(0, args)? {
                    AnySeries::Dir(a) => AnySeries::Dir(dir_log(&a)?),
                    AnySeries::Ord(a) => AnySeries::Ord(ord_log(&a)?),
                },
                Op::Dexp => match series(0, args)? {
                    AnySeries::Dir(a) => AnySeries::Dir(dir_exp_param(&a)?),
                    AnySeries::Ord(a) => AnySeries::Ord(ord_exp(&a)?),
                },
                Op::Star => AnySeries::Dir(star_derivative(&dir(name, series(0, args)?)?)),
                Op::SubstXk => {
                    let k = int_arg(&args[1]);
                    if k < 1 {
                        return Err(dirseries::Error::InvalidArgument(format!("subst_xk needs k >= 1, got {k}")).into());
                    }
                    AnySeries::Dir(dir_subst_xk(&dir(name, series(0, args)?)?, k as u64))
                }
                Op::Lift => {
                    let lifted = lift_theorem1(&ord(name, series(0, args)?)?, n)?;
                    AnySeries::Dir(series_substitute_symbol(&lifted, Symbol::Psi, &Polynomial::one()))
                }
                Op::LagrangeDir => {
                    AnySeries::Dir(lagrange_dir(&dir(name, series(0, args)?)?, beta_mode(&args[1]))?.series)
                }
                Op::LagrangeOrd => AnySeries::Ord(lagrange_ord(&ord(name, series(0, args)?)?, beta_mode(&args[1]))?),
                Op::Twist => {
                    let k = i32::try_from(int_arg(&args[1]))
                        .map_err(|_| dirseries::Error::InvalidArgument("twist exponent out of range".into()))?;
                    AnySeries::Dir(twist_int(&dir(name, series(0, args)?)?, k))
                }
                Op::Apply => {
                    let f = ord(name, series(0, args)?)?;
                    AnySeries::Dir(dir_apply_series(&f, &dir(name, series(1, args)?)?)?)
                }
            }
        }
    })
}

/// `n / d` as a parameter value, for tests and callers building ASTs.
pub fn number(n: i64, d: i64) -> Arg {
    Arg::Number(rat(n, d))
}
