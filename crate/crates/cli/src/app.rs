use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dirseries::arith::{Polynomial, Symbol};
use dirseries::comb::{bell_b, bell_btilde, ordered_factorizations, s_of};
use dirseries::matrix::{build_column, build_mult, build_rd, build_riordan_ord, DirMatrix};
use dirseries::series::AnySeries;
use dirseries::verify::{self, Suite, DEFAULT_BOUND};

use crate::expr::{eval, parse_expr, ExprError};

pub const DEFAULT_TRUNC: usize = 64;
pub const DEFAULT_MATRIX_SIZE: usize = 16;
pub const MAX_TRUNC: usize = 10_000;
pub const MAX_MATRIX_SIZE: usize = 500;

#[derive(Parser, Debug)]
#[command(name = "dirseries", version, about = "Exact Dirichlet-composition series algebra")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one coefficient of a series expression.
    Coeff {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(short = 'n')]
        index: u64,
    },
    /// Print a truncated series.
    Series {
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(short = 'N', default_value_t = DEFAULT_TRUNC)]
        trunc: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Build a matrix from one or two series expressions.
    Matrix {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        /// Second series: the argument `a` for `rd` (default `x`) and `riordan` (required).
        #[arg(long = "e2")]
        expr2: Option<String>,
        #[arg(short = 'N', default_value_t = DEFAULT_MATRIX_SIZE)]
        size: usize,
        /// CSV instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Bell polynomial table as CSV, rows n = 1..=N, columns m = 0..=M.
    Bell {
        /// Multiplicative instead of additive.
        #[arg(long)]
        tilde: bool,
        #[arg(short = 'N')]
        n: u32,
        #[arg(short = 'M')]
        m: u32,
        /// Cells in the indeterminates `a_k` instead of `a_k = 1`.
        #[arg(long)]
        symbolic: bool,
    },
    /// List the ordered factorizations of n into m factors >= 2.
    Factorizations {
        #[arg(short = 'n')]
        n: u64,
        #[arg(short = 'm')]
        m: u32,
    },
    /// Run identity suites; exit 1 if any check fails.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(short = 'N', default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Corrupt convolution coefficient k (fault injection).
        #[arg(long, hide = true)]
        mutate_conv: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Mult,
    Column,
    Rd,
    Riordan,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Kernel(#[from] dirseries::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// `-e2` is a single-dash long flag in the documented syntax; clap only
/// accepts `--e2`.
fn normalize_args(args: impl IntoIterator<Item = String>) -> Vec<String> {
    args.into_iter()
        .map(|a| match a.strip_prefix("-e2") {
            Some(rest) if rest.is_empty() || rest.starts_with('=') => format!("--e2{rest}"),
            _ => a,
        })
        .collect()
}

/// Parses `args` (program name first) and runs the command. Usage and input
/// errors exit 2, failed verification exits 1.
pub fn run(args: impl IntoIterator<Item = String>, out: &mut impl Write, err: &mut impl Write) -> ExitCode {
    let cli = match Cli::try_parse_from(normalize_args(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return ExitCode::from(code);
        }
    };
    match execute(cli.command, out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            ExitCode::from(2)
        }
    }
}

fn evaluate(text: &str, trunc: usize) -> Result<AnySeries, CliError> {
    Ok(eval(&parse_expr(text)?, trunc)?)
}

fn check_cap(what: &str, value: usize, lo: usize, hi: usize) -> Result<(), CliError> {
    if value < lo || value > hi {
        return Err(CliError::Usage(format!("{what} must be in {lo}..={hi}, got {value}")));
    }
    Ok(())
}

fn coefficients(s: &AnySeries) -> Vec<(u64, &Polynomial)> {
    match s {
        AnySeries::Dir(d) => d.coeffs().iter().enumerate().map(|(i, c)| (i as u64 + 1, c)).collect(),
        AnySeries::Ord(o) => o.coeffs().iter().enumerate().map(|(i, c)| (i as u64, c)).collect(),
    }
}

fn execute(command: Command, out: &mut impl Write) -> Result<bool, CliError> {
    match command {
        Command::Coeff { expr, index } => {
            let trunc = usize::try_from(index)
                .ok()
                .filter(|&n| n <= MAX_TRUNC)
                .ok_or_else(|| CliError::Usage(format!("index must be at most {MAX_TRUNC}, got {index}")))?;
            let s = evaluate(&expr, trunc.max(1))?;
            let c = coefficients(&s).into_iter().find(|&(n, _)| n == index).map(|(_, c)| c.clone());
            match c {
                Some(c) => writeln!(out, "{c}")?,
                None => match s {
                    AnySeries::Dir(_) if index == 0 => {
                        return Err(CliError::Usage("Dirichlet series are indexed from 1".into()))
                    }
                    _ => return Err(CliError::Usage(format!("index {index} is beyond the series truncation"))),
                },
            }
        }
        Command::Series { expr, trunc, json, csv } => {
            check_cap("truncation", trunc, 1, MAX_TRUNC)?;
            let s = evaluate(&expr, trunc)?;
            if json {
                writeln!(out, "{}", s.to_json())?;
            } else if csv {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["n", "coefficient"])?;
                for (n, c) in coefficients(&s) {
                    w.write_record([n.to_string(), c.to_string()])?;
                }
                w.flush()?;
            } else {
                for (n, c) in coefficients(&s) {
                    writeln!(out, "{n}\t{c}")?;
                }
            }
        }
        Command::Matrix { kind, expr, expr2, size, csv } => {
            check_cap("matrix size", size, 1, MAX_MATRIX_SIZE)?;
            let m = build_matrix(kind, &expr, expr2.as_deref(), size)?;
            if csv {
                let mut w = csv::Writer::from_writer(out);
                for row in m.dense_rows() {
                    w.write_record(row.iter().map(ToString::to_string))?;
                }
                w.flush()?;
            } else {
                writeln!(out, "{}", m.to_json())?;
            }
        }
        Command::Bell { tilde, n, m, symbolic } => {
            check_cap("N", n as usize, 1, MAX_TRUNC)?;
            let value = |k: u64| if symbolic { Polynomial::symbol(Symbol::Coef(k)) } else { Polynomial::one() };
            let mut w = csv::Writer::from_writer(out);
            let mut header = vec!["n".to_string()];
            header.extend((0..=m).map(|j| j.to_string()));
            w.write_record(&header)?;
            for row in 1..=n {
                let mut record = vec![row.to_string()];
                for j in 0..=m {
                    let cell = if tilde {
                        // m beyond s(n) admits no factorization; skip the enumeration
                        if j > s_of(row as u64) {
                            Polynomial::zero()
                        } else {
                            bell_btilde(row as u64, j, value)
                        }
                    } else if j > row {
                        Polynomial::zero()
                    } else {
                        bell_b(row, j, |k| value(k as u64))
                    };
                    record.push(cell.to_string());
                }
                w.write_record(&record)?;
            }
            w.flush()?;
        }
        Command::Factorizations { n, m } => {
            if n == 0 {
                return Err(CliError::Usage("n must be positive".into()));
            }
            for f in ordered_factorizations(n, m) {
                let parts: Vec<String> = f.iter().map(u64::to_string).collect();
                writeln!(out, "{}", parts.join("*"))?;
            }
        }
        Command::Verify { suite, bound, jobs, mutate_conv } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                suite.split(',').map(|s| s.trim().parse()).collect::<Result<_, _>>()?
            };
            check_cap("verification bound", bound, 2, MAX_TRUNC)?;
            dirseries::fault::inject_convolution_fault(mutate_conv);
            let reports = verify::run(&suites, bound, jobs)?;
            for r in &reports {
                for line in r.lines() {
                    writeln!(out, "{line}")?;
                }
            }
            writeln!(out, "{}", verify::summary_json(&reports, bound))?;
            return Ok(reports.iter().all(|r| r.failed() == 0));
        }
    }
    Ok(true)
}

fn build_matrix(kind: Kind, expr: &str, expr2: Option<&str>, size: usize) -> Result<DirMatrix, CliError> {
    let first = evaluate(expr, size.max(1))?;
    let second = expr2.map(|e| evaluate(e, size.max(1))).transpose()?;
    let dir = |s: AnySeries, flag: &str| match s {
        AnySeries::Dir(d) => Ok(d),
        AnySeries::Ord(_) => Err(CliError::Usage(format!("{flag} must be a Dirichlet series for this kind"))),
    };
    Ok(match kind {
        Kind::Mult => build_mult(&dir(first, "-e")?, size)?,
        Kind::Column => build_column(&dir(first, "-e")?, size)?,
        // `-e` is the multiplier b, `-e2` the argument a
        Kind::Rd => {
            let a = match second {
                Some(s) => dir(s, "-e2")?,
                None => dirseries::DirSeries::identity(size),
            };
            build_rd(&dir(first, "-e")?, &a, size)?
        }
        Kind::Riordan => {
            let ord = |s: AnySeries, flag: &str| match s {
                AnySeries::Ord(o) => Ok(o),
                AnySeries::Dir(_) => Err(CliError::Usage(format!("{flag} must be an ordinary series for `riordan`"))),
            };
            let b = ord(first, "-e")?;
            let a = match second {
                Some(s) => ord(s, "-e2")?,
                None => return Err(CliError::Usage("`riordan` needs -e2 (the argument series a)".into())),
            };
            build_riordan_ord(&b, &a, size)?
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("dirseries").chain(args.iter().copied()).map(String::from);
        let code = run(argv, &mut out, &mut err);
        let code = if code == ExitCode::SUCCESS {
            0
        } else if code == ExitCode::from(1) {
            1
        } else {
            2
        };
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn coeff_example() {
        assert_eq!(
            run_str(&["coeff", "-e", "dpow_param(eps)", "-n", "12"]),
            (0, "psi^3 * 1/2\n".into(), String::new())
        );
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run_str(&["coeff", "-e", "dlog(", "-n", "3"]).0, 2);
        assert_eq!(run_str(&["series", "-e", "zeta", "-N", "10001"]).0, 2);
        assert_eq!(run_str(&["matrix", "--kind", "column", "-e", "geom2", "-N", "501"]).0, 2);
        assert_eq!(run_str(&["verify", "--suite", "nope"]).0, 2);
        assert_eq!(run_str(&["frobnicate"]).0, 2);
        assert_eq!(run_str(&["coeff", "-e", "zeta", "-n", "0"]).0, 2);
    }

    #[test]
    fn single_dash_e2() {
        let (code, out, _) = run_str(&["matrix", "--kind", "rd", "-e", "x", "-e2", "zeta", "-N", "6", "--csv"]);
        assert_eq!(code, 0);
        let (_, col, _) = run_str(&["matrix", "--kind", "column", "-e", "zeta", "-N", "6", "--csv"]);
        assert_ne!(out, col);
        assert_eq!(out.lines().count(), 6);
    }

    #[test]
    fn factorizations_and_bell() {
        assert_eq!(run_str(&["factorizations", "-n", "12", "-m", "2"]).1, "2*6\n3*4\n4*3\n6*2\n");
        let (code, out, _) = run_str(&["bell", "--tilde", "-N", "12", "-M", "3"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().nth(12).unwrap(), "12,0,1,4,3");
        let (_, out, _) = run_str(&["bell", "-N", "3", "-M", "2", "--symbolic"]);
        assert_eq!(out.lines().nth(3).unwrap(), "3,0,a3,a1*a2 * 2");
    }
}
