use std::fmt;
use std::str::FromStr;

use crate::comb::is_prime;
use crate::error::{Error, Result};

/// An indeterminate of the coefficient ring.
///
/// The derived order (`L<p>` < `a<k>` < `beta` < `phi` < `psi`) agrees with
/// the byte order of the printed names, except that indices inside a family
/// compare numerically (`L3` < `L11`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    /// `L<p>`, standing for ln p. Only constructed for primes.
    Log(u64),
    /// `a<k>`, a generic series coefficient, k >= 1.
    Coef(u64),
    Beta,
    Phi,
    /// The power parameter before it is specialized.
    Psi,
}

impl Symbol {
    pub fn log_of_prime(p: u64) -> Result<Symbol> {
        if is_prime(p) {
            Ok(Symbol::Log(p))
        } else {
            Err(Error::InvalidSymbol(format!("L{p}")))
        }
    }

    pub fn coef(k: u64) -> Result<Symbol> {
        if k >= 1 {
            Ok(Symbol::Coef(k))
        } else {
            Err(Error::InvalidSymbol(format!("a{k}")))
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Log(p) => write!(f, "L{p}"),
            Symbol::Coef(k) => write!(f, "a{k}"),
            Symbol::Beta => f.write_str("beta"),
            Symbol::Phi => f.write_str("phi"),
            Symbol::Psi => f.write_str("psi"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        let bad = || Error::InvalidSymbol(s.to_string());
        match s {
            "phi" => return Ok(Symbol::Phi),
            "beta" => return Ok(Symbol::Beta),
            "psi" => return Ok(Symbol::Psi),
            _ => {}
        }
        let index = |rest: &str| -> Result<u64> {
            if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
                return Err(bad());
            }
            rest.parse().map_err(|_| bad())
        };
        if let Some(rest) = s.strip_prefix('L') {
            Symbol::log_of_prime(index(rest)?).map_err(|_| bad())
        } else if let Some(rest) = s.strip_prefix('a') {
            Symbol::coef(index(rest)?).map_err(|_| bad())
        } else {
            Err(bad())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for name in ["phi", "beta", "psi", "L2", "L97", "a1", "a16"] {
            let s: Symbol = name.parse().unwrap();
            assert_eq!(s.to_string(), name);
        }
    }

    #[test]
    fn rejects_non_primes_and_junk() {
        for name in ["L4", "L1", "L0", "a0", "a", "L", "x", "a02", "Phi"] {
            assert!(name.parse::<Symbol>().is_err(), "{name}");
        }
        assert!(Symbol::log_of_prime(9).is_err());
    }

    #[test]
    fn order_matches_name_families() {
        let mut v = vec![Symbol::Psi, Symbol::Phi, Symbol::Beta, Symbol::Coef(2), Symbol::Log(3), Symbol::Log(2)];
        v.sort();
        assert_eq!(v, vec![Symbol::Log(2), Symbol::Log(3), Symbol::Coef(2), Symbol::Beta, Symbol::Phi, Symbol::Psi]);
    }
}
