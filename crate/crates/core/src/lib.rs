//! Exact algebra of formal power series under Dirichlet composition.
//!
//! Coefficients are polynomials over the rationals in the power parameters
//! `phi`, `beta`, `psi`, symbolic prime logarithms `L<p>` and generic
//! indeterminates `a<k>`, so every identity is checked by structural
//! equality with zero tolerance.

pub mod arith;
pub mod comb;
pub mod error;
#[doc(hidden)]
pub mod fault;
pub mod matrix;
pub mod random;
pub mod series;
pub mod transforms;
pub mod verify;

pub use arith::{Monomial, Polynomial, Rational, Symbol};
pub use error::{Error, Result};
pub use matrix::{DirMatrix, MatrixKind};
pub use series::{AnySeries, DirSeries, OrdSeries};
