//! Truncated formal power series in the ordinary (Cauchy) algebra and the
//! Dirichlet-composition algebra.

mod dir;
mod json;
mod ord;

pub use dir::*;
pub use json::AnySeries;
pub use ord::*;
