//! Mutation hook for the Dirichlet convolution kernel.
//!
//! When armed with index `k`, every convolution adds 1 to its output
//! coefficient at `k`. The verification suites must detect this; the CLI
//! exposes it as a hidden flag. Process-global, so never arm it inside a
//! multi-threaded test binary.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::arith::Polynomial;

static CONVOLUTION_FAULT: AtomicUsize = AtomicUsize::new(0);

#[doc(hidden)]
pub fn inject_convolution_fault(index: Option<usize>) {
    CONVOLUTION_FAULT.store(index.unwrap_or(0), Ordering::SeqCst);
}

pub(crate) fn corrupt(n: usize, value: &mut Polynomial) {
    let k = CONVOLUTION_FAULT.load(Ordering::Relaxed);
    if k != 0 && k == n {
        *value += &Polynomial::one();
    }
}
