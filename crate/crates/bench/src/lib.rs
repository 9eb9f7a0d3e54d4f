//! Benchmark-only crate; see `benches/engine.rs`.
//!
//! Shared helpers for the benchmark targets live here so the bench file
//! stays declarative.

use cbid_core::SparsePoly;

/// `x_1 + ... + x_n`.
pub fn sum_of_vars(arity: usize) -> SparsePoly {
    let mut s = SparsePoly::zero(arity);
    for v in 0..arity {
        s = s.add(&SparsePoly::variable(arity, v));
    }
    s
}
