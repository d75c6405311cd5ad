//! Fixtures shared by the benchmarks.

use talbot_gauss_core::{Int, PeriodicEnvelope, Sign, TalbotOrder};

/// Every coprime order with `q ≤ q_max` and `p ≤ 2q`.
pub fn orders(q_max: Int) -> Vec<TalbotOrder> {
    TalbotOrder::sweep(1..=q_max, |q| 2 * q, Sign::Plus)
}

/// A rectangular cell one bin wide on a grid of `samples_per_bin · q` points.
pub fn cell(q: usize, samples_per_bin: usize) -> PeriodicEnvelope {
    PeriodicEnvelope::rect(1.0, q * samples_per_bin, 0, samples_per_bin).expect("valid cell")
}
