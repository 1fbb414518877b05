//! Instance helpers shared by the benchmarks.

use minmaxcc::{planted_instance, PositiveGraph};

pub const BENCH_N: usize = 4000;
pub const FLIP: f64 = 0.001;

/// Planted instance on [`BENCH_N`] vertices with about `target_m` edges.
pub fn planted_with_edges(target_m: usize, seed: u64) -> PositiveGraph {
    // Blocks of size s give about n(s − 1)/2 edges.
    let size = (2 * target_m / BENCH_N + 1).clamp(1, BENCH_N);
    planted_instance(BENCH_N, (BENCH_N / size).max(1), FLIP, seed).expect("valid parameters").graph
}

pub fn edge_counts() -> [usize; 3] {
    [50_000, 100_000, 200_000]
}
