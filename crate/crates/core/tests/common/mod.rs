#![allow(dead_code)]

use minmaxcc::{brute_force_opt, Clustering, PositiveGraph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENSITIES: [f64; 3] = [0.2, 0.5, 0.8];

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> PositiveGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    PositiveGraph::from_edges(n, edges).unwrap()
}

pub struct OracleCase {
    pub graph: PositiveGraph,
    pub opt: u64,
    pub density: f64,
}

/// `count` random graphs with `n` cycling over `sizes` and density over
/// [`DENSITIES`], each with its exact optimum.
pub fn oracle_suite(count: usize, sizes: std::ops::RangeInclusive<usize>, seed: u64) -> Vec<OracleCase> {
    let sizes: Vec<usize> = sizes.collect();
    (0..count)
        .map(|i| {
            let n = sizes[i % sizes.len()];
            let density = DENSITIES[(i / sizes.len()) % DENSITIES.len()];
            let graph = random_graph(n, density, seed.wrapping_mul(1_000_003).wrapping_add(i as u64));
            let opt = brute_force_opt(&graph).unwrap().opt;
            OracleCase { graph, opt, density }
        })
        .collect()
}

/// Disjoint cliques of size at least `3φ + 3`, then random label flips
/// accepted only while both endpoints have used fewer than `φ` flips. The
/// planted clustering therefore has objective at most `φ`.
pub fn noisy_cliques(phi: u64, clusters: usize, seed: u64) -> (PositiveGraph, Clustering) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min = 3 * phi as usize + 3;
    let sizes: Vec<usize> = (0..clusters).map(|_| rng.gen_range(min..=min + 4)).collect();
    let n: usize = sizes.iter().sum();
    let mut truth = Vec::with_capacity(n);
    for (c, &s) in sizes.iter().enumerate() {
        truth.extend(std::iter::repeat_n(c, s));
    }
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(&mut rng);
    let mut budget = vec![phi; n];
    let mut flips = std::collections::HashSet::new();
    let attempts = rng.gen_range(0..=n * phi as usize);
    for &(u, v) in pairs.iter().take(attempts) {
        if budget[u] > 0 && budget[v] > 0 {
            budget[u] -= 1;
            budget[v] -= 1;
            flips.insert((u, v));
        }
    }
    let edges = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| (truth[u] == truth[v]) != flips.contains(&(u, v)));
    (PositiveGraph::from_edges(n, edges).unwrap(), Clustering::from_labels(&truth))
}
