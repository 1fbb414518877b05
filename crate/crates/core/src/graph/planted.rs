use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::PositiveGraph;
use crate::error::{Error, Result};

/// A synthetic instance together with the clustering it was planted from.
#[derive(Debug, Clone)]
pub struct PlantedInstance {
    pub graph: PositiveGraph,
    /// Ground-truth cluster id of every vertex, `0..k`.
    pub truth: Vec<usize>,
}

impl PlantedInstance {
    pub fn truth_clusters(&self) -> Vec<Vec<usize>> {
        let k = self.truth.iter().copied().max().map_or(0, |m| m + 1);
        let mut out = vec![Vec::new(); k];
        for (v, &c) in self.truth.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// Planted-partition generator.
///
/// Vertices are split into `k_clusters` contiguous blocks of near-equal size.
/// Each intra-block pair is a positive edge with probability `1 − flip_prob`,
/// each inter-block pair with probability `flip_prob`. Inter-block pairs are
/// drawn by geometric skipping, so the cost is proportional to the number of
/// intra-block pairs plus the number of noise edges.
pub fn planted_instance(n: usize, k_clusters: usize, flip_prob: f64, seed: u64) -> Result<PlantedInstance> {
    if k_clusters == 0 || k_clusters > n {
        return Err(Error::param(format!("k_clusters = {k_clusters} must lie in [1, n = {n}]")));
    }
    if !(0.0..0.5).contains(&flip_prob) {
        return Err(Error::param(format!("flip_prob = {flip_prob} must lie in [0, 0.5)")));
    }
    let truth: Vec<usize> = (0..n).map(|v| v * k_clusters / n).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();

    // Intra-block pairs.
    let mut start = 0;
    while start < n {
        let block = truth[start];
        let end = truth[start..].iter().position(|&c| c != block).map_or(n, |p| start + p);
        for a in start..end {
            for b in a + 1..end {
                if flip_prob == 0.0 || rng.gen::<f64>() >= flip_prob {
                    edges.push((a, b));
                }
            }
        }
        start = end;
    }

    // Inter-block pairs: walk the upper triangle in row-major order, jumping
    // by Geometric(flip_prob) gaps; intra-block hits are discarded.
    if flip_prob > 0.0 && n >= 2 {
        let log_q = (1.0 - flip_prob).ln();
        let (mut row, mut col) = (0usize, 0usize); // col is the offset within row `row`
        let mut first = true;
        loop {
            let u: f64 = rng.gen();
            let gap = ((1.0 - u).ln() / log_q).floor();
            let mut skip = if gap.is_finite() && gap < u64::MAX as f64 { gap as u64 } else { u64::MAX };
            if !first {
                skip = skip.saturating_add(1);
            }
            first = false;
            // Advance `skip` positions.
            loop {
                let row_len = (n - 1 - row) as u64;
                let left = row_len - col as u64;
                if skip < left {
                    col += skip as usize;
                    break;
                }
                skip -= left;
                row += 1;
                col = 0;
                if row >= n - 1 {
                    break;
                }
            }
            if row >= n - 1 {
                break;
            }
            let (a, b) = (row, row + 1 + col);
            if truth[a] != truth[b] {
                edges.push((a, b));
            }
        }
    }

    let graph = PositiveGraph::from_edges(n, edges)?;
    Ok(PlantedInstance { graph, truth })
}
