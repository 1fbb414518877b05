//! Clusterings, the min-max disagreement objective, and the sequential solver.

mod high_degree;
mod phi;
mod solve;

pub use high_degree::{all_pairs_high_degree_clustering, high_degree_clustering};
pub use phi::{cluster_phi, cluster_phi_ordered, BuiltCluster, HighDegreeMode, PhiOutcome, PhiVerdict, ProcessingOrder};
pub use solve::{solve, solve_with, Solution, SolveConfig, SolveMode, SolveStats};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::PositiveGraph;

/// A partition of `0..n` in canonical form: members ascending, clusters
/// ordered by their minimum vertex, ids equal to positions in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clustering {
    cluster_of: Vec<usize>,
    clusters: Vec<Vec<usize>>,
}

impl Clustering {
    /// Validates that `clusters` partitions `0..n` (empty clusters are dropped).
    pub fn from_clusters(n: usize, clusters: Vec<Vec<usize>>) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (id, cluster) in clusters.iter().enumerate() {
            for &v in cluster {
                if v >= n {
                    return Err(Error::NotAPartition(format!("vertex {v} out of range for n = {n}")));
                }
                if labels[v] != usize::MAX {
                    return Err(Error::NotAPartition(format!("vertex {v} appears twice")));
                }
                labels[v] = id;
            }
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotAPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self::from_labels(&labels))
    }

    /// Any labeling defines a partition; ids are renumbered by first appearance.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut remap = std::collections::HashMap::new();
        let mut clusters: Vec<Vec<usize>> = Vec::new();
        let mut cluster_of = Vec::with_capacity(labels.len());
        for (v, &l) in labels.iter().enumerate() {
            let id = *remap.entry(l).or_insert_with(|| {
                clusters.push(Vec::new());
                clusters.len() - 1
            });
            clusters[id].push(v);
            cluster_of.push(id);
        }
        Clustering { cluster_of, clusters }
    }

    pub fn singletons(n: usize) -> Self {
        Clustering { cluster_of: (0..n).collect(), clusters: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn n(&self) -> usize {
        self.cluster_of.len()
    }

    pub fn cluster_of(&self, v: usize) -> usize {
        self.cluster_of[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.cluster_of
    }

    pub fn clusters(&self) -> &[Vec<usize>] {
        &self.clusters
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    /// The cluster `C_v` containing `v`.
    pub fn cluster_containing(&self, v: usize) -> &[usize] {
        &self.clusters[self.cluster_of[v]]
    }

    /// `vertex cluster_id` lines, one per vertex.
    pub fn to_lines(&self) -> String {
        let mut out = String::with_capacity(8 * self.n());
        for (v, c) in self.cluster_of.iter().enumerate() {
            let _ = writeln!(out, "{v} {c}");
        }
        out
    }

    /// Parses `vertex cluster_id` lines; every vertex of `0..n` must appear once.
    pub fn parse_lines(text: &str, n: usize) -> Result<Self> {
        let mut labels = vec![usize::MAX; n];
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            let parsed: Vec<usize> = fields.iter().filter_map(|f| f.parse().ok()).collect();
            if fields.len() != 2 || parsed.len() != 2 {
                return Err(Error::Parse { line: line_no, reason: format!("expected `vertex cluster_id`, found {trimmed:?}") });
            }
            let (v, c) = (parsed[0], parsed[1]);
            if v >= n {
                return Err(Error::EndpointOutOfRange { line: line_no, vertex: v, n });
            }
            if labels[v] != usize::MAX {
                return Err(Error::NotAPartition(format!("vertex {v} listed twice")));
            }
            labels[v] = c;
        }
        if let Some(v) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::NotAPartition(format!("vertex {v} is not assigned")));
        }
        Ok(Self::from_labels(&labels))
    }
}

/// Per-vertex disagreements `ρ(x) = |N[x] Δ C_x|` and `obj = max_x ρ(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisagreementReport {
    pub rho: Vec<u64>,
    pub obj: u64,
}

/// Exact objective in `O(m + n)`:
/// `ρ(x) = (deg(x) + 1) + |C_x| − 2·|N[x] ∩ C_x|`.
pub fn objective(g: &PositiveGraph, c: &Clustering) -> Result<DisagreementReport> {
    if c.n() != g.n() {
        return Err(Error::NotAPartition(format!("clustering covers {} vertices, graph has {}", c.n(), g.n())));
    }
    let rho: Vec<u64> = (0..g.n())
        .map(|x| {
            let cx = c.cluster_of(x);
            let inside = 1 + g.neighbors(x).iter().filter(|&&y| c.cluster_of(y) == cx).count();
            let size = c.clusters()[cx].len();
            (g.degree(x) + 1 + size - 2 * inside) as u64
        })
        .collect();
    let obj = rho.iter().copied().max().unwrap_or(0);
    Ok(DisagreementReport { rho, obj })
}
