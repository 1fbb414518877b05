use super::phi::{cluster_phi, HighDegreeMode, PhiOutcome, PhiVerdict};
use super::{objective, Clustering, DisagreementReport};
use crate::error::{Error, Result};
use crate::eta::Eta;
use crate::graph::PositiveGraph;
use crate::similarity::{SimilarityOracle, DEFAULT_JL_CONSTANT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveMode {
    /// Exact similarity queries, η = 0: a 3-approximation.
    Exact,
    /// Sketch-backed queries with η = ε: a (3 + ε)-approximation w.h.p.
    Sketch,
}

#[derive(Debug, Clone)]
pub struct SolveConfig {
    pub epsilon: f64,
    pub mode: SolveMode,
    pub seed: u64,
    pub jl_constant: f64,
    pub high_degree: HighDegreeMode,
}

impl SolveConfig {
    pub fn new(epsilon: f64, mode: SolveMode, seed: u64) -> Self {
        SolveConfig { epsilon, mode, seed, jl_constant: DEFAULT_JL_CONSTANT, high_degree: HighDegreeMode::Token }
    }
}

#[derive(Debug, Clone, Default)]
pub struct SolveStats {
    /// ClusterPhi invocations, including the initial probe at φ = n.
    pub probes: usize,
    pub queries: u64,
    /// Sketch dimension `k`, when sketches were used.
    pub sketch_dim: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Solution {
    pub clustering: Clustering,
    pub report: DisagreementReport,
    pub phi_final: u64,
    pub eta: Eta,
    pub stats: SolveStats,
}

pub fn solve(g: &PositiveGraph, epsilon: f64, mode: SolveMode, seed: u64) -> Result<Solution> {
    solve_with(g, &SolveConfig::new(epsilon, mode, seed))
}

/// Binary search for the smallest φ ∈ [0, n] at which ClusterPhi succeeds.
///
/// Invariant: ClusterPhi succeeded at `hi`, and the clustering from that probe
/// is retained. A failed probe at `mid` means `OPT > mid`, so the search ends
/// with `φ_final ≤ OPT` whenever the oracle answered correctly.
pub fn solve_with(g: &PositiveGraph, config: &SolveConfig) -> Result<Solution> {
    if !(config.epsilon >= 0.0 && config.epsilon.is_finite()) {
        return Err(Error::param(format!("epsilon = {} must be non-negative", config.epsilon)));
    }
    let n = g.n();
    let (eta, oracle) = match config.mode {
        SolveMode::Exact => (Eta::ZERO, SimilarityOracle::exact(g, Eta::ZERO)),
        SolveMode::Sketch => {
            let eta = Eta::from_f64(config.epsilon)?;
            if eta.is_zero() {
                return Err(Error::param("sketch mode needs epsilon in (0, 1)"));
            }
            if n < 2 {
                (eta, SimilarityOracle::exact(g, eta))
            } else {
                (eta, SimilarityOracle::sketch_for_eta(g, eta, config.seed, config.jl_constant)?)
            }
        }
    };
    let sketch_dim = match oracle.backend() {
        crate::similarity::Backend::Sketch(s) => Some(s.k()),
        crate::similarity::Backend::Exact { .. } => None,
    };

    let mut probes = 0usize;
    let mut probe = |phi: u64| -> PhiOutcome {
        probes += 1;
        cluster_phi(g, phi, eta, &oracle, config.high_degree)
    };

    let top = n as u64;
    let first = probe(top);
    let mut best = match first.verdict {
        PhiVerdict::Clustered(c) => c,
        PhiVerdict::OptAbovePhi => unreachable!("ClusterPhi must succeed at φ = n: every vertex is low-degree"),
    };
    let (mut lo, mut hi) = (0u64, top);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid).verdict {
            PhiVerdict::Clustered(c) => {
                hi = mid;
                best = c;
            }
            PhiVerdict::OptAbovePhi => lo = mid + 1,
        }
    }

    let report = objective(g, &best)?;
    assert!(eta.within_three_plus(report.obj, hi), "certificate violated: obj {} > (3 + {eta})·{hi}", report.obj);
    Ok(Solution {
        clustering: best,
        report,
        phi_final: hi,
        eta,
        stats: SolveStats { probes, queries: oracle.query_count(), sketch_dim },
    })
}
