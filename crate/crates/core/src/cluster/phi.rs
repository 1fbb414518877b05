use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::high_degree::{all_pairs_partition, token_partition};
use super::{objective, Clustering};
use crate::eta::Eta;
use crate::graph::PositiveGraph;
use crate::similarity::SimilarityOracle;

/// How the high-degree partition `L` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HighDegreeMode {
    /// Components of `E'` over all high-degree pairs.
    AllPairs,
    /// Token passing over `E_sim ⊆ E⁺`.
    #[default]
    Token,
}

/// Order in which the high-degree clusters `L_i` are processed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProcessingOrder {
    /// Ascending by minimum vertex.
    #[default]
    Ascending,
    Descending,
    Shuffled(u64),
}

/// One processed high-degree cluster: `C_i = L_i ∪ R(u_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltCluster {
    pub high: Vec<usize>,
    pub pivot: usize,
    /// `C_i`, ascending.
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiVerdict {
    Clustered(Clustering),
    /// The final check found a vertex with `ρ > (3 + η)φ`, so `OPT > φ`.
    OptAbovePhi,
}

#[derive(Debug, Clone)]
pub struct PhiOutcome {
    pub phi: u64,
    pub eta: Eta,
    pub verdict: PhiVerdict,
    /// `L`, canonical order.
    pub high_degree: Vec<Vec<usize>>,
    /// The `C_i` in processing order.
    pub built: Vec<BuiltCluster>,
    /// Exact objective of the assembled clustering, whether or not it passed.
    pub obj: u64,
    pub queries: u64,
}

impl PhiOutcome {
    pub fn clustering(&self) -> Option<&Clustering> {
        match &self.verdict {
            PhiVerdict::Clustered(c) => Some(c),
            PhiVerdict::OptAbovePhi => None,
        }
    }

    pub fn succeeded(&self) -> bool {
        self.clustering().is_some()
    }
}

/// Runs ClusterPhi at guess `phi` with the default processing order.
///
/// Either returns a clustering whose exact objective is at most `(3 + η)φ`,
/// or reports that no clustering of objective `≤ φ` exists (which is only
/// guaranteed when the oracle answered every query correctly).
pub fn cluster_phi(g: &PositiveGraph, phi: u64, eta: Eta, oracle: &SimilarityOracle<'_>, mode: HighDegreeMode) -> PhiOutcome {
    cluster_phi_ordered(g, phi, eta, oracle, mode, ProcessingOrder::Ascending)
}

pub fn cluster_phi_ordered(
    g: &PositiveGraph,
    phi: u64,
    eta: Eta,
    oracle: &SimilarityOracle<'_>,
    mode: HighDegreeMode,
    order: ProcessingOrder,
) -> PhiOutcome {
    let n = g.n();
    let queries_before = oracle.query_count();
    let split = g.degree_split(phi, eta);
    let high_degree = match mode {
        HighDegreeMode::AllPairs => all_pairs_partition(phi, &split, oracle),
        HighDegreeMode::Token => token_partition(g, phi, &split, oracle),
    };

    let mut sequence: Vec<usize> = (0..high_degree.len()).collect();
    match order {
        ProcessingOrder::Ascending => {}
        ProcessingOrder::Descending => sequence.reverse(),
        ProcessingOrder::Shuffled(seed) => sequence.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
    }

    // `open[w]`: w is low-degree and not yet absorbed (w ∈ V_i).
    let mut open = vec![false; n];
    for &w in &split.v_low {
        open[w] = true;
    }
    let mut labels = vec![usize::MAX; n];
    let mut built = Vec::with_capacity(high_degree.len());
    for (label, &i) in sequence.iter().enumerate() {
        let high = &high_degree[i];
        let pivot = high[0];
        let mut members = high.clone();
        for &w in g.neighbors(pivot) {
            if open[w] && oracle.query(w, pivot, 2 * phi) {
                open[w] = false;
                members.push(w);
            }
        }
        members.sort_unstable();
        for &v in &members {
            labels[v] = label;
        }
        built.push(BuiltCluster { high: high.clone(), pivot, members });
    }
    for (next, label) in (sequence.len()..).zip(labels.iter_mut().filter(|l| **l == usize::MAX)) {
        *label = next;
    }

    let clustering = Clustering::from_labels(&labels);
    let report = objective(g, &clustering).expect("labels cover every vertex");
    let passed = report.rho.iter().all(|&r| eta.within_three_plus(r, phi));
    let verdict = if passed { PhiVerdict::Clustered(clustering) } else { PhiVerdict::OptAbovePhi };

    PhiOutcome {
        phi,
        eta,
        verdict,
        high_degree,
        built,
        obj: report.obj,
        queries: oracle.query_count() - queries_before,
    }
}
