use crate::eta::Eta;
use crate::graph::{PositiveGraph, UnionFind, VertexPartitionByDegree};
use crate::similarity::SimilarityOracle;

/// Token-passing clustering of `V_high` with `O(m)` similarity queries.
///
/// `E_sim` keeps the positive edges whose endpoints pass `Δ(u, v, 2φ)`.
/// Every vertex `v` learns `min(v)`, the smallest high-degree id in its closed
/// `G_sim` neighborhood, and sends it as a token to its `G_sim` neighbors. A
/// high-degree vertex receiving at least `φ + 1` tokens of one value joins the
/// cluster named by the smallest such value; otherwise it stays alone.
///
/// Only edges with a high-degree endpoint influence the result, so only those
/// are queried.
pub fn high_degree_clustering(g: &PositiveGraph, phi: u64, eta: Eta, oracle: &SimilarityOracle<'_>) -> Vec<Vec<usize>> {
    let split = g.degree_split(phi, eta);
    token_partition(g, phi, &split, oracle)
}

/// Connected components of `(V_high, E')` with `E'` built from all pairs of
/// high-degree vertices. `O(|V_high|²)` queries; the reference path.
pub fn all_pairs_high_degree_clustering(
    g: &PositiveGraph,
    phi: u64,
    eta: Eta,
    oracle: &SimilarityOracle<'_>,
) -> Vec<Vec<usize>> {
    let split = g.degree_split(phi, eta);
    all_pairs_partition(phi, &split, oracle)
}

pub(super) fn all_pairs_partition(phi: u64, split: &VertexPartitionByDegree, oracle: &SimilarityOracle<'_>) -> Vec<Vec<usize>> {
    let high = &split.v_high;
    let mut uf = UnionFind::new(high.len());
    for i in 0..high.len() {
        for j in i + 1..high.len() {
            if oracle.query(high[i], high[j], 2 * phi) {
                uf.union(i, j);
            }
        }
    }
    crate::graph::group_by_root(high, &mut uf)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Label {
    Token(usize),
    Alone(usize),
}

pub(super) fn token_partition(
    g: &PositiveGraph,
    phi: u64,
    split: &VertexPartitionByDegree,
    oracle: &SimilarityOracle<'_>,
) -> Vec<Vec<usize>> {
    if split.v_high.is_empty() {
        return Vec::new();
    }
    let n = g.n();
    let high = split.high_mask(n);

    let sim_edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| (high[u] || high[v]) && oracle.query(u, v, 2 * phi))
        .collect();

    let mut min_id: Vec<Option<usize>> = (0..n).map(|v| high[v].then_some(v)).collect();
    for &(u, v) in &sim_edges {
        if high[v] {
            min_id[u] = Some(min_id[u].map_or(v, |m| m.min(v)));
        }
        if high[u] {
            min_id[v] = Some(min_id[v].map_or(u, |m| m.min(u)));
        }
    }

    let mut tokens: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &sim_edges {
        if let (true, Some(t)) = (high[v], min_id[u]) {
            tokens[v].push(t);
        }
        if let (true, Some(t)) = (high[u], min_id[v]) {
            tokens[u].push(t);
        }
    }

    let needed = phi as usize + 1;
    let labels: Vec<Label> = split
        .v_high
        .iter()
        .map(|&x| {
            let received = &mut tokens[x];
            received.sort_unstable();
            // Smallest value occurring at least φ + 1 times.
            received
                .chunk_by(|a, b| a == b)
                .find(|run| run.len() >= needed)
                .map_or(Label::Alone(x), |run| Label::Token(run[0]))
        })
        .collect();

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = std::collections::HashMap::new();
    for (&x, label) in split.v_high.iter().zip(&labels) {
        let id = *slot.entry(*label).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[id].push(x);
    }
    groups
}
