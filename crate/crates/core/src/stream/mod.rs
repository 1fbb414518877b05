//! Single-pass semi-streaming ClusterPhi, simulated with a space ledger.
//!
//! The stream delivers each positive edge once. While it runs the state keeps
//! two families of sketches (`A` for similarity, `B` for objective checks),
//! the degree of every vertex, and the incident edges of vertices that are
//! still live at one of their sampled levels. [`StreamState::finalize`] then
//! assembles clusters from that state alone.

mod driver;
mod ledger;
mod sampling;
mod sketches;

pub use driver::{stream_solve, StreamSettings, StreamSolution};
pub use ledger::{space_budget, SpaceLedger, SpaceReport, SPACE_BUDGET_CONSTANT};
pub use sampling::{final_level, level_count, level_probability, DEFAULT_SAMPLE_CONSTANT};
pub use sketches::{ObjectiveSketches, SimilaritySketches};

use std::collections::HashSet;

use sketches::Accumulator;

use crate::cluster::{BuiltCluster, Clustering, PhiVerdict};
use crate::error::{Error, Result};
use crate::eta::Eta;
use crate::graph::{group_by_root, UnionFind};
use crate::similarity::DEFAULT_JL_CONSTANT;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamConfig {
    pub phi: u64,
    pub eta: Eta,
    pub seed: u64,
    pub jl_constant: f64,
    pub c_sample: f64,
}

impl StreamConfig {
    pub fn new(phi: u64, eta: Eta, seed: u64) -> Self {
        StreamConfig { phi, eta, seed, jl_constant: DEFAULT_JL_CONSTANT, c_sample: DEFAULT_SAMPLE_CONSTANT }
    }

    /// Accuracy of both sketch families: `ε' = (η/2)/(2 + η/2)`, tight
    /// enough for the `η/2` queries and hence for the `η` ones.
    pub fn sketch_epsilon(&self) -> f64 {
        self.eta.half().sketch_epsilon()
    }
}

fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug)]
pub struct StreamState {
    n: usize,
    config: StreamConfig,
    sketch_a: Accumulator,
    sketch_b: Accumulator,
    sampled: Vec<u64>,
    live: Vec<u64>,
    degree: Vec<usize>,
    stored: Vec<Vec<usize>>,
    ledger: SpaceLedger,
    /// Duplicate detection for validation only; not part of the space model.
    seen: HashSet<(usize, usize)>,
}

/// Allocates zeroed accumulators and draws every vertex's sampled levels.
pub fn stream_init(n: usize, config: StreamConfig) -> Result<StreamState> {
    StreamState::new(n, config)
}

impl StreamState {
    pub fn new(n: usize, config: StreamConfig) -> Result<Self> {
        if n < 2 {
            return Err(Error::param("streaming needs n >= 2"));
        }
        if config.eta.is_zero() {
            return Err(Error::param("streaming needs eta > 0"));
        }
        if !(config.jl_constant > 0.0 && config.jl_constant.is_finite()) {
            return Err(Error::param(format!("JL constant = {} must be positive", config.jl_constant)));
        }
        if !(config.c_sample > 0.0 && config.c_sample.is_finite()) {
            return Err(Error::param(format!("sampling constant = {} must be positive", config.c_sample)));
        }
        let eps = config.sketch_epsilon();
        let sketch_a = Accumulator::new(n, eps, derive_seed(config.seed, 1), config.jl_constant);
        let sketch_b = Accumulator::new(n, eps, derive_seed(config.seed, 2), config.jl_constant);
        let sampled = sampling::draw_levels(n, derive_seed(config.seed, 3), config.c_sample);
        let live_pairs: u64 = sampled.iter().map(|m| m.count_ones() as u64).sum();
        let ledger = SpaceLedger::new(sketch_a.words() + sketch_b.words(), n as u64 + live_pairs);
        Ok(StreamState {
            n,
            config,
            sketch_a,
            sketch_b,
            live: sampled.clone(),
            sampled,
            degree: vec![0; n],
            stored: vec![Vec::new(); n],
            ledger,
            seen: HashSet::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn config(&self) -> &StreamConfig {
        &self.config
    }

    pub fn k(&self) -> usize {
        self.sketch_a.k()
    }

    pub fn observed_degree(&self, v: usize) -> usize {
        self.degree[v]
    }

    /// Levels at which `v` is currently live.
    pub fn live_levels(&self, v: usize) -> u64 {
        self.live[v]
    }

    /// Levels at which `v` was sampled up front.
    pub fn sampled_levels(&self, v: usize) -> u64 {
        self.sampled[v]
    }

    /// Edges currently held for `v` (empty once every level of `v` died).
    pub fn stored_edges(&self, v: usize) -> &[usize] {
        &self.stored[v]
    }

    pub fn ledger(&self) -> &SpaceLedger {
        &self.ledger
    }

    pub fn space_report(&self) -> SpaceReport {
        SpaceReport {
            high_water_words: self.ledger.high_water(),
            budget_words: space_budget(self.n, self.config.sketch_epsilon()),
            current_words: self.ledger.current(),
            sketch_words: self.ledger.sketch_words(),
            edge_words: self.ledger.edge_words(),
            bookkeeping_words: self.ledger.bookkeeping_words(),
        }
    }

    /// Ingests one positive edge.
    pub fn ingest(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange { vertex: x, n: self.n });
            }
        }
        if u == v {
            return Err(Error::param(format!("self-loop on vertex {u}")));
        }
        let key = (u.min(v), u.max(v));
        if !self.seen.insert(key) {
            return Err(Error::DuplicateEdge(key.0, key.1));
        }
        self.sketch_a.add_edge(u, v);
        self.sketch_b.add_edge(u, v);
        self.observe(u, v);
        self.observe(v, u);
        Ok(())
    }

    fn observe(&mut self, x: usize, other: usize) {
        self.degree[x] += 1;
        let d = self.degree[x];
        let before = self.live[x];
        let mut live = before;
        while live != 0 && !sampling::survives(live.trailing_zeros() as usize, d) {
            live &= live - 1;
        }
        if live != before {
            self.live[x] = live;
            self.ledger.drop_levels((before ^ live).count_ones());
        }
        if live == 0 {
            if !self.stored[x].is_empty() {
                self.ledger.free_edges(self.stored[x].len());
                self.stored[x] = Vec::new();
            }
        } else {
            self.stored[x].push(other);
            self.ledger.store_edge();
        }
    }

    /// Runs the per-guess clustering on the accumulated state.
    pub fn finalize(self) -> StreamOutcome {
        let StreamState { n, config, sketch_a, sketch_b, sampled, degree, stored, ledger, .. } = self;
        let space = SpaceReport {
            high_water_words: ledger.high_water(),
            budget_words: space_budget(n, config.sketch_epsilon()),
            current_words: ledger.current(),
            sketch_words: ledger.sketch_words(),
            edge_words: ledger.edge_words(),
            bookkeeping_words: ledger.bookkeeping_words(),
        };
        let a = SimilaritySketches::close(sketch_a);
        let b = ObjectiveSketches::close(sketch_b);
        let (phi, eta) = (config.phi, config.eta);
        let t = 2 * phi;

        let is_high: Vec<bool> = degree.iter().map(|&d| !eta.within_three_plus(d as u64, phi)).collect();
        let high: Vec<usize> = (0..n).filter(|&v| is_high[v]).collect();
        let low: Vec<usize> = (0..n).filter(|&v| !is_high[v]).collect();

        let mut uf = UnionFind::new(high.len());
        for i in 0..high.len() {
            for j in i + 1..high.len() {
                if a.similar(high[i], high[j], t) {
                    uf.union(i, j);
                }
            }
        }
        let high_degree = group_by_root(&high, &mut uf);
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in high_degree.iter().enumerate() {
            for &v in part {
                part_of[v] = i;
            }
        }

        // w ∈ Cand(L_i) iff the high-degree vertices similar to w are exactly L_i.
        let mut cand_of = vec![usize::MAX; n];
        let mut candidates = vec![Vec::new(); high_degree.len()];
        for &w in &low {
            let similar: Vec<usize> = high.iter().copied().filter(|&v| a.similar(w, v, t)).collect();
            if let Some(&first) = similar.first() {
                let i = part_of[first];
                if high_degree[i] == similar {
                    cand_of[w] = i;
                    candidates[i].push(w);
                }
            }
        }
        assert_disjoint(n, &candidates);

        let in_s: Vec<bool> = (0..n).map(|v| sampled[v] >> sampling::final_level(degree[v]) & 1 == 1).collect();
        let bound = (3.0 + eta.as_f64()) * phi as f64;
        let mut open: Vec<bool> = is_high.iter().map(|h| !h).collect();
        let mut labels = vec![usize::MAX; n];
        let mut built = Vec::with_capacity(high_degree.len());
        let mut fallbacks = 0;
        let mut failed = false;

        for (i, part) in high_degree.iter().enumerate() {
            let mut ys: Vec<usize> = part.iter().chain(&candidates[i]).copied().filter(|&y| in_s[y]).collect();
            ys.sort_unstable();
            let mut accepted = None;
            for &y in &ys {
                debug_assert_eq!(stored[y].len(), degree[y], "sampled vertex lost edges");
                let mut members = part.clone();
                for &w in stored[y].iter().chain(std::iter::once(&y)) {
                    if open[w] && cand_of[w] == i && a.similar(w, y, t) {
                        members.push(w);
                    }
                }
                members.sort_unstable();
                members.dedup();
                if b.accepts(&members, bound) {
                    accepted = Some((y, members));
                    break;
                }
            }
            if accepted.is_none() && b.accepts(part, bound) {
                fallbacks += 1;
                accepted = Some((part[0], part.clone()));
            }
            let Some((pivot, members)) = accepted else {
                failed = true;
                break;
            };
            for &v in &members {
                open[v] = false;
                labels[v] = i;
            }
            built.push(BuiltCluster { high: part.clone(), pivot, members });
        }

        let verdict = if failed {
            PhiVerdict::OptAbovePhi
        } else {
            for (next, l) in (high_degree.len()..).zip(labels.iter_mut().filter(|l| **l == usize::MAX)) {
                *l = next;
            }
            PhiVerdict::Clustered(Clustering::from_labels(&labels))
        };
        StreamOutcome {
            phi,
            eta,
            verdict,
            high_degree,
            candidates,
            built,
            sampled: (0..n).filter(|&v| in_s[v]).collect(),
            fallbacks,
            similarity_queries: a.query_count(),
            objective_estimates: b.estimate_count(),
            space,
        }
    }
}

fn assert_disjoint(n: usize, candidates: &[Vec<usize>]) {
    let mut owner = vec![usize::MAX; n];
    for (i, cand) in candidates.iter().enumerate() {
        for &w in cand {
            assert!(owner[w] == usize::MAX, "vertex {w} is a candidate of clusters {} and {i}", owner[w]);
            owner[w] = i;
        }
    }
}

/// Result of one streaming pass at a fixed guess φ.
#[derive(Debug, Clone)]
pub struct StreamOutcome {
    pub phi: u64,
    pub eta: Eta,
    pub verdict: PhiVerdict,
    /// `L`, canonical order.
    pub high_degree: Vec<Vec<usize>>,
    /// `Cand(L_i)`, aligned with `high_degree`.
    pub candidates: Vec<Vec<usize>>,
    /// Accepted clusters; `pivot` is the sampled vertex whose neighborhood
    /// supplied the low-degree members.
    pub built: Vec<BuiltCluster>,
    /// `S`: vertices live at the level of their final degree.
    pub sampled: Vec<usize>,
    /// Clusters accepted as `L_i` alone after every sampled `y` failed.
    pub fallbacks: usize,
    pub similarity_queries: u64,
    pub objective_estimates: u64,
    pub space: SpaceReport,
}

impl StreamOutcome {
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::objective;
    use crate::graph::fixtures::{two_cliques, two_cliques_bridged};
    use crate::graph::{planted_instance, PositiveGraph};
    use crate::similarity::SketchSet;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn eta(x: f64) -> Eta {
        Eta::from_f64(x).unwrap()
    }

    fn run(g: &PositiveGraph, config: StreamConfig, edges: &[(usize, usize)]) -> StreamOutcome {
        let mut s = stream_init(g.n(), config).unwrap();
        for &(u, v) in edges {
            s.ingest(u, v).unwrap();
        }
        s.finalize()
    }

    #[test]
    fn two_cliques_in_any_order() {
        for g in [two_cliques(), two_cliques_bridged()] {
            let mut edges = g.edges().to_vec();
            let cfg = StreamConfig::new(1, eta(0.5), 3);
            let sorted = run(&g, cfg, &edges);
            edges.shuffle(&mut ChaCha8Rng::seed_from_u64(1));
            let shuffled = run(&g, cfg, &edges);
            let c = sorted.clustering().expect("OPT ≤ 1");
            assert_eq!(c.clusters(), &[(0..5).collect::<Vec<_>>(), (5..10).collect()]);
            assert_eq!(sorted.verdict, shuffled.verdict);
            assert_eq!(sorted.built, shuffled.built);
        }
    }

    #[test]
    fn low_degree_graph_gives_singletons() {
        let g = two_cliques();
        let out = run(&g, StreamConfig::new(2, eta(0.5), 0), g.edges());
        assert!(out.high_degree.is_empty());
        assert_eq!(out.clustering().unwrap(), &Clustering::singletons(10));
        assert_eq!(out.objective_estimates, 0);
    }

    #[test]
    fn sketches_match_offline_build() {
        let g = planted_instance(60, 3, 0.05, 2).unwrap().graph;
        let cfg = StreamConfig::new(4, eta(0.5), 11);
        let mut s = stream_init(g.n(), cfg).unwrap();
        let mut edges = g.edges().to_vec();
        edges.reverse();
        for (u, v) in edges {
            s.ingest(v, u).unwrap();
        }
        let offline = SketchSet::build(&g, cfg.sketch_epsilon(), derive_seed(11, 1), cfg.jl_constant).unwrap();
        let a = SimilaritySketches::close(s.sketch_a);
        for v in 0..g.n() {
            assert_eq!(a.sketch(v), offline.sketch(v));
        }
    }

    #[test]
    fn ingest_errors() {
        let mut s = stream_init(4, StreamConfig::new(1, eta(0.5), 0)).unwrap();
        s.ingest(0, 1).unwrap();
        assert!(matches!(s.ingest(1, 0), Err(Error::DuplicateEdge(0, 1))));
        assert!(matches!(s.ingest(0, 4), Err(Error::VertexOutOfRange { vertex: 4, .. })));
        assert!(s.ingest(2, 2).is_err());
        assert!(stream_init(1, StreamConfig::new(1, eta(0.5), 0)).is_err());
        assert!(stream_init(4, StreamConfig::new(1, Eta::ZERO, 0)).is_err());
    }

    #[test]
    fn degree_count_and_storage_rules() {
        let g = planted_instance(300, 3, 0.05, 8).unwrap().graph;
        let mut cfg = StreamConfig::new(5, eta(0.5), 2);
        cfg.c_sample = 0.5;
        let mut s = stream_init(g.n(), cfg).unwrap();
        for &(u, v) in g.edges() {
            s.ingest(u, v).unwrap();
        }
        assert_eq!((0..g.n()).map(|v| s.observed_degree(v)).sum::<usize>(), 2 * g.m());
        let mut entries = 0;
        for v in 0..g.n() {
            let d = s.observed_degree(v);
            let live = s.live_levels(v);
            assert_eq!(live & !s.sampled_levels(v), 0);
            for level in 0..64 {
                if s.sampled_levels(v) >> level & 1 == 1 {
                    assert_eq!(live >> level & 1 == 1, sampling::survives(level, d), "v {v} level {level}");
                }
            }
            if live != 0 {
                let mut got = s.stored_edges(v).to_vec();
                got.sort_unstable();
                assert_eq!(got, g.neighbors(v));
            } else {
                assert!(s.stored_edges(v).is_empty());
            }
            entries += s.stored_edges(v).len() as u64;
        }
        let r = s.space_report();
        assert_eq!(r.edge_words, 2 * entries);
        let live_pairs: u64 = (0..g.n()).map(|v| s.live_levels(v).count_ones() as u64).sum();
        assert_eq!(r.bookkeeping_words, g.n() as u64 + live_pairs);
        assert_eq!(r.sketch_words, 2 * (s.k() * g.n()) as u64);
    }

    #[test]
    fn pruning_frees_words() {
        // c·ln 40 ≈ 2.03: levels 0 and 1 are certain, higher ones are not.
        let mut cfg = StreamConfig::new(1, eta(0.5), 0);
        cfg.c_sample = 0.55;
        let mut s = stream_init(40, cfg).unwrap();
        let v = (0..40).find(|&v| s.sampled_levels(v) == 0b11).expect("some vertex sampled only at levels 0 and 1");
        let others: Vec<usize> = (0..40).filter(|&x| x != v).take(5).collect();
        for &x in &others[..4] {
            s.ingest(v, x).unwrap();
        }
        assert_eq!(s.live_levels(v), 0b10);
        assert_eq!(s.stored_edges(v).len(), 4);
        let before = s.ledger().current();
        s.ingest(v, others[4]).unwrap();
        assert_eq!(s.live_levels(v), 0);
        assert!(s.stored_edges(v).is_empty());
        // v frees four entries and one level; the other endpoint stores the new edge.
        assert_eq!(s.ledger().current(), before - 8 - 1 + 2);
        assert!(s.ledger().high_water() >= before);
    }

    #[test]
    fn empty_graph_space() {
        let s = stream_init(50, StreamConfig::new(1, eta(0.5), 0)).unwrap();
        let live: u64 = (0..50).map(|v| s.sampled_levels(v).count_ones() as u64).sum();
        let r = s.space_report();
        assert_eq!(r.high_water_words, 2 * (s.k() * 50) as u64 + 50 + live);
        let out = s.finalize();
        assert_eq!(out.clustering().unwrap(), &Clustering::singletons(50));
    }

    #[test]
    fn planted_success_and_certificate() {
        let inst = planted_instance(120, 4, 0.01, 5).unwrap();
        let g = &inst.graph;
        let truth = Clustering::from_labels(&inst.truth);
        let phi = objective(g, &truth).unwrap().obj;
        let e = eta(0.5);
        let out = run(g, StreamConfig::new(phi, e, 7), g.edges());
        let c = out.clustering().expect("OPT ≤ φ");
        let obj = objective(g, c).unwrap().obj as f64;
        assert!(obj <= (3.0 + e.as_f64()) * (1.0 + e.as_f64() / 2.0) * phi as f64);
        assert!(out.space.within_budget());
        for (i, b) in out.built.iter().enumerate() {
            for w in &b.members {
                assert!(b.high.contains(w) || out.candidates[i].contains(w));
            }
        }
    }
}
