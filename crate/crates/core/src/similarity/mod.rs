//! η-similarity queries `Δ_η(u, v, t)` over closed neighborhoods.
//!
//! A query must answer `true` when `|N[u] Δ N[v]| ≤ t`, `false` when
//! `|N[u] Δ N[v]| > (1 + η)·t`, and may answer either way in between.
//! Two backends implement the contract: exact sorted-merge (η = 0) and
//! random ±1 projections.

mod sketch;

pub use sketch::{sketch_dimension, RowSource, SketchSet, DEFAULT_JL_CONSTANT};
pub(crate) use sketch::{add_signed, squared_distance};

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::Result;
use crate::eta::{eta_for_sketch_epsilon, Eta};
use crate::graph::PositiveGraph;

const EMPTY: u64 = u64::MAX;

#[derive(Debug)]
pub enum Backend {
    Exact { eta: Eta },
    Sketch(SketchSet),
}

/// Answers η-similarity queries and counts them.
///
/// Queries may run concurrently; the counter is atomic. For the sketch
/// backend the squared distance of every positive edge is memoized the first
/// time it is asked for, since it does not depend on the threshold.
#[derive(Debug)]
pub struct SimilarityOracle<'g> {
    graph: &'g PositiveGraph,
    backend: Backend,
    queries: AtomicU64,
    edge_distance: Vec<AtomicU64>,
}

impl<'g> SimilarityOracle<'g> {
    /// Exact backend. `eta` only sets the early-exit cap `⌈(1 + η)t⌉`;
    /// answers are always `|N[u] Δ N[v]| ≤ t`.
    pub fn exact(graph: &'g PositiveGraph, eta: Eta) -> Self {
        SimilarityOracle { graph, backend: Backend::Exact { eta }, queries: AtomicU64::new(0), edge_distance: Vec::new() }
    }

    /// Sketch backend over prebuilt sketches of `graph`.
    pub fn sketch(graph: &'g PositiveGraph, sketches: SketchSet) -> Self {
        assert_eq!(graph.n(), sketches.n(), "sketches were built for a different graph");
        let edge_distance = (0..graph.slot_count()).map(|_| AtomicU64::new(EMPTY)).collect();
        SimilarityOracle { graph, backend: Backend::Sketch(sketches), queries: AtomicU64::new(0), edge_distance }
    }

    /// Sketch backend sound for both `η` and `η/2` queries: one sketch set at
    /// `ε' = (η/2)/(2 + η/2)`.
    pub fn sketch_for_eta(graph: &'g PositiveGraph, eta: Eta, seed: u64, jl_constant: f64) -> Result<Self> {
        let epsilon = eta.half().sketch_epsilon();
        let sketches = SketchSet::build(graph, epsilon, seed, jl_constant)?;
        Ok(Self::sketch(graph, sketches))
    }

    pub fn graph(&self) -> &'g PositiveGraph {
        self.graph
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.backend, Backend::Exact { .. })
    }

    /// Largest η for which this oracle's answers satisfy the query contract.
    pub fn contract_eta(&self) -> f64 {
        match &self.backend {
            Backend::Exact { .. } => 0.0,
            Backend::Sketch(s) => eta_for_sketch_epsilon(s.epsilon()),
        }
    }

    pub fn query_count(&self) -> u64 {
        self.queries.load(Ordering::Relaxed)
    }

    /// `Δ_η(u, v, t)` with range checks.
    pub fn eta_similarity_query(&self, u: usize, v: usize, t: u64) -> Result<bool> {
        self.graph.check_vertex(u)?;
        self.graph.check_vertex(v)?;
        Ok(self.query(u, v, t))
    }

    /// `Δ_η(u, v, t)`; panics if a vertex is out of range.
    pub fn query(&self, u: usize, v: usize, t: u64) -> bool {
        self.queries.fetch_add(1, Ordering::Relaxed);
        match &self.backend {
            Backend::Exact { eta } => {
                let cap = eta.ceil_one_plus(t);
                let cap = usize::try_from(cap).unwrap_or(usize::MAX);
                (self.graph.symdiff_unchecked(u, v, Some(cap)) as u64) <= t
            }
            Backend::Sketch(s) => s.normalize(self.sketch_distance(s, u, v)) <= t as f64,
        }
    }

    fn sketch_distance(&self, s: &SketchSet, u: usize, v: usize) -> u64 {
        if u == v {
            return 0;
        }
        let (a, b) = (u.min(v), u.max(v));
        match self.graph.edge_slot(a, b) {
            Some(slot) => {
                let cell = &self.edge_distance[slot];
                let cached = cell.load(Ordering::Relaxed);
                if cached != EMPTY {
                    return cached;
                }
                let d = s.squared_distance(a, b);
                cell.store(d, Ordering::Relaxed);
                d
            }
            None => s.squared_distance(a, b),
        }
    }
}
