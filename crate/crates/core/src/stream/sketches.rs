use std::cell::Cell;

use crate::similarity::{add_signed, sketch_dimension, squared_distance, RowSource};

/// Running sums `M · N⃗[v]` for one ±1 matrix `M`, updated one edge at a time.
#[derive(Debug)]
pub(crate) struct Accumulator {
    rows: RowSource,
    epsilon: f64,
    data: Vec<i32>,
    scratch: (Vec<u64>, Vec<u64>),
}

impl Accumulator {
    pub(crate) fn new(n: usize, epsilon: f64, seed: u64, jl_constant: f64) -> Self {
        let k = sketch_dimension(n, epsilon, jl_constant);
        let rows = RowSource::new(seed, k);
        let words = rows.words();
        Accumulator { rows, epsilon, data: vec![0; n * k], scratch: (vec![0; words], vec![0; words]) }
    }

    pub(crate) fn k(&self) -> usize {
        self.rows.k()
    }

    pub(crate) fn words(&self) -> u64 {
        self.data.len() as u64
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        let k = self.k();
        let (bu, bv) = &mut self.scratch;
        self.rows.fill_bits(u, bu);
        self.rows.fill_bits(v, bv);
        add_signed(&mut self.data[u * k..(u + 1) * k], bv, 1);
        add_signed(&mut self.data[v * k..(v + 1) * k], bu, 1);
    }

    /// Adds `M_v` to every `M · N⃗[v]`, turning open into closed neighborhoods.
    fn add_self_terms(&mut self) {
        let k = self.k();
        let n = self.data.len() / k.max(1);
        let bits = &mut self.scratch.0;
        for v in 0..n {
            self.rows.fill_bits(v, bits);
            add_signed(&mut self.data[v * k..(v + 1) * k], bits, 1);
        }
    }

    fn sketch(&self, v: usize) -> &[i32] {
        let k = self.k();
        &self.data[v * k..(v + 1) * k]
    }

    fn norm(&self) -> f64 {
        (1.0 + self.epsilon) * self.k() as f64
    }
}

/// Largest squared distance `s` with `s / norm ≤ bound`.
fn squared_limit(norm: f64, bound: f64) -> u64 {
    let mut s = (bound * norm).floor().max(0.0) as u64;
    while (s + 1) as f64 / norm <= bound {
        s += 1;
    }
    while s > 0 && s as f64 / norm > bound {
        s -= 1;
    }
    s
}

/// `‖a − b‖² ≤ limit`, stopping early once the partial sum exceeds it.
fn within_limit(a: &[i32], b: &[i32], limit: u64) -> bool {
    const BLOCK: usize = 256;
    let mut acc = 0u64;
    for (x, y) in a.chunks(BLOCK).zip(b.chunks(BLOCK)) {
        acc += squared_distance(x, y);
        if acc > limit {
            return false;
        }
    }
    true
}

/// Closed-neighborhood sketches under matrix `A`, used only to build clusters.
#[derive(Debug)]
pub struct SimilaritySketches {
    acc: Accumulator,
    queries: Cell<u64>,
}

impl SimilaritySketches {
    pub(crate) fn close(mut acc: Accumulator) -> Self {
        acc.add_self_terms();
        SimilaritySketches { acc, queries: Cell::new(0) }
    }

    pub fn k(&self) -> usize {
        self.acc.k()
    }

    pub fn sketch(&self, v: usize) -> &[i32] {
        self.acc.sketch(v)
    }

    /// `‖A·N⃗[u] − A·N⃗[v]‖² / ((1 + ε)k)`.
    pub fn distance_estimate(&self, u: usize, v: usize) -> f64 {
        squared_distance(self.sketch(u), self.sketch(v)) as f64 / self.acc.norm()
    }

    /// The similarity query at threshold `t`; counted.
    pub fn similar(&self, u: usize, v: usize, t: u64) -> bool {
        self.queries.set(self.queries.get() + 1);
        u == v || within_limit(self.sketch(u), self.sketch(v), squared_limit(self.acc.norm(), t as f64))
    }

    pub fn query_count(&self) -> u64 {
        self.queries.get()
    }
}

/// Closed-neighborhood sketches under the independent matrix `B`, used only
/// to estimate `ρ_{C}(u) = |C Δ N[u]|` for an already built cluster `C`.
#[derive(Debug)]
pub struct ObjectiveSketches {
    acc: Accumulator,
    estimates: Cell<u64>,
}

impl ObjectiveSketches {
    pub(crate) fn close(mut acc: Accumulator) -> Self {
        acc.add_self_terms();
        ObjectiveSketches { acc, estimates: Cell::new(0) }
    }

    /// `B · C⃗ = Σ_{u ∈ C} B_u`.
    pub fn cluster_sketch(&self, cluster: &[usize]) -> Vec<i32> {
        let mut out = vec![0; self.acc.k()];
        let mut bits = vec![0; self.acc.rows.words()];
        for &u in cluster {
            self.acc.rows.fill_bits(u, &mut bits);
            add_signed(&mut out, &bits, 1);
        }
        out
    }

    /// `‖B·C⃗ − B·N⃗[u]‖² / ((1 + ε)k)`; counted.
    pub fn disagreement_estimate(&self, cluster_sketch: &[i32], u: usize) -> f64 {
        self.estimates.set(self.estimates.get() + 1);
        squared_distance(cluster_sketch, self.acc.sketch(u)) as f64 / self.acc.norm()
    }

    /// Whether every member's estimated disagreement is at most `bound`.
    pub fn accepts(&self, cluster: &[usize], bound: f64) -> bool {
        let cs = self.cluster_sketch(cluster);
        cluster.iter().all(|&u| self.disagreement_estimate(&cs, u) <= bound)
    }

    pub fn estimate_count(&self) -> u64 {
        self.estimates.get()
    }
}
