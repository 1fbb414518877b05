use super::{stream_init, StreamConfig, StreamOutcome};
use crate::cluster::{Clustering, PhiVerdict};
use crate::error::Result;
use crate::eta::Eta;
use crate::similarity::DEFAULT_JL_CONSTANT;
use crate::stream::DEFAULT_SAMPLE_CONSTANT;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StreamSettings {
    pub eta: Eta,
    pub seed: u64,
    pub jl_constant: f64,
    pub c_sample: f64,
}

impl StreamSettings {
    pub fn new(eta: Eta, seed: u64) -> Self {
        StreamSettings { eta, seed, jl_constant: DEFAULT_JL_CONSTANT, c_sample: DEFAULT_SAMPLE_CONSTANT }
    }

    pub fn at(&self, phi: u64) -> StreamConfig {
        StreamConfig { phi, eta: self.eta, seed: self.seed, jl_constant: self.jl_constant, c_sample: self.c_sample }
    }
}

#[derive(Debug, Clone)]
pub struct StreamSolution {
    pub clustering: Clustering,
    pub phi_final: u64,
    pub eta: Eta,
    /// Passes over the stream, one per probed φ.
    pub passes: usize,
    /// Largest ledger high-water mark over all passes.
    pub peak_words: u64,
    pub budget_words: u64,
    pub similarity_queries: u64,
    pub objective_estimates: u64,
    pub sketch_dim: usize,
}

/// Binary search over φ ∈ [0, n], replaying the stream once per probe.
///
/// `replay` must yield the same multiset of edges every time it is called.
pub fn stream_solve<F, I>(n: usize, settings: StreamSettings, mut replay: F) -> Result<StreamSolution>
where
    F: FnMut() -> Result<I>,
    I: IntoIterator<Item = Result<(usize, usize)>>,
{
    let mut solution = StreamSolution {
        clustering: Clustering::singletons(n),
        phi_final: 0,
        eta: settings.eta,
        passes: 0,
        peak_words: 0,
        budget_words: 0,
        similarity_queries: 0,
        objective_estimates: 0,
        sketch_dim: 0,
    };
    if n < 2 {
        return Ok(solution);
    }
    let mut pass = |phi: u64, sol: &mut StreamSolution| -> Result<StreamOutcome> {
        let mut state = stream_init(n, settings.at(phi))?;
        sol.sketch_dim = state.k();
        for edge in replay()? {
            let (u, v) = edge?;
            state.ingest(u, v)?;
        }
        let out = state.finalize();
        sol.passes += 1;
        sol.peak_words = sol.peak_words.max(out.space.high_water_words);
        sol.budget_words = out.space.budget_words;
        sol.similarity_queries += out.similarity_queries;
        sol.objective_estimates += out.objective_estimates;
        Ok(out)
    };

    let top = n as u64;
    let first = pass(top, &mut solution)?;
    let mut best = match first.verdict {
        PhiVerdict::Clustered(c) => c,
        PhiVerdict::OptAbovePhi => unreachable!("every vertex is low-degree at φ = n"),
    };
    let (mut lo, mut hi) = (0u64, top);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match pass(mid, &mut solution)?.verdict {
            PhiVerdict::Clustered(c) => {
                hi = mid;
                best = c;
            }
            PhiVerdict::OptAbovePhi => lo = mid + 1,
        }
    }
    solution.clustering = best;
    solution.phi_final = hi;
    Ok(solution)
}
