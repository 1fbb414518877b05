use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::PositiveGraph;

/// Default constant `C` in `k = ⌈C · ln n / ε²⌉`.
pub const DEFAULT_JL_CONSTANT: f64 = 8.0;

/// Sketch dimension `k = ⌈C · ln n / ε²⌉` (at least 1).
pub fn sketch_dimension(n: usize, epsilon: f64, jl_constant: f64) -> usize {
    let n = n.max(2) as f64;
    ((jl_constant * n.ln() / (epsilon * epsilon)).ceil() as usize).max(1)
}

/// Seeded source of the ±1 column vectors `A_v ∈ {−1, +1}^k`.
///
/// Column `v` is the ChaCha8 stream number `v` under `seed`, so any column
/// can be regenerated on demand without materializing the `k × n` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowSource {
    seed: u64,
    k: usize,
}

impl RowSource {
    pub fn new(seed: u64, k: usize) -> Self {
        RowSource { seed, k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn words(&self) -> usize {
        self.k.div_ceil(64)
    }

    /// Writes the sign bits of `A_v` (bit set ⇔ entry `+1`) into `out`.
    pub fn fill_bits(&self, v: usize, out: &mut [u64]) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(v as u64);
        for w in out.iter_mut() {
            *w = rng.next_u64();
        }
    }

    pub fn bits(&self, v: usize) -> Vec<u64> {
        let mut out = vec![0; self.words()];
        self.fill_bits(v, &mut out);
        out
    }

    /// `A_v` as explicit ±1 entries.
    pub fn column(&self, v: usize) -> Vec<i32> {
        let mut acc = vec![0; self.k];
        add_signed(&mut acc, &self.bits(v), 1);
        acc
    }
}

/// `acc += sign · (±1 vector encoded by bits)`.
#[inline]
pub(crate) fn add_signed(acc: &mut [i32], bits: &[u64], sign: i32) {
    for (chunk, &w) in acc.chunks_mut(64).zip(bits) {
        for (j, a) in chunk.iter_mut().enumerate() {
            *a += sign * ((((w >> j) & 1) as i32) * 2 - 1);
        }
    }
}

#[inline]
pub(crate) fn squared_distance(a: &[i32], b: &[i32]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = (x - y) as i64;
            (d * d) as u64
        })
        .sum()
}

/// Per-vertex sketches `A · N⃗[x] = Σ_{v ∈ N[x]} A_v`.
#[derive(Debug, Clone)]
pub struct SketchSet {
    n: usize,
    k: usize,
    epsilon: f64,
    seed: u64,
    jl_constant: f64,
    data: Vec<i32>,
}

impl SketchSet {
    /// One gather pass over every closed neighborhood: `O((m + n)·k)` work.
    pub fn build(g: &PositiveGraph, epsilon: f64, seed: u64, jl_constant: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 1.0) {
            return Err(Error::param(format!("sketch epsilon = {epsilon} must lie in (0, 1)")));
        }
        if g.n() < 2 {
            return Err(Error::param("sketches need n >= 2"));
        }
        if !(jl_constant > 0.0 && jl_constant.is_finite()) {
            return Err(Error::param(format!("JL constant = {jl_constant} must be positive")));
        }
        let n = g.n();
        let k = sketch_dimension(n, epsilon, jl_constant);
        let rows = RowSource::new(seed, k);
        let words = rows.words();

        let mut bits = vec![0u64; n * words];
        bits.par_chunks_mut(words).enumerate().for_each(|(v, out)| rows.fill_bits(v, out));

        let mut data = vec![0i32; n * k];
        data.par_chunks_mut(k).enumerate().for_each(|(x, acc)| {
            add_signed(acc, &bits[x * words..(x + 1) * words], 1);
            for &v in g.neighbors(x) {
                add_signed(acc, &bits[v * words..(v + 1) * words], 1);
            }
        });
        Ok(SketchSet { n, k, epsilon, seed, jl_constant, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn jl_constant(&self) -> f64 {
        self.jl_constant
    }

    pub fn rows(&self) -> RowSource {
        RowSource::new(self.seed, self.k)
    }

    #[inline]
    pub fn sketch(&self, x: usize) -> &[i32] {
        &self.data[x * self.k..(x + 1) * self.k]
    }

    /// `‖sketch[u] − sketch[v]‖²₂`, exact integer arithmetic.
    #[inline]
    pub fn squared_distance(&self, u: usize, v: usize) -> u64 {
        if u == v {
            return 0;
        }
        squared_distance(self.sketch(u), self.sketch(v))
    }

    /// `‖sketch[u] − sketch[v]‖²₂ / ((1 + ε)·k)`.
    pub fn distance_estimate(&self, u: usize, v: usize) -> Result<f64> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange { vertex: w, n: self.n });
            }
        }
        Ok(self.normalize(self.squared_distance(u, v)))
    }

    #[inline]
    pub(crate) fn normalize(&self, squared: u64) -> f64 {
        squared as f64 / ((1.0 + self.epsilon) * self.k as f64)
    }
}
