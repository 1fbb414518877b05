use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Default `c` in the level probability `min(1, c·ln n / 2^i)`.
pub const DEFAULT_SAMPLE_CONSTANT: f64 = 8.0;

/// Levels `0..=⌈log₂ n⌉`.
pub fn level_count(n: usize) -> usize {
    ceil_log2(n.max(1)) as usize + 1
}

/// Inclusion probability at `level`: `min(1, c·ln n / 2^level)`.
pub fn level_probability(level: usize, n: usize, c_sample: f64) -> f64 {
    (c_sample * (n.max(2) as f64).ln() / 2f64.powi(level as i32)).min(1.0)
}

/// The level that decides membership in `S` for a vertex of final degree `d`:
/// `⌈log₂ d⌉`, and 0 for `d ≤ 1`.
pub fn final_level(d: usize) -> usize {
    ceil_log2(d.max(1)) as usize
}

/// Level `i` stays live while the observed degree is at most `2^{i+1}`.
pub(crate) fn survives(level: usize, degree: usize) -> bool {
    level >= 63 || degree <= 1usize << (level + 1)
}

/// Per-vertex bitmask of sampled levels, drawn independently.
pub(crate) fn draw_levels(n: usize, seed: u64, c_sample: f64) -> Vec<u64> {
    let levels = level_count(n);
    let probs: Vec<f64> = (0..levels).map(|i| level_probability(i, n, c_sample)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| probs.iter().enumerate().fold(0u64, |m, (i, &p)| if p >= 1.0 || rng.gen::<f64>() < p { m | 1 << i } else { m }))
        .collect()
}

fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}
