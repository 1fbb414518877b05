//! Exhaustive ground truth for small instances.
//!
//! Everything here enumerates set partitions, so it is limited to a dozen
//! vertices. Closed neighborhoods and clusters are held as bitmasks, which
//! makes `ρ(x) = |N[x] Δ C_x|` a single popcount.

mod partitions;
mod structural;

pub use partitions::{bell_number, enumerate_partitions, Partitions, MAX_ENUMERATION};
pub use structural::{check_structural, check_structural_with, Check, Perturbation, StructuralReport, Violation, MAX_STRUCTURAL};

use crate::cluster::Clustering;
use crate::error::{Error, Result};
use crate::graph::PositiveGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessPolicy {
    #[default]
    One,
    All,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptResult {
    pub opt: u64,
    /// Optimal clusterings, in enumeration order.
    pub witnesses: Vec<Clustering>,
}

/// `OPT = min over all partitions of max_x ρ(x)`, keeping one witness.
pub fn brute_force_opt(g: &PositiveGraph) -> Result<OptResult> {
    brute_force_opt_with(g, WitnessPolicy::One)
}

pub fn brute_force_opt_with(g: &PositiveGraph, policy: WitnessPolicy) -> Result<OptResult> {
    let masks = closed_masks(g, MAX_ENUMERATION)?;
    let mut best = u64::MAX;
    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    partitions::for_each_partition(g.n(), |labels| {
        let bound = match policy {
            WitnessPolicy::One => best.saturating_sub(1),
            WitnessPolicy::All => best,
        };
        if let Some(obj) = objective_at_most(&masks, labels, bound) {
            if obj < best {
                best = obj;
                witnesses.clear();
            }
            if policy == WitnessPolicy::All || witnesses.is_empty() {
                witnesses.push(labels.to_vec());
            }
        }
    });
    Ok(OptResult { opt: best, witnesses: witnesses.iter().map(|l| Clustering::from_labels(l)).collect() })
}

/// Every clustering with objective at most `bound`.
pub fn clusterings_within(g: &PositiveGraph, bound: u64) -> Result<Vec<Clustering>> {
    let masks = closed_masks(g, MAX_ENUMERATION)?;
    let mut out = Vec::new();
    partitions::for_each_partition(g.n(), |labels| {
        if objective_at_most(&masks, labels, bound).is_some() {
            out.push(Clustering::from_labels(labels));
        }
    });
    Ok(out)
}

pub(crate) fn closed_masks(g: &PositiveGraph, limit: usize) -> Result<Vec<u32>> {
    if g.n() > limit {
        return Err(Error::TooLarge { n: g.n(), limit });
    }
    Ok((0..g.n()).map(|x| g.neighbors(x).iter().fold(1u32 << x, |m, &y| m | (1 << y))).collect())
}

pub(crate) fn cluster_masks(labels: &[usize]) -> Vec<u32> {
    let k = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut out = vec![0u32; k];
    for (v, &l) in labels.iter().enumerate() {
        out[l] |= 1 << v;
    }
    out
}

/// `Some(obj)` if the partition's objective is at most `bound`.
fn objective_at_most(closed: &[u32], labels: &[usize], bound: u64) -> Option<u64> {
    let mut clusters = [0u32; 32];
    for (v, &l) in labels.iter().enumerate() {
        clusters[l] |= 1 << v;
    }
    let mut obj = 0u64;
    for (x, &nb) in closed.iter().enumerate() {
        let rho = (nb ^ clusters[labels[x]]).count_ones() as u64;
        if rho > bound {
            return None;
        }
        obj = obj.max(rho);
    }
    Some(obj)
}
