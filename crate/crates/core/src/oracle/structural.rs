use std::fmt;

use super::{closed_masks, cluster_masks, partitions::for_each_partition};
use crate::cluster::{cluster_phi, HighDegreeMode};
use crate::error::Result;
use crate::eta::Eta;
use crate::graph::PositiveGraph;
use crate::similarity::SimilarityOracle;

/// Largest `n` accepted by [`check_structural`].
pub const MAX_STRUCTURAL: usize = 12;
/// Up to this size every clustering with objective `≤ φ` is checked.
const ALL_WITNESSES_UP_TO: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// (a) same cluster ⇒ `|N[x] Δ N[y]| ≤ 2φ`.
    SameCluster,
    /// (b) different clusters ⇒ `|N[x] ∩ N[y]| ≤ 2φ`.
    CrossCluster,
    /// (c) high `u, v` apart, low `w ∈ C*_u` ⇒ `|N[v] Δ N[w]| > 2φ`.
    NoStealing,
    /// (d) as (c) with `|N[w] ∩ N[v] ∩ N[u]| = φ + t`, `t > 0` ⇒ `|N[w] Δ N[u]| ≤ 2(φ − t)`.
    LargeIntersection,
    /// ClusterPhi failed at a φ admitting a clustering of objective `≤ φ`.
    Completeness,
    /// Some `L_i` is not the high-degree part of any witness cluster.
    HighDegreeMatch,
    /// (e) `C*_i ∩ N(u_i) ⊆ C_i`.
    Inclusion,
    /// (e) `|N[u_i] Δ C_i| ≤ φ` and `|C*_i Δ C_i| ≤ φ`.
    Closeness,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: Check,
    /// Index of the witness clustering in enumeration order.
    pub witness: usize,
    pub vertices: Vec<usize>,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} (witness {}, vertices {:?}): {}", self.check, self.witness, self.vertices, self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuralReport {
    pub phi: u64,
    /// Witness clusterings examined.
    pub witnesses: usize,
    /// No clustering with objective `≤ φ` exists.
    pub vacuous: bool,
    pub violations: Vec<Violation>,
}

impl StructuralReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Threshold offsets for mutation testing. All zero is the true statement;
/// a nonzero offset asserts something stronger than what holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Perturbation {
    pub same_cluster: i64,
    pub cross_cluster: i64,
    pub no_stealing: i64,
    pub large_intersection: i64,
    pub closeness: i64,
    /// Check `C*_i ⊆ C_i` instead of `C*_i ∩ N(u_i) ⊆ C_i`.
    pub inclusion_whole_cluster: bool,
}

pub fn check_structural(g: &PositiveGraph, phi: u64) -> Result<StructuralReport> {
    check_structural_with(g, phi, &Perturbation::default())
}

/// Checks the structural facts that hold for every clustering `C*` with
/// `obj(C*) ≤ φ` (η = 0, high degree meaning `deg > 3φ`), and runs exact
/// ClusterPhi at `φ` to compare its clusters against each witness.
pub fn check_structural_with(g: &PositiveGraph, phi: u64, p: &Perturbation) -> Result<StructuralReport> {
    let closed = closed_masks(g, MAX_STRUCTURAL)?;
    let n = g.n();
    let all = n <= ALL_WITNESSES_UP_TO;

    let mut witnesses: Vec<Vec<usize>> = Vec::new();
    for_each_partition(n, |labels| {
        if (all || witnesses.is_empty()) && max_rho(&closed, labels) <= phi {
            witnesses.push(labels.to_vec());
        }
    });
    let mut report = StructuralReport { phi, witnesses: witnesses.len(), vacuous: witnesses.is_empty(), violations: Vec::new() };
    if report.vacuous {
        return Ok(report);
    }

    let oracle = SimilarityOracle::exact(g, Eta::ZERO);
    let outcome = cluster_phi(g, phi, Eta::ZERO, &oracle, HighDegreeMode::Token);
    if !outcome.succeeded() {
        report.violations.push(Violation {
            check: Check::Completeness,
            witness: 0,
            vertices: Vec::new(),
            detail: format!("ClusterPhi reported OPT > {phi} (objective {})", outcome.obj),
        });
    }
    let built: Vec<(u32, usize, u32)> =
        outcome.built.iter().map(|b| (to_mask(&b.high), b.pivot, to_mask(&b.members))).collect();

    let high: u32 = (0..n).filter(|&v| g.degree(v) as u64 > 3 * phi).fold(0, |m, v| m | (1 << v));
    let two_phi = 2 * phi as i64;
    let phi_i = phi as i64;
    let sym = |a: usize, b: usize| (closed[a] ^ closed[b]).count_ones() as i64;

    for (wi, labels) in witnesses.iter().enumerate() {
        let clusters = cluster_masks(labels);
        let mut fail = |check, vertices: Vec<usize>, detail: String| {
            report.violations.push(Violation { check, witness: wi, vertices, detail });
        };

        for x in 0..n {
            for y in x + 1..n {
                if labels[x] == labels[y] {
                    let d = sym(x, y);
                    if d > two_phi + p.same_cluster {
                        fail(Check::SameCluster, vec![x, y], format!("|N[x] Δ N[y]| = {d}"));
                    }
                } else {
                    let c = (closed[x] & closed[y]).count_ones() as i64;
                    if c > two_phi + p.cross_cluster {
                        fail(Check::CrossCluster, vec![x, y], format!("|N[x] ∩ N[y]| = {c}"));
                    }
                }
            }
        }

        for u in bits(high) {
            for v in bits(high) {
                if labels[u] == labels[v] {
                    continue;
                }
                for w in bits(clusters[labels[u]] & !high) {
                    let d = sym(v, w);
                    if d <= two_phi + p.no_stealing {
                        fail(Check::NoStealing, vec![u, v, w], format!("|N[v] Δ N[w]| = {d}"));
                    }
                    let t = (closed[w] & closed[v] & closed[u]).count_ones() as i64 - phi_i;
                    if t > 0 {
                        let d = sym(w, u);
                        if d > 2 * (phi_i - t) + p.large_intersection {
                            fail(Check::LargeIntersection, vec![u, v, w], format!("t = {t}, |N[w] Δ N[u]| = {d}"));
                        }
                    }
                }
            }
        }

        for &(l_mask, pivot, c_mask) in &built {
            let Some(star) = clusters.iter().copied().find(|&c| c & high == l_mask) else {
                fail(Check::HighDegreeMatch, bits(l_mask).collect(), "no witness cluster has this high-degree part".into());
                continue;
            };
            let open_nb = closed[pivot] & !(1 << pivot);
            let must = if p.inclusion_whole_cluster { star } else { star & open_nb };
            if must & !c_mask != 0 {
                fail(Check::Inclusion, bits(must & !c_mask).collect(), format!("pivot {pivot}: missing from C_i"));
            }
            let to_pivot = (closed[pivot] ^ c_mask).count_ones() as i64;
            let to_star = (star ^ c_mask).count_ones() as i64;
            if to_pivot > phi_i + p.closeness || to_star > phi_i + p.closeness {
                fail(
                    Check::Closeness,
                    vec![pivot],
                    format!("|N[u_i] Δ C_i| = {to_pivot}, |C*_i Δ C_i| = {to_star}"),
                );
            }
        }
    }
    Ok(report)
}

fn max_rho(closed: &[u32], labels: &[usize]) -> u64 {
    let clusters = cluster_masks(labels);
    closed.iter().zip(labels).map(|(&nb, &l)| (nb ^ clusters[l]).count_ones() as u64).max().unwrap_or(0)
}

fn to_mask(vs: &[usize]) -> u32 {
    vs.iter().fold(0, |m, &v| m | (1 << v))
}

fn bits(mut m: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{path3, triangle, two_cliques_bridged};

    #[test]
    fn triangle_passes() {
        let r = check_structural(&triangle(), 0).unwrap();
        assert!(!r.vacuous);
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn below_opt_is_vacuous() {
        let r = check_structural(&path3(), 0).unwrap();
        assert!(r.vacuous && r.passed());
    }

    #[test]
    fn path_at_opt_passes_and_mutation_bites() {
        let g = path3();
        assert!(check_structural(&g, 1).unwrap().passed());
        // Witness {0,1,2} has |N[0] Δ N[2]| = 2 > 2φ − 1.
        let mutated = Perturbation { same_cluster: -1, ..Default::default() };
        let r = check_structural_with(&g, 1, &mutated).unwrap();
        assert!(r.violations.iter().any(|v| v.check == Check::SameCluster && v.vertices == [0, 2]));
    }

    #[test]
    fn bridged_cliques_single_witness() {
        let r = check_structural(&two_cliques_bridged(), 1).unwrap();
        assert_eq!(r.witnesses, 1);
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn size_guard() {
        assert!(check_structural(&PositiveGraph::empty(13), 0).is_err());
    }

    #[test]
    fn bit_iteration() {
        assert_eq!(bits(0b1010_0001).collect::<Vec<_>>(), vec![0, 5, 7]);
    }
}
