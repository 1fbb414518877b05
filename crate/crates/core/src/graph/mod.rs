//! Positive-edge graph `G⁺`, its text format, and exact neighborhood operations.
//!
//! Negative edges are never stored: every unordered pair that is not a
//! positive edge is implicitly negative.

mod components;
mod planted;

pub use components::{connected_components, UnionFind};
pub(crate) use components::group_by_root;
pub use planted::{planted_instance, PlantedInstance};

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::io::BufRead;

use crate::eta::Eta;
use crate::error::{Error, Result};

/// Immutable graph with ascending CSR adjacency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
}

impl PositiveGraph {
    /// Builds the graph from arbitrary pairs. Self-loops and out-of-range
    /// endpoints are rejected; duplicates (in either orientation) are collapsed.
    pub fn from_edges(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut edges = Vec::new();
        for (u, v) in pairs {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::param(format!("self-loop on vertex {u}")));
            }
            edges.push((u.min(v), u.max(v)));
        }
        Ok(Self::from_normalized(n, edges).0)
    }

    /// `edges` must already be oriented `u < v`; returns the graph and how many
    /// duplicates were dropped.
    fn from_normalized(n: usize, mut edges: Vec<(usize, usize)>) -> (Self, usize) {
        edges.sort_unstable();
        let before = edges.len();
        edges.dedup();
        let duplicates = before - edges.len();

        let mut offsets = vec![0usize; n + 1];
        for &(u, v) in &edges {
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..n {
            offsets[i + 1] += offsets[i];
        }
        let mut cursor = offsets.clone();
        let mut targets = vec![0usize; 2 * edges.len()];
        // Edges are sorted by (u, v): every list first receives its smaller
        // neighbors (as the `v` side) and then its larger ones, both ascending.
        for &(u, v) in &edges {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        debug_assert!((0..n).all(|u| targets[offsets[u]..offsets[u + 1]].windows(2).all(|w| w[0] < w[1])));
        (PositiveGraph { n, edges, offsets, targets }, duplicates)
    }

    pub fn empty(n: usize) -> Self {
        Self::from_normalized(n, Vec::new()).0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of positive edges `m`.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Positive edges, each as `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Open neighborhood `N(u)`, ascending.
    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.targets[self.offsets[u]..self.offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.offsets[u + 1] - self.offsets[u]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Position of the directed slot `u → v` in the CSR target array, if the edge exists.
    pub fn edge_slot(&self, u: usize, v: usize) -> Option<usize> {
        self.neighbors(u).binary_search(&v).ok().map(|i| self.offsets[u] + i)
    }

    /// Total number of directed slots (`2m`).
    pub fn slot_count(&self) -> usize {
        self.targets.len()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Closed neighborhood `N[v] = N(v) ∪ {v}`, ascending.
    pub fn closed_neighborhood(&self, v: usize) -> Result<Vec<usize>> {
        self.check_vertex(v)?;
        let open = self.neighbors(v);
        let split = open.partition_point(|&x| x < v);
        let mut out = Vec::with_capacity(open.len() + 1);
        out.extend_from_slice(&open[..split]);
        out.push(v);
        out.extend_from_slice(&open[split..]);
        Ok(out)
    }

    /// `|N[u] Δ N[v]|` by merging the two sorted closed neighborhoods.
    ///
    /// With `cap = Some(c)` the merge stops as soon as the running count
    /// exceeds `c`; the returned value is then some number `> c`.
    pub fn symdiff_size(&self, u: usize, v: usize, cap: Option<usize>) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.symdiff_unchecked(u, v, cap))
    }

    pub(crate) fn symdiff_unchecked(&self, u: usize, v: usize, cap: Option<usize>) -> usize {
        if u == v {
            return 0;
        }
        let cap = cap.unwrap_or(usize::MAX);
        let mut a = ClosedIter::new(self.neighbors(u), u);
        let mut b = ClosedIter::new(self.neighbors(v), v);
        let mut count = 0usize;
        let (mut x, mut y) = (a.next(), b.next());
        loop {
            match (x, y) {
                (Some(p), Some(q)) => match p.cmp(&q) {
                    Ordering::Less => {
                        count += 1;
                        x = a.next();
                    }
                    Ordering::Greater => {
                        count += 1;
                        y = b.next();
                    }
                    Ordering::Equal => {
                        x = a.next();
                        y = b.next();
                    }
                },
                (Some(_), None) => return count + 1 + a.remaining(),
                (None, Some(_)) => return count + 1 + b.remaining(),
                (None, None) => return count,
            }
            if count > cap {
                return count;
            }
        }
    }

    /// `|N[u] ∩ N[v]|`.
    pub fn common_closed(&self, u: usize, v: usize) -> usize {
        let du = self.degree(u) + 1;
        let dv = self.degree(v) + 1;
        (du + dv - self.symdiff_unchecked(u, v, None)) / 2
    }

    /// Splits the vertices at the threshold `(3 + η)·φ`.
    pub fn degree_split(&self, phi: u64, eta: Eta) -> VertexPartitionByDegree {
        let mut v_low = Vec::new();
        let mut v_high = Vec::new();
        for v in 0..self.n {
            if eta.within_three_plus(self.degree(v) as u64, phi) {
                v_low.push(v);
            } else {
                v_high.push(v);
            }
        }
        VertexPartitionByDegree { v_low, v_high, phi, eta }
    }

    /// Renders the graph in the edge-list text format.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * (self.m() + 1));
        let _ = writeln!(out, "{}", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Merges `v` into its own sorted open neighborhood on the fly.
struct ClosedIter<'a> {
    open: &'a [usize],
    pos: usize,
    me: Option<usize>,
}

impl<'a> ClosedIter<'a> {
    fn new(open: &'a [usize], me: usize) -> Self {
        ClosedIter { open, pos: 0, me: Some(me) }
    }

    fn remaining(&self) -> usize {
        self.open.len() - self.pos + usize::from(self.me.is_some())
    }
}

impl Iterator for ClosedIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        match (self.open.get(self.pos), self.me) {
            (Some(&x), Some(m)) if m < x => {
                self.me = None;
                Some(m)
            }
            (Some(&x), _) => {
                self.pos += 1;
                Some(x)
            }
            (None, m) => {
                self.me = None;
                m
            }
        }
    }
}

/// `V_low = {v : deg(v) ≤ (3 + η)φ}` and its complement `V_high`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartitionByDegree {
    pub v_low: Vec<usize>,
    pub v_high: Vec<usize>,
    pub phi: u64,
    pub eta: Eta,
}

impl VertexPartitionByDegree {
    /// Per-vertex membership mask: `true` for high-degree vertices.
    pub fn high_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.v_high {
            mask[v] = true;
        }
        mask
    }
}

/// A parsed edge-list document.
#[derive(Debug, Clone)]
pub struct LoadedGraph {
    pub graph: PositiveGraph,
    /// Repeated pairs that were collapsed while loading.
    pub duplicate_edges: usize,
}

/// Parses the edge-list format: a first line holding `n`, then one `u v` pair
/// per non-empty line. Duplicate pairs are collapsed and counted.
pub fn load_graph(text: &str) -> Result<LoadedGraph> {
    let mut reader = EdgeListReader::new(text.as_bytes())?;
    let n = reader.n();
    let mut edges = Vec::new();
    for pair in &mut reader {
        let (u, v) = pair?;
        edges.push((u.min(v), u.max(v)));
    }
    let (graph, duplicate_edges) = PositiveGraph::from_normalized(n, edges);
    if duplicate_edges > 0 {
        log::warn!("collapsed {duplicate_edges} duplicate edge(s)");
    }
    Ok(LoadedGraph { graph, duplicate_edges })
}

/// Line-at-a-time reader over the edge-list format, used by both the loader
/// and the streaming front end.
pub struct EdgeListReader<R> {
    lines: std::io::Lines<R>,
    n: usize,
    line_no: usize,
}

impl<R: BufRead> EdgeListReader<R> {
    pub fn new(reader: R) -> Result<Self> {
        let mut lines = reader.lines();
        let mut line_no = 0;
        loop {
            line_no += 1;
            let line = match lines.next() {
                Some(line) => line?,
                None => return Err(Error::Parse { line: line_no, reason: "missing vertex count".into() }),
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            let n = trimmed.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                reason: format!("expected vertex count, found {trimmed:?}"),
            })?;
            return Ok(EdgeListReader { lines, n, line_no });
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl<R: BufRead> Iterator for EdgeListReader<R> {
    type Item = Result<(usize, usize)>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            self.line_no += 1;
            let line = match self.lines.next()? {
                Ok(line) => line,
                Err(e) => return Some(Err(e.into())),
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                continue;
            }
            return Some(parse_pair(trimmed, self.line_no, self.n));
        }
    }
}

fn parse_pair(line: &str, line_no: usize, n: usize) -> Result<(usize, usize)> {
    let mut fields = line.split_whitespace();
    let mut endpoint = || -> Result<usize> {
        let field = fields.next().ok_or_else(|| Error::Parse {
            line: line_no,
            reason: format!("expected two vertices, found {line:?}"),
        })?;
        field.parse::<usize>().map_err(|_| Error::Parse {
            line: line_no,
            reason: format!("invalid vertex {field:?}"),
        })
    };
    let u = endpoint()?;
    let v = endpoint()?;
    if let Some(extra) = fields.next() {
        return Err(Error::Parse { line: line_no, reason: format!("unexpected trailing field {extra:?}") });
    }
    for w in [u, v] {
        if w >= n {
            return Err(Error::EndpointOutOfRange { line: line_no, vertex: w, n });
        }
    }
    if u == v {
        return Err(Error::SelfLoop { line: line_no, vertex: u });
    }
    Ok((u, v))
}
