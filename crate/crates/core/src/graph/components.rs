use crate::error::{Error, Result};

/// Disjoint-set forest with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind { parent: (0..len).collect(), size: vec![1; len] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// Returns `true` if the two sets were distinct.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

/// Connected components of the subgraph induced on `vertices` by `edges`.
///
/// Each component is sorted ascending and components are ordered by their
/// minimum vertex, so the output is canonical.
pub fn connected_components(vertices: &[usize], edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut sorted = vertices.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let index_of = |v: usize| -> Result<usize> {
        sorted
            .binary_search(&v)
            .map_err(|_| Error::param(format!("edge endpoint {v} is not in the vertex set")))
    };

    let mut uf = UnionFind::new(sorted.len());
    for &(a, b) in edges {
        let (ia, ib) = (index_of(a)?, index_of(b)?);
        uf.union(ia, ib);
    }
    Ok(group_by_root(&sorted, &mut uf))
}

/// Groups `vertices[i]` by the root of `i` in `uf`; canonical ordering.
pub(crate) fn group_by_root(vertices: &[usize], uf: &mut UnionFind) -> Vec<Vec<usize>> {
    // Vertices are ascending, so the first member seen for a root is its minimum.
    let mut slot = vec![usize::MAX; vertices.len()];
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, &v) in vertices.iter().enumerate() {
        let r = uf.find(i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(v);
    }
    groups
}
