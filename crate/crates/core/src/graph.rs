//! Adjacency-list graphs over dense vertex ids `0..n`.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph with {1} vertices")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
}

/// Simple undirected graph. Adjacency lists are sorted ascending and free of
/// duplicates and self-loops.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Duplicate edges
    /// (including swapped endpoints) are collapsed. Self-loops and endpoints
    /// `>= n` are rejected.
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            adj,
            edge_count: edge_count / 2,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.adj.len() as u32 {
            for &v in &self.adj[u as usize] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.adj.len() as u32
    }

    /// Connected components of the subgraph induced by `within`, each sorted
    /// ascending, the list ordered by smallest contained vertex.
    pub fn connected_components(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut seen = vec![false; self.adj.len()];
        let mut comps = Vec::new();
        let mut queue = Vec::new();
        for start in within.iter() {
            if seen[start as usize] {
                continue;
            }
            seen[start as usize] = true;
            queue.clear();
            queue.push(start);
            let mut members = vec![start];
            while let Some(u) = queue.pop() {
                for &w in self.neighbors(u) {
                    if within.contains(w) && !seen[w as usize] {
                        seen[w as usize] = true;
                        members.push(w);
                        queue.push(w);
                    }
                }
            }
            members.sort_unstable();
            comps.push(VertexSet::new(self.adj.len(), members));
        }
        comps
    }

    /// Subgraph induced by `within`, with vertices renumbered to `0..|within|`
    /// in ascending original order. Returns the subgraph and the map from new
    /// ids back to original ids.
    pub fn induced_subgraph(&self, within: &VertexSet) -> (Graph, Vec<u32>) {
        let to_orig: Vec<u32> = within.iter().collect();
        let mut to_sub = vec![u32::MAX; self.adj.len()];
        for (i, &v) in to_orig.iter().enumerate() {
            to_sub[v as usize] = i as u32;
        }
        let mut adj = vec![Vec::new(); to_orig.len()];
        let mut edge_count = 0;
        for (i, &v) in to_orig.iter().enumerate() {
            for &w in self.neighbors(v) {
                if within.contains(w) {
                    adj[i].push(to_sub[w as usize]);
                }
            }
            edge_count += adj[i].len();
        }
        (
            Graph {
                adj,
                edge_count: edge_count / 2,
            },
            to_orig,
        )
    }

    /// Complement graph (no self-loops).
    pub fn complement(&self) -> Graph {
        let n = self.adj.len();
        let mut adj = vec![Vec::new(); n];
        let mut edge_count = 0;
        for u in 0..n as u32 {
            let list = &self.adj[u as usize];
            let mut it = list.iter().peekable();
            for v in 0..n as u32 {
                if v == u {
                    continue;
                }
                while let Some(&&w) = it.peek() {
                    if w < v {
                        it.next();
                    } else {
                        break;
                    }
                }
                if it.peek() != Some(&&v) {
                    adj[u as usize].push(v);
                }
            }
            edge_count += adj[u as usize].len();
        }
        Graph {
            adj,
            edge_count: edge_count / 2,
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count)
    }
}

/// Set of vertex ids with ascending iteration and O(1) membership.
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    sorted: Vec<u32>,
    bits: Vec<u64>,
}

impl VertexSet {
    /// `universe` is the number of vertices of the host graph; `members` may
    /// arrive in any order.
    pub fn new(universe: usize, mut members: Vec<u32>) -> VertexSet {
        members.sort_unstable();
        members.dedup();
        let mut bits = vec![0u64; universe.div_ceil(64)];
        for &v in &members {
            assert!((v as usize) < universe, "vertex {v} outside universe");
            bits[v as usize / 64] |= 1 << (v % 64);
        }
        VertexSet {
            sorted: members,
            bits,
        }
    }

    pub fn full(universe: usize) -> VertexSet {
        VertexSet::new(universe, (0..universe as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.bits
            .get(v as usize / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.sorted.iter().copied()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.sorted
    }

    pub fn min(&self) -> Option<u32> {
        self.sorted.first().copied()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<u32> for VertexSet {
    /// Convenience for tests; sizes the universe to the maximum member.
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> VertexSet {
        let members: Vec<u32> = iter.into_iter().collect();
        let universe = members.iter().map(|&v| v as usize + 1).max().unwrap_or(0);
        VertexSet::new(universe, members)
    }
}
