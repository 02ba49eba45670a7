//! Immutable finite simple graphs on vertices `0..n`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph of order {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("graph is not a tree")]
    NotATree,
    #[error("tree has fewer than 3 vertices")]
    TooSmall,
    #[error("graph of order {n} exceeds the limit of {max}")]
    TooLarge { n: usize, max: usize },
}

/// Finite simple graph stored as one neighbor bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

/// Result of deleting isolated vertices: `G⁻` plus the removed count `i_G`.
#[derive(Debug, Clone)]
pub struct Isolates {
    pub graph: Graph,
    pub removed: usize,
    /// `original[i]` is the index in the input graph of vertex `i` of `graph`.
    pub original: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Diameter {
    Finite(usize),
    Disconnected,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting loops, repeats and bad indices.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![VertexSet::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !adj[u].insert(v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            adj[v].insert(u);
        }
        Ok(Graph { n, adj })
    }

    pub fn empty(n: usize) -> Graph {
        Graph {
            n,
            adj: vec![VertexSet::new(); n],
        }
    }

    /// Adds an edge during construction. Callers guarantee `u != v` and range.
    pub(crate) fn link(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for u in 0..self.n {
            out.extend(self.adj[u].iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    /// Borrowed `N(v)`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn open_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v].clone())
    }

    pub fn closed_neighborhood(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        let mut s = self.adj[v].clone();
        s.insert(v);
        Ok(s)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Degrees in ascending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    /// Δ(G); 0 for the empty graph.
    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// δ(G); 0 for the empty graph.
    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// `Some(r)` if every vertex has degree `r`.
    pub fn regular_degree(&self) -> Option<usize> {
        let r = self.adj.first()?.len();
        self.adj.iter().all(|s| s.len() == r).then_some(r)
    }

    pub fn isolated_count(&self) -> usize {
        (0..self.n).filter(|&v| self.adj[v].is_empty()).count()
    }

    pub fn leaves(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Deletes isolated vertices, relabeling the rest compactly in index order.
    pub fn remove_isolated(&self) -> Isolates {
        let keep: VertexSet = (0..self.n).filter(|&v| !self.adj[v].is_empty()).collect();
        let (graph, original) = self.induced_subgraph(&keep);
        Isolates {
            removed: self.n - graph.n,
            graph,
            original,
        }
    }

    /// `G[S]`, relabeled in index order, with the map back to original indices.
    pub fn induced_subgraph(&self, s: &VertexSet) -> (Graph, Vec<usize>) {
        let original: Vec<usize> = s.iter().filter(|&v| v < self.n).collect();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in original.iter().enumerate() {
            index[v] = i;
        }
        let mut g = Graph::empty(original.len());
        for (i, &v) in original.iter().enumerate() {
            for u in self.adj[v].iter() {
                if index[u] != usize::MAX && index[u] > i {
                    g.link(i, index[u]);
                }
            }
        }
        (g, original)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let mut g = self.clone();
        g.adj[u].remove(v);
        g.adj[v].remove(u);
        Ok(g)
    }

    /// Disjoint union; the other graph's vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::empty(self.n + other.n);
        for (u, v) in self.edges() {
            g.link(u, v);
        }
        for (u, v) in other.edges() {
            g.link(u + self.n, v + self.n);
        }
        g
    }

    pub fn with_isolated(&self, count: usize) -> Graph {
        self.disjoint_union(&Graph::empty(count))
    }

    /// Breadth-first distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap_or(0);
            for w in self.adj[u].iter() {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn diameter(&self) -> Diameter {
        let mut best = 0;
        for v in 0..self.n {
            for d in self.distances_from(v) {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Diameter::Disconnected,
                }
            }
        }
        Diameter::Finite(best)
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.distances_from(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n >= 1 && self.size() == self.n - 1 && self.is_connected()
    }

    pub fn is_star(&self) -> bool {
        self.is_tree() && self.n >= 3 && self.max_degree() == self.n - 1
    }

    /// δ′(T): least degree among non-leaf vertices of a tree with n ≥ 3.
    pub fn delta_prime(&self) -> Result<usize, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        if self.n < 3 {
            return Err(GraphError::TooSmall);
        }
        // A tree on at least three vertices always has an internal vertex.
        Ok((0..self.n)
            .map(|v| self.degree(v))
            .filter(|&d| d >= 2)
            .min()
            .expect("tree with n >= 3 has a non-leaf vertex"))
    }

    /// Neighborhood masks when the graph fits in one word.
    pub fn masks(&self) -> Result<Vec<u64>, GraphError> {
        if self.n > 64 {
            return Err(GraphError::TooLarge { n: self.n, max: 64 });
        }
        Ok(self
            .adj
            .iter()
            .map(|s| s.to_mask().expect("n <= 64"))
            .collect())
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut g = Graph::empty(self.n);
        for (u, v) in self.edges() {
            g.link(perm[u], perm[v]);
        }
        g
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            return Err(GraphError::OutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        Ok(())
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Isomorphism by trying every vertex permutation. Limited to 8 vertices.
pub fn isomorphic_small(a: &Graph, b: &Graph) -> Result<bool, GraphError> {
    const MAX: usize = 8;
    if a.order() > MAX {
        return Err(GraphError::TooLarge {
            n: a.order(),
            max: MAX,
        });
    }
    if a.order() != b.order() || a.size() != b.size() || a.degree_sequence() != b.degree_sequence()
    {
        return Ok(false);
    }
    let n = a.order();
    let mut perm: Vec<usize> = (0..n).collect();
    let edges = a.edges();
    loop {
        if edges.iter().all(|&(u, v)| b.has_edge(perm[u], perm[v])) {
            return Ok(true);
        }
        if !next_permutation(&mut perm) {
            return Ok(false);
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
