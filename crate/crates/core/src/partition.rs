//! Exact k-limited packing partition number `χ_×k`.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::solvers::{bits, is_k_limited_packing, Method, OptResult, SolveError};
use crate::vertex_set::VertexSet;

/// Disjoint non-empty classes covering every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Partition {
    pub classes: Vec<VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {0} appears in more than one class")]
    Overlap(usize),
    #[error("vertex {0} is in no class")]
    Missing(usize),
    #[error("vertex {0} is not a vertex of the graph")]
    OutOfRange(usize),
    #[error("partition has an empty class")]
    EmptyClass,
    #[error("k must be at least 1")]
    KZero,
}

impl Partition {
    /// Classes sorted by least member, members ascending.
    pub fn normalized(mut classes: Vec<VertexSet>) -> Self {
        classes.retain(|c| !c.is_empty());
        classes.sort();
        Partition { classes }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Checks that the classes partition `0..n`.
    pub fn validate(&self, n: usize) -> Result<(), PartitionError> {
        let mut seen = VertexSet::new();
        for class in &self.classes {
            if class.is_empty() {
                return Err(PartitionError::EmptyClass);
            }
            for v in class {
                if v >= n {
                    return Err(PartitionError::OutOfRange(v));
                }
                if !seen.insert(v) {
                    return Err(PartitionError::Overlap(v));
                }
            }
        }
        match (0..n).find(|&v| !seen.contains(v)) {
            Some(v) => Err(PartitionError::Missing(v)),
            None => Ok(()),
        }
    }
}

/// Whether every class of a well-formed partition is a k-limited packing.
pub fn is_klp_partition(g: &Graph, p: &Partition, k: usize) -> Result<bool, PartitionError> {
    if k == 0 {
        return Err(PartitionError::KZero);
    }
    p.validate(g.order())?;
    Ok(p.classes.iter().all(|c| is_k_limited_packing(g, c, k)))
}

fn descending_degree(g: &Graph) -> Vec<usize> {
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// First-fit over vertices in descending-degree order.
pub fn greedy_upper_bound(g: &Graph, k: usize) -> Result<(usize, Partition), PartitionError> {
    if k == 0 {
        return Err(PartitionError::KZero);
    }
    let n = g.order();
    // count[v][c] = |N[v] ∩ class c|
    let mut count: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut classes: Vec<VertexSet> = Vec::new();
    for u in descending_degree(g) {
        let closed: Vec<usize> = g.neighbors(u).iter().chain([u]).collect();
        let c = (0..classes.len())
            .find(|&c| {
                closed
                    .iter()
                    .all(|&v| count[v].get(c).copied().unwrap_or(0) < k)
            })
            .unwrap_or(classes.len());
        if c == classes.len() {
            classes.push(VertexSet::new());
        }
        classes[c].insert(u);
        for v in closed {
            if count[v].len() <= c {
                count[v].resize(c + 1, 0);
            }
            count[v][c] += 1;
        }
    }
    let p = Partition::normalized(classes);
    Ok((p.len(), p))
}

struct Search {
    closed: Vec<u64>,
    order: Vec<usize>,
    k: u8,
    lower: usize,
    nodes: u64,
    best: usize,
    best_labels: Vec<usize>,
}

impl Search {
    fn dfs(&mut self, pos: usize, used: usize, labels: &mut [usize], count: &mut [Vec<u8>]) {
        self.nodes += 1;
        if used >= self.best || self.best == self.lower {
            return;
        }
        if pos == self.order.len() {
            self.best = used;
            self.best_labels = labels.to_vec();
            return;
        }
        let u = self.order[pos];
        // Opening class `used` is the only new-class option (symmetry break).
        for c in 0..=used.min(self.best - 1) {
            if c == used && used + 1 >= self.best {
                break;
            }
            if bits(self.closed[u]).any(|v| count[v][c] >= self.k) {
                continue;
            }
            for v in bits(self.closed[u]) {
                count[v][c] += 1;
            }
            labels[u] = c;
            self.dfs(pos + 1, used.max(c + 1), labels, count);
            for v in bits(self.closed[u]) {
                count[v][c] -= 1;
            }
        }
    }
}

/// `χ_×k(G)` with a witness partition.
pub fn chi_times_k(g: &Graph, k: usize) -> Result<OptResult<Partition>, SolveError> {
    if k == 0 {
        return Err(SolveError::KZero);
    }
    let n = g.order();
    if n == 0 {
        return Ok(OptResult {
            value: 0,
            witness: Partition { classes: vec![] },
            nodes_explored: 0,
            method: Method::Trivial,
        });
    }
    if g.max_degree() < k {
        return Ok(OptResult {
            value: 1,
            witness: Partition {
                classes: vec![VertexSet::full(n)],
            },
            nodes_explored: 0,
            method: Method::Trivial,
        });
    }
    let closed: Vec<u64> = g
        .masks()?
        .iter()
        .enumerate()
        .map(|(v, m)| m | (1 << v))
        .collect();
    let (greedy, greedy_partition) = greedy_upper_bound(g, k).expect("k >= 1");
    // Each closed neighborhood needs ⌈|N[v]|/k⌉ distinct classes.
    let lower = (g.max_degree() + 1).div_ceil(k);
    if greedy == lower {
        return Ok(OptResult {
            value: greedy,
            witness: greedy_partition,
            nodes_explored: 0,
            method: Method::BranchAndBound,
        });
    }
    let mut search = Search {
        closed,
        order: descending_degree(g),
        k: k.min(u8::MAX as usize) as u8,
        lower,
        nodes: 0,
        best: greedy,
        best_labels: Vec::new(),
    };
    let mut labels = vec![0; n];
    let mut count = vec![vec![0u8; greedy]; n];
    search.dfs(0, 0, &mut labels, &mut count);
    let witness = if search.best_labels.is_empty() {
        greedy_partition
    } else {
        let mut classes = vec![VertexSet::new(); search.best];
        for (v, &c) in search.best_labels.iter().enumerate() {
            classes[c].insert(v);
        }
        Partition::normalized(classes)
    };
    Ok(OptResult {
        value: search.best,
        witness,
        nodes_explored: search.nodes,
        method: Method::BranchAndBound,
    })
}
