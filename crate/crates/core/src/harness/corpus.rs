//! Graph corpora: every labeled graph on `n` vertices, every labeled tree,
//! seeded random graphs, graph6 files and a fixed list of small factors.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use super::graph6::{parse_graph6, Graph6Error};
use crate::families::{complete, complete_bipartite, cycle, path, star};
use crate::graph::Graph;
use crate::solvers::MAX_ORDER;

pub const EXHAUSTIVE_CAP: usize = 6;
pub const TREE_CAP: usize = 9;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{source_name} with n = {n} exceeds the cap of {cap}")]
    CapExceeded {
        source_name: &'static str,
        n: usize,
        cap: usize,
    },
    #[error("edge probability {0} is outside [0, 1]")]
    BadProbability(f64),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path} line {line}: {source}")]
    Graph6 {
        path: PathBuf,
        line: usize,
        source: Graph6Error,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    /// All `2^(n(n-1)/2)` labeled graphs on `n` vertices.
    ExhaustiveLabeled(usize),
    Graph6File(PathBuf),
    Random {
        n: usize,
        edge_probability: f64,
        count: usize,
        seed: u64,
    },
    /// All `n^(n-2)` labeled trees, in Prüfer-sequence order.
    AllTrees(usize),
    /// `P2, P3, P4, C3, C4, C5, K2, K3, K4, K_{1,3}, K_{2,2}`.
    StandardFactors,
    /// Graphs supplied directly.
    Graphs(Vec<Graph>),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Filters {
    pub connected_only: bool,
    pub tree_only: bool,
    pub min_degree: Option<usize>,
}

impl Filters {
    pub fn accepts(&self, g: &Graph) -> bool {
        (!self.connected_only || g.is_connected())
            && (!self.tree_only || g.is_tree())
            && self
                .min_degree
                .is_none_or(|d| g.order() > 0 && g.min_degree() >= d)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSpec {
    pub source: Source,
    pub filters: Filters,
}

impl CorpusSpec {
    pub fn new(source: Source) -> Self {
        CorpusSpec {
            source,
            filters: Filters::default(),
        }
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }

    /// The seed of a random source.
    pub fn seed(&self) -> Option<u64> {
        match self.source {
            Source::Random { seed, .. } => Some(seed),
            _ => None,
        }
    }
}

/// A corpus member with its position in the unfiltered source stream.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusItem {
    pub id: usize,
    pub graph: Graph,
}

pub struct Corpus {
    inner: Box<dyn Iterator<Item = Result<Graph, CorpusError>> + Send>,
    filters: Filters,
    next_id: usize,
}

impl Iterator for Corpus {
    type Item = Result<CorpusItem, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let item = self.inner.next()?;
            let id = self.next_id;
            self.next_id += 1;
            match item {
                Ok(graph) if self.filters.accepts(&graph) => {
                    return Some(Ok(CorpusItem { id, graph }))
                }
                Ok(_) => continue,
                Err(e) => return Some(Err(e)),
            }
        }
    }
}

fn ok_graphs<I: Iterator<Item = Graph> + Send + 'static>(
    it: I,
) -> Box<dyn Iterator<Item = Result<Graph, CorpusError>> + Send> {
    Box::new(it.map(Ok))
}

/// The labeled graph on `n` vertices whose edge set is given by `mask` over
/// the pairs `(0,1), (0,2), (1,2), (0,3), …`.
pub fn labeled_graph(n: usize, mask: u64) -> Graph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for v in 1..n {
        for u in 0..v {
            if mask >> bit & 1 == 1 {
                edges.push((u, v));
            }
            bit += 1;
        }
    }
    Graph::new(n, &edges).expect("pairs are distinct and in range")
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into a tree.
pub fn prufer_tree(n: usize, seq: &[usize]) -> Graph {
    debug_assert_eq!(seq.len() + 2, n.max(2));
    if n < 2 {
        return Graph::empty(n);
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always remains");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).expect("Prüfer decoding yields a simple tree")
}

struct PruferSequences {
    n: usize,
    seq: Option<Vec<usize>>,
}

impl Iterator for PruferSequences {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let seq = self.seq.as_mut()?;
        let tree = prufer_tree(self.n, seq);
        // Odometer increment, last position fastest.
        let mut i = seq.len();
        loop {
            if i == 0 {
                self.seq = None;
                break;
            }
            i -= 1;
            seq[i] += 1;
            if seq[i] < self.n {
                break;
            }
            seq[i] = 0;
        }
        Some(tree)
    }
}

fn standard_factors() -> Vec<Graph> {
    let build = || -> Result<Vec<Graph>, crate::families::FamilyError> {
        Ok(vec![
            path(2)?,
            path(3)?,
            path(4)?,
            cycle(3)?,
            cycle(4)?,
            cycle(5)?,
            complete(2)?,
            complete(3)?,
            complete(4)?,
            star(3)?,
            complete_bipartite(2, 2)?,
        ])
    };
    build().expect("fixed sizes are valid")
}

fn graph6_lines(
    path: PathBuf,
) -> Result<Box<dyn Iterator<Item = Result<Graph, CorpusError>> + Send>, CorpusError> {
    let file = File::open(&path).map_err(|source| CorpusError::Io {
        path: path.clone(),
        source,
    })?;
    let lines = BufReader::new(file)
        .split(b'\n')
        .enumerate()
        .filter_map(move |(i, line)| {
            let line = match line {
                Ok(l) => l,
                Err(source) => {
                    return Some(Err(CorpusError::Io {
                        path: path.clone(),
                        source,
                    }))
                }
            };
            if line.iter().all(u8::is_ascii_whitespace) {
                return None;
            }
            Some(parse_graph6(&line).map_err(|source| CorpusError::Graph6 {
                path: path.clone(),
                line: i + 1,
                source,
            }))
        });
    Ok(Box::new(lines))
}

/// Streams the graphs of `spec`; blank lines of a graph6 file are skipped.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Corpus, CorpusError> {
    let inner = match &spec.source {
        &Source::ExhaustiveLabeled(n) => {
            if n > EXHAUSTIVE_CAP {
                return Err(CorpusError::CapExceeded {
                    source_name: "exhaustive_labeled",
                    n,
                    cap: EXHAUSTIVE_CAP,
                });
            }
            let pairs = n * n.saturating_sub(1) / 2;
            ok_graphs((0..1u64 << pairs).map(move |mask| labeled_graph(n, mask)))
        }
        &Source::AllTrees(n) => {
            if n > TREE_CAP {
                return Err(CorpusError::CapExceeded {
                    source_name: "all_trees",
                    n,
                    cap: TREE_CAP,
                });
            }
            ok_graphs(PruferSequences {
                n,
                seq: Some(vec![0; n.saturating_sub(2)]),
            })
        }
        &Source::Random {
            n,
            edge_probability,
            count,
            seed,
        } => {
            if n > MAX_ORDER {
                return Err(CorpusError::CapExceeded {
                    source_name: "random",
                    n,
                    cap: MAX_ORDER,
                });
            }
            if !(0.0..=1.0).contains(&edge_probability) {
                return Err(CorpusError::BadProbability(edge_probability));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            ok_graphs((0..count).map(move |_| {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(edge_probability) {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::new(n, &edges).expect("pairs are distinct and in range")
            }))
        }
        Source::Graph6File(path) => graph6_lines(path.clone())?,
        Source::StandardFactors => ok_graphs(standard_factors().into_iter()),
        Source::Graphs(graphs) => ok_graphs(graphs.clone().into_iter()),
    };
    Ok(Corpus {
        inner,
        filters: spec.filters,
        next_id: 0,
    })
}
