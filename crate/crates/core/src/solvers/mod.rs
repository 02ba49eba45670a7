//! Exact packing and domination invariants.
//!
//! All searches work on single-word neighborhood masks, so the exact solvers
//! accept graphs of order at most 64. The trivial regimes (`k ≥ Δ` for total
//! packings, `k ≥ Δ + 1` for closed ones) are answered for any order.

mod domination;
pub mod oracle;
mod packing;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::vertex_set::VertexSet;

pub use oracle::brute_force_oracle;

/// Largest order accepted by the exact searches.
pub const MAX_ORDER: usize = 64;
/// Largest order accepted by optimal-set enumeration and the brute-force oracle.
pub const ENUMERATION_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("k must be at least 1")]
    KZero,
    #[error("graph of order {n} exceeds the solver limit of {max}")]
    TooLarge { n: usize, max: usize },
    #[error("vertex {0} is isolated, so no total dominating set exists")]
    IsolatedVertex(usize),
    #[error("enumeration cap exceeded: order {n} > {cap}")]
    CapExceeded { n: usize, cap: usize },
}

impl From<GraphError> for SolveError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::TooLarge { n, max } => SolveError::TooLarge { n, max },
            other => unreachable!("unexpected graph error in solver: {other}"),
        }
    }
}

/// The invariants computed by this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    /// `L_k`: at most `k` members in every closed neighborhood.
    LimitedPacking(usize),
    /// `L_{k,t}`: at most `k` members in every open neighborhood.
    TotalLimitedPacking(usize),
    /// `γ`
    Domination,
    /// `γ_t`
    TotalDomination,
}

impl Invariant {
    pub fn is_maximization(self) -> bool {
        matches!(
            self,
            Invariant::LimitedPacking(_) | Invariant::TotalLimitedPacking(_)
        )
    }

    fn validate(self, g: &Graph) -> Result<(), SolveError> {
        match self {
            Invariant::LimitedPacking(0) | Invariant::TotalLimitedPacking(0) => {
                Err(SolveError::KZero)
            }
            Invariant::TotalDomination => match g.vertices().find(|&v| g.degree(v) == 0) {
                Some(v) => Err(SolveError::IsolatedVertex(v)),
                None => Ok(()),
            },
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BranchAndBound,
    Enumeration,
    /// Answered without search (`k` at or above the degree threshold).
    Trivial,
}

/// An exact optimum together with a witness attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptResult<W = VertexSet> {
    pub value: usize,
    pub witness: W,
    pub nodes_explored: u64,
    pub method: Method,
}

/// `|N[v] ∩ S| ≤ k` for every vertex `v`.
pub fn is_k_limited_packing(g: &Graph, s: &VertexSet, k: usize) -> bool {
    g.vertices()
        .all(|v| g.neighbors(v).intersection_len(s) + usize::from(s.contains(v)) <= k)
}

/// `|N(v) ∩ S| ≤ k` for every vertex `v`.
pub fn is_k_total_limited_packing(g: &Graph, s: &VertexSet, k: usize) -> bool {
    g.vertices()
        .all(|v| g.neighbors(v).intersection_len(s) <= k)
}

/// Every vertex outside `S` has a neighbor in `S` (or, when `total`, every
/// vertex at all does).
pub fn is_dominating(g: &Graph, s: &VertexSet, total: bool) -> bool {
    g.vertices()
        .all(|v| (!total && s.contains(v)) || !g.neighbors(v).is_disjoint(s))
}

/// Feasibility predicate for any invariant.
pub fn is_feasible(g: &Graph, s: &VertexSet, invariant: Invariant) -> bool {
    match invariant {
        Invariant::LimitedPacking(k) => is_k_limited_packing(g, s, k),
        Invariant::TotalLimitedPacking(k) => is_k_total_limited_packing(g, s, k),
        Invariant::Domination => is_dominating(g, s, false),
        Invariant::TotalDomination => is_dominating(g, s, true),
    }
}

/// `L_k(G)` (`total = false`) or `L_{k,t}(G)` (`total = true`) with the
/// lexicographically least optimal witness.
pub fn max_limited_packing(g: &Graph, k: usize, total: bool) -> Result<OptResult, SolveError> {
    if k == 0 {
        return Err(SolveError::KZero);
    }
    let threshold = if total {
        g.max_degree()
    } else {
        g.max_degree() + 1
    };
    if k >= threshold {
        return Ok(OptResult {
            value: g.order(),
            witness: VertexSet::full(g.order()),
            nodes_explored: 0,
            method: Method::Trivial,
        });
    }
    packing::solve(&g.masks()?, k, total)
}

/// `γ(G)` or `γ_t(G)` with the lexicographically least optimal witness.
pub fn min_dominating(g: &Graph, total: bool) -> Result<OptResult, SolveError> {
    let inv = if total {
        Invariant::TotalDomination
    } else {
        Invariant::Domination
    };
    inv.validate(g)?;
    domination::solve(&g.masks()?, total)
}

/// Solves any invariant.
pub fn solve(g: &Graph, invariant: Invariant) -> Result<OptResult, SolveError> {
    match invariant {
        Invariant::LimitedPacking(k) => max_limited_packing(g, k, false),
        Invariant::TotalLimitedPacking(k) => max_limited_packing(g, k, true),
        Invariant::Domination => min_dominating(g, false),
        Invariant::TotalDomination => min_dominating(g, true),
    }
}

/// Value-only convenience wrapper around [`solve`].
pub fn value(g: &Graph, invariant: Invariant) -> Result<usize, SolveError> {
    solve(g, invariant).map(|r| r.value)
}

/// `ρ(G) = L_1(G)`.
pub fn packing_number(g: &Graph) -> Result<usize, SolveError> {
    value(g, Invariant::LimitedPacking(1))
}

/// `ρ_o(G) = L_{1,t}(G)`.
pub fn open_packing_number(g: &Graph) -> Result<usize, SolveError> {
    value(g, Invariant::TotalLimitedPacking(1))
}

/// All optimal sets for `invariant`, deduplicated and sorted.
pub fn enumerate_optimal_sets(
    g: &Graph,
    invariant: Invariant,
) -> Result<Vec<VertexSet>, SolveError> {
    if g.order() > ENUMERATION_CAP {
        return Err(SolveError::CapExceeded {
            n: g.order(),
            cap: ENUMERATION_CAP,
        });
    }
    invariant.validate(g)?;
    let masks = g.masks()?;
    let opt = solve(g, invariant)?.value;
    let mut sets: Vec<u64> = match invariant {
        Invariant::LimitedPacking(k) => packing::enumerate(&masks, k, false, opt),
        Invariant::TotalLimitedPacking(k) => packing::enumerate(&masks, k, true, opt),
        Invariant::Domination => domination::enumerate(&masks, false, opt),
        Invariant::TotalDomination => domination::enumerate(&masks, true, opt),
    };
    let mut out: Vec<VertexSet> = sets.drain(..).map(VertexSet::from_mask).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

pub(crate) fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let b = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(b)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn limited_packing_predicates() {
        let c5 = cycle(5).unwrap();
        assert!(is_k_limited_packing(&c5, &set(&[0, 1, 3]), 2));
        let p4 = path(4).unwrap();
        assert!(!is_k_limited_packing(&p4, &VertexSet::full(4), 2));
        assert!(is_k_limited_packing(&p4, &VertexSet::new(), 1));
        assert!(is_k_total_limited_packing(&p4, &VertexSet::new(), 1));

        let fig1 = fig1_graph();
        assert!(is_k_total_limited_packing(
            &fig1,
            &set(&[0, 2, 4, 5, 6, 7]),
            2
        ));
        let k4 = complete(4).unwrap();
        for s in [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]] {
            assert!(!is_k_total_limited_packing(&k4, &set(&s), 2));
        }
    }

    #[test]
    fn packing_values_from_examples() {
        let r = max_limited_packing(&complete(6).unwrap(), 2, true).unwrap();
        assert_eq!(r.value, 2);
        assert!(is_k_total_limited_packing(
            &complete(6).unwrap(),
            &r.witness,
            2
        ));

        let r = max_limited_packing(&cycle(5).unwrap(), 2, true).unwrap();
        assert_eq!((r.value, r.method), (5, Method::Trivial));

        let k34 = complete_bipartite(3, 4).unwrap();
        assert_eq!(max_limited_packing(&k34, 2, false).unwrap().value, 2);
        assert_eq!(
            max_limited_packing(&cycle(5).unwrap(), 2, false)
                .unwrap()
                .value,
            3
        );
        assert_eq!(
            max_limited_packing(&cycle(5).unwrap(), 0, false),
            Err(SolveError::KZero)
        );
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // C5 with k = 2 (closed): optimal 3-sets; {0,1,3} is the least.
        let r = max_limited_packing(&cycle(5).unwrap(), 2, false).unwrap();
        assert_eq!(r.witness, set(&[0, 1, 3]));
        let all = enumerate_optimal_sets(&cycle(5).unwrap(), Invariant::LimitedPacking(2)).unwrap();
        assert_eq!(all[0], r.witness);
    }

    #[test]
    fn domination_values_from_examples() {
        let r = min_dominating(&star(5).unwrap(), true).unwrap();
        assert_eq!(r.value, 2);
        assert_eq!(
            min_dominating(&complete(5).unwrap(), false).unwrap().value,
            1
        );
        let r = min_dominating(&path(4).unwrap(), true).unwrap();
        assert_eq!((r.value, r.witness.clone()), (2, set(&[1, 2])));
        assert_eq!(
            min_dominating(&empty(2), true),
            Err(SolveError::IsolatedVertex(0))
        );
        assert_eq!(min_dominating(&empty(3), false).unwrap().value, 3);
    }

    #[test]
    fn enumeration_examples() {
        let p3 = path(3).unwrap();
        assert_eq!(
            enumerate_optimal_sets(&p3, Invariant::TotalLimitedPacking(2)).unwrap(),
            vec![set(&[0, 1, 2])]
        );
        let c4 = cycle(4).unwrap();
        let sets = enumerate_optimal_sets(&c4, Invariant::LimitedPacking(2)).unwrap();
        assert_eq!(sets.len(), 6);
        assert!(sets.iter().all(|s| s.len() == 2));
        let k4 = complete(4).unwrap();
        assert_eq!(
            enumerate_optimal_sets(&k4, Invariant::Domination).unwrap(),
            (0..4).map(|v| set(&[v])).collect::<Vec<_>>()
        );
        assert!(matches!(
            enumerate_optimal_sets(&empty(25), Invariant::Domination),
            Err(SolveError::CapExceeded { .. })
        ));
    }

    #[test]
    fn trivial_regime_covers_large_graphs() {
        let big = cycle(100).unwrap();
        assert_eq!(max_limited_packing(&big, 2, true).unwrap().value, 100);
        assert_eq!(max_limited_packing(&big, 3, false).unwrap().value, 100);
        assert_eq!(
            max_limited_packing(&big, 1, true),
            Err(SolveError::TooLarge { n: 100, max: 64 })
        );
    }
}
