//! Reference implementations by plain enumeration, with no pruning and no
//! shared code with the searches: adjacency lists, explicit counting.

use super::{Invariant, SolveError, ENUMERATION_CAP};
use crate::graph::Graph;

fn adjacency_lists(g: &Graph) -> Vec<Vec<usize>> {
    let mut lists = vec![Vec::new(); g.order()];
    for (u, v) in g.edges() {
        lists[u].push(v);
        lists[v].push(u);
    }
    lists
}

fn feasible(adj: &[Vec<usize>], member: &[bool], invariant: Invariant) -> bool {
    for v in 0..adj.len() {
        let hits = adj[v].iter().filter(|&&u| member[u]).count();
        let ok = match invariant {
            Invariant::LimitedPacking(k) => hits + usize::from(member[v]) <= k,
            Invariant::TotalLimitedPacking(k) => hits <= k,
            Invariant::Domination => member[v] || hits > 0,
            Invariant::TotalDomination => hits > 0,
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Optimum of `invariant` over all `2^n` vertex subsets.
///
/// Returns `None` when no subset is feasible (total domination with an
/// isolated vertex).
pub fn brute_force_oracle(g: &Graph, invariant: Invariant) -> Result<Option<usize>, SolveError> {
    let n = g.order();
    if n > ENUMERATION_CAP {
        return Err(SolveError::CapExceeded {
            n,
            cap: ENUMERATION_CAP,
        });
    }
    if matches!(
        invariant,
        Invariant::LimitedPacking(0) | Invariant::TotalLimitedPacking(0)
    ) {
        return Err(SolveError::KZero);
    }
    let adj = adjacency_lists(g);
    let mut member = vec![false; n];
    let mut best: Option<usize> = None;
    for mask in 0u32..(1u32 << n) {
        let mut size = 0;
        for (v, m) in member.iter_mut().enumerate() {
            *m = mask >> v & 1 == 1;
            size += usize::from(*m);
        }
        if !feasible(&adj, &member, invariant) {
            continue;
        }
        best = Some(match (best, invariant.is_maximization()) {
            (None, _) => size,
            (Some(b), true) => b.max(size),
            (Some(b), false) => b.min(size),
        });
    }
    Ok(best)
}

/// Minimum number of classes in a partition into k-limited packings, by
/// trying every set partition (restricted growth strings).
pub fn partition_oracle(g: &Graph, k: usize) -> Result<usize, SolveError> {
    const CAP: usize = 10;
    let n = g.order();
    if n > CAP {
        return Err(SolveError::CapExceeded { n, cap: CAP });
    }
    if k == 0 {
        return Err(SolveError::KZero);
    }
    let adj = adjacency_lists(g);
    let mut labels = vec![0usize; n];
    let mut best = n;
    loop {
        let classes = labels.iter().max().map_or(0, |m| m + 1);
        if classes < best {
            let ok = (0..classes).all(|c| {
                let member: Vec<bool> = labels.iter().map(|&l| l == c).collect();
                feasible(&adj, &member, Invariant::LimitedPacking(k))
            });
            if ok {
                best = classes;
            }
        }
        if !next_restricted_growth(&mut labels) {
            return Ok(best);
        }
    }
}

fn next_restricted_growth(labels: &mut [usize]) -> bool {
    for i in (1..labels.len()).rev() {
        let prefix_max = labels[..i].iter().copied().max().unwrap_or(0);
        if labels[i] <= prefix_max {
            labels[i] += 1;
            for l in &mut labels[i + 1..] {
                *l = 0;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    #[test]
    fn oracle_examples() {
        let c5 = cycle(5).unwrap();
        assert_eq!(
            brute_force_oracle(&c5, Invariant::LimitedPacking(2)),
            Ok(Some(3))
        );
        let k2 = complete(2).unwrap();
        assert_eq!(
            brute_force_oracle(&k2, Invariant::TotalLimitedPacking(1)),
            Ok(Some(2))
        );
        assert_eq!(
            brute_force_oracle(&empty(3), Invariant::LimitedPacking(1)),
            Ok(Some(3))
        );
        assert_eq!(
            brute_force_oracle(&empty(2), Invariant::TotalDomination),
            Ok(None)
        );
        assert!(brute_force_oracle(&empty(25), Invariant::Domination).is_err());
    }

    #[test]
    fn set_partitions_are_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52)] {
            let mut labels = vec![0; n];
            let mut count = 1;
            while next_restricted_growth(&mut labels) {
                count += 1;
            }
            assert_eq!(count, bell);
        }
    }

    #[test]
    fn partition_oracle_examples() {
        assert_eq!(partition_oracle(&complete(4).unwrap(), 2), Ok(2));
        assert_eq!(partition_oracle(&cycle(4).unwrap(), 2), Ok(2));
        assert_eq!(partition_oracle(&path(4).unwrap(), 3), Ok(1));
        assert_eq!(
            partition_oracle(&complete_bipartite(3, 3).unwrap(), 2),
            Ok(3)
        );
    }
}
