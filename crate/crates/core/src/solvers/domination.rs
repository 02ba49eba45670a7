//! Branch-and-bound for minimum (total) dominating sets.
//!
//! Branching picks the undominated vertex with the fewest remaining
//! dominators and tries each of them in index order, excluding the earlier
//! ones from later branches. The lower bound divides the undominated count
//! by the best single-vertex coverage.

use super::{bits, Method, OptResult, SolveError};
use crate::vertex_set::VertexSet;

struct Engine {
    /// `cover[c]`: vertices dominated by choosing `c`. Also the set of
    /// vertices able to dominate `c`, by symmetry.
    cover: Vec<u64>,
    all: u64,
    nodes: u64,
}

enum Goal {
    Minimize { best: usize, set: u64 },
    All { target: usize, sets: Vec<u64> },
}

impl Goal {
    fn limit(&self) -> usize {
        match self {
            Goal::Minimize { best, .. } => best.saturating_sub(1),
            Goal::All { target, .. } => *target,
        }
    }
}

impl Engine {
    fn new(masks: &[u64], total: bool) -> Self {
        let n = masks.len();
        let cover = masks
            .iter()
            .enumerate()
            .map(|(v, &m)| if total { m } else { m | (1 << v) })
            .collect();
        Engine {
            cover,
            all: if n == 64 { u64::MAX } else { (1u64 << n) - 1 },
            nodes: 0,
        }
    }

    fn dfs(&mut self, chosen: u64, size: usize, dominated: u64, allowed: u64, goal: &mut Goal) {
        self.nodes += 1;
        let undominated = self.all & !dominated;
        if undominated == 0 {
            match goal {
                Goal::Minimize { best, set } if size < *best => {
                    *best = size;
                    *set = chosen;
                }
                Goal::All { target, sets } if size == *target => sets.push(chosen),
                _ => {}
            }
            return;
        }
        let limit = goal.limit();
        if size >= limit {
            return;
        }
        let max_cover = bits(allowed)
            .map(|c| (self.cover[c] & undominated).count_ones())
            .max()
            .unwrap_or(0) as usize;
        if max_cover == 0 {
            return;
        }
        let need = (undominated.count_ones() as usize).div_ceil(max_cover);
        if size + need > limit {
            return;
        }

        let mut pivot = None;
        let mut fewest = u32::MAX;
        for u in bits(undominated) {
            let options = (self.cover[u] & allowed).count_ones();
            if options < fewest {
                fewest = options;
                pivot = Some(u);
            }
        }
        let u = pivot.expect("undominated is non-empty");
        let mut allowed = allowed;
        for c in bits(self.cover[u] & allowed) {
            allowed &= !(1 << c);
            self.dfs(
                chosen | (1 << c),
                size + 1,
                dominated | self.cover[c],
                allowed,
                goal,
            );
        }
    }

    /// Least dominating set size with `forced` chosen and `banned` excluded,
    /// provided it is below `best`.
    fn minimize(&mut self, forced: u64, banned: u64, best: usize) -> Option<(usize, u64)> {
        let dominated = bits(forced).fold(0, |d, c| d | self.cover[c]);
        let mut goal = Goal::Minimize { best, set: 0 };
        let allowed = self.all & !banned & !forced;
        self.dfs(
            forced,
            forced.count_ones() as usize,
            dominated,
            allowed,
            &mut goal,
        );
        match goal {
            Goal::Minimize { best: b, set } if b < best => Some((b, set)),
            _ => None,
        }
    }
}

pub(super) fn solve(masks: &[u64], total: bool) -> Result<OptResult, SolveError> {
    let n = masks.len();
    let mut engine = Engine::new(masks, total);
    let (opt, _) = engine
        .minimize(0, 0, n + 1)
        .expect("feasibility was checked by the caller");

    // Greedy fixing in index order yields the lexicographically least set.
    let mut forced = 0u64;
    let mut banned = 0u64;
    for v in 0..n {
        if forced.count_ones() as usize == opt {
            break;
        }
        let trial = forced | (1 << v);
        if engine.minimize(trial, banned, opt + 1).is_some() {
            forced = trial;
        } else {
            banned |= 1 << v;
        }
    }
    debug_assert_eq!(forced.count_ones() as usize, opt);
    Ok(OptResult {
        value: opt,
        witness: VertexSet::from_mask(forced),
        nodes_explored: engine.nodes,
        method: Method::BranchAndBound,
    })
}

pub(super) fn enumerate(masks: &[u64], total: bool, target: usize) -> Vec<u64> {
    let mut engine = Engine::new(masks, total);
    let mut goal = Goal::All {
        target,
        sets: Vec::new(),
    };
    let all = engine.all;
    engine.dfs(0, 0, 0, all, &mut goal);
    let Goal::All { sets, .. } = goal else {
        unreachable!()
    };
    sets
}
