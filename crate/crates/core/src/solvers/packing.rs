//! Branch-and-bound for maximum (total) limited packings.
//!
//! The state is a load vector: `load[v] = |S ∩ N(v)|` (or `N[v]`). A vertex
//! whose load reached `k` is saturated, and a candidate `u` may join `S` only
//! while no member of its own constraint neighborhood is saturated.

use super::{bits, Method, OptResult, SolveError};
use crate::vertex_set::VertexSet;

struct Engine {
    /// Constraint neighborhood of each vertex; symmetric, so it also lists the
    /// vertices whose load rises when the vertex is chosen.
    nb: Vec<u64>,
    k: u8,
    order: Vec<usize>,
    nodes: u64,
}

struct Frame {
    load: Vec<u8>,
    saturated: u64,
}

enum Goal {
    /// Maximize, keeping the best set strictly larger than `floor`.
    Maximize { best: usize, set: u64 },
    /// Stop at the first set reaching `target`.
    First { target: usize, found: Option<u64> },
    /// Collect every set of exactly `target` members.
    All { target: usize, sets: Vec<u64> },
}

impl Engine {
    fn new(masks: &[u64], k: usize, total: bool, order: Vec<usize>) -> Self {
        let nb = masks
            .iter()
            .enumerate()
            .map(|(v, &m)| if total { m } else { m | (1 << v) })
            .collect();
        Engine {
            nb,
            k: k.min(u8::MAX as usize) as u8,
            order,
            nodes: 0,
        }
    }

    fn addable(&self, u: usize, saturated: u64) -> bool {
        self.nb[u] & saturated == 0
    }

    /// Upper bound on how many more members can be added from `cand`.
    /// Greedily picks vertices with pairwise disjoint constraint neighborhoods;
    /// each can absorb at most its remaining capacity.
    fn bound(&self, cand: u64, frame: &Frame) -> usize {
        let mut covered = 0u64;
        let mut total = 0usize;
        for v in 0..self.nb.len() {
            let inside = self.nb[v] & cand;
            if inside == 0 || self.nb[v] & covered != 0 {
                continue;
            }
            let cap = (self.k - frame.load[v]) as usize;
            let c = inside.count_ones() as usize;
            if c > cap {
                covered |= self.nb[v];
                total += cap;
            }
        }
        total + (cand & !covered).count_ones() as usize
    }

    fn candidates(&self, undecided: u64, saturated: u64) -> u64 {
        bits(undecided)
            .filter(|&u| self.addable(u, saturated))
            .fold(0, |m, u| m | (1 << u))
    }

    fn dfs(
        &mut self,
        pos: usize,
        chosen: u64,
        size: usize,
        undecided: u64,
        frame: &mut Frame,
        goal: &mut Goal,
    ) {
        self.nodes += 1;
        let cand = self.candidates(undecided, frame.saturated);
        let reach = size + self.bound(cand, frame);
        match goal {
            Goal::Maximize { best, .. } if reach <= *best => return,
            Goal::First { found: Some(_), .. } => return,
            Goal::First { target, .. } | Goal::All { target, .. } if reach < *target => return,
            _ => {}
        }
        let next = self.order[pos..].iter().position(|&u| cand & (1 << u) != 0);
        let Some(offset) = next else {
            match goal {
                Goal::Maximize { best, set } if size > *best => {
                    *best = size;
                    *set = chosen;
                }
                Goal::First { target, found } if size >= *target => *found = Some(chosen),
                Goal::All { target, sets } if size == *target => sets.push(chosen),
                _ => {}
            }
            return;
        };
        let pos = pos + offset;
        let u = self.order[pos];
        let rest = undecided & !(1 << u);

        // include u
        let saved = frame.saturated;
        for v in bits(self.nb[u]) {
            frame.load[v] += 1;
            if frame.load[v] == self.k {
                frame.saturated |= 1 << v;
            }
        }
        self.dfs(pos + 1, chosen | (1 << u), size + 1, rest, frame, goal);
        for v in bits(self.nb[u]) {
            frame.load[v] -= 1;
        }
        frame.saturated = saved;

        // exclude u
        self.dfs(pos + 1, chosen, size, rest, frame, goal);
    }

    fn run(&mut self, goal: &mut Goal) {
        let n = self.nb.len();
        let mut frame = Frame {
            load: vec![0; n],
            saturated: 0,
        };
        let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        self.dfs(0, 0, 0, all, &mut frame, goal);
    }
}

fn degree_order(masks: &[u64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..masks.len()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(masks[v].count_ones()), v));
    order
}

pub(super) fn solve(masks: &[u64], k: usize, total: bool) -> Result<OptResult, SolveError> {
    let n = masks.len();
    let mut engine = Engine::new(masks, k, total, degree_order(masks));
    // Any min(k, n) vertices form a feasible set.
    let floor = k.min(n).saturating_sub(1);
    let mut goal = Goal::Maximize {
        best: floor,
        set: 0,
    };
    engine.run(&mut goal);
    let Goal::Maximize { best, .. } = goal else {
        unreachable!()
    };

    // Index order with include-first branching meets optimal sets in
    // increasing lexicographic order, so the first hit is the least one.
    engine.order = (0..n).collect();
    let mut first = Goal::First {
        target: best,
        found: None,
    };
    engine.run(&mut first);
    let Goal::First {
        found: Some(set), ..
    } = first
    else {
        unreachable!("optimum of size {best} must be reachable")
    };
    Ok(OptResult {
        value: best,
        witness: VertexSet::from_mask(set),
        nodes_explored: engine.nodes,
        method: Method::BranchAndBound,
    })
}

pub(super) fn enumerate(masks: &[u64], k: usize, total: bool, target: usize) -> Vec<u64> {
    let mut engine = Engine::new(masks, k, total, (0..masks.len()).collect());
    let mut goal = Goal::All {
        target,
        sets: Vec::new(),
    };
    engine.run(&mut goal);
    let Goal::All { sets, .. } = goal else {
        unreachable!()
    };
    sets
}
