//! Standard graph families and the specific constructions studied here:
//! double stars, the Ω example graph, the diameter-2 gadget, the
//! (open packing, 2-total limited packing) realization trees and the corona
//! families used for packing partitions.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::products;
use crate::solvers::bits;
use crate::vertex_set::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid size parameter: {0}")]
    InvalidSize(String),
    #[error("graph of order {n} exceeds the Ω search cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

fn invalid(msg: impl Into<String>) -> FamilyError {
    FamilyError::InvalidSize(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Standard {
    Path(usize),
    Cycle(usize),
    /// `K_{1,m}`
    Star(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    Empty(usize),
}

pub fn standard(kind: Standard) -> Result<Graph, FamilyError> {
    match kind {
        Standard::Path(n) => path(n),
        Standard::Cycle(n) => cycle(n),
        Standard::Star(m) => star(m),
        Standard::Complete(n) => complete(n),
        Standard::CompleteBipartite(a, b) => complete_bipartite(a, b),
        Standard::Empty(n) => Ok(empty(n)),
    }
}

pub fn path(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(invalid("path needs at least 1 vertex"));
    }
    let mut g = Graph::empty(n);
    for v in 1..n {
        g.link(v - 1, v);
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Result<Graph, FamilyError> {
    if n < 3 {
        return Err(invalid("cycle needs at least 3 vertices"));
    }
    let mut g = path(n)?;
    g.link(n - 1, 0);
    Ok(g)
}

/// `K_{1,m}` with center 0.
pub fn star(m: usize) -> Result<Graph, FamilyError> {
    if m < 1 {
        return Err(invalid("star needs at least 1 leaf"));
    }
    let mut g = Graph::empty(m + 1);
    for v in 1..=m {
        g.link(0, v);
    }
    Ok(g)
}

pub fn complete(n: usize) -> Result<Graph, FamilyError> {
    if n < 1 {
        return Err(invalid("complete graph needs at least 1 vertex"));
    }
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            g.link(u, v);
        }
    }
    Ok(g)
}

/// `K_{a,b}` with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph, FamilyError> {
    if a < 1 || b < 1 {
        return Err(invalid("complete bipartite parts must be non-empty"));
    }
    let mut g = Graph::empty(a + b);
    for u in 0..a {
        for v in a..a + b {
            g.link(u, v);
        }
    }
    Ok(g)
}

pub fn empty(n: usize) -> Graph {
    Graph::empty(n)
}

/// `ST(x, y)`: centers 0 and 1, leaves `2..2+x` on 0 and the rest on 1.
pub fn double_star(x: usize, y: usize) -> Result<Graph, FamilyError> {
    if x < 1 || y < 1 {
        return Err(invalid("double star needs at least one leaf per center"));
    }
    let mut g = Graph::empty(x + y + 2);
    g.link(0, 1);
    for v in 2..2 + x {
        g.link(0, v);
    }
    for v in 2 + x..2 + x + y {
        g.link(1, v);
    }
    Ok(g)
}

/// The 8-vertex member of Ω: `v1` (index 0) joined to `v2..v5`, with pendant
/// edges `v2v6`, `v4v7`, `v5v8`.
pub fn fig1_graph() -> Graph {
    Graph::new(8, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (3, 6), (4, 7)])
        .expect("fixed edge list is simple")
}

/// Diameter-2 graph with `L_{2,t} = c`: an independent set `V1` of size `c`
/// (indices `0..c`), a clique `V2` on the `c(c-1)/2` pairs of `V1`, and each
/// pair joined to its own clique vertex.
pub fn diameter2_gadget(c: usize) -> Result<Graph, FamilyError> {
    if c < 3 {
        return Err(invalid("gadget needs c >= 3"));
    }
    let pairs: Vec<(usize, usize)> = (0..c)
        .flat_map(|i| (i + 1..c).map(move |j| (i, j)))
        .collect();
    let m = pairs.len();
    let mut g = Graph::empty(c + m);
    for a in 0..m {
        for b in a + 1..m {
            g.link(c + a, c + b);
        }
    }
    for (idx, &(i, j)) in pairs.iter().enumerate() {
        g.link(i, c + idx);
        g.link(j, c + idx);
    }
    Ok(g)
}

/// A tree with `ρ_o = a` and `L_{2,t} = b`, for `a ≥ 3` and `a < b ≤ 2a`.
///
/// With `x = b - a`: when `x = a`, a path `v1..va` (indices `0..a`) with two
/// pendant leaves on every path vertex. Otherwise a star with center `r`
/// (index 0) and leaves `v1..va` (indices `1..=a`), where `v_i` gains two
/// leaves for `i < x` and one leaf for `x ≤ i ≤ a-1`.
pub fn realization_tree(a: usize, b: usize) -> Result<Graph, FamilyError> {
    if a < 3 || b < a + 1 || b > 2 * a {
        return Err(invalid(format!(
            "need a >= 3 and a+1 <= b <= 2a, got a={a} b={b}"
        )));
    }
    let x = b - a;
    if x == a {
        let mut g = Graph::empty(3 * a);
        for i in 1..a {
            g.link(i - 1, i);
        }
        for i in 0..a {
            g.link(i, a + 2 * i);
            g.link(i, a + 2 * i + 1);
        }
        return Ok(g);
    }
    let mut g = Graph::empty(2 * a + x - 1);
    for i in 1..=a {
        g.link(0, i);
    }
    let mut next = a + 1;
    for i in 1..a {
        let leaves = if i < x { 2 } else { 1 };
        for _ in 0..leaves {
            g.link(i, next);
            next += 1;
        }
    }
    debug_assert_eq!(next, g.order());
    Ok(g)
}

/// `G' ⊙ K_1`: every vertex of `G'` gains one pendant leaf.
pub fn cartesian_sharpness_factor(gprime: &Graph) -> Result<Graph, FamilyError> {
    products::corona(gprime, &empty(1))
        .map(|p| p.graph)
        .map_err(|e| invalid(e.to_string()))
}

/// `(K_{a,a}, K̄_{a+b-1})`, the factor pair realizing every value of the
/// corona partition range.
pub fn corona_chi_family(a: usize, b: usize) -> Result<(Graph, Graph), FamilyError> {
    if a < 1 || a + b < 2 {
        return Err(invalid("need a >= 1 and a + b - 1 >= 1"));
    }
    Ok((complete_bipartite(a, a)?, empty(a + b - 1)))
}

/// Witness that a graph lies in Ω: `V = A ∪ B`, `|A ∩ B| = 3`, `G[A]` has a
/// spanning star centered at `star_center`, every component of `G[B]` is a
/// path or cycle, and every vertex outside `B` has at most two neighbors in `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaCertificate {
    pub a: VertexSet,
    pub b: VertexSet,
    pub star_center: usize,
}

impl OmegaCertificate {
    /// Re-checks the four membership conditions from scratch.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.order();
        let all = VertexSet::full(n);
        if self.a.union(&self.b) != all {
            return false;
        }
        if self.a.intersection_len(&self.b) != 3 {
            return false;
        }
        let w = self.star_center;
        if !self.a.contains(w) || self.a.iter().any(|v| v != w && !g.has_edge(w, v)) {
            return false;
        }
        // Components of G[B] are paths or cycles exactly when every vertex has
        // at most two neighbors inside B.
        let (gb, _) = g.induced_subgraph(&self.b);
        if gb.max_degree() > 2 {
            return false;
        }
        let outside = all.difference(&self.b);
        outside
            .iter()
            .all(|v| g.neighbors(v).intersection_len(&self.b) <= 2)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OmegaMembership {
    Member(OmegaCertificate),
    NotMember,
}

impl OmegaMembership {
    pub fn certificate(&self) -> Option<&OmegaCertificate> {
        match self {
            OmegaMembership::Member(c) => Some(c),
            OmegaMembership::NotMember => None,
        }
    }
}

pub const OMEGA_DEFAULT_CAP: usize = 16;

pub fn omega_membership(g: &Graph) -> Result<OmegaMembership, FamilyError> {
    omega_membership_with_cap(g, OMEGA_DEFAULT_CAP)
}

/// Decides Ω membership with a deterministic certificate.
///
/// Conditions (ii)-on-B and (iii) together say `B` is a 2-total limited
/// packing, and (ii)-on-A says `A ⊆ N[w]` for a star center `w ∈ A`. The
/// search order is: centers `w` ascending; `A = N[w]` first, then proper
/// subsets of `N[w]` containing `w` by decreasing size and then as ascending
/// member lists; within a fixed `A`, the triple `T = A ∩ B` is compared as a
/// member list after ranking vertices by (degree ascending, index
/// descending), least first. `B = (V \ A) ∪ T`.
pub fn omega_membership_with_cap(g: &Graph, cap: usize) -> Result<OmegaMembership, FamilyError> {
    let n = g.order();
    if n > cap || n > 64 {
        return Err(FamilyError::CapExceeded {
            n,
            cap: cap.min(64),
        });
    }
    if n < 3 {
        return Ok(OmegaMembership::NotMember);
    }
    let masks = g.masks().expect("n <= 64");
    let all: u64 = if n == 64 { u64::MAX } else { (1 << n) - 1 };
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));

    for w in 0..n {
        let closed = masks[w] | (1 << w);
        if closed.count_ones() < 3 {
            continue;
        }
        for a in candidate_a_sets(w, closed) {
            let outside = all & !a;
            if !is_2tlp(&masks, outside) {
                continue;
            }
            if let Some(t) = least_triple(&masks, &rank, a, outside) {
                return Ok(OmegaMembership::Member(OmegaCertificate {
                    a: VertexSet::from_mask(a),
                    b: VertexSet::from_mask(outside | t),
                    star_center: w,
                }));
            }
        }
    }
    Ok(OmegaMembership::NotMember)
}

fn is_2tlp(masks: &[u64], s: u64) -> bool {
    masks.iter().all(|m| (m & s).count_ones() <= 2)
}

/// `N[w]` first, then subsets of `N[w]` containing `w` with at least three
/// members, by decreasing size and then ascending member list.
fn candidate_a_sets(w: usize, closed: u64) -> Vec<u64> {
    let others: Vec<usize> = bits(closed & !(1 << w)).collect();
    let mut sets: Vec<u64> = (0u64..1 << others.len())
        .map(|pick| bits(pick).fold(1u64 << w, |m, i| m | (1 << others[i])))
        .filter(|m| m.count_ones() >= 3)
        .collect();
    sets.sort_by(|x, y| {
        y.count_ones()
            .cmp(&x.count_ones())
            .then_with(|| bits(*x).cmp(bits(*y)))
    });
    sets
}

fn least_triple(masks: &[u64], rank: &[usize], a: u64, outside: u64) -> Option<u64> {
    let ranked: Vec<usize> = rank
        .iter()
        .copied()
        .filter(|&v| a & (1 << v) != 0)
        .collect();
    let m = ranked.len();
    for i in 0..m {
        for j in i + 1..m {
            for l in j + 1..m {
                let t = (1 << ranked[i]) | (1 << ranked[j]) | (1 << ranked[l]);
                if is_2tlp(masks, outside | t) {
                    return Some(t);
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{isomorphic_small, Diameter};
    use crate::solvers::is_k_total_limited_packing;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn standard_families() {
        assert_eq!(
            standard(Standard::Complete(4)).unwrap().degree_sequence(),
            vec![3; 4]
        );
        assert!(standard(Standard::Cycle(2)).is_err());
        assert!(standard(Standard::Path(0)).is_err());
        let k22 = standard(Standard::CompleteBipartite(2, 2)).unwrap();
        assert!(isomorphic_small(&k22, &cycle(4).unwrap()).unwrap());
        assert_eq!(
            standard(Standard::Star(3)).unwrap().degree_sequence(),
            vec![1, 1, 1, 3]
        );
        assert_eq!(standard(Standard::Empty(3)).unwrap().size(), 0);
    }

    #[test]
    fn double_stars() {
        assert!(isomorphic_small(&double_star(1, 1).unwrap(), &path(4).unwrap()).unwrap());
        let st = double_star(2, 2).unwrap();
        assert_eq!(st.order(), 6);
        assert_eq!(st.degree_sequence(), vec![1, 1, 1, 1, 3, 3]);
        let split = st.without_edge(0, 1).unwrap();
        let two_p3 = star(2).unwrap().disjoint_union(&star(2).unwrap());
        assert!(isomorphic_small(&split, &two_p3).unwrap());
        assert!(double_star(0, 2).is_err());
    }

    #[test]
    fn fig1_shape() {
        let g = fig1_graph();
        assert_eq!((g.order(), g.size(), g.max_degree()), (8, 7, 4));
        assert_eq!(g.degree(0), 4);
        assert_eq!(g.open_neighborhood(0).unwrap(), set(&[1, 2, 3, 4]));
        assert_eq!(g.degree_sequence(), vec![1, 1, 1, 1, 2, 2, 2, 4]);
        assert!(is_k_total_limited_packing(&g, &set(&[0, 2, 4, 5, 6, 7]), 2));
    }

    #[test]
    fn omega_examples() {
        let cert = omega_membership(&fig1_graph()).unwrap();
        let cert = cert.certificate().unwrap();
        assert_eq!(cert.a, set(&[0, 1, 2, 3, 4]));
        assert_eq!(cert.b, set(&[0, 2, 4, 5, 6, 7]));
        assert!(cert.verify(&fig1_graph()));

        let p4 = path(4).unwrap();
        let cert = omega_membership(&p4).unwrap();
        let cert = cert.certificate().unwrap();
        assert_eq!(
            (cert.a.clone(), cert.b.clone(), cert.star_center),
            (set(&[0, 1, 2]), set(&[0, 1, 2, 3]), 1)
        );

        assert_eq!(
            omega_membership(&complete(5).unwrap()),
            Ok(OmegaMembership::NotMember)
        );
        assert_eq!(
            omega_membership(&empty(17)),
            Err(FamilyError::CapExceeded { n: 17, cap: 16 })
        );
    }

    #[test]
    fn gadget_shape() {
        for c in 3..=6 {
            let g = diameter2_gadget(c).unwrap();
            assert_eq!(g.order(), c + c * (c - 1) / 2);
            assert_eq!(g.diameter(), Diameter::Finite(2));
            assert_eq!(g.max_degree(), c * (c - 1) / 2 + 1);
        }
        let g = diameter2_gadget(4).unwrap();
        let (v2, _) = g.induced_subgraph(&(4..10).collect());
        assert_eq!(v2.size(), 15);
        assert!(diameter2_gadget(2).is_err());
    }

    #[test]
    fn realization_tree_shapes() {
        let t = realization_tree(3, 6).unwrap();
        assert_eq!(t.order(), 9);
        assert!(t.is_tree());
        assert_eq!(t.delta_prime(), Ok(3));
        let t = realization_tree(3, 4).unwrap();
        assert_eq!(t.order(), 6);
        assert!(t.is_tree());
        assert_eq!(t.degree_sequence(), vec![1, 1, 1, 2, 2, 3]);
        assert!(realization_tree(3, 8).is_err());
        assert!(realization_tree(3, 3).is_err());
        assert!(realization_tree(2, 3).is_err());
        for a in 3..=6 {
            for b in a + 1..=2 * a {
                assert!(realization_tree(a, b).unwrap().is_tree(), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn sharpness_factor_and_corona_family() {
        let k2 = complete(2).unwrap();
        assert!(
            isomorphic_small(&cartesian_sharpness_factor(&k2).unwrap(), &path(4).unwrap()).unwrap()
        );
        let k1 = complete(1).unwrap();
        assert!(isomorphic_small(&cartesian_sharpness_factor(&k1).unwrap(), &k2).unwrap());
        assert_eq!(
            cartesian_sharpness_factor(&path(3).unwrap())
                .unwrap()
                .order(),
            6
        );

        let (g, h) = corona_chi_family(2, 2).unwrap();
        assert!(isomorphic_small(&g, &cycle(4).unwrap()).unwrap());
        assert_eq!((h.order(), h.size()), (3, 0));
        let (g, h) = corona_chi_family(1, 1).unwrap();
        assert_eq!((g, h.order()), (k2, 1));
        let (g, h) = corona_chi_family(3, 0).unwrap();
        assert_eq!((g.order(), g.size(), h.order()), (6, 9, 2));
        assert!(corona_chi_family(1, 0).is_err());
    }
}
