//! One checker per bound, characterization and exact formula.
//!
//! Every checker computes both sides exactly through the solvers and returns
//! [`BoundReport`]s. Non-integral right-hand sides are exact rationals.
//! Reports carry a [`Strength`]: solid statements fail a verification run
//! when violated, audited ones are only tallied.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::families::{self, FamilyError, OmegaMembership};
use crate::graph::{Graph, GraphError};
use crate::partition::chi_times_k;
use crate::products::{self, ProductError, ProductKind};
use crate::solvers::{
    enumerate_optimal_sets, is_k_limited_packing, is_k_total_limited_packing, max_limited_packing,
    min_dominating, Invariant, OptResult, SolveError,
};
use crate::vertex_set::VertexSet;

pub type Quantity = Ratio<i64>;

/// Largest product order on which the product checkers run.
pub const PRODUCT_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("product order {n} exceeds the cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
}

fn precondition(msg: impl Into<String>) -> BoundsError {
    BoundsError::Precondition(msg.into())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    DegreeSequenceBound,
    MaxDegreeBound,
    RegularConsequence,
    TreeDeltaPrimeBound,
    EdgeDeletionLower,
    EdgeDeletionUpper,
    OpenPackingLower,
    OpenPackingUpper,
    TreeSandwichLower,
    TreeSandwichUpper,
    UniqueSetLeaves,
    Diameter2Realization,
    TreeRealization,
    CartesianL2tLower,
    CartesianL2tSharpness,
    DirectL2tLower,
    RootedL2tLower,
    RootedL2tUpper,
    CartesianL2Upper,
    DirectL2Lower,
    RootedL2Formula,
    ChiSum,
    ChiProduct,
    ChiCeiling,
    CoronaChiLower,
    CoronaChiUpper,
    CoronaChiNeighborhood,
    AuxKnOverDelta,
    AuxKGammaT,
    AuxOpenPackingEqualsGammaT,
}

impl TheoremId {
    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Violated,
    Vacuous,
    Sharp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    /// A violation is a failure.
    Solid,
    /// Compared against the exact values and recorded.
    Audit,
}

/// Outcome of an "if and only if" statement on one graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharacterizationReport {
    pub name: &'static str,
    pub equality_holds: bool,
    pub structural_condition_holds: bool,
    pub agree: bool,
    pub detail: Value,
}

impl CharacterizationReport {
    pub fn new(
        name: &'static str,
        equality_holds: bool,
        structural_condition_holds: bool,
        detail: Value,
    ) -> Self {
        CharacterizationReport {
            name,
            equality_holds,
            structural_condition_holds,
            agree: equality_holds == structural_condition_holds,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub k: Option<usize>,
    #[serde(serialize_with = "serialize_quantity")]
    pub lhs: Quantity,
    #[serde(serialize_with = "serialize_quantity")]
    pub rhs: Quantity,
    pub relation: Relation,
    pub status: Status,
    pub strength: Strength,
    pub witness: Option<Value>,
    pub characterization: Option<CharacterizationReport>,
}

impl BoundReport {
    /// Classifies `lhs relation rhs`.
    pub fn compare(
        theorem: TheoremId,
        k: Option<usize>,
        lhs: Quantity,
        relation: Relation,
        rhs: Quantity,
    ) -> Self {
        use std::cmp::Ordering::*;
        let status = match (relation, lhs.cmp(&rhs)) {
            (Relation::Eq, Equal) => Status::Holds,
            (Relation::Eq, _) => Status::Violated,
            (_, Equal) => Status::Sharp,
            (Relation::Le, Less) | (Relation::Ge, Greater) => Status::Holds,
            _ => Status::Violated,
        };
        BoundReport {
            theorem,
            k,
            lhs,
            rhs,
            relation,
            status,
            strength: Strength::Solid,
            witness: None,
            characterization: None,
        }
    }

    pub fn vacuous(
        theorem: TheoremId,
        k: Option<usize>,
        lhs: Quantity,
        relation: Relation,
        rhs: Quantity,
    ) -> Self {
        BoundReport {
            status: Status::Vacuous,
            ..Self::compare(theorem, k, lhs, relation, rhs)
        }
    }

    pub fn audit(mut self) -> Self {
        self.strength = Strength::Audit;
        self
    }

    pub fn with_witness(mut self, witness: Value) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn with_characterization(mut self, c: CharacterizationReport) -> Self {
        self.characterization = Some(c);
        self
    }

    pub fn is_solid_violation(&self) -> bool {
        self.strength == Strength::Solid && self.status == Status::Violated
    }
}

/// Integers as JSON numbers, other rationals as `"p/q"` strings.
pub fn quantity_json(x: &Quantity) -> Value {
    if x.is_integer() {
        json!(x.to_integer())
    } else {
        json!(x.to_string())
    }
}

fn serialize_quantity<S: serde::Serializer>(x: &Quantity, s: S) -> Result<S::Ok, S::Error> {
    quantity_json(x).serialize(s)
}

fn q(v: usize) -> Quantity {
    Ratio::from_integer(v as i64)
}

fn qi(v: i64) -> Quantity {
    Ratio::from_integer(v)
}

fn packing(g: &Graph, k: usize, total: bool) -> Result<OptResult, BoundsError> {
    Ok(max_limited_packing(g, k, total)?)
}

fn rho(g: &Graph) -> Result<OptResult, BoundsError> {
    packing(g, 1, false)
}

fn rho_o(g: &Graph) -> Result<OptResult, BoundsError> {
    packing(g, 1, true)
}

/// `L_{k,t}(G) ≤ max{t : d_1 + … + d_t ≤ kn}` over ascending degrees.
pub fn check_degree_sequence_bound(g: &Graph, k: usize) -> Result<BoundReport, BoundsError> {
    let n = g.order();
    if n < 2 {
        return Err(precondition("order must be at least 2"));
    }
    let degrees = g.degree_sequence();
    let mut prefix = 0;
    let mut t = 0;
    for &d in &degrees {
        prefix += d;
        if prefix > k * n {
            break;
        }
        t += 1;
    }
    let best = packing(g, k, true)?;
    Ok(BoundReport::compare(
        TheoremId::DegreeSequenceBound,
        Some(k),
        q(best.value),
        Relation::Le,
        q(t),
    )
    .with_witness(json!({ "set": best.witness, "degree_sequence": degrees })))
}

/// `L_{k,t}(G) ≤ n + k − Δ(G)`; for `k = 2` equality is compared with Ω
/// membership.
pub fn check_max_degree_bound(g: &Graph, k: usize) -> Result<BoundReport, BoundsError> {
    let n = g.order();
    let best = packing(g, k, true)?;
    let rhs = n as i64 + k as i64 - g.max_degree() as i64;
    let report = BoundReport::compare(
        TheoremId::MaxDegreeBound,
        Some(k),
        q(best.value),
        Relation::Le,
        qi(rhs),
    );
    if k != 2 {
        return Ok(report.with_witness(json!({ "set": best.witness })));
    }
    let equality = q(best.value) == qi(rhs);
    match families::omega_membership(g) {
        Ok(membership) => {
            let cert = membership.certificate().cloned();
            let c = CharacterizationReport::new(
                "omega_membership",
                equality,
                cert.is_some(),
                json!({ "certificate": cert }),
            );
            Ok(report
                .with_witness(json!({ "set": best.witness, "omega": cert }))
                .with_characterization(c))
        }
        Err(e) => {
            Ok(report.with_witness(json!({ "set": best.witness, "omega_error": e.to_string() })))
        }
    }
}

/// If `G` is r-regular, `k ≤ r − 1` and `L_{k,t}(G) = n + k − r`, then
/// `r ≥ (n + 1)/2`. Vacuous when the premise fails.
pub fn check_regular_consequence(g: &Graph, k: usize) -> Result<BoundReport, BoundsError> {
    let n = g.order();
    let rhs = Ratio::new(n as i64 + 1, 2);
    let Some(r) = g.regular_degree() else {
        return Ok(BoundReport::vacuous(
            TheoremId::RegularConsequence,
            Some(k),
            q(g.max_degree()),
            Relation::Ge,
            rhs,
        )
        .with_witness(json!({ "premise": "not regular" })));
    };
    if k + 1 > r {
        return Ok(BoundReport::vacuous(
            TheoremId::RegularConsequence,
            Some(k),
            q(r),
            Relation::Ge,
            rhs,
        )
        .with_witness(json!({ "premise": "k > r - 1" })));
    }
    let best = packing(g, k, true)?;
    let target = n + k - r;
    if best.value != target {
        return Ok(BoundReport::vacuous(TheoremId::RegularConsequence, Some(k), q(r), Relation::Ge, rhs)
            .with_witness(json!({ "premise": "L_kt != n + k - r", "l_kt": best.value, "n_plus_k_minus_r": target })));
    }
    Ok(BoundReport::compare(
        TheoremId::RegularConsequence,
        Some(k),
        q(r),
        Relation::Ge,
        rhs,
    )
    .with_witness(json!({ "set": best.witness })))
}

/// `L_{2,t}(T) ≤ (c − 2)n/(c − 1) − c + 4` for trees with `δ′(T) ≥ c ≥ 4`.
pub fn check_tree_delta_prime_bound(t: &Graph, c: usize) -> Result<BoundReport, BoundsError> {
    if !t.is_tree() {
        return Err(precondition("not a tree"));
    }
    if t.order() < 3 {
        return Err(precondition("tree order below 3"));
    }
    if c < 4 {
        return Err(precondition("c must be at least 4"));
    }
    let dp = t.delta_prime()?;
    if dp < c {
        return Err(precondition(format!("delta' = {dp} < c = {c}")));
    }
    let n = t.order() as i64;
    let c = c as i64;
    let rhs = Ratio::new((c - 2) * n, c - 1) - qi(c) + qi(4);
    let best = packing(t, 2, true)?;
    Ok(BoundReport::compare(
        TheoremId::TreeDeltaPrimeBound,
        Some(2),
        q(best.value),
        Relation::Le,
        rhs,
    )
    .with_witness(json!({ "set": best.witness, "c": c, "delta_prime": dp })))
}

/// `L_{k,t}(G) ≤ L_{k,t}(G − e) ≤ L_{k,t}(G) + 2`, as two reports.
pub fn check_edge_deletion(
    g: &Graph,
    e: (usize, usize),
    k: usize,
) -> Result<[BoundReport; 2], BoundsError> {
    let minus = g.without_edge(e.0, e.1)?;
    let before = packing(g, k, true)?;
    let after = packing(&minus, k, true)?;
    let witness =
        json!({ "edge": [e.0, e.1], "set": before.witness, "set_minus_edge": after.witness });
    Ok([
        BoundReport::compare(
            TheoremId::EdgeDeletionLower,
            Some(k),
            q(before.value),
            Relation::Le,
            q(after.value),
        )
        .with_witness(witness.clone()),
        BoundReport::compare(
            TheoremId::EdgeDeletionUpper,
            Some(k),
            q(after.value),
            Relation::Le,
            q(before.value + 2),
        )
        .with_witness(witness),
    ])
}

/// `ρ_o + 1 ≤ L_{2,t} ≤ (Δ² + 1)/δ · ρ_o` for graphs without isolated
/// vertices and `Δ ≥ 2`. The upper inequality is audited.
pub fn check_open_packing_sandwich(g: &Graph) -> Result<[BoundReport; 2], BoundsError> {
    if g.order() == 0 || g.isolated_count() > 0 {
        return Err(precondition("graph has isolated vertices"));
    }
    let (delta, min_deg) = (g.max_degree() as i64, g.min_degree() as i64);
    if delta < 2 {
        return Err(precondition("maximum degree below 2"));
    }
    let ro = rho_o(g)?;
    let l2t = packing(g, 2, true)?;
    let upper = Ratio::new(delta * delta + 1, min_deg) * q(ro.value);
    let witness = json!({
        "rho_o": ro.value,
        "rho_o_set": ro.witness,
        "l_2t": l2t.value,
        "l_2t_set": l2t.witness,
        "bound": upper.to_string(),
    });
    Ok([
        BoundReport::compare(
            TheoremId::OpenPackingLower,
            Some(2),
            q(ro.value + 1),
            Relation::Le,
            q(l2t.value),
        )
        .with_witness(witness.clone()),
        BoundReport::compare(
            TheoremId::OpenPackingUpper,
            Some(2),
            q(l2t.value),
            Relation::Le,
            upper,
        )
        .audit()
        .with_witness(witness),
    ])
}

/// Checks `|N(s) ∩ D| = 1` for all `s ∈ S` and `|N(d) ∩ S| = 2` for all `d ∈ D`.
fn pair_condition(t: &Graph, s: &VertexSet, d: &VertexSet) -> bool {
    s.iter().all(|v| t.neighbors(v).intersection_len(d) == 1)
        && d.iter().all(|v| t.neighbors(v).intersection_len(s) == 2)
}

/// `ρ_o(T) + 1 ≤ L_{2,t}(T) ≤ 2ρ_o(T)` for trees with `Δ ≥ 2`, with the
/// star characterization of the lower equality attached to the first report
/// and the all-optimal-pairs characterization of the upper equality to the
/// second.
pub fn check_tree_sandwich(t: &Graph) -> Result<[BoundReport; 2], BoundsError> {
    if !t.is_tree() {
        return Err(precondition("not a tree"));
    }
    if t.max_degree() < 2 {
        return Err(precondition("maximum degree below 2"));
    }
    let ro = rho_o(t)?;
    let l2t = packing(t, 2, true)?;
    let witness = json!({ "rho_o": ro.value, "rho_o_set": ro.witness, "l_2t": l2t.value, "l_2t_set": l2t.witness });

    let star = CharacterizationReport::new(
        "star",
        ro.value + 1 == l2t.value,
        t.is_star(),
        json!({ "order": t.order(), "max_degree": t.max_degree() }),
    );
    let lower = BoundReport::compare(
        TheoremId::TreeSandwichLower,
        Some(2),
        q(ro.value + 1),
        Relation::Le,
        q(l2t.value),
    )
    .with_witness(witness.clone())
    .with_characterization(star);

    let upper = BoundReport::compare(
        TheoremId::TreeSandwichUpper,
        Some(2),
        q(l2t.value),
        Relation::Le,
        q(2 * ro.value),
    )
    .with_witness(witness);
    let upper = match (
        enumerate_optimal_sets(t, Invariant::TotalLimitedPacking(2)),
        enumerate_optimal_sets(t, Invariant::TotalDomination),
    ) {
        (Ok(ss), Ok(ds)) => {
            let failing = ss
                .iter()
                .flat_map(|s| ds.iter().map(move |d| (s, d)))
                .find(|(s, d)| !pair_condition(t, s, d));
            let detail = json!({
                "l_2t_sets": ss.len(),
                "gamma_t_sets": ds.len(),
                "failing_pair": failing.map(|(s, d)| json!({ "s": s, "d": d })),
            });
            upper.with_characterization(CharacterizationReport::new(
                "optimal_pair_condition",
                l2t.value == 2 * ro.value,
                failing.is_none(),
                detail,
            ))
        }
        _ => upper,
    };
    Ok([lower, upper])
}

/// If `G` has a unique `L_{2,t}`-set, every leaf belongs to it.
pub fn check_unique_set_leaves(g: &Graph) -> Result<BoundReport, BoundsError> {
    let sets = enumerate_optimal_sets(g, Invariant::TotalLimitedPacking(2))?;
    let leaves = g.leaves();
    if sets.len() != 1 {
        return Ok(BoundReport::vacuous(
            TheoremId::UniqueSetLeaves,
            Some(2),
            q(0),
            Relation::Eq,
            q(leaves.len()),
        )
        .with_witness(json!({ "optimal_sets": sets.len() })));
    }
    let b = &sets[0];
    let missing = leaves.difference(b);
    Ok(BoundReport::compare(
        TheoremId::UniqueSetLeaves,
        Some(2),
        q(leaves.intersection_len(b)),
        Relation::Eq,
        q(leaves.len()),
    )
    .with_witness(json!({ "set": b, "leaves": leaves, "leaves_outside": missing })))
}

/// `L_{2,t}` of the diameter-2 gadget equals `c` and its diameter is 2.
pub fn check_diameter2_realization(c: usize) -> Result<BoundReport, BoundsError> {
    let g = families::diameter2_gadget(c)?;
    let best = packing(&g, 2, true)?;
    let diameter = g.diameter();
    let report = BoundReport::compare(
        TheoremId::Diameter2Realization,
        Some(2),
        q(best.value),
        Relation::Eq,
        q(c),
    );
    let report = if diameter != crate::graph::Diameter::Finite(2) {
        BoundReport {
            status: Status::Violated,
            ..report
        }
    } else {
        report
    };
    Ok(report
        .with_witness(json!({ "c": c, "diameter": format!("{diameter:?}"), "set": best.witness })))
}

/// The realization tree for `(a, b)` has `ρ_o = a` and `L_{2,t} = b`.
/// Reported as `ρ_o·(2a+1) + L_{2,t}` against `a·(2a+1) + b`, which are equal
/// exactly when both values match since `L_{2,t} ≤ 2a`.
pub fn check_tree_realization(a: usize, b: usize) -> Result<[BoundReport; 2], BoundsError> {
    let t = families::realization_tree(a, b)?;
    let ro = rho_o(&t)?;
    let l2t = packing(&t, 2, true)?;
    let witness = json!({ "a": a, "b": b, "rho_o_set": ro.witness, "l_2t_set": l2t.witness });
    Ok([
        BoundReport::compare(
            TheoremId::TreeRealization,
            Some(1),
            q(ro.value),
            Relation::Eq,
            q(a),
        )
        .with_witness(witness.clone()),
        BoundReport::compare(
            TheoremId::TreeRealization,
            Some(2),
            q(l2t.value),
            Relation::Eq,
            q(b),
        )
        .with_witness(witness),
    ])
}

/// Which packing the product checkers bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `L_2`
    L2,
    /// `L_{2,t}`
    L2t,
}

fn product_cap(n: usize) -> Result<(), BoundsError> {
    if n > PRODUCT_CAP {
        return Err(BoundsError::CapExceeded {
            n,
            cap: PRODUCT_CAP,
        });
    }
    Ok(())
}

/// `{(g, h) : g ∈ a, h ∈ b}` as product vertex ids.
fn cross(a: &VertexSet, b: &VertexSet, h_order: usize) -> VertexSet {
    a.iter()
        .flat_map(|g| b.iter().map(move |h| g * h_order + h))
        .collect()
}

/// Picks the largest of several `(value, construction)` candidates; ties go to
/// the first.
fn best_of(cands: Vec<(usize, VertexSet, &'static str)>) -> (usize, VertexSet, &'static str) {
    let mut it = cands.into_iter();
    let first = it.next().expect("at least one candidate");
    it.fold(first, |acc, c| if c.0 > acc.0 { c } else { acc })
}

/// Bounds for Cartesian, direct and rooted products (and the corona partition
/// range when `kind` is corona). Each report computes the left side on the
/// built product and the right side from factor invariants; lower bounds also
/// record whether the product-of-witnesses construction is feasible.
pub fn check_product_bounds(
    g: &Graph,
    h: &Graph,
    kind: ProductKind,
    variant: Variant,
    root: Option<usize>,
) -> Result<Vec<BoundReport>, BoundsError> {
    match kind {
        ProductKind::Cartesian => check_cartesian(g, h, variant).map(|r| vec![r]),
        ProductKind::Direct => check_direct(g, h, variant).map(|r| vec![r]),
        ProductKind::Rooted => {
            let root = root.ok_or_else(|| precondition("rooted product needs a root"))?;
            match variant {
                Variant::L2t => check_rooted_l2t(g, h, root).map(Vec::from),
                Variant::L2 => check_rooted_l2_formula(g, h, root).map(|r| vec![r]),
            }
        }
        ProductKind::Corona => check_corona_chi(g, h).map(Vec::from),
    }
}

fn check_cartesian(g: &Graph, h: &Graph, variant: Variant) -> Result<BoundReport, BoundsError> {
    product_cap(g.order() * h.order())?;
    let p = products::cartesian(g, h)?;
    let m = h.order();
    match variant {
        Variant::L2t => {
            let lhs = packing(&p.graph, 2, true)?;
            let (lg, rh) = (packing(g, 2, true)?, rho(h)?);
            let (rg, lh) = (rho(g)?, packing(h, 2, true)?);
            let (rhs, set, used) = best_of(vec![
                (
                    lg.value * rh.value,
                    cross(&lg.witness, &rh.witness, m),
                    "l2t(G)*rho(H)",
                ),
                (
                    rg.value * lh.value,
                    cross(&rg.witness, &lh.witness, m),
                    "rho(G)*l2t(H)",
                ),
            ]);
            let feasible = is_k_total_limited_packing(&p.graph, &set, 2);
            Ok(BoundReport::compare(TheoremId::CartesianL2tLower, Some(2), q(lhs.value), Relation::Ge, q(rhs))
                .with_witness(json!({ "set": lhs.witness, "construction": set, "term": used, "construction_feasible": feasible })))
        }
        Variant::L2 => {
            let lhs = packing(&p.graph, 2, false)?;
            let (lg, lh) = (packing(g, 2, false)?, packing(h, 2, false)?);
            let rhs = (lg.value * h.order()).min(lh.value * g.order());
            Ok(BoundReport::compare(
                TheoremId::CartesianL2Upper,
                Some(2),
                q(lhs.value),
                Relation::Le,
                q(rhs),
            )
            .with_witness(json!({ "set": lhs.witness, "l2_g": lg.value, "l2_h": lh.value })))
        }
    }
}

fn check_direct(g: &Graph, h: &Graph, variant: Variant) -> Result<BoundReport, BoundsError> {
    product_cap(g.order() * h.order())?;
    let p = products::direct(g, h)?;
    let (gi, hi) = (g.remove_isolated(), h.remove_isolated());
    let (g0, h0) = (&gi.graph, &hi.graph);
    let (ig, ih) = (gi.removed, hi.removed);
    let correction = ig * h.order() + ih * g.order() - ig * ih;

    // Lift a construction on G⁻ × H⁻ into the product and add every isolated vertex.
    let (g_map, h_map, m) = (&gi.original, &hi.original, h.order());
    let lift = |a: &VertexSet, b: &VertexSet| -> VertexSet {
        let mut s: VertexSet = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| g_map[x] * m + h_map[y]))
            .collect();
        s.extend(p.graph.vertices().filter(|&v| p.graph.degree(v) == 0));
        s
    };

    let (ro_g, ro_h) = (rho_o(g0)?, rho_o(h0)?);
    let (lt_g, lt_h) = (packing(g0, 2, true)?, packing(h0, 2, true)?);
    let mut cands = vec![
        (
            ro_g.value * lt_h.value,
            lift(&ro_g.witness, &lt_h.witness),
            "rho_o(G-)*l2t(H-)",
        ),
        (
            lt_g.value * ro_h.value,
            lift(&lt_g.witness, &ro_h.witness),
            "l2t(G-)*rho_o(H-)",
        ),
    ];
    let (theorem, total) = match variant {
        Variant::L2t => (TheoremId::DirectL2tLower, true),
        Variant::L2 => {
            let (l2_g, l2_h) = (packing(g0, 2, false)?, packing(h0, 2, false)?);
            let (r_g, r_h) = (rho(g0)?, rho(h0)?);
            cands = vec![
                (
                    ro_g.value * l2_h.value,
                    lift(&ro_g.witness, &l2_h.witness),
                    "rho_o(G-)*l2(H-)",
                ),
                (
                    l2_g.value * ro_h.value,
                    lift(&l2_g.witness, &ro_h.witness),
                    "l2(G-)*rho_o(H-)",
                ),
                (
                    r_g.value * lt_h.value,
                    lift(&r_g.witness, &lt_h.witness),
                    "rho(G-)*l2t(H-)",
                ),
                (
                    lt_g.value * r_h.value,
                    lift(&lt_g.witness, &r_h.witness),
                    "l2t(G-)*rho(H-)",
                ),
            ];
            (TheoremId::DirectL2Lower, false)
        }
    };
    let (value, set, used) = best_of(cands);
    let lhs = packing(&p.graph, 2, total)?;
    let feasible = if total {
        is_k_total_limited_packing(&p.graph, &set, 2)
    } else {
        is_k_limited_packing(&p.graph, &set, 2)
    };
    Ok(BoundReport::compare(
        theorem,
        Some(2),
        q(lhs.value),
        Relation::Ge,
        q(value + correction),
    )
    .with_witness(json!({
        "set": lhs.witness,
        "construction": set,
        "term": used,
        "construction_feasible": feasible,
        "i_g": ig,
        "i_h": ih,
    })))
}

fn check_rooted_l2t(g: &Graph, h: &Graph, root: usize) -> Result<[BoundReport; 2], BoundsError> {
    product_cap(g.order() * h.order())?;
    let p = products::rooted(g, h, root)?;
    let n = g.order();
    let ig = g.isolated_count();
    let lh = packing(h, 2, true)?;
    let lhs = packing(&p.graph, 2, true)?;
    let lower = n * (lh.value - 1) + ig;
    let witness = json!({ "set": lhs.witness, "root": root, "l2t_h": lh.value, "i_g": ig });
    Ok([
        BoundReport::compare(
            TheoremId::RootedL2tLower,
            Some(2),
            q(lhs.value),
            Relation::Ge,
            q(lower),
        )
        .with_witness(witness.clone()),
        BoundReport::compare(
            TheoremId::RootedL2tUpper,
            Some(2),
            q(lhs.value),
            Relation::Le,
            q(n * lh.value),
        )
        .with_witness(witness),
    ])
}

/// Audits the two-case formula for `L_2(G ∘_v H)`: `L_2(G) + n(L_2(H) − 1)`
/// when the root lies in every `L_2(H)`-set, `n·L_2(H)` otherwise.
pub fn check_rooted_l2_formula(
    g: &Graph,
    h: &Graph,
    root: usize,
) -> Result<BoundReport, BoundsError> {
    product_cap(g.order() * h.order())?;
    let p = products::rooted(g, h, root)?;
    let n = g.order();
    let h_sets = enumerate_optimal_sets(h, Invariant::LimitedPacking(2))?;
    let l2_h = h_sets.first().map_or(0, VertexSet::len);
    let avoiding = h_sets.iter().find(|s| !s.contains(root));
    let (case, prediction) = match avoiding {
        None => {
            let l2_g = packing(g, 2, false)?.value;
            ("root_in_every_set", l2_g + n * (l2_h - 1))
        }
        Some(_) => ("root_avoided", n * l2_h),
    };
    let exact = packing(&p.graph, 2, false)?;
    Ok(BoundReport::compare(
        TheoremId::RootedL2Formula,
        Some(2),
        q(exact.value),
        Relation::Eq,
        q(prediction),
    )
    .audit()
    .with_witness(json!({
        "case": case,
        "root": root,
        "set": exact.witness,
        "l2_h": l2_h,
        "l2_h_sets": h_sets.len(),
        "avoiding_set": avoiding,
        "matches": exact.value == prediction,
    })))
}

/// For `r ≥ 4`, `L_{2,t}((G′ ⊙ K_1) □ K_r) = 2|V(G′)|`, which is the value of
/// the Cartesian lower bound. The `r = 3` instance is audited.
pub fn check_cartesian_sharpness(gprime: &Graph, r: usize) -> Result<BoundReport, BoundsError> {
    if r < 3 {
        return Err(precondition("clique size must be at least 3"));
    }
    let g = families::cartesian_sharpness_factor(gprime)?;
    let kr = families::complete(r)?;
    product_cap(g.order() * r)?;
    let p = products::cartesian(&g, &kr)?;
    let lhs = packing(&p.graph, 2, true)?;
    let report = BoundReport::compare(
        TheoremId::CartesianL2tSharpness,
        Some(2),
        q(lhs.value),
        Relation::Eq,
        q(2 * gprime.order()),
    )
    .with_witness(json!({ "set": lhs.witness, "r": r }));
    Ok(if r >= 4 { report } else { report.audit() })
}

/// Smallest integer `m` with `m² ≥ x`.
fn ceil_sqrt(x: u64) -> u64 {
    let mut m = (x as f64).sqrt() as u64;
    while m * m < x {
        m += 1;
    }
    while m > 0 && (m - 1) * (m - 1) >= x {
        m -= 1;
    }
    m
}

/// `χ_×k + L_k ≥ 2√n`, `χ_×k · L_k ≥ n` and `χ_×k ≤ ⌈n/k⌉`.
pub fn check_chi_bounds(g: &Graph, k: usize) -> Result<[BoundReport; 3], BoundsError> {
    let n = g.order();
    if n < 2 {
        return Err(precondition("order must be at least 2"));
    }
    let chi = chi_times_k(g, k)?;
    let lk = packing(g, k, false)?;
    let sum = (chi.value + lk.value) as u64;
    let four_n = 4 * n as u64;
    let status = match (sum * sum).cmp(&four_n) {
        std::cmp::Ordering::Less => Status::Violated,
        std::cmp::Ordering::Equal => Status::Sharp,
        std::cmp::Ordering::Greater => Status::Holds,
    };
    let witness =
        json!({ "partition": chi.witness, "set": lk.witness, "chi": chi.value, "l_k": lk.value });
    let sum_report = BoundReport {
        status,
        ..BoundReport::compare(
            TheoremId::ChiSum,
            Some(k),
            q(chi.value + lk.value),
            Relation::Ge,
            qi(ceil_sqrt(four_n) as i64),
        )
    }
    .with_witness(
        json!({ "four_n": four_n, "sum_squared": sum * sum, "chi": chi.value, "l_k": lk.value }),
    );
    let exceeds_literal = chi.value * k > n;
    Ok([
        sum_report,
        BoundReport::compare(
            TheoremId::ChiProduct,
            Some(k),
            q(chi.value * lk.value),
            Relation::Ge,
            q(n),
        )
        .with_witness(witness.clone()),
        BoundReport::compare(
            TheoremId::ChiCeiling,
            Some(k),
            q(chi.value),
            Relation::Le,
            q(n.div_ceil(k)),
        )
        .with_witness(json!({ "partition": chi.witness, "exceeds_n_over_k": exceeds_literal })),
    ])
}

/// `χ_×2(G) ≤ χ_×2(G ⊙ H) ≤ χ_×2(G) + ⌈|V(H)|/2⌉` and
/// `χ_×2(G ⊙ H) ≥ ⌈(Δ(G) + 1 + |V(H)|)/2⌉`.
pub fn check_corona_chi(g: &Graph, h: &Graph) -> Result<[BoundReport; 3], BoundsError> {
    product_cap(g.order() * (1 + h.order()))?;
    let p = products::corona(g, h)?;
    let base = chi_times_k(g, 2)?;
    let full = chi_times_k(&p.graph, 2)?;
    let m = h.order();
    let witness = json!({ "partition": full.witness, "chi_g": base.value, "h_order": m });
    Ok([
        BoundReport::compare(
            TheoremId::CoronaChiLower,
            Some(2),
            q(full.value),
            Relation::Ge,
            q(base.value),
        )
        .with_witness(witness.clone()),
        BoundReport::compare(
            TheoremId::CoronaChiUpper,
            Some(2),
            q(full.value),
            Relation::Le,
            q(base.value + m.div_ceil(2)),
        )
        .with_witness(witness.clone()),
        BoundReport::compare(
            TheoremId::CoronaChiNeighborhood,
            Some(2),
            q(full.value),
            Relation::Ge,
            q((g.max_degree() + 1 + m).div_ceil(2)),
        )
        .with_witness(witness),
    ])
}

/// Cited facts used inside proofs: `L_{k,t} ≤ kn/δ`; and on trees
/// `L_{k,t} ≤ kγ_t` and `ρ_o = γ_t`. Items whose preconditions fail come back
/// as errors in their slot.
pub fn check_known_auxiliary_bounds(
    g: &Graph,
    k: usize,
) -> Vec<(TheoremId, Result<BoundReport, BoundsError>)> {
    let n = g.order();
    let mut out = Vec::new();
    let kn_delta = (|| {
        let delta = g.min_degree();
        if n == 0 || delta == 0 {
            return Err(precondition("minimum degree must be at least 1"));
        }
        let best = packing(g, k, true)?;
        Ok(BoundReport::compare(
            TheoremId::AuxKnOverDelta,
            Some(k),
            q(best.value),
            Relation::Le,
            Ratio::new((k * n) as i64, delta as i64),
        )
        .with_witness(json!({ "set": best.witness })))
    })();
    out.push((TheoremId::AuxKnOverDelta, kn_delta));

    let tree_ok = || {
        if !g.is_tree() || n < 2 {
            return Err(precondition("needs a tree with at least 2 vertices"));
        }
        Ok(())
    };
    let k_gamma = tree_ok().and_then(|_| {
        let best = packing(g, k, true)?;
        let gt = min_dominating(g, true)?;
        Ok(BoundReport::compare(
            TheoremId::AuxKGammaT,
            Some(k),
            q(best.value),
            Relation::Le,
            q(k * gt.value),
        )
        .with_witness(json!({ "set": best.witness, "gamma_t_set": gt.witness })))
    });
    out.push((TheoremId::AuxKGammaT, k_gamma));
    let equal = tree_ok().and_then(|_| {
        let ro = rho_o(g)?;
        let gt = min_dominating(g, true)?;
        Ok(BoundReport::compare(
            TheoremId::AuxOpenPackingEqualsGammaT,
            Some(1),
            q(ro.value),
            Relation::Eq,
            q(gt.value),
        )
        .with_witness(json!({ "rho_o_set": ro.witness, "gamma_t_set": gt.witness })))
    });
    out.push((TheoremId::AuxOpenPackingEqualsGammaT, equal));
    out
}

/// Ω-membership outcome as used by the max-degree characterization.
pub fn omega(g: &Graph) -> Result<OmegaMembership, BoundsError> {
    Ok(families::omega_membership(g)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::*;

    fn qq(n: i64, d: i64) -> Quantity {
        Ratio::new(n, d)
    }

    #[test]
    fn degree_sequence_examples() {
        let r = check_degree_sequence_bound(&complete(4).unwrap(), 2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(2), q(2), Status::Sharp));
        let r = check_degree_sequence_bound(&fig1_graph(), 2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(6), q(8), Status::Holds));
        let r = check_degree_sequence_bound(&path(4).unwrap(), 1).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(2), q(3), Status::Holds));
        assert!(check_degree_sequence_bound(&empty(1), 1).is_err());
    }

    #[test]
    fn max_degree_examples() {
        let r = check_max_degree_bound(&fig1_graph(), 2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(6), q(6), Status::Sharp));
        let c = r.characterization.unwrap();
        assert!(c.structural_condition_holds && c.agree);

        let r = check_max_degree_bound(&complete(5).unwrap(), 2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(2), q(3), Status::Holds));
        let c = r.characterization.unwrap();
        assert!(!c.structural_condition_holds && c.agree);

        let r = check_max_degree_bound(&path(4).unwrap(), 2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(4), q(4), Status::Sharp));
        assert!(r.characterization.unwrap().agree);
    }

    #[test]
    fn regular_consequence_examples() {
        for (g, k) in [
            (cycle(4).unwrap(), 1),
            (complete(4).unwrap(), 2),
            (complete(5).unwrap(), 2),
        ] {
            assert_eq!(
                check_regular_consequence(&g, k).unwrap().status,
                Status::Vacuous
            );
        }
    }

    #[test]
    fn tree_delta_prime_examples() {
        let r = check_tree_delta_prime_bound(&star(4).unwrap(), 4).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(3), qq(10, 3), Status::Holds));
        let r = check_tree_delta_prime_bound(&star(6).unwrap(), 4).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(3), qq(14, 3), Status::Holds));
        assert!(matches!(
            check_tree_delta_prime_bound(&path(4).unwrap(), 4),
            Err(BoundsError::Precondition(_))
        ));
    }

    #[test]
    fn edge_deletion_examples() {
        let c6 = cycle(6).unwrap();
        for e in c6.edges() {
            let [lo, _] = check_edge_deletion(&c6, e, 2).unwrap();
            assert_eq!(lo.status, Status::Sharp);
        }
        let st = double_star(2, 2).unwrap();
        let [lo, hi] = check_edge_deletion(&st, (0, 1), 1).unwrap();
        assert_eq!((lo.lhs, hi.lhs, hi.status), (q(2), q(4), Status::Sharp));
        let p3 = path(3).unwrap();
        let [lo, hi] = check_edge_deletion(&p3, (0, 1), 1).unwrap();
        assert_eq!(
            (lo.lhs, lo.rhs, lo.status, hi.status),
            (q(2), q(3), Status::Holds, Status::Holds)
        );
        assert!(check_edge_deletion(&p3, (0, 2), 1).is_err());
    }

    #[test]
    fn open_packing_sandwich_examples() {
        let [lo, _] = check_open_packing_sandwich(&star(3).unwrap()).unwrap();
        assert_eq!((lo.lhs, lo.rhs, lo.status), (q(3), q(3), Status::Sharp));
        let [lo, hi] = check_open_packing_sandwich(&complete(4).unwrap()).unwrap();
        assert_eq!(
            (lo.status, hi.rhs, hi.status),
            (Status::Sharp, qq(10, 3), Status::Holds)
        );
        assert!(check_open_packing_sandwich(&empty(3)).is_err());
        assert!(check_open_packing_sandwich(&complete(2).unwrap()).is_err());
    }

    #[test]
    fn tree_sandwich_examples() {
        let [lo, _] = check_tree_sandwich(&star(5).unwrap()).unwrap();
        assert_eq!(lo.status, Status::Sharp);
        let c = lo.characterization.unwrap();
        assert!(c.equality_holds && c.structural_condition_holds);

        let [_, hi] = check_tree_sandwich(&realization_tree(3, 6).unwrap()).unwrap();
        assert_eq!((hi.lhs, hi.rhs, hi.status), (q(6), q(6), Status::Sharp));
        assert!(hi.characterization.is_some());

        let [lo, hi] = check_tree_sandwich(&path(4).unwrap()).unwrap();
        assert_eq!((lo.lhs, hi.lhs, hi.rhs), (q(3), q(4), q(4)));
        assert!(hi.characterization.unwrap().equality_holds);
        assert!(check_tree_sandwich(&cycle(4).unwrap()).is_err());
    }

    #[test]
    fn unique_set_leaf_examples() {
        let r = check_unique_set_leaves(&path(3).unwrap()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(2), q(2), Status::Holds));
        assert_eq!(
            check_unique_set_leaves(&cycle(4).unwrap()).unwrap().status,
            Status::Holds
        );
        assert_eq!(
            check_unique_set_leaves(&star(3).unwrap()).unwrap().status,
            Status::Vacuous
        );
    }

    #[test]
    fn chi_examples() {
        for g in [complete(4).unwrap(), cycle(4).unwrap(), star(3).unwrap()] {
            let [sum, product, ceiling] = check_chi_bounds(&g, 2).unwrap();
            assert_eq!((sum.lhs, sum.status), (q(4), Status::Sharp));
            assert_ne!(product.status, Status::Violated);
            assert_ne!(ceiling.status, Status::Violated);
        }
        assert_eq!(ceil_sqrt(20), 5);
        assert_eq!(ceil_sqrt(16), 4);
        assert_eq!(ceil_sqrt(0), 0);
    }

    #[test]
    fn corona_examples() {
        let [lo, hi, nb] = check_corona_chi(&complete(2).unwrap(), &complete(1).unwrap()).unwrap();
        assert_eq!((lo.lhs, nb.rhs, nb.status), (q(2), q(2), Status::Sharp));
        assert_ne!(hi.status, Status::Violated);

        let (g, h) = corona_chi_family(2, 2).unwrap();
        let [_, hi, _] = check_corona_chi(&g, &h).unwrap();
        assert_eq!(hi.lhs, q(3));
        let (g, h) = corona_chi_family(3, 0).unwrap();
        let [lo, _, _] = check_corona_chi(&g, &h).unwrap();
        assert_eq!((lo.lhs, lo.rhs, lo.status), (q(3), q(3), Status::Sharp));
    }

    #[test]
    fn auxiliary_examples() {
        let out = check_known_auxiliary_bounds(&complete(4).unwrap(), 2);
        let r = out[0].1.as_ref().unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(2), qq(8, 3), Status::Holds));
        assert!(out[1].1.is_err() && out[2].1.is_err());

        let out = check_known_auxiliary_bounds(&path(4).unwrap(), 2);
        let eq = out[2].1.as_ref().unwrap();
        assert_eq!((eq.lhs, eq.rhs, eq.status), (q(2), q(2), Status::Holds));

        let out = check_known_auxiliary_bounds(&star(3).unwrap(), 2);
        let kg = out[1].1.as_ref().unwrap();
        assert_eq!((kg.lhs, kg.rhs, kg.status), (q(3), q(4), Status::Holds));
    }

    #[test]
    fn product_examples() {
        let p4 = cartesian_sharpness_factor(&complete(2).unwrap()).unwrap();
        let k4 = complete(4).unwrap();
        let r =
            &check_product_bounds(&p4, &k4, ProductKind::Cartesian, Variant::L2t, None).unwrap()[0];
        let p = products::cartesian(&p4, &k4).unwrap();
        let truth = crate::solvers::brute_force_oracle(&p.graph, Invariant::TotalLimitedPacking(2))
            .unwrap();
        assert_eq!((r.lhs, r.rhs), (q(truth.unwrap()), q(4)));
        assert_eq!(r.witness.as_ref().unwrap()["construction_feasible"], true);

        let r = &check_product_bounds(
            &path(4).unwrap(),
            &complete(2).unwrap(),
            ProductKind::Direct,
            Variant::L2t,
            None,
        )
        .unwrap()[0];
        assert_eq!((r.lhs, r.status), (q(8), Status::Sharp));

        let rs = check_product_bounds(
            &complete(2).unwrap(),
            &star(2).unwrap(),
            ProductKind::Rooted,
            Variant::L2t,
            Some(0),
        )
        .unwrap();
        assert_eq!((rs[0].rhs, rs[1].rhs), (q(4), q(6)));
        assert!(rs.iter().all(|r| r.status != Status::Violated));
        assert!(
            check_product_bounds(&empty(5), &empty(5), ProductKind::Direct, Variant::L2, None)
                .is_err()
        );
    }

    #[test]
    fn cartesian_sharpness_matches_oracle() {
        let k2 = complete(2).unwrap();
        for r in [3, 4] {
            let report = check_cartesian_sharpness(&k2, r).unwrap();
            let g = cartesian_sharpness_factor(&k2).unwrap();
            let p = products::cartesian(&g, &complete(r).unwrap()).unwrap();
            let truth =
                crate::solvers::brute_force_oracle(&p.graph, Invariant::TotalLimitedPacking(2))
                    .unwrap();
            assert_eq!(report.lhs, q(truth.unwrap()));
            assert_eq!(report.rhs, q(4));
            assert_eq!(report.strength == Strength::Solid, r >= 4);
        }
    }

    #[test]
    fn rooted_formula_examples() {
        let p3 = path(3).unwrap();
        let r = check_rooted_l2_formula(&p3, &p3, 0).unwrap();
        assert_eq!(r.rhs, q(6));
        assert_eq!(r.witness.as_ref().unwrap()["case"], "root_avoided");

        let k2 = complete(2).unwrap();
        let r = check_rooted_l2_formula(&k2, &k2, 0).unwrap();
        assert_eq!((r.rhs, r.strength), (q(4), Strength::Audit));
        assert_eq!(r.witness.as_ref().unwrap()["case"], "root_in_every_set");

        let h = cycle(5).unwrap();
        let r = check_rooted_l2_formula(&complete(1).unwrap(), &h, 2).unwrap();
        assert_eq!((r.lhs, r.rhs, r.status), (q(3), q(3), Status::Holds));
    }
}
