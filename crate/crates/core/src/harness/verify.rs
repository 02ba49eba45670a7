//! Batch verification: runs checkers over a corpus and writes one JSON record
//! per (graph, theorem, k) followed by a summary line.
//!
//! Each graph (or factor pair) is checked on a single worker; batches are
//! merged in corpus order, so output does not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::corpus::{generate_corpus, CorpusError, CorpusItem, CorpusSpec, Source};
use super::graph6::graph6_string;
use crate::bounds::{
    self, quantity_json, BoundReport, BoundsError, CharacterizationReport, Quantity, Relation,
    Status, Strength, TheoremId, Variant,
};
use crate::graph::Graph;
use crate::products::ProductKind;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest corpus whose ordered pairs are checked by the product checks.
pub const PAIR_CORPUS_CAP: usize = 128;

const BATCH: usize = 2048;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("thread pool: {0}")]
    Pool(String),
    #[error("product checks need a corpus of at most {cap} graphs, got {n}")]
    PairCorpusTooLarge { n: usize, cap: usize },
    #[error("no checks selected")]
    NoChecks,
    #[error("k must be at least 1")]
    KZero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    DegreeSequenceBound,
    MaxDegreeBound,
    RegularConsequence,
    TreeDeltaPrimeBound,
    EdgeDeletion,
    OpenPackingSandwich,
    TreeSandwich,
    UniqueSetLeaves,
    ChiBounds,
    AuxiliaryBounds,
    Cartesian,
    Direct,
    Rooted,
    Corona,
}

impl Check {
    /// Checks that take one graph.
    pub const SINGLE: [Check; 10] = [
        Check::DegreeSequenceBound,
        Check::MaxDegreeBound,
        Check::RegularConsequence,
        Check::TreeDeltaPrimeBound,
        Check::EdgeDeletion,
        Check::OpenPackingSandwich,
        Check::TreeSandwich,
        Check::UniqueSetLeaves,
        Check::ChiBounds,
        Check::AuxiliaryBounds,
    ];

    /// Checks over ordered factor pairs.
    pub const PAIR: [Check; 4] = [
        Check::Cartesian,
        Check::Direct,
        Check::Rooted,
        Check::Corona,
    ];

    pub fn is_pair(self) -> bool {
        Self::PAIR.contains(&self)
    }

    /// Whether the check runs once per requested `k` rather than at `k = 2`.
    pub fn uses_k(self) -> bool {
        matches!(
            self,
            Check::DegreeSequenceBound
                | Check::MaxDegreeBound
                | Check::RegularConsequence
                | Check::EdgeDeletion
                | Check::ChiBounds
                | Check::AuxiliaryBounds
        )
    }

    pub fn name(self) -> String {
        serde_json::to_value(self)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default()
    }

    pub fn all() -> Vec<Check> {
        Self::SINGLE.iter().chain(&Self::PAIR).copied().collect()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::all()
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Holds,
    Violated,
    Vacuous,
    Sharp,
    /// A precondition or cap ruled the check out for this graph.
    Skipped,
}

impl From<Status> for RecordStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Holds => RecordStatus::Holds,
            Status::Violated => RecordStatus::Violated,
            Status::Vacuous => RecordStatus::Vacuous,
            Status::Sharp => RecordStatus::Sharp,
        }
    }
}

/// A single graph's corpus index, or a factor pair such as `"3,5"` or
/// `"3+K1,5"` (first factor augmented with an isolated vertex).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GraphId {
    Single(usize),
    Pair(String),
}

fn serialize_opt_quantity<S: Serializer>(x: &Option<Quantity>, s: S) -> Result<S::Ok, S::Error> {
    x.as_ref().map(quantity_json).serialize(s)
}

/// One report line. The first eight fields are the fixed schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub graph_id: GraphId,
    pub graph6: String,
    pub theorem_id: TheoremId,
    pub k: Option<usize>,
    #[serde(serialize_with = "serialize_opt_quantity")]
    pub lhs: Option<Quantity>,
    #[serde(serialize_with = "serialize_opt_quantity")]
    pub rhs: Option<Quantity>,
    pub status: RecordStatus,
    pub witness: Value,
    pub relation: Option<Relation>,
    pub strength: Option<Strength>,
    pub characterization: Option<CharacterizationReport>,
}

impl Record {
    fn new(
        id: &GraphId,
        graph6: &str,
        theorem: TheoremId,
        k: Option<usize>,
        result: Result<BoundReport, BoundsError>,
    ) -> Self {
        match result {
            Ok(r) => Record {
                graph_id: id.clone(),
                graph6: graph6.to_owned(),
                theorem_id: r.theorem,
                k: r.k,
                lhs: Some(r.lhs),
                rhs: Some(r.rhs),
                status: r.status.into(),
                witness: r.witness.unwrap_or(Value::Null),
                relation: Some(r.relation),
                strength: Some(r.strength),
                characterization: r.characterization,
            },
            Err(e) => Record {
                graph_id: id.clone(),
                graph6: graph6.to_owned(),
                theorem_id: theorem,
                k,
                lhs: None,
                rhs: None,
                status: RecordStatus::Skipped,
                witness: json!({ "reason": e.to_string() }),
                relation: None,
                strength: None,
                characterization: None,
            },
        }
    }

    pub fn is_solid_violation(&self) -> bool {
        self.status == RecordStatus::Violated && self.strength == Some(Strength::Solid)
    }
}

type Entry = (TheoremId, Option<usize>, Result<BoundReport, BoundsError>);

/// Spreads a multi-report result over its theorem slots.
fn spread<const N: usize>(
    ids: [TheoremId; N],
    k: Option<usize>,
    r: Result<[BoundReport; N], BoundsError>,
) -> Vec<Entry> {
    match r {
        Ok(reports) => ids
            .into_iter()
            .zip(reports)
            .map(|(t, r)| (t, k, Ok(r)))
            .collect(),
        Err(e) => ids.into_iter().map(|t| (t, k, Err(e.clone()))).collect(),
    }
}

/// Runs one single-graph check. Pair checks yield nothing here.
pub fn run_single(g: &Graph, check: Check, k: usize) -> Vec<Entry> {
    use TheoremId as T;
    let kk = Some(k);
    match check {
        Check::DegreeSequenceBound => vec![(
            T::DegreeSequenceBound,
            kk,
            bounds::check_degree_sequence_bound(g, k),
        )],
        Check::MaxDegreeBound => {
            vec![(T::MaxDegreeBound, kk, bounds::check_max_degree_bound(g, k))]
        }
        Check::RegularConsequence => vec![(
            T::RegularConsequence,
            kk,
            bounds::check_regular_consequence(g, k),
        )],
        Check::TreeDeltaPrimeBound => {
            let r = g
                .delta_prime()
                .map_err(BoundsError::from)
                .and_then(|c| bounds::check_tree_delta_prime_bound(g, c));
            vec![(T::TreeDeltaPrimeBound, Some(2), r)]
        }
        Check::EdgeDeletion => {
            let ids = [T::EdgeDeletionLower, T::EdgeDeletionUpper];
            let edges = g.edges();
            if edges.is_empty() {
                return spread(
                    ids,
                    kk,
                    Err(BoundsError::Precondition("graph has no edges".into())),
                );
            }
            edges
                .into_iter()
                .flat_map(|e| spread(ids, kk, bounds::check_edge_deletion(g, e, k)))
                .collect()
        }
        Check::OpenPackingSandwich => spread(
            [T::OpenPackingLower, T::OpenPackingUpper],
            Some(2),
            bounds::check_open_packing_sandwich(g),
        ),
        Check::TreeSandwich => spread(
            [T::TreeSandwichLower, T::TreeSandwichUpper],
            Some(2),
            bounds::check_tree_sandwich(g),
        ),
        Check::UniqueSetLeaves => vec![(
            T::UniqueSetLeaves,
            Some(2),
            bounds::check_unique_set_leaves(g),
        )],
        Check::ChiBounds => spread(
            [T::ChiSum, T::ChiProduct, T::ChiCeiling],
            kk,
            bounds::check_chi_bounds(g, k),
        ),
        Check::AuxiliaryBounds => bounds::check_known_auxiliary_bounds(g, k)
            .into_iter()
            .map(|(t, r)| {
                (
                    t,
                    if t == T::AuxOpenPackingEqualsGammaT {
                        Some(1)
                    } else {
                        kk
                    },
                    r,
                )
            })
            .collect(),
        Check::Cartesian | Check::Direct | Check::Rooted | Check::Corona => Vec::new(),
    }
}

fn first<const N: usize>(
    r: Result<Vec<BoundReport>, BoundsError>,
) -> Result<[BoundReport; N], BoundsError> {
    r.map(|v| {
        v.try_into()
            .expect("checker returns a fixed number of reports")
    })
}

/// Runs one product check on the ordered pair `(g, h)`.
pub fn run_pair(g: &Graph, h: &Graph, check: Check) -> Vec<Entry> {
    use TheoremId as T;
    let k = Some(2);
    let product =
        |kind, variant| first::<1>(bounds::check_product_bounds(g, h, kind, variant, None));
    match check {
        Check::Cartesian => [
            spread(
                [T::CartesianL2tLower],
                k,
                product(ProductKind::Cartesian, Variant::L2t),
            ),
            spread(
                [T::CartesianL2Upper],
                k,
                product(ProductKind::Cartesian, Variant::L2),
            ),
        ]
        .concat(),
        Check::Direct => [
            spread(
                [T::DirectL2tLower],
                k,
                product(ProductKind::Direct, Variant::L2t),
            ),
            spread(
                [T::DirectL2Lower],
                k,
                product(ProductKind::Direct, Variant::L2),
            ),
        ]
        .concat(),
        Check::Rooted => h
            .vertices()
            .flat_map(|root| {
                [
                    spread(
                        [T::RootedL2tLower, T::RootedL2tUpper],
                        k,
                        first(bounds::check_product_bounds(
                            g,
                            h,
                            ProductKind::Rooted,
                            Variant::L2t,
                            Some(root),
                        )),
                    ),
                    spread(
                        [T::RootedL2Formula],
                        k,
                        bounds::check_rooted_l2_formula(g, h, root).map(|r| [r]),
                    ),
                ]
                .concat()
            })
            .collect(),
        Check::Corona => spread(
            [
                T::CoronaChiLower,
                T::CoronaChiUpper,
                T::CoronaChiNeighborhood,
            ],
            k,
            bounds::check_corona_chi(g, h),
        ),
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub holds: usize,
    pub violated: usize,
    pub vacuous: usize,
    pub sharp: usize,
    pub skipped: usize,
}

impl Tally {
    fn add(&mut self, s: RecordStatus) {
        match s {
            RecordStatus::Holds => self.holds += 1,
            RecordStatus::Violated => self.violated += 1,
            RecordStatus::Vacuous => self.vacuous += 1,
            RecordStatus::Sharp => self.sharp += 1,
            RecordStatus::Skipped => self.skipped += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.holds + self.violated + self.vacuous + self.sharp + self.skipped
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Agreement {
    pub total: usize,
    pub agree: usize,
    pub disagree: usize,
    /// Both sides of the statement true.
    pub both_hold: usize,
    pub rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub units: usize,
    pub theorems: BTreeMap<TheoremId, Tally>,
    pub characterizations: BTreeMap<String, Agreement>,
    pub solid_violations: usize,
    pub corpus: String,
    pub corpus_fingerprint: String,
    pub checks: Vec<Check>,
    pub ks: Vec<usize>,
    pub tool_version: String,
    pub seed: Option<u64>,
}

impl Summary {
    pub fn tally(&self, t: TheoremId) -> Tally {
        self.theorems.get(&t).cloned().unwrap_or_default()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOptions {
    pub checks: Vec<Check>,
    pub ks: Vec<usize>,
    pub jobs: usize,
    pub seed: Option<u64>,
}

impl VerifyOptions {
    pub fn new(checks: Vec<Check>, ks: Vec<usize>) -> Self {
        VerifyOptions {
            checks,
            ks,
            jobs: 1,
            seed: None,
        }
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }
}

fn describe(source: &Source) -> String {
    match source {
        Source::ExhaustiveLabeled(n) => format!("exhaustive_labeled({n})"),
        Source::Graph6File(p) => format!("graph6_file({})", p.display()),
        Source::Random {
            n,
            edge_probability,
            count,
            seed,
        } => format!("random({n}, {edge_probability}, {count}, seed={seed})"),
        Source::AllTrees(n) => format!("all_trees({n})"),
        Source::StandardFactors => "standard_factors".into(),
        Source::Graphs(gs) => format!("graphs({})", gs.len()),
    }
}

struct Accumulator {
    records: usize,
    theorems: BTreeMap<TheoremId, Tally>,
    characterizations: BTreeMap<String, Agreement>,
    solid_violations: usize,
    hasher: Sha256,
    units: usize,
}

impl Accumulator {
    fn add(&mut self, r: &Record) {
        self.records += 1;
        self.theorems.entry(r.theorem_id).or_default().add(r.status);
        if r.is_solid_violation() {
            self.solid_violations += 1;
        }
        if let Some(c) = &r.characterization {
            let a = self.characterizations.entry(c.name.to_owned()).or_default();
            a.total += 1;
            if c.agree {
                a.agree += 1;
            } else {
                a.disagree += 1;
            }
            if c.equality_holds && c.structural_condition_holds {
                a.both_hold += 1;
            }
        }
    }

    fn fingerprint(&mut self, graph6: &str) {
        self.units += 1;
        self.hasher.update(graph6.as_bytes());
        self.hasher.update(b"\n");
    }
}

struct Unit {
    id: GraphId,
    graph6: String,
    first: Graph,
    second: Option<Graph>,
}

fn g6(g: &Graph) -> String {
    graph6_string(g).expect("corpus graphs fit the graph6 size range")
}

fn run_unit(unit: &Unit, opts: &VerifyOptions) -> Vec<Record> {
    let mut out = Vec::new();
    let mut push = |entries: Vec<Entry>| {
        out.extend(
            entries
                .into_iter()
                .map(|(t, k, r)| Record::new(&unit.id, &unit.graph6, t, k, r)),
        );
    };
    match &unit.second {
        None => {
            for &check in opts.checks.iter().filter(|c| !c.is_pair()) {
                if check.uses_k() {
                    for &k in &opts.ks {
                        push(run_single(&unit.first, check, k));
                    }
                } else {
                    push(run_single(&unit.first, check, 2));
                }
            }
        }
        Some(h) => {
            let augmented = matches!(unit.id, GraphId::Pair(ref s) if s.contains("+K1"));
            for &check in opts.checks.iter().filter(|c| c.is_pair()) {
                if augmented && check != Check::Direct {
                    continue;
                }
                push(run_pair(&unit.first, h, check));
            }
        }
    }
    out
}

fn pair_units(items: &[CorpusItem], checks: &[Check]) -> Vec<Unit> {
    let direct = checks.contains(&Check::Direct);
    let mut units = Vec::new();
    for a in items {
        for b in items {
            let mut variants = vec![(
                format!("{},{}", a.id, b.id),
                a.graph.clone(),
                b.graph.clone(),
            )];
            if direct {
                variants.push((
                    format!("{}+K1,{}", a.id, b.id),
                    a.graph.with_isolated(1),
                    b.graph.clone(),
                ));
                variants.push((
                    format!("{},{}+K1", a.id, b.id),
                    a.graph.clone(),
                    b.graph.with_isolated(1),
                ));
            }
            for (label, g, h) in variants {
                units.push(Unit {
                    id: GraphId::Pair(label),
                    graph6: format!("{},{}", g6(&g), g6(&h)),
                    first: g,
                    second: Some(h),
                });
            }
        }
    }
    units
}

/// Runs `opts.checks` over the corpus and hands every record to `sink` in
/// corpus order. Single-graph checks run first, then product checks over all
/// ordered pairs of corpus graphs.
pub fn verify_with<F>(
    spec: &CorpusSpec,
    opts: &VerifyOptions,
    mut sink: F,
) -> Result<Summary, VerifyError>
where
    F: FnMut(&Record) -> Result<(), VerifyError>,
{
    if opts.checks.is_empty() {
        return Err(VerifyError::NoChecks);
    }
    if opts.ks.contains(&0) {
        return Err(VerifyError::KZero);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| VerifyError::Pool(e.to_string()))?;
    let mut acc = Accumulator {
        records: 0,
        theorems: BTreeMap::new(),
        characterizations: BTreeMap::new(),
        solid_violations: 0,
        hasher: Sha256::new(),
        units: 0,
    };

    let mut process = |units: Vec<Unit>, acc: &mut Accumulator| -> Result<(), VerifyError> {
        let results: Vec<Vec<Record>> =
            pool.install(|| units.par_iter().map(|u| run_unit(u, opts)).collect());
        for (unit, records) in units.iter().zip(results) {
            acc.fingerprint(&unit.graph6);
            for r in &records {
                acc.add(r);
                sink(r)?;
            }
        }
        Ok(())
    };

    let wants_single = opts.checks.iter().any(|c| !c.is_pair());
    let wants_pair = opts.checks.iter().any(|c| c.is_pair());
    let mut kept = Vec::new();
    let mut corpus = generate_corpus(spec)?;
    loop {
        let mut batch = Vec::with_capacity(BATCH);
        for item in corpus.by_ref().take(BATCH) {
            batch.push(item?);
        }
        if batch.is_empty() {
            break;
        }
        if wants_pair {
            kept.extend(batch.iter().cloned());
            if kept.len() > PAIR_CORPUS_CAP {
                return Err(VerifyError::PairCorpusTooLarge {
                    n: kept.len(),
                    cap: PAIR_CORPUS_CAP,
                });
            }
        }
        if wants_single {
            let units = batch
                .into_iter()
                .map(|item| Unit {
                    id: GraphId::Single(item.id),
                    graph6: g6(&item.graph),
                    first: item.graph,
                    second: None,
                })
                .collect();
            process(units, &mut acc)?;
        }
    }
    if wants_pair {
        for chunk in pair_units(&kept, &opts.checks).chunks(BATCH) {
            let units = chunk
                .iter()
                .map(|u| Unit {
                    id: u.id.clone(),
                    graph6: u.graph6.clone(),
                    first: u.first.clone(),
                    second: u.second.clone(),
                })
                .collect();
            process(units, &mut acc)?;
        }
    }

    let mut characterizations = acc.characterizations;
    for a in characterizations.values_mut() {
        a.rate = if a.total == 0 {
            1.0
        } else {
            a.agree as f64 / a.total as f64
        };
    }
    let digest = acc.hasher.finalize();
    Ok(Summary {
        records: acc.records,
        units: acc.units,
        theorems: acc.theorems,
        characterizations,
        solid_violations: acc.solid_violations,
        corpus: describe(&spec.source),
        corpus_fingerprint: digest.iter().map(|b| format!("{b:02x}")).collect(),
        checks: opts.checks.clone(),
        ks: opts.ks.clone(),
        tool_version: TOOL_VERSION.to_owned(),
        seed: opts.seed.or(spec.seed()),
    })
}

/// Writes JSON lines (records, then `{"summary": …}`) to `out`.
pub fn verify<W: Write>(
    spec: &CorpusSpec,
    opts: &VerifyOptions,
    out: &mut W,
) -> Result<Summary, VerifyError> {
    let summary = verify_with(spec, opts, |r| {
        serde_json::to_writer(&mut *out, r).map_err(io::Error::from)?;
        out.write_all(b"\n")?;
        Ok(())
    })?;
    serde_json::to_writer(&mut *out, &json!({ "summary": summary })).map_err(io::Error::from)?;
    out.write_all(b"\n")?;
    out.flush()?;
    Ok(summary)
}

/// Keeps every record in memory.
pub fn verify_collect(spec: &CorpusSpec, opts: &VerifyOptions) -> Result<RunReport, VerifyError> {
    let mut records = Vec::new();
    let summary = verify_with(spec, opts, |r| {
        records.push(r.clone());
        Ok(())
    })?;
    Ok(RunReport { records, summary })
}
