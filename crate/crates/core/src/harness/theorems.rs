//! Exhaustive replay of the structural theorems over graph corpora.
//!
//! Each theorem filters graphs by its hypotheses (checked here, so corpus
//! files carry no annotations), then checks its conclusion. A graph that
//! breaks the conclusion yields a [`WitnessBundle`] that can be replayed.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, SpanningTree, Vertex, VertexSet};
use crate::nonsep::{verify_fundamental_tutte_tree, verify_tutte_tree, Verdict};
use crate::planar::{leaves_clique, leaves_on_common_face, planar_embed, Embedding};
use crate::search::{
    build_ftt_block_structured, build_ftt_series_parallel, check_spg_conditions, decide_planar_tutte,
    find_fundamental_tutte_tree, find_hamiltonian_path, find_tutte_tree, has_hamiltonian_uv_path, Anchors,
    SearchConfig, SearchError,
};
use crate::structure::{connectivity_at_least, h_bridges, is_series_parallel, two_vertex_cuts};

use super::enumerate::{for_each_spanning_tree, DEFAULT_TREE_CAP};
use super::graph6::write_graph6;
use super::{parse_edge_list, Corpus, HarnessError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    /// A planar graph has a Tutte tree iff it is Hamiltonian or some
    /// spanning tree has a triangle as its leaf set.
    #[serde(rename = "T-planar")]
    TPlanar,
    /// A spanning tree whose leaves induce a 3-connected graph is a Tutte tree.
    #[serde(rename = "T-leaf3con")]
    TLeaf3con,
    /// In a plane graph, the leaves of a fundamental Tutte tree share a face.
    #[serde(rename = "T-face")]
    TFace,
    /// The leaves of a Tutte tree are pairwise adjacent.
    #[serde(rename = "L-clique")]
    LClique,
    /// At a 2-cut of a graph with a Tutte tree: two bridges, one with a
    /// Hamiltonian path between the cut vertices; or three, one trivial and
    /// another with such a path.
    #[serde(rename = "L-2cut")]
    L2cut,
    /// With a cut vertex, a fundamental Tutte tree exists iff the nontrivial
    /// blocks are Hamiltonian leaf blocks whose articulation vertex has
    /// degree two.
    #[serde(rename = "L-blocks")]
    LBlocks,
    /// A 2-connected graph with a fundamental Tutte tree has at most three
    /// bridges at every 2-cut.
    #[serde(rename = "L-3bridges")]
    L3bridges,
    /// ... and all of them but possibly one (all, when there are three) have
    /// a Hamiltonian path between the cut vertices.
    #[serde(rename = "C-uvhp")]
    CUvhp,
    /// A planar graph with a Tutte tree is traceable.
    #[serde(rename = "C-traceable")]
    CTraceable,
    /// A graph with a Tutte tree is 2-connected.
    #[serde(rename = "O-2con")]
    O2con,
    /// The 2-cut conditions characterize 2-connected series-parallel graphs
    /// with a fundamental Tutte tree.
    #[serde(rename = "T-spg")]
    TSpg,
    /// Every Tutte tree is a fundamental Tutte tree.
    #[serde(rename = "M-monotone")]
    MMonotone,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::TPlanar,
        TheoremId::TLeaf3con,
        TheoremId::TFace,
        TheoremId::LClique,
        TheoremId::L2cut,
        TheoremId::LBlocks,
        TheoremId::L3bridges,
        TheoremId::CUvhp,
        TheoremId::CTraceable,
        TheoremId::O2con,
        TheoremId::TSpg,
        TheoremId::MMonotone,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::TPlanar => "T-planar",
            TheoremId::TLeaf3con => "T-leaf3con",
            TheoremId::TFace => "T-face",
            TheoremId::LClique => "L-clique",
            TheoremId::L2cut => "L-2cut",
            TheoremId::LBlocks => "L-blocks",
            TheoremId::L3bridges => "L-3bridges",
            TheoremId::CUvhp => "C-uvhp",
            TheoremId::CTraceable => "C-traceable",
            TheoremId::O2con => "O-2con",
            TheoremId::TSpg => "T-spg",
            TheoremId::MMonotone => "M-monotone",
        }
    }

    /// Theorems quantified over every spanning tree of a graph.
    pub fn per_tree(self) -> bool {
        matches!(
            self,
            TheoremId::TLeaf3con | TheoremId::TFace | TheoremId::LClique | TheoremId::MMonotone
        )
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| HarnessError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    Disconnected,
    TooSmall,
    TooLarge,
    NotPlanar,
    NotTwoConnected,
    NotThreeConnected,
    NoCutVertex,
    NotSeriesParallel,
    TreeCapOverflow,
    BudgetExceeded,
}

/// A replayable record of a claimed counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessBundle {
    pub theorem: TheoremId,
    pub graph6: String,
    /// Offending spanning tree as `u-v,...`, for per-tree theorems and
    /// whenever a specific tree was involved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tree: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<(Vertex, Vertex)>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphOutcome {
    Skipped(SkipReason),
    Passed,
    Counterexample(WitnessBundle),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub corpus: String,
    pub scanned: u64,
    pub qualified: u64,
    pub skipped: BTreeMap<SkipReason, u64>,
    pub counterexamples: Vec<WitnessBundle>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

impl TheoremReport {
    pub fn skipped_total(&self) -> u64 {
        self.skipped.values().sum()
    }

    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Knobs for [`verify_theorem`].
#[derive(Clone, Copy)]
pub struct VerifyOptions<'a> {
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    pub tree_cap: u64,
    pub search: SearchConfig,
    /// Record elapsed time in the report, which makes it non-reproducible.
    pub timing: bool,
    /// Called with (graphs done, total) as work completes.
    pub progress: Option<&'a (dyn Fn(u64, u64) + Sync)>,
}

impl Default for VerifyOptions<'_> {
    fn default() -> Self {
        VerifyOptions {
            jobs: 0,
            tree_cap: DEFAULT_TREE_CAP,
            search: SearchConfig {
                record_stats: false,
                ..SearchConfig::default()
            },
            timing: false,
            progress: None,
        }
    }
}

/// Checks `id` on every graph of `corpus`. Results are merged in corpus order.
pub fn verify_theorem(id: TheoremId, corpus: &Corpus, opts: &VerifyOptions) -> Result<TheoremReport, HarnessError> {
    let start = Instant::now();
    let done = AtomicU64::new(0);
    let total = corpus.graphs.len() as u64;
    let work = || -> Vec<GraphOutcome> {
        corpus
            .graphs
            .par_iter()
            .map(|g| {
                let out = check_graph(id, g, opts);
                let k = done.fetch_add(1, Ordering::Relaxed) + 1;
                if let Some(p) = opts.progress {
                    p(k, total);
                }
                out
            })
            .collect()
    };
    let outcomes = if opts.jobs == 0 {
        work()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| HarnessError::Pool(e.to_string()))?
            .install(work)
    };
    let mut report = TheoremReport {
        theorem: id,
        corpus: corpus.name.clone(),
        scanned: total,
        qualified: 0,
        skipped: BTreeMap::new(),
        counterexamples: Vec::new(),
        wall_clock_ms: None,
    };
    for o in outcomes {
        match o {
            GraphOutcome::Skipped(r) => *report.skipped.entry(r).or_default() += 1,
            GraphOutcome::Passed => report.qualified += 1,
            GraphOutcome::Counterexample(b) => {
                report.qualified += 1;
                report.counterexamples.push(b);
            }
        }
    }
    if opts.timing {
        report.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

enum Fail {
    Skip(SkipReason),
    Bad(WitnessBundle),
}

impl From<SearchError> for Fail {
    fn from(e: SearchError) -> Self {
        match e {
            SearchError::TooLarge(_) => Fail::Skip(SkipReason::TooLarge),
            SearchError::TooSmall { .. } => Fail::Skip(SkipReason::TooSmall),
            SearchError::Budget => Fail::Skip(SkipReason::BudgetExceeded),
            SearchError::NonPlanar => Fail::Skip(SkipReason::NotPlanar),
            SearchError::Disconnected => Fail::Skip(SkipReason::Disconnected),
            SearchError::NotTwoConnected => Fail::Skip(SkipReason::NotTwoConnected),
            SearchError::NotSeriesParallel => Fail::Skip(SkipReason::NotSeriesParallel),
            SearchError::NoCutVertex => Fail::Skip(SkipReason::NoCutVertex),
            // the remaining variants are not produced by the searches run here
            _ => Fail::Skip(SkipReason::BudgetExceeded),
        }
    }
}

struct Ctx<'a> {
    id: TheoremId,
    g: &'a Graph,
    opts: &'a VerifyOptions<'a>,
}

impl Ctx<'_> {
    fn bundle(&self, tree: Option<&SpanningTree>, cut: Option<(Vertex, Vertex)>, detail: impl Into<String>) -> Fail {
        Fail::Bad(WitnessBundle {
            theorem: self.id,
            graph6: write_graph6(self.g),
            tree: tree.map(SpanningTree::edge_list_string),
            cut,
            detail: detail.into(),
        })
    }

    fn require(&self, ok: bool, reason: SkipReason) -> Result<(), Fail> {
        if ok {
            Ok(())
        } else {
            Err(Fail::Skip(reason))
        }
    }

    fn connected(&self, min_n: usize) -> Result<(), Fail> {
        self.require(self.g.n() >= min_n, SkipReason::TooSmall)?;
        self.require(self.g.is_connected(), SkipReason::Disconnected)
    }

    fn planar(&self) -> Result<Embedding, Fail> {
        planar_embed(self.g)
            .map_err(|_| Fail::Skip(SkipReason::Disconnected))?
            .embedding()
            .ok_or(Fail::Skip(SkipReason::NotPlanar))
    }

    fn grade(&self, k: usize) -> Result<(), Fail> {
        let reason = if k == 2 {
            SkipReason::NotTwoConnected
        } else {
            SkipReason::NotThreeConnected
        };
        self.require(connectivity_at_least(self.g, k).unwrap_or(false), reason)
    }

    /// Search verdict, with budget exhaustion turned into a skip.
    fn decided(&self, v: Verdict) -> Result<bool, Fail> {
        match v {
            Verdict::Holds => Ok(true),
            Verdict::Fails => Ok(false),
            Verdict::Inconclusive => Err(Fail::Skip(SkipReason::BudgetExceeded)),
        }
    }

    fn tutte(&self) -> Result<Option<SpanningTree>, Fail> {
        let c = find_tutte_tree(self.g, &self.opts.search)?;
        Ok(if self.decided(c.verdict)? { c.tree().cloned() } else { None })
    }

    fn ftt(&self) -> Result<Option<SpanningTree>, Fail> {
        let c = find_fundamental_tutte_tree(self.g, &self.opts.search)?;
        Ok(if self.decided(c.verdict)? { c.tree().cloned() } else { None })
    }

    /// Bridges of the 2-cut `{u, v}`: (trivial, has Hamiltonian u-v path).
    fn cut_bridges(&self, u: Vertex, v: Vertex) -> Result<Vec<(bool, bool)>, Fail> {
        let dec = h_bridges(self.g, &VertexSet::from_iter_n(self.g.n(), [u, v]));
        dec.bridges
            .iter()
            .map(|b| {
                let sub = b.graph(self.g);
                let at = |x: Vertex| sub.original.iter().position(|&y| y == x).unwrap();
                Ok((b.trivial, has_hamiltonian_uv_path(&sub.graph, at(u), at(v))?))
            })
            .collect()
    }

    fn each_tree(&self, mut check: impl FnMut(&SpanningTree) -> Option<String>) -> Result<(), Fail> {
        let mut bad = None;
        let out = for_each_spanning_tree(self.g, self.opts.tree_cap, |t| match check(t) {
            Some(detail) => {
                bad = Some((t.clone(), detail));
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        });
        if let Some((t, detail)) = bad {
            return Err(self.bundle(Some(&t), None, detail));
        }
        self.require(!out.overflow, SkipReason::TreeCapOverflow)
    }
}

/// Runs one theorem on one graph.
pub fn check_graph(id: TheoremId, g: &Graph, opts: &VerifyOptions) -> GraphOutcome {
    let ctx = Ctx { id, g, opts };
    match run(&ctx, None) {
        Ok(()) => GraphOutcome::Passed,
        Err(Fail::Skip(r)) => GraphOutcome::Skipped(r),
        Err(Fail::Bad(b)) => GraphOutcome::Counterexample(b),
    }
}

fn is_tutte(g: &Graph, t: &SpanningTree) -> bool {
    verify_tutte_tree(g, t).is_ok_and(|c| c.is_holds())
}

fn is_ftt(g: &Graph, t: &SpanningTree) -> bool {
    verify_fundamental_tutte_tree(g, t).is_ok_and(|c| c.is_holds())
}

/// Per-tree conclusions; `None` means the tree is fine.
fn tree_violation(id: TheoremId, g: &Graph, t: &SpanningTree, emb: Option<&Embedding>) -> Option<String> {
    match id {
        TheoremId::LClique => {
            (!leaves_clique(g, t) && is_tutte(g, t)).then(|| "Tutte tree whose leaves are not a clique".into())
        }
        TheoremId::TLeaf3con => {
            let leaves = t.leaf_set();
            let induced = g.induced(&leaves).graph;
            let premise = connectivity_at_least(&induced, 3).unwrap_or(false);
            (premise && !is_tutte(g, t)).then(|| "leaves induce a 3-connected graph but a path separates".into())
        }
        TheoremId::MMonotone => (is_tutte(g, t) && !is_ftt(g, t))
            .then(|| "Tutte tree with a separating fundamental cycle".into()),
        TheoremId::TFace => {
            let emb = emb.expect("face check needs an embedding");
            (is_ftt(g, t) && !leaves_on_common_face(emb, t))
                .then(|| "fundamental Tutte tree with leaves on no common face".into())
        }
        _ => None,
    }
}

/// The body of each theorem. With `tree` given, per-tree theorems check only
/// that tree.
fn run(ctx: &Ctx, tree: Option<&SpanningTree>) -> Result<(), Fail> {
    let g = ctx.g;
    let id = ctx.id;
    let per_tree = |emb: Option<&Embedding>| -> Result<(), Fail> {
        match tree {
            Some(t) => match tree_violation(id, g, t, emb) {
                Some(d) => Err(ctx.bundle(Some(t), None, d)),
                None => Ok(()),
            },
            None => ctx.each_tree(|t| tree_violation(id, g, t, emb)),
        }
    };
    match id {
        TheoremId::O2con => {
            ctx.connected(3)?;
            if let Some(t) = ctx.tutte()? {
                if !connectivity_at_least(g, 2).unwrap_or(false) {
                    return Err(ctx.bundle(Some(&t), None, "Tutte tree in a graph that is not 2-connected"));
                }
            }
            Ok(())
        }
        TheoremId::LClique => {
            ctx.connected(3)?;
            ctx.planar()?;
            per_tree(None)
        }
        TheoremId::TLeaf3con | TheoremId::MMonotone => {
            ctx.connected(3)?;
            per_tree(None)
        }
        TheoremId::TFace => {
            ctx.connected(4)?;
            let emb = ctx.planar()?;
            ctx.grade(3)?;
            per_tree(Some(&emb))
        }
        TheoremId::TPlanar => {
            ctx.connected(3)?;
            ctx.planar()?;
            let decision = decide_planar_tutte(g, &ctx.opts.search)?;
            let by_route = ctx.decided(decision.certificate.verdict)?;
            let searched = ctx.tutte()?;
            if by_route != searched.is_some() {
                return Err(ctx.bundle(
                    searched.as_ref().or(decision.certificate.tree()),
                    None,
                    format!("planar decision says {by_route}, exhaustive search disagrees"),
                ));
            }
            if let Some(t) = decision.certificate.tree() {
                if !is_tutte(g, t) {
                    return Err(ctx.bundle(Some(t), None, "constructed tree is not a Tutte tree"));
                }
            }
            Ok(())
        }
        TheoremId::CTraceable => {
            ctx.connected(3)?;
            ctx.planar()?;
            if let Some(t) = ctx.tutte()? {
                let hp = find_hamiltonian_path(g, Anchors::Free, &ctx.opts.search)?;
                if !ctx.decided(hp.verdict)? {
                    return Err(ctx.bundle(Some(&t), None, "planar graph with a Tutte tree but no Hamiltonian path"));
                }
            }
            Ok(())
        }
        TheoremId::L2cut => {
            ctx.connected(3)?;
            ctx.grade(2)?;
            let Some(t) = ctx.tutte()? else { return Ok(()) };
            for (u, v) in two_vertex_cuts(g) {
                let bridges = ctx.cut_bridges(u, v)?;
                let ham = bridges.iter().filter(|b| b.1).count();
                let ok = match bridges.len() {
                    2 => ham >= 1,
                    3 => bridges
                        .iter()
                        .enumerate()
                        .any(|(i, b)| b.0 && bridges.iter().enumerate().any(|(j, c)| j != i && c.1)),
                    _ => false,
                };
                if !ok {
                    return Err(ctx.bundle(
                        Some(&t),
                        Some((u, v)),
                        format!("{} bridges, {ham} with a Hamiltonian path between the cut vertices", bridges.len()),
                    ));
                }
            }
            Ok(())
        }
        TheoremId::LBlocks => {
            ctx.connected(3)?;
            let found = ctx.ftt()?;
            let built = match build_ftt_block_structured(g) {
                Ok(t) => Some(t),
                Err(SearchError::BlockCondition(_)) => None,
                Err(SearchError::Construction(d)) => {
                    return Err(ctx.bundle(found.as_ref(), None, format!("block conditions hold, {d} did not verify")))
                }
                Err(e) => return Err(e.into()),
            };
            if found.is_some() != built.is_some() {
                return Err(ctx.bundle(
                    found.as_ref().or(built.as_ref()),
                    None,
                    format!(
                        "search finds a tree: {}, block conditions hold: {}",
                        found.is_some(),
                        built.is_some()
                    ),
                ));
            }
            Ok(())
        }
        TheoremId::L3bridges | TheoremId::CUvhp => {
            ctx.connected(3)?;
            ctx.grade(2)?;
            let Some(t) = ctx.ftt()? else { return Ok(()) };
            for (u, v) in two_vertex_cuts(g) {
                let bridges = ctx.cut_bridges(u, v)?;
                let k = bridges.len();
                let missing = bridges.iter().filter(|b| !b.1).count();
                let ok = if id == TheoremId::L3bridges {
                    k <= 3
                } else {
                    missing <= 1 && (k != 3 || missing == 0)
                };
                if !ok {
                    return Err(ctx.bundle(
                        Some(&t),
                        Some((u, v)),
                        format!("{k} bridges, {missing} without a Hamiltonian path between the cut vertices"),
                    ));
                }
            }
            Ok(())
        }
        TheoremId::TSpg => {
            ctx.connected(3)?;
            ctx.grade(2)?;
            ctx.require(is_series_parallel(g), SkipReason::NotSeriesParallel)?;
            let report = check_spg_conditions(g)?;
            let found = ctx.ftt()?;
            if report.holds != found.is_some() {
                let cut = report.cuts.iter().find(|c| !c.holds()).map(|c| c.cut);
                return Err(ctx.bundle(
                    found.as_ref(),
                    cut,
                    format!("conditions hold: {}, search finds a tree: {}", report.holds, found.is_some()),
                ));
            }
            if report.holds {
                match build_ftt_series_parallel(g) {
                    Ok(t) if is_ftt(g, &t) => {}
                    Ok(t) => return Err(ctx.bundle(Some(&t), None, "construction did not verify")),
                    Err(e) => return Err(ctx.bundle(None, None, format!("construction failed: {e}"))),
                }
            }
            Ok(())
        }
    }
}

/// Outcome of replaying a bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleReplay {
    /// The bundle still describes a counterexample.
    pub confirmed: bool,
    pub detail: String,
}

/// Re-checks a counterexample bundle from scratch. For per-tree theorems
/// only the recorded tree is examined.
pub fn replay_bundle(bundle: &WitnessBundle, opts: &VerifyOptions) -> Result<BundleReplay, HarnessError> {
    let g = super::graph6::parse_graph6(&bundle.graph6)?;
    let tree = match (&bundle.tree, bundle.theorem.per_tree()) {
        (Some(s), true) => Some(SpanningTree::new(&g, parse_edge_list(s)?)?),
        (None, true) => return Err(HarnessError::Bundle("per-tree theorem bundle without a tree".into())),
        _ => None,
    };
    let ctx = Ctx {
        id: bundle.theorem,
        g: &g,
        opts,
    };
    Ok(match run(&ctx, tree.as_ref()) {
        Ok(()) => BundleReplay {
            confirmed: false,
            detail: "conclusion holds".into(),
        },
        Err(Fail::Skip(r)) => BundleReplay {
            confirmed: false,
            detail: format!("hypotheses not met: {r:?}"),
        },
        Err(Fail::Bad(b)) => BundleReplay {
            confirmed: true,
            detail: b.detail,
        },
    })
}
