//! Nonseparating paths and cycles, fundamental cycles, and the two tree
//! predicates built on them.
//!
//! A path or cycle `P` of `G` is nonseparating when `G - V(P)` is connected.
//! Single-vertex paths are paths, so a Tutte tree certifies that the host has
//! no cut vertex.
//!
//! Every verdict is returned as a [`Certificate`] whose witness can be
//! replayed with [`replay`] without trusting the code that produced it.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{normalize, Edge, Graph, SpanningTree, TreePath, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonsepError {
    #[error("vertex sequence {0:?} is not a path of the graph")]
    NotAPath(Vec<Vertex>),
    #[error("vertex sequence {0:?} is not a cycle of the graph")]
    NotACycle(Vec<Vertex>),
    #[error("({0},{1}) is not a non-tree edge")]
    NotANonTreeEdge(Vertex, Vertex),
    #[error("tree predicates need at least 3 vertices, graph has {0}")]
    Degenerate(usize),
    #[error("tree spans {tree} vertices but the graph has {graph}")]
    SizeMismatch { tree: usize, graph: usize },
}

/// Cycle given by its cyclic vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cycle(pub Vec<Vertex>);

impl Cycle {
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<Self, NonsepError> {
        let k = vertices.len();
        let ok = k >= 3
            && distinct_in_range(g, &vertices)
            && (0..k).all(|i| g.has_edge(vertices[i], vertices[(i + 1) % k]));
        if ok {
            Ok(Cycle(vertices))
        } else {
            Err(NonsepError::NotACycle(vertices))
        }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let k = self.0.len();
        (0..k).map(move |i| normalize(self.0[i], self.0[(i + 1) % k]))
    }

    pub fn is_hamiltonian(&self, g: &Graph) -> bool {
        self.0.len() == g.n()
    }
}

fn distinct_in_range(g: &Graph, vs: &[Vertex]) -> bool {
    let mut seen = VertexSet::new(g.n());
    vs.iter().all(|&v| v < g.n() && seen.insert(v))
}

fn validate_path(g: &Graph, vs: &[Vertex]) -> Result<(), NonsepError> {
    let ok = !vs.is_empty()
        && distinct_in_range(g, vs)
        && vs.windows(2).all(|w| g.has_edge(w[0], w[1]));
    if ok {
        Ok(())
    } else {
        Err(NonsepError::NotAPath(vs.to_vec()))
    }
}

fn complement_connected(g: &Graph, removed: impl IntoIterator<Item = Vertex>) -> bool {
    let mut rest = g.vertices();
    for v in removed {
        rest.remove(v);
    }
    g.is_connected_within(&rest)
}

/// `G - V(p)` is connected; removing every vertex leaves the (connected) null graph.
pub fn is_nonseparating_path(g: &Graph, p: &[Vertex]) -> Result<bool, NonsepError> {
    validate_path(g, p)?;
    Ok(complement_connected(g, p.iter().copied()))
}

/// `G - V(c)` is connected. Hamiltonian cycles are nonseparating.
pub fn is_nonseparating_cycle(g: &Graph, c: &Cycle) -> Result<bool, NonsepError> {
    let c = Cycle::new(g, c.0.clone())?;
    Ok(complement_connected(g, c.0.iter().copied()))
}

/// The cycle `C_e` closed by the non-tree edge `e = (u, v)`: `e` plus the tree `u`–`v` path.
pub fn fundamental_cycle(
    g: &Graph,
    t: &SpanningTree,
    (u, v): Edge,
) -> Result<Cycle, NonsepError> {
    if !g.has_edge(u, v) || t.contains_edge(u, v) {
        return Err(NonsepError::NotANonTreeEdge(u, v));
    }
    Ok(Cycle(t.path(u, v).0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
}

/// Counters carried by search certificates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Search-tree nodes expanded.
    pub nodes: u64,
    /// Complete candidates (spanning trees, Hamiltonian paths) examined.
    pub trees: u64,
    pub prunes: u64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.trees += other.trees;
        self.prunes += other.prunes;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    SeparatingPath { path: TreePath },
    SeparatingCycle { edge: Edge, cycle: Cycle },
    WitnessTree { tree: SpanningTree },
    HamiltonianCycle { cycle: Vec<Vertex> },
    HamiltonianPath { path: Vec<Vertex> },
    /// A predicate checked every object it quantifies over.
    Checked { objects: u64 },
    Exhausted { stats: SearchStats },
    BudgetExceeded { stats: SearchStats },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub witness: Witness,
}

impl Certificate {
    pub fn holds(witness: Witness) -> Self {
        Certificate {
            verdict: Verdict::Holds,
            witness,
        }
    }

    pub fn fails(witness: Witness) -> Self {
        Certificate {
            verdict: Verdict::Fails,
            witness,
        }
    }

    pub fn inconclusive(stats: SearchStats) -> Self {
        Certificate {
            verdict: Verdict::Inconclusive,
            witness: Witness::BudgetExceeded { stats },
        }
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    pub fn tree(&self) -> Option<&SpanningTree> {
        match &self.witness {
            Witness::WitnessTree { tree } => Some(tree),
            _ => None,
        }
    }

    pub fn stats(&self) -> Option<SearchStats> {
        match self.witness {
            Witness::Exhausted { stats } | Witness::BudgetExceeded { stats } => Some(stats),
            _ => None,
        }
    }
}

fn check_sizes(g: &Graph, t: &SpanningTree) -> Result<(), NonsepError> {
    if g.n() != t.n() {
        return Err(NonsepError::SizeMismatch {
            tree: t.n(),
            graph: g.n(),
        });
    }
    Ok(())
}

/// Checks every tree path, single vertices included, for `u <= v` in
/// lexicographic order; the first separating path is the witness.
pub fn verify_tutte_tree(g: &Graph, t: &SpanningTree) -> Result<Certificate, NonsepError> {
    check_sizes(g, t)?;
    let n = g.n();
    if n < 3 {
        return Err(NonsepError::Degenerate(n));
    }
    let all = g.vertices();
    let mut checked = 0;
    for u in 0..n {
        for (v, removed) in path_sets_from(t, u).into_iter().enumerate().skip(u) {
            checked += 1;
            let mut rest = all.clone();
            rest.difference_with(&removed);
            if !g.is_connected_within(&rest) {
                return Ok(Certificate::fails(Witness::SeparatingPath {
                    path: t.path(u, v),
                }));
            }
        }
    }
    Ok(Certificate::holds(Witness::Checked { objects: checked }))
}

/// Vertex sets of the tree paths from `u` to every vertex.
fn path_sets_from(t: &SpanningTree, u: Vertex) -> Vec<VertexSet> {
    let n = t.n();
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in t.edges() {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut sets = vec![VertexSet::new(n); n];
    let mut done = VertexSet::new(n);
    sets[u].insert(u);
    done.insert(u);
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if done.insert(y) {
                let mut s = sets[x].clone();
                s.insert(y);
                sets[y] = s;
                stack.push(y);
            }
        }
    }
    sets
}

/// Checks the `m - n + 1` fundamental cycles in lexicographic edge order.
pub fn verify_fundamental_tutte_tree(
    g: &Graph,
    t: &SpanningTree,
) -> Result<Certificate, NonsepError> {
    check_sizes(g, t)?;
    let mut checked = 0;
    for e in t.non_tree_edges(g) {
        checked += 1;
        let cycle = fundamental_cycle(g, t, e)?;
        if !complement_connected(g, cycle.0.iter().copied()) {
            return Ok(Certificate::fails(Witness::SeparatingCycle { edge: e, cycle }));
        }
    }
    Ok(Certificate::holds(Witness::Checked { objects: checked }))
}

/// What a certificate claims, so that [`replay`] knows what to re-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    TutteTree,
    FundamentalTutteTree,
    HamiltonianCycle,
    HamiltonianPath,
}

/// Replays the witness of `cert` against `g`.
///
/// Positive witnesses (trees, cycles, paths) must re-verify, and separating
/// paths or cycles must really separate. Exhaustion and budget records carry
/// no checkable object and replay as `true`.
pub fn replay(g: &Graph, claim: Claim, cert: &Certificate) -> bool {
    match (&cert.witness, cert.verdict) {
        (Witness::WitnessTree { tree }, Verdict::Holds) => {
            let Ok(tree) = SpanningTree::new(g, tree.edges().iter().copied()) else {
                return false;
            };
            match claim {
                Claim::TutteTree => verify_tutte_tree(g, &tree).is_ok_and(|c| c.is_holds()),
                Claim::FundamentalTutteTree => {
                    verify_fundamental_tutte_tree(g, &tree).is_ok_and(|c| c.is_holds())
                }
                _ => false,
            }
        }
        (Witness::HamiltonianCycle { cycle }, Verdict::Holds) => {
            claim == Claim::HamiltonianCycle
                && Cycle::new(g, cycle.clone()).is_ok_and(|c| c.is_hamiltonian(g))
        }
        (Witness::HamiltonianPath { path }, Verdict::Holds) => {
            claim == Claim::HamiltonianPath
                && path.len() == g.n()
                && validate_path(g, path).is_ok()
        }
        (Witness::SeparatingPath { path }, Verdict::Fails) => {
            is_nonseparating_path(g, path.vertices()) == Ok(false)
        }
        (Witness::SeparatingCycle { cycle, .. }, Verdict::Fails) => {
            is_nonseparating_cycle(g, cycle) == Ok(false)
        }
        (Witness::Exhausted { .. }, Verdict::Fails)
        | (Witness::BudgetExceeded { .. }, Verdict::Inconclusive) => true,
        (Witness::Checked { .. }, Verdict::Holds) => true,
        _ => false,
    }
}
