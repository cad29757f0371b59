//! Exact search: Hamiltonian cycles and paths, spanning trees under
//! nonseparation or leaf constraints, the planar Tutte-tree decision
//! procedure, and the two constructive fundamental-Tutte-tree builders.
//!
//! All engines work on `u128` vertex masks, so graphs are limited to
//! [`MAX_SEARCH_VERTICES`] vertices. Budgets count expanded search nodes;
//! a search that runs out reports [`Verdict::Inconclusive`](crate::nonsep::Verdict).

mod construct;
mod grow;
mod hamilton;
mod trees;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, Vertex};

pub use construct::{
    build_ftt_block_structured, build_ftt_series_parallel, check_spg_conditions, BlockCondition,
    CutRecord, SpgReport,
};
pub use hamilton::{find_hamiltonian_cycle, find_hamiltonian_path, has_hamiltonian_uv_path, Anchors};
pub use trees::{
    decide_planar_tutte, find_fundamental_tutte_tree, find_spanning_tree_with_leafset,
    find_spanning_tree_with_leaves_within, find_tutte_tree, PlanarRoute, PlanarTutteDecision,
};

pub const MAX_SEARCH_VERTICES: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexOrder {
    #[default]
    Ascending,
    DegreeDescending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Node budget; 0 means unlimited.
    pub budget: u64,
    pub order: VertexOrder,
    pub record_stats: bool,
    /// Prune partial trees as soon as a violation is certain. Turning this off
    /// enumerates every spanning tree and checks it whole.
    pub prune: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: 0,
            order: VertexOrder::Ascending,
            record_stats: true,
            prune: true,
        }
    }
}

impl SearchConfig {
    pub fn with_budget(budget: u64) -> Self {
        SearchConfig {
            budget,
            ..Self::default()
        }
    }

    pub fn unpruned() -> Self {
        SearchConfig {
            prune: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search supports at most {MAX_SEARCH_VERTICES} vertices, graph has {0}")]
    TooLarge(usize),
    #[error("need at least {need} vertices, graph has {got}")]
    TooSmall { need: usize, got: usize },
    #[error("invalid endpoint anchors: {0}")]
    BadAnchors(String),
    #[error("invalid leaf set: {0}")]
    BadLeafSet(String),
    #[error("graph is not planar")]
    NonPlanar,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not series-parallel")]
    NotSeriesParallel,
    #[error("graph has no cut vertex")]
    NoCutVertex,
    #[error("block condition violated: {0}")]
    BlockCondition(BlockCondition),
    #[error("series-parallel conditions fail at cut {0:?}")]
    SpgConditionFails((Vertex, Vertex)),
    #[error("search budget exhausted")]
    Budget,
    #[error("no construction re-verified: {0}")]
    Construction(String),
}

/// Adjacency as bit masks plus the iteration order chosen by the config.
pub(crate) struct Masks {
    pub n: usize,
    pub nbr: Vec<u128>,
    pub all: u128,
    /// `rank[v]`: position of `v` in the configured vertex order.
    pub rank: Vec<usize>,
    /// Vertices sorted by rank.
    pub order: Vec<Vertex>,
}

impl Masks {
    pub fn new(g: &Graph, order: VertexOrder) -> Result<Self, SearchError> {
        let n = g.n();
        if n > MAX_SEARCH_VERTICES {
            return Err(SearchError::TooLarge(n));
        }
        let nbr = (0..n)
            .map(|v| g.neighbors(v).iter().fold(0u128, |m, &w| m | bit(w)))
            .collect();
        let mut vs: Vec<Vertex> = (0..n).collect();
        if order == VertexOrder::DegreeDescending {
            vs.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        }
        let mut rank = vec![0; n];
        for (i, &v) in vs.iter().enumerate() {
            rank[v] = i;
        }
        Ok(Masks {
            n,
            nbr,
            all: if n == 128 { u128::MAX } else { (1u128 << n) - 1 },
            rank,
            order: vs,
        })
    }

    /// Members of `set` in rank order.
    pub fn ordered(&self, set: u128) -> impl Iterator<Item = Vertex> + '_ {
        self.order.iter().copied().filter(move |&v| set & bit(v) != 0)
    }
}

#[inline]
pub(crate) fn bit(v: Vertex) -> u128 {
    1u128 << v
}

#[inline]
pub(crate) fn bits(mut m: u128) -> impl Iterator<Item = Vertex> {
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(v)
    })
}

/// Whether the subgraph induced by `set` is connected; empty sets are.
#[inline]
pub(crate) fn connected_mask(nbr: &[u128], set: u128) -> bool {
    if set == 0 {
        return true;
    }
    let mut reached = set & set.wrapping_neg();
    let mut frontier = reached;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = nbr[v] & set & !reached;
        reached |= new;
        frontier |= new;
    }
    reached == set
}

/// Shared node counter with budget enforcement.
pub(crate) struct Budget {
    limit: u64,
    pub stats: crate::nonsep::SearchStats,
}

impl Budget {
    pub fn new(cfg: &SearchConfig) -> Self {
        Budget {
            limit: cfg.budget,
            stats: Default::default(),
        }
    }

    /// Counts a node; false once the budget is spent.
    #[inline]
    pub fn tick(&mut self) -> bool {
        self.stats.nodes += 1;
        self.limit == 0 || self.stats.nodes <= self.limit
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Found,
    OutOfBudget,
}
