//! Constructive fundamental Tutte trees: graphs with a cut vertex whose
//! nontrivial blocks are Hamiltonian leaves of the block tree, and
//! 2-connected series-parallel graphs satisfying the 2-cut conditions.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph, SpanningTree, Vertex, VertexSet};
use crate::nonsep::{verify_fundamental_tutte_tree, Witness};
use crate::structure::{
    block_cut_tree, connectivity_at_least, cut_edges, h_bridges, is_series_parallel, two_vertex_cuts,
};

use super::hamilton::{find_hamiltonian_cycle, find_hamiltonian_path, Anchors};
use super::{SearchConfig, SearchError};

/// One of the three block conditions that a graph with a cut vertex must
/// meet to have a fundamental Tutte tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum BlockCondition {
    /// (i) a nontrivial block is not a leaf of the block tree.
    NotLeaf { block: Vec<Vertex> },
    /// (ii) a nontrivial block is not Hamiltonian.
    NotHamiltonian { block: Vec<Vertex> },
    /// (iii) an articulation vertex has degree other than two in its block.
    ArticulationDegree {
        block: Vec<Vertex>,
        vertex: Vertex,
        degree: usize,
    },
}

impl BlockCondition {
    pub fn label(&self) -> &'static str {
        match self {
            BlockCondition::NotLeaf { .. } => "i",
            BlockCondition::NotHamiltonian { .. } => "ii",
            BlockCondition::ArticulationDegree { .. } => "iii",
        }
    }
}

impl fmt::Display for BlockCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockCondition::NotLeaf { block } => {
                write!(f, "(i) nontrivial block {block:?} is not a leaf of the block tree")
            }
            BlockCondition::NotHamiltonian { block } => {
                write!(f, "(ii) nontrivial block {block:?} is not Hamiltonian")
            }
            BlockCondition::ArticulationDegree { block, vertex, degree } => write!(
                f,
                "(iii) articulation vertex {vertex} has degree {degree} in block {block:?}"
            ),
        }
    }
}

fn unlimited() -> SearchConfig {
    SearchConfig {
        record_stats: false,
        ..SearchConfig::default()
    }
}

fn verified(g: &Graph, edges: Vec<Edge>) -> Option<SpanningTree> {
    let tree = SpanningTree::new(g, edges).ok()?;
    verify_fundamental_tutte_tree(g, &tree)
        .ok()?
        .is_holds()
        .then_some(tree)
}

/// Builds a fundamental Tutte tree of a connected graph with a cut vertex:
/// every cut edge, plus for each nontrivial block its Hamiltonian cycle
/// minus an edge at the articulation vertex.
///
/// Fails with the first violated block condition, checked in the order
/// (i), (ii), (iii) block by block.
pub fn build_ftt_block_structured(g: &Graph) -> Result<SpanningTree, SearchError> {
    if !g.is_connected() || g.n() == 0 {
        return Err(SearchError::Disconnected);
    }
    let bct = block_cut_tree(g).map_err(|_| SearchError::Disconnected)?;
    if bct.cut_vertices.is_empty() {
        return Err(SearchError::NoCutVertex);
    }
    let mut edges = Vec::with_capacity(g.n() - 1);
    let cfg = unlimited();
    for block in &bct.blocks {
        if !block.nontrivial {
            edges.extend(block.edges.iter().copied());
            continue;
        }
        if !block.is_leaf() {
            return Err(SearchError::BlockCondition(BlockCondition::NotLeaf {
                block: block.vertices.clone(),
            }));
        }
        let sub = g.edge_subgraph(&VertexSet::from_iter_n(g.n(), block.vertices.iter().copied()), &block.edges);
        let cert = find_hamiltonian_cycle(&sub.graph, &cfg)?;
        let Witness::HamiltonianCycle { cycle } = cert.witness else {
            return Err(SearchError::BlockCondition(BlockCondition::NotHamiltonian {
                block: block.vertices.clone(),
            }));
        };
        let c = block.cut_vertices[0];
        let local = sub.original.iter().position(|&v| v == c).expect("cut vertex in block");
        let degree = sub.graph.degree(local);
        if degree != 2 {
            return Err(SearchError::BlockCondition(BlockCondition::ArticulationDegree {
                block: block.vertices.clone(),
                vertex: c,
                degree,
            }));
        }
        // rotate so the cycle starts at the articulation vertex; dropping the
        // closing edge removes an edge incident to it
        let k = cycle.len();
        let at = cycle.iter().position(|&v| v == local).unwrap();
        edges.extend(
            (0..k - 1).map(|i| (sub.original[cycle[(at + i) % k]], sub.original[cycle[(at + i + 1) % k]])),
        );
    }
    verified(g, edges).ok_or_else(|| SearchError::Construction("block-structured tree".into()))
}

/// Conditions at one 2-vertex cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutRecord {
    pub cut: (Vertex, Vertex),
    pub bridge_count: usize,
    /// Per bridge, in decomposition order.
    pub hamiltonian_uv_path: Vec<bool>,
    pub two_edge_connected: Vec<bool>,
    pub trivial: Vec<bool>,
    pub condition_i: bool,
    pub condition_ii: bool,
    pub condition_iii: bool,
}

impl CutRecord {
    pub fn holds(&self) -> bool {
        self.condition_i && self.condition_ii && self.condition_iii
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpgReport {
    pub cuts: Vec<CutRecord>,
    pub holds: bool,
}

struct BridgeInfo {
    /// Hamiltonian `u`–`v` path in host ids, if any.
    path: Option<Vec<Vertex>>,
    cut_edges: Vec<Edge>,
    trivial: bool,
}

fn bridge_infos(g: &Graph, u: Vertex, v: Vertex) -> Result<Vec<BridgeInfo>, SearchError> {
    let dec = h_bridges(g, &VertexSet::from_iter_n(g.n(), [u, v]));
    let cfg = unlimited();
    dec.bridges
        .iter()
        .map(|b| {
            let sub = b.graph(g);
            let local = |x: Vertex| sub.original.iter().position(|&y| y == x).expect("attachment");
            let cert = find_hamiltonian_path(&sub.graph, Anchors::Pair(local(u), local(v)), &cfg)?;
            let path = match cert.witness {
                Witness::HamiltonianPath { path } => Some(path.into_iter().map(|x| sub.original[x]).collect()),
                _ => None,
            };
            let cuts = cut_edges(&sub.graph).map_err(|_| SearchError::Disconnected)?;
            Ok(BridgeInfo {
                path,
                cut_edges: cuts
                    .into_iter()
                    .map(|(a, b)| {
                        let (a, b) = (sub.original[a], sub.original[b]);
                        (a.min(b), a.max(b))
                    })
                    .collect(),
                trivial: b.trivial,
            })
        })
        .collect()
}

fn require_spg(g: &Graph) -> Result<(), SearchError> {
    if g.n() < 3 || !connectivity_at_least(g, 2).unwrap_or(false) {
        return Err(SearchError::NotTwoConnected);
    }
    if !is_series_parallel(g) {
        return Err(SearchError::NotSeriesParallel);
    }
    Ok(())
}

fn record(cut: (Vertex, Vertex), infos: &[BridgeInfo]) -> CutRecord {
    let k = infos.len();
    let ham: Vec<bool> = infos.iter().map(|b| b.path.is_some()).collect();
    let tec: Vec<bool> = infos.iter().map(|b| b.cut_edges.is_empty()).collect();
    CutRecord {
        cut,
        bridge_count: k,
        condition_i: k <= 3,
        condition_ii: k != 2 || ham.iter().any(|&h| h),
        condition_iii: k != 3 || (ham.iter().all(|&h| h) && tec.iter().filter(|&&t| t).count() <= 1),
        hamiltonian_uv_path: ham,
        two_edge_connected: tec,
        trivial: infos.iter().map(|b| b.trivial).collect(),
    }
}

/// Evaluates the three 2-cut conditions at every 2-vertex cut of a
/// 2-connected series-parallel graph.
pub fn check_spg_conditions(g: &Graph) -> Result<SpgReport, SearchError> {
    require_spg(g)?;
    let mut cuts = Vec::new();
    for (u, v) in two_vertex_cuts(g) {
        cuts.push(record((u, v), &bridge_infos(g, u, v)?));
    }
    let holds = cuts.iter().all(CutRecord::holds);
    Ok(SpgReport { cuts, holds })
}

/// Builds a fundamental Tutte tree of a 2-connected series-parallel graph
/// that meets the 2-cut conditions.
///
/// When every 2-cut has two bridges the graph is Hamiltonian and the tree is
/// a Hamiltonian cycle minus an edge. Otherwise, at a cut with three bridges,
/// the tree is the union of one Hamiltonian `u`–`v` path per bridge minus one
/// cut edge in each of two bridges that are not 2-edge-connected; pairs are
/// tried in order until the result verifies.
pub fn build_ftt_series_parallel(g: &Graph) -> Result<SpanningTree, SearchError> {
    let report = check_spg_conditions(g)?;
    if let Some(bad) = report.cuts.iter().find(|c| !c.holds()) {
        return Err(SearchError::SpgConditionFails(bad.cut));
    }
    let three: Vec<(Vertex, Vertex)> = report
        .cuts
        .iter()
        .filter(|c| c.bridge_count == 3)
        .map(|c| c.cut)
        .collect();
    if three.is_empty() {
        let cert = find_hamiltonian_cycle(g, &unlimited())?;
        let Witness::HamiltonianCycle { cycle } = cert.witness else {
            return Err(SearchError::Construction("expected a Hamiltonian cycle".into()));
        };
        let edges = cycle.windows(2).map(|w| (w[0], w[1])).collect();
        return verified(g, edges).ok_or_else(|| SearchError::Construction("Hamiltonian path".into()));
    }
    for (u, v) in three {
        let infos = bridge_infos(g, u, v)?;
        let paths: Vec<Vec<Edge>> = infos
            .iter()
            .map(|b| {
                let p = b.path.as_ref().expect("condition (iii) gives every bridge a path");
                p.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect()
            })
            .collect();
        let breakable: Vec<usize> = (0..infos.len()).filter(|&i| !infos[i].cut_edges.is_empty()).collect();
        for (i, j) in breakable.iter().copied().tuple_combinations() {
            for (&e1, &e2) in infos[i].cut_edges.iter().cartesian_product(&infos[j].cut_edges) {
                let edges: Vec<Edge> = paths
                    .iter()
                    .flatten()
                    .copied()
                    .filter(|&e| e != e1 && e != e2)
                    .collect();
                if let Some(t) = verified(g, edges) {
                    return Ok(t);
                }
            }
        }
    }
    Err(SearchError::Construction("no choice of cut edges verified".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e.iter().copied()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    /// Vertices 0 and 1 joined by internally disjoint paths with the given
    /// numbers of internal vertices.
    fn theta(lengths: &[usize]) -> Graph {
        let mut edges = Vec::new();
        let mut next = 2;
        for &k in lengths {
            if k == 0 {
                edges.push((0, 1));
                continue;
            }
            let mut prev = 0;
            for _ in 0..k {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, 1));
        }
        Graph::new(next, edges).unwrap()
    }

    #[test]
    fn triangle_and_square() {
        let r = check_spg_conditions(&cycle(3)).unwrap();
        assert!(r.holds && r.cuts.is_empty());
        let r = check_spg_conditions(&cycle(4)).unwrap();
        assert!(r.holds);
        assert_eq!(r.cuts.len(), 2);
        assert!(r.cuts.iter().all(|c| c.bridge_count == 2));
    }

    #[test]
    fn four_paths_violate_condition_i() {
        let r = check_spg_conditions(&theta(&[1, 1, 1, 1])).unwrap();
        assert!(!r.holds);
        let c = r.cuts.iter().find(|c| c.cut == (0, 1)).unwrap();
        assert_eq!(c.bridge_count, 4);
        assert!(!c.condition_i);
        assert_eq!(build_ftt_series_parallel(&theta(&[1, 1, 1, 1])), Err(SearchError::SpgConditionFails((0, 1))));
    }

    #[test]
    fn preconditions() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(check_spg_conditions(&k4), Err(SearchError::NotSeriesParallel));
        let path = g(3, &[(0, 1), (1, 2)]);
        assert_eq!(check_spg_conditions(&path), Err(SearchError::NotTwoConnected));
    }

    #[test]
    fn series_parallel_constructions() {
        let c6 = cycle(6);
        let t = build_ftt_series_parallel(&c6).unwrap();
        assert_eq!(t.leaves().len(), 2);
        let th = theta(&[1, 2, 2]);
        let t = build_ftt_series_parallel(&th).unwrap();
        assert!(verify_fundamental_tutte_tree(&th, &t).unwrap().is_holds());
        // theta with a direct edge: the trivial bridge is one of the breakable ones
        let th = theta(&[0, 1, 2]);
        let t = build_ftt_series_parallel(&th).unwrap();
        assert!(verify_fundamental_tutte_tree(&th, &t).unwrap().is_holds());
    }

    #[test]
    fn block_constructions() {
        let pendant = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let t = build_ftt_block_structured(&pendant).unwrap();
        assert!(t.contains_edge(2, 3));
        let bowtie = g(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]);
        assert!(build_ftt_block_structured(&bowtie).is_ok());
        let k4_pendant = g(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]);
        match build_ftt_block_structured(&k4_pendant) {
            Err(SearchError::BlockCondition(c)) => assert_eq!(c.label(), "iii"),
            r => panic!("unexpected {r:?}"),
        }
        // triangle between two pendant edges is not a leaf block
        let middle = g(5, &[(0, 1), (1, 2), (2, 0), (1, 3), (2, 4)]);
        match build_ftt_block_structured(&middle) {
            Err(SearchError::BlockCondition(c)) => assert_eq!(c.label(), "i"),
            r => panic!("unexpected {r:?}"),
        }
        // K2,3 with a pendant edge: the block is not Hamiltonian
        let k23 = g(6, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 5)]);
        match build_ftt_block_structured(&k23) {
            Err(SearchError::BlockCondition(c)) => assert_eq!(c.label(), "ii"),
            r => panic!("unexpected {r:?}"),
        }
        assert_eq!(build_ftt_block_structured(&cycle(4)), Err(SearchError::NoCutVertex));
    }
}
