//! Structural predicates: connectivity grades, cut edges, block-cut trees,
//! bridges of a vertex set, 2-vertex cuts and series-parallel recognition.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{normalize, Edge, Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("connectivity grade {0} unsupported (expected 1..=4)")]
    UnsupportedGrade(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
}

/// `g` is k-connected: more than k vertices and no vertex set of size < k
/// disconnects it.
pub fn connectivity_at_least(g: &Graph, k: usize) -> Result<bool, StructureError> {
    if !(1..=4).contains(&k) {
        return Err(StructureError::UnsupportedGrade(k));
    }
    if g.n() <= k {
        return Ok(false);
    }
    let all = g.vertices();
    for size in 0..k {
        for removed in (0..g.n()).combinations(size) {
            let mut rest = all.clone();
            for v in removed {
                rest.remove(v);
            }
            if !g.is_connected_within(&rest) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Edges whose removal disconnects `g`.
pub fn cut_edges(g: &Graph) -> Result<Vec<Edge>, StructureError> {
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let dfs = Lowpoint::run(g);
    let mut out: Vec<Edge> = (0..g.n())
        .filter(|&v| dfs.parent[v] != usize::MAX && dfs.low[v] > dfs.disc[dfs.parent[v]])
        .map(|v| normalize(v, dfs.parent[v]))
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// DFS discovery times and low points, plus biconnected components by edge stack.
struct Lowpoint {
    disc: Vec<usize>,
    low: Vec<usize>,
    parent: Vec<Vertex>,
    blocks: Vec<Vec<Edge>>,
}

impl Lowpoint {
    fn run(g: &Graph) -> Self {
        let n = g.n();
        let mut s = Lowpoint {
            disc: vec![usize::MAX; n],
            low: vec![0; n],
            parent: vec![usize::MAX; n],
            blocks: Vec::new(),
        };
        let mut time = 0;
        let mut edge_stack: Vec<Edge> = Vec::new();
        for root in 0..n {
            if s.disc[root] != usize::MAX {
                continue;
            }
            s.disc[root] = time;
            s.low[root] = time;
            time += 1;
            // (vertex, next neighbor index)
            let mut stack: Vec<(Vertex, usize)> = vec![(root, 0)];
            while let Some(&mut (v, ref mut i)) = stack.last_mut() {
                if let Some(&w) = g.neighbors(v).get(*i) {
                    *i += 1;
                    if s.disc[w] == usize::MAX {
                        s.parent[w] = v;
                        s.disc[w] = time;
                        s.low[w] = time;
                        time += 1;
                        edge_stack.push((v, w));
                        stack.push((w, 0));
                    } else if w != s.parent[v] && s.disc[w] < s.disc[v] {
                        s.low[v] = s.low[v].min(s.disc[w]);
                        edge_stack.push((v, w));
                    }
                } else {
                    stack.pop();
                    if let Some(&(p, _)) = stack.last() {
                        s.low[p] = s.low[p].min(s.low[v]);
                        if s.low[v] >= s.disc[p] {
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(normalize(e.0, e.1));
                                if e == (p, v) {
                                    break;
                                }
                            }
                            block.sort_unstable();
                            s.blocks.push(block);
                        }
                    }
                }
            }
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// Three or more vertices.
    pub nontrivial: bool,
    /// Cut vertices of `g` lying in this block.
    pub cut_vertices: Vec<Vertex>,
}

impl Block {
    /// A block is a leaf of the block tree when it holds at most one cut vertex.
    pub fn is_leaf(&self) -> bool {
        self.cut_vertices.len() <= 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockCutTree {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<Vertex>,
    /// Bipartite tree edges `(block index, cut vertex)`.
    pub incidence: Vec<(usize, Vertex)>,
}

/// Block/cut-vertex decomposition. Blocks are ordered by their least edge;
/// the trivial graph yields one edgeless block.
pub fn block_cut_tree(g: &Graph) -> Result<BlockCutTree, StructureError> {
    if g.n() == 0 {
        return Err(StructureError::Empty);
    }
    if !g.is_connected() {
        return Err(StructureError::Disconnected);
    }
    let mut raw = Lowpoint::run(g).blocks;
    if raw.is_empty() {
        return Ok(BlockCutTree {
            blocks: vec![Block {
                vertices: vec![0],
                edges: vec![],
                nontrivial: false,
                cut_vertices: vec![],
            }],
            cut_vertices: vec![],
            incidence: vec![],
        });
    }
    raw.sort();
    let mut membership = vec![0usize; g.n()];
    let vertex_lists: Vec<Vec<Vertex>> = raw
        .iter()
        .map(|edges| {
            let vs: BTreeSet<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
            for &v in &vs {
                membership[v] += 1;
            }
            vs.into_iter().collect()
        })
        .collect();
    let cut_vertices: Vec<Vertex> = (0..g.n()).filter(|&v| membership[v] > 1).collect();
    let mut incidence = Vec::new();
    let blocks = raw
        .into_iter()
        .zip(vertex_lists)
        .enumerate()
        .map(|(i, (edges, vertices))| {
            let cuts: Vec<Vertex> = vertices.iter().copied().filter(|&v| membership[v] > 1).collect();
            incidence.extend(cuts.iter().map(|&c| (i, c)));
            Block {
                nontrivial: vertices.len() >= 3,
                vertices,
                edges,
                cut_vertices: cuts,
            }
        })
        .collect();
    Ok(BlockCutTree {
        blocks,
        cut_vertices,
        incidence,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bridge {
    /// Internal vertices plus attachments.
    pub vertices: VertexSet,
    pub internal: VertexSet,
    pub attachments: VertexSet,
    pub edges: Vec<Edge>,
    pub trivial: bool,
}

impl Bridge {
    /// The bridge as a standalone graph together with the id map back to the host.
    pub fn graph(&self, g: &Graph) -> crate::graph::Relabeled {
        g.edge_subgraph(&self.vertices, &self.edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeDecomposition {
    pub h: VertexSet,
    pub bridges: Vec<Bridge>,
}

impl BridgeDecomposition {
    pub fn trivial_count(&self) -> usize {
        self.bridges.iter().filter(|b| b.trivial).count()
    }
}

/// Bridges of the vertex set `h`: one per component of `g - h`, plus a
/// trivial bridge for the edge between the two vertices when `|h| = 2`.
/// For any other size, edges induced by `h` are treated as edges of H.
pub fn h_bridges(g: &Graph, h: &VertexSet) -> BridgeDecomposition {
    let n = g.n();
    let mut rest = g.vertices();
    rest.difference_with(h);
    let mut bridges: Vec<Bridge> = g
        .components_within(&rest)
        .into_iter()
        .map(|internal| {
            let mut attachments = VertexSet::new(n);
            let mut edges = Vec::new();
            for v in internal.iter() {
                for &w in g.neighbors(v) {
                    if h.contains(w) {
                        attachments.insert(w);
                        edges.push(normalize(v, w));
                    } else if v < w {
                        edges.push((v, w));
                    }
                }
            }
            edges.sort_unstable();
            let mut vertices = internal.clone();
            vertices.union_with(&attachments);
            Bridge {
                vertices,
                internal,
                attachments,
                edges,
                trivial: false,
            }
        })
        .collect();
    let hv = h.to_vec();
    if let [u, v] = hv[..] {
        if g.has_edge(u, v) {
            let ends = VertexSet::from_iter_n(n, [u, v]);
            bridges.push(Bridge {
                vertices: ends.clone(),
                internal: VertexSet::new(n),
                attachments: ends,
                edges: vec![(u, v)],
                trivial: true,
            });
        }
    }
    BridgeDecomposition {
        h: h.clone(),
        bridges,
    }
}

/// Pairs `{u, v}` with `g - {u, v}` disconnected, lexicographic.
pub fn two_vertex_cuts(g: &Graph) -> Vec<(Vertex, Vertex)> {
    let all = g.vertices();
    (0..g.n())
        .tuple_combinations()
        .filter(|&(u, v)| {
            let mut rest = all.clone();
            rest.remove(u);
            rest.remove(v);
            !g.is_connected_within(&rest)
        })
        .collect()
}

/// No K4 minor. Each block is reduced by suppressing degree-two vertices and
/// merging parallel edges; a block is series-parallel iff it shrinks to K2.
pub fn is_series_parallel(g: &Graph) -> bool {
    if g.n() <= 1 {
        return true;
    }
    let components = g.components();
    components.iter().all(|comp| {
        let sub = g.induced(comp).graph;
        match block_cut_tree(&sub) {
            Ok(bct) => bct.blocks.iter().all(|b| reduces_to_k2(&b.edges)),
            Err(_) => true,
        }
    })
}

fn reduces_to_k2(edges: &[Edge]) -> bool {
    // simple multigraph view: parallel edges are merged as soon as they appear
    let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
    for &(u, v) in edges {
        adj.entry(u).or_default().insert(v);
        adj.entry(v).or_default().insert(u);
    }
    let mut queue: Vec<Vertex> = adj.keys().copied().collect();
    while let Some(v) = queue.pop() {
        if adj.len() <= 2 {
            break;
        }
        let Some(ns) = adj.get(&v) else { continue };
        if ns.len() != 2 {
            continue;
        }
        let (a, b) = {
            let mut it = ns.iter();
            (*it.next().unwrap(), *it.next().unwrap())
        };
        adj.remove(&v);
        for (x, y) in [(a, b), (b, a)] {
            let set = adj.get_mut(&x).unwrap();
            set.remove(&v);
            set.insert(y);
            queue.push(x);
        }
    }
    adj.len() <= 2
}
