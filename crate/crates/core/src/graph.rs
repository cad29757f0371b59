//! Simple undirected graphs on dense vertex ids, vertex sets, and spanning trees.
//!
//! Connectivity follows the convention that the null graph (no vertices) and
//! the trivial graph (one vertex) are connected. Deleting every vertex of a
//! path or cycle therefore never makes it "separating".

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

pub type Vertex = usize;

/// Unordered edge stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

pub(crate) fn normalize(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("loop at vertex {0} in edge ({0},{0})")]
    Loop(Vertex),
    #[error("duplicate edge ({0},{1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge ({0},{1}) has an endpoint outside 0..{2}")]
    OutOfRange(Vertex, Vertex, usize),
}

/// Bitset over `0..n`.
///
/// Inline storage covers 128 vertices, which is every graph the search
/// engines accept; larger sets spill to the heap.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet {
    words: SmallVec<[u64; 2]>,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            words: SmallVec::from_elem(0, n.div_ceil(64)),
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter_n(n: usize, it: impl IntoIterator<Item = Vertex>) -> Self {
        let mut s = Self::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    fn grow(&mut self, v: Vertex) {
        let need = v / 64 + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.grow(v);
        let (w, b) = (v / 64, v % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: Vertex) {
        if let Some(w) = self.words.get_mut(v / 64) {
            *w &= !(1 << (v % 64));
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.words
            .get(v / 64)
            .is_some_and(|w| w & (1 << (v % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (i, a) in self.words.iter_mut().enumerate() {
            *a &= other.words.get(i).copied().unwrap_or(0);
        }
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a &= !b;
        }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, &w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & b == 0)
    }

    pub fn to_vec(&self) -> Vec<Vertex> {
        self.iter().collect()
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    sets: Vec<VertexSet>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges().collect::<Vec<_>>())
    }
}

impl Graph {
    /// Builds a graph on `0..n`, rejecting loops, duplicate pairs and
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut sets = vec![VertexSet::new(n); n];
        let mut m = 0;
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::OutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if sets[u].contains(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            sets[u].insert(v);
            sets[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(Graph { adj, sets, m })
    }

    pub fn null() -> Self {
        Graph {
            adj: Vec::new(),
            sets: Vec::new(),
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn neighbor_set(&self, v: Vertex) -> &VertexSet {
        &self.sets[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.sets[u].contains(v)
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    /// Induced subgraph on the complement of `s`.
    pub fn delete_vertices(&self, s: &VertexSet) -> Relabeled {
        let mut keep = self.vertices();
        keep.difference_with(s);
        self.induced(&keep)
    }

    /// Induced subgraph on `keep`; new ids follow ascending original ids.
    pub fn induced(&self, keep: &VertexSet) -> Relabeled {
        let original: Vec<Vertex> = keep.iter().filter(|&v| v < self.n()).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in original.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| new_id[u] != usize::MAX && new_id[v] != usize::MAX)
            .map(|(u, v)| (new_id[u], new_id[v]));
        let graph = Graph::new(original.len(), edges).expect("induced subgraph of a simple graph");
        Relabeled { graph, original }
    }

    /// Subgraph on `vertices` with exactly the listed edges.
    pub fn edge_subgraph(&self, vertices: &VertexSet, edges: &[Edge]) -> Relabeled {
        let original: Vec<Vertex> = vertices.iter().collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in original.iter().enumerate() {
            new_id[v] = i;
        }
        let graph = Graph::new(original.len(), edges.iter().map(|&(u, v)| (new_id[u], new_id[v])))
            .expect("edge subgraph of a simple graph");
        Relabeled { graph, original }
    }

    pub fn is_connected(&self) -> bool {
        self.is_connected_within(&self.vertices())
    }

    /// Whether the subgraph induced by `s` is connected (empty counts as connected).
    pub fn is_connected_within(&self, s: &VertexSet) -> bool {
        let Some(start) = s.first() else {
            return true;
        };
        self.reach_within(start, s).len() == s.len()
    }

    fn reach_within(&self, start: Vertex, s: &VertexSet) -> VertexSet {
        let mut seen = VertexSet::new(self.n());
        seen.insert(start);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if s.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Connected components of the subgraph induced by `s`, ordered by least vertex.
    pub fn components_within(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut left = s.clone();
        let mut out = Vec::new();
        while let Some(v) = left.first() {
            let comp = self.reach_within(v, &left);
            left.difference_with(&comp);
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Copy of the graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Graph {
        Graph::new(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
            .expect("permutation of a simple graph")
    }
}

/// Result of a vertex deletion: the new graph plus `original[new_id]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeled {
    pub graph: Graph,
    pub original: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("({0},{1}) is not an edge of the host graph")]
    NotAnEdge(Vertex, Vertex),
    #[error("tree has {got} edges, a spanning tree on {n} vertices needs {}", n.saturating_sub(1))]
    WrongEdgeCount { got: usize, n: usize },
    #[error("tree edges do not reach vertex {0}")]
    NotSpanning(Vertex),
    #[error("edge ({0},{1}) listed twice")]
    Repeated(Vertex, Vertex),
    #[error("host graph has no vertices")]
    Empty,
}

/// Spanning tree of a host graph, rooted at vertex 0 for path queries.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeRepr", into = "TreeRepr")]
pub struct SpanningTree {
    n: usize,
    edges: Vec<Edge>,
    parent: Vec<Vertex>,
    depth: Vec<usize>,
    degree: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TreeRepr {
    n: usize,
    edges: Vec<Edge>,
}

impl From<SpanningTree> for TreeRepr {
    fn from(t: SpanningTree) -> Self {
        TreeRepr {
            n: t.n,
            edges: t.edges,
        }
    }
}

impl TryFrom<TreeRepr> for SpanningTree {
    type Error = TreeError;
    fn try_from(r: TreeRepr) -> Result<Self, TreeError> {
        SpanningTree::from_edges(r.n, r.edges)
    }
}

impl fmt::Debug for SpanningTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpanningTree({})", self.edge_list_string())
    }
}

impl SpanningTree {
    /// Validates `edges` as a spanning tree of `g`.
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = Edge>) -> Result<Self, TreeError> {
        let edges: Vec<Edge> = edges.into_iter().collect();
        for &(u, v) in &edges {
            if !g.has_edge(u, v) {
                return Err(TreeError::NotAnEdge(u, v));
            }
        }
        Self::from_edges(g.n(), edges)
    }

    /// Validates the tree shape only; the host graph is not consulted.
    pub fn from_edges(n: usize, edges: Vec<Edge>) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::WrongEdgeCount { got: edges.len(), n });
        }
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| normalize(u, v)).collect();
        edges.sort_unstable();
        let mut adj = vec![Vec::new(); n];
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(TreeError::Repeated(w[0].0, w[0].1));
            }
        }
        for &(u, v) in &edges {
            if v >= n || u == v {
                return Err(TreeError::NotAnEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0; n];
        parent[0] = 0;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    depth[w] = depth[v] + 1;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = parent.iter().position(|&p| p == usize::MAX) {
            return Err(TreeError::NotSpanning(v));
        }
        let degree = adj.iter().map(Vec::len).collect();
        Ok(SpanningTree {
            n,
            edges,
            parent,
            depth,
            degree,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Tree edges, normalized and sorted.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.binary_search(&normalize(u, v)).is_ok()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.degree[v]
    }

    /// L(T): vertices of tree-degree one.
    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.n).filter(|&v| self.degree[v] == 1).collect()
    }

    pub fn leaf_set(&self) -> VertexSet {
        VertexSet::from_iter_n(self.n, self.leaves())
    }

    /// The unique `u`–`v` path in the tree.
    pub fn path(&self, u: Vertex, v: Vertex) -> TreePath {
        let (mut a, mut b) = (u, v);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[a] > self.depth[b] {
            front.push(a);
            a = self.parent[a];
        }
        while self.depth[b] > self.depth[a] {
            back.push(b);
            b = self.parent[b];
        }
        while a != b {
            front.push(a);
            back.push(b);
            a = self.parent[a];
            b = self.parent[b];
        }
        front.push(a);
        front.extend(back.into_iter().rev());
        TreePath(front)
    }

    /// Graph edges outside the tree, lexicographic.
    pub fn non_tree_edges<'a>(&'a self, g: &'a Graph) -> impl Iterator<Item = Edge> + 'a {
        g.edges().filter(move |&(u, v)| !self.contains_edge(u, v))
    }

    /// `"u-v,u-v,..."`, the form trees take on the command line.
    pub fn edge_list_string(&self) -> String {
        self.edges
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Vertex sequence along tree edges; a single vertex is a path of length zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreePath(pub Vec<Vertex>);

impl TreePath {
    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter_n(n, self.0.iter().copied())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> TreePath {
        TreePath(self.0.iter().rev().copied().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn builds_triangle_and_k1() {
        let t = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(t.m(), 3);
        assert_eq!(t.neighbors(0), &[1, 2]);
        let k1 = Graph::new(1, []).unwrap();
        assert_eq!((k1.n(), k1.m()), (1, 0));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::new(3, [(0, 1), (0, 1)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert_eq!(Graph::new(3, [(2, 2)]).unwrap_err(), GraphError::Loop(2));
        assert_eq!(
            Graph::new(3, [(0, 3)]).unwrap_err(),
            GraphError::OutOfRange(0, 3, 3)
        );
        assert!(GraphError::DuplicateEdge(0, 1).to_string().contains("duplicate edge"));
    }

    #[test]
    fn deletion_relabels() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = tri.delete_vertices(&VertexSet::from_iter_n(3, [0]));
        assert_eq!(r.original, vec![1, 2]);
        assert_eq!(r.graph, Graph::new(2, [(0, 1)]).unwrap());

        let r = path3().delete_vertices(&VertexSet::from_iter_n(3, [1]));
        assert_eq!((r.graph.n(), r.graph.m()), (2, 0));
        assert!(!r.graph.is_connected());

        let r = tri.delete_vertices(&tri.vertices());
        assert_eq!(r.graph.n(), 0);
        assert!(r.graph.is_connected());

        let r = tri.delete_vertices(&VertexSet::new(3));
        assert_eq!(r.graph, tri);
    }

    #[test]
    fn connectivity_conventions() {
        assert!(Graph::null().is_connected());
        assert!(Graph::new(1, []).unwrap().is_connected());
        assert!(!Graph::new(2, []).unwrap().is_connected());
        assert!(path3().is_connected());
    }

    #[test]
    fn tree_paths() {
        // star centred at 2 with leaves 0, 1, 3
        let g = Graph::new(4, [(0, 2), (1, 2), (2, 3), (0, 1)]).unwrap();
        let t = SpanningTree::new(&g, [(0, 2), (1, 2), (2, 3)]).unwrap();
        assert_eq!(t.path(0, 1).0, vec![0, 2, 1]);
        assert_eq!(t.path(3, 3).0, vec![3]);
        assert_eq!(t.leaves(), vec![0, 1, 3]);

        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let t = SpanningTree::new(&p4, p4.edges()).unwrap();
        assert_eq!(t.path(0, 3).0, vec![0, 1, 2, 3]);
        assert_eq!(t.path(3, 0).0, vec![3, 2, 1, 0]);
    }

    #[test]
    fn tree_validation() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(
            SpanningTree::new(&g, [(0, 1), (1, 2)]).unwrap_err(),
            TreeError::WrongEdgeCount { got: 2, n: 4 }
        );
        assert_eq!(
            SpanningTree::new(&g, [(0, 1), (1, 2), (0, 2)]).unwrap_err(),
            TreeError::NotAnEdge(0, 2)
        );
        let g4 = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(matches!(
            SpanningTree::new(&g4, [(0, 1), (1, 2), (0, 2)]).unwrap_err(),
            TreeError::NotSpanning(3)
        ));
    }

    #[test]
    fn vertex_set_ops() {
        let mut s = VertexSet::new(130);
        s.insert(3);
        s.insert(129);
        assert_eq!(s.to_vec(), vec![3, 129]);
        assert_eq!(s.first(), Some(3));
        let t = VertexSet::from_iter_n(130, [3, 4]);
        let mut u = s.clone();
        u.intersect_with(&t);
        assert_eq!(u.to_vec(), vec![3]);
        assert!(u.is_subset(&s));
        s.remove(3);
        assert_eq!(s.len(), 1);
    }
}
