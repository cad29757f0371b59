//! Brute-force spanning-tree enumeration, used as an oracle independent of
//! the growth-based search engines.

use std::ops::ControlFlow;

use crate::graph::{Edge, Graph, SpanningTree, Vertex};

/// Trees per graph before enumeration gives up.
pub const DEFAULT_TREE_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOutcome {
    /// Trees handed to the visitor.
    pub count: u64,
    /// The cap was reached before the enumeration finished.
    pub overflow: bool,
    /// The visitor asked to stop.
    pub stopped: bool,
}

#[derive(Debug, Clone)]
pub struct TreeEnumeration {
    pub trees: Vec<SpanningTree>,
    pub overflow: bool,
}

/// Union-find with undo.
struct Dsu {
    parent: Vec<Vertex>,
    size: Vec<usize>,
    history: Vec<(Vertex, Vertex)>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    fn find(&self, mut v: Vertex) -> Vertex {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: Vertex, b: Vertex) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.history.push((a, b));
        true
    }

    fn undo(&mut self) {
        let (a, b) = self.history.pop().expect("undo after union");
        self.parent[b] = b;
        self.size[a] -= self.size[b];
    }
}

struct Enumerator<'a, F> {
    n: usize,
    edges: Vec<Edge>,
    chosen: Vec<Edge>,
    dsu: Dsu,
    cap: u64,
    out: EnumerationOutcome,
    visit: &'a mut F,
}

impl<F: FnMut(&SpanningTree) -> ControlFlow<()>> Enumerator<'_, F> {
    /// Whether the chosen edges plus `edges[from..]` still connect every vertex.
    fn completable(&self, from: usize) -> bool {
        let mut d = Dsu::new(self.n);
        let mut comps = self.n;
        for &(u, v) in self.chosen.iter().chain(&self.edges[from..]) {
            if d.union(u, v) {
                comps -= 1;
            }
        }
        comps <= 1
    }

    fn go(&mut self, i: usize) -> bool {
        if self.chosen.len() + 1 == self.n {
            if self.out.count == self.cap {
                self.out.overflow = true;
                return false;
            }
            self.out.count += 1;
            let t = SpanningTree::from_edges(self.n, self.chosen.clone()).expect("n - 1 acyclic edges");
            if (self.visit)(&t).is_break() {
                self.out.stopped = true;
                return false;
            }
            return true;
        }
        if i == self.edges.len() {
            return true;
        }
        let (u, v) = self.edges[i];
        if self.dsu.union(u, v) {
            self.chosen.push((u, v));
            let go_on = self.go(i + 1);
            self.chosen.pop();
            self.dsu.undo();
            if !go_on {
                return false;
            }
        }
        if self.completable(i + 1) {
            return self.go(i + 1);
        }
        true
    }
}

/// Visits every spanning tree of `g` once, in lexicographic order of the
/// sorted edge lists, stopping at `cap` trees or when `visit` breaks.
/// A disconnected graph has no spanning tree; the null graph has none either.
pub fn for_each_spanning_tree<F>(g: &Graph, cap: u64, mut visit: F) -> EnumerationOutcome
where
    F: FnMut(&SpanningTree) -> ControlFlow<()>,
{
    let mut e = Enumerator {
        n: g.n(),
        edges: g.edges().collect(),
        chosen: Vec::new(),
        dsu: Dsu::new(g.n()),
        cap,
        out: EnumerationOutcome {
            count: 0,
            overflow: false,
            stopped: false,
        },
        visit: &mut visit,
    };
    if g.n() > 0 && e.completable(0) {
        e.go(0);
    }
    e.out
}

/// Collects every spanning tree, up to `cap`.
pub fn enumerate_spanning_trees(g: &Graph, cap: u64) -> TreeEnumeration {
    let mut trees = Vec::new();
    let out = for_each_spanning_tree(g, cap, |t| {
        trees.push(t.clone());
        ControlFlow::Continue(())
    });
    TreeEnumeration {
        trees,
        overflow: out.overflow,
    }
}
