//! Growth-based spanning-tree enumeration.
//!
//! A connected partial tree is grown from a root. At each node the least
//! frontier edge `(a, b)` (tree vertex `a`, outside vertex `b`) is either
//! taken or excluded for the rest of the branch, so every spanning tree is
//! produced exactly once, in a fixed order. Because edges are only ever
//! added, any path or closed cycle already present in the partial tree is
//! present in every completion; rules hooked into [`Rules::on_add`] may
//! therefore reject a branch the moment one is bad.

use crate::graph::{Graph, SpanningTree, Vertex};

use super::{bit, bits, Budget, Flow, Masks};

pub(crate) struct State<'a> {
    pub m: &'a Masks,
    pub in_tree: u128,
    pub parent: Vec<Vertex>,
    pub degree: Vec<u32>,
    /// Per-vertex masks of excluded edges.
    pub excluded: Vec<u128>,
    pub root: Vertex,
}

impl State<'_> {
    pub fn tree(&self, g: &Graph) -> SpanningTree {
        let edges = bits(self.in_tree)
            .filter(|&v| v != self.root)
            .map(|v| (self.parent[v], v));
        SpanningTree::new(g, edges).expect("grown tree is a spanning tree of its host")
    }
}

pub(crate) trait Rules {
    fn root(&self, m: &Masks) -> Vertex {
        m.order[0]
    }

    /// The root alone; false rejects everything.
    fn on_root(&mut self, _st: &State, _root: Vertex) -> bool {
        true
    }

    /// `b` has just joined as a child of `a`. Always paired with [`Rules::on_remove`].
    fn on_add(&mut self, st: &State, b: Vertex, a: Vertex) -> bool;

    fn on_remove(&mut self, _b: Vertex) {}

    /// Tree vertex `a` may take another child.
    fn can_expand(&self, _st: &State, _a: Vertex) -> bool {
        true
    }

    /// Outside vertices that may later carry further tree edges.
    fn passable(&self) -> u128 {
        u128::MAX
    }

    fn feasible(&self, _st: &State) -> bool {
        true
    }

    /// A complete spanning tree; true stops the search.
    fn accept(&mut self, st: &State) -> bool;
}

pub(crate) struct Grower<'a, R: Rules> {
    pub st: State<'a>,
    pub rules: R,
    pub budget: Budget,
}

impl<'a, R: Rules> Grower<'a, R> {
    pub fn new(m: &'a Masks, rules: R, budget: Budget) -> Self {
        let n = m.n;
        Grower {
            st: State {
                m,
                in_tree: 0,
                parent: vec![usize::MAX; n],
                degree: vec![0; n],
                excluded: vec![0; n],
                root: 0,
            },
            rules,
            budget,
        }
    }

    pub fn run(&mut self) -> Flow {
        if self.st.m.n == 0 {
            return Flow::Continue;
        }
        let root = self.rules.root(self.st.m);
        self.st.root = root;
        self.st.in_tree = bit(root);
        self.st.parent[root] = root;
        if !self.rules.on_root(&self.st, root) {
            self.budget.tick();
            self.budget.stats.prunes += 1;
            return Flow::Continue;
        }
        self.grow()
    }

    fn grow(&mut self) -> Flow {
        if !self.budget.tick() {
            return Flow::OutOfBudget;
        }
        let m = self.st.m;
        if self.st.in_tree == m.all {
            self.budget.stats.trees += 1;
            return if self.rules.accept(&self.st) {
                Flow::Found
            } else {
                Flow::Continue
            };
        }
        if !self.rules.feasible(&self.st) {
            self.budget.stats.prunes += 1;
            return Flow::Continue;
        }
        let Some((a, b)) = self.pick() else {
            return Flow::Continue;
        };

        // take (a, b)
        self.st.in_tree |= bit(b);
        self.st.parent[b] = a;
        self.st.degree[a] += 1;
        self.st.degree[b] += 1;
        let ok = self.rules.on_add(&self.st, b, a);
        let r = if ok {
            self.grow()
        } else {
            self.budget.stats.prunes += 1;
            Flow::Continue
        };
        if r == Flow::Found {
            return r;
        }
        self.rules.on_remove(b);
        self.st.in_tree &= !bit(b);
        self.st.parent[b] = usize::MAX;
        self.st.degree[a] -= 1;
        self.st.degree[b] -= 1;
        if r == Flow::OutOfBudget {
            return r;
        }

        // exclude (a, b)
        self.st.excluded[a] |= bit(b);
        self.st.excluded[b] |= bit(a);
        let r = if self.completable() {
            self.grow()
        } else {
            self.budget.stats.prunes += 1;
            Flow::Continue
        };
        if r != Flow::Found {
            self.st.excluded[a] &= !bit(b);
            self.st.excluded[b] &= !bit(a);
        }
        r
    }

    fn pick(&self) -> Option<(Vertex, Vertex)> {
        let m = self.st.m;
        let outside = m.all & !self.st.in_tree;
        for a in m.ordered(self.st.in_tree) {
            if !self.rules.can_expand(&self.st, a) {
                continue;
            }
            let cand = m.nbr[a] & outside & !self.st.excluded[a];
            if let Some(b) = m.ordered(cand).next() {
                return Some((a, b));
            }
        }
        None
    }

    /// Every outside vertex is still reachable through usable edges.
    fn completable(&self) -> bool {
        let m = self.st.m;
        let outside = m.all & !self.st.in_tree;
        let pass = self.rules.passable();
        let mut reached = 0u128;
        for a in bits(self.st.in_tree) {
            if self.rules.can_expand(&self.st, a) {
                reached |= m.nbr[a] & outside & !self.st.excluded[a];
            }
        }
        let mut frontier = reached & pass;
        while frontier != 0 {
            let x = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = m.nbr[x] & outside & !self.st.excluded[x] & !reached;
            reached |= new;
            frontier |= new & pass;
        }
        reached == outside
    }
}
