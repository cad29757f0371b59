//! Spanning-tree searches: Tutte trees, fundamental Tutte trees, leaf-set
//! constrained trees, and the planar decision procedure built from them.

use serde::{Deserialize, Serialize};

use crate::graph::{Graph, SpanningTree, Vertex, VertexSet};
use crate::nonsep::{Certificate, SearchStats, Verdict, Witness};
use crate::planar::planar_embed;

use super::grow::{Grower, Rules, State};
use super::hamilton::find_hamiltonian_cycle;
use super::{bit, bits, connected_mask, Budget, Flow, Masks, SearchConfig, SearchError};

/// Vertex masks of the tree paths between every pair of tree vertices,
/// maintained as the tree grows.
struct PathTable {
    n: usize,
    paths: Vec<u128>,
}

impl PathTable {
    fn new(n: usize) -> Self {
        PathTable {
            n,
            paths: vec![0; n * n],
        }
    }

    fn get(&self, u: Vertex, v: Vertex) -> u128 {
        self.paths[u * self.n + v]
    }

    fn set_root(&mut self, r: Vertex) {
        self.paths[r * self.n + r] = bit(r);
    }

    fn add(&mut self, in_tree: u128, b: Vertex, a: Vertex) {
        let n = self.n;
        for x in bits(in_tree & !bit(b)) {
            let p = self.paths[a * n + x] | bit(b);
            self.paths[b * n + x] = p;
            self.paths[x * n + b] = p;
        }
        self.paths[b * n + b] = bit(b);
    }
}

fn separates(m: &Masks, path: u128) -> bool {
    !connected_mask(&m.nbr, m.all & !path)
}

struct TutteRules {
    table: PathTable,
    prune: bool,
}

impl Rules for TutteRules {
    fn on_root(&mut self, st: &State, root: Vertex) -> bool {
        self.table.set_root(root);
        !self.prune || !separates(st.m, bit(root))
    }

    fn on_add(&mut self, st: &State, b: Vertex, a: Vertex) -> bool {
        self.table.add(st.in_tree, b, a);
        if !self.prune {
            return true;
        }
        // every path ending at b is new and permanent
        bits(st.in_tree).all(|x| !separates(st.m, self.table.get(b, x)))
    }

    fn accept(&mut self, st: &State) -> bool {
        if self.prune {
            return true;
        }
        let n = st.m.n;
        (0..n).all(|u| (u..n).all(|v| !separates(st.m, self.table.get(u, v))))
    }
}

struct FundamentalRules {
    table: PathTable,
    prune: bool,
}

impl Rules for FundamentalRules {
    fn on_root(&mut self, _st: &State, root: Vertex) -> bool {
        self.table.set_root(root);
        true
    }

    fn on_add(&mut self, st: &State, b: Vertex, a: Vertex) -> bool {
        self.table.add(st.in_tree, b, a);
        if !self.prune {
            return true;
        }
        // edges from b back into the tree are closed for good, and so are their cycles
        let closed = st.m.nbr[b] & st.in_tree & !bit(a) & !bit(b);
        bits(closed).all(|x| !separates(st.m, self.table.get(b, x)))
    }

    fn accept(&mut self, st: &State) -> bool {
        if self.prune {
            return true;
        }
        (0..st.m.n).all(|u| {
            bits(st.m.nbr[u] & !((bit(u) << 1).wrapping_sub(1))).all(|v| {
                st.parent[v] == u || st.parent[u] == v || !separates(st.m, self.table.get(u, v))
            })
        })
    }
}

/// Forced leaves and forbidden leaves; the rest are unconstrained.
struct LeafRules {
    forced: u128,
    forbidden: u128,
}

impl Rules for LeafRules {
    fn root(&self, m: &Masks) -> Vertex {
        let free = m.all & !self.forced & !self.forbidden;
        m.ordered(self.forbidden)
            .chain(m.ordered(free))
            .chain(m.ordered(self.forced))
            .next()
            .expect("nonempty graph")
    }

    fn on_add(&mut self, _st: &State, _b: Vertex, _a: Vertex) -> bool {
        true
    }

    fn can_expand(&self, st: &State, a: Vertex) -> bool {
        self.forced & bit(a) == 0 || st.degree[a] == 0
    }

    fn passable(&self) -> u128 {
        !self.forced
    }

    fn feasible(&self, st: &State) -> bool {
        let m = st.m;
        let outside = m.all & !st.in_tree;
        for x in bits(self.forbidden) {
            let free = (m.nbr[x] & !st.excluded[x]).count_ones();
            if st.in_tree & bit(x) != 0 {
                if st.degree[x] < 2 {
                    let room = (m.nbr[x] & outside & !st.excluded[x]).count_ones();
                    if st.degree[x] + room < 2 {
                        return false;
                    }
                }
            } else if free < 2 {
                return false;
            }
        }
        true
    }

    fn accept(&mut self, st: &State) -> bool {
        bits(self.forced).all(|v| st.degree[v] == 1) && bits(self.forbidden).all(|v| st.degree[v] >= 2)
    }
}

fn run<R: Rules>(
    g: &Graph,
    m: &Masks,
    rules: R,
    cfg: &SearchConfig,
) -> (Flow, Option<SpanningTree>, SearchStats) {
    let mut grower = Grower::new(m, rules, Budget::new(cfg));
    let flow = grower.run();
    let tree = (flow == Flow::Found).then(|| grower.st.tree(g));
    let stats = if cfg.record_stats {
        grower.budget.stats
    } else {
        SearchStats::default()
    };
    (flow, tree, stats)
}

fn certificate(flow: Flow, tree: Option<SpanningTree>, stats: SearchStats) -> Certificate {
    match (flow, tree) {
        (Flow::Found, Some(tree)) => Certificate::holds(Witness::WitnessTree { tree }),
        (Flow::OutOfBudget, _) => Certificate::inconclusive(stats),
        _ => Certificate::fails(Witness::Exhausted { stats }),
    }
}

/// Searches for a Tutte tree.
///
/// With pruning on, a partial tree is abandoned as soon as one of its paths
/// separates `g`; such a path survives in every completion.
pub fn find_tutte_tree(g: &Graph, cfg: &SearchConfig) -> Result<Certificate, SearchError> {
    if g.n() < 3 {
        return Err(SearchError::TooSmall { need: 3, got: g.n() });
    }
    let m = Masks::new(g, cfg.order)?;
    let rules = TutteRules {
        table: PathTable::new(g.n()),
        prune: cfg.prune,
    };
    let (flow, tree, stats) = run(g, &m, rules, cfg);
    Ok(certificate(flow, tree, stats))
}

/// Searches for a fundamental Tutte tree.
///
/// A non-tree edge is closed the moment its second endpoint joins, and its
/// fundamental cycle is fixed from then on, so with pruning on each cycle is
/// checked exactly once, at closing time.
pub fn find_fundamental_tutte_tree(g: &Graph, cfg: &SearchConfig) -> Result<Certificate, SearchError> {
    if g.n() == 0 {
        return Err(SearchError::TooSmall { need: 1, got: 0 });
    }
    let m = Masks::new(g, cfg.order)?;
    let rules = FundamentalRules {
        table: PathTable::new(g.n()),
        prune: cfg.prune,
    };
    let (flow, tree, stats) = run(g, &m, rules, cfg);
    Ok(certificate(flow, tree, stats))
}

fn leaf_mask(g: &Graph, set: &VertexSet) -> Result<u128, SearchError> {
    let mut mask = 0;
    for v in set.iter() {
        if v >= g.n() {
            return Err(SearchError::BadLeafSet(format!("vertex {v} out of range")));
        }
        mask |= bit(v);
    }
    Ok(mask)
}

/// Spanning tree whose leaf set is exactly `leaves`.
pub fn find_spanning_tree_with_leafset(
    g: &Graph,
    leaves: &VertexSet,
    cfg: &SearchConfig,
) -> Result<Certificate, SearchError> {
    let m = Masks::new(g, cfg.order)?;
    let forced = leaf_mask(g, leaves)?;
    if forced.count_ones() < 2 {
        return Err(SearchError::BadLeafSet("need at least two leaves".into()));
    }
    let rules = LeafRules {
        forced,
        forbidden: m.all & !forced,
    };
    let (flow, tree, stats) = run(g, &m, rules, cfg);
    Ok(certificate(flow, tree, stats))
}

/// Spanning tree all of whose leaves lie in `allowed`.
pub fn find_spanning_tree_with_leaves_within(
    g: &Graph,
    allowed: &VertexSet,
    cfg: &SearchConfig,
) -> Result<Certificate, SearchError> {
    let m = Masks::new(g, cfg.order)?;
    let allowed = leaf_mask(g, allowed)?;
    if g.n() < 2 {
        return Err(SearchError::TooSmall { need: 2, got: g.n() });
    }
    let rules = LeafRules {
        forced: 0,
        forbidden: m.all & !allowed,
    };
    let (flow, tree, stats) = run(g, &m, rules, cfg);
    Ok(certificate(flow, tree, stats))
}

/// How [`decide_planar_tutte`] reached its answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route", rename_all = "kebab-case")]
pub enum PlanarRoute {
    /// A Hamiltonian cycle with one edge removed.
    HamiltonianCycle { cycle: Vec<Vertex>, removed_edge: (Vertex, Vertex) },
    /// A spanning tree whose three leaves are this triangle.
    TriangleLeaves { triangle: [Vertex; 3] },
    None,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarTutteDecision {
    pub certificate: Certificate,
    pub route: PlanarRoute,
}

/// Decides whether a planar graph has a Tutte tree: it does exactly when it
/// is Hamiltonian or some triangle is the leaf set of a spanning tree.
///
/// The Hamiltonian cycle is tried first; triangles are then tried in
/// lexicographic order. Each sub-search gets the full budget of `cfg`.
pub fn decide_planar_tutte(g: &Graph, cfg: &SearchConfig) -> Result<PlanarTutteDecision, SearchError> {
    let n = g.n();
    if n < 3 {
        return Err(SearchError::TooSmall { need: 3, got: n });
    }
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let planar = planar_embed(g).map_err(|_| SearchError::Disconnected)?;
    if !planar.is_planar() {
        return Err(SearchError::NonPlanar);
    }
    let mut stats = SearchStats::default();
    let mut inconclusive = false;

    let ham = find_hamiltonian_cycle(g, cfg)?;
    if let Some(s) = ham.stats() {
        stats.absorb(s);
    }
    match (&ham.verdict, &ham.witness) {
        (Verdict::Holds, Witness::HamiltonianCycle { cycle }) => {
            let removed = (cycle[n - 1], cycle[0]);
            let path = cycle.windows(2).map(|w| (w[0], w[1]));
            let tree = SpanningTree::new(g, path).expect("Hamiltonian path is a spanning tree");
            return Ok(PlanarTutteDecision {
                certificate: Certificate::holds(Witness::WitnessTree { tree }),
                route: PlanarRoute::HamiltonianCycle {
                    cycle: cycle.clone(),
                    removed_edge: removed,
                },
            });
        }
        (Verdict::Inconclusive, _) => inconclusive = true,
        _ => {}
    }

    for triangle in triangles(g) {
        let leaves = VertexSet::from_iter_n(n, triangle);
        let cert = find_spanning_tree_with_leafset(g, &leaves, cfg)?;
        if let Some(s) = cert.stats() {
            stats.absorb(s);
        }
        match cert.verdict {
            Verdict::Holds => {
                return Ok(PlanarTutteDecision {
                    certificate: cert,
                    route: PlanarRoute::TriangleLeaves { triangle },
                })
            }
            Verdict::Inconclusive => inconclusive = true,
            Verdict::Fails => {}
        }
    }
    if !cfg.record_stats {
        stats = SearchStats::default();
    }
    let certificate = if inconclusive {
        Certificate::inconclusive(stats)
    } else {
        Certificate::fails(Witness::Exhausted { stats })
    };
    Ok(PlanarTutteDecision {
        certificate,
        route: PlanarRoute::None,
    })
}

/// Triangles `u < v < w` in lexicographic order.
pub(crate) fn triangles(g: &Graph) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    for u in 0..g.n() {
        for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
            for &w in g.neighbors(v).iter().filter(|&&w| w > v) {
                if g.has_edge(u, w) {
                    out.push([u, v, w]);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nonsep::{replay, verify_fundamental_tutte_tree, verify_tutte_tree, Claim};
    use itertools::Itertools;

    fn g(n: usize, e: &[(usize, usize)]) -> Graph {
        Graph::new(n, e.iter().copied()).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).tuple_combinations()).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn tutte_tree_of_cycle_and_complete_graph() {
        let cfg = SearchConfig::default();
        for h in [cycle(5), complete(5)] {
            let cert = find_tutte_tree(&h, &cfg).unwrap();
            assert!(cert.is_holds());
            assert!(replay(&h, Claim::TutteTree, &cert));
        }
    }

    #[test]
    fn cut_vertex_means_no_tutte_tree() {
        let h = g(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let cert = find_tutte_tree(&h, &SearchConfig::default()).unwrap();
        assert!(cert.is_fails());
        assert!(matches!(cert.witness, Witness::Exhausted { .. }));
        assert!(find_tutte_tree(&g(2, &[(0, 1)]), &SearchConfig::default()).is_err());
    }

    #[test]
    fn path_graph_is_its_own_fundamental_tutte_tree() {
        let h = g(4, &[(0, 1), (1, 2), (2, 3)]);
        let cert = find_fundamental_tutte_tree(&h, &SearchConfig::default()).unwrap();
        assert_eq!(cert.tree().unwrap().edges(), h.edges().collect::<Vec<_>>().as_slice());
        let k1 = g(1, &[]);
        assert!(find_fundamental_tutte_tree(&k1, &SearchConfig::default()).unwrap().is_holds());
    }

    #[test]
    fn pruning_does_not_change_answers() {
        let graphs = [
            complete(4),
            cycle(6),
            g(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (2, 4)]),
            g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
            g(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (3, 4)]),
        ];
        let quiet = SearchConfig {
            record_stats: false,
            ..SearchConfig::default()
        };
        let raw = SearchConfig {
            prune: false,
            ..quiet
        };
        for h in &graphs {
            assert_eq!(find_tutte_tree(h, &quiet).unwrap(), find_tutte_tree(h, &raw).unwrap());
            assert_eq!(
                find_fundamental_tutte_tree(h, &quiet).unwrap(),
                find_fundamental_tutte_tree(h, &raw).unwrap()
            );
        }
    }

    #[test]
    fn found_trees_verify() {
        let h = g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]);
        let cfg = SearchConfig::default();
        let t = find_tutte_tree(&h, &cfg).unwrap();
        assert!(verify_tutte_tree(&h, t.tree().unwrap()).unwrap().is_holds());
        let f = find_fundamental_tutte_tree(&h, &cfg).unwrap();
        assert!(verify_fundamental_tutte_tree(&h, f.tree().unwrap()).unwrap().is_holds());
    }

    #[test]
    fn leafsets() {
        let cfg = SearchConfig::default();
        let c5 = cycle(5);
        let cert = find_spanning_tree_with_leafset(&c5, &VertexSet::from_iter_n(5, [1, 2]), &cfg).unwrap();
        assert_eq!(cert.tree().unwrap().leaves(), vec![1, 2]);
        let cert = find_spanning_tree_with_leafset(&c5, &VertexSet::from_iter_n(5, [0, 2]), &cfg).unwrap();
        assert!(cert.is_fails());
        // K4: a star has three leaves
        let k4 = complete(4);
        let cert = find_spanning_tree_with_leafset(&k4, &VertexSet::from_iter_n(4, [1, 2, 3]), &cfg).unwrap();
        assert_eq!(cert.tree().unwrap().leaves(), vec![1, 2, 3]);
        assert!(find_spanning_tree_with_leafset(&k4, &VertexSet::from_iter_n(4, [1]), &cfg).is_err());
        let cert = find_spanning_tree_with_leaves_within(&c5, &VertexSet::from_iter_n(5, [3, 4]), &cfg).unwrap();
        assert_eq!(cert.tree().unwrap().leaves(), vec![3, 4]);
    }

    #[test]
    fn leafset_with_two_vertices() {
        let k2 = g(2, &[(0, 1)]);
        let cert =
            find_spanning_tree_with_leafset(&k2, &VertexSet::from_iter_n(2, [0, 1]), &SearchConfig::default())
                .unwrap();
        assert!(cert.is_holds());
    }

    #[test]
    fn planar_decision_routes() {
        let cfg = SearchConfig::default();
        let d = decide_planar_tutte(&cycle(5), &cfg).unwrap();
        assert!(matches!(d.route, PlanarRoute::HamiltonianCycle { .. }));
        assert!(verify_tutte_tree(&cycle(5), d.certificate.tree().unwrap()).unwrap().is_holds());
        let h = g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let d = decide_planar_tutte(&h, &cfg).unwrap();
        assert!(d.certificate.is_fails());
        assert_eq!(d.route, PlanarRoute::None);
        assert_eq!(decide_planar_tutte(&complete(5), &cfg), Err(SearchError::NonPlanar));
    }

    #[test]
    fn triangle_listing() {
        assert_eq!(triangles(&complete(4)), vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]);
        assert!(triangles(&cycle(4)).is_empty());
    }
}
