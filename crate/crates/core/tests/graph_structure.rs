mod common;

use std::collections::VecDeque;

use common::{any_graph, connected_graph, corpus_upto};
use itertools::Itertools;
use proptest::prelude::*;
use proptest::sample::Index;
use tutte_trees::harness::enumerate_spanning_trees;
use tutte_trees::nonsep::{
    fundamental_cycle, is_nonseparating_cycle, is_nonseparating_path, verify_fundamental_tutte_tree,
    verify_tutte_tree,
};
use tutte_trees::structure::{connectivity_at_least, h_bridges, is_series_parallel, two_vertex_cuts};
use tutte_trees::{Edge, Graph, SpanningTree, Vertex, VertexSet, Witness};

fn union_find_connected(g: &Graph) -> bool {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            p[x] = find(p, p[x]);
        }
        p[x]
    }
    for (u, v) in g.edges() {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    (0..g.n()).map(|v| find(&mut parent, v)).all_equal()
}

/// Maximum number of internally vertex-disjoint s–t paths, by unit-capacity
/// augmenting paths on the split graph.
fn local_connectivity(g: &Graph, s: Vertex, t: Vertex) -> usize {
    let n = g.n();
    // v_in = 2v, v_out = 2v + 1
    let size = 2 * n;
    let mut cap = vec![vec![0i32; size]; size];
    for v in 0..n {
        cap[2 * v][2 * v + 1] = if v == s || v == t { n as i32 } else { 1 };
    }
    for (u, v) in g.edges() {
        cap[2 * u + 1][2 * v] = n as i32;
        cap[2 * v + 1][2 * u] = n as i32;
    }
    let (src, sink) = (2 * s + 1, 2 * t);
    let mut flow = 0;
    loop {
        let mut prev = vec![usize::MAX; size];
        prev[src] = src;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            for y in 0..size {
                if prev[y] == usize::MAX && cap[x][y] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[sink] == usize::MAX {
            return flow;
        }
        let mut y = sink;
        while y != src {
            let x = prev[y];
            cap[x][y] -= 1;
            cap[y][x] += 1;
            y = x;
        }
        flow += 1;
    }
}

/// Vertex connectivity by Menger: complete graphs have n - 1, otherwise the
/// least local connectivity over nonadjacent pairs.
fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if !union_find_connected(g) {
        return 0;
    }
    (0..n)
        .tuple_combinations()
        .filter(|&(u, v)| !g.has_edge(u, v))
        .map(|(u, v)| local_connectivity(g, u, v))
        .min()
        .unwrap_or(n.saturating_sub(1))
}

/// Brute-force K4 minor: try every assignment of vertices to four branch
/// sets or deletion.
fn has_k4_minor(g: &Graph) -> bool {
    let n = g.n();
    let mut label = vec![0u8; n];
    loop {
        let sets: Vec<VertexSet> = (0..4)
            .map(|b| VertexSet::from_iter_n(n, (0..n).filter(|&v| label[v] == b as u8)))
            .collect();
        let ok = sets.iter().all(|s| !s.is_empty() && g.is_connected_within(s))
            && (0..4).tuple_combinations().all(|(a, b)| {
                sets[a].iter().any(|x| g.neighbors(x).iter().any(|&y| sets[b].contains(y)))
            });
        if ok {
            return true;
        }
        // next labelling in base 5
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            label[i] += 1;
            if label[i] < 5 {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

fn some_spanning_tree(g: &Graph, choice: &[Index]) -> SpanningTree {
    // random-order Kruskal
    let mut edges: Vec<Edge> = g.edges().collect();
    for (i, ix) in choice.iter().enumerate().take(edges.len()) {
        let j = i + ix.index(edges.len() - i);
        edges.swap(i, j);
    }
    let mut comp: Vec<usize> = (0..g.n()).collect();
    let mut tree = Vec::new();
    for (u, v) in edges {
        let (a, b) = (comp[u], comp[v]);
        if a != b {
            comp.iter_mut().filter(|c| **c == a).for_each(|c| *c = b);
            tree.push((u, v));
        }
    }
    SpanningTree::new(g, tree).unwrap()
}

fn gf2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        if let Some(p) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) {
            rows.swap(rank, p);
            for r in 0..rows.len() {
                if r != rank && rows[r] >> bit & 1 == 1 {
                    rows[r] ^= rows[rank];
                }
            }
            rank += 1;
        }
    }
    rank
}

fn edge_vector(edges: &[Edge], cycle: &[Vertex]) -> u64 {
    let k = cycle.len();
    (0..k)
        .map(|i| {
            let (a, b) = (cycle[i], cycle[(i + 1) % k]);
            let e = (a.min(b), a.max(b));
            1u64 << edges.iter().position(|&f| f == e).unwrap()
        })
        .fold(0, |x, y| x ^ y)
}

/// Every cycle of `g`, as vertex sequences starting at their least vertex.
fn all_cycles(g: &Graph) -> Vec<Vec<Vertex>> {
    fn extend(g: &Graph, path: &mut Vec<Vertex>, out: &mut Vec<Vec<Vertex>>) {
        let start = path[0];
        let last = *path.last().unwrap();
        for &w in g.neighbors(last) {
            if w == start && path.len() >= 3 && path[1] < last {
                out.push(path.clone());
            } else if w > start && !path.contains(&w) {
                path.push(w);
                extend(g, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..g.n() {
        extend(g, &mut vec![s], &mut out);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn connectivity_matches_union_find(g in any_graph(1, 12)) {
        prop_assert_eq!(g.is_connected(), union_find_connected(&g));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn deleting_nothing_is_identity(g in any_graph(0, 12)) {
        let r = g.delete_vertices(&VertexSet::new(g.n()));
        prop_assert_eq!(&r.graph, &g);
        prop_assert_eq!(r.original, (0..g.n()).collect::<Vec<_>>());
    }

    #[test]
    fn tree_paths_reverse(g in connected_graph(1, 12), choice in prop::collection::vec(any::<Index>(), 66)) {
        let t = some_spanning_tree(&g, &choice);
        prop_assert_eq!(t.edges().len(), g.n() - 1);
        for (u, v) in (0..g.n()).tuple_combinations() {
            let p = t.path(u, v);
            prop_assert_eq!(p.reversed(), t.path(v, u));
            prop_assert_eq!(p.vertices().first(), Some(&u));
            prop_assert_eq!(p.vertices().last(), Some(&v));
            prop_assert!(p.vertices().windows(2).all(|w| t.contains_edge(w[0], w[1])));
        }
    }

    #[test]
    fn connectivity_matches_menger(g in any_graph(1, 10)) {
        let kappa = vertex_connectivity(&g);
        for k in 1..=4 {
            prop_assert_eq!(connectivity_at_least(&g, k).unwrap(), kappa >= k && g.n() > k, "k = {}", k);
        }
    }

    #[test]
    fn bridges_partition_edges(g in connected_graph(3, 11), a in any::<Index>(), b in any::<Index>()) {
        let n = g.n();
        let u = a.index(n);
        let v = (u + 1 + b.index(n - 1)) % n;
        let h = VertexSet::from_iter_n(n, [u, v]);
        let d = h_bridges(&g, &h);
        prop_assert!(d.trivial_count() <= 1);
        let mut covered: Vec<Edge> = d.bridges.iter().flat_map(|b| b.edges.clone()).collect();
        covered.sort_unstable();
        let mut all: Vec<Edge> = g.edges().collect();
        all.sort_unstable();
        prop_assert_eq!(covered, all);
        for (x, y) in d.bridges.iter().tuple_combinations() {
            let mut common = x.vertices.clone();
            common.intersect_with(&y.vertices);
            prop_assert!(common.is_subset(&h));
        }
        for br in d.bridges.iter().filter(|b| !b.trivial) {
            // internal vertices are connected and every attachment touches them,
            // so any two bridge vertices are joined through the interior
            prop_assert!(g.is_connected_within(&br.internal));
            for at in br.attachments.iter() {
                prop_assert!(g.neighbors(at).iter().any(|&w| br.internal.contains(w)));
            }
        }
    }

    #[test]
    fn fundamental_cycles_form_a_basis(g in connected_graph(2, 8), choice in prop::collection::vec(any::<Index>(), 28)) {
        let t = some_spanning_tree(&g, &choice);
        let edges: Vec<Edge> = g.edges().collect();
        let basis: Vec<u64> = t
            .non_tree_edges(&g)
            .map(|e| edge_vector(&edges, fundamental_cycle(&g, &t, e).unwrap().vertices()))
            .collect();
        let dim = g.m() + 1 - g.n();
        prop_assert_eq!(basis.len(), dim);
        prop_assert_eq!(gf2_rank(basis.clone()), dim);
        for c in all_cycles(&g) {
            let mut with = basis.clone();
            with.push(edge_vector(&edges, &c));
            prop_assert_eq!(gf2_rank(with), dim);
        }
    }

    #[test]
    fn failure_witnesses_separate(g in connected_graph(3, 9), choice in prop::collection::vec(any::<Index>(), 36)) {
        let t = some_spanning_tree(&g, &choice);
        let c = verify_tutte_tree(&g, &t).unwrap();
        if let Witness::SeparatingPath { path } = &c.witness {
            prop_assert!(!is_nonseparating_path(&g, path.vertices()).unwrap());
        } else {
            prop_assert!(c.is_holds());
        }
        let c = verify_fundamental_tutte_tree(&g, &t).unwrap();
        if let Witness::SeparatingCycle { cycle, .. } = &c.witness {
            prop_assert!(!is_nonseparating_cycle(&g, cycle).unwrap());
        } else {
            prop_assert!(c.is_holds());
        }
    }

    #[test]
    fn two_cuts_match_menger(g in connected_graph(4, 10)) {
        let cuts = two_vertex_cuts(&g);
        if vertex_connectivity(&g) >= 3 {
            prop_assert!(cuts.is_empty());
        }
        for (u, v) in cuts {
            let d = h_bridges(&g, &VertexSet::from_iter_n(g.n(), [u, v]));
            prop_assert!(d.bridges.iter().filter(|b| !b.trivial).count() >= 2);
        }
    }
}

#[test]
fn series_parallel_matches_k4_minor_search() {
    let corpus = corpus_upto("connected", 7);
    assert_eq!(corpus.graphs.len(), 1 + 1 + 2 + 6 + 21 + 112 + 853);
    for g in &corpus.graphs {
        assert_eq!(is_series_parallel(g), !has_k4_minor(g), "{g:?}");
    }
}

#[test]
fn tutte_trees_are_fundamental_and_need_two_connectivity() {
    for g in &corpus_upto("connected", 6).graphs {
        if g.n() < 3 {
            continue;
        }
        let trees = enumerate_spanning_trees(g, 1_000_000);
        assert!(!trees.overflow);
        let mut any = false;
        for t in &trees.trees {
            if verify_tutte_tree(g, t).unwrap().is_holds() {
                any = true;
                assert!(verify_fundamental_tutte_tree(g, t).unwrap().is_holds());
            }
        }
        if any {
            assert!(connectivity_at_least(g, 2).unwrap());
        }
    }
}
