mod common;

use std::ops::ControlFlow;

use common::{any_graph, connected_graph, corpus_upto};
use proptest::prelude::*;
use proptest::sample::Index;
use tutte_trees::harness::{for_each_spanning_tree, parse_graph6, write_graph6};
use tutte_trees::nonsep::{replay, verify_fundamental_tutte_tree, verify_tutte_tree};
use tutte_trees::planar::{leaves_clique, planar_embed, Embedding};
use tutte_trees::search::{
    build_ftt_block_structured, build_ftt_series_parallel, check_spg_conditions, decide_planar_tutte,
    find_fundamental_tutte_tree, find_tutte_tree, PlanarRoute,
};
use tutte_trees::structure::{connectivity_at_least, is_series_parallel};
use tutte_trees::{Claim, Graph, SearchConfig, SearchError, Verdict, VertexSet};

fn quiet() -> SearchConfig {
    SearchConfig {
        record_stats: false,
        ..SearchConfig::default()
    }
}

fn embed(g: &Graph) -> Option<Embedding> {
    planar_embed(g).ok().and_then(|p| p.embedding())
}

fn face_sets(e: &Embedding, relabel: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
    let mut faces: Vec<Vec<usize>> = e
        .faces
        .iter()
        .map(|f| {
            let mut s: Vec<usize> = f.iter().map(|&v| relabel(v)).collect();
            s.sort_unstable();
            s.dedup();
            s
        })
        .collect();
    faces.sort();
    faces
}

fn has_tutte_tree_by_enumeration(g: &Graph) -> bool {
    let mut found = false;
    let out = for_each_spanning_tree(g, u64::MAX, |t| {
        if verify_tutte_tree(g, t).unwrap().is_holds() {
            found = true;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    assert!(!out.overflow);
    found
}

#[test]
fn embeddings_satisfy_euler() {
    for g in corpus_upto("planar", 8).graphs.iter().filter(|g| g.n() >= 1) {
        let e = embed(g).expect("planar corpus graph embeds");
        assert_eq!(e.euler, 2);
        assert_eq!(g.n() as i64 - g.m() as i64 + e.face_count() as i64, 2);
    }
    for g in corpus_upto("connected", 6).graphs {
        let planar = planar_embed(&g).unwrap().is_planar();
        // Kuratowski at this size: nonplanar needs at least 9 edges
        if !planar {
            assert!(g.m() >= 9);
        }
    }
}

#[test]
fn three_connected_embeddings_are_unique() {
    let reversed = |n: usize| (0..n).rev().collect::<Vec<_>>();
    let mut checked = 0;
    for g in corpus_upto("planar", 8).graphs {
        if !connectivity_at_least(&g, 3).unwrap() {
            continue;
        }
        let perm = reversed(g.n());
        let h = g.permuted(&perm);
        let a = face_sets(&embed(&g).unwrap(), |v| v);
        let b = face_sets(&embed(&h).unwrap(), |v| perm[v]);
        assert_eq!(a, b, "{g:?}");
        checked += 1;
    }
    assert!(checked > 0);
}

#[test]
fn decision_agrees_with_search_on_small_planar_graphs() {
    for g in corpus_upto("planar", 7).graphs.iter().filter(|g| g.n() >= 3) {
        let d = decide_planar_tutte(g, &quiet()).unwrap();
        let s = find_tutte_tree(g, &quiet()).unwrap();
        assert_eq!(d.certificate.verdict, s.verdict, "{g:?}");
        if let Some(t) = d.certificate.tree() {
            assert!(verify_tutte_tree(g, t).unwrap().is_holds());
            if let PlanarRoute::TriangleLeaves { triangle } = d.route {
                assert_eq!(t.leaves(), triangle.to_vec());
            }
        }
    }
}

#[test]
fn builders_only_return_verified_trees() {
    let mut built = [0usize; 2];
    for g in corpus_upto("connected", 7).graphs.iter().filter(|g| g.n() >= 3) {
        match build_ftt_block_structured(g) {
            Ok(t) => {
                assert!(verify_fundamental_tutte_tree(g, &t).unwrap().is_holds());
                built[0] += 1;
            }
            // either a block condition fails, or they all hold and still no
            // tree exists (an articulation vertex shared by three blocks)
            Err(SearchError::BlockCondition(_)) | Err(SearchError::Construction(_)) => {
                assert!(find_fundamental_tutte_tree(g, &quiet()).unwrap().is_fails(), "{g:?}");
            }
            Err(SearchError::NoCutVertex) => {}
            Err(e) => panic!("{e} on {g:?}"),
        }
        if connectivity_at_least(g, 2).unwrap() && is_series_parallel(g) {
            let report = check_spg_conditions(g).unwrap();
            match build_ftt_series_parallel(g) {
                Ok(t) => {
                    assert!(report.holds);
                    assert!(verify_fundamental_tutte_tree(g, &t).unwrap().is_holds());
                    built[1] += 1;
                }
                Err(SearchError::SpgConditionFails(cut)) => {
                    assert!(!report.holds);
                    assert!(report.cuts.iter().any(|c| c.cut == cut && !c.holds()));
                }
                Err(e) => panic!("{e} on {g:?}"),
            }
        }
    }
    assert!(built.iter().all(|&b| b > 0));
}

#[test]
fn tutte_tree_leaves_are_cliques_in_planar_graphs() {
    for g in corpus_upto("planar", 6).graphs.iter().filter(|g| g.n() >= 3) {
        let _ = for_each_spanning_tree(g, u64::MAX, |t| {
            if verify_tutte_tree(g, t).unwrap().is_holds() {
                assert!(leaves_clique(g, t), "{g:?} {t:?}");
            }
            ControlFlow::Continue(())
        });
    }
}

#[test]
fn graph6_round_trips_the_corpus() {
    for g in corpus_upto("connected", 7).graphs {
        let s = write_graph6(&g);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn search_matches_enumeration(g in connected_graph(3, 8)) {
        let c = find_tutte_tree(&g, &quiet()).unwrap();
        prop_assert_eq!(c.is_holds(), has_tutte_tree_by_enumeration(&g));
        prop_assert!(replay(&g, Claim::TutteTree, &c));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in any_graph(0, 70)) {
        prop_assert_eq!(parse_graph6(&write_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn searches_are_deterministic(g in connected_graph(3, 9)) {
        let cfg = SearchConfig::default();
        let a = serde_json::to_string(&find_tutte_tree(&g, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&find_tutte_tree(&g, &cfg).unwrap()).unwrap();
        prop_assert_eq!(a, b);
        let a = serde_json::to_string(&find_fundamental_tutte_tree(&g, &cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&find_fundamental_tutte_tree(&g, &cfg).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pruning_preserves_certificates(g in connected_graph(3, 8)) {
        let unpruned = SearchConfig { prune: false, ..quiet() };
        prop_assert_eq!(find_tutte_tree(&g, &quiet()).unwrap(), find_tutte_tree(&g, &unpruned).unwrap());
        prop_assert_eq!(
            find_fundamental_tutte_tree(&g, &quiet()).unwrap(),
            find_fundamental_tutte_tree(&g, &unpruned).unwrap()
        );
    }

    #[test]
    fn three_connected_leaf_sets_give_tutte_trees(g in connected_graph(4, 8), picks in prop::collection::vec(any::<Index>(), 0..20)) {
        // sample a handful of trees from the enumeration order
        let mut seen = 0usize;
        let wanted: Vec<usize> = picks.iter().map(|p| p.index(64)).collect();
        let _ = for_each_spanning_tree(&g, 64, |t| {
            if wanted.contains(&seen) {
                let leaves = t.leaf_set();
                let sub = g.induced(&leaves).graph;
                if connectivity_at_least(&sub, 3).unwrap() {
                    assert!(verify_tutte_tree(&g, t).unwrap().is_holds());
                }
            }
            seen += 1;
            ControlFlow::Continue(())
        });
    }

    #[test]
    fn leaf_sets_are_respected(g in connected_graph(3, 8), bits in prop::collection::vec(any::<bool>(), 8)) {
        let allowed = VertexSet::from_iter_n(g.n(), (0..g.n()).filter(|&v| bits[v]));
        let c = tutte_trees::search::find_spanning_tree_with_leaves_within(&g, &allowed, &quiet()).unwrap();
        match c.verdict {
            Verdict::Holds => {
                let t = c.tree().unwrap();
                prop_assert!(t.leaf_set().is_subset(&allowed));
            }
            Verdict::Fails => {
                let mut any = false;
                let _ = for_each_spanning_tree(&g, u64::MAX, |t| {
                    any |= t.leaf_set().is_subset(&allowed);
                    if any { ControlFlow::Break(()) } else { ControlFlow::Continue(()) }
                });
                prop_assert!(!any);
            }
            Verdict::Inconclusive => prop_assert!(false, "unlimited budget"),
        }
    }
}
