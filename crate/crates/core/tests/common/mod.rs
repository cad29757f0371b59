#![allow(dead_code)]

use std::path::PathBuf;

use proptest::prelude::*;
use proptest::sample::Index;
use tutte_trees::harness::Corpus;
use tutte_trees::{Edge, Graph};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpora")
}

pub fn corpus(name: &str) -> Corpus {
    Corpus::load(corpus_dir().join(format!("{name}.g6"))).expect("shipped corpus loads")
}

/// Concatenation of `{prefix}-n1.g6 ..= {prefix}-n{max}.g6`.
pub fn corpus_upto(prefix: &str, max: usize) -> Corpus {
    Corpus::concat((1..=max).map(|n| corpus(&format!("{prefix}-n{n}"))))
}

fn pairs(n: usize) -> Vec<Edge> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Any simple graph on `min..=max` vertices, with a random edge density.
pub fn any_graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max, 0.05f64..0.95).prop_flat_map(|(n, p)| {
        prop::collection::vec(prop::bool::weighted(p), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let edges = pairs(n).into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
            Graph::new(n, edges).unwrap()
        })
    })
}

/// A random spanning tree (each vertex hangs off an earlier one) plus
/// random extra edges.
pub fn connected_graph(min: usize, max: usize) -> impl Strategy<Value = Graph> {
    (min..=max, 0.0f64..0.8).prop_flat_map(|(n, p)| {
        (
            prop::collection::vec(any::<Index>(), n.saturating_sub(1)),
            prop::collection::vec(prop::bool::weighted(p), n * n.saturating_sub(1) / 2),
        )
            .prop_map(move |(parents, bits)| {
                let mut edges: Vec<Edge> = parents.iter().enumerate().map(|(i, ix)| (ix.index(i + 1), i + 1)).collect();
                edges.extend(pairs(n).into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e));
                edges.sort_unstable();
                edges.dedup();
                Graph::new(n, edges).unwrap()
            })
    })
}
