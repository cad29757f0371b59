use std::fmt;
use std::io::Read;
use std::path::Path;

use anyhow::{bail, Context, Result};
use tutte_trees::harness::{parse_edge_list, Corpus};
use tutte_trees::{Graph, SpanningTree, Vertex};

/// Marks an error as "the file could not be read", which maps to its own exit code.
#[derive(Debug)]
pub struct Unreadable(pub String);

impl fmt::Display for Unreadable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "cannot read {}", self.0)
    }
}

impl std::error::Error for Unreadable {}

pub fn read_text(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| anyhow::Error::new(e).context(Unreadable("standard input".into())))?;
        return Ok(s);
    }
    std::fs::read_to_string(Path::new(path)).map_err(|e| anyhow::Error::new(e).context(Unreadable(path.into())))
}

pub fn read_graphs(path: &str) -> Result<Vec<Graph>> {
    let text = read_text(path)?;
    let corpus = Corpus::from_graph6(path, &text).with_context(|| format!("parsing {path}"))?;
    if corpus.graphs.is_empty() {
        bail!("{path} contains no graphs");
    }
    Ok(corpus.graphs)
}

pub fn read_graph(path: &str) -> Result<Graph> {
    let mut graphs = read_graphs(path)?;
    if graphs.len() != 1 {
        bail!("{path} holds {} graphs, expected exactly one", graphs.len());
    }
    Ok(graphs.pop().unwrap())
}

pub fn parse_tree(g: &Graph, s: &str) -> Result<SpanningTree> {
    let edges = parse_edge_list(s)?;
    SpanningTree::new(g, edges).context("tree is not a spanning tree of the graph")
}

pub fn parse_pair(s: &str) -> Result<(Vertex, Vertex)> {
    let (a, b) = s
        .split_once(',')
        .with_context(|| format!("expected two vertices as u,v, got {s:?}"))?;
    let a = a.trim().parse().with_context(|| format!("bad vertex {a:?}"))?;
    let b = b.trim().parse().with_context(|| format!("bad vertex {b:?}"))?;
    Ok((a, b))
}

pub fn check_vertex(g: &Graph, v: Vertex) -> Result<()> {
    if v >= g.n() {
        bail!("vertex {v} out of range for a graph on {} vertices", g.n());
    }
    Ok(())
}

