//! Corpora, oracles and the theorem-verification suite.

mod enumerate;
mod graph6;
mod theorems;

use std::path::Path;

use thiserror::Error;

use crate::graph::{Edge, Graph, TreeError};

pub use enumerate::{
    enumerate_spanning_trees, for_each_spanning_tree, EnumerationOutcome, TreeEnumeration, DEFAULT_TREE_CAP,
};
pub use graph6::{parse_graph6, write_graph6, Graph6Error};
pub use theorems::{
    check_graph, replay_bundle, verify_theorem, BundleReplay, GraphOutcome, SkipReason, TheoremId, TheoremReport,
    VerifyOptions, WitnessBundle,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("line {line}")]
    Corpus { line: usize, source: Graph6Error },
    #[error(transparent)]
    Graph6(#[from] Graph6Error),
    #[error("cannot read {path}")]
    Io { path: String, source: std::io::Error },
    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
    #[error("malformed edge list: {0}")]
    EdgeList(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("invalid bundle: {0}")]
    Bundle(String),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
}

/// A named list of graphs, usually read from a graph6 file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub name: String,
    pub graphs: Vec<Graph>,
}

impl Corpus {
    /// One graph per nonblank line; line numbers in errors start at 1.
    pub fn from_graph6(name: impl Into<String>, text: &str) -> Result<Self, HarnessError> {
        let graphs = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| parse_graph6(l).map_err(|source| HarnessError::Corpus { line: i + 1, source }))
            .collect::<Result<_, _>>()?;
        Ok(Corpus {
            name: name.into(),
            graphs,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, HarnessError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_graph6(path.display().to_string(), &text)
    }

    /// Concatenation of several corpora, named by joining their names.
    pub fn concat(parts: impl IntoIterator<Item = Corpus>) -> Corpus {
        let mut names = Vec::new();
        let mut graphs = Vec::new();
        for c in parts {
            names.push(c.name);
            graphs.extend(c.graphs);
        }
        Corpus {
            name: names.join("+"),
            graphs,
        }
    }

    pub fn to_graph6(&self) -> String {
        self.graphs.iter().map(|g| write_graph6(g) + "\n").collect()
    }
}

/// Parses `"u-v,u-v,..."`; whitespace around items is ignored and an empty
/// string is the empty list.
pub fn parse_edge_list(s: &str) -> Result<Vec<Edge>, HarnessError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|item| {
            let (a, b) = item
                .trim()
                .split_once('-')
                .ok_or_else(|| HarnessError::EdgeList(format!("{item:?} is not of the form u-v")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| HarnessError::EdgeList(format!("{x:?} is not a vertex")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}
