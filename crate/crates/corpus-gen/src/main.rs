//! Isomorph-free corpora of small connected graphs.
//!
//! Every connected graph on `n` vertices arises from a connected graph on
//! `n - 1` vertices by adding a vertex joined to a nonempty subset, because
//! some vertex is never a cut vertex. Candidates are bucketed by a colour
//! refinement invariant and compared by a colour-respecting isomorphism
//! search within their bucket. Planar corpora extend only planar graphs,
//! since deleting a vertex keeps a graph planar.

use std::collections::hash_map::DefaultHasher;
use std::collections::HashMap;
use std::fs;
use std::hash::{Hash, Hasher};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Parser;
use tutte_trees::harness::write_graph6;
use tutte_trees::planar::planar_embed;
use tutte_trees::Graph;

#[derive(Parser)]
#[command(about = "Generate graph6 corpora of connected and connected planar graphs")]
struct Args {
    /// Largest order for the corpus of all connected graphs.
    #[arg(long, default_value_t = 8)]
    connected_max: usize,
    /// Largest order for the corpus of connected planar graphs.
    #[arg(long, default_value_t = 9)]
    planar_max: usize,
    /// Output directory.
    #[arg(long, default_value = "corpora")]
    out: PathBuf,
}

/// Adjacency bit masks; orders up to 16.
#[derive(Clone)]
struct Small {
    adj: Vec<u16>,
}

impl Small {
    fn n(&self) -> usize {
        self.adj.len()
    }

    fn extend(&self, subset: u16) -> Small {
        let n = self.n();
        let mut adj = self.adj.clone();
        for (v, a) in adj.iter_mut().enumerate() {
            if subset >> v & 1 == 1 {
                *a |= 1 << n;
            }
        }
        adj.push(subset);
        Small { adj }
    }

    fn to_graph(&self) -> Graph {
        let n = self.n();
        let edges = (0..n).flat_map(|u| (u + 1..n).filter(move |&v| self.adj[u] >> v & 1 == 1).map(move |v| (u, v)));
        Graph::new(n, edges.collect::<Vec<_>>()).expect("simple graph")
    }
}

/// Stable colour refinement from degrees. Colours are numbered by sorting
/// signatures, so they do not depend on the labelling; the hash covers the
/// signature tables of every round.
fn refine(g: &Small) -> (Vec<u32>, u64) {
    let n = g.n();
    let mut colors: Vec<u32> = g.adj.iter().map(|a| a.count_ones()).collect();
    let mut hasher = DefaultHasher::new();
    n.hash(&mut hasher);
    let mut classes = 0;
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = (0..n).filter(|&w| g.adj[v] >> w & 1 == 1).map(|w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut table = sigs.clone();
        table.sort();
        table.dedup();
        let mut counted: Vec<(&(u32, Vec<u32>), usize)> =
            table.iter().map(|t| (t, sigs.iter().filter(|s| *s == t).count())).collect();
        counted.sort();
        counted.hash(&mut hasher);
        colors = sigs.iter().map(|s| table.binary_search(s).unwrap() as u32).collect();
        if table.len() == classes {
            break;
        }
        classes = table.len();
    }
    (colors, hasher.finish())
}

/// A colour- and adjacency-preserving bijection from `a` to `b`.
fn isomorphic(a: &Small, ca: &[u32], b: &Small, cb: &[u32]) -> bool {
    let n = a.n();
    let mut sa = ca.to_vec();
    sa.sort_unstable();
    let mut sb = cb.to_vec();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    // map rarest colour classes first, then neighbours of mapped vertices
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut placed = 0u16;
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((a.adj[v] & placed).count_ones(), std::cmp::Reverse(sa.iter().filter(|&&c| c == ca[v]).count()), std::cmp::Reverse(v)))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = 0u16;
    fn go(i: usize, order: &[usize], a: &Small, ca: &[u32], b: &Small, cb: &[u32], map: &mut [usize], used: &mut u16) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for w in 0..b.n() {
            if *used >> w & 1 == 1 || cb[w] != ca[v] {
                continue;
            }
            let ok = order[..i].iter().all(|&x| (a.adj[v] >> x & 1) == (b.adj[w] >> map[x] & 1));
            if !ok {
                continue;
            }
            map[v] = w;
            *used |= 1 << w;
            if go(i + 1, order, a, ca, b, cb, map, used) {
                return true;
            }
            *used &= !(1 << w);
        }
        false
    }
    go(0, &order, a, ca, b, cb, &mut map, &mut used)
}

struct Level {
    graphs: Vec<Small>,
    colors: Vec<Vec<u32>>,
    buckets: HashMap<u64, Vec<usize>>,
}

impl Level {
    fn new() -> Self {
        Level {
            graphs: Vec::new(),
            colors: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    /// Adds `g` unless an isomorphic graph is present; `accept` is consulted
    /// only for new classes.
    fn offer(&mut self, g: Small, accept: impl Fn(&Small) -> bool) {
        let (colors, h) = refine(&g);
        if let Some(ids) = self.buckets.get(&h) {
            if ids.iter().any(|&i| isomorphic(&g, &colors, &self.graphs[i], &self.colors[i])) {
                return;
            }
        }
        if !accept(&g) {
            return;
        }
        self.buckets.entry(h).or_default().push(self.graphs.len());
        self.graphs.push(g);
        self.colors.push(colors);
    }
}

fn next_level(prev: &[Small], accept: impl Fn(&Small) -> bool) -> Vec<Small> {
    let mut level = Level::new();
    for g in prev {
        let n = g.n();
        for subset in 1..(1u32 << n) {
            level.offer(g.extend(subset as u16), &accept);
        }
    }
    level.graphs
}

fn write(out: &PathBuf, name: &str, graphs: &[Small]) -> Result<()> {
    let mut lines: Vec<String> = graphs.iter().map(|g| write_graph6(&g.to_graph())).collect();
    lines.sort();
    let path = out.join(name);
    fs::write(&path, lines.join("\n") + "\n").with_context(|| format!("writing {}", path.display()))?;
    eprintln!("{}: {} graphs", path.display(), lines.len());
    Ok(())
}

fn main() -> Result<()> {
    let args = Args::parse();
    anyhow::ensure!(args.connected_max <= 16 && args.planar_max <= 16, "orders above 16 are not supported");
    fs::create_dir_all(&args.out)?;
    let k1 = vec![Small { adj: vec![0] }];

    let mut level = k1.clone();
    for n in 1..=args.connected_max {
        if n > 1 {
            level = next_level(&level, |_| true);
        }
        write(&args.out, &format!("connected-n{n}.g6"), &level)?;
    }

    let planar = |g: &Small| planar_embed(&g.to_graph()).is_ok_and(|p| p.is_planar());
    let mut level = k1;
    for n in 1..=args.planar_max {
        if n > 1 {
            level = next_level(&level, planar);
        }
        write(&args.out, &format!("planar-n{n}.g6"), &level)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(max: usize, accept: impl Fn(&Small) -> bool + Copy) -> Vec<usize> {
        let mut level = vec![Small { adj: vec![0] }];
        let mut out = vec![1];
        for _ in 2..=max {
            level = next_level(&level, accept);
            out.push(level.len());
        }
        out
    }

    #[test]
    fn connected_graph_counts() {
        assert_eq!(counts(6, |_| true), vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn relabelled_graphs_are_isomorphic() {
        let path = Small { adj: vec![0b010, 0b101, 0b010] };
        let other = Small { adj: vec![0b100, 0b100, 0b011] };
        let (ca, _) = refine(&path);
        let (cb, _) = refine(&other);
        assert!(isomorphic(&path, &ca, &other, &cb));
        let tri = Small { adj: vec![0b110, 0b101, 0b011] };
        let (ct, _) = refine(&tri);
        assert!(!isomorphic(&path, &ca, &tri, &ct));
    }
}
