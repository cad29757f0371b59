//! Planarity testing and combinatorial embeddings.
//!
//! Blocks are embedded with the Demoucron–Malgrange–Pertuiset face-insertion
//! procedure and their rotations are concatenated at cut vertices. Faces are
//! recovered from the rotation system by the usual dart-tracing rule: after
//! arriving at `v` from `u`, leave along the successor of `u` in the rotation
//! at `v`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{normalize, Edge, Graph, SpanningTree, Vertex, VertexSet};
use crate::structure::block_cut_tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rotation system is inconsistent with the graph")]
    BadRotation,
}

/// Rotation system of a connected plane graph together with its faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Embedding {
    /// Cyclic (counter-clockwise by convention) neighbor order per vertex.
    pub rotation: Vec<Vec<Vertex>>,
    /// Boundary walks, one vertex per dart tail.
    pub faces: Vec<Vec<Vertex>>,
    /// `n - m + f`; 2 for a plane embedding of a connected graph.
    pub euler: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Planarity {
    Planar(Embedding),
    NonPlanar,
}

impl Planarity {
    pub fn embedding(self) -> Option<Embedding> {
        match self {
            Planarity::Planar(e) => Some(e),
            Planarity::NonPlanar => None,
        }
    }

    pub fn is_planar(&self) -> bool {
        matches!(self, Planarity::Planar(_))
    }
}

impl Embedding {
    /// Traces faces of a rotation system and checks that every edge appears
    /// in both directions.
    pub fn from_rotation(g: &Graph, rotation: Vec<Vec<Vertex>>) -> Result<Self, PlanarError> {
        let n = g.n();
        if rotation.len() != n {
            return Err(PlanarError::BadRotation);
        }
        // position of each neighbor in the rotation at v
        let mut pos: Vec<BTreeMap<Vertex, usize>> = vec![BTreeMap::new(); n];
        for v in 0..n {
            let mut rot = rotation[v].clone();
            rot.sort_unstable();
            if rot != g.neighbors(v) {
                return Err(PlanarError::BadRotation);
            }
            for (i, &w) in rotation[v].iter().enumerate() {
                pos[v].insert(w, i);
            }
        }
        let mut used: BTreeMap<(Vertex, Vertex), bool> = BTreeMap::new();
        let mut faces = Vec::new();
        for u in 0..n {
            for &v in g.neighbors(u) {
                if used.contains_key(&(u, v)) {
                    continue;
                }
                let mut face = Vec::new();
                let (mut a, mut b) = (u, v);
                while used.insert((a, b), true).is_none() {
                    face.push(a);
                    let rot = &rotation[b];
                    let next = rot[(pos[b][&a] + 1) % rot.len()];
                    (a, b) = (b, next);
                }
                faces.push(face);
            }
        }
        if n == 1 {
            faces.push(vec![0]);
        }
        let euler = n as i64 - g.m() as i64 + faces.len() as i64;
        Ok(Embedding {
            rotation,
            faces,
            euler,
        })
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Boundary vertex set of each face.
    pub fn face_vertex_sets(&self, n: usize) -> Vec<VertexSet> {
        self.faces
            .iter()
            .map(|f| VertexSet::from_iter_n(n, f.iter().copied()))
            .collect()
    }

    /// Graphviz rendering; each face is listed as a comment after the edges.
    pub fn to_dot(&self, g: &Graph) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..g.n() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in g.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        for (i, f) in self.faces.iter().enumerate() {
            let walk: Vec<String> = f.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "  // face {i}: {}", walk.join(" "));
        }
        out.push_str("}\n");
        out
    }
}

/// Embeds a connected graph in the plane, or reports that it is not planar.
pub fn planar_embed(g: &Graph) -> Result<Planarity, PlanarError> {
    if !g.is_connected() {
        return Err(PlanarError::Disconnected);
    }
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return Ok(Planarity::NonPlanar);
    }
    if n == 0 {
        return Ok(Planarity::Planar(Embedding {
            rotation: vec![],
            faces: vec![],
            euler: 1,
        }));
    }
    let bct = block_cut_tree(g).expect("connected, nonempty");
    let mut rotation: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for block in &bct.blocks {
        if block.edges.is_empty() {
            continue;
        }
        let Some(local) = embed_block(g, &block.vertices, &block.edges) else {
            return Ok(Planarity::NonPlanar);
        };
        for (v, rot) in local {
            rotation[v].extend(rot);
        }
    }
    let e = Embedding::from_rotation(g, rotation)?;
    debug_assert_eq!(e.euler, 2);
    Ok(Planarity::Planar(e))
}

/// DMP on one block. Faces are kept as consistently oriented vertex cycles;
/// the rotation is read off the faces at the end.
fn embed_block(g: &Graph, vertices: &[Vertex], edges: &[Edge]) -> Option<BTreeMap<Vertex, Vec<Vertex>>> {
    if edges.len() == 1 {
        let (u, v) = edges[0];
        return Some(BTreeMap::from([(u, vec![v]), (v, vec![u])]));
    }
    let n = g.n();
    let block_set = VertexSet::from_iter_n(n, vertices.iter().copied());
    let in_block = |e: &Edge| edges.binary_search(e).is_ok();
    let members = &block_set;
    let block_nbrs = |v: Vertex| {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(move |&w| members.contains(w) && in_block(&normalize(v, w)))
    };

    let cycle = find_cycle(edges[0], &block_nbrs)?;
    let mut placed = VertexSet::from_iter_n(n, cycle.iter().copied());
    let mut placed_edges: Vec<Edge> = (0..cycle.len())
        .map(|i| normalize(cycle[i], cycle[(i + 1) % cycle.len()]))
        .collect();
    placed_edges.sort_unstable();
    let mut faces: Vec<Vec<Vertex>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    while placed_edges.len() < edges.len() {
        let fragments = fragments(g, edges, &block_set, &placed, &placed_edges);
        // pick a fragment with the fewest admissible faces
        let mut choice: Option<(usize, usize, usize)> = None; // (count, fragment, face)
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = faces
                .iter()
                .enumerate()
                .filter(|(_, f)| frag.attachments.iter().all(|a| f.contains(a)))
                .map(|(i, _)| i)
                .collect();
            if admissible.is_empty() {
                return None;
            }
            if choice.is_none_or(|(c, _, _)| admissible.len() < c) {
                choice = Some((admissible.len(), fi, admissible[0]));
            }
            if admissible.len() == 1 {
                break;
            }
        }
        let (_, fi, face_idx) = choice.expect("unplaced edges imply a fragment");
        let path = fragment_path(g, &fragments[fi], &block_set, &placed, edges);
        let face = faces.swap_remove(face_idx);
        let (f1, f2) = split_face(&face, &path);
        faces.push(f1);
        faces.push(f2);
        for w in path.windows(2) {
            placed_edges.push(normalize(w[0], w[1]));
        }
        placed_edges.sort_unstable();
        for &v in &path {
            placed.insert(v);
        }
    }

    // face traversal x -> v -> y means y follows x in the rotation at v
    let mut succ: BTreeMap<(Vertex, Vertex), Vertex> = BTreeMap::new();
    for f in &faces {
        let k = f.len();
        for i in 0..k {
            let (x, v, y) = (f[i], f[(i + 1) % k], f[(i + 2) % k]);
            succ.insert((v, x), y);
        }
    }
    let mut out = BTreeMap::new();
    for &v in vertices {
        let first = block_nbrs(v).next()?;
        let mut rot = vec![first];
        let mut cur = first;
        loop {
            cur = *succ.get(&(v, cur))?;
            if cur == first {
                break;
            }
            rot.push(cur);
        }
        out.insert(v, rot);
    }
    Some(out)
}

/// A cycle through the first block edge: the edge plus a shortest detour.
fn find_cycle<I: Iterator<Item = Vertex>>(
    (u, v): Edge,
    nbrs: &impl Fn(Vertex) -> I,
) -> Option<Vec<Vertex>> {
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::from([(u, u)]);
    let mut queue = std::collections::VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for y in nbrs(x) {
            if (x, y) == (u, v) || prev.contains_key(&y) {
                continue;
            }
            prev.insert(y, x);
            if y == v {
                let mut cycle = vec![v];
                let mut cur = v;
                while cur != u {
                    cur = prev[&cur];
                    cycle.push(cur);
                }
                return Some(cycle);
            }
            queue.push_back(y);
        }
    }
    None
}

struct Fragment {
    /// Internal vertices; empty for a single unplaced edge.
    internal: VertexSet,
    attachments: Vec<Vertex>,
    /// The unplaced edge when `internal` is empty.
    chord: Option<Edge>,
}

fn fragments(
    g: &Graph,
    edges: &[Edge],
    block_set: &VertexSet,
    placed: &VertexSet,
    placed_edges: &[Edge],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    for &(u, v) in edges {
        if placed.contains(u) && placed.contains(v) && placed_edges.binary_search(&(u, v)).is_err() {
            out.push(Fragment {
                internal: VertexSet::new(g.n()),
                attachments: vec![u, v],
                chord: Some((u, v)),
            });
        }
    }
    let mut rest = block_set.clone();
    rest.difference_with(placed);
    for comp in g.components_within(&rest) {
        let mut att = VertexSet::new(g.n());
        for v in comp.iter() {
            for &w in g.neighbors(v) {
                if placed.contains(w) && edges.binary_search(&normalize(v, w)).is_ok() {
                    att.insert(w);
                }
            }
        }
        out.push(Fragment {
            internal: comp,
            attachments: att.to_vec(),
            chord: None,
        });
    }
    out
}

/// Path between two distinct attachments through the fragment's interior.
fn fragment_path(
    g: &Graph,
    frag: &Fragment,
    block_set: &VertexSet,
    placed: &VertexSet,
    edges: &[Edge],
) -> Vec<Vertex> {
    if let Some((u, v)) = frag.chord {
        return vec![u, v];
    }
    let is_edge = |a: Vertex, b: Vertex| edges.binary_search(&normalize(a, b)).is_ok();
    let a = frag.attachments[0];
    let entry = g
        .neighbors(a)
        .iter()
        .copied()
        .find(|&w| frag.internal.contains(w) && is_edge(a, w))
        .expect("attachment touches the fragment");
    let mut prev: BTreeMap<Vertex, Vertex> = BTreeMap::from([(entry, a)]);
    let mut queue = std::collections::VecDeque::from([entry]);
    while let Some(x) = queue.pop_front() {
        for &y in g.neighbors(x) {
            if !block_set.contains(y) || !is_edge(x, y) {
                continue;
            }
            if placed.contains(y) && y != a {
                let mut path = vec![y, x];
                let mut cur = x;
                while cur != entry {
                    cur = prev[&cur];
                    path.push(cur);
                }
                path.push(a);
                path.reverse();
                return path;
            }
            if frag.internal.contains(y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("a fragment of a 2-connected block has two attachments")
}

/// Splits the oriented face cycle by a path whose ends lie on it.
fn split_face(face: &[Vertex], path: &[Vertex]) -> (Vec<Vertex>, Vec<Vertex>) {
    let a = path[0];
    let b = *path.last().unwrap();
    let k = face.len();
    let ia = face.iter().position(|&x| x == a).unwrap();
    let rotated: Vec<Vertex> = (0..k).map(|i| face[(ia + i) % k]).collect();
    let ib = rotated.iter().position(|&x| x == b).unwrap();
    let inner = &path[1..path.len() - 1];
    let mut f1: Vec<Vertex> = rotated[..=ib].to_vec();
    f1.extend(inner.iter().rev());
    let mut f2: Vec<Vertex> = rotated[ib..].to_vec();
    f2.push(a);
    f2.extend(inner.iter());
    (f1, f2)
}

/// Every pair of leaves of `t` is adjacent in `g`.
pub fn leaves_clique(g: &Graph, t: &SpanningTree) -> bool {
    let leaves = t.leaves();
    leaves
        .iter()
        .enumerate()
        .all(|(i, &u)| leaves[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

/// Exactly three leaves, pairwise adjacent.
pub fn leaves_induce_triangle(g: &Graph, t: &SpanningTree) -> bool {
    t.leaves().len() == 3 && leaves_clique(g, t)
}

/// Some face boundary contains every leaf of `t`.
pub fn leaves_on_common_face(e: &Embedding, t: &SpanningTree) -> bool {
    let leaves = t.leaf_set();
    e.face_vertex_sets(t.n()).iter().any(|f| leaves.is_subset(f))
}
