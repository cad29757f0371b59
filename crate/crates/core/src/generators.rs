//! Named graphs and families.
//!
//! Vertex labellings are fixed and documented per constructor so that
//! certificates and trees stay comparable across runs.

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};
use crate::harness::parse_graph6;
use crate::planar::planar_embed;
use crate::structure::connectivity_at_least;

const HERSCHEL_G6: &str = include_str!("../assets/herschel.g6");
const ZAMFIRESCU_G6: &str = include_str!("../assets/zamfirescu.g6");

/// First attachment vertex of the extra vertex `w` in [`noftt`].
pub const NOFTT_V1: Vertex = 0;
/// Second attachment vertex of `w`; nonadjacent to [`NOFTT_V1`] in
/// [`zamfirescu`] and on a common face with it.
pub const NOFTT_V2: Vertex = 12;
/// Label of the vertex added by [`noftt`].
pub const NOFTT_W: Vertex = 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error("order {0} too small, need at least 5")]
    OrderTooSmall(usize),
    #[error("seed is not a 3-connected planar triangulation: {0}")]
    BadTriangulation(String),
}

fn graph(n: usize, edges: impl IntoIterator<Item = Edge>) -> Graph {
    Graph::new(n, edges).expect("generator edges are simple")
}

fn asset(text: &str) -> Graph {
    parse_graph6(text.trim()).expect("bundled asset is valid graph6")
}

/// The Herschel graph: vertex–face incidence graph of the triangular prism.
///
/// Prism vertices `a0 a1 a2` are 0–2 and `b0 b1 b2` are 3–5; the top and
/// bottom triangles are 6 and 7; the square through `ai, ai+1` is `8 + i`.
pub fn herschel() -> Graph {
    asset(HERSCHEL_G6)
}

#[cfg(test)]
pub(crate) fn herschel_construction() -> Graph {
    let mut edges = Vec::new();
    for i in 0..3 {
        let j = (i + 1) % 3;
        edges.push((i, 6));
        edges.push((3 + i, 7));
        edges.extend([(i, 8 + i), (j, 8 + i), (3 + i, 8 + i), (3 + j, 8 + i)]);
    }
    graph(11, edges)
}

/// The stacked-triangulation family: `H_n` is grown from K4 on black
/// vertices `0..n`, each new black vertex going into the oldest face; then
/// one white vertex per face of `H_n` is joined to that face's three black
/// vertices. Whites are labelled `n..3n-4` in face order.
pub fn g_n(n: usize) -> Result<Graph, GeneratorError> {
    if n < 5 {
        return Err(GeneratorError::OrderTooSmall(n));
    }
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
    let mut edges: Vec<Edge> = (0..4).tuple_combinations().collect();
    for k in 4..n {
        let [a, b, c] = faces.remove(0);
        edges.extend([(a, k), (b, k), (c, k)]);
        faces.extend([[a, b, k], [a, c, k], [b, c, k]]);
    }
    Ok(add_face_vertices(n, edges, &faces))
}

/// [`g_n`] from a caller-supplied 3-connected planar triangulation.
pub fn g_n_from(triangulation: &Graph) -> Result<Graph, GeneratorError> {
    let n = triangulation.n();
    if n < 5 {
        return Err(GeneratorError::OrderTooSmall(n));
    }
    if triangulation.m() != 3 * n - 6 {
        return Err(GeneratorError::BadTriangulation(format!(
            "{} edges, a triangulation on {n} vertices has {}",
            triangulation.m(),
            3 * n - 6
        )));
    }
    if !connectivity_at_least(triangulation, 3).unwrap_or(false) {
        return Err(GeneratorError::BadTriangulation("not 3-connected".into()));
    }
    let emb = planar_embed(triangulation)
        .ok()
        .and_then(|p| p.embedding())
        .ok_or_else(|| GeneratorError::BadTriangulation("not planar".into()))?;
    let faces: Vec<[Vertex; 3]> = emb
        .faces
        .iter()
        .map(|f| {
            let mut t = [f[0], f[1], f[2]];
            t.sort_unstable();
            t
        })
        .sorted()
        .collect();
    Ok(add_face_vertices(n, triangulation.edges().collect(), &faces))
}

fn add_face_vertices(n: usize, mut edges: Vec<Edge>, faces: &[[Vertex; 3]]) -> Graph {
    for (i, f) in faces.iter().enumerate() {
        edges.extend(f.iter().map(|&b| (b, n + i)));
    }
    graph(n + faces.len(), edges)
}

/// Five white vertices `0..5` and one black vertex per 3-subset of them,
/// labelled `5..15` in lexicographic order of the subsets.
pub fn star_s() -> Graph {
    let edges = (0..5)
        .combinations(3)
        .enumerate()
        .flat_map(|(i, t)| t.into_iter().map(move |w| (w, 5 + i)))
        .collect_vec();
    graph(15, edges)
}

/// Outer 5-cycle `0..5`, spokes `i – i+5`, inner pentagram on `5..10`.
pub fn petersen() -> Graph {
    let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
    graph(10, edges)
}

/// Complete bipartite graph with parts `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    graph(a + b, (0..a).cartesian_product(a..a + b))
}

pub fn k33() -> Graph {
    complete_bipartite(3, 3)
}

pub fn k35() -> Graph {
    complete_bipartite(3, 5)
}

/// Barycentric subdivision of K5 embedded in the projective plane, a
/// 3-connected nonplanar triangulation on 21 vertices.
///
/// The embedding is K6 triangulating the projective plane with one vertex
/// removed: faces are the pentagon `0 1 2 3 4` and the triangles
/// `{i, i+1, i+3}`. Branch vertices are `0..5`, the midpoint of the `i`-th
/// edge of K5 (lexicographic) is `5 + i`, the pentagon centre is 15 and the
/// centre of triangle `{i, i+1, i+3}` is `16 + i`. Each face centre is joined
/// to every corner and edge midpoint on its boundary.
pub fn k5_barycentric() -> Graph {
    let k5: Vec<Edge> = (0..5).tuple_combinations().collect();
    let mid = |u: Vertex, v: Vertex| 5 + k5.iter().position(|&e| e == (u.min(v), u.max(v))).unwrap();
    let mut edges: Vec<Edge> = k5.iter().flat_map(|&(u, v)| [(u, mid(u, v)), (v, mid(u, v))]).collect();
    let mut faces: Vec<Vec<Vertex>> = vec![(0..5).collect()];
    faces.extend((0..5).map(|i| vec![i, (i + 1) % 5, (i + 3) % 5]));
    for (f, face) in faces.iter().enumerate() {
        let centre = 15 + f;
        for (k, &u) in face.iter().enumerate() {
            let v = face[(k + 1) % face.len()];
            edges.extend([(u, centre), (mid(u, v), centre)]);
        }
    }
    graph(21, edges)
}

/// A nontraceable planar 3-connected graph on 31 vertices, shipped as a data
/// asset.
///
/// It is K4 with three of its vertices each replaced by a copy of the
/// Herschel graph minus a degree-3 vertex, the three K4 edges landing on
/// that vertex's former neighbours. Vertex 0 is the kept K4 vertex; copy
/// `i` occupies `1 + 10(i-1) ..= 10i`. A Hamiltonian path would have to end
/// inside every copy, because passing through a copy means a Hamiltonian
/// path between two of its attachment vertices, which would close up into a
/// Hamiltonian cycle of the Herschel graph.
pub fn zamfirescu() -> Graph {
    asset(ZAMFIRESCU_G6)
}

#[cfg(test)]
pub(crate) fn zamfirescu_construction() -> Graph {
    let h = herschel_construction();
    // drop the top-face vertex 6; its neighbours 0, 1, 2 become attachments
    let keep: Vec<Vertex> = (0..11).filter(|&v| v != 6).collect();
    let local = |v: Vertex| keep.iter().position(|&k| k == v).unwrap();
    let mut edges = Vec::new();
    for copy in 0..3 {
        let base = 1 + 10 * copy;
        edges.extend(
            h.edges()
                .filter(|&(u, v)| u != 6 && v != 6)
                .map(|(u, v)| (base + local(u), base + local(v))),
        );
    }
    // K4 on {k0, k1, k2, k3}; copy c stands for k(c+1) and its attachment
    // toward k(j) is the j-th smallest K4 neighbour slot
    let attach = |copy: usize, toward: usize| {
        let slots: Vec<usize> = (0..4).filter(|&k| k != copy + 1).collect();
        1 + 10 * copy + slots.iter().position(|&k| k == toward).unwrap()
    };
    for (x, y) in (0..4).tuple_combinations() {
        let ex = if x == 0 { 0 } else { attach(x - 1, y) };
        let ey = attach(y - 1, x);
        edges.push((ex, ey));
    }
    graph(31, edges)
}

/// [`zamfirescu`] plus a vertex `w` joined to [`NOFTT_V1`] and
/// [`NOFTT_V2`], plus the edge between them.
pub fn noftt() -> Graph {
    let z = zamfirescu();
    let edges = z
        .edges()
        .chain([(NOFTT_V1, NOFTT_W), (NOFTT_V2, NOFTT_W), (NOFTT_V1, NOFTT_V2)]);
    graph(32, edges)
}

/// Names accepted by [`named`].
pub const NAMES: &[&str] = &[
    "herschel",
    "petersen",
    "k33",
    "k35",
    "k5-barycentric",
    "star-s",
    "zamfirescu",
    "noftt",
    "gn:N",
];

/// Looks a graph up by name; `gn:N` selects [`g_n`].
pub fn named(name: &str) -> Result<Graph, GeneratorError> {
    let key = name.trim().to_ascii_lowercase().replace('_', "-");
    if let Some(n) = key.strip_prefix("gn:") {
        let n = n.parse().map_err(|_| GeneratorError::UnknownName(name.into()))?;
        return g_n(n);
    }
    Ok(match key.as_str() {
        "herschel" => herschel(),
        "petersen" => petersen(),
        "k33" | "k3,3" => k33(),
        "k35" | "k3,5" => k35(),
        "k5-barycentric" => k5_barycentric(),
        "star-s" | "s" => star_s(),
        "zamfirescu" | "nontraceable" => zamfirescu(),
        "noftt" => noftt(),
        _ => return Err(GeneratorError::UnknownName(name.into())),
    })
}
