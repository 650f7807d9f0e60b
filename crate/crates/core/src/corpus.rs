//! Named cubic graphs and a catalog of small bridgeless cubic graphs.

use crate::graph::{EdgeId, MultiGraph, VertexId};
use crate::graph6::parse_graph6;

/// Every connected bridgeless cubic graph on 4 to 16 vertices, one per
/// isomorphism class, in graph6 (1, 2, 4, 14, 57, 341 and 2828 graphs).
pub const SMALL_BRIDGELESS_CUBIC_G6: &str = include_str!("../data/cubic_bridgeless_le16.g6");

pub fn small_bridgeless_cubic() -> Vec<MultiGraph> {
    SMALL_BRIDGELESS_CUBIC_G6
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| parse_graph6(l).expect("catalog entries are valid graph6"))
        .collect()
}

fn from_edges(n: usize, edges: &[(usize, usize)]) -> MultiGraph {
    MultiGraph::from_edges(n, edges.iter().copied()).expect("fixture edges are valid")
}

pub fn k4() -> MultiGraph {
    from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
}

pub fn k33() -> MultiGraph {
    let edges: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    from_edges(6, &edges)
}

/// Outer 5-cycle `0..5`, spokes `i -- i+5`, inner pentagram on `5..10`.
pub fn petersen() -> MultiGraph {
    from_edges(
        10,
        &[
            (0, 1), (0, 4), (0, 5), (1, 2), (1, 6), (2, 3), (2, 7), (3, 4),
            (3, 8), (4, 9), (5, 7), (5, 8), (6, 8), (6, 9), (7, 9),
        ],
    )
}

/// The flower graph `J_k` on `4k` vertices: for each `i`, a centre `4i`
/// joined to `4i+1`, `4i+2`, `4i+3`; the `4i+1` form a `k`-cycle and the
/// `4i+2`, `4i+3` together form one `2k`-cycle. A snark for odd `k >= 5`.
pub fn flower_snark(k: usize) -> MultiGraph {
    assert!(k >= 3, "flower graphs need k >= 3");
    let (a, b, c, d) = (|i: usize| 4 * i, |i: usize| 4 * i + 1, |i: usize| 4 * i + 2, |i: usize| 4 * i + 3);
    let mut edges = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        edges.extend([(a(i), b(i)), (a(i), c(i)), (a(i), d(i)), (b(i), b(j))]);
        if j == 0 {
            edges.extend([(c(i), d(0)), (d(i), c(0))]);
        } else {
            edges.extend([(c(i), c(j)), (d(i), d(j))]);
        }
    }
    from_edges(4 * k, &edges)
}

/// The Blanuša snarks: the two non-isomorphic 18-vertex dot products of
/// the Petersen graph with itself (automorphism groups of order 8 and 4).
pub fn blanusa_first() -> MultiGraph {
    parse_graph6("QgAQpW_C??o@?H?G?A??QA?W?Ao").expect("valid graph6")
}

pub fn blanusa_second() -> MultiGraph {
    parse_graph6("QgAQpW_CC?`??H?G?A??Q?@W?Ao").expect("valid graph6")
}

/// Replaces each vertex `v` of the cubic graph `g` with `which[v]` set by a
/// copy of the Petersen graph minus a vertex, attached through the three
/// vertices of degree two. Copies occupy consecutive blocks of 9 ids.
pub fn inflate_with_petersen(g: &MultiGraph, which: &[bool]) -> MultiGraph {
    let p = petersen();
    // Petersen vertex 0 is removed; its neighbours 1, 4, 5 become ports.
    let ports = [0, 3, 4];
    let mut base = Vec::with_capacity(g.vertex_count());
    let mut n = 0;
    for v in g.vertices() {
        base.push(n);
        n += if which[v] { 9 } else { 1 };
    }
    let mut edges = Vec::new();
    for v in g.vertices().filter(|&v| which[v]) {
        edges.extend(p.edges().filter(|&(_, a, b)| a != 0 && b != 0).map(|(_, a, b)| (base[v] + a - 1, base[v] + b - 1)));
    }
    let mut used = vec![0; g.vertex_count()];
    let mut port = |v: VertexId| {
        let at = if which[v] { base[v] + ports[used[v]] } else { base[v] };
        used[v] += 1;
        at
    };
    for (_, u, v) in g.edges() {
        edges.push((port(u), port(v)));
    }
    from_edges(n, &edges)
}

/// `K_4` with three of its vertices inflated: 28 vertices, oddness 4.
/// Deletes `e` from `g` and `f` from `h` and joins the freed ends of `e`
/// to those of `f`. The two new edges get the last ids.
pub fn two_sum(g: &MultiGraph, e: EdgeId, h: &MultiGraph, f: EdgeId) -> MultiGraph {
    let n = g.vertex_count();
    let (a, b) = g.endpoints(e);
    let (c, d) = h.endpoints(f);
    let mut edges: Vec<(usize, usize)> = g.edges().filter(|x| x.0 != e).map(|x| (x.1, x.2)).collect();
    edges.extend(h.edges().filter(|x| x.0 != f).map(|x| (x.1 + n, x.2 + n)));
    edges.extend([(a, c + n), (b, d + n)]);
    MultiGraph::from_edges(n + h.vertex_count(), edges).expect("endpoints are in range")
}

pub fn oddness4_28() -> MultiGraph {
    inflate_with_petersen(&k4(), &[true, true, true, false])
}

/// `K_4` with all four vertices inflated: 36 vertices, oddness 4.
pub fn oddness4_36() -> MultiGraph {
    inflate_with_petersen(&k4(), &[true; 4])
}
