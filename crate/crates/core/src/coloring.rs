//! Canonical 4-edge-colorings with respect to a 2-factor.
//!
//! Matching edges get color 1. Every circuit of the 2-factor is walked in
//! its canonical traversal: even circuits alternate 2, 3 starting from the
//! first edge; on an odd circuit the edge with the smallest id gets 0 and
//! the edges after it alternate 2, 3. The tail of the 0-edge (in traversal
//! order) then misses color 2.

use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::graph::{EdgeCut, EdgeId, MultiGraph, VertexId};
use crate::structure::{StructureError, TwoFactor};

/// A path given by its vertex sequence; `edges[i]` joins `vertices[i]` and
/// `vertices[i + 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Path {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn start(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn end(&self) -> VertexId {
        *self.vertices.last().expect("paths have at least one vertex")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring4 {
    /// Color of every edge, indexed by edge id.
    pub colors: Vec<u8>,
    /// `z[2i]` and `z[2i + 1]` are the ends of `paths[i]`.
    pub z: Vec<VertexId>,
    pub paths: Vec<Path>,
    pub factor: TwoFactor,
}

/// Components of the subgraph formed by colors 1 and 2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Color12Components {
    pub paths: Vec<Path>,
    /// Ordered by smallest vertex.
    pub circuits: Vec<Circuit>,
}

pub fn canonical_coloring(g: &MultiGraph, tf: &TwoFactor) -> Result<Coloring4, StructureError> {
    tf.validate(g)?;
    let mut colors = vec![u8::MAX; g.edge_count()];
    for &e in &tf.matching {
        colors[e] = 1;
    }
    let mut missing_two = Vec::new();
    for circuit in &tf.circuits {
        let len = circuit.len();
        let start = if circuit.is_odd() {
            let zero = (0..len).min_by_key(|&i| circuit.edges[i]).expect("circuits are non-empty");
            colors[circuit.edges[zero]] = 0;
            missing_two.push(circuit.vertices[zero]);
            zero + 1
        } else {
            0
        };
        let rest = if circuit.is_odd() { len - 1 } else { len };
        for j in 0..rest {
            colors[circuit.edges[(start + j) % len]] = if j % 2 == 0 { 2 } else { 3 };
        }
    }
    missing_two.sort_unstable();
    let (z, paths) = trace_paths(g, &colors, &missing_two);
    Ok(Coloring4 { colors, z, paths, factor: tf.clone() })
}

/// Follows the color-1/2 path from each unused end, smallest first.
fn trace_paths(g: &MultiGraph, colors: &[u8], ends: &[VertexId]) -> (Vec<VertexId>, Vec<Path>) {
    let mut used = vec![false; g.vertex_count()];
    let mut z = Vec::new();
    let mut paths = Vec::new();
    for &start in ends {
        if used[start] {
            continue;
        }
        let path = walk_12(g, colors, start, None);
        used[path.start()] = true;
        used[path.end()] = true;
        z.extend([path.start(), path.end()]);
        paths.push(path);
    }
    (z, paths)
}

/// Walks from `start` along edges of colors 1 and 2, never reusing the
/// previous edge, until a vertex without a continuation or `start` again.
fn walk_12(g: &MultiGraph, colors: &[u8], start: VertexId, first: Option<EdgeId>) -> Path {
    let mut vertices = vec![start];
    let mut edges: Vec<EdgeId> = Vec::new();
    let mut v = start;
    let mut next = first.or_else(|| g.incident(v).iter().copied().find(|&e| colors[e] == 1 || colors[e] == 2));
    while let Some(e) = next {
        edges.push(e);
        v = g.opposite(e, v);
        if v == start {
            break;
        }
        vertices.push(v);
        let want = if colors[e] == 1 { 2 } else { 1 };
        next = g.incident(v).iter().copied().find(|&f| f != e && colors[f] == want);
    }
    Path { vertices, edges }
}

impl Coloring4 {
    pub fn t(&self) -> usize {
        self.paths.len()
    }

    pub fn color(&self, e: EdgeId) -> u8 {
        self.colors[e]
    }

    /// `c_0..c_3` over the given edges.
    pub fn profile(&self, edges: &[EdgeId]) -> [usize; 4] {
        let mut counts = [0; 4];
        for &e in edges {
            counts[self.colors[e] as usize] += 1;
        }
        counts
    }

    /// Rechecks every invariant of a canonical coloring against `g`.
    pub fn validate(&self, g: &MultiGraph) -> Result<(), String> {
        let tf = &self.factor;
        if self.colors.len() != g.edge_count() {
            return Err("coloring does not cover the edge set".into());
        }
        if let Some(&e) = tf.matching.iter().find(|&&e| self.colors[e] != 1) {
            return Err(format!("matching edge {e} is not colored 1"));
        }
        for circuit in &tf.circuits {
            let zeros = circuit.edges.iter().filter(|&&e| self.colors[e] == 0).count();
            if zeros != usize::from(circuit.is_odd()) {
                return Err(format!("circuit through {} has {zeros} edges of color 0", circuit.vertices[0]));
            }
            for (i, &e) in circuit.edges.iter().enumerate() {
                let f = circuit.edges[(i + 1) % circuit.len()];
                let (a, b) = (self.colors[e], self.colors[f]);
                if !matches!(a, 0 | 2 | 3) || (a != 0 && a == b) {
                    return Err(format!("edges {e} and {f} break the 2/3 alternation"));
                }
            }
        }
        let missing: Vec<VertexId> = g
            .vertices()
            .filter(|&v| g.incident(v).iter().all(|&e| self.colors[e] != 2))
            .collect();
        let mut z = self.z.clone();
        z.sort_unstable();
        if z != missing || self.z.len() != tf.odd_count {
            return Err("z-vertices are not exactly the vertices missing color 2".into());
        }
        for (i, p) in self.paths.iter().enumerate() {
            if p.len() % 2 == 0 {
                return Err(format!("path {i} has even length"));
            }
            if (p.start(), p.end()) != (self.z[2 * i], self.z[2 * i + 1]) {
                return Err(format!("path {i} does not join z{} and z{}", 2 * i + 1, 2 * i + 2));
            }
            for (j, &e) in p.edges.iter().enumerate() {
                let want = if j % 2 == 0 { 1 } else { 2 };
                let (u, v) = g.endpoints(e);
                let (a, b) = (p.vertices[j], p.vertices[j + 1]);
                if self.colors[e] != want || !((u, v) == (a, b) || (u, v) == (b, a)) {
                    return Err(format!("path {i} is not a 1/2-alternating path at edge {e}"));
                }
            }
        }
        Ok(())
    }
}

/// Splits the color-1/2 subgraph into the paths of the coloring and its
/// remaining circuits.
pub fn color12_components(g: &MultiGraph, c: &Coloring4) -> Color12Components {
    let mut on_path = vec![false; g.edge_count()];
    for p in &c.paths {
        for &e in &p.edges {
            on_path[e] = true;
        }
    }
    let mut seen = on_path;
    let mut circuits = Vec::new();
    for v in g.vertices() {
        for &e in g.incident(v) {
            if seen[e] || c.colors[e] != 1 {
                continue;
            }
            let walk = walk_12(g, &c.colors, v, Some(e));
            for &f in &walk.edges {
                seen[f] = true;
            }
            circuits.push(Circuit::from_edges(g, &walk.edges).expect("color-1/2 components off the paths are circuits"));
        }
    }
    circuits.sort_by_key(|c| c.vertices[0]);
    Color12Components { paths: c.paths.clone(), circuits }
}

/// Attaches the color profile `c_0..c_3` to a cut.
pub fn cut_color_profile(c: &Coloring4, cut: &EdgeCut) -> [usize; 4] {
    c.profile(&cut.edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::graph::{edge_cut, VertexSet};
    use crate::structure::{compute_oddness, enumerate_two_factors};

    #[test]
    fn even_factor_has_no_paths() {
        let g = corpus::k33();
        for tf in enumerate_two_factors(&g).unwrap() {
            let c = canonical_coloring(&g, &tf).unwrap();
            c.validate(&g).unwrap();
            assert!(c.z.is_empty() && c.paths.is_empty());
            assert!(!c.colors.contains(&0));
            let h = color12_components(&g, &c);
            assert!(h.paths.is_empty());
            assert_eq!(h.circuits.iter().map(Circuit::len).sum::<usize>(), g.vertex_count());
        }
    }

    #[test]
    fn petersen_has_one_path() {
        let g = corpus::petersen();
        let tf = compute_oddness(&g).unwrap().witness;
        let c = canonical_coloring(&g, &tf).unwrap();
        c.validate(&g).unwrap();
        assert_eq!(c.colors.iter().filter(|&&x| x == 0).count(), 2);
        assert_eq!(c.z.len(), 2);
        assert_eq!(c.paths.len(), 1);
        let h = color12_components(&g, &c);
        let covered: usize = h.paths.iter().map(Path::len).sum::<usize>() + h.circuits.iter().map(Circuit::len).sum::<usize>();
        let in_h = c.colors.iter().filter(|&&x| x == 1 || x == 2).count();
        assert_eq!(covered, in_h);
        assert!(h.circuits.iter().all(|c| !c.is_odd()));
    }

    #[test]
    fn four_odd_circuits_give_two_paths() {
        let g = corpus::oddness4_28();
        let tf = compute_oddness(&g).unwrap().witness;
        assert_eq!(tf.odd_count, 4);
        let c = canonical_coloring(&g, &tf).unwrap();
        c.validate(&g).unwrap();
        assert_eq!(c.z.len(), 4);
        assert_eq!(c.paths.len(), 2);
        assert_eq!((c.paths[1].start(), c.paths[1].end()), (c.z[2], c.z[3]));
    }

    #[test]
    fn vertex_profiles() {
        let g = corpus::petersen();
        let c = canonical_coloring(&g, &compute_oddness(&g).unwrap().witness).unwrap();
        assert_eq!(cut_color_profile(&c, &edge_cut(&g, &VertexSet::empty()).unwrap()), [0; 4]);
        for v in g.vertices().filter(|v| !c.z.contains(v)) {
            let cut = edge_cut(&g, &VertexSet::new(&g, [v]).unwrap()).unwrap();
            let p = cut_color_profile(&c, &cut);
            assert_eq!(p[1], 1);
            // The head of a 0-edge keeps color 2 but loses 3.
            if p[0] == 1 {
                assert_eq!(p, [1, 1, 1, 0], "vertex {v}");
            } else {
                assert_eq!(p, [0, 1, 1, 1], "vertex {v}");
            }
        }
        for &z in &c.z {
            let cut = edge_cut(&g, &VertexSet::new(&g, [z]).unwrap()).unwrap();
            assert_eq!(cut_color_profile(&c, &cut), [1, 1, 0, 1]);
        }
    }

    #[test]
    fn every_factor_of_small_graphs() {
        for g in corpus::small_bridgeless_cubic().iter().filter(|g| g.vertex_count() <= 12) {
            for tf in enumerate_two_factors(g).unwrap() {
                let c = canonical_coloring(g, &tf).unwrap();
                c.validate(g).unwrap();
                let h = color12_components(g, &c);
                assert!(h.circuits.iter().all(|c| !c.is_odd()));
                let covered: usize = h.paths.iter().map(Path::len).sum::<usize>() + h.circuits.iter().map(Circuit::len).sum::<usize>();
                assert_eq!(covered, c.colors.iter().filter(|&&x| x == 1 || x == 2).count());
            }
        }
    }
}
