use serde::{Deserialize, Serialize};

use crate::graph::{EdgeId, MultiGraph, VertexId};

/// A closed trail visiting each of its vertices once.
///
/// `edges[i]` joins `vertices[i]` to `vertices[(i + 1) % len]`, so the
/// order of the lists is also a direction of traversal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Circuit {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

impl Circuit {
    /// Builds the canonical traversal of the circuit formed by `edges`:
    /// start at the smallest vertex and leave it along the edge whose
    /// (far end, edge id) is smallest.
    ///
    /// Returns `None` unless `edges` form a single circuit.
    pub fn from_edges(g: &MultiGraph, edges: &[EdgeId]) -> Option<Circuit> {
        if edges.is_empty() {
            return None;
        }
        let mut at: std::collections::BTreeMap<VertexId, Vec<EdgeId>> = Default::default();
        for &e in edges {
            let (u, v) = g.endpoints(e);
            at.entry(u).or_default().push(e);
            at.entry(v).or_default().push(e);
        }
        if at.values().any(|es| es.len() != 2) || at.len() != edges.len() {
            return None;
        }
        let (&start, first_pair) = at.iter().next()?;
        let first = *first_pair
            .iter()
            .min_by_key(|&&e| (g.opposite(e, start), e))
            .expect("two incident edges");
        let mut vertices = vec![start];
        let mut order = vec![first];
        let mut v = g.opposite(first, start);
        let mut prev = first;
        while v != start {
            vertices.push(v);
            let pair = &at[&v];
            let next = if pair[0] == prev { pair[1] } else { pair[0] };
            order.push(next);
            v = g.opposite(next, v);
            prev = next;
        }
        (order.len() == edges.len()).then_some(Circuit { vertices, edges: order })
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.edges.len() % 2 == 1
    }

    /// `(edge, tail, head)` in traversal order.
    pub fn arcs(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        let len = self.vertices.len();
        self.edges
            .iter()
            .enumerate()
            .map(move |(i, &e)| (e, self.vertices[i], self.vertices[(i + 1) % len]))
    }

    pub fn reversed(&self) -> Circuit {
        let mut vertices = self.vertices.clone();
        vertices[1..].reverse();
        let mut edges = self.edges.clone();
        edges.reverse();
        Circuit { vertices, edges }
    }

    /// +1 for every edge traversed along its stored orientation, -1 otherwise.
    pub fn signed_arcs<'a>(&'a self, g: &'a MultiGraph) -> impl Iterator<Item = (EdgeId, i64)> + 'a {
        self.arcs().map(move |(e, tail, _)| (e, if g.endpoints(e).0 == tail { 1 } else { -1 }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_traversal_and_reversal() {
        let g = MultiGraph::from_edges(4, [(2, 3), (1, 2), (3, 0), (0, 1)]).unwrap();
        let c = Circuit::from_edges(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(c.vertices, vec![0, 1, 2, 3]);
        assert_eq!(c.edges, vec![3, 1, 0, 2]);
        let r = c.reversed();
        assert_eq!(r.vertices, vec![0, 3, 2, 1]);
        assert_eq!(r.edges, vec![2, 0, 1, 3]);
        for (e, t, h) in r.arcs() {
            let (u, v) = g.endpoints(e);
            assert!((u, v) == (t, h) || (u, v) == (h, t));
        }
    }

    #[test]
    fn digon_uses_smaller_edge_first() {
        let g = MultiGraph::from_edges(2, [(1, 0), (0, 1)]).unwrap();
        let c = Circuit::from_edges(&g, &[1, 0]).unwrap();
        assert_eq!(c.edges, vec![0, 1]);
        let signs: Vec<_> = c.signed_arcs(&g).collect();
        assert_eq!(signs, vec![(0, -1), (1, -1)]);
    }

    #[test]
    fn rejects_non_circuits() {
        let g = MultiGraph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(Circuit::from_edges(&g, &[0, 1, 2, 3, 4, 5]).is_none());
        assert!(Circuit::from_edges(&g, &[0, 1]).is_none());
    }
}
