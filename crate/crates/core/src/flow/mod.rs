//! Integer k-flows: storage, verification, arithmetic and certificates.

mod augmented;
mod solver;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::graph::{EdgeId, MultiGraph, VertexId};

pub use augmented::{
    build_augmented, canonical_4flow, switch_path, AddedPair, AugmentedGraph, CircuitOrientations,
};
pub use solver::{mod_to_integer_flow, solve_nowhere_zero_flow, solve_nowhere_zero_flow_within, Solution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("flow has {found} edges but the graph has {expected}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("edge {edge}: arc {tail}->{head} does not match its endpoints")]
    BadArc { edge: EdgeId, tail: VertexId, head: VertexId },
    #[error("edge {edge}: value {value} outside 0..{k}")]
    ValueOutOfRange { edge: EdgeId, value: i64, k: u32 },
    #[error("modulus {0} is too small")]
    BadModulus(u32),
    #[error("flows have different moduli ({0} and {1})")]
    ModulusMismatch(u32, u32),
    #[error("not a nowhere-zero modular flow: no rerouting path from vertex {0}")]
    NoReroutingPath(VertexId),
    #[error("the 2-circuit of path {0} must orient f' as the path circuit does")]
    InconsistentOrientation(usize),
    #[error("{0} orientation choices given for {1} circuits")]
    OrientationCount(usize, usize),
    #[error("path index {index} out of range (t = {t})")]
    PathOutOfRange { index: usize, t: usize },
    #[error("graph has a bridge (edge {0})")]
    Bridge(EdgeId),
    #[error("conservation fails at {} vertices", .0.len())]
    NotConserved(Vec<Imbalance>),
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}

/// Net outflow at a vertex where conservation fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Imbalance {
    pub vertex: VertexId,
    pub excess: i64,
}

/// An orientation of every edge with a value in `0..k`.
///
/// Negative amounts are never stored; they are expressed by reversing the
/// arc, so two flows are equal iff they are the same function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Flow {
    pub k: u32,
    /// `(tail, head)` per edge id.
    pub arcs: Vec<(VertexId, VertexId)>,
    pub values: Vec<u32>,
}

impl Flow {
    /// The zero flow, oriented along the stored endpoint order.
    pub fn zero(g: &MultiGraph, k: u32) -> Flow {
        Flow { k, arcs: g.edges().map(|(_, u, v)| (u, v)).collect(), values: vec![0; g.edge_count()] }
    }

    /// Builds a flow from amounts relative to the stored endpoint order;
    /// negative amounts reverse the edge.
    pub fn from_signed(g: &MultiGraph, k: u32, amounts: &[i64]) -> Result<Flow, FlowError> {
        if amounts.len() != g.edge_count() {
            return Err(FlowError::DomainMismatch { expected: g.edge_count(), found: amounts.len() });
        }
        let mut flow = Flow::zero(g, k);
        for (e, &x) in amounts.iter().enumerate() {
            if x.unsigned_abs() >= u64::from(k) {
                return Err(FlowError::ValueOutOfRange { edge: e, value: x, k });
            }
            if x < 0 {
                let (u, v) = flow.arcs[e];
                flow.arcs[e] = (v, u);
            }
            flow.values[e] = x.unsigned_abs() as u32;
        }
        Ok(flow)
    }

    /// Amounts relative to the stored endpoint order of `g`.
    pub fn signed(&self, g: &MultiGraph) -> Vec<i64> {
        g.edges()
            .map(|(e, u, _)| {
                let x = i64::from(self.values[e]);
                if self.arcs[e].0 == u { x } else { -x }
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.values.len()
    }

    pub fn support(&self) -> Vec<EdgeId> {
        (0..self.values.len()).filter(|&e| self.values[e] != 0).collect()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|&&(t, _)| t == v).count()
    }

    /// Out-degree of every vertex of a graph with `n` vertices.
    pub fn out_degrees(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for &(t, _) in &self.arcs {
            out[t] += 1;
        }
        out
    }

    /// Reverses every edge carrying a non-zero value.
    pub fn negated(&self) -> Flow {
        let arcs = self.arcs.iter().zip(&self.values).map(|(&(t, h), &x)| if x == 0 { (t, h) } else { (h, t) });
        Flow { k: self.k, arcs: arcs.collect(), values: self.values.clone() }
    }

    /// Net outflow at every vertex.
    pub fn excess(&self, n: usize) -> Vec<i64> {
        let mut delta = vec![0i64; n];
        for (&(t, h), &x) in self.arcs.iter().zip(&self.values) {
            delta[t] += i64::from(x);
            delta[h] -= i64::from(x);
        }
        delta
    }

    pub fn to_certificate(&self) -> FlowCertificate {
        FlowCertificate {
            k: self.k,
            edges: self
                .arcs
                .iter()
                .zip(&self.values)
                .enumerate()
                .map(|(id, (&(tail, head), &value))| CertificateEdge { id, tail, head, value })
                .collect(),
        }
    }
}

/// Checks shape and conservation at every vertex.
pub fn verify_flow(g: &MultiGraph, f: &Flow) -> Result<(), FlowError> {
    check_shape(g, f)?;
    let violations: Vec<Imbalance> = f
        .excess(g.vertex_count())
        .into_iter()
        .enumerate()
        .filter(|&(_, x)| x != 0)
        .map(|(vertex, excess)| Imbalance { vertex, excess })
        .collect();
    if violations.is_empty() {
        Ok(())
    } else {
        Err(FlowError::NotConserved(violations))
    }
}

fn check_shape(g: &MultiGraph, f: &Flow) -> Result<(), FlowError> {
    if f.k < 2 {
        return Err(FlowError::BadModulus(f.k));
    }
    if f.arcs.len() != g.edge_count() || f.values.len() != g.edge_count() {
        return Err(FlowError::DomainMismatch { expected: g.edge_count(), found: f.arcs.len().min(f.values.len()) });
    }
    for (e, u, v) in g.edges() {
        let (tail, head) = f.arcs[e];
        if (tail, head) != (u, v) && (tail, head) != (v, u) {
            return Err(FlowError::BadArc { edge: e, tail, head });
        }
        if f.values[e] >= f.k {
            return Err(FlowError::ValueOutOfRange { edge: e, value: i64::from(f.values[e]), k: f.k });
        }
    }
    Ok(())
}

pub fn is_nowhere_zero(f: &Flow) -> bool {
    f.values.iter().all(|&x| x != 0)
}

/// Edge-wise sum of two flows on `g` with the same modulus.
pub fn sum_flows(g: &MultiGraph, a: &Flow, b: &Flow) -> Result<Flow, FlowError> {
    if a.k != b.k {
        return Err(FlowError::ModulusMismatch(a.k, b.k));
    }
    check_shape(g, a)?;
    check_shape(g, b)?;
    let total: Vec<i64> = a.signed(g).iter().zip(b.signed(g)).map(|(x, y)| x + y).collect();
    Flow::from_signed(g, a.k, &total)
}

/// The JSON form `{k, edges: [{id, tail, head, value}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowCertificate {
    pub k: u32,
    pub edges: Vec<CertificateEdge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEdge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
    pub value: u32,
}

impl FlowCertificate {
    /// Reads the certificate as a flow on `g`. Every edge id of `g` must
    /// appear exactly once with matching endpoints.
    pub fn to_flow(&self, g: &MultiGraph) -> Result<Flow, FlowError> {
        if self.edges.len() != g.edge_count() {
            return Err(FlowError::DomainMismatch { expected: g.edge_count(), found: self.edges.len() });
        }
        let mut flow = Flow::zero(g, self.k);
        let mut seen = vec![false; g.edge_count()];
        for edge in &self.edges {
            let bad = FlowError::BadArc { edge: edge.id, tail: edge.tail, head: edge.head };
            if edge.id >= g.edge_count() || std::mem::replace(&mut seen[edge.id], true) {
                return Err(bad);
            }
            let (u, v) = g.endpoints(edge.id);
            if (edge.tail, edge.head) != (u, v) && (edge.tail, edge.head) != (v, u) {
                return Err(bad);
            }
            flow.arcs[edge.id] = (edge.tail, edge.head);
            flow.values[edge.id] = edge.value;
        }
        check_shape(g, &flow)?;
        Ok(flow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn square() -> MultiGraph {
        MultiGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn circuit_flow_of_two_is_valid() {
        let g = square();
        let f = Flow::from_signed(&g, 4, &[2, 2, 2, 2]).unwrap();
        verify_flow(&g, &f).unwrap();
        assert!(is_nowhere_zero(&f));
    }

    #[test]
    fn reversed_edge_breaks_conservation_at_both_ends() {
        let g = square();
        let mut f = Flow::from_signed(&g, 4, &[2, 2, 2, 2]).unwrap();
        f.arcs[1] = (2, 1);
        match verify_flow(&g, &f) {
            Err(FlowError::NotConserved(v)) => {
                assert_eq!(v, vec![Imbalance { vertex: 1, excess: -4 }, Imbalance { vertex: 2, excess: 4 }]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_flow_is_a_flow_but_not_nowhere_zero() {
        let g = square();
        let f = Flow::zero(&g, 5);
        verify_flow(&g, &f).unwrap();
        assert!(!is_nowhere_zero(&f));
        assert_eq!(sum_flows(&g, &f, &Flow::from_signed(&g, 5, &[1, 1, 1, 1]).unwrap()).unwrap().values, vec![1; 4]);
    }

    #[test]
    fn overlapping_circuits_add_on_shared_edge() {
        // Two triangles 0-1-2 and 0-2-3 sharing edge 0-2 in the same direction.
        let g = MultiGraph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 0)]).unwrap();
        let a = Flow::from_signed(&g, 4, &[2, 2, -2, 0, 0]).unwrap();
        let b = Flow::from_signed(&g, 4, &[0, 0, -1, -1, -1]).unwrap();
        let s = sum_flows(&g, &a, &b).unwrap();
        verify_flow(&g, &s).unwrap();
        assert_eq!(s.values, vec![2, 2, 3, 1, 1]);
        assert_eq!(s.arcs[2], (2, 0));
        assert!(matches!(sum_flows(&g, &s, &a), Err(FlowError::ValueOutOfRange { edge: 0, value: 4, k: 4 })));
    }

    #[test]
    fn certificate_round_trip_and_mismatch() {
        let g = square();
        let f = Flow::from_signed(&g, 3, &[1, 1, -2, 1]).unwrap();
        let cert = f.to_certificate();
        let text = serde_json::to_string(&cert).unwrap();
        assert!(text.starts_with(r#"{"k":3,"edges":[{"id":0,"tail":0,"head":1,"value":1}"#));
        let back: FlowCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_flow(&g).unwrap(), f);
        let other = MultiGraph::from_edges(4, [(0, 2), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(matches!(back.to_flow(&other), Err(FlowError::BadArc { edge: 0, .. })));
    }

    fn signed_vec(m: usize, k: i64) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-(k - 1)..k, m)
    }

    proptest! {
        #[test]
        fn summation_commutes_and_associates(a in signed_vec(4, 3), b in signed_vec(4, 3), c in signed_vec(4, 3)) {
            let g = square();
            let f = |x: &Vec<i64>| Flow::from_signed(&g, 10, x).unwrap();
            let (fa, fb, fc) = (f(&a), f(&b), f(&c));
            prop_assert_eq!(sum_flows(&g, &fa, &fb).unwrap(), sum_flows(&g, &fb, &fa).unwrap());
            let left = sum_flows(&g, &sum_flows(&g, &fa, &fb).unwrap(), &fc).unwrap();
            let right = sum_flows(&g, &fa, &sum_flows(&g, &fb, &fc).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn negation_is_reversal(a in signed_vec(4, 5)) {
            let g = square();
            let f = Flow::from_signed(&g, 5, &a).unwrap();
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            prop_assert_eq!(f.negated().signed(&g), neg);
        }
    }
}
