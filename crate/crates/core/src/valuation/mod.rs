//! Flow partitions and balanced valuations.
//!
//! A valuation `f` is balanced when `|f(X)| <= |∂X|` for every vertex set
//! `X`. Values are exact rationals sharing one denominator.

mod balance;
mod reverse;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{is_nowhere_zero, verify_flow, AugmentedGraph, Flow, FlowError};
use crate::graph::{EdgeId, MultiGraph, VertexId, VertexSet};

pub use balance::{check_balanced_bruteforce, check_balanced_mincut, BruteForceChecker, MAX_BRUTE_FORCE_VERTICES};
pub use reverse::valuation_to_flow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("valuation has {found} values but the graph has {expected} vertices")]
    DomainMismatch { expected: usize, found: usize },
    #[error("denominator must be positive, got {0}")]
    BadDenominator(i64),
    #[error("brute force needs at most {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
    #[error("vertex {vertex}: 2d+ - d = {value} in the 4-flow, expected +-1")]
    NotUnitImbalance { vertex: VertexId, value: i64 },
    #[error("vertex {0}: value is not of the form k/(k-2) (2d+ - d)")]
    NotTheoremForm(VertexId),
    #[error("valuation is not balanced")]
    Unbalanced(Box<Violator>),
    #[error("no orientation or circulation exists although the valuation is balanced")]
    Infeasible,
    #[error("flow is not nowhere-zero (edge {0} carries 0)")]
    ZeroEdge(EdgeId),
    #[error(transparent)]
    Flow(#[from] FlowError),
}

/// An exact rational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub numerator: i64,
    pub denominator: i64,
}

/// `values[v] / denominator` at every vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Valuation {
    pub denominator: i64,
    #[serde(rename = "values")]
    pub numerators: Vec<i64>,
}

impl Valuation {
    /// `-5/3` on `white`, `+5/3` elsewhere.
    pub fn five_thirds(n: usize, white: &VertexSet) -> Valuation {
        let mut numerators = vec![5; n];
        for v in white.iter() {
            numerators[v] = -5;
        }
        Valuation { denominator: 3, numerators }
    }

    pub fn value(&self, v: VertexId) -> Ratio {
        Ratio { numerator: self.numerators[v], denominator: self.denominator }
    }

    pub fn sum(&self, set: &VertexSet) -> Ratio {
        Ratio { numerator: set.iter().map(|v| self.numerators[v]).sum(), denominator: self.denominator }
    }

    /// Same function, possibly written with different denominators.
    pub fn equivalent(&self, other: &Valuation) -> bool {
        self.numerators.len() == other.numerators.len()
            && self
                .numerators
                .iter()
                .zip(&other.numerators)
                .all(|(a, b)| a * other.denominator == b * self.denominator)
    }

    pub(crate) fn check(&self, g: &MultiGraph) -> Result<(), ValuationError> {
        if self.denominator <= 0 {
            return Err(ValuationError::BadDenominator(self.denominator));
        }
        if self.numerators.len() != g.vertex_count() {
            return Err(ValuationError::DomainMismatch { expected: g.vertex_count(), found: self.numerators.len() });
        }
        Ok(())
    }
}

/// A set `S` with `|f(S)| > |∂S|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violator {
    pub side: VertexSet,
    /// `|f(S)| - |∂S|`, strictly positive.
    pub margin: Ratio,
    pub cut_size: usize,
    /// Number of positive minus number of negative values in `S`, in
    /// absolute value.
    pub sign_difference: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BalanceReport {
    pub balanced: bool,
    /// The violator of largest margin; ties go to the smaller set, then to
    /// the set containing the smallest vertex where they differ.
    pub violator: Option<Violator>,
}

impl Violator {
    pub(crate) fn describe(g: &MultiGraph, f: &Valuation, side: VertexSet) -> Violator {
        let mask = side.mask(g.vertex_count());
        let cut_size = crate::graph::cut_edges(g, &mask).len();
        let sum: i64 = side.iter().map(|v| f.numerators[v]).sum();
        let positive = side.iter().filter(|&v| f.numerators[v] > 0).count();
        let negative = side.iter().filter(|&v| f.numerators[v] < 0).count();
        Violator {
            margin: Ratio { numerator: sum.abs() - f.denominator * cut_size as i64, denominator: f.denominator },
            cut_size,
            sign_difference: positive.abs_diff(negative),
            side,
        }
    }
}

/// The bipartition of `V(G)` by the sign of `2(2d+ - d)` in a canonical
/// 4-flow on `M_G`: `white` (value -2) and `black` (value +2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowPartition {
    pub white: VertexSet,
    pub black: VertexSet,
    /// `w(v) = 2(2d+ - d)` on `M_G`.
    pub w: Vec<i64>,
    /// The 4-flow on `M_G` inducing the partition.
    pub flow: Flow,
}

impl FlowPartition {
    pub fn is_white(&self, v: VertexId) -> bool {
        self.w[v] < 0
    }
}

pub fn flow_partition(ag: &AugmentedGraph, f4: &Flow) -> Result<FlowPartition, ValuationError> {
    let mg = &ag.mg;
    verify_flow(mg, f4)?;
    let out = f4.out_degrees(mg.vertex_count());
    let mut w = Vec::with_capacity(mg.vertex_count());
    for v in mg.vertices() {
        let value = 2 * out[v] as i64 - mg.degree(v) as i64;
        if value.abs() != 1 {
            return Err(ValuationError::NotUnitImbalance { vertex: v, value });
        }
        w.push(2 * value);
    }
    let white = VertexSet::from_mask(&w.iter().map(|&x| x < 0).collect::<Vec<_>>());
    let black = white.complement(mg);
    Ok(FlowPartition { white, black, w, flow: f4.clone() })
}

/// `-5/3` on white vertices, `+5/3` on black ones.
pub fn to_five_thirds(p: &FlowPartition) -> Valuation {
    Valuation::five_thirds(p.w.len(), &p.white)
}

/// `f(v) = k/(k-2) (2d+(v) - d(v))` for a nowhere-zero k-flow, `k >= 3`.
pub fn flow_to_valuation(g: &MultiGraph, f: &Flow) -> Result<Valuation, ValuationError> {
    verify_flow(g, f)?;
    if f.k < 3 {
        return Err(FlowError::BadModulus(f.k).into());
    }
    if let Some(e) = f.values.iter().position(|&x| x == 0) {
        return Err(ValuationError::ZeroEdge(e));
    }
    debug_assert!(is_nowhere_zero(f));
    let k = i64::from(f.k);
    let out = f.out_degrees(g.vertex_count());
    let numerators = g.vertices().map(|v| k * (2 * out[v] as i64 - g.degree(v) as i64)).collect();
    Ok(Valuation { denominator: k - 2, numerators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::canonical_coloring;
    use crate::corpus;
    use crate::flow::{build_augmented, canonical_4flow, solve_nowhere_zero_flow, switch_path};
    use crate::structure::{compute_oddness, enumerate_two_factors};

    #[test]
    fn valuation_json_shape() {
        let f = Valuation { denominator: 3, numerators: vec![5, -5] };
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"denominator":3,"values":[5,-5]}"#);
        assert!(f.equivalent(&Valuation { denominator: 6, numerators: vec![10, -10] }));
    }

    #[test]
    fn flow_formula_on_cubic_vertices() {
        let g = corpus::petersen();
        let f = solve_nowhere_zero_flow(&g, 5).unwrap().flow().unwrap();
        let val = flow_to_valuation(&g, &f).unwrap();
        assert_eq!(val.denominator, 3);
        for v in g.vertices() {
            let expected = if f.out_degree(v) == 2 { 5 } else { -5 };
            assert_eq!(val.numerators[v], expected);
        }
        let k4 = corpus::k4();
        let f4 = solve_nowhere_zero_flow(&k4, 4).unwrap().flow().unwrap();
        let val4 = flow_to_valuation(&k4, &f4).unwrap();
        for v in k4.vertices() {
            let r = val4.value(v);
            let expected = if f4.out_degree(v) == 1 { -2 } else { 2 };
            assert_eq!(r.numerator, expected * r.denominator);
        }
    }

    #[test]
    fn partition_basics_and_lemmas() {
        for g in [corpus::petersen(), corpus::oddness4_28(), corpus::blanusa_first()] {
            let c = canonical_coloring(&g, &compute_oddness(&g).unwrap().witness).unwrap();
            let ag = build_augmented(&g, &c);
            let f = canonical_4flow(&ag, &ag.default_orientations()).unwrap();
            let p = flow_partition(&ag, &f).unwrap();
            assert!(p.w.iter().all(|x| x.abs() == 2));
            assert_eq!(p.white.len(), p.black.len());
            for (e, u, v) in g.edges() {
                if matches!(c.colors[e], 1 | 2) {
                    assert_ne!(p.is_white(u), p.is_white(v), "edge {e}");
                }
            }
            let w = to_five_thirds(&p);
            assert_eq!(w.sum(&VertexSet::all(&g)).numerator, 0);
            for i in 0..ag.t() {
                let q = flow_partition(&ag, &switch_path(&ag, &f, i).unwrap()).unwrap();
                for v in g.vertices() {
                    let on_path = c.paths[i].vertices.contains(&v);
                    assert_eq!(p.is_white(v) != q.is_white(v), on_path, "vertex {v}, path {i}");
                }
            }
        }
    }

    #[test]
    fn unit_imbalance_is_required() {
        let g = corpus::k4();
        let tf = enumerate_two_factors(&g).unwrap().next().unwrap();
        let ag = build_augmented(&g, &canonical_coloring(&g, &tf).unwrap());
        let f = crate::flow::Flow::zero(&ag.mg, 4);
        assert!(matches!(flow_partition(&ag, &f), Err(ValuationError::NotUnitImbalance { .. })));
    }
}
