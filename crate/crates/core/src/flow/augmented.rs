//! The augmented multigraph `M_G` and its circuit-sum nowhere-zero 4-flow.
//!
//! For each path `P_i` of the coloring, two parallel edges are added
//! between its ends: `f_i` (color 4) with id `m + 2i` and `f'_i` (color 2)
//! with id `m + 2i + 1`. Path and circuit indices are 0-based.

use serde::{Deserialize, Serialize};

use super::{Flow, FlowError};
use crate::circuit::Circuit;
use crate::coloring::{color12_components, Coloring4};
use crate::graph::{EdgeId, MultiGraph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AddedPair {
    pub f: EdgeId,
    pub f_prime: EdgeId,
    pub ends: (VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedGraph {
    pub base: MultiGraph,
    pub mg: MultiGraph,
    pub coloring: Coloring4,
    pub pairs: Vec<AddedPair>,
    /// `C_i`: the odd circuits of the 2-factor, then the even ones.
    pub circuits: Vec<Circuit>,
    /// `C'_i`: `P_i + f'_i` for `i < t`, then the other color-1/2 circuits.
    pub circuits_prime: Vec<Circuit>,
    /// `C''_i = {f_i, f'_i}`.
    pub circuits_double_prime: Vec<Circuit>,
    /// Coloring extended to `M_G`.
    pub colors: Vec<u8>,
}

impl AugmentedGraph {
    pub fn t(&self) -> usize {
        self.pairs.len()
    }

    pub fn default_orientations(&self) -> CircuitOrientations {
        CircuitOrientations {
            base: vec![false; self.circuits.len()],
            prime: vec![false; self.circuits_prime.len()],
            double_prime: None,
        }
    }

    /// Sign of `e` in circuit `c` traversed as given.
    fn sign_in(&self, c: &Circuit, e: EdgeId) -> i64 {
        c.signed_arcs(&self.mg).find(|&(f, _)| f == e).map(|(_, s)| s).expect("edge lies on the circuit")
    }
}

/// Direction choice per circuit; `true` reverses the canonical traversal.
/// `double_prime` may be omitted, in which case it is forced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitOrientations {
    pub base: Vec<bool>,
    pub prime: Vec<bool>,
    pub double_prime: Option<Vec<bool>>,
}

pub fn build_augmented(g: &MultiGraph, c: &Coloring4) -> AugmentedGraph {
    let m = g.edge_count();
    let pairs: Vec<AddedPair> = c
        .paths
        .iter()
        .enumerate()
        .map(|(i, p)| AddedPair { f: m + 2 * i, f_prime: m + 2 * i + 1, ends: (p.start(), p.end()) })
        .collect();
    let mg = g
        .with_extra_edges(pairs.iter().flat_map(|p| [p.ends, p.ends]))
        .expect("path ends are distinct vertices of g");
    let mut colors = c.colors.clone();
    colors.extend(pairs.iter().flat_map(|_| [4, 2]));
    let tf = &c.factor;
    let circuits = tf.odd_circuits().chain(tf.even_circuits()).cloned().collect();
    let mut circuits_prime: Vec<Circuit> = c
        .paths
        .iter()
        .zip(&pairs)
        .map(|(p, pair)| {
            let mut edges = p.edges.clone();
            edges.push(pair.f_prime);
            Circuit::from_edges(&mg, &edges).expect("a path plus an edge joining its ends is a circuit")
        })
        .collect();
    circuits_prime.extend(color12_components(g, c).circuits);
    let circuits_double_prime = pairs
        .iter()
        .map(|p| Circuit::from_edges(&mg, &[p.f, p.f_prime]).expect("parallel pair is a 2-circuit"))
        .collect();
    AugmentedGraph { base: g.clone(), mg, coloring: c.clone(), pairs, circuits, circuits_prime, circuits_double_prime, colors }
}

/// Sum of value 2 on every `C_i`, value 1 on every `C'_i` and value 1 on
/// every `C''_i`, each along its chosen direction.
pub fn canonical_4flow(ag: &AugmentedGraph, orient: &CircuitOrientations) -> Result<Flow, FlowError> {
    let counts = [
        (orient.base.len(), ag.circuits.len()),
        (orient.prime.len(), ag.circuits_prime.len()),
        (orient.double_prime.as_ref().map_or(ag.t(), Vec::len), ag.t()),
    ];
    if let Some(&(given, want)) = counts.iter().find(|(given, want)| given != want) {
        return Err(FlowError::OrientationCount(given, want));
    }
    let directed = |c: &Circuit, reverse: bool| if reverse { c.reversed() } else { c.clone() };
    let mut amounts = vec![0i64; ag.mg.edge_count()];
    let mut add = |c: &Circuit, value: i64| {
        for (e, s) in c.signed_arcs(&ag.mg) {
            amounts[e] += value * s;
        }
    };
    for (c, &r) in ag.circuits.iter().zip(&orient.base) {
        add(&directed(c, r), 2);
    }
    let mut primes = Vec::with_capacity(ag.circuits_prime.len());
    for (c, &r) in ag.circuits_prime.iter().zip(&orient.prime) {
        let c = directed(c, r);
        add(&c, 1);
        primes.push(c);
    }
    for (i, (c, pair)) in ag.circuits_double_prime.iter().zip(&ag.pairs).enumerate() {
        let forced = ag.sign_in(c, pair.f_prime) != ag.sign_in(&primes[i], pair.f_prime);
        if orient.double_prime.as_ref().is_some_and(|d| d[i] != forced) {
            return Err(FlowError::InconsistentOrientation(i));
        }
        add(&directed(c, forced), 1);
    }
    Flow::from_signed(&ag.mg, 4, &amounts)
}

/// Reverses `C'_i` and `C''_i` in a canonical 4-flow on `M_G`.
///
/// The current direction of both circuits is read off `f'_i`, which they
/// traverse the same way.
pub fn switch_path(ag: &AugmentedGraph, flow: &Flow, i: usize) -> Result<Flow, FlowError> {
    if i >= ag.t() {
        return Err(FlowError::PathOutOfRange { index: i, t: ag.t() });
    }
    let pair = ag.pairs[i];
    let signed_f_prime = flow.signed(&ag.mg)[pair.f_prime].signum();
    let mut amounts = flow.signed(&ag.mg);
    for c in [&ag.circuits_prime[i], &ag.circuits_double_prime[i]] {
        let c = if ag.sign_in(c, pair.f_prime) == signed_f_prime { c.clone() } else { c.reversed() };
        for (e, s) in c.signed_arcs(&ag.mg) {
            amounts[e] -= 2 * s;
        }
    }
    Flow::from_signed(&ag.mg, flow.k, &amounts)
}
