//! Cyclic edge-connectivity of cubic graphs.
//!
//! An edge cut is cycle-separating when both of its sides induce a
//! subgraph containing a cycle. The search below finds a smallest such cut
//! among those of size below a bound `k`.
//!
//! For a threshold `c`, pick seed sets `A` and `B` of `s = max(c - 1, 1)`
//! connected vertices each. In a cubic graph, a side `T` inducing a forest
//! has `|∂T| >= |T| + 2`, so any cut of size `<= c` separating `A` from `B`
//! is cycle-separating. Conversely a smallest cycle-separating cut can be
//! taken with both sides connected and of at least `c` vertices, so seeds
//! inside the two sides exist, and one of them may be assumed to contain
//! vertex 0. Thresholds are tried in increasing order, making the first cut
//! found a smallest one.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::two_factor::require_cubic;
use super::StructureError;
use crate::budget::Budget;
use crate::graph::{cut_edges, EdgeId, MultiGraph, VertexId, VertexSet};
use crate::maxflow::MaxFlow;

/// A cycle-separating edge cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCut {
    pub side: VertexSet,
    pub edges: Vec<EdgeId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicCheck {
    pub holds: bool,
    /// A smallest cycle-separating cut of size `< k` when `holds` is false.
    pub witness: Option<CyclicCut>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CyclicConnectivity {
    Exact(usize),
    /// No cycle-separating cut below the bound exists. Graphs without two
    /// disjoint cycles always land here.
    AtLeast(usize),
}

/// Is every cycle-separating edge cut of `g` of size at least `k`?
///
/// Graphs without two vertex-disjoint cycles are cyclically
/// `k`-edge-connected for every `k`.
pub fn is_cyclically_k_connected(g: &MultiGraph, k: usize) -> Result<CyclicCheck, StructureError> {
    is_cyclically_k_connected_within(g, k, &mut Budget::unlimited())
}

pub fn is_cyclically_k_connected_within(
    g: &MultiGraph,
    k: usize,
    budget: &mut Budget,
) -> Result<CyclicCheck, StructureError> {
    let witness = smallest_cyclic_cut_below(g, k, budget)?;
    Ok(CyclicCheck { holds: witness.is_none(), witness })
}

/// The exact cyclic edge-connectivity when it is below `bound`.
pub fn cyclic_connectivity(
    g: &MultiGraph,
    bound: usize,
    budget: &mut Budget,
) -> Result<(CyclicConnectivity, Option<CyclicCut>), StructureError> {
    Ok(match smallest_cyclic_cut_below(g, bound, budget)? {
        Some(cut) => (CyclicConnectivity::Exact(cut.edges.len()), Some(cut)),
        None => (CyclicConnectivity::AtLeast(bound), None),
    })
}

fn smallest_cyclic_cut_below(
    g: &MultiGraph,
    k: usize,
    budget: &mut Budget,
) -> Result<Option<CyclicCut>, StructureError> {
    if k < 1 {
        return Err(StructureError::InvalidBound(k));
    }
    require_cubic(g)?;
    if g.components().len() > 1 {
        return Err(StructureError::Disconnected);
    }
    let n = g.vertex_count();
    for c in 1..k {
        let s = (c - 1).max(1);
        if 2 * s > n {
            break;
        }
        let all = connected_sets(g, s, None, budget)?;
        let rooted: Vec<&Vec<VertexId>> = all.iter().filter(|set| set.contains(&0)).collect();
        for a in rooted {
            let mut in_a = vec![false; n];
            for &v in a {
                in_a[v] = true;
            }
            for b in &all {
                if b.iter().any(|&v| in_a[v]) {
                    continue;
                }
                budget.charge(1)?;
                if let Some(side) = separating_cut(g, &in_a, b, c) {
                    let edges = cut_edges(g, &side);
                    return Ok(Some(CyclicCut { side: VertexSet::from_mask(&side), edges }));
                }
            }
        }
    }
    Ok(None)
}

/// Source side of a minimum cut between `a` and `b` if it has at most
/// `limit` edges.
fn separating_cut(g: &MultiGraph, in_a: &[bool], b: &[VertexId], limit: usize) -> Option<Vec<bool>> {
    let n = g.vertex_count();
    let (source, sink) = (n, n + 1);
    let mut net = MaxFlow::new(n + 2);
    let big = 3 * n as i64 + 1;
    for (_, u, v) in g.edges() {
        net.add_edge(u, v, 1);
    }
    for v in g.vertices().filter(|&v| in_a[v]) {
        net.add_arc(source, v, big);
    }
    for &v in b {
        net.add_arc(v, sink, big);
    }
    let flow = net.run_limited(source, sink, limit as i64 + 1);
    if flow > limit as i64 {
        return None;
    }
    let mut side = net.source_side(source);
    side.truncate(n);
    Some(side)
}

/// All connected vertex sets of the given size, as sorted vectors.
pub(crate) fn connected_sets(
    g: &MultiGraph,
    size: usize,
    containing: Option<VertexId>,
    budget: &mut Budget,
) -> Result<Vec<Vec<VertexId>>, StructureError> {
    let mut level: BTreeSet<Vec<VertexId>> = match containing {
        Some(v) => [vec![v]].into_iter().collect(),
        None => g.vertices().map(|v| vec![v]).collect(),
    };
    for _ in 1..size {
        let mut next = BTreeSet::new();
        for set in &level {
            for &v in set {
                for w in g.neighbors(v) {
                    if set.binary_search(&w).is_err() {
                        budget.charge(1)?;
                        let mut grown = set.clone();
                        let at = grown.binary_search(&w).unwrap_err();
                        grown.insert(at, w);
                        next.insert(grown);
                    }
                }
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

/// True if the subgraph induced by `side` contains a cycle.
pub fn induces_cycle(g: &MultiGraph, side: &[bool]) -> bool {
    let vertices = side.iter().filter(|&&b| b).count();
    let inner = g.edges().filter(|&(_, u, v)| side[u] && side[v]).count();
    let removed: Vec<bool> = g.edges().map(|(_, u, v)| !(side[u] && side[v])).collect();
    let components = g
        .components_without(&removed)
        .into_iter()
        .filter(|c| side[c[0]])
        .count();
    // A forest has exactly |V| - #components edges.
    inner + components > vertices
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    /// Exhaustive oracle: the smallest cycle-separating cut over all 2^n sides.
    fn brute_force(g: &MultiGraph) -> Option<usize> {
        let n = g.vertex_count();
        let mut best: Option<usize> = None;
        for mask in 1u64..(1u64 << (n - 1)) {
            let side: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            let other: Vec<bool> = side.iter().map(|b| !b).collect();
            if induces_cycle(g, &side) && induces_cycle(g, &other) {
                let size = cut_edges(g, &side).len();
                best = Some(best.map_or(size, |b| b.min(size)));
            }
        }
        best
    }

    #[test]
    fn petersen_is_cyclically_5_but_not_6_connected() {
        let g = corpus::petersen();
        assert!(is_cyclically_k_connected(&g, 5).unwrap().holds);
        let check = is_cyclically_k_connected(&g, 6).unwrap();
        assert!(!check.holds);
        let cut = check.witness.unwrap();
        assert_eq!(cut.edges.len(), 5);
        let side = cut.side.mask(10);
        assert!(induces_cycle(&g, &side));
        assert!(induces_cycle(&g, &side.iter().map(|b| !b).collect::<Vec<_>>()));
        // Both sides of a 5-cut in the Petersen graph are 5-cycles.
        assert_eq!(cut.side.len(), 5);
    }

    #[test]
    fn k4_is_vacuously_cyclically_connected() {
        let g = corpus::k4();
        for k in 1..10 {
            assert!(is_cyclically_k_connected(&g, k).unwrap().holds);
        }
        assert_eq!(brute_force(&g), None);
    }

    #[test]
    fn invalid_bound() {
        assert_eq!(is_cyclically_k_connected(&corpus::k4(), 0), Err(StructureError::InvalidBound(0)));
    }

    #[test]
    fn agrees_with_exhaustive_enumeration() {
        let mut graphs: Vec<MultiGraph> = corpus::small_bridgeless_cubic()
            .into_iter()
            .filter(|g| g.vertex_count() <= 14)
            .step_by(3)
            .collect();
        graphs.push(corpus::petersen());
        graphs.push(corpus::k33());
        for g in graphs {
            let expected = brute_force(&g);
            let (value, witness) = cyclic_connectivity(&g, 8, &mut Budget::unlimited()).unwrap();
            match expected {
                Some(l) if l < 8 => {
                    assert_eq!(value, CyclicConnectivity::Exact(l), "{g:?}");
                    let cut = witness.unwrap();
                    let side = cut.side.mask(g.vertex_count());
                    assert!(induces_cycle(&g, &side));
                    assert!(induces_cycle(&g, &side.iter().map(|b| !b).collect::<Vec<_>>()));
                    assert_eq!(cut.edges.len(), l);
                }
                _ => assert_eq!(value, CyclicConnectivity::AtLeast(8)),
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = corpus::flower_snark(7);
        let mut budget = Budget::limited(10);
        assert!(matches!(
            is_cyclically_k_connected_within(&g, 7, &mut budget),
            Err(StructureError::Budget(_))
        ));
    }
}
