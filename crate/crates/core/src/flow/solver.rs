//! Exhaustive nowhere-zero k-flow search.
//!
//! Fix a spanning forest. Every flow modulo `k` is determined by its values
//! on the cotree edges: a tree edge carries the signed sum of the cotree
//! values whose fundamental circuits pass through it. Cotree values range
//! over `1..k` and a partial assignment is abandoned as soon as some tree
//! edge with all its cotree edges assigned sums to zero.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{Flow, FlowError};
use crate::budget::Budget;
use crate::graph::{EdgeId, MultiGraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Solution {
    Found(Flow),
    /// The search space is exhausted.
    Unsatisfiable,
}

impl Solution {
    pub fn flow(self) -> Option<Flow> {
        match self {
            Solution::Found(f) => Some(f),
            Solution::Unsatisfiable => None,
        }
    }
}

pub fn solve_nowhere_zero_flow(g: &MultiGraph, k: u32) -> Result<Solution, FlowError> {
    solve_nowhere_zero_flow_within(g, k, &mut Budget::unlimited())
}

/// Each tried cotree value costs one unit of `budget`.
pub fn solve_nowhere_zero_flow_within(g: &MultiGraph, k: u32, budget: &mut Budget) -> Result<Solution, FlowError> {
    if k < 2 {
        return Err(FlowError::BadModulus(k));
    }
    if let Some(&e) = g.bridges().first() {
        return Err(FlowError::Bridge(e));
    }
    let system = CotreeSystem::new(g);
    let Some(values) = system.search(k, budget)? else {
        return Ok(Solution::Unsatisfiable);
    };
    let amounts: Vec<i64> = values.iter().map(|&x| i64::from(x)).collect();
    let modular = Flow::from_signed(g, k, &amounts)?;
    Ok(Solution::Found(mod_to_integer_flow(g, &modular)?))
}

struct CotreeSystem {
    m: usize,
    /// Cotree edges in assignment order.
    order: Vec<EdgeId>,
    /// Per tree edge: `(position in order, sign)` of every cotree edge on
    /// its fundamental cut.
    terms: Vec<(EdgeId, Vec<(usize, i64)>)>,
    /// Tree edges (indices into `terms`) completed by each position.
    completes: Vec<Vec<usize>>,
}

impl CotreeSystem {
    fn new(g: &MultiGraph) -> Self {
        let n = g.vertex_count();
        let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        let mut depth = vec![0usize; n];
        let mut in_tree = vec![false; g.edge_count()];
        let mut seen = vec![false; n];
        for root in g.vertices() {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &e in g.incident(v) {
                    let w = g.opposite(e, v);
                    if !seen[w] {
                        seen[w] = true;
                        in_tree[e] = true;
                        parent[w] = Some((v, e));
                        depth[w] = depth[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        let cotree: Vec<EdgeId> = g.edge_ids().filter(|&e| !in_tree[e]).collect();
        // Coefficient of each cotree edge on each tree edge, from the
        // fundamental circuit u -> v -> (tree path) -> u.
        let mut coeff: Vec<Vec<(EdgeId, i64)>> = vec![Vec::new(); g.edge_count()];
        for &c in &cotree {
            let (u, v) = g.endpoints(c);
            let (mut a, mut b) = (v, u);
            while a != b {
                if depth[a] >= depth[b] {
                    // Climbing from v's side: traversed child -> parent.
                    let (p, e) = parent[a].expect("non-root vertex");
                    coeff[e].push((c, if g.endpoints(e).0 == a { 1 } else { -1 }));
                    a = p;
                } else {
                    // Descending to u's side: traversed parent -> child.
                    let (p, e) = parent[b].expect("non-root vertex");
                    coeff[e].push((c, if g.endpoints(e).0 == p { 1 } else { -1 }));
                    b = p;
                }
            }
        }
        let order = greedy_order(&cotree, &coeff);
        let mut position = vec![usize::MAX; g.edge_count()];
        for (i, &c) in order.iter().enumerate() {
            position[c] = i;
        }
        let mut terms = Vec::new();
        let mut completes = vec![Vec::new(); order.len()];
        for e in g.edge_ids().filter(|&e| in_tree[e]) {
            let list: Vec<(usize, i64)> = coeff[e].iter().map(|&(c, s)| (position[c], s)).collect();
            let last = list.iter().map(|&(p, _)| p).max().expect("bridgeless: every tree edge lies on a circuit");
            completes[last].push(terms.len());
            terms.push((e, list));
        }
        CotreeSystem { m: g.edge_count(), order, terms, completes }
    }

    /// Signed amounts relative to stored orientations, all in `1..k` up to
    /// sign, conserving modulo `k`; `None` if no assignment exists.
    fn search(&self, k: u32, budget: &mut Budget) -> Result<Option<Vec<u32>>, FlowError> {
        let k = i64::from(k);
        let slots = self.order.len();
        let mut x = vec![0i64; slots];
        let mut depth = 0;
        if slots == 0 {
            // Bridgeless and acyclic: no edges at all.
            return Ok(Some(vec![0; self.m]));
        }
        loop {
            if x[depth] == k - 1 {
                x[depth] = 0;
                if depth == 0 {
                    return Ok(None);
                }
                depth -= 1;
                continue;
            }
            x[depth] += 1;
            budget.charge(1)?;
            let ok = self.completes[depth]
                .iter()
                .all(|&t| self.terms[t].1.iter().map(|&(p, s)| s * x[p]).sum::<i64>().rem_euclid(k) != 0);
            if !ok {
                continue;
            }
            if depth + 1 == slots {
                break;
            }
            depth += 1;
        }
        let mut values = vec![0u32; self.m];
        for (i, &c) in self.order.iter().enumerate() {
            values[c] = x[i] as u32;
        }
        for (e, list) in &self.terms {
            values[*e] = list.iter().map(|&(p, s)| s * x[p]).sum::<i64>().rem_euclid(k) as u32;
        }
        Ok(Some(values))
    }
}

/// Orders cotree edges so that tree edges become fully determined early:
/// repeatedly pick the cotree edge finishing the most tree edges, then the
/// one touching the most unfinished tree edges, then the smallest id.
fn greedy_order(cotree: &[EdgeId], coeff: &[Vec<(EdgeId, i64)>]) -> Vec<EdgeId> {
    let mut remaining: Vec<usize> = coeff.iter().map(Vec::len).collect();
    let mut touching: Vec<Vec<EdgeId>> = vec![Vec::new(); coeff.len()];
    for (tree_edge, list) in coeff.iter().enumerate() {
        for &(c, _) in list {
            touching[c].push(tree_edge);
        }
    }
    let mut left: Vec<EdgeId> = cotree.to_vec();
    let mut order = Vec::with_capacity(cotree.len());
    while !left.is_empty() {
        let score = |c: EdgeId| {
            let finished = touching[c].iter().filter(|&&t| remaining[t] == 1).count();
            let open = touching[c].iter().filter(|&&t| remaining[t] > 0).count();
            (finished, open)
        };
        let (at, _) = left
            .iter()
            .enumerate()
            .max_by(|&(_, &a), &(_, &b)| score(a).cmp(&score(b)).then(b.cmp(&a)))
            .expect("non-empty");
        let c = left.remove(at);
        for &t in &touching[c] {
            remaining[t] -= 1;
        }
        order.push(c);
    }
    order
}

/// Turns a nowhere-zero flow modulo `k` into an integer one with values in
/// `1..k`, by reversing arcs along directed paths from vertices with
/// positive excess to vertices with negative excess. Reversing an arc
/// `u -> v` of value `x` into `v -> u` of value `k - x` moves `k` of excess
/// from `u` to `v`.
pub fn mod_to_integer_flow(g: &MultiGraph, modular: &Flow) -> Result<Flow, FlowError> {
    let k = modular.k;
    let mut flow = modular.clone();
    if let Some(e) = flow.values.iter().position(|&x| x == 0 || x >= k) {
        return Err(FlowError::ValueOutOfRange { edge: e, value: i64::from(flow.values[e]), k });
    }
    let n = g.vertex_count();
    let mut excess = flow.excess(n);
    if let Some(v) = excess.iter().position(|&x| x % i64::from(k) != 0) {
        return Err(FlowError::NoReroutingPath(v));
    }
    while let Some(source) = excess.iter().position(|&x| x > 0) {
        // Breadth-first search along current arc directions.
        let mut via: Vec<Option<EdgeId>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[source] = true;
        let mut queue = VecDeque::from([source]);
        let mut target = None;
        while let Some(v) = queue.pop_front() {
            if excess[v] < 0 {
                target = Some(v);
                break;
            }
            for &e in g.incident(v) {
                let (t, h) = flow.arcs[e];
                if t == v && !seen[h] {
                    seen[h] = true;
                    via[h] = Some(e);
                    queue.push_back(h);
                }
            }
        }
        let target = target.ok_or(FlowError::NoReroutingPath(source))?;
        let mut v = target;
        while let Some(e) = via[v] {
            let (t, h) = flow.arcs[e];
            flow.arcs[e] = (h, t);
            flow.values[e] = k - flow.values[e];
            v = t;
        }
        excess[source] -= i64::from(k);
        excess[target] += i64::from(k);
    }
    Ok(flow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::flow::{is_nowhere_zero, verify_flow};
    use proptest::prelude::*;

    fn solve(g: &MultiGraph, k: u32) -> Option<Flow> {
        let s = solve_nowhere_zero_flow(g, k).unwrap().flow();
        if let Some(f) = &s {
            verify_flow(g, f).unwrap();
            assert!(is_nowhere_zero(f));
            assert_eq!(f.k, k);
        }
        s
    }

    #[test]
    fn petersen_needs_five() {
        let g = corpus::petersen();
        assert!(solve(&g, 4).is_none());
        assert!(solve(&g, 5).is_some());
    }

    #[test]
    fn bipartite_cubic_has_3_flow() {
        assert!(solve(&corpus::k33(), 3).is_some());
        assert!(solve(&corpus::k4(), 3).is_none());
        assert!(solve(&corpus::k4(), 4).is_some());
    }

    #[test]
    fn multigraphs_and_bridges() {
        let theta = MultiGraph::from_edges(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        assert!(solve(&theta, 3).is_some());
        let digon = MultiGraph::from_edges(2, [(0, 1), (0, 1)]).unwrap();
        assert!(solve(&digon, 2).is_some());
        let path = MultiGraph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(solve_nowhere_zero_flow(&path, 5), Err(FlowError::Bridge(0)));
        let empty = MultiGraph::from_edges(3, []).unwrap();
        assert_eq!(solve(&empty, 2), Some(Flow::zero(&empty, 2)));
    }

    #[test]
    fn budget_is_distinct_from_unsatisfiable() {
        let g = corpus::petersen();
        let mut budget = Budget::limited(20);
        assert!(matches!(solve_nowhere_zero_flow_within(&g, 4, &mut budget), Err(FlowError::Budget(_))));
    }

    #[test]
    fn monotone_in_k() {
        for g in corpus::small_bridgeless_cubic().iter().filter(|g| g.vertex_count() <= 10) {
            let mut found = false;
            for k in 2..=6 {
                let now = solve(g, k).is_some();
                assert!(!found || now);
                found = now;
            }
            assert!(found);
        }
    }

    #[test]
    fn conversion_leaves_integer_flows_alone() {
        let g = corpus::k4();
        let f = solve(&g, 4).unwrap();
        assert_eq!(mod_to_integer_flow(&g, &f).unwrap(), f);
        let mut broken = f.clone();
        broken.values[0] = 0;
        assert!(mod_to_integer_flow(&g, &broken).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        /// Random flows mod k: a solver flow plus random multiples of the
        /// circuits of a 2-factor, reduced mod k.
        #[test]
        fn converted_flows_keep_residues(index in 0usize..80, k in 3u32..8, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let graphs = corpus::small_bridgeless_cubic();
            let g = &graphs[index];
            let tf = crate::structure::enumerate_two_factors(g).unwrap().next().unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut amounts = solve(g, 6).unwrap().signed(g);
            for circuit in &tf.circuits {
                let x = rng.gen_range(0..i64::from(k));
                for (e, s) in circuit.signed_arcs(g) {
                    amounts[e] += s * x;
                }
            }
            let residues: Vec<i64> = amounts.iter().map(|a| a.rem_euclid(i64::from(k))).collect();
            prop_assume!(residues.iter().all(|&r| r != 0));
            let modular = Flow::from_signed(g, k, &residues).unwrap();
            let f = mod_to_integer_flow(g, &modular).unwrap();
            verify_flow(g, &f).unwrap();
            prop_assert!(is_nowhere_zero(&f));
            let back: Vec<i64> = f.signed(g).iter().map(|x| x.rem_euclid(i64::from(k))).collect();
            prop_assert_eq!(back, residues);
        }
    }
}
