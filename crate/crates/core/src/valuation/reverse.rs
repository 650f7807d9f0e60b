//! From a balanced valuation back to a nowhere-zero flow.
//!
//! The valuation fixes the out-degree of every vertex. Any orientation with
//! those out-degrees has `|D+(X)| - |D-(X)| = (k-2)/k f(X)` across every
//! cut, so balance is exactly Hoffman's condition
//! `|D+(X)| <= (k-1) |D-(X)|` for a circulation with values in `1..k` on
//! that orientation. Both the orientation and the circulation come out of
//! a max-flow computation.

use super::{check_balanced_mincut, Valuation, ValuationError};
use crate::flow::{verify_flow, Flow, FlowError};
use crate::graph::MultiGraph;
use crate::maxflow::MaxFlow;

pub fn valuation_to_flow(g: &MultiGraph, f: &Valuation, k: u32) -> Result<Flow, ValuationError> {
    f.check(g)?;
    if k < 3 {
        return Err(FlowError::BadModulus(k).into());
    }
    let report = check_balanced_mincut(g, f)?;
    if let Some(violator) = report.violator {
        return Err(ValuationError::Unbalanced(Box::new(violator)));
    }
    let out = target_out_degrees(g, f, i64::from(k))?;
    let arcs = orient(g, &out)?;
    let values = circulate(g, &arcs, i64::from(k))?;
    let flow = Flow { k, arcs, values };
    verify_flow(g, &flow)?;
    Ok(flow)
}

/// `d+(v) = (d(v) + f(v) (k-2)/k) / 2`, which must be an integer in `0..=d(v)`.
fn target_out_degrees(g: &MultiGraph, f: &Valuation, k: i64) -> Result<Vec<usize>, ValuationError> {
    g.vertices()
        .map(|v| {
            let scaled = f.numerators[v] * (k - 2);
            let bad = ValuationError::NotTheoremForm(v);
            if scaled % (f.denominator * k) != 0 {
                return Err(bad);
            }
            let twice = g.degree(v) as i64 + scaled / (f.denominator * k);
            if twice % 2 != 0 || twice < 0 || twice > 2 * g.degree(v) as i64 {
                return Err(bad);
            }
            Ok((twice / 2) as usize)
        })
        .collect()
}

/// An orientation with prescribed out-degrees: each edge sends one unit to
/// the endpoint that becomes its tail.
fn orient(g: &MultiGraph, out: &[usize]) -> Result<Vec<(usize, usize)>, ValuationError> {
    let (n, m) = (g.vertex_count(), g.edge_count());
    let (s, t) = (n + m, n + m + 1);
    let mut net = MaxFlow::new(n + m + 2);
    let mut choice = Vec::with_capacity(m);
    for (e, u, v) in g.edges() {
        net.add_arc(s, n + e, 1);
        choice.push((net.add_arc(n + e, u, 1), u, v));
        net.add_arc(n + e, v, 1);
    }
    for v in g.vertices() {
        net.add_arc(v, t, out[v] as i64);
    }
    if net.run(s, t) != m as i64 {
        return Err(ValuationError::Infeasible);
    }
    Ok(choice
        .into_iter()
        .map(|(arc, u, v)| if net.flow_on(arc) == 1 { (u, v) } else { (v, u) })
        .collect())
}

/// A circulation on fixed arcs with every value in `1..k`, via the usual
/// reduction of lower bounds to a source/sink max-flow problem.
fn circulate(g: &MultiGraph, arcs: &[(usize, usize)], k: i64) -> Result<Vec<u32>, ValuationError> {
    let n = g.vertex_count();
    let (s, t) = (n, n + 1);
    let mut net = MaxFlow::new(n + 2);
    let mut forced = vec![0i64; n];
    let refs: Vec<_> = arcs
        .iter()
        .map(|&(tail, head)| {
            forced[head] += 1;
            forced[tail] -= 1;
            net.add_arc(tail, head, k - 2)
        })
        .collect();
    let mut need = 0;
    for v in g.vertices() {
        if forced[v] > 0 {
            net.add_arc(s, v, forced[v]);
            need += forced[v];
        } else if forced[v] < 0 {
            net.add_arc(v, t, -forced[v]);
        }
    }
    if net.run(s, t) != need {
        return Err(ValuationError::Infeasible);
    }
    Ok(refs.into_iter().map(|r| (1 + net.flow_on(r)) as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::flow::{is_nowhere_zero, solve_nowhere_zero_flow};
    use crate::valuation::flow_to_valuation;

    fn round_trip(g: &MultiGraph, k: u32) {
        let f = solve_nowhere_zero_flow(g, k).unwrap().flow().unwrap();
        let val = flow_to_valuation(g, &f).unwrap();
        let back = valuation_to_flow(g, &val, k).unwrap();
        assert!(is_nowhere_zero(&back));
        assert!(back.values.iter().all(|&x| x < k));
        assert_eq!(flow_to_valuation(g, &back).unwrap(), val);
    }

    #[test]
    fn round_trips() {
        round_trip(&corpus::k33(), 3);
        round_trip(&corpus::k4(), 4);
        round_trip(&corpus::petersen(), 5);
        round_trip(&corpus::flower_snark(5), 5);
        for g in corpus::small_bridgeless_cubic().iter().filter(|g| g.vertex_count() <= 10) {
            round_trip(g, 5);
            round_trip(g, 6);
        }
    }

    #[test]
    fn unbalanced_and_malformed_inputs_are_rejected() {
        let g = corpus::k4();
        let f = Valuation { denominator: 3, numerators: vec![5; 4] };
        assert!(matches!(valuation_to_flow(&g, &f, 5), Err(ValuationError::Unbalanced(_))));
        let odd = Valuation { denominator: 1, numerators: vec![1, -1, 1, -1] };
        assert_eq!(valuation_to_flow(&g, &odd, 5), Err(ValuationError::NotTheoremForm(0)));
        // Petersen has no balanced +-2 valuation, i.e. no 4-flow.
        let p = corpus::petersen();
        let white = crate::graph::VertexSet::new(&p, [0, 2, 5, 6, 8]).unwrap();
        let w = Valuation { denominator: 1, numerators: p.vertices().map(|v| if white.contains(v) { -2 } else { 2 }).collect() };
        assert!(matches!(valuation_to_flow(&p, &w, 4), Err(ValuationError::Unbalanced(_))));
    }
}
