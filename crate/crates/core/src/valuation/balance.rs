//! Exact balance checks: exhaustive over all vertex sets, and by min cut.

use super::{BalanceReport, Valuation, ValuationError, Violator};
use crate::graph::{MultiGraph, VertexSet};
use crate::maxflow::MaxFlow;

pub const MAX_BRUTE_FORCE_VERTICES: usize = 20;

/// Cut sizes of all `2^n` vertex sets, computed once per graph so that many
/// valuations can be checked against the same table.
pub struct BruteForceChecker<'g> {
    g: &'g MultiGraph,
    cuts: Vec<u16>,
}

impl<'g> BruteForceChecker<'g> {
    pub fn new(g: &'g MultiGraph) -> Result<Self, ValuationError> {
        let n = g.vertex_count();
        if n > MAX_BRUTE_FORCE_VERTICES {
            return Err(ValuationError::TooLarge { n, limit: MAX_BRUTE_FORCE_VERTICES });
        }
        // layers[j][v]: neighbours of v joined by more than j parallel edges.
        let mut mult = vec![vec![0usize; n]; n];
        for (_, u, v) in g.edges() {
            mult[u][v] += 1;
            mult[v][u] += 1;
        }
        let top = mult.iter().flatten().copied().max().unwrap_or(0);
        let layers: Vec<Vec<u32>> = (0..top)
            .map(|j| (0..n).map(|v| (0..n).filter(|&w| mult[v][w] > j).fold(0u32, |m, w| m | 1 << w)).collect())
            .collect();
        let mut cuts = vec![0u16; 1 << n];
        for mask in 1u32..(1 << n) {
            let v = 31 - mask.leading_zeros() as usize;
            let rest = mask & !(1 << v);
            let inner: u32 = layers.iter().map(|layer| (layer[v] & rest).count_ones()).sum();
            cuts[mask as usize] = cuts[rest as usize] + g.degree(v) as u16 - 2 * inner as u16;
        }
        Ok(BruteForceChecker { g, cuts })
    }

    /// Scans every vertex set in Gray-code order.
    pub fn check(&self, f: &Valuation) -> Result<BalanceReport, ValuationError> {
        f.check(self.g)?;
        let n = self.g.vertex_count();
        let den = f.denominator;
        let (mut gray, mut sum) = (0u32, 0i64);
        let mut best: Option<(i64, u32)> = None;
        for i in 1u32..(1 << n) {
            let bit = i.trailing_zeros();
            gray ^= 1 << bit;
            if gray >> bit & 1 == 1 {
                sum += f.numerators[bit as usize];
            } else {
                sum -= f.numerators[bit as usize];
            }
            let margin = sum.abs() - den * i64::from(self.cuts[gray as usize]);
            if margin <= 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((m, s)) => margin > m || (margin == m && precedes(gray, s)),
            };
            if better {
                best = Some((margin, gray));
            }
        }
        Ok(match best {
            None => BalanceReport { balanced: true, violator: None },
            Some((_, mask)) => {
                let side = VertexSet::from_mask(&(0..n).map(|v| mask >> v & 1 == 1).collect::<Vec<_>>());
                BalanceReport { balanced: false, violator: Some(Violator::describe(self.g, f, side)) }
            }
        })
    }
}

/// Smaller set first, then the set holding the smallest differing vertex.
fn precedes(a: u32, b: u32) -> bool {
    match a.count_ones().cmp(&b.count_ones()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => a != b && a & 1 << (a ^ b).trailing_zeros() != 0,
    }
}

pub fn check_balanced_bruteforce(g: &MultiGraph, f: &Valuation) -> Result<BalanceReport, ValuationError> {
    BruteForceChecker::new(g)?.check(f)
}

/// For each sign `s`, minimises `den |∂X| - s f(X)` by a minimum cut:
/// vertices with `s f(v) > 0` hang off the source with that capacity, the
/// others off the sink, and every edge has capacity `den` both ways. The
/// source side of the residual network is the smallest minimiser.
pub fn check_balanced_mincut(g: &MultiGraph, f: &Valuation) -> Result<BalanceReport, ValuationError> {
    f.check(g)?;
    let mut candidates: Vec<Violator> = [1i64, -1]
        .into_iter()
        .filter_map(|sign| smallest_minimiser(g, f, sign))
        .map(|side| Violator::describe(g, f, side))
        .collect();
    candidates.sort_by(|a, b| {
        let margin = |v: &Violator| v.margin.numerator;
        margin(b)
            .cmp(&margin(a))
            .then(a.side.len().cmp(&b.side.len()))
            .then_with(|| a.side.as_slice().cmp(b.side.as_slice()))
    });
    let violator = candidates.into_iter().next();
    Ok(BalanceReport { balanced: violator.is_none(), violator })
}

fn smallest_minimiser(g: &MultiGraph, f: &Valuation, sign: i64) -> Option<VertexSet> {
    let n = g.vertex_count();
    let (s, t) = (n, n + 1);
    let mut net = MaxFlow::new(n + 2);
    let mut positive = 0;
    for v in g.vertices() {
        let w = sign * f.numerators[v];
        if w > 0 {
            net.add_arc(s, v, w);
            positive += w;
        } else if w < 0 {
            net.add_arc(v, t, -w);
        }
    }
    for (_, u, v) in g.edges() {
        net.add_edge(u, v, f.denominator);
    }
    let cut = net.run(s, t);
    if positive - cut <= 0 {
        return None;
    }
    let mut side = net.source_side(s);
    side.truncate(n);
    Some(VertexSet::from_mask(&side))
}
