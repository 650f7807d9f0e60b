//! Four-part decomposition from two bad cuts, and the path parity count.

use serde::{Deserialize, Serialize};

use super::{Check, CheckName, EngineError};
use crate::coloring::Coloring4;
use crate::graph::{cut_edges, pair_cut, EdgeId, MultiGraph, VertexId, VertexSet};

/// The sides of two cuts `E3`, `E4` and their four intersections.
///
/// `x` and `x_prime` are the components of `G - E3` and `G - E4` holding
/// `z_1`; `parts` are `X∩X'`, `Y∩Y'`, `X∩Y'`, `Y∩X'` in that order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadDecomposition {
    pub e3: Vec<EdgeId>,
    pub e4: Vec<EdgeId>,
    pub x: VertexSet,
    pub y: VertexSet,
    pub x_prime: VertexSet,
    pub y_prime: VertexSet,
    pub parts: [VertexSet; 4],
    /// The path end lying in each part.
    pub z: [VertexId; 4],
    /// `∂(U_i, U_j)` for `i < j`, 0-based part indices.
    pub cross_cuts: Vec<CrossCut>,
    pub e3_first: Vec<EdgeId>,
    pub e3_second: Vec<EdgeId>,
    pub e4_first: Vec<EdgeId>,
    pub e4_second: Vec<EdgeId>,
    pub boundaries: [usize; 4],
    pub checks: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCut {
    pub parts: (usize, usize),
    pub edges: Vec<EdgeId>,
}

impl QuadDecomposition {
    pub fn cross(&self, i: usize, j: usize) -> &[EdgeId] {
        let (i, j) = (i.min(j), i.max(j));
        &self.cross_cuts.iter().find(|c| c.parts == (i, j)).expect("all pairs are stored").edges
    }
}

fn two_sides(g: &MultiGraph, cut: &[EdgeId], z1: VertexId) -> Result<(VertexSet, VertexSet), EngineError> {
    let mut removed = vec![false; g.edge_count()];
    for &e in cut {
        g.check_edge(e)?;
        removed[e] = true;
    }
    let comps = g.components_without(&removed);
    if comps.len() != 2 {
        return Err(EngineError::CutComponents(comps.len()));
    }
    let (a, b) = if comps[0].binary_search(&z1).is_ok() { (0, 1) } else { (1, 0) };
    Ok((VertexSet::new(g, comps[a].iter().copied())?, VertexSet::new(g, comps[b].iter().copied())?))
}

fn intersect(a: &[EdgeId], b: &[EdgeId]) -> Vec<EdgeId> {
    a.iter().copied().filter(|e| b.contains(e)).collect()
}

pub fn quad_decompose(g: &MultiGraph, c: &Coloring4, e3: &[EdgeId], e4: &[EdgeId]) -> Result<QuadDecomposition, EngineError> {
    if c.z.len() != 4 {
        return Err(EngineError::ZCount(c.z.len()));
    }
    let n = g.vertex_count();
    let z1 = c.z[0];
    let (x, y) = two_sides(g, e3, z1)?;
    let (x_prime, y_prime) = two_sides(g, e4, z1)?;
    let parts = [x.intersection(&x_prime), y.intersection(&y_prime), x.intersection(&y_prime), y.intersection(&x_prime)];
    let mut z = [0; 4];
    for (i, part) in parts.iter().enumerate() {
        let inside: Vec<VertexId> = c.z.iter().copied().filter(|&v| part.contains(v)).collect();
        if inside.len() != 1 {
            return Err(EngineError::ZMisplaced { part: i, count: inside.len() });
        }
        z[i] = inside[0];
    }
    let mut cross_cuts = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            cross_cuts.push(CrossCut { parts: (i, j), edges: pair_cut(g, &parts[i], &parts[j])? });
        }
    }
    let boundary: Vec<Vec<EdgeId>> = parts.iter().map(|u| cut_edges(g, &u.mask(n))).collect();
    let boundaries = [0, 1, 2, 3].map(|i| boundary[i].len());
    let (mut e3, mut e4) = (e3.to_vec(), e4.to_vec());
    e3.sort_unstable();
    e4.sort_unstable();

    let mut checks = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        let size = boundaries[i];
        let ok = size > 5 || (size == 5 && is_short_path(g, c, part));
        checks.push(Check::new(CheckName::PartBoundary, ok, format!("U{}: |boundary|={size}, |U|={}", i + 1, part.len())));
    }
    let fives: Vec<usize> = (0..4).filter(|&i| boundaries[i] == 5).collect();
    let fives_ok = match fives.as_slice() {
        [] | [_] => true,
        [a, b] => (*a, *b) == (0, 1) || (*a, *b) == (2, 3),
        _ => false,
    };
    checks.push(Check::new(
        CheckName::FiveBoundaries,
        fives_ok,
        format!("parts with boundary 5: {:?}", fives.iter().map(|i| i + 1).collect::<Vec<_>>()),
    ));
    let sizes: Vec<usize> = cross_cuts.iter().map(|c| c.edges.len()).collect();
    let expected = [0, 3, 3, 3, 3, 0];
    checks.push(Check::new(
        CheckName::CrossCuts,
        sizes == expected,
        format!("sizes for pairs 12,13,14,23,24,34: {sizes:?}"),
    ));

    Ok(QuadDecomposition {
        e3_first: intersect(&e3, &boundary[0]),
        e3_second: intersect(&e3, &boundary[1]),
        e4_first: intersect(&e4, &boundary[0]),
        e4_second: intersect(&e4, &boundary[1]),
        e3,
        e4,
        x,
        y,
        x_prime,
        y_prime,
        parts,
        z,
        cross_cuts,
        boundaries,
        checks,
    })
}

/// Three vertices joined by one edge of color 0 and one of color 3.
fn is_short_path(g: &MultiGraph, c: &Coloring4, part: &VertexSet) -> bool {
    if part.len() != 3 {
        return false;
    }
    let mut colors: Vec<u8> = g
        .edges()
        .filter(|&(_, u, v)| part.contains(u) && part.contains(v))
        .map(|(e, _, _)| c.colors[e])
        .collect();
    colors.sort_unstable();
    colors == [0, 3]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCrossings {
    pub path: usize,
    pub e3: usize,
    pub e3_first: usize,
    pub e3_second: usize,
    pub e4: usize,
    pub e4_first: usize,
    pub e4_second: usize,
}

/// How the color-1/2 subgraph `H` meets the boundary of one part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartParity {
    pub part: usize,
    pub boundary: usize,
    /// Boundary edges of color 1 or 2.
    pub in_h: usize,
    /// Boundary edges on the two paths.
    pub on_paths: usize,
    /// Boundary edges on the even circuits of `H`.
    pub on_circuits: usize,
    pub z_inside: usize,
    /// The boundary lies in `H`, has even size, and the paths cross it an
    /// odd number of times: impossible, since then the circuits would
    /// cross it an odd number of times.
    pub contradiction: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityReport {
    pub paths: Vec<PathCrossings>,
    pub parts: Vec<PartParity>,
    pub checks: Vec<Check>,
    /// Whether some part reaches the impossible configuration. On a real
    /// instance it never does, so the check lines show which premise broke.
    pub contradiction: bool,
}

pub fn parity_contradiction_check(g: &MultiGraph, qd: &QuadDecomposition, c: &Coloring4) -> ParityReport {
    let n = g.vertex_count();
    let count = |path: &[EdgeId], cut: &[EdgeId]| path.iter().filter(|e| cut.contains(e)).count();
    let paths: Vec<PathCrossings> = c
        .paths
        .iter()
        .enumerate()
        .map(|(i, p)| PathCrossings {
            path: i,
            e3: count(&p.edges, &qd.e3),
            e3_first: count(&p.edges, &qd.e3_first),
            e3_second: count(&p.edges, &qd.e3_second),
            e4: count(&p.edges, &qd.e4),
            e4_first: count(&p.edges, &qd.e4_first),
            e4_second: count(&p.edges, &qd.e4_second),
        })
        .collect();
    let mut on_path = vec![false; g.edge_count()];
    for p in &c.paths {
        for &e in &p.edges {
            on_path[e] = true;
        }
    }
    let circuits = crate::coloring::color12_components(g, c).circuits;
    let mut checks = Vec::new();
    for pc in &paths {
        checks.push(Check::new(CheckName::PathCrossesFirstCut, pc.e3 % 2 == 1, format!("P{}: {} edges in E3", pc.path + 1, pc.e3)));
        checks.push(Check::new(CheckName::PathCrossesSecondCut, pc.e4 % 2 == 1, format!("P{}: {} edges in E4", pc.path + 1, pc.e4)));
    }
    let mut parts = Vec::with_capacity(4);
    for (i, u) in qd.parts.iter().enumerate() {
        let boundary = cut_edges(g, &u.mask(n));
        let in_h = boundary.iter().filter(|&&e| matches!(c.colors[e], 1 | 2)).count();
        let on_paths = boundary.iter().filter(|&&e| on_path[e]).count();
        let on_circuits = in_h - on_paths;
        for (j, circ) in circuits.iter().enumerate() {
            let crossing = circ.edges.iter().filter(|e| boundary.contains(e)).count();
            if crossing % 2 == 1 {
                checks.push(Check::new(CheckName::CircuitCrossesEvenly, false, format!("circuit {j} crosses boundary of U{} {crossing} times", i + 1)));
            }
        }
        let z_inside = c.z.iter().filter(|&&z| u.contains(z)).count();
        checks.push(Check::new(
            CheckName::PathEndParity,
            on_paths % 2 == z_inside % 2,
            format!("U{}: paths cross boundary {on_paths} times, {z_inside} path ends inside", i + 1),
        ));
        let contradiction = in_h == boundary.len() && boundary.len().is_multiple_of(2) && on_paths % 2 == 1;
        checks.push(Check::new(
            CheckName::BoundaryInH,
            in_h == boundary.len(),
            format!("U{}: {in_h} of {} boundary edges have color 1 or 2", i + 1, boundary.len()),
        ));
        parts.push(PartParity { part: i, boundary: boundary.len(), in_h, on_paths, on_circuits, z_inside, contradiction });
    }
    if !checks.iter().any(|c| c.name == CheckName::CircuitCrossesEvenly) {
        checks.push(Check::new(CheckName::CircuitCrossesEvenly, true, format!("{} circuits", circuits.len())));
    }
    let contradiction = parts.iter().any(|p| p.contradiction);
    ParityReport { paths, parts, checks, contradiction }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::engine::{five_flow_oddness4, EngineOptions};

    fn bad_pair() -> (MultiGraph, Coloring4, Vec<EdgeId>, Vec<EdgeId>) {
        let g = corpus::oddness4_36();
        let cert = five_flow_oddness4(&g, &EngineOptions::default()).unwrap();
        let cuts: Vec<Vec<EdgeId>> = cert.claim_log.violators.iter().map(|v| v.bad_cut.as_ref().unwrap().cut.edges.clone()).collect();
        let tf = crate::structure::compute_oddness(&g).unwrap().witness;
        let c = crate::coloring::canonical_coloring(&g, &tf).unwrap();
        (g, c, cuts[0].clone(), cuts[1].clone())
    }

    #[test]
    fn parts_follow_the_set_algebra() {
        let (g, c, e3, e4) = bad_pair();
        let qd = quad_decompose(&g, &c, &e3, &e4).unwrap();
        let mut seen = vec![0; g.vertex_count()];
        for u in &qd.parts {
            for v in u.iter() {
                seen[v] += 1;
            }
        }
        assert!(seen.iter().all(|&k| k == 1));
        assert_eq!(qd.parts[0], qd.x.intersection(&qd.x_prime));
        assert_eq!(qd.parts[1], qd.y.intersection(&qd.y_prime));
        assert_eq!(qd.parts[2], qd.x.intersection(&qd.y_prime));
        assert_eq!(qd.parts[3], qd.y.intersection(&qd.x_prime));
        assert_eq!(qd.z, [c.z[0], c.z[1], c.z[2], c.z[3]]);
        let n = g.vertex_count();
        let first = cut_edges(&g, &qd.parts[0].mask(n));
        assert_eq!(qd.e3_first, intersect(&qd.e3, &first));
        assert_eq!(qd.e4_first, intersect(&qd.e4, &first));
        for i in 0..4 {
            let total: usize = (0..4).filter(|&j| j != i).map(|j| qd.cross(i, j).len()).sum();
            assert_eq!(total, qd.boundaries[i]);
        }
        // Cyclic connectivity 3 lets three parts have boundary 5.
        assert_eq!(qd.boundaries, [5, 7, 5, 5]);
        let failed: Vec<CheckName> = qd.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
        assert!(failed.contains(&CheckName::FiveBoundaries) && failed.contains(&CheckName::CrossCuts));
    }

    #[test]
    fn parity_lines_on_a_real_bad_pair() {
        let (g, c, e3, e4) = bad_pair();
        let qd = quad_decompose(&g, &c, &e3, &e4).unwrap();
        let report = parity_contradiction_check(&g, &qd, &c);
        for pc in &report.paths {
            assert_eq!(pc.e3 % 2, 1);
            assert_eq!(pc.e4 % 2, 1);
        }
        for name in [CheckName::CircuitCrossesEvenly, CheckName::PathEndParity, CheckName::PathCrossesFirstCut, CheckName::PathCrossesSecondCut] {
            assert!(report.checks.iter().filter(|c| c.name == name).all(|c| c.passed), "{name:?}");
        }
        for part in &report.parts {
            assert_eq!(part.on_paths % 2, part.z_inside % 2);
            assert_eq!(part.on_circuits % 2, 0);
        }
        assert!(!report.contradiction);
    }

    #[test]
    fn malformed_cuts() {
        let (g, c, e3, _) = bad_pair();
        assert_eq!(quad_decompose(&g, &c, &e3[..1], &e3), Err(EngineError::CutComponents(1)));
        assert_eq!(quad_decompose(&g, &c, &e3, &e3), Err(EngineError::ZMisplaced { part: 0, count: 2 }));
    }
}
