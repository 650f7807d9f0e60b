//! Structure of a violator of a flow-partition valuation, and bad cuts.

use serde::{Deserialize, Serialize};

use super::{Check, CheckName, EngineError, PartitionTag};
use crate::coloring::Coloring4;
use crate::graph::{EdgeCut, EdgeId, MultiGraph, VertexId, VertexSet};
use crate::valuation::FlowPartition;

/// What a violator `S` of the `+-5/3` valuation of a flow partition looks
/// like, with every derived property checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    /// `∂S` with its color profile.
    pub cut: EdgeCut,
    /// `|#black - #white|` inside `S`.
    pub k: usize,
    /// `|#(Z ∩ S ∩ A) - #(Z ∩ S ∩ B)|`.
    pub q: usize,
    pub z_inside: Vec<VertexId>,
    /// `5k - 3|∂S|`, positive for a violator.
    pub margin: i64,
    pub checks: Vec<Check>,
}

impl ClaimReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> Vec<CheckName> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

pub fn validate_violator_claims(
    g: &MultiGraph,
    c: &Coloring4,
    p: &FlowPartition,
    side: &VertexSet,
) -> Result<ClaimReport, EngineError> {
    for v in side.iter() {
        g.check_vertex(v)?;
    }
    if p.w.len() != g.vertex_count() {
        return Err(EngineError::PartitionSize { expected: g.vertex_count(), found: p.w.len() });
    }
    let n = g.vertex_count();
    let mut cut = crate::graph::edge_cut(g, side)?;
    let profile = c.profile(&cut.edges);
    cut.color_counts = Some(profile);
    let size = cut.len();
    let white = side.iter().filter(|&v| p.is_white(v)).count();
    let k = white.abs_diff(side.len() - white);
    let margin = 5 * k as i64 - 3 * size as i64;
    if margin <= 0 {
        return Err(EngineError::NotAViolator { margin });
    }
    let z_inside: Vec<VertexId> = c.z.iter().copied().filter(|&z| side.contains(z)).collect();
    let z_white = z_inside.iter().filter(|&&z| p.is_white(z)).count();
    let q = z_white.abs_diff(z_inside.len() - z_white);
    let (c1, c2) = (profile[1], profile[2]);

    let mut checks = vec![
        Check::new(CheckName::CutParity, size % 2 == k % 2, format!("|cut|={size}, k={k}")),
        Check::new(CheckName::MatchingBound, k <= c1, format!("k={k}, c1={c1}")),
        Check::new(CheckName::PathBound, k <= c2 + q, format!("k={k}, c2={c2}, q={q}")),
        Check::new(CheckName::ColorOneMajority, 5 * c1 > 3 * size, format!("c1={c1}, |cut|={size}")),
        Check::new(CheckName::ColorTwoMajority, 5 * (c2 + q) > 3 * size, format!("c2+q={}, |cut|={size}", c2 + q)),
    ];
    if c.z.len() == 4 {
        checks.push(Check::new(
            CheckName::ZSplit,
            z_inside.len() == 2 && q == 2,
            format!("|S∩Z|={}, q={q}", z_inside.len()),
        ));
        checks.push(Check::new(
            CheckName::SixCutProfile,
            size == 6 && c1 == 4 && c2 == 2,
            format!("|cut|={size}, c1={c1}, c2={c2}"),
        ));
        let mask = side.mask(n);
        let inner = connected_within(g, &mask, true);
        let outer = connected_within(g, &mask, false);
        checks.push(Check::new(
            CheckName::ConnectedSides,
            inner && outer,
            format!("inside connected: {inner}, outside connected: {outer}"),
        ));
    }
    Ok(ClaimReport { cut, k, q, z_inside, margin, checks })
}

/// Is the subgraph induced by `{v : mask[v] == which}` connected (and non-empty)?
pub(crate) fn connected_within(g: &MultiGraph, mask: &[bool], which: bool) -> bool {
    let members: Vec<VertexId> = g.vertices().filter(|&v| mask[v] == which).collect();
    let Some(&root) = members.first() else { return false };
    let mut seen = vec![false; g.vertex_count()];
    seen[root] = true;
    let mut stack = vec![root];
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if mask[w] == which && !seen[w] {
                seen[w] = true;
                reached += 1;
                stack.push(w);
            }
        }
    }
    reached == members.len()
}

/// A 6-edge cut with four edges of color 1 and two of color 2 that splits
/// the four path ends into two pairs, each pair inside one component of
/// `G - E` and of one class of the partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BadCutCertificate {
    /// `side` is the component of `G - E` containing `z_1`.
    pub cut: EdgeCut,
    pub color_profile: [usize; 4],
    /// The pair containing `z_1` first.
    pub z_split: [[VertexId; 2]; 2],
    pub partition: PartitionTag,
}

pub fn bad_cut(
    g: &MultiGraph,
    c: &Coloring4,
    p: &FlowPartition,
    tag: PartitionTag,
    edges: &[EdgeId],
) -> Result<Option<BadCutCertificate>, EngineError> {
    if c.z.len() != 4 {
        return Err(EngineError::ZCount(c.z.len()));
    }
    let mut edges = edges.to_vec();
    edges.sort_unstable();
    edges.dedup();
    for &e in &edges {
        g.check_edge(e)?;
    }
    let profile = c.profile(&edges);
    if edges.len() != 6 || profile[1] != 4 || profile[2] != 2 {
        return Ok(None);
    }
    let mut removed = vec![false; g.edge_count()];
    for &e in &edges {
        removed[e] = true;
    }
    let comps = g.components_without(&removed);
    let label = |v: VertexId| comps.iter().position(|comp| comp.binary_search(&v).is_ok()).expect("every vertex lies in a component");
    let z = &c.z;
    let home = label(z[0]);
    let (with, without): (Vec<VertexId>, Vec<VertexId>) = z.iter().partition(|&&v| label(v) == home);
    if with.len() != 2 || label(without[0]) != label(without[1]) {
        return Ok(None);
    }
    let mono = |pair: &[VertexId]| p.is_white(pair[0]) == p.is_white(pair[1]);
    if !mono(&with) || !mono(&without) {
        return Ok(None);
    }
    Ok(Some(BadCutCertificate {
        cut: EdgeCut { side: VertexSet::new(g, comps[home].iter().copied())?, edges, color_counts: Some(profile) },
        color_profile: profile,
        z_split: [[with[0], with[1]], [without[0], without[1]]],
        partition: tag,
    }))
}

pub fn is_bad_cut(g: &MultiGraph, c: &Coloring4, p: &FlowPartition, edges: &[EdgeId]) -> Result<bool, EngineError> {
    Ok(bad_cut(g, c, p, PartitionTag::Primary, edges)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::coloring::canonical_coloring;
    use crate::corpus;
    use crate::engine::normalized_partitions;
    use crate::flow::build_augmented;
    use crate::graph::cut_edges;
    use crate::structure::{compute_oddness, connected_sets};
    use crate::valuation::{check_balanced_mincut, to_five_thirds};

    fn setup(g: &MultiGraph) -> (Coloring4, Vec<(PartitionTag, FlowPartition)>) {
        let c = canonical_coloring(g, &compute_oddness(g).unwrap().witness).unwrap();
        let parts = normalized_partitions(&build_augmented(g, &c)).unwrap();
        (c, parts)
    }

    #[test]
    fn violators_and_their_complements() {
        let g = corpus::oddness4_36();
        let (c, parts) = setup(&g);
        for (tag, p) in &parts {
            let v = check_balanced_mincut(&g, &to_five_thirds(p)).unwrap().violator.unwrap();
            let report = validate_violator_claims(&g, &c, p, &v.side).unwrap();
            assert!(report.all_passed(), "{:?}", report.failed());
            assert_eq!(report.margin, v.margin.numerator);
            let other = validate_violator_claims(&g, &c, p, &v.side.complement(&g)).unwrap();
            assert_eq!((other.margin, other.k, other.q), (report.margin, report.k, report.q));
            assert!(other.all_passed());
            let bad = bad_cut(&g, &c, p, *tag, &report.cut.edges).unwrap().unwrap();
            assert_eq!(bad.color_profile[1..3], [4, 2]);
            assert!(bad.z_split[0].contains(&c.z[0]));
            // Trading a color-1 edge for one of another color breaks the profile.
            let mut edges = report.cut.edges.clone();
            let one = edges.iter().position(|&e| c.colors[e] == 1).unwrap();
            edges[one] = g.edge_ids().find(|&e| c.colors[e] == 3 && !edges.contains(&e)).unwrap();
            assert_eq!(c.profile(&edges)[1], 3);
            assert!(!is_bad_cut(&g, &c, p, &edges).unwrap());
        }
    }

    #[test]
    fn non_violators_and_wrong_z_counts_are_errors() {
        let g = corpus::oddness4_28();
        let (c, parts) = setup(&g);
        let p = &parts[0].1;
        let single = VertexSet::new(&g, [0]).unwrap();
        assert_eq!(validate_violator_claims(&g, &c, p, &single), Err(EngineError::NotAViolator { margin: -4 }));

        let pet = corpus::petersen();
        let (pc, pparts) = setup(&pet);
        assert_eq!(is_bad_cut(&pet, &pc, &pparts[0].1, &[0, 1, 2, 3, 4, 5]), Err(EngineError::ZCount(2)));
    }

    /// Over every connected side of up to 10 vertices: bad cuts have the
    /// right profile and never keep z_1 and z_2 together.
    #[test]
    fn small_cut_enumeration() {
        let mut bad_seen = 0;
        for g in [corpus::oddness4_28(), corpus::oddness4_36()] {
            let (c, parts) = setup(&g);
            let n = g.vertex_count();
            let mut six = 0;
            for size in 1..=10 {
                for side in connected_sets(&g, size, None, &mut Budget::unlimited()).unwrap() {
                    let set = VertexSet::new(&g, side).unwrap();
                    let edges = cut_edges(&g, &set.mask(n));
                    if edges.len() != 6 {
                        continue;
                    }
                    six += 1;
                    let profile = c.profile(&edges);
                    for (tag, p) in &parts {
                        let bad = bad_cut(&g, &c, p, *tag, &edges).unwrap();
                        if set.contains(c.z[0]) == set.contains(c.z[1]) {
                            assert!(bad.is_none());
                        }
                        if let Some(b) = bad {
                            bad_seen += 1;
                            assert_eq!((edges.len(), profile[1], profile[2]), (6, 4, 2));
                            let [first, second] = b.z_split;
                            assert_eq!(p.is_white(first[0]), p.is_white(first[1]));
                            assert_eq!(p.is_white(second[0]), p.is_white(second[1]));
                        }
                    }
                }
            }
            assert!(six > 0);
        }
        assert!(bad_seen > 0);
    }
}
