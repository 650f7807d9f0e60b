//! Perfect matchings, their complementary 2-factors, and oddness.

use serde::{Deserialize, Serialize};

use super::StructureError;
use crate::circuit::Circuit;
use crate::graph::{EdgeId, MultiGraph, VertexId};

/// A perfect matching together with its complementary 2-factor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFactor {
    /// Matching edges, ascending.
    pub matching: Vec<EdgeId>,
    /// 2-factor edges, ascending.
    pub factor: Vec<EdgeId>,
    /// Circuits of the 2-factor ordered by smallest vertex, each in
    /// canonical traversal.
    pub circuits: Vec<Circuit>,
    pub odd_count: usize,
}

impl TwoFactor {
    /// Builds the decomposition whose 1-factor is `matching`.
    pub fn from_matching(g: &MultiGraph, matching: &[EdgeId]) -> Result<Self, StructureError> {
        require_cubic(g)?;
        let mut in_matching = vec![false; g.edge_count()];
        for &e in matching {
            g.check_edge(e)?;
            if std::mem::replace(&mut in_matching[e], true) {
                return Err(StructureError::Inconsistent(format!("edge {e} listed twice")));
            }
        }
        let mut covered = vec![0u8; g.vertex_count()];
        for &e in matching {
            let (u, v) = g.endpoints(e);
            covered[u] += 1;
            covered[v] += 1;
        }
        if let Some(v) = covered.iter().position(|&c| c != 1) {
            return Err(StructureError::Inconsistent(format!(
                "vertex {v} is covered {} times by the matching",
                covered[v]
            )));
        }
        let factor: Vec<EdgeId> = g.edge_ids().filter(|&e| !in_matching[e]).collect();
        let circuits = factor_circuits(g, &in_matching);
        let odd_count = circuits.iter().filter(|c| c.is_odd()).count();
        let mut matching = matching.to_vec();
        matching.sort_unstable();
        Ok(TwoFactor { matching, factor, circuits, odd_count })
    }

    pub fn odd_circuits(&self) -> impl Iterator<Item = &Circuit> {
        self.circuits.iter().filter(|c| c.is_odd())
    }

    pub fn even_circuits(&self) -> impl Iterator<Item = &Circuit> {
        self.circuits.iter().filter(|c| !c.is_odd())
    }

    /// Rechecks every structural invariant against `g`.
    pub fn validate(&self, g: &MultiGraph) -> Result<(), StructureError> {
        let rebuilt = TwoFactor::from_matching(g, &self.matching)?;
        if rebuilt != *self {
            return Err(StructureError::Inconsistent(
                "2-factor does not match the complement of its matching".into(),
            ));
        }
        if !self.odd_count.is_multiple_of(2) {
            return Err(StructureError::Inconsistent("odd number of odd circuits".into()));
        }
        Ok(())
    }
}

fn factor_circuits(g: &MultiGraph, in_matching: &[bool]) -> Vec<Circuit> {
    let mut seen = vec![false; g.vertex_count()];
    let mut circuits = Vec::new();
    for root in g.vertices() {
        if seen[root] {
            continue;
        }
        let mut edges = Vec::new();
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &e in g.incident(v) {
                if in_matching[e] {
                    continue;
                }
                edges.push(e);
                let w = g.opposite(e, v);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        circuits.push(Circuit::from_edges(g, &edges).expect("complement of a perfect matching in a cubic graph is a 2-factor"));
    }
    circuits
}

pub(crate) fn require_cubic(g: &MultiGraph) -> Result<(), StructureError> {
    match g.vertices().find(|&v| g.degree(v) != 3) {
        Some(v) => Err(StructureError::NotCubic { vertex: v, degree: g.degree(v) }),
        None => Ok(()),
    }
}

/// Streams every 2-factor of a cubic graph, one per perfect matching.
///
/// Matchings are found by backtracking: the smallest unmatched vertex is
/// matched along each of its edges in ascending id order. The order is
/// therefore fully determined by the graph.
pub fn enumerate_two_factors(g: &MultiGraph) -> Result<TwoFactors<'_>, StructureError> {
    require_cubic(g)?;
    Ok(TwoFactors { search: MatchingSearch::new(g), done: false })
}

pub struct TwoFactors<'g> {
    search: MatchingSearch<'g>,
    done: bool,
}

impl Iterator for TwoFactors<'_> {
    type Item = TwoFactor;

    fn next(&mut self) -> Option<TwoFactor> {
        if self.done {
            return None;
        }
        match self.search.next_matching() {
            Some(m) => Some(
                TwoFactor::from_matching(self.search.g, &m).expect("search yields perfect matchings"),
            ),
            None => {
                self.done = true;
                None
            }
        }
    }
}

/// Resumable backtracking over perfect matchings.
struct MatchingSearch<'g> {
    g: &'g MultiGraph,
    mate_edge: Vec<Option<EdgeId>>,
    /// (vertex being matched, next incidence index to try)
    frames: Vec<(VertexId, usize)>,
    started: bool,
}

impl<'g> MatchingSearch<'g> {
    fn new(g: &'g MultiGraph) -> Self {
        MatchingSearch { g, mate_edge: vec![None; g.vertex_count()], frames: Vec::new(), started: false }
    }

    fn unmatch_top(&mut self) {
        if let Some(&(v, idx)) = self.frames.last() {
            let e = self.g.incident(v)[idx - 1];
            let w = self.g.opposite(e, v);
            self.mate_edge[v] = None;
            self.mate_edge[w] = None;
        }
    }

    fn next_matching(&mut self) -> Option<Vec<EdgeId>> {
        let g = self.g;
        // `descend` means: extend the current partial matching.
        let mut descend = if self.started {
            if self.frames.is_empty() {
                return None;
            }
            self.unmatch_top();
            false
        } else {
            self.started = true;
            true
        };
        loop {
            if descend {
                match g.vertices().find(|&v| self.mate_edge[v].is_none()) {
                    None => {
                        let mut m: Vec<EdgeId> = self.mate_edge.iter().flatten().copied().collect();
                        m.sort_unstable();
                        m.dedup();
                        return Some(m);
                    }
                    Some(v) => self.frames.push((v, 0)),
                }
            }
            let &(v, start) = self.frames.last()?;
            let incident = g.incident(v);
            let next = (start..incident.len()).find(|&i| {
                let w = g.opposite(incident[i], v);
                self.mate_edge[w].is_none()
            });
            match next {
                Some(i) => {
                    let e = incident[i];
                    let w = g.opposite(e, v);
                    self.mate_edge[v] = Some(e);
                    self.mate_edge[w] = Some(e);
                    self.frames.last_mut().expect("frame").1 = i + 1;
                    descend = true;
                }
                None => {
                    self.frames.pop();
                    if self.frames.is_empty() {
                        return None;
                    }
                    self.unmatch_top();
                    descend = false;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddnessResult {
    pub oddness: usize,
    pub witness: TwoFactor,
}

/// Minimum number of odd circuits over all 2-factors.
///
/// The same matching order as [`enumerate_two_factors`] is used, so the
/// witness is the first 2-factor in that order attaining the minimum.
/// Branches whose already-closed odd circuits reach the best count so far
/// are cut, and the search stops as soon as a 2-factor without odd circuits
/// appears.
pub fn compute_oddness(g: &MultiGraph) -> Result<OddnessResult, StructureError> {
    require_cubic(g)?;
    if let Some(&e) = g.bridges().first() {
        return Err(StructureError::Bridge(e));
    }
    let mut search = OddnessSearch::new(g);
    search.run();
    let matching = search.best_matching.ok_or(StructureError::NoPerfectMatching)?;
    let witness = TwoFactor::from_matching(g, &matching)?;
    debug_assert_eq!(witness.odd_count, search.best);
    Ok(OddnessResult { oddness: witness.odd_count, witness })
}

/// Matching backtracking that tracks 2-factor path fragments so odd
/// circuits are counted the moment they close.
struct OddnessSearch<'g> {
    g: &'g MultiGraph,
    mate_edge: Vec<Option<EdgeId>>,
    in_factor: Vec<bool>,
    /// For a fragment endpoint: the other endpoint (itself when isolated).
    end: Vec<VertexId>,
    /// For a fragment endpoint: number of edges in its fragment.
    length: Vec<usize>,
    odd_closed: usize,
    undo: Vec<Undo>,
    best: usize,
    best_matching: Option<Vec<EdgeId>>,
}

enum Undo {
    Fragment { vertex: VertexId, end: VertexId, length: usize },
    Factor(EdgeId),
    OddClosed,
}

impl<'g> OddnessSearch<'g> {
    fn new(g: &'g MultiGraph) -> Self {
        let n = g.vertex_count();
        OddnessSearch {
            g,
            mate_edge: vec![None; n],
            in_factor: vec![false; g.edge_count()],
            end: (0..n).collect(),
            length: vec![0; n],
            odd_closed: 0,
            undo: Vec::new(),
            best: usize::MAX,
            best_matching: None,
        }
    }

    fn set_fragment(&mut self, v: VertexId, end: VertexId, length: usize) {
        self.undo.push(Undo::Fragment { vertex: v, end: self.end[v], length: self.length[v] });
        self.end[v] = end;
        self.length[v] = length;
    }

    fn add_factor_edge(&mut self, e: EdgeId) {
        self.in_factor[e] = true;
        self.undo.push(Undo::Factor(e));
        let (a, b) = self.g.endpoints(e);
        if self.end[a] == b && a != self.end[a] {
            if (self.length[a] + 1) % 2 == 1 {
                self.odd_closed += 1;
                self.undo.push(Undo::OddClosed);
            }
            return;
        }
        let (ea, eb) = (self.end[a], self.end[b]);
        let len = self.length[a] + self.length[b] + 1;
        self.set_fragment(ea, eb, len);
        self.set_fragment(eb, ea, len);
    }

    fn rollback(&mut self, mark: usize) {
        while self.undo.len() > mark {
            match self.undo.pop().expect("undo entry") {
                Undo::Fragment { vertex, end, length } => {
                    self.end[vertex] = end;
                    self.length[vertex] = length;
                }
                Undo::Factor(e) => self.in_factor[e] = false,
                Undo::OddClosed => self.odd_closed -= 1,
            }
        }
    }

    fn run(&mut self) {
        self.descend(0);
    }

    /// Returns true once a 2-factor without odd circuits has been found.
    fn descend(&mut self, from: VertexId) -> bool {
        let g = self.g;
        let Some(v) = (from..g.vertex_count()).find(|&v| self.mate_edge[v].is_none()) else {
            if self.odd_closed < self.best {
                self.best = self.odd_closed;
                let mut m: Vec<EdgeId> = g
                    .edges()
                    .filter(|&(e, u, _)| self.mate_edge[u] == Some(e))
                    .map(|(e, _, _)| e)
                    .collect();
                m.sort_unstable();
                self.best_matching = Some(m);
            }
            return self.best == 0;
        };
        for &e in g.incident(v) {
            let w = g.opposite(e, v);
            if self.mate_edge[w].is_some() {
                continue;
            }
            let mark = self.undo.len();
            self.mate_edge[v] = Some(e);
            self.mate_edge[w] = Some(e);
            for x in [v, w] {
                for &f in g.incident(x) {
                    if f != e && !self.in_factor[f] {
                        self.add_factor_edge(f);
                    }
                }
            }
            if self.odd_closed < self.best && self.descend(v + 1) {
                return true;
            }
            self.rollback(mark);
            self.mate_edge[v] = None;
            self.mate_edge[w] = None;
        }
        false
    }
}
