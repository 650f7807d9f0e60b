//! Loopless multigraphs with dense edge ids, vertex sets and edge cuts.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {edge} is a loop at vertex {vertex}")]
    Loop { edge: EdgeId, vertex: VertexId },
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("edge {edge} out of range (graph has {m} edges)")]
    EdgeOutOfRange { edge: EdgeId, m: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(VertexId),
    #[error("vertex sets overlap at vertex {0}")]
    Overlap(VertexId),
    #[error("malformed edge-list JSON: {0}")]
    Json(String),
}

/// An undirected loopless multigraph on vertices `0..n`.
///
/// Edges carry dense ids `0..m` in insertion order. Parallel edges are
/// distinct edges with distinct ids. The graph is immutable once built.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    ends: Vec<(VertexId, VertexId)>,
    incidence: Vec<Vec<EdgeId>>,
}

impl fmt::Debug for MultiGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MultiGraph")
            .field("n", &self.n)
            .field("edges", &self.ends)
            .finish()
    }
}

impl MultiGraph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut ends = Vec::new();
        let mut incidence = vec![Vec::new(); n];
        for (id, (u, v)) in edges.into_iter().enumerate() {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop { edge: id, vertex: u });
            }
            incidence[u].push(id);
            incidence[v].push(id);
            ends.push((u, v));
        }
        Ok(MultiGraph { n, ends, incidence })
    }

    /// A copy of this graph with `extra` edges appended; existing ids are kept.
    pub fn with_extra_edges<I>(&self, extra: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        MultiGraph::from_edges(self.n, self.ends.iter().copied().chain(extra))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn edge_ids(&self) -> std::ops::Range<EdgeId> {
        0..self.ends.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.ends.iter().enumerate().map(|(e, &(u, v))| (e, u, v))
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.ends[e]
    }

    /// The end of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.ends[e];
        debug_assert!(a == v || b == v, "vertex {v} is not an end of edge {e}");
        if a == v {
            b
        } else {
            a
        }
    }

    /// Incident edge ids in ascending order (parallel edges appear once each).
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence[v].iter().map(move |&e| self.opposite(e, v))
    }

    pub fn is_cubic(&self) -> bool {
        self.vertices().all(|v| self.degree(v) == 3)
    }

    /// True if no two edges share both endpoints.
    pub fn is_simple(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.ends.len());
        self.ends
            .iter()
            .all(|&(u, v)| seen.insert((u.min(v), u.max(v))))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<(), GraphError> {
        if e < self.ends.len() {
            Ok(())
        } else {
            Err(GraphError::EdgeOutOfRange { edge: e, m: self.ends.len() })
        }
    }

    /// Connected components of the graph with the edges in `removed` deleted.
    /// Components are listed by smallest vertex, each sorted ascending.
    pub fn components_without(&self, removed: &[bool]) -> Vec<Vec<VertexId>> {
        let mut label = vec![usize::MAX; self.n];
        let mut comps = Vec::new();
        let mut queue = VecDeque::new();
        for root in self.vertices() {
            if label[root] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut comp = vec![root];
            label[root] = id;
            queue.push_back(root);
            while let Some(v) = queue.pop_front() {
                for &e in self.incident(v) {
                    if removed.get(e).copied().unwrap_or(false) {
                        continue;
                    }
                    let w = self.opposite(e, v);
                    if label[w] == usize::MAX {
                        label[w] = id;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.components_without(&[])
    }

    /// Bridges, ascending by edge id. Parallel edges are never bridges.
    pub fn bridges(&self) -> Vec<EdgeId> {
        let n = self.n;
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut bridges = Vec::new();
        let mut time = 0;
        // Iterative DFS: (vertex, edge used to enter, next incidence index).
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = Vec::new();
        for root in self.vertices() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, None, 0));
            while let Some(&mut (v, parent_edge, ref mut idx)) = stack.last_mut() {
                if *idx < self.incidence[v].len() {
                    let e = self.incidence[v][*idx];
                    *idx += 1;
                    if Some(e) == parent_edge {
                        continue;
                    }
                    let w = self.opposite(e, v);
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, Some(e), 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(e), Some(&(p, _, _))) = (parent_edge, stack.last()) {
                        low[p] = low[p].min(low[v]);
                        if low[v] > disc[p] {
                            bridges.push(e);
                        }
                    }
                }
            }
        }
        bridges.sort_unstable();
        bridges
    }

    pub fn to_edge_list(&self) -> EdgeListJson {
        EdgeListJson {
            n: self.n,
            edges: self.ends.iter().map(|&(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_edge_list(list: &EdgeListJson) -> Result<Self, GraphError> {
        MultiGraph::from_edges(list.n, list.edges.iter().map(|&[u, v]| (u, v)))
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let list: EdgeListJson =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        MultiGraph::from_edge_list(&list)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_edge_list()).expect("edge list serializes")
    }
}

/// The multigraph interchange format: `{"n": .., "edges": [[u, v], ...]}`.
/// Edge ids are positions in `edges`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// A set of vertices of one graph, kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet {
    members: Vec<VertexId>,
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.members).finish()
    }
}

impl VertexSet {
    pub fn new<I>(g: &MultiGraph, ids: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = VertexId>,
    {
        let mut members: Vec<VertexId> = ids.into_iter().collect();
        for &v in &members {
            g.check_vertex(v)?;
        }
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0]));
        }
        Ok(VertexSet { members })
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet {
            members: mask
                .iter()
                .enumerate()
                .filter_map(|(v, &b)| b.then_some(v))
                .collect(),
        }
    }

    pub fn all(g: &MultiGraph) -> Self {
        VertexSet { members: g.vertices().collect() }
    }

    pub fn empty() -> Self {
        VertexSet { members: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn as_slice(&self) -> &[VertexId] {
        &self.members
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.members {
            mask[v] = true;
        }
        mask
    }

    pub fn complement(&self, g: &MultiGraph) -> Self {
        let mask = self.mask(g.vertex_count());
        VertexSet::from_mask(&mask.iter().map(|b| !b).collect::<Vec<_>>())
    }

    pub fn intersection(&self, other: &VertexSet) -> Self {
        VertexSet {
            members: self.iter().filter(|&v| other.contains(v)).collect(),
        }
    }
}

/// The edges with exactly one end in `side`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeCut {
    pub side: VertexSet,
    pub edges: Vec<EdgeId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color_counts: Option<[usize; 4]>,
}

impl EdgeCut {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn edge_cut(g: &MultiGraph, side: &VertexSet) -> Result<EdgeCut, GraphError> {
    for v in side.iter() {
        g.check_vertex(v)?;
    }
    let mask = side.mask(g.vertex_count());
    Ok(EdgeCut {
        side: side.clone(),
        edges: cut_edges(g, &mask),
        color_counts: None,
    })
}

/// Edge ids of the cut defined by a membership mask, ascending.
pub fn cut_edges(g: &MultiGraph, inside: &[bool]) -> Vec<EdgeId> {
    g.edges()
        .filter(|&(_, u, v)| inside[u] != inside[v])
        .map(|(e, _, _)| e)
        .collect()
}

/// Edges with one end in `u` and the other in `w`; the sets must be disjoint.
pub fn pair_cut(g: &MultiGraph, u: &VertexSet, w: &VertexSet) -> Result<Vec<EdgeId>, GraphError> {
    for v in u.iter().chain(w.iter()) {
        g.check_vertex(v)?;
    }
    if let Some(v) = u.iter().find(|&v| w.contains(v)) {
        return Err(GraphError::Overlap(v));
    }
    let (in_u, in_w) = (u.mask(g.vertex_count()), w.mask(g.vertex_count()));
    Ok(g.edges()
        .filter(|&(_, a, b)| (in_u[a] && in_w[b]) || (in_u[b] && in_w[a]))
        .map(|(e, _, _)| e)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicChecks {
    pub is_cubic: bool,
    pub is_connected: bool,
    pub is_bridgeless: bool,
    pub components: Vec<Vec<VertexId>>,
}

pub fn basic_checks(g: &MultiGraph) -> BasicChecks {
    let components = g.components();
    BasicChecks {
        is_cubic: g.is_cubic(),
        is_connected: components.len() <= 1,
        is_bridgeless: g.bridges().is_empty(),
        components,
    }
}
