//! Immutable hypergraph model over dense `0..num_vertices` vertex ids.
//!
//! Edges are stored sorted, and a vertex→edge incidence index is kept
//! alongside them so degree, linearity and neighborhood queries never have
//! to scan the whole edge list.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::HypergraphError;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Hypergraph with a fixed vertex count and an ordered list of edges.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph {
    num_vertices: usize,
    edges: Vec<Vec<VertexId>>,
    incidence: Vec<Vec<EdgeId>>,
}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("num_vertices", &self.num_vertices)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph {
    /// Builds a hypergraph, sorting every edge and computing the incidence index.
    pub fn build<E>(num_vertices: usize, edge_list: E) -> Result<Self, HypergraphError>
    where
        E: IntoIterator,
        E::Item: Into<Vec<VertexId>>,
    {
        let mut edges = Vec::new();
        for (index, edge) in edge_list.into_iter().enumerate() {
            let mut edge: Vec<VertexId> = edge.into();
            if let Some(&vertex) = edge.iter().find(|&&v| v >= num_vertices) {
                return Err(HypergraphError::OutOfRangeVertex {
                    edge: index,
                    vertex,
                    num_vertices,
                });
            }
            edge.sort_unstable();
            if let Some(pair) = edge.windows(2).find(|w| w[0] == w[1]) {
                return Err(HypergraphError::DuplicateVertexInEdge {
                    edge: index,
                    vertex: pair[0],
                });
            }
            edges.push(edge);
        }

        let mut incidence = vec![Vec::new(); num_vertices];
        for (e, edge) in edges.iter().enumerate() {
            for &v in edge {
                incidence[v].push(e);
            }
        }

        Ok(Self {
            num_vertices,
            edges,
            incidence,
        })
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    /// Number of edges, the "size" of the hypergraph.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &[VertexId] {
        &self.edges[e]
    }

    /// Edges containing `v`, ascending.
    pub fn incident_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incidence[v].len()
    }

    pub fn rank(&self, e: EdgeId) -> usize {
        self.edges[e].len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.num_vertices
    }

    pub fn max_degree(&self) -> usize {
        self.incidence.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices sharing at least one edge with `v`, excluding `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.incidence[v]
            .iter()
            .flat_map(|&e| self.edges[e].iter().copied())
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True iff `u` and `w` lie together in some edge.
    pub fn adjacent(&self, u: VertexId, w: VertexId) -> bool {
        u != w
            && self.incidence[u]
                .iter()
                .any(|&e| self.edges[e].binary_search(&w).is_ok())
    }

    /// True iff every pair of distinct edges meets in at most one vertex.
    ///
    /// Walks each vertex's incident edge pairs; a pair seen at two different
    /// vertices shares at least two vertices.
    pub fn is_linear(&self) -> bool {
        let mut seen: HashSet<(EdgeId, EdgeId)> = HashSet::new();
        for inc in &self.incidence {
            for (i, &a) in inc.iter().enumerate() {
                for &b in &inc[i + 1..] {
                    if !seen.insert((a, b)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `Some(r)` if every vertex has degree `r`. Absent for the empty hypergraph.
    pub fn regularity(&self) -> Option<usize> {
        let first = self.incidence.first()?.len();
        self.incidence
            .iter()
            .all(|inc| inc.len() == first)
            .then_some(first)
    }

    /// `Some(s)` if every edge has rank `s`. Absent when there are no edges.
    pub fn uniform_rank(&self) -> Option<usize> {
        let first = self.edges.first()?.len();
        self.edges
            .iter()
            .all(|e| e.len() == first)
            .then_some(first)
    }

    /// Transpose of the incidence matrix: one vertex per edge, one edge per vertex.
    pub fn dual(&self) -> Hypergraph {
        Hypergraph {
            num_vertices: self.edges.len(),
            edges: self.incidence.clone(),
            incidence: self.edges.clone(),
        }
    }

    /// Simple graph joining every pair of vertices that share an edge.
    pub fn two_section(&self) -> SimpleGraph {
        let adjacency = self.vertices().map(|v| self.neighbors(v)).collect();
        SimpleGraph { adjacency }
    }

    /// Checks that `incidence` is exactly the transpose of `edges`.
    pub fn validate(&self) -> Result<(), HypergraphError> {
        if self.incidence.len() != self.num_vertices {
            return Err(HypergraphError::IncidenceMismatch { vertex: self.incidence.len() });
        }
        let mut count = 0usize;
        for (e, edge) in self.edges.iter().enumerate() {
            for &v in edge {
                if v >= self.num_vertices || self.incidence[v].binary_search(&e).is_err() {
                    return Err(HypergraphError::IncidenceMismatch { vertex: v });
                }
                count += 1;
            }
        }
        let total: usize = self.incidence.iter().map(Vec::len).sum();
        if total != count {
            let vertex = self
                .vertices()
                .find(|&v| {
                    self.incidence[v]
                        .iter()
                        .any(|&e| e >= self.edges.len() || self.edges[e].binary_search(&v).is_err())
                })
                .unwrap_or(0);
            return Err(HypergraphError::IncidenceMismatch { vertex });
        }
        Ok(())
    }

    pub fn stats(&self) -> HypergraphStats {
        HypergraphStats::of(self)
    }

    pub fn to_instance(&self) -> InstanceFile {
        InstanceFile {
            num_vertices: self.num_vertices,
            edges: self.edges.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_instance()).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, HypergraphError> {
        let raw: InstanceFile =
            serde_json::from_str(text).map_err(|e| HypergraphError::Parse(e.to_string()))?;
        raw.into_hypergraph()
    }
}

/// On-disk instance layout: `{"num_vertices": N, "edges": [[...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub num_vertices: usize,
    pub edges: Vec<Vec<VertexId>>,
}

impl InstanceFile {
    pub fn into_hypergraph(self) -> Result<Hypergraph, HypergraphError> {
        Hypergraph::build(self.num_vertices, self.edges)
    }
}

/// Undirected simple graph as sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<VertexId>>,
}

impl SimpleGraph {
    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: VertexId, w: VertexId) -> bool {
        self.adjacency[u].binary_search(&w).is_ok()
    }

    pub fn num_edges(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, w)` with `u < w`, in lexicographic order.
    pub fn edge_pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, adj)| adj.iter().filter(move |&&w| w > u).map(move |&w| (u, w)))
            .collect()
    }
}

/// Summary of the structural parameters that the coloring bounds depend on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypergraphStats {
    pub size_n: usize,
    pub num_vertices: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    pub is_linear: bool,
    pub regular_degree: Option<usize>,
    pub uniform_rank: Option<usize>,
    /// `⌊n/r⌋·⌊(n−1)/(r−1)⌋`, present when regular with `r ≥ 3` and `n ≥ 1`.
    pub vertex_bound_n: Option<usize>,
}

impl HypergraphStats {
    pub fn of(h: &Hypergraph) -> Self {
        let degrees = h.incidence.iter().map(Vec::len);
        let ranks = h.edges.iter().map(Vec::len);
        let regular_degree = h.regularity();
        let n = h.size();
        let vertex_bound_n = match regular_degree {
            Some(r) if r >= 3 && n >= 1 => Some((n / r) * ((n - 1) / (r - 1))),
            _ => None,
        };
        Self {
            size_n: n,
            num_vertices: h.num_vertices(),
            min_degree: degrees.clone().min().unwrap_or(0),
            max_degree: degrees.max().unwrap_or(0),
            min_rank: ranks.clone().min().unwrap_or(0),
            max_rank: ranks.max().unwrap_or(0),
            is_linear: h.is_linear(),
            regular_degree,
            uniform_rank: h.uniform_rank(),
            vertex_bound_n,
        }
    }

    /// Counting cap `⌊n·⌊(n−1)/(r−1)⌋ / r⌋` on the vertex count of an
    /// `r`-regular linear hypergraph with `n` edges: every edge has rank at
    /// most `⌊(n−1)/(r−1)⌋` and every vertex is counted `r` times.
    pub fn vertex_count_cap(&self) -> Option<usize> {
        match self.regular_degree {
            Some(r) if r >= 3 && self.size_n >= 1 => {
                let n = self.size_n;
                Some(n * ((n - 1) / (r - 1)) / r)
            }
            _ => None,
        }
    }
}
