//! Vertex colorings of hypergraphs: the two constructive procedures, the
//! validity check, the abort-time token audit and an exact oracle.
//!
//! Colors are positive integers; `0` is reserved for "uncolored" in the
//! internal working state of the procedures.

mod efl;
mod exact;
mod greedy;
mod matching;
mod token;
mod uniform;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::ColoringError;
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};

pub use efl::{efl_check, EflResult, EflWitness};
pub use exact::{exact_chromatic, exact_coloring, DEFAULT_VERTEX_CAP};
pub use greedy::{greedy_recolor, AbortReport, GreedyOutcome, GreedyStats, VertexOrder};
pub use matching::{matching_lower_bound, EXACT_MATCHING_EDGE_CAP};
pub use token::{token_audit, TokenAudit, TokenViolation};
pub use uniform::{
    uniform_maxdeg_color, uniform_maxdeg_color_with_palette, uniform_palette, FailureReport,
    Phase, SwapStep, UniformColorState, UniformSuccess,
};

pub type Color = u32;

/// Total assignment of a positive color to every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    assignment: Vec<Color>,
}

impl Coloring {
    pub fn new(assignment: Vec<Color>) -> Result<Self, ColoringError> {
        if let Some(v) = assignment.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor(v));
        }
        Ok(Self { assignment })
    }

    /// Internal constructor for working arrays that are known to be complete.
    pub(crate) fn from_complete(assignment: Vec<Color>) -> Self {
        debug_assert!(assignment.iter().all(|&c| c > 0));
        Self { assignment }
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.assignment[v]
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.assignment.get(v).copied()
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.assignment
    }

    /// Number of distinct colors.
    pub fn colors_used(&self) -> usize {
        self.assignment.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn max_color(&self) -> Color {
        self.assignment.iter().copied().max().unwrap_or(0)
    }

    /// `{"0": c0, "1": c1, ...}` keyed by vertex id strings.
    pub fn to_json(&self) -> String {
        // Keys in numeric vertex order, not the lexicographic order a map would give.
        let body: Vec<String> = self
            .assignment
            .iter()
            .enumerate()
            .map(|(v, c)| format!("\"{v}\": {c}"))
            .collect();
        format!("{{{}}}", body.join(", "))
    }

    /// Parses the vertex→color object for a hypergraph with `num_vertices`
    /// vertices; every vertex must be present.
    pub fn from_json(text: &str, num_vertices: usize) -> Result<Self, ColoringError> {
        let raw: BTreeMap<String, i64> =
            serde_json::from_str(text).map_err(|e| ColoringError::Parse(e.to_string()))?;
        let mut assignment = vec![0; num_vertices];
        for (key, color) in raw {
            let v: usize = key
                .parse()
                .map_err(|_| ColoringError::Parse(format!("vertex key {key:?} is not an id")))?;
            if v >= num_vertices {
                return Err(ColoringError::Parse(format!(
                    "vertex {v} out of range for {num_vertices} vertices"
                )));
            }
            if color < 1 || color > Color::MAX as i64 {
                return Err(ColoringError::Parse(format!("vertex {v} has color {color}")));
            }
            assignment[v] = color as Color;
        }
        if let Some(v) = assignment.iter().position(|&c| c == 0) {
            return Err(ColoringError::MissingVertexColor(v));
        }
        Ok(Self { assignment })
    }
}

/// Two vertices of one edge sharing a color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub edge: EdgeId,
    pub u: VertexId,
    pub w: VertexId,
    pub color: Color,
}

/// Every monochromatic vertex pair inside an edge; empty iff the coloring is proper.
pub fn verify_coloring(h: &Hypergraph, coloring: &Coloring) -> Result<Vec<Violation>, ColoringError> {
    if coloring.len() < h.num_vertices() {
        return Err(ColoringError::MissingVertexColor(coloring.len()));
    }
    let mut out = Vec::new();
    for (e, edge) in h.edges().iter().enumerate() {
        for (i, &u) in edge.iter().enumerate() {
            for &w in &edge[i + 1..] {
                let color = coloring.color(u);
                if color == coloring.color(w) {
                    out.push(Violation { edge: e, u, w, color });
                }
            }
        }
    }
    Ok(out)
}

pub fn is_proper(h: &Hypergraph, coloring: &Coloring) -> bool {
    matches!(verify_coloring(h, coloring), Ok(v) if v.is_empty())
}

/// Colors of the colored vertices in `edge`; `0` entries in `state` are skipped.
pub(crate) fn edge_colors<'a>(h: &'a Hypergraph, state: &'a [Color], e: EdgeId) -> impl Iterator<Item = Color> + 'a {
    let edge: &[VertexId] = h.edge(e);
    edge.iter().map(move |&u| state[u]).filter(|&c| c != 0)
}

/// Marks colors present on colored vertices of the edges through `v`,
/// including `v` itself when it is colored.
pub(crate) fn mark_closed_neighborhood(h: &Hypergraph, state: &[Color], v: VertexId, seen: &mut [bool]) {
    seen.iter_mut().for_each(|s| *s = false);
    for &e in h.incident_edges(v) {
        for c in edge_colors(h, state, e) {
            if let Some(slot) = seen.get_mut(c as usize) {
                *slot = true;
            }
        }
    }
}

/// Smallest color in `1..=palette` not flagged in `seen`.
pub(crate) fn smallest_unseen(seen: &[bool], palette: Color) -> Option<Color> {
    (1..=palette).find(|&c| !seen[c as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn verify_single_edge() {
        let h = Hypergraph::build(2, vec![vec![0, 1]]).unwrap();
        let ok = Coloring::new(vec![1, 2]).unwrap();
        assert!(verify_coloring(&h, &ok).unwrap().is_empty());
        let bad = Coloring::new(vec![1, 1]).unwrap();
        assert_eq!(
            verify_coloring(&h, &bad).unwrap(),
            vec![Violation { edge: 0, u: 0, w: 1, color: 1 }]
        );
    }

    #[test]
    fn fano_all_distinct_is_proper() {
        let h = generators::projective_plane(2).unwrap();
        let c = Coloring::new((1..=7).collect()).unwrap();
        assert!(verify_coloring(&h, &c).unwrap().is_empty());
        assert_eq!(c.colors_used(), 7);
    }

    #[test]
    fn verify_rejects_short_coloring() {
        let h = Hypergraph::build(3, vec![vec![0, 1, 2]]).unwrap();
        let c = Coloring::new(vec![1, 2]).unwrap();
        assert_eq!(verify_coloring(&h, &c), Err(ColoringError::MissingVertexColor(2)));
    }

    #[test]
    fn zero_color_rejected() {
        assert_eq!(Coloring::new(vec![1, 0]), Err(ColoringError::ZeroColor(1)));
    }

    #[test]
    fn json_format() {
        let c = Coloring::new((1..=11).collect()).unwrap();
        let text = c.to_json();
        assert!(text.starts_with(r#"{"0": 1, "1": 2, "2": 3"#), "{text}");
        assert_eq!(Coloring::from_json(&text, 11).unwrap(), c);
        assert_eq!(
            Coloring::from_json(r#"{"0": 1, "2": 1}"#, 3),
            Err(ColoringError::MissingVertexColor(1))
        );
        assert!(matches!(
            Coloring::from_json(r#"{"0": 1, "5": 1}"#, 1),
            Err(ColoringError::Parse(_))
        ));
        assert!(matches!(
            Coloring::from_json(r#"{"0": 0}"#, 1),
            Err(ColoringError::Parse(_))
        ));
    }
}
