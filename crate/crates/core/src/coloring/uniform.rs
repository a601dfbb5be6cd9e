//! Degree-ordered coloring of uniform linear hypergraphs that have a vertex
//! lying in at least half of the edges, within `⌊1.25n⌋` colors.
//!
//! Vertices are colored by non-increasing degree. Degrees of five and above
//! take the smallest free color. For each degree `d` in 4, 3, 2 the vertices
//! are split into `A_d` (meeting none of the pivot's edges) and `B_d` (the
//! rest); `A_d` is colored first. A `B_2` vertex whose two edges leave no
//! common free color tries the exchange through a third edge `E_k` holding
//! degree-two vertices `p` (on the pivot edge) and `q` (on the other edge).
//! Degree 1 and 0 vertices come last.

use std::collections::BTreeSet;

use serde::Serialize;

use super::{edge_colors, mark_closed_neighborhood, smallest_unseen, Color, Coloring};
use crate::error::ColoringError;
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};

/// `⌊1.25·n⌋`
pub fn uniform_palette(n: usize) -> Color {
    (5 * n / 4) as Color
}

/// Degree class split against the pivot's edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreePartition {
    pub degree: usize,
    /// Degree-`d` vertices on none of the pivot edges.
    pub a: Vec<VertexId>,
    pub b: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformColorState {
    pub pivot_vertex: VertexId,
    pub pivot_edges: Vec<EdgeId>,
    /// Degrees 4, 3 and 2, in that order.
    pub partitions: Vec<DegreePartition>,
}

/// An exchange performed for a `B_2` vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapStep {
    pub vertex: VertexId,
    /// Edge of `vertex` through the pivot.
    pub e_i: EdgeId,
    pub e_j: EdgeId,
    pub e_k: EdgeId,
    pub p: VertexId,
    pub q: VertexId,
    pub moved: VertexId,
    pub from: Color,
    pub to: Color,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Phase {
    HighDegree,
    PartitionA { degree: usize },
    PartitionB { degree: usize },
    LowDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureReport {
    pub vertex: VertexId,
    pub phase: Phase,
    pub palette_size: Color,
    pub state: UniformColorState,
    pub partial: Vec<Color>,
    /// For a `B_2` failure: the two edges at the vertex and their free color sets.
    pub b2_edges: Option<(EdgeId, EdgeId)>,
    pub free_x: Vec<Color>,
    pub free_y: Vec<Color>,
    pub swaps: Vec<SwapStep>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformSuccess {
    pub coloring: Coloring,
    pub palette_size: Color,
    pub state: UniformColorState,
    pub swaps: Vec<SwapStep>,
}

/// Runs the procedure with the `⌊1.25n⌋` palette.
///
/// The outer error is for inputs outside the hypotheses (not linear, not
/// uniform, or maximum degree below `n/2`); the inner one reports a stuck run.
pub fn uniform_maxdeg_color(
    h: &Hypergraph,
) -> Result<Result<UniformSuccess, Box<FailureReport>>, ColoringError> {
    uniform_maxdeg_color_with_palette(h, uniform_palette(h.size()))
}

pub fn uniform_maxdeg_color_with_palette(
    h: &Hypergraph,
    palette_size: Color,
) -> Result<Result<UniformSuccess, Box<FailureReport>>, ColoringError> {
    let n = h.size();
    if n == 0 {
        return Err(ColoringError::Precondition("hypergraph has no edges".into()));
    }
    if h.uniform_rank().is_none() {
        return Err(ColoringError::Precondition("hypergraph is not uniform".into()));
    }
    if !h.is_linear() {
        return Err(ColoringError::Precondition("hypergraph is not linear".into()));
    }
    if 2 * h.max_degree() < n {
        return Err(ColoringError::Precondition(format!(
            "maximum degree {} is below n/2 = {}",
            h.max_degree(),
            n as f64 / 2.0
        )));
    }
    if palette_size == 0 {
        return Err(ColoringError::EmptyPalette);
    }
    Ok(Run::new(h, palette_size).execute())
}

struct Run<'a> {
    h: &'a Hypergraph,
    palette: Color,
    state: Vec<Color>,
    seen: Vec<bool>,
    layout: UniformColorState,
    swaps: Vec<SwapStep>,
}

impl<'a> Run<'a> {
    fn new(h: &'a Hypergraph, palette: Color) -> Self {
        let max = h.max_degree();
        let pivot = h.vertices().find(|&v| h.degree(v) == max).unwrap_or(0);
        let pivot_edges = h.incident_edges(pivot).to_vec();
        let on_pivot_edge: BTreeSet<VertexId> = pivot_edges
            .iter()
            .flat_map(|&e| h.edge(e).iter().copied())
            .collect();
        let partitions = [4, 3, 2]
            .into_iter()
            .map(|degree| {
                let (b, a): (Vec<_>, Vec<_>) = h
                    .vertices()
                    .filter(|&v| h.degree(v) == degree)
                    .partition(|v| on_pivot_edge.contains(v));
                DegreePartition { degree, a, b }
            })
            .collect();
        Self {
            h,
            palette,
            state: vec![0; h.num_vertices()],
            seen: vec![false; palette as usize + 1],
            layout: UniformColorState {
                pivot_vertex: pivot,
                pivot_edges,
                partitions,
            },
            swaps: Vec::new(),
        }
    }

    fn execute(mut self) -> Result<UniformSuccess, Box<FailureReport>> {
        let h = self.h;
        let mut high: Vec<VertexId> = h.vertices().filter(|&v| h.degree(v) >= 5).collect();
        high.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
        for v in high {
            self.color_smallest(v, Phase::HighDegree)?;
        }

        for part in self.layout.partitions.clone() {
            for &v in &part.a {
                self.color_smallest(v, Phase::PartitionA { degree: part.degree })?;
            }
            for &v in &part.b {
                if part.degree == 2 {
                    self.color_b2(v)?;
                } else {
                    self.color_smallest(v, Phase::PartitionB { degree: part.degree })?;
                }
            }
        }

        let mut low: Vec<VertexId> = h.vertices().filter(|&v| h.degree(v) <= 1).collect();
        low.sort_by_key(|&v| (std::cmp::Reverse(h.degree(v)), v));
        for v in low {
            self.color_smallest(v, Phase::LowDegree)?;
        }

        Ok(UniformSuccess {
            coloring: Coloring::from_complete(self.state),
            palette_size: self.palette,
            state: self.layout,
            swaps: self.swaps,
        })
    }

    fn color_smallest(&mut self, v: VertexId, phase: Phase) -> Result<(), Box<FailureReport>> {
        mark_closed_neighborhood(self.h, &self.state, v, &mut self.seen);
        match smallest_unseen(&self.seen, self.palette) {
            Some(c) => {
                self.state[v] = c;
                Ok(())
            }
            None => Err(self.failure(v, phase, None, Vec::new(), Vec::new())),
        }
    }

    /// Palette colors absent from the colored vertices of `e`.
    fn free_in(&self, e: EdgeId) -> Vec<Color> {
        let mut used = vec![false; self.palette as usize + 1];
        for c in edge_colors(self.h, &self.state, e) {
            if let Some(slot) = used.get_mut(c as usize) {
                *slot = true;
            }
        }
        (1..=self.palette).filter(|&c| !used[c as usize]).collect()
    }

    /// Smallest color, other than `old`, missing from the edges of `x` once
    /// `x` itself is ignored.
    fn replacement(&self, x: VertexId, old: Color) -> Option<Color> {
        let mut used = vec![false; self.palette as usize + 1];
        for &e in self.h.incident_edges(x) {
            for &w in self.h.edge(e) {
                let c = self.state[w];
                if w != x && c != 0 {
                    used[c as usize] = true;
                }
            }
        }
        (1..=self.palette).find(|&c| c != old && !used[c as usize])
    }

    fn color_b2(&mut self, u: VertexId) -> Result<(), Box<FailureReport>> {
        let h = self.h;
        let pivot = self.layout.pivot_vertex;
        let edges = h.incident_edges(u);
        let (e_i, e_j) = if h.edge(edges[0]).binary_search(&pivot).is_ok() {
            (edges[0], edges[1])
        } else {
            (edges[1], edges[0])
        };

        let x = self.free_in(e_i);
        let y = self.free_in(e_j);
        if let Some(&c) = x.iter().find(|c| y.binary_search(c).is_ok()) {
            self.state[u] = c;
            return Ok(());
        }

        for &p in h.edge(e_i) {
            let cp = self.state[p];
            if p == u || cp == 0 || h.degree(p) != 2 || y.binary_search(&cp).is_err() {
                continue;
            }
            let p_edges = h.incident_edges(p);
            let e_k = if p_edges[0] == e_i { p_edges[1] } else { p_edges[0] };
            for &q in h.edge(e_k) {
                let cq = self.state[q];
                if q == p
                    || q == u
                    || cq == 0
                    || h.degree(q) != 2
                    || h.edge(e_j).binary_search(&q).is_err()
                    || x.binary_search(&cq).is_err()
                {
                    continue;
                }
                let attempts = [(p, cp), (q, cq)];
                for (moved, from) in attempts {
                    if let Some(to) = self.replacement(moved, from) {
                        self.state[moved] = to;
                        self.state[u] = from;
                        self.swaps.push(SwapStep {
                            vertex: u,
                            e_i,
                            e_j,
                            e_k,
                            p,
                            q,
                            moved,
                            from,
                            to,
                        });
                        return Ok(());
                    }
                }
            }
        }

        // No exchange partner: fall back to the colors free on both edges,
        // which is empty by now.
        Err(self.failure(u, Phase::PartitionB { degree: 2 }, Some((e_i, e_j)), x, y))
    }

    fn failure(
        &self,
        vertex: VertexId,
        phase: Phase,
        b2_edges: Option<(EdgeId, EdgeId)>,
        free_x: Vec<Color>,
        free_y: Vec<Color>,
    ) -> Box<FailureReport> {
        Box::new(FailureReport {
            vertex,
            phase,
            palette_size: self.palette,
            state: self.layout.clone(),
            partial: self.state.clone(),
            b2_edges,
            free_x,
            free_y,
            swaps: self.swaps.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;
    use crate::generators;

    fn run(h: &Hypergraph) -> UniformSuccess {
        uniform_maxdeg_color(h).unwrap().unwrap()
    }

    #[test]
    fn palette_is_floor() {
        assert_eq!(uniform_palette(10), 12);
        assert_eq!(uniform_palette(20), 25);
        assert_eq!(uniform_palette(7), 8);
    }

    #[test]
    fn rank_two_sunflower() {
        let h = generators::sunflower(8, 2).unwrap();
        let out = run(&h);
        assert_eq!(out.coloring.color(0), 1);
        assert_eq!(out.coloring.colors_used(), 2);
        assert!(verify_coloring(&h, &out.coloring).unwrap().is_empty());
    }

    #[test]
    fn rank_three_sunflower() {
        for n in [3, 5, 9] {
            let h = generators::sunflower(n, 3).unwrap();
            let out = run(&h);
            assert_eq!(out.coloring.colors_used(), 3);
            assert_eq!(out.coloring.color(0), 1);
            assert!(verify_coloring(&h, &out.coloring).unwrap().is_empty());
        }
    }

    #[test]
    fn palette_below_rank_fails() {
        let h = generators::sunflower(2, 3).unwrap();
        let report = uniform_maxdeg_color(&h).unwrap().unwrap_err();
        assert_eq!(report.palette_size, 2);
    }

    #[test]
    fn generated_high_degree_instance() {
        let h = generators::random_uniform_linear(60, 3, 20, true, 5).unwrap();
        let out = run(&h);
        assert!(verify_coloring(&h, &out.coloring).unwrap().is_empty());
        assert!(out.coloring.colors_used() <= 25);
    }

    #[test]
    fn partitions_split_degree_classes() {
        let h = generators::random_uniform_linear(40, 3, 20, true, 3).unwrap();
        let out = run(&h);
        let pivot_edges = &out.state.pivot_edges;
        for part in &out.state.partitions {
            let all: BTreeSet<_> = h.vertices().filter(|&v| h.degree(v) == part.degree).collect();
            let a: BTreeSet<_> = part.a.iter().copied().collect();
            let b: BTreeSet<_> = part.b.iter().copied().collect();
            assert!(a.is_disjoint(&b));
            assert_eq!(&a | &b, all);
            for &v in &part.a {
                assert!(pivot_edges.iter().all(|&e| !h.edge(e).contains(&v)));
            }
            for &v in &part.b {
                assert!(pivot_edges.iter().any(|&e| h.edge(e).contains(&v)));
            }
        }
    }

    #[test]
    fn rejects_inputs_outside_hypotheses() {
        let mixed = Hypergraph::build(5, vec![vec![0, 1], vec![0, 2, 3]]).unwrap();
        assert!(matches!(uniform_maxdeg_color(&mixed), Err(ColoringError::Precondition(_))));
        let nonlinear = Hypergraph::build(4, vec![vec![0, 1, 2], vec![0, 1, 3]]).unwrap();
        assert!(matches!(uniform_maxdeg_color(&nonlinear), Err(ColoringError::Precondition(_))));
        // Perfect matching: every degree is 1 < 4/2.
        let matching =
            Hypergraph::build(8, vec![vec![0, 1], vec![2, 3], vec![4, 5], vec![6, 7]]).unwrap();
        assert!(matches!(uniform_maxdeg_color(&matching), Err(ColoringError::Precondition(_))));
    }

    /// Pivot 0 on e0 = {0,1,2}, e1 = {0,6,7}, e5 = {0,10,11}; u = 2 on e0 and
    /// e2 = {2,3,4}; p = 1 and q = 3 meet on the third edge e3.
    fn exchange_instance(e3: [usize; 3]) -> Hypergraph {
        Hypergraph::build(
            12,
            vec![
                vec![0, 1, 2],
                vec![0, 6, 7],
                vec![2, 3, 4],
                e3.to_vec(),
                vec![4, 8, 9],
                vec![0, 10, 11],
            ],
        )
        .unwrap()
    }

    fn preset<'a>(h: &'a Hypergraph, colors: &[(VertexId, Color)]) -> Run<'a> {
        let mut run = Run::new(h, 4);
        for &(v, c) in colors {
            run.state[v] = c;
        }
        run
    }

    #[test]
    fn b2_exchange_moves_p() {
        let h = exchange_instance([1, 3, 5]);
        assert!(h.is_linear());
        let mut run = preset(&h, &[(0, 1), (1, 2), (3, 3), (4, 4)]);
        assert_eq!(run.layout.pivot_vertex, 0);
        assert_eq!(run.free_in(0), vec![3, 4]);
        assert_eq!(run.free_in(2), vec![1, 2]);
        run.color_b2(2).unwrap();
        // p takes the only color missing around it, u inherits p's old color.
        assert_eq!(run.state[1], 4);
        assert_eq!(run.state[2], 2);
        let step = &run.swaps[0];
        assert_eq!((step.e_i, step.e_j, step.e_k), (0, 2, 3));
        assert_eq!((step.p, step.q, step.moved, step.from, step.to), (1, 3, 1, 2, 4));
    }

    #[test]
    fn b2_exchange_moves_q_when_p_is_stuck() {
        let h = exchange_instance([1, 3, 5]);
        // z = 5 holds color 4, so p has no replacement; q can move to 1.
        let mut run = preset(&h, &[(0, 1), (1, 2), (3, 3), (4, 4), (5, 4)]);
        run.color_b2(2).unwrap();
        assert_eq!(run.state[3], 1);
        assert_eq!(run.state[2], 3);
        assert_eq!(run.swaps[0].moved, 3);
        for e in 0..h.size() {
            let colors: Vec<Color> =
                h.edge(e).iter().map(|&v| run.state[v]).filter(|&c| c != 0).collect();
            let distinct: BTreeSet<_> = colors.iter().collect();
            assert_eq!(distinct.len(), colors.len(), "edge {e}");
        }
    }

    #[test]
    fn b2_without_partner_reports_failure() {
        // p's second edge misses e2 entirely, so no q exists.
        let h = exchange_instance([1, 5, 10]);
        assert!(h.is_linear());
        let mut run = preset(&h, &[(0, 1), (1, 2), (3, 3), (4, 4)]);
        let report = run.color_b2(2).unwrap_err();
        assert_eq!(report.b2_edges, Some((0, 2)));
        assert_eq!(report.free_x, vec![3, 4]);
        assert_eq!(report.free_y, vec![1, 2]);
        assert_eq!(report.phase, Phase::PartitionB { degree: 2 });
    }

    #[test]
    fn failure_report_carries_state() {
        // Single rank-3 edge with a 2-color palette cannot be colored.
        let h = Hypergraph::build(3, vec![vec![0, 1, 2]]).unwrap();
        let report = uniform_maxdeg_color_with_palette(&h, 2).unwrap().unwrap_err();
        assert_eq!(report.phase, Phase::LowDegree);
        assert_eq!(report.vertex, 2);
        assert_eq!(report.state.pivot_vertex, 0);
        assert_eq!(report.partial, vec![1, 2, 0]);
    }
}
