//! Smallest-color greedy with a one-level recoloring fallback.
//!
//! Each vertex takes the smallest palette color absent from the edges through
//! it. When every color is present, the procedure looks for a color `c` whose
//! holders in that neighborhood can all move to a color absent from their own
//! neighborhoods; those holders are moved and the vertex takes `c`. Holders are
//! only ever moved to colors that are completely free around them, so a move
//! never forces a further move.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{mark_closed_neighborhood, smallest_unseen, Color, Coloring};
use crate::error::ColoringError;
use crate::hypergraph::{Hypergraph, VertexId};

/// Order in which vertices are colored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexOrder {
    /// Ascending vertex id.
    ById,
    /// Seeded uniform shuffle.
    Random(u64),
    Explicit(Vec<VertexId>),
}

impl VertexOrder {
    pub fn resolve(&self, num_vertices: usize) -> Vec<VertexId> {
        match self {
            VertexOrder::ById => (0..num_vertices).collect(),
            VertexOrder::Random(seed) => {
                let mut order: Vec<VertexId> = (0..num_vertices).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
                order
            }
            VertexOrder::Explicit(order) => order.clone(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GreedyStats {
    /// Vertices that needed the recoloring fallback.
    pub fallback_steps: usize,
    pub recolored_vertices: usize,
    /// Times a candidate color had more holders in the neighborhood than the
    /// vertex has edges. Zero whenever the partial coloring is proper.
    pub multiplicity_violations: usize,
}

/// Snapshot taken when every palette color is blocked at some vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbortReport {
    pub aborted_vertex: VertexId,
    /// Position of `aborted_vertex` in the coloring order.
    pub step: usize,
    pub palette_size: Color,
    /// One non-recolorable holder per color.
    pub conflict_set: BTreeSet<VertexId>,
    pub per_color_blocker: BTreeMap<Color, VertexId>,
    /// Working colors at abort time, `0` for uncolored vertices.
    pub partial: Vec<Color>,
    pub stats: GreedyStats,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    Colored { coloring: Coloring, stats: GreedyStats },
    Aborted(AbortReport),
}

impl GreedyOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            GreedyOutcome::Colored { coloring, .. } => Some(coloring),
            GreedyOutcome::Aborted(_) => None,
        }
    }

    pub fn abort(&self) -> Option<&AbortReport> {
        match self {
            GreedyOutcome::Aborted(report) => Some(report),
            GreedyOutcome::Colored { .. } => None,
        }
    }

    pub fn is_colored(&self) -> bool {
        matches!(self, GreedyOutcome::Colored { .. })
    }
}

/// Colors `h` in `order` from the palette `1..=palette_size`.
///
/// Ties resolve to the smallest color, then the smallest vertex id: candidate
/// colors `c`, holders of `c` and replacement colors are all scanned in
/// ascending order.
pub fn greedy_recolor(
    h: &Hypergraph,
    palette_size: Color,
    order: &[VertexId],
) -> Result<GreedyOutcome, ColoringError> {
    if palette_size == 0 {
        return Err(ColoringError::EmptyPalette);
    }
    check_permutation(order, h.num_vertices())?;

    let palette = palette_size as usize;
    let mut state: Vec<Color> = vec![0; h.num_vertices()];
    let mut seen = vec![false; palette + 1];
    let mut stats = GreedyStats::default();
    // holders[c] = colored neighbors of the current vertex with color c
    let mut holders: Vec<Vec<VertexId>> = vec![Vec::new(); palette + 1];

    for (step, &v) in order.iter().enumerate() {
        mark_closed_neighborhood(h, &state, v, &mut seen);
        if let Some(c) = smallest_unseen(&seen, palette_size) {
            state[v] = c;
            continue;
        }

        holders.iter_mut().for_each(Vec::clear);
        for u in h.neighbors(v) {
            let c = state[u];
            if c != 0 {
                holders[c as usize].push(u);
            }
        }

        let mut per_color_blocker = BTreeMap::new();
        let mut chosen: Option<(Color, Vec<(VertexId, Color)>)> = None;
        'colors: for c in 1..=palette_size {
            let group = &holders[c as usize];
            if group.len() > h.degree(v) {
                stats.multiplicity_violations += 1;
            }
            let mut moves = Vec::with_capacity(group.len());
            for &vk in group {
                mark_closed_neighborhood(h, &state, vk, &mut seen);
                match smallest_unseen(&seen, palette_size) {
                    Some(ck) => moves.push((vk, ck)),
                    None => {
                        per_color_blocker.insert(c, vk);
                        continue 'colors;
                    }
                }
            }
            chosen = Some((c, moves));
            break;
        }

        match chosen {
            Some((c, moves)) => {
                stats.fallback_steps += 1;
                stats.recolored_vertices += moves.len();
                for (vk, ck) in moves {
                    state[vk] = ck;
                }
                state[v] = c;
            }
            None => {
                return Ok(GreedyOutcome::Aborted(AbortReport {
                    aborted_vertex: v,
                    step,
                    palette_size,
                    conflict_set: per_color_blocker.values().copied().collect(),
                    per_color_blocker,
                    partial: state,
                    stats,
                }));
            }
        }
    }

    Ok(GreedyOutcome::Colored {
        coloring: Coloring::from_complete(state),
        stats,
    })
}

fn check_permutation(order: &[VertexId], n: usize) -> Result<(), ColoringError> {
    if order.len() != n {
        return Err(ColoringError::BadOrder);
    }
    let mut hit = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut hit[v], true) {
            return Err(ColoringError::BadOrder);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{exact_chromatic, verify_coloring};
    use crate::generators;

    fn by_id(h: &Hypergraph) -> Vec<VertexId> {
        VertexOrder::ById.resolve(h.num_vertices())
    }

    #[test]
    fn disjoint_edges_smallest_color() {
        let h = Hypergraph::build(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        let out = greedy_recolor(&h, 3, &by_id(&h)).unwrap();
        assert_eq!(out.coloring().unwrap().as_slice(), &[1, 2, 3, 1, 2, 3]);
    }

    #[test]
    fn fano_with_seven_colors() {
        let h = generators::projective_plane(2).unwrap();
        let out = greedy_recolor(&h, 7, &by_id(&h)).unwrap();
        let c = out.coloring().unwrap();
        assert!(verify_coloring(&h, c).unwrap().is_empty());
        assert_eq!(c.colors_used(), 7);
    }

    #[test]
    fn fano_with_six_colors_aborts() {
        let h = generators::projective_plane(2).unwrap();
        assert_eq!(exact_chromatic(&h, 20).unwrap(), 7);
        let out = greedy_recolor(&h, 6, &by_id(&h)).unwrap();
        let report = out.abort().expect("six colors cannot suffice");
        assert_eq!(report.conflict_set.len(), 6);
        assert_eq!(report.per_color_blocker.len(), 6);
        assert_eq!(report.partial[report.aborted_vertex], 0);
    }

    #[test]
    fn palette_one_aborts_at_second_vertex() {
        let h = generators::projective_plane(2).unwrap();
        let report = greedy_recolor(&h, 1, &by_id(&h)).unwrap().abort().cloned().unwrap();
        assert_eq!(report.step, 1);
        assert_eq!(report.conflict_set.len(), 1);
    }

    #[test]
    fn fallback_moves_a_holder() {
        // Path 0-1-2-3 with palette 2 in order 0, 3, 2, 1: 0→1, 3→1, 2→2, and
        // vertex 1 then sees both colors. Holder 0 of color 1 can move to 2.
        let h = Hypergraph::build(4, vec![vec![0, 1], vec![1, 2], vec![2, 3]]).unwrap();
        let out = greedy_recolor(&h, 2, &[0, 3, 2, 1]).unwrap();
        let GreedyOutcome::Colored { coloring, stats } = out else {
            panic!("expected a coloring")
        };
        assert_eq!(stats.fallback_steps, 1);
        assert_eq!(stats.recolored_vertices, 1);
        assert_eq!(coloring.as_slice(), &[2, 1, 2, 1]);
        assert!(verify_coloring(&h, &coloring).unwrap().is_empty());
    }

    #[test]
    fn rejects_bad_orders() {
        let h = Hypergraph::build(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(greedy_recolor(&h, 3, &[0, 1]), Err(ColoringError::BadOrder));
        assert_eq!(greedy_recolor(&h, 3, &[0, 1, 1]), Err(ColoringError::BadOrder));
        assert_eq!(greedy_recolor(&h, 3, &[0, 1, 3]), Err(ColoringError::BadOrder));
        assert_eq!(greedy_recolor(&h, 0, &[0, 1, 2]), Err(ColoringError::EmptyPalette));
    }

    #[test]
    fn random_order_is_seeded() {
        let a = VertexOrder::Random(9).resolve(50);
        assert_eq!(a, VertexOrder::Random(9).resolve(50));
        assert_ne!(a, VertexOrder::Random(10).resolve(50));
        let mut sorted = a.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..50).collect::<Vec<_>>());
    }
}
