//! Exact chromatic number of small hypergraphs via branch and bound on the
//! 2-section, with bitmask adjacency (at most 63 vertices).

use super::{Color, Coloring};
use crate::error::ColoringError;
use crate::hypergraph::Hypergraph;

pub const DEFAULT_VERTEX_CAP: usize = 20;
// Color bits live in a u64 next to bit 0, so 63 colors at most.
const HARD_CAP: usize = 63;

/// Minimum number of colors of a proper coloring; `0` for a vertex-free input.
pub fn exact_chromatic(h: &Hypergraph, vertex_cap: usize) -> Result<usize, ColoringError> {
    Ok(exact_coloring(h, vertex_cap)?.map_or(0, |c| c.colors_used()))
}

/// An optimal coloring, or `None` when there are no vertices.
pub fn exact_coloring(h: &Hypergraph, vertex_cap: usize) -> Result<Option<Coloring>, ColoringError> {
    let n = h.num_vertices();
    let cap = vertex_cap.min(HARD_CAP);
    if n > cap {
        return Err(ColoringError::TooLarge { num_vertices: n, cap });
    }
    if n == 0 {
        return Ok(None);
    }

    let graph = h.two_section();
    let adj: Vec<u64> = (0..n)
        .map(|v| graph.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect();

    let lower = max_clique(&adj);
    let mut best = dsatur(&adj, usize::MAX).expect("unbounded palette always succeeds");
    let mut upper = count_colors(&best);

    while upper > lower {
        match dsatur(&adj, upper - 1) {
            Some(found) => {
                upper = count_colors(&found);
                best = found;
            }
            None => break,
        }
    }
    Ok(Some(Coloring::from_complete(best)))
}

fn count_colors(colors: &[Color]) -> usize {
    colors.iter().copied().max().unwrap_or(0) as usize
}

fn max_clique(adj: &[u64]) -> usize {
    fn expand(adj: &[u64], size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !(1 << v);
            expand(adj, size + 1, cand & adj[v], best);
        }
    }
    let all = (1u64 << adj.len()) - 1;
    let mut best = 0;
    expand(adj, 0, all, &mut best);
    best
}

/// Backtracking DSatur: colors every vertex with at most `limit` colors or
/// proves that impossible. With `limit = usize::MAX` the first leaf is the
/// plain greedy DSatur coloring.
fn dsatur(adj: &[u64], limit: usize) -> Option<Vec<Color>> {
    let n = adj.len();
    let mut colors = vec![0 as Color; n];
    // forbidden[v] bit c set when a neighbor of v holds color c (c < 64)
    let mut forbidden = vec![0u64; n];
    let limit = limit.min(n);
    if search(adj, &mut colors, &mut forbidden, 0, limit) {
        Some(colors)
    } else {
        None
    }
}

fn search(adj: &[u64], colors: &mut [Color], forbidden: &mut [u64], used: usize, limit: usize) -> bool {
    let next = (0..adj.len())
        .filter(|&v| colors[v] == 0)
        .max_by_key(|&v| {
            let uncolored_deg = (0..adj.len())
                .filter(|&w| colors[w] == 0 && adj[v] >> w & 1 == 1)
                .count();
            (forbidden[v].count_ones(), uncolored_deg, std::cmp::Reverse(v))
        });
    let Some(v) = next else {
        return true;
    };

    let top = (used + 1).min(limit);
    for c in 1..=top {
        if forbidden[v] >> c & 1 == 1 {
            continue;
        }
        colors[v] = c as Color;
        let saved: Vec<(usize, u64)> = neighbors(adj[v]).map(|w| (w, forbidden[w])).collect();
        for &(w, _) in &saved {
            forbidden[w] |= 1 << c;
        }
        if search(adj, colors, forbidden, used.max(c), limit) {
            return true;
        }
        for (w, mask) in saved {
            forbidden[w] = mask;
        }
        colors[v] = 0;
    }
    false
}

fn neighbors(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(w)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generators;

    /// Tries every assignment of `k` colors; only for tiny inputs.
    fn brute_force_chromatic(h: &Hypergraph) -> usize {
        let n = h.num_vertices();
        for k in 1..=n {
            let mut assign = vec![0usize; n];
            loop {
                let ok = h.edges().iter().all(|e| {
                    e.iter()
                        .enumerate()
                        .all(|(i, &u)| e[i + 1..].iter().all(|&w| assign[u] != assign[w]))
                });
                if ok {
                    return k;
                }
                let mut i = 0;
                while i < n && assign[i] == k - 1 {
                    assign[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
                assign[i] += 1;
            }
        }
        0
    }

    #[test]
    fn single_edges() {
        for k in 1..=6 {
            let h = Hypergraph::build(k, vec![(0..k).collect::<Vec<_>>()]).unwrap();
            assert_eq!(exact_chromatic(&h, 20).unwrap(), k);
        }
    }

    #[test]
    fn disjoint_triples() {
        let h = Hypergraph::build(6, vec![vec![0, 1, 2], vec![3, 4, 5]]).unwrap();
        assert_eq!(exact_chromatic(&h, 20).unwrap(), 3);
    }

    #[test]
    fn fano_needs_seven() {
        let h = generators::projective_plane(2).unwrap();
        assert_eq!(exact_chromatic(&h, 20).unwrap(), 7);
    }

    #[test]
    fn odd_cycle_needs_three() {
        let h = Hypergraph::build(5, (0..5).map(|i| vec![i, (i + 1) % 5])).unwrap();
        assert_eq!(exact_chromatic(&h, 20).unwrap(), 3);
        assert_eq!(brute_force_chromatic(&h), 3);
    }

    #[test]
    fn matches_brute_force_on_small_random() {
        for seed in 0..12 {
            let h = generators::random_uniform_linear(8, 3, 5, false, seed).unwrap();
            let c = exact_coloring(&h, 20).unwrap().unwrap();
            assert!(is_proper(&h, &c));
            assert_eq!(c.colors_used(), brute_force_chromatic(&h), "seed {seed}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let h = generators::projective_plane(5).unwrap();
        assert_eq!(
            exact_chromatic(&h, 20),
            Err(ColoringError::TooLarge { num_vertices: 31, cap: 20 })
        );
        assert!(exact_chromatic(&h, 40).is_ok());
    }

    #[test]
    fn empty_vertex_set() {
        let h = Hypergraph::build(0, Vec::<Vec<usize>>::new()).unwrap();
        assert_eq!(exact_chromatic(&h, 20), Ok(0));
    }
}
