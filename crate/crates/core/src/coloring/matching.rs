use crate::hypergraph::{EdgeId, Hypergraph};

/// Up to this many edges the matching is maximized exactly by backtracking.
pub const EXACT_MATCHING_EDGE_CAP: usize = 20;

/// Size of a set of pairwise disjoint edges: maximum when the hypergraph has
/// at most [`EXACT_MATCHING_EDGE_CAP`] edges, otherwise the greedy maximal
/// matching in edge order.
pub fn matching_lower_bound(h: &Hypergraph) -> usize {
    if h.size() <= EXACT_MATCHING_EDGE_CAP {
        let mut used = vec![false; h.num_vertices()];
        let mut best = 0;
        max_matching(h, 0, 0, &mut used, &mut best);
        best
    } else {
        greedy_matching(h).len()
    }
}

pub(crate) fn greedy_matching(h: &Hypergraph) -> Vec<EdgeId> {
    let mut used = vec![false; h.num_vertices()];
    let mut chosen = Vec::new();
    for (e, edge) in h.edges().iter().enumerate() {
        if edge.iter().all(|&v| !used[v]) {
            edge.iter().for_each(|&v| used[v] = true);
            chosen.push(e);
        }
    }
    chosen
}

fn max_matching(h: &Hypergraph, next: EdgeId, size: usize, used: &mut [bool], best: &mut usize) {
    *best = (*best).max(size);
    if next == h.size() || size + (h.size() - next) <= *best {
        return;
    }
    let edge = h.edge(next);
    if edge.iter().all(|&v| !used[v]) {
        edge.iter().for_each(|&v| used[v] = true);
        max_matching(h, next + 1, size + 1, used, best);
        edge.iter().for_each(|&v| used[v] = false);
    }
    max_matching(h, next + 1, size, used, best);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;

    #[test]
    fn examples() {
        let h = Hypergraph::build(6, vec![vec![0, 1], vec![2, 3], vec![4, 5]]).unwrap();
        assert_eq!(matching_lower_bound(&h), 3);
        assert_eq!(matching_lower_bound(&generators::projective_plane(2).unwrap()), 1);
        assert_eq!(matching_lower_bound(&generators::sunflower(6, 3).unwrap()), 1);
    }

    #[test]
    fn exact_beats_greedy_order() {
        // Greedy takes {1,2} first and blocks both others.
        let h = Hypergraph::build(4, vec![vec![1, 2], vec![0, 1], vec![2, 3]]).unwrap();
        assert_eq!(greedy_matching(&h), vec![0]);
        assert_eq!(matching_lower_bound(&h), 2);
    }

    #[test]
    fn large_uses_greedy() {
        let h = Hypergraph::build(60, (0..30).map(|i| vec![2 * i, 2 * i + 1])).unwrap();
        assert_eq!(matching_lower_bound(&h), 30);
    }
}
