use super::{exact_coloring, greedy_recolor, Coloring, VertexOrder, DEFAULT_VERTEX_CAP};
use crate::hypergraph::Hypergraph;

/// Which procedure produced the coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EflWitness {
    Greedy,
    Exact,
    /// No vertices: nothing to color.
    Trivial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EflResult {
    /// A proper coloring with at most `n` colors was found.
    pub found: bool,
    pub coloring: Option<Coloring>,
    pub witness: Option<EflWitness>,
}

/// Looks for a proper coloring with at most `n` colors, `n` the number of
/// edges: greedy recoloring with palette `n` in id order first, then the
/// exact oracle when the instance is small enough. `found == false` only
/// means neither route produced one.
pub fn efl_check(h: &Hypergraph) -> EflResult {
    let n = h.size();
    if h.num_vertices() == 0 {
        return EflResult {
            found: true,
            coloring: None,
            witness: Some(EflWitness::Trivial),
        };
    }
    let not_found = EflResult {
        found: false,
        coloring: None,
        witness: None,
    };
    if n == 0 {
        return not_found;
    }

    let order = VertexOrder::ById.resolve(h.num_vertices());
    if let Ok(outcome) = greedy_recolor(h, n as u32, &order) {
        if let Some(c) = outcome.coloring() {
            return EflResult {
                found: true,
                coloring: Some(c.clone()),
                witness: Some(EflWitness::Greedy),
            };
        }
    }
    match exact_coloring(h, DEFAULT_VERTEX_CAP) {
        Ok(Some(c)) if c.colors_used() <= n => EflResult {
            found: true,
            coloring: Some(c),
            witness: Some(EflWitness::Exact),
        },
        _ => not_found,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::is_proper;
    use crate::generators;

    #[test]
    fn fano() {
        let h = generators::projective_plane(2).unwrap();
        let res = efl_check(&h);
        assert!(res.found);
        let c = res.coloring.unwrap();
        assert!(is_proper(&h, &c));
        assert_eq!(c.colors_used(), 7);
    }

    #[test]
    fn two_disjoint_edges() {
        let h = Hypergraph::build(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let res = efl_check(&h);
        assert!(res.found);
        assert_eq!(res.coloring.unwrap().colors_used(), 2);
    }

    #[test]
    fn sunflowers() {
        for n in 2..10 {
            let h = generators::sunflower(n, 2).unwrap();
            let res = efl_check(&h);
            assert!(res.found);
            assert!(res.coloring.unwrap().colors_used() <= n);
        }
    }

    #[test]
    fn exact_fallback_after_greedy_abort() {
        // Rank-3 edge plus a pendant: palette n = 2 cannot hold a triple.
        let h = Hypergraph::build(4, vec![vec![0, 1, 2], vec![2, 3]]).unwrap();
        let res = efl_check(&h);
        assert!(!res.found);
        assert!(res.coloring.is_none());
    }
}
