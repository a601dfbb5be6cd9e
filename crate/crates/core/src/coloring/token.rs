//! Recount of the charging argument behind the color budget, performed on a
//! concrete abort.
//!
//! Every member `s` of the conflict set lies in exactly one edge `E(s)`
//! through the aborted vertex. It places one token on each colored vertex it
//! sees outside `E(s)` whose color does not occur in `E(s)`. In an `r`-regular
//! linear hypergraph a vertex inside the aborted vertex's edges receives at
//! most `(r−1)²` tokens, any other vertex at most `r(r−1)`, and every member
//! places at least `palette − max rank` tokens.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{edge_colors, mark_closed_neighborhood, AbortReport, Color};
use crate::error::ColoringError;
use crate::hypergraph::{Hypergraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenAudit {
    pub r: usize,
    pub palette_size: Color,
    pub tokens_per_vertex: BTreeMap<VertexId, usize>,
    pub tokens_per_member: BTreeMap<VertexId, usize>,
    pub total_tokens: usize,
    pub min_tokens_per_member: usize,
    /// `(r−1)²`
    pub inside_cap: usize,
    /// `r(r−1)`
    pub outside_cap: usize,
    /// `palette − max rank`, may be negative for tiny palettes.
    pub member_floor: i64,
    /// Vertices of the edges through the aborted vertex.
    pub inside: BTreeSet<VertexId>,
    /// Members that could in fact be recolored.
    pub recolorable_members: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TokenViolation {
    InsideCap { vertex: VertexId, tokens: usize },
    OutsideCap { vertex: VertexId, tokens: usize },
    MemberFloor { member: VertexId, tokens: usize },
    RecolorableMember { member: VertexId },
}

impl TokenAudit {
    pub fn violations(&self) -> Vec<TokenViolation> {
        let mut out = Vec::new();
        for (&vertex, &tokens) in &self.tokens_per_vertex {
            if self.inside.contains(&vertex) {
                if tokens > self.inside_cap {
                    out.push(TokenViolation::InsideCap { vertex, tokens });
                }
            } else if tokens > self.outside_cap {
                out.push(TokenViolation::OutsideCap { vertex, tokens });
            }
        }
        for (&member, &tokens) in &self.tokens_per_member {
            if (tokens as i64) < self.member_floor {
                out.push(TokenViolation::MemberFloor { member, tokens });
            }
        }
        out.extend(
            self.recolorable_members
                .iter()
                .map(|&member| TokenViolation::RecolorableMember { member }),
        );
        out
    }

    pub fn holds(&self) -> bool {
        self.violations().is_empty()
    }

    pub fn max_inside(&self) -> usize {
        self.tokens_per_vertex
            .iter()
            .filter(|(v, _)| self.inside.contains(v))
            .map(|(_, &t)| t)
            .max()
            .unwrap_or(0)
    }

    pub fn max_outside(&self) -> usize {
        self.tokens_per_vertex
            .iter()
            .filter(|(v, _)| !self.inside.contains(v))
            .map(|(_, &t)| t)
            .max()
            .unwrap_or(0)
    }
}

pub fn token_audit(h: &Hypergraph, abort: &AbortReport) -> Result<TokenAudit, ColoringError> {
    let r = h.regularity().ok_or(ColoringError::NotRegular)?;
    let state = &abort.partial;
    if state.len() != h.num_vertices() {
        return Err(ColoringError::Precondition(
            "abort report does not belong to this hypergraph".into(),
        ));
    }
    let v = abort.aborted_vertex;
    let inside: BTreeSet<VertexId> = h
        .incident_edges(v)
        .iter()
        .flat_map(|&e| h.edge(e).iter().copied())
        .collect();

    let palette = abort.palette_size as usize;
    let mut seen = vec![false; palette + 1];
    let mut in_edge = vec![false; palette + 1];
    let mut tokens_per_vertex: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut tokens_per_member = BTreeMap::new();
    let mut recolorable_members = Vec::new();

    for &s in &abort.conflict_set {
        let shared = h
            .incident_edges(s)
            .iter()
            .copied()
            .find(|e| h.incident_edges(v).binary_search(e).is_ok())
            .ok_or_else(|| {
                ColoringError::Precondition(format!("member {s} shares no edge with vertex {v}"))
            })?;

        mark_closed_neighborhood(h, state, s, &mut seen);
        if seen[1..].iter().any(|&present| !present) {
            recolorable_members.push(s);
        }

        in_edge.iter_mut().for_each(|x| *x = false);
        for c in edge_colors(h, state, shared) {
            if let Some(slot) = in_edge.get_mut(c as usize) {
                *slot = true;
            }
        }
        let shared_edge = h.edge(shared);
        let mut placed = 0;
        for u in h.neighbors(s) {
            let c = state[u] as usize;
            if c == 0 || shared_edge.binary_search(&u).is_ok() {
                continue;
            }
            if !in_edge.get(c).copied().unwrap_or(false) {
                *tokens_per_vertex.entry(u).or_default() += 1;
                placed += 1;
            }
        }
        tokens_per_member.insert(s, placed);
    }

    Ok(TokenAudit {
        r,
        palette_size: abort.palette_size,
        total_tokens: tokens_per_vertex.values().sum(),
        min_tokens_per_member: tokens_per_member.values().copied().min().unwrap_or(0),
        tokens_per_vertex,
        tokens_per_member,
        inside_cap: (r.saturating_sub(1)).pow(2),
        outside_cap: r * r.saturating_sub(1),
        member_floor: abort.palette_size as i64 - h.max_rank() as i64,
        inside,
        recolorable_members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{greedy_recolor, VertexOrder};
    use crate::generators;

    /// Straight enumeration over all vertex pairs, independent of the
    /// neighbor lists used by `token_audit`.
    fn brute_force_tokens(h: &Hypergraph, abort: &AbortReport) -> BTreeMap<VertexId, usize> {
        let v = abort.aborted_vertex;
        let state = &abort.partial;
        let mut out = BTreeMap::new();
        for &s in &abort.conflict_set {
            let shared = (0..h.size())
                .find(|&e| h.edge(e).contains(&s) && h.edge(e).contains(&v))
                .unwrap();
            let shared_colors: Vec<Color> = h
                .edge(shared)
                .iter()
                .map(|&x| state[x])
                .filter(|&c| c != 0)
                .collect();
            for (u, &color) in state.iter().enumerate() {
                let sees = u != s && (0..h.size()).any(|e| h.edge(e).contains(&s) && h.edge(e).contains(&u));
                if sees && color != 0 && !h.edge(shared).contains(&u) && !shared_colors.contains(&color)
                {
                    *out.entry(u).or_default() += 1;
                }
            }
        }
        out
    }

    #[test]
    fn fano_six_colors() {
        let h = generators::projective_plane(2).unwrap();
        let order = VertexOrder::ById.resolve(7);
        let out = greedy_recolor(&h, 6, &order).unwrap();
        let abort = out.abort().unwrap();
        let audit = token_audit(&h, abort).unwrap();
        assert_eq!(audit.tokens_per_vertex, brute_force_tokens(&h, abort));
        assert!(audit.tokens_per_vertex.values().all(|&t| t <= 6));
        assert_eq!((audit.inside_cap, audit.outside_cap), (4, 6));
        assert!(audit.holds(), "{:?}", audit.violations());
    }

    #[test]
    fn degenerate_palette() {
        let h = generators::projective_plane(3).unwrap();
        let order = VertexOrder::ById.resolve(h.num_vertices());
        let out = greedy_recolor(&h, 1, &order).unwrap();
        let abort = out.abort().unwrap();
        assert_eq!(abort.conflict_set.len(), 1);
        let audit = token_audit(&h, abort).unwrap();
        assert!(audit.holds(), "{:?}", audit.violations());
        assert_eq!(audit.tokens_per_vertex, brute_force_tokens(&h, abort));
    }

    #[test]
    fn random_four_regular_undersized() {
        let h = generators::random_regular_linear(30, 4, 11).unwrap();
        let mut audited = 0;
        for palette in 4..12 {
            for seed in 0..5 {
                let order = VertexOrder::Random(seed).resolve(h.num_vertices());
                if let Some(abort) = greedy_recolor(&h, palette, &order).unwrap().abort() {
                    let audit = token_audit(&h, abort).unwrap();
                    assert_eq!((audit.inside_cap, audit.outside_cap), (9, 12));
                    assert_eq!(audit.tokens_per_vertex, brute_force_tokens(&h, abort));
                    assert!(audit.holds(), "{:?}", audit.violations());
                    audited += 1;
                }
            }
        }
        assert!(audited > 0);
    }

    #[test]
    fn needs_regularity() {
        let h = Hypergraph::build(3, vec![vec![0, 1], vec![0, 2]]).unwrap();
        let abort = greedy_recolor(&h, 1, &[0, 1, 2]).unwrap().abort().cloned().unwrap();
        assert_eq!(token_audit(&h, &abort), Err(ColoringError::NotRegular));
    }
}
