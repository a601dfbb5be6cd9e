//! Deterministic and seeded constructions of linear hypergraphs.
//!
//! Random regular instances are built in the dual view: each vertex is an
//! `r`-subset of the edge indices `0..n`, and two subsets may share at most
//! one index (a partial Steiner packing). Every vertex then lies in exactly
//! `r` edges, and two edges share at most one vertex.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GeneratorError;
use crate::hypergraph::{Hypergraph, VertexId};

/// Restarts allowed for the randomized generators.
pub const MAX_RESTARTS: usize = 100;
/// Largest supported projective plane order.
pub const MAX_PLANE_ORDER: u64 = 97;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeneratorKind {
    ProjectivePlane,
    Sunflower,
    RandomRegularLinear,
    RandomUniformLinear,
}

impl GeneratorKind {
    pub fn name(self) -> &'static str {
        match self {
            GeneratorKind::ProjectivePlane => "projective_plane",
            GeneratorKind::Sunflower => "sunflower",
            GeneratorKind::RandomRegularLinear => "random_regular_linear",
            GeneratorKind::RandomUniformLinear => "random_uniform_linear",
        }
    }

    /// Parameter names, in the order `GeneratorSpec::params` lists them.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            GeneratorKind::ProjectivePlane => &["q"],
            GeneratorKind::Sunflower => &["n", "rank"],
            GeneratorKind::RandomRegularLinear => &["n", "r"],
            GeneratorKind::RandomUniformLinear => &["num_vertices", "rank", "n_edges", "force_high_degree"],
        }
    }

    pub fn is_seeded(self) -> bool {
        matches!(
            self,
            GeneratorKind::RandomRegularLinear | GeneratorKind::RandomUniformLinear
        )
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GeneratorKind {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "projective_plane" => Ok(GeneratorKind::ProjectivePlane),
            "sunflower" => Ok(GeneratorKind::Sunflower),
            "random_regular_linear" => Ok(GeneratorKind::RandomRegularLinear),
            "random_uniform_linear" => Ok(GeneratorKind::RandomUniformLinear),
            other => Err(GeneratorError::InvalidParameters(format!("unknown generator kind {other:?}"))),
        }
    }
}

/// A generator invocation: kind, positional parameters and seed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub params: Vec<u64>,
    /// Ignored by the deterministic kinds.
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(kind: GeneratorKind, params: Vec<u64>, seed: u64) -> Self {
        Self { kind, params, seed }
    }

    pub fn validate(&self) -> Result<(), GeneratorError> {
        let names = self.kind.param_names();
        if self.params.len() != names.len() {
            return Err(GeneratorError::InvalidParameters(format!(
                "{} takes {} parameters ({}), got {}",
                self.kind,
                names.len(),
                names.join(","),
                self.params.len()
            )));
        }
        if self.kind == GeneratorKind::RandomUniformLinear && self.params[3] > 1 {
            return Err(GeneratorError::InvalidParameters(
                "force_high_degree must be 0 or 1".into(),
            ));
        }
        Ok(())
    }

    pub fn generate(&self) -> Result<Hypergraph, GeneratorError> {
        self.validate()?;
        let p = |i: usize| self.params[i] as usize;
        match self.kind {
            GeneratorKind::ProjectivePlane => projective_plane(self.params[0]),
            GeneratorKind::Sunflower => sunflower(p(0), p(1)),
            GeneratorKind::RandomRegularLinear => random_regular_linear(p(0), p(1), self.seed),
            GeneratorKind::RandomUniformLinear => {
                random_uniform_linear(p(0), p(1), p(2), self.params[3] == 1, self.seed)
            }
        }
    }

    /// Parameters joined with `;` for CSV cells.
    pub fn params_label(&self) -> String {
        self.params
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Projective plane over the prime field of order `q`: points and lines are
/// the normalized nonzero vectors of the 3-dimensional space, and a point
/// lies on a line when their dot product vanishes mod `q`.
pub fn projective_plane(q: u64) -> Result<Hypergraph, GeneratorError> {
    if !is_prime(q) {
        return Err(GeneratorError::NotPrime(q));
    }
    if q > MAX_PLANE_ORDER {
        return Err(GeneratorError::InvalidParameters(format!(
            "plane order {q} above the supported maximum {MAX_PLANE_ORDER}"
        )));
    }
    let mut points = Vec::with_capacity((q * q + q + 1) as usize);
    for y in 0..q {
        for z in 0..q {
            points.push([1, y, z]);
        }
    }
    for z in 0..q {
        points.push([0, 1, z]);
    }
    points.push([0, 0, 1]);

    let lines = points.iter().map(|l| {
        points
            .iter()
            .enumerate()
            .filter(|(_, p)| (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0)
            .map(|(i, _)| i)
            .collect::<Vec<VertexId>>()
    });
    Ok(Hypergraph::build(points.len(), lines.collect::<Vec<_>>()).expect("points are in range"))
}

/// `n` edges of the given rank through the core vertex `0`, petals disjoint.
pub fn sunflower(n: usize, rank: usize) -> Result<Hypergraph, GeneratorError> {
    if n < 2 || rank < 2 {
        return Err(GeneratorError::InvalidParameters(format!(
            "sunflower needs n >= 2 and rank >= 2, got n = {n}, rank = {rank}"
        )));
    }
    let petal = rank - 1;
    let edges = (0..n).map(|i| {
        std::iter::once(0)
            .chain(1 + i * petal..1 + (i + 1) * petal)
            .collect::<Vec<_>>()
    });
    Ok(Hypergraph::build(1 + n * petal, edges.collect::<Vec<_>>()).expect("ids in range"))
}

/// Fixed-size bitset over `0..len`.
#[derive(Clone)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn full(len: usize) -> Self {
        let mut words = vec![u64::MAX; len.div_ceil(64)];
        if !len.is_multiple_of(64) {
            *words.last_mut().unwrap() = (1u64 << (len % 64)) - 1;
        }
        BitRow(words)
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and_with(&mut self, other: &BitRow) {
        self.0.iter_mut().zip(&other.0).for_each(|(a, b)| *a &= b);
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(wi, &w)| {
            let mut m = w;
            std::iter::from_fn(move || {
                if m == 0 {
                    return None;
                }
                let b = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

/// Randomized greedy packing of `r`-subsets of `0..n` with pairwise
/// intersections of size at most one.
#[derive(Clone)]
struct Packing {
    r: usize,
    /// `free[a]` holds every `b` with the pair `{a, b}` still uncovered.
    free: Vec<BitRow>,
    load: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

/// Extension attempts per starting index; attempt `t` picks among candidates
/// whose load is within `t` of the least loaded one.
const EXTENSION_TRIES: usize = 3;

/// Insert-or-evict steps spent lifting every index to load 2.
const REPAIR_ROUNDS: usize = 2_000;

/// Search nodes per attempt to place a block through a given index.
const SEARCH_NODES: usize = 20_000;

impl Packing {
    fn new(n: usize, r: usize) -> Self {
        let free = (0..n)
            .map(|a| {
                let mut row = BitRow::full(n);
                row.clear(a);
                row
            })
            .collect();
        Self {
            r,
            free,
            load: vec![0; n],
            blocks: Vec::new(),
        }
    }

    fn extend_from(&self, start: usize, slack: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
        let mut block = vec![start];
        let mut cand = self.free[start].clone();
        let mut pool = Vec::new();
        while block.len() < self.r {
            pool.clear();
            pool.extend(cand.iter());
            let min = pool.iter().map(|&b| self.load[b]).min()?;
            pool.retain(|&b| self.load[b] <= min + slack);
            let b = pool[rng.random_range(0..pool.len())];
            cand.and_with(&self.free[b]);
            block.push(b);
        }
        block.sort_unstable();
        Some(block)
    }

    fn add(&mut self, block: Vec<usize>) {
        for (i, &a) in block.iter().enumerate() {
            self.load[a] += 1;
            for &b in &block[i + 1..] {
                self.free[a].clear(b);
                self.free[b].clear(a);
            }
        }
        self.blocks.push(block);
    }

    fn remove(&mut self, idx: usize) {
        let block = self.blocks.swap_remove(idx);
        for (i, &a) in block.iter().enumerate() {
            self.load[a] -= 1;
            for &b in &block[i + 1..] {
                self.free[a].set(b);
                self.free[b].set(a);
            }
        }
    }

    /// A block through `start` found by bounded depth-first search over
    /// pairwise-free candidates, least loaded first.
    fn search_from(&self, start: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
        let mut order: Vec<usize> = self.free[start].iter().collect();
        order.shuffle(rng);
        order.sort_by_key(|&b| self.load[b]);
        let mut block = vec![start];
        let mut nodes = SEARCH_NODES;
        if self.dfs(&mut block, &self.free[start], &order, 0, &mut nodes) {
            block.sort_unstable();
            Some(block)
        } else {
            None
        }
    }

    fn dfs(&self, block: &mut Vec<usize>, cand: &BitRow, order: &[usize], from: usize, nodes: &mut usize) -> bool {
        if block.len() == self.r {
            return true;
        }
        for (i, &b) in order.iter().enumerate().skip(from) {
            if !cand.contains(b) {
                continue;
            }
            if *nodes == 0 {
                return false;
            }
            *nodes -= 1;
            let mut next = cand.clone();
            next.and_with(&self.free[b]);
            if next.count() + block.len() + 1 < self.r {
                continue;
            }
            block.push(b);
            if self.dfs(block, &next, order, i + 1, nodes) {
                return true;
            }
            block.pop();
        }
        false
    }

    /// Lifts every index to load at least `target`: a deficient index gets a
    /// new block through it, or a random block elsewhere is evicted to make room.
    fn repair(&mut self, target: usize, rng: &mut ChaCha8Rng) {
        for _ in 0..REPAIR_ROUNDS {
            let deficient: Vec<usize> = (0..self.load.len()).filter(|&a| self.load[a] < target).collect();
            if deficient.is_empty() {
                self.saturate(rng);
                return;
            }
            let start = deficient[rng.random_range(0..deficient.len())];
            match self.search_from(start, rng) {
                Some(block) => self.add(block),
                None => {
                    let others: Vec<usize> = (0..self.blocks.len())
                        .filter(|&i| !self.blocks[i].contains(&start))
                        .collect();
                    if others.is_empty() {
                        return;
                    }
                    self.remove(others[rng.random_range(0..others.len())]);
                }
            }
        }
    }

    /// Adds blocks until a full pass over all starting indices finds none.
    fn saturate(&mut self, rng: &mut ChaCha8Rng) {
        let n = self.load.len();
        let mut starts: Vec<usize> = (0..n).collect();
        'outer: loop {
            starts.shuffle(rng);
            starts.sort_by_key(|&a| self.load[a]);
            for &a in &starts {
                if self.free[a].count() + 1 < self.r {
                    continue;
                }
                for slack in 0..EXTENSION_TRIES {
                    if let Some(block) = self.extend_from(a, slack, rng) {
                        self.add(block);
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }
}

/// An `r`-regular linear hypergraph with exactly `n` edges, every edge of rank
/// at least 2. The vertex count is whatever the saturated packing reaches.
pub fn random_regular_linear(n: usize, r: usize, seed: u64) -> Result<Hypergraph, GeneratorError> {
    if r < 3 {
        return Err(GeneratorError::InvalidParameters(format!("need r >= 3, got {r}")));
    }
    if n < r {
        return Err(GeneratorError::InvalidParameters(format!(
            "need n >= r, got n = {n}, r = {r}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut smallest = usize::MAX;
    for _ in 0..MAX_RESTARTS {
        let mut packing = Packing::new(n, r);
        packing.saturate(&mut rng);
        packing.repair(2, &mut rng);
        let min_rank = packing.load.iter().copied().min().unwrap_or(0);
        if min_rank >= 2 {
            let blocks = packing.blocks;
            let mut edges = vec![Vec::new(); n];
            for (v, block) in blocks.iter().enumerate() {
                for &e in block {
                    edges[e].push(v);
                }
            }
            return Ok(Hypergraph::build(blocks.len(), edges).expect("ids in range"));
        }
        smallest = smallest.min(min_rank);
    }
    Err(GeneratorError::GenerationFailed {
        attempts: MAX_RESTARTS,
        reason: format!("every packing left an edge of rank {smallest} < 2"),
    })
}

/// Consecutive rejected samples tolerated before a restart.
const SAMPLE_BUDGET: usize = 5_000;

/// A `rank`-uniform linear hypergraph with `n_edges` edges on `num_vertices`
/// vertices. With `force_high_degree`, a random pivot first receives
/// `⌈n_edges/2⌉` edges with disjoint petals; the rest are sampled uniformly
/// and kept when they share at most one vertex with every earlier edge.
pub fn random_uniform_linear(
    num_vertices: usize,
    rank: usize,
    n_edges: usize,
    force_high_degree: bool,
    seed: u64,
) -> Result<Hypergraph, GeneratorError> {
    if rank < 2 {
        return Err(GeneratorError::InvalidParameters(format!("need rank >= 2, got {rank}")));
    }
    if rank > num_vertices {
        return Err(GeneratorError::GenerationFailed {
            attempts: 0,
            reason: format!("rank {rank} exceeds the {num_vertices} available vertices"),
        });
    }
    let pinned = if force_high_degree { n_edges.div_ceil(2) } else { 0 };
    if 1 + pinned * (rank - 1) > num_vertices && pinned > 0 {
        return Err(GeneratorError::GenerationFailed {
            attempts: 0,
            reason: format!(
                "{pinned} disjoint petals of size {} need more than {num_vertices} vertices",
                rank - 1
            ),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESTARTS {
        let mut covered = vec![false; num_vertices * num_vertices];
        let mut edges: Vec<Vec<VertexId>> = Vec::with_capacity(n_edges);
        if pinned > 0 {
            let mut perm: Vec<VertexId> = (0..num_vertices).collect();
            perm.shuffle(&mut rng);
            let pivot = perm[0];
            for i in 0..pinned {
                let mut edge: Vec<VertexId> = std::iter::once(pivot)
                    .chain(perm[1 + i * (rank - 1)..1 + (i + 1) * (rank - 1)].iter().copied())
                    .collect();
                edge.sort_unstable();
                let fresh = accept_linear(edge, num_vertices, &mut covered, &mut edges);
                debug_assert!(fresh);
            }
        }

        let mut misses = 0;
        while edges.len() < n_edges && misses < SAMPLE_BUDGET {
            let mut edge = sample(&mut rng, num_vertices, rank).into_vec();
            edge.sort_unstable();
            if accept_linear(edge, num_vertices, &mut covered, &mut edges) {
                misses = 0;
            } else {
                misses += 1;
            }
        }
        if edges.len() == n_edges {
            return Ok(Hypergraph::build(num_vertices, edges).expect("ids in range"));
        }
    }
    Err(GeneratorError::GenerationFailed {
        attempts: MAX_RESTARTS,
        reason: format!(
            "could not place {n_edges} linear edges of rank {rank} on {num_vertices} vertices"
        ),
    })
}

/// Adds `edge` when none of its pairs is already covered.
fn accept_linear(
    edge: Vec<VertexId>,
    num_vertices: usize,
    covered: &mut [bool],
    edges: &mut Vec<Vec<VertexId>>,
) -> bool {
    let clash = edge
        .iter()
        .enumerate()
        .any(|(i, &a)| edge[i + 1..].iter().any(|&b| covered[a * num_vertices + b]));
    if clash {
        return false;
    }
    for (i, &a) in edge.iter().enumerate() {
        for &b in &edge[i + 1..] {
            covered[a * num_vertices + b] = true;
            covered[b * num_vertices + a] = true;
        }
    }
    edges.push(edge);
    true
}
