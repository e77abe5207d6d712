//! Vertex orderings and the good-pair subgraph `G^(π)`.
//!
//! A pair `(u, v)` is good for an ordering when `uv` is an edge, `u` comes
//! before `v`, and `u` also comes before every common neighbour of `u` and
//! `v`. The subgraph of good pairs is always connected on a connected graph,
//! and is a tree for every ordering exactly when the graph is a block graph.
//! This module builds that subgraph three ways (the predicate directly, a
//! triangle-deletion sweep, and a minimum-weight spanning tree) and provides
//! the exhaustive and Monte Carlo machinery used to check those facts.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, resource, usage, Error, Result};
use crate::graph::{edge_key, Edge, Graph};
use crate::inequality::doubled_common_neighbor_sum;
use crate::rational::ExactRational;
use crate::rng;

/// Largest `n` enumerated by [`all_orderings_report`] unless overridden (9! orderings).
pub const DEFAULT_ORDERING_LIMIT: usize = 9;

/// A permutation of the vertices: `rank[v]` is the position of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordering {
    rank: Vec<usize>,
}

impl Ordering {
    pub fn identity(n: usize) -> Self {
        Self { rank: (0..n).collect() }
    }

    /// Validates that `rank` is a bijection onto `0..n`.
    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            if r >= n || std::mem::replace(&mut seen[r], true) {
                return Err(usage(format!("ranks {rank:?} are not a permutation of 0..{n}")));
            }
        }
        Ok(Self { rank })
    }

    /// Accepts any injective labelling into the naturals and keeps only the
    /// relative order.
    pub fn from_values(values: &[u64]) -> Result<Self> {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by_key(|&i| values[i]);
        if idx.windows(2).any(|w| values[w[0]] == values[w[1]]) {
            return Err(usage("ordering values must be distinct"));
        }
        let mut rank = vec![0; values.len()];
        for (r, &v) in idx.iter().enumerate() {
            rank[v] = r;
        }
        Ok(Self { rank })
    }

    /// `order[i]` is the vertex placed at position `i`.
    pub fn from_sequence(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in order.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(usage(format!("{order:?} is not a vertex sequence of 0..{n}")));
            }
            rank[v] = pos;
        }
        Ok(Self { rank })
    }

    /// Uniformly random ordering.
    pub fn random(n: usize, rng: &mut impl rand::Rng) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        rng::shuffle(&mut order, rng);
        Self::from_sequence(&order).expect("shuffle yields a permutation")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.rank.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rank.is_empty()
    }

    #[inline]
    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    /// Vertices sorted by rank.
    pub fn sequence(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (v, &r) in self.rank.iter().enumerate() {
            order[r] = v;
        }
        order
    }

    fn check_for(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(usage(format!(
                "ordering has {} entries but the graph has {} vertices",
                self.len(),
                g.n()
            )));
        }
        Ok(())
    }
}

/// Whitespace-separated ranks, vertex 0 first.
impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rank.iter().join(" "))
    }
}

impl FromStr for Ordering {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let values = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u64>().map_err(|_| usage(format!("invalid rank {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_values(&values)
    }
}

impl Serialize for Ordering {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An edge oriented from its lower-ranked endpoint, with `sigma = rank[u]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrderedEdge {
    pub u: usize,
    pub v: usize,
    pub sigma: usize,
}

impl OrderedEdge {
    pub fn new(pi: &Ordering, a: usize, b: usize) -> Self {
        let (u, v) = if pi.rank(a) < pi.rank(b) { (a, b) } else { (b, a) };
        Self { u, v, sigma: pi.rank(u) }
    }
}

/// The good-pair predicate.
pub fn is_good_pair(g: &Graph, pi: &Ordering, u: usize, v: usize) -> Result<bool> {
    pi.check_for(g)?;
    g.check_pair(u, v)?;
    Ok(good_unchecked(g, pi, u, v))
}

fn good_unchecked(g: &Graph, pi: &Ordering, u: usize, v: usize) -> bool {
    let ru = pi.rank(u);
    g.has_edge(u, v) && ru < pi.rank(v) && g.common_neighbors_unchecked(u, v).all(|w| ru < pi.rank(w))
}

/// `G^(π)`: the spanning subgraph of edges one of whose orientations is good.
pub fn good_pair_graph(g: &Graph, pi: &Ordering) -> Result<Graph> {
    pi.check_for(g)?;
    Ok(good_pair_graph_unchecked(g, pi))
}

fn good_edges(g: &Graph, pi: &Ordering) -> Vec<Edge> {
    g.edges()
        .into_iter()
        .filter(|&(a, b)| {
            let e = OrderedEdge::new(pi, a, b);
            good_unchecked(g, pi, e.u, e.v)
        })
        .collect()
}

fn good_pair_graph_unchecked(g: &Graph, pi: &Ordering) -> Graph {
    Graph::from_edges(g.n(), good_edges(g, pi)).expect("subgraph of a valid graph")
}

/// Processing order for edges of equal `sigma` in the deletion sweep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TieBreak {
    /// Larger upper-endpoint rank first, then lexicographic on the vertex pair.
    #[default]
    UpperRankDescending,
    /// Lexicographic on the vertex pair only.
    Lexicographic,
}

/// Builds `G^(π)` by deleting edges: edges are visited by decreasing `sigma`
/// and `uv` is removed when the current graph still holds a triangle `uva`
/// with `a` ranked below both `u` and `v`.
pub fn good_pair_graph_by_deletion(g: &Graph, pi: &Ordering) -> Result<Graph> {
    good_pair_graph_by_deletion_with(g, pi, TieBreak::default())
}

pub fn good_pair_graph_by_deletion_with(g: &Graph, pi: &Ordering, tie: TieBreak) -> Result<Graph> {
    pi.check_for(g)?;
    let n = g.n();
    let mut h: Vec<FixedBitSet> = (0..n)
        .map(|u| {
            let mut row = FixedBitSet::with_capacity(n);
            row.extend(g.neighbors(u).iter().copied());
            row
        })
        .collect();

    let mut order: Vec<OrderedEdge> = g.edges().into_iter().map(|(a, b)| OrderedEdge::new(pi, a, b)).collect();
    order.sort_by(|x, y| {
        let by_sigma = y.sigma.cmp(&x.sigma);
        let lex = edge_key(x.u, x.v).cmp(&edge_key(y.u, y.v));
        match tie {
            TieBreak::UpperRankDescending => by_sigma
                .then_with(|| pi.rank(y.v).cmp(&pi.rank(x.v)))
                .then(lex),
            TieBreak::Lexicographic => by_sigma.then(lex),
        }
    });

    for e in order {
        let low = e.sigma;
        let blocked = h[e.u].intersection(&h[e.v]).any(|a| pi.rank(a) < low);
        if blocked {
            h[e.u].set(e.v, false);
            h[e.v].set(e.u, false);
        }
    }

    let edges = (0..n).flat_map(|u| h[u].ones().filter(move |&v| v > u).map(move |v| (u, v)));
    Graph::from_edges(n, edges.collect::<Vec<_>>())
}

/// Spanning tree with weight `Σ min(rank[u], rank[v])` over its edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningTree {
    pub edges: Vec<Edge>,
    pub weight: u64,
}

struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }
}

/// Kruskal on weights `sigma(uv)`; ties broken by upper-endpoint rank, then
/// by vertex pair. Every minimum-weight tree consists of good pairs.
pub fn min_weight_spanning_tree(g: &Graph, pi: &Ordering) -> Result<SpanningTree> {
    pi.check_for(g)?;
    if !g.is_connected() {
        return Err(domain("spanning tree requires a connected graph"));
    }
    let mut order: Vec<OrderedEdge> = g.edges().into_iter().map(|(a, b)| OrderedEdge::new(pi, a, b)).collect();
    order.sort_by_key(|e| (e.sigma, pi.rank(e.v), edge_key(e.u, e.v)));

    let mut dsu = Dsu::new(g.n());
    let mut edges = Vec::with_capacity(g.n().saturating_sub(1));
    let mut weight = 0u64;
    for e in order {
        if dsu.union(e.u, e.v) {
            edges.push(edge_key(e.u, e.v));
            weight += e.sigma as u64;
        }
    }
    edges.sort_unstable();
    Ok(SpanningTree { edges, weight })
}

/// `Σ_{uv ∈ E} 2/(|N(u)∩N(v)|+2)`, the expected size of `E(G^(π))` for a
/// uniformly random ordering.
pub fn exact_expected_good_edges(g: &Graph) -> ExactRational {
    doubled_common_neighbor_sum(g)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpectationReport {
    pub exact: ExactRational,
    pub sample_mean: f64,
    pub sample_count: usize,
    /// Sample standard deviation (Bessel-corrected); 0 for a single trial.
    pub sample_stddev: f64,
}

impl ExpectationReport {
    pub fn standard_error(&self) -> f64 {
        self.sample_stddev / (self.sample_count as f64).sqrt()
    }
}

/// Monte Carlo estimate of `|E(G^(π))|`. Trial `i` draws its ordering from
/// the stream seeded by `derive_seed(seed, i)`.
pub fn sample_good_edge_count(g: &Graph, trials: usize, seed: u64) -> Result<ExpectationReport> {
    if trials == 0 {
        return Err(usage("trials must be at least 1"));
    }
    let counts: Vec<usize> = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let pi = Ordering::random(g.n(), &mut rng::stream(rng::derive_seed(seed, i)));
            good_edges(g, &pi).len()
        })
        .collect();
    let mean = counts.iter().sum::<usize>() as f64 / trials as f64;
    let stddev = if trials > 1 {
        let ss: f64 = counts.iter().map(|&c| (c as f64 - mean).powi(2)).sum();
        (ss / (trials - 1) as f64).sqrt()
    } else {
        0.0
    };
    Ok(ExpectationReport {
        exact: exact_expected_good_edges(g),
        sample_mean: mean,
        sample_count: trials,
        sample_stddev: stddev,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderingsReport {
    pub orderings: u64,
    pub always_connected: bool,
    pub always_tree: bool,
    /// First ordering (in lexicographic order of rank vectors) whose
    /// good-pair subgraph has a cycle.
    pub counterexample: Option<Ordering>,
    /// Average of `|E(G^(π))|` over all orderings.
    pub mean_good_edges: ExactRational,
}

/// Enumerates all `n!` orderings of a connected graph with `n ≤ n_limit`.
pub fn all_orderings_report(g: &Graph, n_limit: usize) -> Result<OrderingsReport> {
    let n = g.n();
    if n > n_limit {
        return Err(resource(format!("{n}! orderings exceed the limit n <= {n_limit}")));
    }
    if n == 0 || !g.is_connected() {
        return Err(domain("ordering report requires a connected graph with at least one vertex"));
    }
    let mut report = OrderingsReport {
        orderings: 0,
        always_connected: true,
        always_tree: true,
        counterexample: None,
        mean_good_edges: ExactRational::zero(),
    };
    let mut total_edges = 0u64;
    for rank in (0..n).permutations(n) {
        let pi = Ordering { rank };
        let h = good_pair_graph_unchecked(g, &pi);
        report.orderings += 1;
        total_edges += h.m() as u64;
        let connected = h.is_connected();
        report.always_connected &= connected;
        let is_tree = connected && h.m() + 1 == n;
        if !is_tree {
            report.always_tree = false;
            if report.counterexample.is_none() && find_cycle(&h).is_some() {
                report.counterexample = Some(pi);
            }
        }
    }
    report.mean_good_edges = ExactRational::new(total_edges as i64, report.orderings as i64);
    Ok(report)
}

/// Certificate that some ordering produces a cycle in `G^(π)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleWitness {
    pub ordering: Ordering,
    /// Cycle of `G^(π)`, listed without repeating the first vertex.
    pub cycle: Vec<usize>,
    /// `(a, b, c)` with `ac, bc` edges and `ab` a non-edge.
    pub triple: (usize, usize, usize),
    /// Shortest `a`–`b` path avoiding `c`.
    pub path: Vec<usize>,
}

/// Returns `None` for block graphs; otherwise builds an ordering whose
/// good-pair subgraph contains a cycle.
///
/// The triple `(a, b, c)` is the lexicographically first induced path
/// `a - c - b` inside the first non-clique block, and `P = (a, v1, .., vk, b)`
/// a shortest `a`–`b` path avoiding `c`. The ordering is
/// `a < b < v1 < .. < vk < c < (everything else)`; the cycle is `P` closed
/// through `c`.
pub fn cycle_witness_ordering(g: &Graph) -> Result<Option<CycleWitness>> {
    let blocks = g.biconnected_components()?;
    let Some(block) = blocks.blocks.iter().find(|b| !b.is_clique()) else {
        return Ok(None);
    };

    let in_block = {
        let mut s = FixedBitSet::with_capacity(g.n());
        s.extend(block.vertices.iter().copied());
        s
    };
    let triple = block
        .vertices
        .iter()
        .tuple_combinations()
        .filter(|&(&a, &b)| !g.has_edge(a, b))
        .find_map(|(&a, &b)| {
            g.common_neighbors_unchecked(a, b)
                .find(|&c| in_block.contains(c))
                .map(|c| (a, b, c))
        })
        .ok_or_else(|| Error::Assertion("non-clique block without an induced P3".into()))?;
    let (a, b, c) = triple;

    let path = shortest_path_avoiding(g, a, b, c, &in_block)
        .ok_or_else(|| Error::Assertion(format!("no {a}-{b} path avoiding {c} inside its block")))?;

    let mut seq: Vec<usize> = vec![a, b];
    seq.extend(&path[1..path.len() - 1]);
    seq.push(c);
    let mut placed = FixedBitSet::with_capacity(g.n());
    placed.extend(seq.iter().copied());
    seq.extend((0..g.n()).filter(|&v| !placed.contains(v)));
    let ordering = Ordering::from_sequence(&seq)?;

    let mut cycle = path.clone();
    cycle.push(c);
    let h = good_pair_graph_unchecked(g, &ordering);
    let closed = cycle.iter().zip(cycle.iter().cycle().skip(1));
    if let Some((x, y)) = closed.clone().find(|(&x, &y)| !h.has_edge(x, y)) {
        return Err(Error::Assertion(format!(
            "witness edge {x}{y} missing from the good-pair subgraph"
        )));
    }
    Ok(Some(CycleWitness {
        ordering,
        cycle,
        triple,
        path,
    }))
}

fn shortest_path_avoiding(g: &Graph, a: usize, b: usize, c: usize, within: &FixedBitSet) -> Option<Vec<usize>> {
    let dist = g.bfs_distances(b, |w| w != c && within.contains(w));
    let mut d = dist[a]?;
    let mut path = vec![a];
    let mut x = a;
    while d > 0 {
        // smallest-label predecessor keeps the choice deterministic
        x = *g
            .neighbors(x)
            .iter()
            .find(|&&w| w != c && within.contains(w) && dist[w] == Some(d - 1))?;
        path.push(x);
        d -= 1;
    }
    Some(path)
}

/// Any cycle of `g`, or `None` for forests.
pub fn find_cycle(g: &Graph) -> Option<Vec<usize>> {
    const NONE: usize = usize::MAX;
    let n = g.n();
    let mut parent = vec![NONE; n];
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &w in g.neighbors(u) {
                if w == parent[u] {
                    continue;
                }
                if seen[w] {
                    // non-tree edge uw closes a cycle through the DFS forest
                    return Some(close_cycle(&parent, u, w));
                }
                seen[w] = true;
                parent[w] = u;
                stack.push(w);
            }
        }
    }
    None
}

fn close_cycle(parent: &[usize], u: usize, w: usize) -> Vec<usize> {
    let ancestors = |mut x: usize| {
        let mut out = vec![x];
        while parent[x] != usize::MAX {
            x = parent[x];
            out.push(x);
        }
        out
    };
    let up_u = ancestors(u);
    let up_w = ancestors(w);
    let meet = *up_u.iter().find(|x| up_w.contains(x)).expect("same tree");
    let mut cycle: Vec<usize> = up_u.iter().copied().take_while(|&x| x != meet).collect();
    cycle.push(meet);
    let tail: Vec<usize> = up_w.iter().copied().take_while(|&x| x != meet).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}
