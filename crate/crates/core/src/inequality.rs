//! The common-neighbourhood edge sum, its lower bound `(n-1)/2`, the
//! Caro–Wei vertex sum, and the bounded-length path-packing generalization.
//!
//! Every comparison in this module is exact.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{domain, resource, usage, Result};
use crate::graph::Graph;
use crate::rational::ExactRational;

/// Enumeration cap for [`path_packing`] unless the caller picks another.
pub const DEFAULT_PATH_CAP: usize = 100_000;

/// Verdict of an edge-sum inequality check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub sum: ExactRational,
    pub bound: ExactRational,
    pub holds: bool,
    pub equality: bool,
    pub block_graph: bool,
    /// `equality == block_graph`; `None` when no characterization applies.
    pub consistent: Option<bool>,
}

impl TheoremReport {
    fn new(sum: ExactRational, bound: ExactRational, block_graph: bool, characterized: bool) -> Self {
        let holds = sum >= bound;
        let equality = sum == bound;
        Self {
            sum,
            bound,
            holds,
            equality,
            block_graph,
            consistent: characterized.then_some(equality == block_graph),
        }
    }

    /// Holds and, where defined, is consistent with the characterization.
    pub fn ok(&self) -> bool {
        self.holds && self.consistent.unwrap_or(true)
    }
}

/// `Σ_k count[k] / (k + offset)` for a histogram keyed by `k`.
fn histogram_sum(hist: &BTreeMap<usize, usize>, offset: usize, numer: i64) -> ExactRational {
    hist.iter()
        .map(|(&k, &count)| ExactRational::new(numer * count as i64, (k + offset) as i64))
        .sum()
}

fn common_neighbor_histogram(g: &Graph) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for (u, v) in g.edges() {
        *hist.entry(g.common_neighbor_count(u, v)).or_insert(0) += 1;
    }
    hist
}

/// `Σ_{uv ∈ E} 1 / (|N(u) ∩ N(v)| + 2)`.
pub fn common_neighbor_sum(g: &Graph) -> ExactRational {
    histogram_sum(&common_neighbor_histogram(g), 2, 1)
}

/// `Σ_{uv ∈ E} 2 / (|N(u) ∩ N(v)| + 2)`: the expected edge count of the
/// good-pair subgraph under a uniformly random ordering.
pub(crate) fn doubled_common_neighbor_sum(g: &Graph) -> ExactRational {
    histogram_sum(&common_neighbor_histogram(g), 2, 2)
}

fn require_connected(g: &Graph) -> Result<()> {
    if g.n() == 0 {
        return Err(domain("the inequality is stated for graphs with at least one vertex"));
    }
    if !g.is_connected() {
        return Err(domain("graph is disconnected"));
    }
    Ok(())
}

/// Checks `Σ 1/(|N(u)∩N(v)|+2) ≥ (n-1)/2` and that equality occurs exactly
/// for block graphs.
pub fn verify_theorem1(g: &Graph) -> Result<TheoremReport> {
    require_connected(g)?;
    let bound = ExactRational::new(g.n() as i64 - 1, 2);
    Ok(TheoremReport::new(
        common_neighbor_sum(g),
        bound,
        g.is_block_graph()?,
        true,
    ))
}

/// `Σ_v 1 / (deg(v) + 1)`.
pub fn caro_wei_sum(g: &Graph) -> ExactRational {
    let mut hist = BTreeMap::new();
    for v in 0..g.n() {
        *hist.entry(g.degree(v)).or_insert(0usize) += 1;
    }
    histogram_sum(&hist, 1, 1)
}

/// A maximum family of internally vertex-disjoint `u`–`v` paths whose edge
/// counts lie in `[2, ell]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathPacking {
    pub u: usize,
    pub v: usize,
    pub ell: usize,
    pub value: usize,
    /// Each path is the full vertex sequence from `u` to `v`.
    pub witness: Vec<Vec<usize>>,
}

impl PathPacking {
    /// Re-checks the witness against `g` directly.
    pub fn check(&self, g: &Graph) -> std::result::Result<(), String> {
        if self.witness.len() != self.value {
            return Err(format!("{} witness paths for value {}", self.witness.len(), self.value));
        }
        let mut used = vec![false; g.n()];
        for path in &self.witness {
            let len = path.len().saturating_sub(1);
            if !(2..=self.ell).contains(&len) {
                return Err(format!("path {path:?} has length {len}"));
            }
            if path.first() != Some(&self.u) || path.last() != Some(&self.v) {
                return Err(format!("path {path:?} does not join {} and {}", self.u, self.v));
            }
            if path.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
                return Err(format!("path {path:?} uses a non-edge"));
            }
            for &x in &path[1..path.len() - 1] {
                if x == self.u || x == self.v || used[x] {
                    return Err(format!("internal vertex {x} of {path:?} is reused"));
                }
                used[x] = true;
            }
        }
        Ok(())
    }
}

struct Candidate {
    path: Vec<usize>,
    internal: FixedBitSet,
}

impl Candidate {
    fn first(&self) -> usize {
        self.path[1]
    }

    fn last(&self) -> usize {
        self.path[self.path.len() - 2]
    }
}

/// Computes `P(uv, ell)` exactly: enumerate every simple `u`–`v` path of
/// length `2..=ell` (failing once more than `path_cap` are found), then
/// solve maximum independent set on the "shares an internal vertex"
/// conflict relation by branch and bound. A direct edge `uv` never counts.
pub fn path_packing(g: &Graph, u: usize, v: usize, ell: usize, path_cap: usize) -> Result<PathPacking> {
    g.check_pair(u, v)?;
    if ell < 2 {
        return Err(usage(format!("ell must be at least 2, got {ell}")));
    }
    let paths = enumerate_paths(g, u, v, ell, path_cap)?;
    let candidates = minimal_candidates(g.n(), paths);
    let chosen = max_disjoint(&candidates);
    let mut witness: Vec<Vec<usize>> = chosen.into_iter().map(|i| candidates[i].path.clone()).collect();
    witness.sort();
    Ok(PathPacking {
        u,
        v,
        ell,
        value: witness.len(),
        witness,
    })
}

fn enumerate_paths(g: &Graph, u: usize, v: usize, ell: usize, cap: usize) -> Result<Vec<Vec<usize>>> {
    // distance to v avoiding u: admissible lower bound on the remaining length
    let to_v = g.bfs_distances(v, |w| w != u);
    let mut out = Vec::new();
    let mut on_path = vec![false; g.n()];
    on_path[u] = true;
    let mut path = vec![u];
    // explicit stack of neighbour cursors, one per path vertex
    let mut cursor = vec![0usize];

    while let Some(&x) = path.last() {
        let depth = path.len() - 1;
        let i = *cursor.last().unwrap();
        let nbrs = g.neighbors(x);
        if i >= nbrs.len() {
            path.pop();
            cursor.pop();
            on_path[x] = false;
            continue;
        }
        *cursor.last_mut().unwrap() += 1;
        let w = nbrs[i];
        if w == v {
            if depth + 1 >= 2 {
                if out.len() == cap {
                    return Err(resource(format!(
                        "more than {cap} qualifying paths between {u} and {v}; raise path_cap"
                    )));
                }
                let mut p = path.clone();
                p.push(v);
                out.push(p);
            }
            continue;
        }
        if on_path[w] {
            continue;
        }
        match to_v[w] {
            Some(d) if depth + 1 + d <= ell => {}
            _ => continue,
        }
        on_path[w] = true;
        path.push(w);
        cursor.push(0);
    }
    Ok(out)
}

/// Drops every path whose internal vertex set contains another path's.
/// Replacing a path by one with fewer internal vertices never breaks a
/// disjoint family, so the optimum is unchanged.
fn minimal_candidates(n: usize, paths: Vec<Vec<usize>>) -> Vec<Candidate> {
    let mut all: Vec<Candidate> = paths
        .into_iter()
        .map(|path| {
            let mut internal = FixedBitSet::with_capacity(n);
            for &x in &path[1..path.len() - 1] {
                internal.insert(x);
            }
            Candidate { path, internal }
        })
        .collect();
    all.sort_by(|a, b| a.path.len().cmp(&b.path.len()).then_with(|| a.path.cmp(&b.path)));
    let mut kept: Vec<Candidate> = Vec::new();
    for c in all {
        if !kept.iter().any(|k| k.internal.is_subset(&c.internal)) {
            kept.push(c);
        }
    }
    kept
}

fn max_disjoint(cands: &[Candidate]) -> Vec<usize> {
    let k = cands.len();
    let conflicts: Vec<FixedBitSet> = (0..k)
        .map(|i| {
            let mut row = FixedBitSet::with_capacity(k);
            for j in 0..k {
                if i != j && !cands[i].internal.is_disjoint(&cands[j].internal) {
                    row.insert(j);
                }
            }
            row
        })
        .collect();

    // greedy lower bound: shortest paths first
    let mut best = Vec::new();
    let mut blocked = FixedBitSet::with_capacity(k);
    for (i, row) in conflicts.iter().enumerate() {
        if !blocked.contains(i) {
            best.push(i);
            blocked.union_with(row);
            blocked.insert(i);
        }
    }

    let mut all = FixedBitSet::with_capacity(k);
    all.insert_range(..);
    let mut search = PackingSearch {
        cands,
        conflicts: &conflicts,
        best,
        chosen: Vec::new(),
    };
    search.branch(all);
    search.best
}

struct PackingSearch<'a> {
    cands: &'a [Candidate],
    conflicts: &'a [FixedBitSet],
    best: Vec<usize>,
    chosen: Vec<usize>,
}

impl PackingSearch<'_> {
    /// Every path occupies one neighbour of `u` and one neighbour of `v`,
    /// and paths sharing either conflict.
    fn upper_bound(&self, live: &FixedBitSet) -> usize {
        let n = self.cands.first().map_or(0, |c| c.internal.len());
        let mut firsts = FixedBitSet::with_capacity(n);
        let mut lasts = FixedBitSet::with_capacity(n);
        for i in live.ones() {
            firsts.insert(self.cands[i].first());
            lasts.insert(self.cands[i].last());
        }
        firsts.count_ones(..).min(lasts.count_ones(..))
    }

    fn branch(&mut self, mut live: FixedBitSet) {
        let base = self.chosen.len();
        // conflict-free candidates can always be taken
        loop {
            let free: Vec<usize> = live
                .ones()
                .filter(|&i| self.conflicts[i].is_disjoint(&live))
                .collect();
            if free.is_empty() {
                break;
            }
            for i in free {
                live.set(i, false);
                self.chosen.push(i);
            }
        }

        if live.is_clear() {
            if self.chosen.len() > self.best.len() {
                self.best = self.chosen.clone();
            }
        } else if self.chosen.len() + self.upper_bound(&live) > self.best.len() {
            let pivot = live
                .ones()
                .max_by_key(|&i| (self.conflicts[i].intersection_count(&live), std::cmp::Reverse(i)))
                .unwrap();

            let mut with = live.clone();
            with.difference_with(&self.conflicts[pivot]);
            with.set(pivot, false);
            self.chosen.push(pivot);
            self.branch(with);
            self.chosen.pop();

            live.set(pivot, false);
            self.branch(live);
        }
        self.chosen.truncate(base);
    }
}

/// `Σ_{uv ∈ E} 1 / (P(uv, ell) + ell)`. Edges are evaluated in parallel and
/// summed in sorted edge order.
pub fn generalized_sum(g: &Graph, ell: usize, path_cap: usize) -> Result<ExactRational> {
    if ell < 2 {
        return Err(usage(format!("ell must be at least 2, got {ell}")));
    }
    let values = packing_values(g, ell, path_cap)?;
    let mut hist = BTreeMap::new();
    for p in values {
        *hist.entry(p).or_insert(0usize) += 1;
    }
    Ok(histogram_sum(&hist, ell, 1))
}

/// `P(uv, ell)` for every edge, in [`Graph::edges`] order.
pub fn packing_values(g: &Graph, ell: usize, path_cap: usize) -> Result<Vec<usize>> {
    g.edges()
        .par_iter()
        .map(|&(u, v)| path_packing(g, u, v, ell, path_cap).map(|p| p.value))
        .collect()
}

/// Checks `Σ 1/(P(uv,ell)+ell) ≥ (n-1)/ell`. The block-graph flag is
/// informational; `consistent` is only reported for `ell = 2`.
pub fn verify_generalized(g: &Graph, ell: usize, path_cap: usize) -> Result<TheoremReport> {
    if ell < 2 {
        return Err(usage(format!("ell must be at least 2, got {ell}")));
    }
    require_connected(g)?;
    let sum = generalized_sum(g, ell, path_cap)?;
    let bound = ExactRational::new(g.n() as i64 - 1, ell as i64);
    Ok(TheoremReport::new(sum, bound, g.is_block_graph()?, ell == 2))
}
