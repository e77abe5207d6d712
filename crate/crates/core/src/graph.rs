//! Simple undirected graphs on vertices `0..n`, the canonical edge-list
//! format, DOT export, connectivity and biconnected (block) structure.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, usage, Error, Result};

/// An undirected edge stored with `u < v`.
pub type Edge = (usize, usize);

/// Normalizes an unordered pair so the smaller label comes first.
#[inline]
pub fn edge_key(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple graph. Neighbour lists are sorted, duplicate-free,
/// symmetric and loop-free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicates collapse; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = Edge>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(usage(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if u == v {
                return Err(usage(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut deg_sum = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            deg_sum += list.len();
        }
        Self { adj, m: deg_sum / 2 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Self::from_raw_adjacency(adj)
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("valid path")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("valid cycle")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub(crate) fn check_vertex(&self, u: usize) -> Result<()> {
        if u >= self.n() {
            return Err(usage(format!("vertex {u} out of range for n = {}", self.n())));
        }
        Ok(())
    }

    pub(crate) fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(usage(format!("expected distinct vertices, got {u} twice")));
        }
        Ok(())
    }

    pub(crate) fn check_edge(&self, u: usize, v: usize) -> Result<()> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(usage(format!("{u}{v} is not an edge")));
        }
        Ok(())
    }

    /// The common neighbourhood of `u` and `v`, sorted ascending.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<Vec<usize>> {
        self.check_pair(u, v)?;
        Ok(self.common_neighbors_unchecked(u, v).collect())
    }

    /// Sorted-merge intersection of two neighbour lists.
    pub(crate) fn common_neighbors_unchecked(
        &self,
        u: usize,
        v: usize,
    ) -> impl Iterator<Item = usize> + '_ {
        SortedIntersection {
            a: &self.adj[u],
            b: &self.adj[v],
        }
    }

    pub(crate) fn common_neighbor_count(&self, u: usize, v: usize) -> usize {
        self.common_neighbors_unchecked(u, v).count()
    }

    /// True iff every vertex is reachable from vertex 0. Graphs with at most
    /// one vertex are connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        self.bfs_distances(0, |_| true).iter().all(Option::is_some)
    }

    /// BFS distances from `source` through vertices accepted by `allowed`.
    pub(crate) fn bfs_distances(
        &self,
        source: usize,
        allowed: impl Fn(usize) -> bool,
    ) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() && allowed(w) {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Copy of the graph without edge `uv`.
    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        self.check_edge(u, v)?;
        let mut adj = self.adj.clone();
        adj[u].retain(|&w| w != v);
        adj[v].retain(|&w| w != u);
        Ok(Graph { adj, m: self.m - 1 })
    }

    /// Relabels vertices: vertex `i` becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n() {
            return Err(usage("relabelling has the wrong length"));
        }
        Graph::from_edges(self.n(), self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Biconnected components and cut vertices, via a single iterative
    /// depth-first traversal with an edge stack (lowpoint method).
    pub fn biconnected_components(&self) -> Result<BlockDecomposition> {
        if !self.is_connected() {
            return Err(domain("biconnected decomposition requires a connected graph"));
        }
        Ok(self.blocks_unchecked())
    }

    fn blocks_unchecked(&self) -> BlockDecomposition {
        const UNSEEN: usize = usize::MAX;
        let n = self.n();
        let mut disc = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut is_cut = vec![false; n];
        let mut timer = 0;
        let mut edge_stack: Vec<Edge> = Vec::new();
        let mut blocks = Vec::new();

        for root in 0..n {
            if disc[root] != UNSEEN {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            let mut root_children = 0;
            // (vertex, parent, next neighbour index)
            let mut stack = vec![(root, UNSEEN, 0usize)];

            while let Some(frame) = stack.last_mut() {
                let (u, parent, idx) = *frame;
                if idx < self.adj[u].len() {
                    frame.2 += 1;
                    let w = self.adj[u][idx];
                    if w == parent {
                        continue;
                    }
                    if disc[w] == UNSEEN {
                        edge_stack.push((u, w));
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        if u == root {
                            root_children += 1;
                        }
                        stack.push((w, u, 0));
                    } else if disc[w] < disc[u] {
                        edge_stack.push((u, w));
                        low[u] = low[u].min(disc[w]);
                    }
                    continue;
                }

                stack.pop();
                if parent == UNSEEN {
                    continue;
                }
                low[parent] = low[parent].min(low[u]);
                if low[u] >= disc[parent] {
                    if parent != root {
                        is_cut[parent] = true;
                    }
                    let mut edges = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        edges.push(edge_key(e.0, e.1));
                        if e == (parent, u) {
                            break;
                        }
                    }
                    blocks.push(Block::from_edges(edges));
                }
            }
            if root_children >= 2 {
                is_cut[root] = true;
            }
        }

        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        BlockDecomposition {
            blocks,
            cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        }
    }

    /// True iff every block induces a clique.
    pub fn is_block_graph(&self) -> Result<bool> {
        Ok(self.biconnected_components()?.blocks.iter().all(Block::is_clique))
    }

    /// Graphviz DOT text. Highlighted edges must be edges of the graph.
    pub fn to_dot(&self, highlight: Option<&[Edge]>) -> Result<String> {
        let mut marked = Vec::new();
        if let Some(h) = highlight {
            for &(u, v) in h {
                self.check_edge(u, v)?;
                marked.push(edge_key(u, v));
            }
            marked.sort_unstable();
            marked.dedup();
        }
        let mut out = String::from("graph G {\n");
        for u in 0..self.n() {
            writeln!(out, "  {u};").unwrap();
        }
        for (u, v) in self.edges() {
            if marked.binary_search(&(u, v)).is_ok() {
                writeln!(out, "  {u} -- {v} [color=red, penwidth=2];").unwrap();
            } else {
                writeln!(out, "  {u} -- {v};").unwrap();
            }
        }
        out.push_str("}\n");
        Ok(out)
    }

    /// Serializes in the canonical edge-list format.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.m());
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }
}

struct SortedIntersection<'a> {
    a: &'a [usize],
    b: &'a [usize],
}

impl Iterator for SortedIntersection<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        while let (Some(&x), Some(&y)) = (self.a.first(), self.b.first()) {
            match x.cmp(&y) {
                std::cmp::Ordering::Less => self.a = &self.a[1..],
                std::cmp::Ordering::Greater => self.b = &self.b[1..],
                std::cmp::Ordering::Equal => {
                    self.a = &self.a[1..];
                    self.b = &self.b[1..];
                    return Some(x);
                }
            }
        }
        None
    }
}

/// Parses the canonical edge-list format: a header `n m`, then one `u v`
/// line per edge. `#` lines and blank lines are skipped; CRLF is accepted.
/// Repeated edges collapse, and `m` must equal the number of distinct edges.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing header line `n m`".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(perr(header_line, format!("expected header `n m`, got {header:?}")));
    }
    let parse_num = |line: usize, tok: &str, what: &str| -> Result<usize> {
        tok.parse::<usize>()
            .map_err(|_| perr(line, format!("invalid {what} {tok:?}")))
    };
    let n = parse_num(header_line, fields[0], "vertex count")?;
    let m = parse_num(header_line, fields[1], "edge count")?;

    let mut adj = vec![Vec::new(); n];
    for (line, body) in lines {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(perr(line, format!("expected `u v`, got {body:?}")));
        }
        let u = parse_num(line, toks[0], "vertex")?;
        let v = parse_num(line, toks[1], "vertex")?;
        if u >= n || v >= n {
            return Err(perr(line, format!("vertex index out of range for n = {n}")));
        }
        if u == v {
            return Err(perr(line, format!("self-loop at vertex {u}")));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    let g = Graph::from_raw_adjacency(adj);
    if g.m() != m {
        return Err(perr(
            header_line,
            format!("header declares {m} edges but {} distinct edges follow", g.m()),
        ));
    }
    Ok(g)
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_edge_list(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// One biconnected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Block {
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl Block {
    fn from_edges(mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices, edges }
    }

    pub fn is_clique(&self) -> bool {
        let k = self.vertices.len();
        self.edges.len() == k * (k - 1) / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cut_vertices: Vec<usize>,
}
