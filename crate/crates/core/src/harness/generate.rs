use rand::Rng;
use serde::Serialize;

use crate::error::{resource, usage, Error, Result};
use crate::graph::Graph;
use crate::rng;

/// Attempts at drawing a connected G(n, p) sample before giving up.
pub const ER_MAX_RETRIES: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    /// Each pair independently with probability `p`, resampled until connected.
    ErdosRenyi { n: usize, p: f64 },
    /// Uniform labelled tree via Prüfer decoding.
    RandomTree { n: usize },
    /// `blocks` cliques of size `2..=max_clique`, each glued to a uniformly
    /// chosen existing vertex.
    BlockGraph { blocks: usize, max_clique: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub model: Model,
    pub seed: u64,
}

impl GenSpec {
    pub fn new(model: Model, seed: u64) -> Self {
        Self { model, seed }
    }

    fn validate(&self) -> Result<()> {
        match self.model {
            Model::ErdosRenyi { p, .. } if !(0.0..=1.0).contains(&p) => {
                Err(usage(format!("edge probability {p} outside [0, 1]")))
            }
            Model::BlockGraph { blocks: 0, .. } => Err(usage("block graph needs at least one block")),
            Model::BlockGraph { max_clique, .. } if max_clique < 2 => {
                Err(usage("max_clique must be at least 2"))
            }
            _ => Ok(()),
        }
    }
}

/// Deterministic in `spec.seed`. Output is always connected.
pub fn gen_graph(spec: &GenSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = rng::stream(spec.seed);
    match spec.model {
        Model::ErdosRenyi { n, p } => erdos_renyi(n, p, &mut rng),
        Model::RandomTree { n } => Ok(random_tree(n, &mut rng)),
        Model::BlockGraph { blocks, max_clique } => {
            let g = block_graph(blocks, max_clique, &mut rng);
            if !g.is_block_graph()? {
                return Err(Error::Assertion("generated block graph has a non-clique block".into()));
            }
            Ok(g)
        }
    }
}

fn erdos_renyi(n: usize, p: f64, rng: &mut impl Rng) -> Result<Graph> {
    for _ in 0..ER_MAX_RETRIES {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::from_edges(n, edges)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(resource(format!(
        "no connected G({n}, {p}) sample in {ER_MAX_RETRIES} attempts; try a larger p"
    )))
}

/// Decodes a uniformly random Prüfer sequence.
pub(crate) fn random_tree(n: usize, rng: &mut impl Rng) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.random_range(0..n as u64) as usize).collect();
    prufer_decode(n, &seq)
}

pub(crate) fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = leaves.pop_first().expect("a leaf always exists");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edges(n, edges).expect("Prüfer decoding yields a tree")
}

fn block_graph(blocks: usize, max_clique: usize, rng: &mut impl Rng) -> Graph {
    let mut size = || rng.random_range(2..=max_clique as u64) as usize;
    let first = size();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let clique = |members: &[usize], edges: &mut Vec<(usize, usize)>| {
        for (i, &a) in members.iter().enumerate() {
            for &b in &members[i + 1..] {
                edges.push((a, b));
            }
        }
    };
    clique(&(0..first).collect::<Vec<_>>(), &mut edges);
    let mut n = first;
    let sizes: Vec<usize> = (1..blocks).map(|_| size()).collect();
    for s in sizes {
        let anchor = rng.random_range(0..n as u64) as usize;
        let mut members = vec![anchor];
        members.extend(n..n + s - 1);
        n += s - 1;
        clique(&members, &mut edges);
    }
    // hide the construction order behind a random labelling
    let mut perm: Vec<usize> = (0..n).collect();
    rng::shuffle(&mut perm, rng);
    Graph::from_edges(n, edges.into_iter().map(|(a, b)| (perm[a], perm[b]))).expect("valid block graph")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_examples() {
        for seed in 0..20 {
            let g = gen_graph(&GenSpec::new(Model::RandomTree { n: 5 }, seed)).unwrap();
            assert!(g.is_connected());
            assert_eq!(g.m(), 4);
            assert!(g.is_block_graph().unwrap());
        }
        assert_eq!(gen_graph(&GenSpec::new(Model::RandomTree { n: 1 }, 0)).unwrap(), Graph::empty(1));
        assert_eq!(gen_graph(&GenSpec::new(Model::RandomTree { n: 2 }, 0)).unwrap(), Graph::path(2));
    }

    #[test]
    fn prufer_known_sequence() {
        // classic example: sequence [3, 3, 3, 4] on 6 vertices
        let g = prufer_decode(6, &[3, 3, 3, 4]);
        assert_eq!(g.edges(), vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn prufer_is_uniform_on_four_vertices() {
        // 4^(4-2) = 16 sequences map onto the 16 labelled trees bijectively
        let mut trees = std::collections::BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                trees.insert(prufer_decode(4, &[a, b]).edges());
            }
        }
        assert_eq!(trees.len(), 16);
    }

    #[test]
    fn block_graph_examples() {
        for seed in 0..20 {
            let spec = GenSpec::new(Model::BlockGraph { blocks: 3, max_clique: 4 }, seed);
            let g = gen_graph(&spec).unwrap();
            assert!(g.is_block_graph().unwrap());
            assert!(crate::inequality::verify_theorem1(&g).unwrap().equality);
            assert_eq!(g.biconnected_components().unwrap().blocks.len(), 3);
        }
    }

    #[test]
    fn erdos_renyi_examples() {
        let g = gen_graph(&GenSpec::new(Model::ErdosRenyi { n: 1, p: 0.5 }, 9)).unwrap();
        assert_eq!(g, Graph::empty(1));
        let g = gen_graph(&GenSpec::new(Model::ErdosRenyi { n: 10, p: 0.4 }, 9)).unwrap();
        assert!(g.is_connected());
        let again = gen_graph(&GenSpec::new(Model::ErdosRenyi { n: 10, p: 0.4 }, 9)).unwrap();
        assert_eq!(g, again);
        let err = gen_graph(&GenSpec::new(Model::ErdosRenyi { n: 5, p: 0.0 }, 1)).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        assert!(gen_graph(&GenSpec::new(Model::ErdosRenyi { n: 5, p: 1.5 }, 1)).is_err());
        assert!(gen_graph(&GenSpec::new(Model::BlockGraph { blocks: 0, max_clique: 3 }, 1)).is_err());
    }
}
