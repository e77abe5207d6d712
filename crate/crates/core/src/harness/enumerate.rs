use crate::error::{usage, Result};
use crate::graph::Graph;

pub const MAX_ENUMERATION_N: usize = 7;

/// Every connected labelled graph on `0..n`, one per edge subset, in order
/// of the subset bitmask over the lexicographically sorted vertex pairs.
pub fn enumerate_connected_graphs(n: usize) -> Result<ConnectedGraphs> {
    if !(1..=MAX_ENUMERATION_N).contains(&n) {
        return Err(usage(format!("enumeration supports 1 <= n <= {MAX_ENUMERATION_N}, got {n}")));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok(ConnectedGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        mask: 0,
    })
}

pub struct ConnectedGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    mask: u64,
    end: u64,
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.mask < self.end {
            let mask = self.mask;
            self.mask += 1;
            let edges = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            let g = Graph::from_edges(self.n, edges).expect("pairs are valid");
            if g.is_connected() {
                return Some(g);
            }
        }
        None
    }
}
