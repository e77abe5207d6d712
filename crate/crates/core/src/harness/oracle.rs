use crate::error::{resource, Result};
use crate::graph::Graph;

pub const INDEPENDENCE_MAX_N: usize = 24;

/// Exact independence number by branch and bound over vertex bitmasks.
pub fn independence_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > INDEPENDENCE_MAX_N {
        return Err(resource(format!(
            "independence number is brute force; n = {n} exceeds {INDEPENDENCE_MAX_N}"
        )));
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(1u32 << v, |acc, &w| acc | 1 << w))
        .collect();
    let mut best = 0;
    search(&closed, ((1u64 << n) - 1) as u32, 0, &mut best);
    Ok(best)
}

fn search(closed: &[u32], cand: u32, size: usize, best: &mut usize) {
    if cand == 0 {
        *best = (*best).max(size);
        return;
    }
    if size + cand.count_ones() as usize <= *best {
        return;
    }
    // branch on the candidate with most candidate neighbours
    let mut pivot = cand.trailing_zeros() as usize;
    let mut pivot_deg = 0;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let d = (closed[v] & cand).count_ones();
        if d > pivot_deg {
            pivot = v;
            pivot_deg = d;
        }
    }
    if pivot_deg == 1 {
        // every candidate is isolated among the candidates
        *best = (*best).max(size + cand.count_ones() as usize);
        return;
    }
    search(closed, cand & !closed[pivot], size + 1, best);
    search(closed, cand & !(1 << pivot), size, best);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subsets_oracle(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&s| {
                g.edges().iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0)
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(independence_number(&Graph::complete(4)).unwrap(), 1);
        assert_eq!(independence_number(&Graph::cycle(5)).unwrap(), 2);
        assert_eq!(subsets_oracle(&Graph::cycle(5)), 2);
        assert_eq!(independence_number(&Graph::empty(6)).unwrap(), 6);
        assert_eq!(independence_number(&Graph::empty(0)).unwrap(), 0);
        assert!(independence_number(&Graph::empty(25)).is_err());
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        for g in crate::harness::enumerate_connected_graphs(5).unwrap().step_by(7) {
            assert_eq!(independence_number(&g).unwrap(), subsets_oracle(&g));
        }
    }
}
