//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line per
//! criterion, and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use cnbound::electrical::{
    check_bound_eq1, effective_resistance_exact, forster_check, resistance_via_spanning_trees, Backend,
    ExactResistances, FLOAT_TOLERANCE,
};
use cnbound::good_pairs::{
    all_orderings_report, cycle_witness_ordering, exact_expected_good_edges, find_cycle, good_pair_graph,
    good_pair_graph_by_deletion_with, min_weight_spanning_tree, sample_good_edge_count, Ordering, TieBreak,
};
use cnbound::harness::{enumerate_connected_graphs, gen_graph, independence_number, GenSpec, Model};
use cnbound::inequality::{
    caro_wei_sum, common_neighbor_sum, path_packing, verify_generalized, verify_theorem1, DEFAULT_PATH_CAP,
};
use cnbound::{rng, ExactRational, Graph};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn connected_upto(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| enumerate_connected_graphs(n).unwrap())
        .collect()
}

fn er_samples(count: usize, n_range: (usize, usize), p_range: (f64, f64), master: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|i| {
            let mut r = rng::stream(rng::derive_seed(master, i));
            let n = r.random_range(n_range.0..=n_range.1);
            let p = r.random_range(p_range.0..p_range.1);
            gen_graph(&GenSpec::new(Model::ErdosRenyi { n, p }, r.random())).unwrap()
        })
        .collect()
}

fn block_samples(count: usize, max_n: usize, master: u64) -> Vec<Graph> {
    let mut out = Vec::with_capacity(count);
    let mut i = 0u64;
    while out.len() < count {
        let mut r = rng::stream(rng::derive_seed(master, i));
        i += 1;
        let blocks = r.random_range(1..=max_n.saturating_sub(1).clamp(1, 12));
        let max_clique = r.random_range(2..=5);
        let g = gen_graph(&GenSpec::new(Model::BlockGraph { blocks, max_clique }, r.random())).unwrap();
        if g.n() <= max_n {
            out.push(g);
        }
    }
    out
}

fn tree_samples(count: usize, max_n: usize, master: u64) -> Vec<Graph> {
    (0..count as u64)
        .map(|i| {
            let mut r = rng::stream(rng::derive_seed(master, i));
            let n = r.random_range(1..=max_n);
            gen_graph(&GenSpec::new(Model::RandomTree { n }, r.random())).unwrap()
        })
        .collect()
}

/// Runs `check` on every graph in parallel and reports the first failure.
fn all_graphs(graphs: &[Graph], check: impl Fn(&Graph) -> Result<(), String> + Sync) -> Result<(), String> {
    graphs
        .par_iter()
        .map(|g| check(g).map_err(|e| format!("{e}\n{}", g.to_edge_list())))
        .collect::<Result<Vec<()>, String>>()
        .map(|_| ())
}

fn c1_inequality_exhaustive() -> Check {
    let graphs = connected_upto(6);
    all_graphs(&graphs, |g| {
        let rep = verify_theorem1(g).map_err(|e| e.to_string())?;
        let bound = ExactRational::new(g.n() as i64 - 1, 2);
        if common_neighbor_sum(g) < bound || !rep.holds {
            return Err(format!("sum {} below {bound}", rep.sum));
        }
        if (rep.sum == bound) != g.is_block_graph().unwrap() {
            return Err("equality disagrees with block-graph test".into());
        }
        Ok(())
    })?;
    Ok(format!("{} connected graphs, n <= 6", graphs.len()))
}

fn c2_always_connected() -> Check {
    let graphs = connected_upto(5);
    all_graphs(&graphs, |g| {
        let rep = all_orderings_report(g, 5).map_err(|e| e.to_string())?;
        rep.always_connected
            .then_some(())
            .ok_or_else(|| "disconnected good-pair subgraph".to_string())
    })?;
    Ok(format!("{} graphs x all orderings, n <= 5", graphs.len()))
}

fn c3_tree_iff_block() -> Check {
    let graphs = connected_upto(5);
    all_graphs(&graphs, |g| {
        let rep = all_orderings_report(g, 5).map_err(|e| e.to_string())?;
        if rep.always_tree != g.is_block_graph().unwrap() {
            return Err(format!("always_tree = {}", rep.always_tree));
        }
        if let Some(pi) = &rep.counterexample {
            find_cycle(&good_pair_graph(g, pi).unwrap()).ok_or("counterexample has no cycle")?;
        }
        Ok(())
    })?;
    Ok(format!("{} graphs, n <= 5", graphs.len()))
}

fn c4_construction_equivalence() -> Check {
    let graphs = er_samples(1000, (2, 12), (0.25, 0.9), 0xC4);
    let orderings: Vec<Ordering> = graphs
        .iter()
        .enumerate()
        .map(|(i, g)| Ordering::random(g.n(), &mut rng::stream(rng::derive_seed(0xC40D, i as u64))))
        .collect();
    (0..graphs.len())
        .into_par_iter()
        .map(|i| {
            let (g, pi) = (&graphs[i], &orderings[i]);
            let direct = good_pair_graph(g, pi).unwrap();
            for tie in [TieBreak::UpperRankDescending, TieBreak::Lexicographic] {
                if good_pair_graph_by_deletion_with(g, pi, tie).unwrap() != direct {
                    return Err(format!("sample {i}: deletion ({tie:?}) differs"));
                }
            }
            let tree = min_weight_spanning_tree(g, pi).unwrap();
            if tree.edges.len() + 1 != g.n() || !tree.edges.iter().all(|&(u, v)| direct.has_edge(u, v)) {
                return Err(format!("sample {i}: tree not inside the good-pair subgraph"));
            }
            Ok(())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(format!("{} Erdos-Renyi samples, n <= 12, two tie-breaks", graphs.len()))
}

fn c5_forster() -> Check {
    let mut graphs = er_samples(300, (2, 50), (0.1, 0.6), 0xC5);
    graphs.extend(tree_samples(100, 50, 0xC51));
    graphs.extend(block_samples(100, 50, 0xC52));
    graphs.retain(|g| g.n() <= 50);
    if graphs.len() < 500 {
        return Err(format!("only {} samples with n <= 50", graphs.len()));
    }
    let worst = graphs
        .par_iter()
        .map(|g| {
            let exact = forster_check(g, Backend::Exact).unwrap();
            if !exact.holds {
                return Err(format!("exact total {} != {}\n{}", exact.total, exact.expected_total, g));
            }
            let float = forster_check(g, Backend::Floating).unwrap();
            if float.residual >= FLOAT_TOLERANCE {
                return Err(format!("floating residual {:e}\n{}", float.residual, g));
            }
            Ok(float.residual)
        })
        .collect::<Result<Vec<f64>, String>>()?
        .into_iter()
        .fold(0.0, f64::max);
    Ok(format!("{} samples, n <= 50, max floating residual {worst:.1e}", graphs.len()))
}

fn c6_resistance_oracle() -> Check {
    let mut graphs = er_samples(150, (2, 10), (0.3, 0.9), 0xC6);
    graphs.extend(block_samples(50, 10, 0xC61));
    graphs.retain(|g| g.n() <= 10);
    if graphs.len() < 200 {
        return Err(format!("only {} samples with n <= 10", graphs.len()));
    }
    let pairs: usize = graphs.iter().map(|g| g.n() * (g.n() - 1) / 2).sum();
    all_graphs(&graphs, |g| {
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let a = effective_resistance_exact(g, u, v).unwrap();
                let b = resistance_via_spanning_trees(g, u, v).unwrap();
                if a != b {
                    return Err(format!("R({u},{v}): {a} vs {b}"));
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{} samples, {pairs} vertex pairs, n <= 10", graphs.len()))
}

fn c7_edge_bound_and_strictness() -> Check {
    let blocks = block_samples(200, 20, 0xC7);
    let er = er_samples(300, (2, 15), (0.2, 0.8), 0xC71);
    let non_block = er.iter().filter(|g| !g.is_block_graph().unwrap()).count();
    let graphs: Vec<Graph> = blocks.into_iter().chain(er).collect();
    all_graphs(&graphs, |g| {
        let rep = check_bound_eq1(g).unwrap();
        if let Some(c) = rep.per_edge.iter().find(|c| c.resistance > c.bound) {
            return Err(format!("edge {}{}: {} > {}", c.u, c.v, c.resistance, c.bound));
        }
        if rep.any_strict == g.is_block_graph().unwrap() {
            return Err(format!("any_strict = {}", rep.any_strict));
        }
        Ok(())
    })?;
    Ok(format!("200 block-graph + 300 Erdos-Renyi samples ({non_block} non-block)"))
}

fn c8_path_generalization() -> Check {
    let mut graphs = er_samples(170, (2, 12), (0.25, 0.8), 0xC8);
    graphs.extend(block_samples(30, 12, 0xC81));
    graphs.retain(|g| g.n() <= 12);
    if graphs.len() < 200 {
        return Err(format!("only {} samples with n <= 12", graphs.len()));
    }
    all_graphs(&graphs, |g| {
        for ell in 2..=4 {
            let rep = verify_generalized(g, ell, DEFAULT_PATH_CAP).map_err(|e| e.to_string())?;
            if !rep.holds {
                return Err(format!("ell = {ell}: {} < {}", rep.sum, rep.bound));
            }
            if ell == 2 && rep != verify_theorem1(g).unwrap() {
                return Err("ell = 2 report differs".into());
            }
        }
        for (u, v) in g.edges() {
            let p = path_packing(g, u, v, 2, DEFAULT_PATH_CAP).unwrap().value;
            if p != g.common_neighbors(u, v).unwrap().len() {
                return Err(format!("P({u}{v}, 2) = {p}"));
            }
        }
        Ok(())
    })?;
    Ok(format!("{} samples, n <= 12, ell in {{2,3,4}}", graphs.len()))
}

fn c9_expectation() -> Check {
    let mut graphs = er_samples(200, (2, 10), (0.3, 0.9), 0xC9);
    graphs.extend(block_samples(50, 10, 0xC91));
    graphs.extend(connected_upto(4));
    all_graphs(&graphs, |g| {
        let exact = exact_expected_good_edges(g);
        if exact != common_neighbor_sum(g) * ExactRational::from_integer(2) {
            return Err("expected edges != 2 x sum".into());
        }
        if g.n() <= 7 {
            let avg = all_orderings_report(g, 7).unwrap().mean_good_edges;
            if avg != exact {
                return Err(format!("all-orderings average {avg} != {exact}"));
            }
        }
        Ok(())
    })?;
    let mc = &graphs[..40];
    for (i, g) in mc.iter().enumerate() {
        let rep = sample_good_edge_count(g, 10_000, 0xC92 + i as u64).unwrap();
        let err = (rep.sample_mean - rep.exact.to_f64()).abs();
        if err > 3.0 * rep.standard_error() + 1e-12 {
            return Err(format!(
                "Monte Carlo mean {} vs {} (se {})\n{}",
                rep.sample_mean,
                rep.exact,
                rep.standard_error(),
                g
            ));
        }
    }
    Ok(format!("{} samples exact, {} Monte Carlo runs of 10000 trials", graphs.len(), mc.len()))
}

fn c10_caro_wei() -> Check {
    let exhaustive = connected_upto(6);
    let mut sampled = er_samples(300, (7, 7), (0.15, 0.9), 0xCA);
    sampled.extend(er_samples(300, (8, 8), (0.15, 0.9), 0xCA1));
    let total = exhaustive.len() + sampled.len();
    let graphs: Vec<Graph> = exhaustive.into_iter().chain(sampled).collect();
    all_graphs(&graphs, |g| {
        let alpha = independence_number(g).unwrap();
        let sum = caro_wei_sum(g);
        (sum <= ExactRational::from_integer(alpha as i64))
            .then_some(())
            .ok_or_else(|| format!("{sum} > alpha = {alpha}"))
    })?;
    Ok(format!("{total} graphs (exhaustive n <= 6, 600 samples at n = 7, 8)"))
}

fn c11_witness() -> Check {
    let graphs = connected_upto(6);
    let non_block = graphs.iter().filter(|g| !g.is_block_graph().unwrap()).count();
    all_graphs(&graphs, |g| {
        let w = cycle_witness_ordering(g).map_err(|e| e.to_string())?;
        match (g.is_block_graph().unwrap(), w) {
            (true, None) => Ok(()),
            (true, Some(_)) => Err("witness for a block graph".into()),
            (false, None) => Err("no witness for a non-block graph".into()),
            (false, Some(w)) => {
                let h = good_pair_graph(g, &w.ordering).unwrap();
                find_cycle(&h).ok_or("witness ordering yields an acyclic subgraph")?;
                let k = w.cycle.len();
                let closed = (0..k).all(|i| h.has_edge(w.cycle[i], w.cycle[(i + 1) % k]));
                closed.then_some(()).ok_or_else(|| "reported cycle not in subgraph".into())
            }
        }
    })?;
    Ok(format!("{} graphs, {non_block} non-block, n <= 6", graphs.len()))
}

fn c12_rayleigh() -> Check {
    let graphs = er_samples(120, (3, 10), (0.3, 0.9), 0xCB);
    let mut deletions = 0usize;
    for g in &graphs {
        deletions += g.edges().iter().filter(|&&(a, b)| g.without_edge(a, b).unwrap().is_connected()).count();
    }
    all_graphs(&graphs, |g| {
        let base = ExactResistances::new(g).unwrap();
        for (a, b) in g.edges() {
            let h = g.without_edge(a, b).unwrap();
            if !h.is_connected() {
                continue;
            }
            let after = ExactResistances::new(&h).unwrap();
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    if after.get(u, v) < base.get(u, v) {
                        return Err(format!("removing {a}{b} lowers R({u},{v})"));
                    }
                }
            }
        }
        Ok(())
    })?;
    Ok(format!("{} samples, {deletions} non-bridge deletions, n <= 10", graphs.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("inequality and equality case, exhaustive n <= 6", c1_inequality_exhaustive),
        ("good-pair subgraph always connected, n <= 5", c2_always_connected),
        ("always a tree iff block graph, n <= 5", c3_tree_iff_block),
        ("construction equivalence", c4_construction_equivalence),
        ("edge-resistance sum equals n - 1", c5_forster),
        ("resistance vs spanning-tree oracle", c6_resistance_oracle),
        ("parallel-path bound and strictness", c7_edge_bound_and_strictness),
        ("bounded-length path generalization", c8_path_generalization),
        ("expectation identity", c9_expectation),
        ("Caro-Wei vs independence number", c10_caro_wei),
        ("cycle witness construction", c11_witness),
        ("Rayleigh monotonicity", c12_rayleigh),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] criterion {:>2}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {:>2}: {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
