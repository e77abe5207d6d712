//! Property fuzzer. Each trial draws a graph from one model family using a
//! seed derived from the master seed and the trial index, then evaluates the
//! requested properties. Violations are findings; guards and caps are
//! reported separately as errors.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::electrical::{
    check_bound_eq1, effective_resistance_exact, forster_check, resistance_via_spanning_trees,
    theorem3_bounds, Backend, ExactResistances, FloatResistances, FLOAT_TOLERANCE,
};
use crate::error::{resource, usage, Error, Result};
use crate::good_pairs::{
    all_orderings_report, exact_expected_good_edges, good_pair_graph, good_pair_graph_by_deletion_with,
    min_weight_spanning_tree, Ordering, TieBreak,
};
use crate::graph::Graph;
use crate::harness::{gen_graph, independence_number, GenSpec, Model};
use crate::inequality::{
    caro_wei_sum, common_neighbor_sum, packing_values, verify_generalized, verify_theorem1, DEFAULT_PATH_CAP,
};
use crate::rational::ExactRational;
use crate::rng;

pub const DEFAULT_FUZZ_MAX_N: usize = 8;

/// Orderings sampled per graph by the ordering-based properties.
const ORDERINGS_PER_GRAPH: u64 = 8;
/// Largest graph the exhaustive-ordering properties will enumerate.
const EXHAUSTIVE_ORDERINGS_MAX_N: usize = 7;
/// Largest graph for the all-pairs resistance properties.
const ALL_PAIRS_MAX_N: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    Inequality,
    AlwaysConnected,
    TreeIffBlock,
    ConstructionEquiv,
    Forster,
    EdgeBound,
    StrictnessIffNonblock,
    Rayleigh,
    PathGeneralization,
    CaroWei,
    ExpectationAvg,
    ResistanceOracle,
}

impl Property {
    pub const ALL: [Property; 12] = [
        Property::Inequality,
        Property::AlwaysConnected,
        Property::TreeIffBlock,
        Property::ConstructionEquiv,
        Property::Forster,
        Property::EdgeBound,
        Property::StrictnessIffNonblock,
        Property::Rayleigh,
        Property::PathGeneralization,
        Property::CaroWei,
        Property::ExpectationAvg,
        Property::ResistanceOracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Inequality => "theorem1",
            Property::AlwaysConnected => "lemma2a_connected",
            Property::TreeIffBlock => "lemma2b_tree_iff_block",
            Property::ConstructionEquiv => "construction_equiv",
            Property::Forster => "forster",
            Property::EdgeBound => "eq1_bound",
            Property::StrictnessIffNonblock => "strictness_iff_nonblock",
            Property::Rayleigh => "rayleigh",
            Property::PathGeneralization => "theorem3",
            Property::CaroWei => "caro_wei",
            Property::ExpectationAvg => "expectation_avg",
            Property::ResistanceOracle => "resistance_oracle",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| usage(format!("unknown property {s:?}")))
    }
}

impl Serialize for Property {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

/// Model family sampled by the fuzzer; sizes and densities are drawn per trial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelFamily {
    ErdosRenyi,
    RandomTree,
    BlockGraph,
}

impl FromStr for ModelFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "erdos_renyi" => Ok(ModelFamily::ErdosRenyi),
            "random_tree" => Ok(ModelFamily::RandomTree),
            "block_graph" => Ok(ModelFamily::BlockGraph),
            _ => Err(usage(format!("unknown model {s:?}"))),
        }
    }
}

impl ModelFamily {
    /// Draws concrete generator parameters with at most `max_n` vertices.
    pub fn draw(self, max_n: usize, rng: &mut impl Rng) -> GenSpec {
        let max_n = max_n.max(2) as u64;
        let model = match self {
            ModelFamily::ErdosRenyi => Model::ErdosRenyi {
                n: rng.random_range(2..=max_n) as usize,
                p: rng.random_range(0.3..0.9),
            },
            ModelFamily::RandomTree => Model::RandomTree {
                n: rng.random_range(1..=max_n) as usize,
            },
            ModelFamily::BlockGraph => {
                let max_clique = rng.random_range(2..=4u64.min(max_n)) as usize;
                let most = ((max_n as usize - 1) / (max_clique - 1)).max(1) as u64;
                Model::BlockGraph {
                    blocks: rng.random_range(1..=most) as usize,
                    max_clique,
                }
            }
        };
        GenSpec::new(model, rng.random())
    }
}

#[derive(Clone, Debug)]
pub struct FuzzConfig {
    pub models: Vec<ModelFamily>,
    pub trials: usize,
    pub properties: Vec<Property>,
    pub master_seed: u64,
    pub max_n: usize,
}

/// One property violation (or internal error), with everything needed to
/// replay it through [`check_property`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzFailure {
    pub trial: usize,
    pub property: Property,
    pub seed: u64,
    pub graph: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzReport {
    pub trials: usize,
    pub master_seed: u64,
    pub properties: Vec<Property>,
    pub models: Vec<ModelFamily>,
    pub checks: usize,
    pub failures: Vec<FuzzFailure>,
    /// Instances skipped by size guards or enumeration caps.
    pub errors: Vec<FuzzFailure>,
    pub elapsed_ms: u128,
}

impl FuzzReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Result of one property evaluation: `Violation` carries the detail.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Violation(String),
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        // negated so that a NaN comparison counts as a violation
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !$cond {
            return Ok(Outcome::Violation(format!($($fmt)+)));
        }
    };
}

fn sampled_orderings(n: usize, seed: u64) -> impl Iterator<Item = Ordering> {
    (0..ORDERINGS_PER_GRAPH).map(move |i| Ordering::random(n, &mut rng::stream(rng::derive_seed(seed, i))))
}

fn guard(g: &Graph, max_n: usize, what: &str) -> Result<()> {
    if g.n() > max_n {
        return Err(resource(format!("{what} is limited to n <= {max_n}, got {}", g.n())));
    }
    Ok(())
}

/// Evaluates one property on one graph. `seed` drives any sampling the
/// property performs, so the same `(property, graph, seed)` always replays.
pub fn check_property(property: Property, g: &Graph, seed: u64) -> Result<Outcome> {
    match property {
        Property::Inequality => {
            let rep = verify_theorem1(g)?;
            ensure!(rep.holds, "sum {} < bound {}", rep.sum, rep.bound);
            ensure!(
                rep.consistent == Some(true),
                "equality = {} but block_graph = {}",
                rep.equality,
                rep.block_graph
            );
        }
        Property::AlwaysConnected => {
            for pi in sampled_orderings(g.n(), seed) {
                let h = good_pair_graph(g, &pi)?;
                ensure!(h.is_connected(), "good-pair subgraph disconnected for ordering {pi}");
            }
        }
        Property::TreeIffBlock => {
            guard(g, EXHAUSTIVE_ORDERINGS_MAX_N, "exhaustive ordering check")?;
            let rep = all_orderings_report(g, EXHAUSTIVE_ORDERINGS_MAX_N)?;
            let block = g.is_block_graph()?;
            ensure!(rep.always_connected, "some ordering gives a disconnected subgraph");
            ensure!(rep.always_tree == block, "always_tree = {} but block_graph = {block}", rep.always_tree);
            ensure!(
                rep.counterexample.is_some() != block,
                "counterexample presence disagrees with block_graph = {block}"
            );
        }
        Property::ConstructionEquiv => {
            for pi in sampled_orderings(g.n(), seed) {
                let direct = good_pair_graph(g, &pi)?;
                for tie in [TieBreak::UpperRankDescending, TieBreak::Lexicographic] {
                    let swept = good_pair_graph_by_deletion_with(g, &pi, tie)?;
                    ensure!(swept == direct, "deletion sweep ({tie:?}) differs for ordering {pi}");
                }
                if g.is_connected() {
                    let tree = min_weight_spanning_tree(g, &pi)?;
                    ensure!(tree.edges.len() + 1 == g.n().max(1), "spanning tree has {} edges", tree.edges.len());
                    ensure!(
                        tree.edges.iter().all(|&(u, v)| direct.has_edge(u, v)),
                        "minimum-weight tree edge outside the good-pair subgraph for ordering {pi}"
                    );
                }
            }
        }
        Property::Forster => {
            let exact = forster_check(g, Backend::Exact)?;
            ensure!(exact.holds, "exact total {} != {}", exact.total, exact.expected_total);
            let float = forster_check(g, Backend::Floating)?;
            ensure!(float.holds, "floating residual {:e}", float.residual);
        }
        Property::EdgeBound => {
            let rep = check_bound_eq1(g)?;
            if let Some(c) = rep.per_edge.iter().find(|c| c.resistance > c.bound) {
                return Ok(Outcome::Violation(format!(
                    "edge {}{}: R = {} > {}",
                    c.u, c.v, c.resistance, c.bound
                )));
            }
        }
        Property::StrictnessIffNonblock => {
            let rep = check_bound_eq1(g)?;
            ensure!(
                rep.strictness_consistent,
                "any_strict = {} but block_graph = {}",
                rep.any_strict,
                rep.block_graph
            );
        }
        Property::Rayleigh => {
            guard(g, ALL_PAIRS_MAX_N, "rayleigh check")?;
            return rayleigh(g);
        }
        Property::PathGeneralization => {
            for ell in 2..=4 {
                let rep = verify_generalized(g, ell, DEFAULT_PATH_CAP)?;
                ensure!(rep.holds, "ell = {ell}: sum {} < bound {}", rep.sum, rep.bound);
                if let Some(c) = theorem3_bounds(g, ell, DEFAULT_PATH_CAP)?.into_iter().find(|c| !c.holds) {
                    return Ok(Outcome::Violation(format!(
                        "ell = {ell}, edge {}{}: R = {} > {}",
                        c.u, c.v, c.resistance, c.bound
                    )));
                }
            }
            ensure!(
                verify_generalized(g, 2, DEFAULT_PATH_CAP)? == verify_theorem1(g)?,
                "ell = 2 report differs from the common-neighbour report"
            );
            let p2 = packing_values(g, 2, DEFAULT_PATH_CAP)?;
            for ((u, v), p) in g.edges().into_iter().zip(p2) {
                let k = g.common_neighbor_count(u, v);
                ensure!(p == k, "edge {u}{v}: P(uv, 2) = {p} but {k} common neighbours");
            }
        }
        Property::CaroWei => {
            let sum = caro_wei_sum(g);
            let alpha = independence_number(g)?;
            ensure!(
                sum <= ExactRational::from_integer(alpha as i64),
                "caro-wei sum {sum} exceeds independence number {alpha}"
            );
        }
        Property::ExpectationAvg => {
            let exact = exact_expected_good_edges(g);
            let doubled = common_neighbor_sum(g) * ExactRational::from_integer(2);
            ensure!(exact == doubled, "expected edges {exact} != 2 x sum {doubled}");
            if g.n() <= EXHAUSTIVE_ORDERINGS_MAX_N && g.n() >= 1 {
                let rep = all_orderings_report(g, EXHAUSTIVE_ORDERINGS_MAX_N)?;
                ensure!(
                    rep.mean_good_edges == exact,
                    "average over all orderings {} != {exact}",
                    rep.mean_good_edges
                );
            }
        }
        Property::ResistanceOracle => {
            guard(g, ALL_PAIRS_MAX_N, "spanning-tree resistance oracle")?;
            let float = FloatResistances::new(g)?;
            for u in 0..g.n() {
                for v in u + 1..g.n() {
                    let direct = effective_resistance_exact(g, u, v)?;
                    let oracle = resistance_via_spanning_trees(g, u, v)?;
                    ensure!(direct == oracle, "R({u},{v}): solve {direct} vs tree ratio {oracle}");
                    let diff = (direct.to_f64() - float.get(u, v)).abs();
                    ensure!(diff < FLOAT_TOLERANCE, "R({u},{v}): floating differs by {diff:e}");
                }
            }
        }
    }
    Ok(Outcome::Pass)
}

fn rayleigh(g: &Graph) -> Result<Outcome> {
    let base = ExactResistances::new(g)?;
    for (a, b) in g.edges() {
        let h = g.without_edge(a, b)?;
        if !h.is_connected() {
            continue;
        }
        let after = ExactResistances::new(&h)?;
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                let (r0, r1) = (base.get(u, v), after.get(u, v));
                ensure!(r1 >= r0, "removing {a}{b} lowers R({u},{v}) from {r0} to {r1}");
            }
        }
    }
    Ok(Outcome::Pass)
}

/// Runs every property on `trials` generated graphs. Trials run in parallel;
/// results are reported in trial order.
pub fn fuzz_run(config: &FuzzConfig) -> Result<FuzzReport> {
    if config.properties.is_empty() {
        return Err(usage("at least one property is required"));
    }
    if config.models.is_empty() {
        return Err(usage("at least one model is required"));
    }
    let started = Instant::now();
    let per_trial: Vec<(Vec<FuzzFailure>, Vec<FuzzFailure>, usize)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| run_trial(config, trial))
        .collect();

    let mut report = FuzzReport {
        trials: config.trials,
        master_seed: config.master_seed,
        properties: config.properties.clone(),
        models: config.models.clone(),
        checks: 0,
        failures: Vec::new(),
        errors: Vec::new(),
        elapsed_ms: 0,
    };
    for (failures, errors, checks) in per_trial {
        report.failures.extend(failures);
        report.errors.extend(errors);
        report.checks += checks;
    }
    report.elapsed_ms = started.elapsed().as_millis();
    Ok(report)
}

fn run_trial(config: &FuzzConfig, trial: usize) -> (Vec<FuzzFailure>, Vec<FuzzFailure>, usize) {
    let trial_seed = rng::derive_seed(config.master_seed, trial as u64);
    let family = config.models[trial % config.models.len()];
    let spec = family.draw(config.max_n, &mut rng::stream(trial_seed));
    let mut failures = Vec::new();
    let mut errors = Vec::new();
    let record = |property, seed, graph: &str, detail: String| FuzzFailure {
        trial,
        property,
        seed,
        graph: graph.to_string(),
        detail,
    };

    let g = match gen_graph(&spec) {
        Ok(g) => g,
        Err(e) => {
            for &p in &config.properties {
                errors.push(record(p, trial_seed, "", format!("generator {spec:?}: {e}")));
            }
            return (failures, errors, 0);
        }
    };
    let text = g.to_edge_list();
    let mut checks = 0;
    for (i, &property) in config.properties.iter().enumerate() {
        let seed = rng::derive_seed(trial_seed, i as u64);
        match check_property(property, &g, seed) {
            Ok(Outcome::Pass) => checks += 1,
            Ok(Outcome::Violation(detail)) => {
                checks += 1;
                failures.push(record(property, seed, &text, detail));
            }
            Err(e @ Error::Assertion(_)) => failures.push(record(property, seed, &text, e.to_string())),
            Err(e) => errors.push(record(property, seed, &text, e.to_string())),
        }
    }
    (failures, errors, checks)
}
