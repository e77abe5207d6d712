use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{ArgGroup, Parser, Subcommand};
use serde_json::{json, Value};

use cnbound::electrical::{check_bound_eq1, forster_check, theorem3_bounds, Backend};
use cnbound::good_pairs::{
    all_orderings_report, cycle_witness_ordering, find_cycle, good_pair_graph, sample_good_edge_count, Ordering,
    DEFAULT_ORDERING_LIMIT,
};
use cnbound::harness::{fuzz_run, gen_graph, FuzzConfig, GenSpec, Model, ModelFamily, Property, DEFAULT_FUZZ_MAX_N};
use cnbound::inequality::{verify_generalized, verify_theorem1, DEFAULT_PATH_CAP};
use cnbound::{parse_edge_list, report, rng, Error, Graph};

/// Verifier and fuzzer for the common-neighbourhood edge inequality.
#[derive(Parser)]
#[command(name = "cnbound", version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the inequality and its equality case on a graph.
    Verify {
        file: PathBuf,
        /// Also check the bounded-length path generalization.
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Build the good-pair subgraph for one ordering, or check all orderings.
    #[command(group(ArgGroup::new("source").required(true).args(["ordering", "seed", "all"])))]
    GoodPairs {
        file: PathBuf,
        /// Comma-separated ranks, one per vertex.
        #[arg(long)]
        ordering: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        all: bool,
        /// Write the graph as DOT with good-pair edges highlighted.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Exact expected number of good pairs against a Monte Carlo estimate.
    Expectation {
        file: PathBuf,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Edge resistances, the total-resistance identity and the edge bounds.
    Resistance {
        file: PathBuf,
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        #[arg(long)]
        float: bool,
        #[arg(long)]
        ell: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Ordering whose good-pair subgraph has a cycle, for non-block graphs.
    Witness {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Generate a random graph in edge-list format.
    Gen {
        /// erdos_renyi, random_tree or block_graph
        #[arg(long)]
        model: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long)]
        max_clique: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Run properties against random graphs.
    Fuzz {
        /// Comma-separated property names, or "all".
        #[arg(long)]
        props: String,
        /// Comma-separated model names.
        #[arg(long)]
        model: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_FUZZ_MAX_N)]
        max_n: usize,
        #[arg(long)]
        json: bool,
    },
}

fn read_graph(path: &Path) -> anyhow::Result<Graph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_edge_list(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(value: &Value, json: bool) {
    if json {
        println!("{}", report::to_json(value));
    } else {
        print!("{}", report::to_text(value));
    }
}

fn to_value(value: &impl serde::Serialize) -> Value {
    serde_json::to_value(value).expect("reports serialize")
}

fn edges_value(g: &Graph) -> Value {
    json!(g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>())
}

fn verify(file: &Path, ell: Option<usize>, json: bool) -> anyhow::Result<bool> {
    let g = read_graph(file)?;
    let base = verify_theorem1(&g)?;
    let mut ok = base.ok();
    let mut out = json!({ "n": g.n(), "m": g.m(), "theorem": base });
    if let Some(ell) = ell {
        let gen = verify_generalized(&g, ell, DEFAULT_PATH_CAP)?;
        ok &= gen.ok();
        out["ell"] = json!(ell);
        out["generalized"] = to_value(&gen);
    }
    out["ok"] = json!(ok);
    emit(&out, json);
    Ok(ok)
}

fn good_pairs(
    file: &Path,
    ordering: Option<String>,
    seed: Option<u64>,
    dot: Option<PathBuf>,
    json: bool,
) -> anyhow::Result<bool> {
    let g = read_graph(file)?;
    let (out, highlight, ok) = match (ordering, seed) {
        (None, None) => {
            let rep = all_orderings_report(&g, DEFAULT_ORDERING_LIMIT)?;
            let ok = rep.always_connected && rep.always_tree == g.is_block_graph()?;
            let highlight = match &rep.counterexample {
                Some(pi) => Some(good_pair_graph(&g, pi)?.edges()),
                None => None,
            };
            (to_value(&rep), highlight, ok)
        }
        (ordering, seed) => {
            let pi = match (ordering, seed) {
                (Some(text), _) => text.parse::<Ordering>()?,
                (None, Some(seed)) => Ordering::random(g.n(), &mut rng::stream(seed)),
                (None, None) => unreachable!(),
            };
            if pi.len() != g.n() {
                return Err(Error::Usage(format!("ordering has {} entries, graph has {} vertices", pi.len(), g.n())).into());
            }
            let h = good_pair_graph(&g, &pi)?;
            let connected = h.is_connected();
            let tree = connected && h.m() + 1 == h.n();
            let out = json!({
                "ordering": pi,
                "edges": edges_value(&h),
                "m": h.m(),
                "connected": connected,
                "tree": tree,
                "cycle": find_cycle(&h),
            });
            (out, Some(h.edges()), connected || g.n() == 0)
        }
    };
    if let Some(path) = dot {
        fs::write(&path, g.to_dot(highlight.as_deref())?).with_context(|| format!("writing {}", path.display()))?;
    }
    emit(&out, json);
    Ok(ok)
}

fn expectation(file: &Path, trials: usize, seed: u64, json: bool) -> anyhow::Result<bool> {
    let g = read_graph(file)?;
    if trials == 0 {
        return Err(Error::Usage("--trials must be at least 1".into()).into());
    }
    let rep = sample_good_edge_count(&g, trials, seed)?;
    let se = rep.standard_error();
    let deviation = (rep.sample_mean - rep.exact.to_f64()).abs();
    let mut out = to_value(&rep);
    out["standard_error"] = json!(se);
    out["deviation"] = json!(deviation);
    out["within_3_se"] = json!(deviation <= 3.0 * se + 1e-12);
    emit(&out, json);
    Ok(true)
}

fn resistance(file: &Path, exact: bool, float: bool, ell: Option<usize>, json: bool) -> anyhow::Result<bool> {
    let g = read_graph(file)?;
    let backend = match (exact, float) {
        (true, _) => Backend::Exact,
        (_, true) => Backend::Floating,
        _ => Backend::Auto,
    };
    let forster = forster_check(&g, backend)?;
    let bounds = check_bound_eq1(&g)?;
    let mut ok = forster.holds && bounds.all_hold && bounds.strictness_consistent;
    let mut out = json!({ "n": g.n(), "m": g.m(), "forster": forster, "edge_bounds": bounds });
    if let Some(ell) = ell {
        let checks = theorem3_bounds(&g, ell, DEFAULT_PATH_CAP)?;
        ok &= checks.iter().all(|c| c.holds);
        out["ell"] = json!(ell);
        out["path_bounds"] = to_value(&checks);
    }
    out["ok"] = json!(ok);
    emit(&out, json);
    Ok(ok)
}

fn witness(file: &Path, json: bool) -> anyhow::Result<bool> {
    let g = read_graph(file)?;
    match cycle_witness_ordering(&g)? {
        Some(w) => emit(&to_value(&w), json),
        None if json => emit(&json!({ "block_graph": true, "witness": null }), true),
        None => println!("block graph: no witness exists"),
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn generate(
    model: &str,
    n: Option<usize>,
    p: Option<f64>,
    blocks: Option<usize>,
    max_clique: Option<usize>,
    seed: u64,
    output: Option<PathBuf>,
) -> anyhow::Result<bool> {
    let need = |flag: &str| Error::Usage(format!("--model {model} requires {flag}"));
    let model = match model {
        "erdos_renyi" => Model::ErdosRenyi {
            n: n.ok_or_else(|| need("--n"))?,
            p: p.ok_or_else(|| need("--p"))?,
        },
        "random_tree" => Model::RandomTree { n: n.ok_or_else(|| need("--n"))? },
        "block_graph" => Model::BlockGraph {
            blocks: blocks.ok_or_else(|| need("--blocks"))?,
            max_clique: max_clique.ok_or_else(|| need("--max-clique"))?,
        },
        other => return Err(Error::Usage(format!("unknown model {other:?}")).into()),
    };
    let g = gen_graph(&GenSpec::new(model, seed))?;
    match output {
        Some(path) => fs::write(&path, g.to_edge_list()).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", g.to_edge_list()),
    }
    Ok(true)
}

fn parse_list<T: std::str::FromStr<Err = Error>>(text: &str) -> Result<Vec<T>, Error> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(str::parse).collect()
}

fn fuzz(props: &str, model: &str, trials: usize, seed: u64, max_n: usize, json: bool) -> anyhow::Result<bool> {
    let properties = if props == "all" { Property::ALL.to_vec() } else { parse_list(props)? };
    let config = FuzzConfig {
        models: parse_list::<ModelFamily>(model)?,
        trials,
        properties,
        master_seed: seed,
        max_n,
    };
    let rep = fuzz_run(&config)?;
    let mut out = to_value(&rep);
    out["passed"] = json!(rep.passed());
    emit(&out, json);
    Ok(rep.passed())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    match cli.command {
        Command::Verify { file, ell, json } => verify(&file, ell, json),
        Command::GoodPairs { file, ordering, seed, all: _, dot, json } => good_pairs(&file, ordering, seed, dot, json),
        Command::Expectation { file, trials, seed, json } => expectation(&file, trials, seed, json),
        Command::Resistance { file, exact, float, ell, json } => resistance(&file, exact, float, ell, json),
        Command::Witness { file, json } => witness(&file, json),
        Command::Gen { model, n, p, blocks, max_clique, seed, output } => {
            generate(&model, n, p, blocks, max_clique, seed, output)
        }
        Command::Fuzz { props, model, trials, seed, max_n, json } => fuzz(&props, &model, trials, seed, max_n, json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            // An internal self-check failing is a finding, everything else is bad input.
            match e.downcast_ref::<Error>() {
                Some(Error::Assertion(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
