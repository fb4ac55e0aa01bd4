//! `pe`: command-line front end for pe-core.
//!
//! Exit codes: 0 when a command ran to completion (including NO_SOLUTION
//! and NOT_EXISTS answers), 2 for usage and input errors, 3 when a budget
//! ran out, 4 for internal failures.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pe_core::bench::{bench_suite, records_csv, report_json, verify_dominating, verify_independent, BenchConfig};
use pe_core::formula::{build_delta, parse_formula, DistanceFormula};
use pe_core::graph::{generate, parse_graph, write_edge_list, Dist, Family, Graph};
use pe_core::lab::{
    index_of, materialize, min_weak_helly, BipartiteGraph, ObstructionKind, DEFAULT_MATERIALIZE_BUDGET,
};
use pe_core::oracle::{ImplicitBipartite, WeakWitness, DEFAULT_EXTENSION_BUDGET};
use pe_core::profiles::{measure_profile_complexity, DEFAULT_ENUMERATION_BUDGET};
use pe_core::solvers::{
    coverage_core, independent_set_solve, ladder_solve, semi_ladder_solve, Decision, DecisionKind,
    IndependentOutcome, SplitterStrategy, DEFAULT_DEPTH_BUDGET, DEFAULT_MAX_ROUNDS,
};
use pe_core::Error;

const SCHEMA: &str = "pe/1";

#[derive(Parser)]
#[command(name = "pe", version, about = "Progressive-exploration solvers for distance problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance-r dominating set of size k via the semi-ladder algorithm.
    SolveDomset {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: Dist,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Decide `exists x forall y phi(x; y)` for a formula given as JSON.
    /// Positive formulas use the semi-ladder algorithm, others the ladder
    /// algorithm with Helly constant `p`.
    SolveDomsetFormula {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        /// Helly constant for the ladder algorithm; computed from the
        /// materialised search space when omitted.
        #[arg(long)]
        p: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
    },
    /// Distance-r independent set of size k via the pre-core solver.
    SolveIndep {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: Dist,
        #[arg(long, default_value = "ball-max-degree")]
        strategy: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH_BUDGET)]
        depth_budget: usize,
    },
    /// Coverage core of the search space of a formula.
    CoverageCore {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        formula: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_ROUNDS)]
        max_rounds: usize,
        #[arg(long, default_value_t = DEFAULT_EXTENSION_BUDGET)]
        extension_budget: u128,
    },
    /// Co-matching, ladder and semi-ladder indices of a bipartite graph.
    MeasureIndices {
        #[arg(long)]
        bipartite: PathBuf,
    },
    /// Number of distance-r profiles over pivot sets of size m.
    MeasureProfiles {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        r: Dist,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Write a generated instance as an edge list.
    Generate {
        #[arg(long)]
        family: String,
        /// Family parameters as a JSON object, e.g. '{"rows":3,"cols":4}'.
        #[arg(long, default_value = "{}")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a benchmark suite described by a JSON config.
    Bench {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Leave out the timing column so output is reproducible.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Input(_) | Error::Parse { .. } | Error::Schema { .. } => 2,
            Error::Resource(_) | Error::SplitterBudget { .. } => 3,
            _ => 4,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn internal(message: impl Into<String>) -> Failure {
    Failure {
        code: 4,
        message: message.into(),
    }
}

type Out = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(parse_graph(&read(path)?)?)
}

fn load_formula(path: &Path) -> Result<DistanceFormula, Failure> {
    Ok(parse_formula(&read(path)?)?)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serialises")
}

fn decision_json(d: &Decision) -> Value {
    let mut v = json!({
        "schema": SCHEMA,
        "decision": d.kind.label(),
        "rounds": d.transcript.rounds,
        "oracle_calls": d.transcript.oracle_calls,
        "elapsed_micros": d.transcript.elapsed_micros,
        "transcript": d.transcript,
    });
    match &d.kind {
        DecisionKind::Solution(a) => v["solution"] = json!(a),
        DecisionKind::NoSolution(b) | DecisionKind::NotExists(b) => v["witnesses"] = json!(b),
        DecisionKind::Exists => {}
    }
    v
}

fn solve_domset(graph: &Path, k: usize, r: Dist, max_rounds: usize) -> Out {
    let g = load_graph(graph)?;
    let ib = ImplicitBipartite::new(&g, build_delta(k, r)?)?;
    let d = semi_ladder_solve(&ib, max_rounds)?;
    if let DecisionKind::Solution(a) = &d.kind {
        if !verify_dominating(&g, a, r)? {
            return Err(internal(format!("solution {a:?} fails direct verification")));
        }
    }
    Ok(pretty(&decision_json(&d)))
}

fn solve_formula(graph: &Path, formula: &Path, p: Option<usize>, max_rounds: usize) -> Out {
    let g = load_graph(graph)?;
    let f = load_formula(formula)?;
    let ib = ImplicitBipartite::new(&g, f.clone())?;
    let d = if f.is_positive() && p.is_none() {
        semi_ladder_solve(&ib, max_rounds)?
    } else {
        let p = match p {
            Some(p) => p,
            None => min_weak_helly(&materialize(&g, &f, DEFAULT_MATERIALIZE_BUDGET)?).max(1),
        };
        ladder_solve(&ib, p, max_rounds)?
    };
    if let DecisionKind::Solution(a) = &d.kind {
        if ib.weak_witness_oracle(a)? != WeakWitness::Solution {
            return Err(internal(format!("solution {a:?} fails verification")));
        }
    }
    Ok(pretty(&decision_json(&d)))
}

fn solve_indep(graph: &Path, k: usize, r: Dist, strategy: &str, depth_budget: usize) -> Out {
    let g = load_graph(graph)?;
    let rule: SplitterStrategy = strategy.parse()?;
    let res = independent_set_solve(&g, k, r, &rule, depth_budget)?;
    let mut v = json!({
        "schema": SCHEMA,
        "strategy": rule.name(),
        "precore_size": res.precore_size,
        "profiles": res.profiles,
        "multisets_checked": res.multisets_checked,
        "exchange_steps": res.exchange_steps,
        "elapsed_micros": res.elapsed_micros,
    });
    match &res.outcome {
        IndependentOutcome::Solution(x) => {
            if !verify_independent(&g, x, r)? {
                return Err(internal(format!("solution {x:?} fails direct verification")));
            }
            v["decision"] = json!("SOLUTION");
            v["solution"] = json!(x);
        }
        IndependentOutcome::NoSolution(q) => {
            v["decision"] = json!("NO_SOLUTION");
            v["precore"] = json!(q);
        }
    }
    Ok(pretty(&v))
}

fn run_core(graph: &Path, formula: &Path, max_rounds: usize, budget: u128) -> Out {
    let g = load_graph(graph)?;
    let ib = ImplicitBipartite::new(&g, load_formula(formula)?)?;
    let res = coverage_core(&ib, max_rounds, budget)?;
    Ok(pretty(&json!({
        "schema": SCHEMA,
        "core": res.core,
        "core_size": res.core.len(),
        "rounds": res.transcript.rounds,
        "oracle_calls": res.transcript.oracle_calls,
        "elapsed_micros": res.transcript.elapsed_micros,
    })))
}

fn measure_indices(bipartite: &Path) -> Out {
    let h = BipartiteGraph::parse(&read(bipartite)?)?;
    let mut v = json!({
        "schema": SCHEMA,
        "left": h.left(),
        "right": h.right(),
        "edges": h.edge_count(),
        "weak_helly": min_weak_helly(&h),
    });
    for kind in ObstructionKind::ALL {
        let (index, obstruction) = index_of(&h, kind)?;
        v[kind.name()] = json!(index);
        v["obstructions"][kind.name()] = json!(obstruction);
    }
    Ok(pretty(&v))
}

fn measure_profiles(graph: &Path, r: Dist, m: usize, trials: usize, seed: u64) -> Out {
    let g = load_graph(graph)?;
    let c = measure_profile_complexity(&g, r, m, trials, seed, DEFAULT_ENUMERATION_BUDGET)?;
    Ok(pretty(&json!({
        "schema": SCHEMA,
        "n": g.n(),
        "r": r,
        "m": m,
        "count": c.count,
        "exact": c.exact,
    })))
}

fn run_generate(family: &str, params: &str, seed: u64, out: Option<&Path>) -> Out {
    let mut spec: Value = serde_json::from_str(params).map_err(|e| usage(format!("--params: {e}")))?;
    let Some(obj) = spec.as_object_mut() else {
        return Err(usage("--params must be a JSON object"));
    };
    obj.insert("family".into(), json!(family));
    let family: Family = serde_json::from_value(spec).map_err(|e| usage(format!("family `{family}`: {e}")))?;
    let text = write_edge_list(&generate(&family, seed)?);
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn run_bench(config: &Path, format: Format, no_timing: bool) -> Out {
    let config = BenchConfig::parse(&read(config)?)?;
    let report = bench_suite(&config);
    match format {
        Format::Csv => Ok(records_csv(&report.records, !no_timing)?),
        Format::Json => Ok(report_json(&report)),
    }
}

fn run(cli: Cli) -> Out {
    match cli.command {
        Command::SolveDomset { graph, k, r, max_rounds } => solve_domset(&graph, k, r, max_rounds),
        Command::SolveDomsetFormula {
            graph,
            formula,
            p,
            max_rounds,
        } => solve_formula(&graph, &formula, p, max_rounds),
        Command::SolveIndep {
            graph,
            k,
            r,
            strategy,
            depth_budget,
        } => solve_indep(&graph, k, r, &strategy, depth_budget),
        Command::CoverageCore {
            graph,
            formula,
            max_rounds,
            extension_budget,
        } => run_core(&graph, &formula, max_rounds, extension_budget),
        Command::MeasureIndices { bipartite } => measure_indices(&bipartite),
        Command::MeasureProfiles {
            graph,
            r,
            m,
            trials,
            seed,
        } => measure_profiles(&graph, r, m, trials, seed),
        Command::Generate {
            family,
            params,
            seed,
            out,
        } => run_generate(&family, &params, seed, out.as_deref()),
        Command::Bench {
            config,
            format,
            no_timing,
        } => run_bench(&config, format, no_timing),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            if !text.is_empty() && !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("pe: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
