//! Benchmark harness: runs a solver over a grid of generated instances and
//! reports one record per (instance, k, r), plus a time-versus-size table.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::build_delta;
use crate::graph::{generate, Dist, Family, Graph, Vertex};
use crate::lab::{index_of, materialize, ObstructionKind};
use crate::oracle::ImplicitBipartite;
use crate::solvers::{
    brute_force_dominating, brute_force_independent, independent_set_solve, semi_ladder_solve, DecisionKind,
    IndependentOutcome, SplitterStrategy, DEFAULT_BRUTE_FORCE_BUDGET, DEFAULT_DEPTH_BUDGET, DEFAULT_MAX_ROUNDS,
};

pub const SCHEMA: &str = "pe/1";

/// Largest instance on which bound checks materialise `phi(G)`.
pub const BOUND_CHECK_MAX_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchMode {
    /// Semi-ladder algorithm on `delta^k_r`.
    #[default]
    Domination,
    /// Pre-core based independent set solver.
    Independence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub instances: Vec<InstanceSpec>,
    pub ks: Vec<usize>,
    pub rs: Vec<Dist>,
    #[serde(default)]
    pub mode: BenchMode,
    /// Timed runs per record; the fastest is reported.
    #[serde(default = "one")]
    pub repeats: usize,
    /// Worker threads; 0 means one per core.
    #[serde(default = "one")]
    pub workers: usize,
    /// Compare every decision with the brute-force solver.
    #[serde(default)]
    pub cross_validate: bool,
    /// On small instances, compare rounds with the exact semi-ladder index.
    #[serde(default)]
    pub bound_check: bool,
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema {
            pointer: String::new(),
            message: e.to_string(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub family: String,
    pub n: usize,
    pub edges: usize,
    /// `|V| + |E|`.
    pub size: usize,
    pub formula: String,
    pub k: usize,
    pub r: Dist,
    pub decision: String,
    pub rounds: usize,
    pub candidate_calls: usize,
    pub weak_witness_calls: usize,
    pub strong_witness_calls: usize,
    pub extension_calls: usize,
    pub wall_micros: u64,
    pub bound: Option<usize>,
    pub bound_respected: Option<bool>,
    pub brute_force_agrees: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingRow {
    pub family: String,
    pub k: usize,
    pub r: Dist,
    pub size: usize,
    pub wall_micros: u64,
    /// Ratios against the previous row of the same series.
    pub size_ratio: Option<f64>,
    pub time_ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchReport {
    pub schema: &'static str,
    pub records: Vec<BenchRecord>,
    pub scaling: Vec<ScalingRow>,
}

struct Job<'a> {
    index: usize,
    spec: &'a InstanceSpec,
    k: usize,
    r: Dist,
}

/// Runs every (instance, k, r) combination. Per-instance failures are
/// recorded in the `error` column and the suite carries on; records come
/// back in config order whatever the worker count.
pub fn bench_suite(config: &BenchConfig) -> BenchReport {
    let jobs: Vec<Job> = config
        .instances
        .iter()
        .enumerate()
        .flat_map(|(index, spec)| {
            config
                .ks
                .iter()
                .flat_map(move |&k| config.rs.iter().map(move |&r| Job { index, spec, k, r }))
        })
        .collect();
    let run = || jobs.par_iter().map(|job| run_job(config, job)).collect::<Vec<_>>();
    let records = match rayon::ThreadPoolBuilder::new().num_threads(config.workers).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    let scaling = scaling_table(&records);
    BenchReport {
        schema: SCHEMA,
        records,
        scaling,
    }
}

fn run_job(config: &BenchConfig, job: &Job) -> BenchRecord {
    let mut rec = BenchRecord {
        instance_id: format!("{}-{}-s{}", job.index, job.spec.family.name(), job.spec.seed),
        family: job.spec.family.name().to_string(),
        n: 0,
        edges: 0,
        size: 0,
        formula: match config.mode {
            BenchMode::Domination => format!("delta^{}_{}", job.k, job.r),
            BenchMode::Independence => format!("eta^{}_{}", job.k, job.r),
        },
        k: job.k,
        r: job.r,
        decision: String::new(),
        rounds: 0,
        candidate_calls: 0,
        weak_witness_calls: 0,
        strong_witness_calls: 0,
        extension_calls: 0,
        wall_micros: 0,
        bound: None,
        bound_respected: None,
        brute_force_agrees: None,
        error: None,
    };
    let g = match generate(&job.spec.family, job.spec.seed) {
        Ok(g) => g,
        Err(e) => {
            rec.error = Some(e.to_string());
            return rec;
        }
    };
    rec.n = g.n();
    rec.edges = g.edge_count();
    rec.size = g.size();
    let result = match config.mode {
        BenchMode::Domination => domination(config, &g, job, &mut rec),
        BenchMode::Independence => independence(config, &g, job, &mut rec),
    };
    if let Err(e) = result {
        rec.error = Some(e.to_string());
    }
    rec
}

fn timed<T>(repeats: usize, mut f: impl FnMut() -> Result<T>) -> Result<(T, u64)> {
    let mut best = u64::MAX;
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let out = f()?;
        best = best.min(start.elapsed().as_micros() as u64);
        last = Some(out);
    }
    Ok((last.expect("at least one run"), best))
}

fn domination(config: &BenchConfig, g: &Graph, job: &Job, rec: &mut BenchRecord) -> Result<()> {
    let f = build_delta(job.k, job.r)?;
    let ib = ImplicitBipartite::new(g, f.clone())?;
    let (d, wall) = timed(config.repeats, || semi_ladder_solve(&ib, DEFAULT_MAX_ROUNDS))?;
    rec.wall_micros = wall;
    rec.decision = d.kind.label().to_string();
    rec.rounds = d.transcript.rounds;
    let calls = d.transcript.oracle_calls;
    rec.candidate_calls = calls.candidate;
    rec.weak_witness_calls = calls.weak_witness;
    rec.strong_witness_calls = calls.strong_witness;
    rec.extension_calls = calls.extension;
    if let DecisionKind::Solution(a) = &d.kind {
        if !verify_dominating(g, a, job.r)? {
            return Err(Error::Invariant(format!("solution {a:?} fails direct verification")));
        }
    }
    if config.cross_validate {
        let truth = brute_force_dominating(g, job.k, job.r, DEFAULT_BRUTE_FORCE_BUDGET)?;
        rec.brute_force_agrees = Some(truth.is_some() == d.kind.is_positive());
    }
    if config.bound_check && g.n() <= BOUND_CHECK_MAX_VERTICES {
        let h = materialize(g, &f, crate::lab::DEFAULT_MATERIALIZE_BUDGET)?;
        let (index, _) = index_of(&h, ObstructionKind::Semiladder)?;
        rec.bound = Some(index);
        rec.bound_respected = Some(d.transcript.rounds <= index);
    }
    Ok(())
}

fn independence(config: &BenchConfig, g: &Graph, job: &Job, rec: &mut BenchRecord) -> Result<()> {
    let rule = SplitterStrategy::default();
    let (res, wall) = timed(config.repeats, || {
        independent_set_solve(g, job.k, job.r, &rule, DEFAULT_DEPTH_BUDGET)
    })?;
    rec.wall_micros = wall;
    let positive = match &res.outcome {
        IndependentOutcome::Solution(x) => {
            if !verify_independent(g, x, job.r)? {
                return Err(Error::Invariant(format!("solution {x:?} fails direct verification")));
            }
            rec.decision = "SOLUTION".into();
            true
        }
        IndependentOutcome::NoSolution(_) => {
            rec.decision = "NO_SOLUTION".into();
            false
        }
    };
    rec.rounds = res.exchange_steps;
    if config.cross_validate {
        let truth = brute_force_independent(g, job.k, job.r, DEFAULT_BRUTE_FORCE_BUDGET)?;
        rec.brute_force_agrees = Some(truth.is_some() == positive);
    }
    Ok(())
}

/// Direct check that every vertex is within `r` of `a`.
pub fn verify_dominating(g: &Graph, a: &[Vertex], r: Dist) -> Result<bool> {
    let mut covered = vec![false; g.n()];
    for &v in a {
        for (u, d) in g.bfs_capped(v, r)?.into_iter().enumerate() {
            covered[u] |= d <= r;
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Direct check that the vertices of `x` are pairwise more than `r` apart.
pub fn verify_independent(g: &Graph, x: &[Vertex], r: Dist) -> Result<bool> {
    for (i, &v) in x.iter().enumerate() {
        let d = g.bfs_capped(v, r)?;
        if x[i + 1..].iter().any(|&u| d[u] <= r) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn scaling_table(records: &[BenchRecord]) -> Vec<ScalingRow> {
    let mut ok: Vec<&BenchRecord> = records.iter().filter(|r| r.error.is_none()).collect();
    ok.sort_by(|a, b| (&a.family, a.k, a.r, a.size).cmp(&(&b.family, b.k, b.r, b.size)));
    let mut rows: Vec<ScalingRow> = Vec::new();
    for (i, rec) in ok.iter().enumerate() {
        let prev = i
            .checked_sub(1)
            .map(|j| ok[j])
            .filter(|p| (&p.family, p.k, p.r) == (&rec.family, rec.k, rec.r));
        rows.push(ScalingRow {
            family: rec.family.clone(),
            k: rec.k,
            r: rec.r,
            size: rec.size,
            wall_micros: rec.wall_micros,
            size_ratio: prev.map(|p| rec.size as f64 / p.size.max(1) as f64),
            time_ratio: prev.map(|p| rec.wall_micros.max(1) as f64 / p.wall_micros.max(1) as f64),
        });
    }
    rows
}

/// CSV of the records. Without timing, identical configs give identical
/// bytes.
pub fn records_csv(records: &[BenchRecord], with_timing: bool) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for rec in records {
        let mut rec = rec.clone();
        if !with_timing {
            rec.wall_micros = 0;
        }
        w.serialize(&rec).map_err(|e| Error::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Input(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Input(e.to_string()))?;
    if with_timing {
        return Ok(text);
    }
    // Drop the timing column altogether.
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap_or_default().split(',').collect();
    let Some(col) = header.iter().position(|h| *h == "wall_micros") else { return Ok(text) };
    let mut out = String::new();
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for row in rdr.records() {
        let row = row.map_err(|e| Error::Input(e.to_string()))?;
        let kept: Vec<&str> = row.iter().enumerate().filter(|&(i, _)| i != col).map(|(_, f)| f).collect();
        wtr.write_record(&kept).map_err(|e| Error::Input(e.to_string()))?;
    }
    out.push_str(&String::from_utf8(wtr.into_inner().map_err(|e| Error::Input(e.to_string()))?).unwrap_or_default());
    Ok(out)
}

pub fn report_json(report: &BenchReport) -> String {
    serde_json::to_string_pretty(report).expect("report serialises")
}
