//! Progressive-exploration solvers over implicit bipartite graphs, the
//! dependence pre-core construction for independence, and brute-force
//! reference solvers.

mod brute;
mod precore;
mod splitter;

pub use brute::{brute_force_dominating, brute_force_independent, DEFAULT_BRUTE_FORCE_BUDGET};
pub use precore::{
    compute_precore, find_uncaptured, independent_set_solve, IndependentOutcome, IndependentSetResult,
    DEFAULT_DEPTH_BUDGET,
};
pub use splitter::{
    greedy_dichotomy, splitter_game_round, Dichotomy, SplitterRule, SplitterStrategy,
};

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lab::tuple_at;
use crate::oracle::{ImplicitBipartite, Tuple, WeakWitness};

/// Safety valve on the number of rounds of the progressive algorithms.
pub const DEFAULT_MAX_ROUNDS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct OracleCalls {
    pub candidate: usize,
    pub weak_witness: usize,
    pub strong_witness: usize,
    pub extension: usize,
}

/// What a progressive run did, round by round.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RunTranscript {
    /// Completed full rounds (rounds that added witnesses).
    pub rounds: usize,
    /// Candidate found in each round, including a final one that ended the run.
    pub candidates: Vec<Tuple>,
    /// Witnesses added in each full round.
    pub witnesses: Vec<Vec<Tuple>>,
    pub oracle_calls: OracleCalls,
    pub elapsed_micros: u64,
}

impl RunTranscript {
    fn finish(&mut self, start: Instant) {
        self.elapsed_micros = start.elapsed().as_micros() as u64;
    }

    /// Flattened witnesses in the order they were added.
    pub fn all_witnesses(&self) -> Vec<Tuple> {
        self.witnesses.iter().flatten().cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", content = "tuples", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DecisionKind {
    /// A candidate agreeing with every witness.
    Solution(Tuple),
    /// Witnesses no candidate agrees with simultaneously.
    NoSolution(Vec<Tuple>),
    Exists,
    NotExists(Vec<Tuple>),
}

impl DecisionKind {
    pub fn label(&self) -> &'static str {
        match self {
            DecisionKind::Solution(_) => "SOLUTION",
            DecisionKind::NoSolution(_) => "NO_SOLUTION",
            DecisionKind::Exists => "EXISTS",
            DecisionKind::NotExists(_) => "NOT_EXISTS",
        }
    }

    /// True for `SOLUTION` and `EXISTS`.
    pub fn is_positive(&self) -> bool {
        matches!(self, DecisionKind::Solution(_) | DecisionKind::Exists)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decision {
    pub kind: DecisionKind,
    pub transcript: RunTranscript,
}

fn out_of_rounds(what: &str, t: &RunTranscript) -> Error {
    Error::Resource(format!(
        "{what} did not finish within {} rounds; transcript: {}",
        t.rounds,
        serde_json::to_string(t).unwrap_or_default()
    ))
}

/// Alternates candidate and weak-witness oracle calls until a candidate
/// survives every witness or no candidate is left. The candidates and
/// witnesses of the full rounds form a semi-ladder, so the number of
/// rounds is at most the semi-ladder index.
pub fn semi_ladder_solve(ib: &ImplicitBipartite, max_rounds: usize) -> Result<Decision> {
    if max_rounds == 0 {
        return Err(Error::Input("max_rounds must be at least 1".into()));
    }
    let start = Instant::now();
    let mut t = RunTranscript::default();
    let mut b: Vec<Tuple> = Vec::new();
    loop {
        t.oracle_calls.candidate += 1;
        let Some(a) = ib.candidate_oracle(&b)? else {
            t.finish(start);
            return Ok(Decision {
                kind: DecisionKind::NoSolution(b),
                transcript: t,
            });
        };
        t.candidates.push(a.clone());
        t.oracle_calls.weak_witness += 1;
        match ib.weak_witness_oracle(&a)? {
            WeakWitness::Solution => {
                t.finish(start);
                return Ok(Decision {
                    kind: DecisionKind::Solution(a),
                    transcript: t,
                });
            }
            WeakWitness::Witness(w) => {
                b.push(w.clone());
                t.witnesses.push(vec![w]);
                t.rounds += 1;
            }
        }
        if t.rounds >= max_rounds {
            t.finish(start);
            return Err(out_of_rounds("semi-ladder algorithm", &t));
        }
    }
}

/// Like [`semi_ladder_solve`] but answers the witness step with up to `p`
/// witnesses defeating every candidate seen so far. `EXISTS` is only
/// justified when `phi(G)` has the weak `p`-Helly property.
pub fn ladder_solve(ib: &ImplicitBipartite, p: usize, max_rounds: usize) -> Result<Decision> {
    if p == 0 {
        return Err(Error::Input("ladder algorithm needs p >= 1".into()));
    }
    if max_rounds == 0 {
        return Err(Error::Input("max_rounds must be at least 1".into()));
    }
    let start = Instant::now();
    let mut t = RunTranscript::default();
    let mut b: Vec<Tuple> = Vec::new();
    loop {
        t.oracle_calls.candidate += 1;
        let Some(a) = ib.candidate_oracle(&b)? else {
            t.finish(start);
            return Ok(Decision {
                kind: DecisionKind::NotExists(b),
                transcript: t,
            });
        };
        t.candidates.push(a);
        t.oracle_calls.strong_witness += 1;
        match ib.strong_witness_oracle(&t.candidates, p)? {
            None => {
                t.finish(start);
                return Ok(Decision {
                    kind: DecisionKind::Exists,
                    transcript: t,
                });
            }
            Some(set) => {
                b.extend(set.iter().cloned());
                t.witnesses.push(set);
                t.rounds += 1;
            }
        }
        if t.rounds >= max_rounds {
            t.finish(start);
            return Err(out_of_rounds("ladder algorithm", &t));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoreResult {
    pub core: Vec<Tuple>,
    pub transcript: RunTranscript,
}

/// Grows a semi-ladder with the extension oracle until it reports that
/// every candidate agreeing with the current witnesses agrees with all of
/// them; those witnesses are returned as the core.
pub fn coverage_core(ib: &ImplicitBipartite, max_rounds: usize, extension_budget: u128) -> Result<CoreResult> {
    let start = Instant::now();
    let mut t = RunTranscript::default();
    let mut b: Vec<Tuple> = Vec::new();
    loop {
        t.oracle_calls.extension += 1;
        match ib.extension_oracle(&b, extension_budget)? {
            None => {
                t.finish(start);
                return Ok(CoreResult { core: b, transcript: t });
            }
            Some((a, w)) => {
                t.candidates.push(a);
                t.witnesses.push(vec![w.clone()]);
                b.push(w);
                t.rounds += 1;
            }
        }
        if t.rounds >= max_rounds {
            t.finish(start);
            return Err(out_of_rounds("coverage core algorithm", &t));
        }
    }
}

/// Exhaustive check of the core property: returns a candidate that agrees
/// with all of `core` but not with some witness, if one exists.
pub fn find_core_violation(ib: &ImplicitBipartite, core: &[Tuple], budget: u128) -> Result<Option<(Tuple, Tuple)>> {
    let g = ib.graph();
    let f = ib.formula();
    let n = g.n();
    let total = (n as u128).pow((f.c() + f.d()) as u32);
    if total > budget {
        return Err(Error::Resource(format!("core verification needs {total} checks, over {budget}")));
    }
    let dist = g.all_pairs_capped(f.radius());
    let agrees = |a: &[usize], b: &[usize]| f.eval_with(|i, j| dist[a[i]][b[j]]);
    let lefts = n.pow(f.c() as u32);
    let rights = n.pow(f.d() as u32);
    for i in 0..lefts {
        let a = tuple_at(i, f.c(), n);
        if !core.iter().all(|b| agrees(&a, b)) {
            continue;
        }
        for j in 0..rights {
            let b = tuple_at(j, f.d(), n);
            if !agrees(&a, &b) {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}
