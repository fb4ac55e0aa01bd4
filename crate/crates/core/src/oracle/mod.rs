//! Oracles over the implicit bipartite graph `phi(G)`. Every answer is
//! computed from distance profiles on a small pivot set, never from the
//! materialised graph.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::formula::DistanceFormula;
use crate::graph::{Dist, Graph, Vertex, VertexSet};
use crate::lab::tuple_at;
use crate::profiles::{ProfileTable, MAX_RADIUS};

/// An assignment of vertices to the candidate or witness variables.
pub type Tuple = Vec<Vertex>;

/// Default cap on the number of witness tuples the extension oracle scans.
pub const DEFAULT_EXTENSION_BUDGET: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakWitness {
    Solution,
    Witness(Tuple),
}

/// A graph together with a formula; `phi(G)` has left part `V^c` and right
/// part `V^d`, with an edge wherever the formula holds.
#[derive(Clone, Debug)]
pub struct ImplicitBipartite<'g> {
    graph: &'g Graph,
    formula: DistanceFormula,
}

impl<'g> ImplicitBipartite<'g> {
    pub fn new(graph: &'g Graph, formula: DistanceFormula) -> Result<Self> {
        if formula.radius() > MAX_RADIUS {
            return Err(Error::Input(format!(
                "formula radius {} exceeds the supported maximum {MAX_RADIUS}",
                formula.radius()
            )));
        }
        Ok(ImplicitBipartite { graph, formula })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn formula(&self) -> &DistanceFormula {
        &self.formula
    }

    /// Whether candidate `a` agrees with witness `b`, by direct evaluation.
    pub fn agrees(&self, a: &[Vertex], b: &[Vertex]) -> Result<bool> {
        self.formula.holds(self.graph, a, b)
    }

    fn check(&self, t: &[Vertex], len: usize, what: &str) -> Result<()> {
        if t.len() != len {
            return Err(Error::Input(format!("{what} tuple {t:?} has length {}, expected {len}", t.len())));
        }
        t.iter().try_for_each(|&v| self.graph.check_vertex(v))
    }

    fn table(&self, tuples: &[&[Vertex]]) -> Result<ProfileTable> {
        let pivot: VertexSet = tuples.iter().flat_map(|t| t.iter().copied()).collect();
        crate::profiles::build_profile_table(self.graph, &pivot, self.formula.radius())
    }

    /// A candidate agreeing with every witness in `b`, or `None`.
    pub fn candidate_oracle(&self, b: &[Tuple]) -> Result<Option<Tuple>> {
        for t in b {
            self.check(t, self.formula.d(), "witness")?;
        }
        let refs: Vec<&[Vertex]> = b.iter().map(Vec::as_slice).collect();
        let table = self.table(&refs)?;
        let constraints: Vec<(Vec<usize>, bool)> = refs.iter().map(|t| (positions(&table, t), true)).collect();
        Ok(candidate_search(&self.formula, &table, &constraints))
    }

    /// `Solution` if `a` agrees with every witness, else a witness it
    /// disagrees with.
    pub fn weak_witness_oracle(&self, a: &[Vertex]) -> Result<WeakWitness> {
        self.check(a, self.formula.c(), "candidate")?;
        let table = self.table(&[a])?;
        let pos = positions(&table, a);
        let f = &self.formula;
        let found = first_tuple(table.len(), f.d(), |prefix| {
            f.eval_partial(|i, j| prefix.get(j).map(|&e| table.entries()[e].profile.raw(pos[i])))
                .map(|agrees| !agrees)
        });
        Ok(match found {
            Some(types) => WeakWitness::Witness(representatives(&table, &types)),
            None => WeakWitness::Solution,
        })
    }

    /// At most `p` witnesses such that every candidate of `a_set` disagrees
    /// with one of them, or `None` if no such set exists.
    pub fn strong_witness_oracle(&self, a_set: &[Tuple], p: usize) -> Result<Option<Vec<Tuple>>> {
        if a_set.is_empty() {
            return Err(Error::Input("strong witness oracle needs a nonempty candidate set".into()));
        }
        if p == 0 {
            return Err(Error::Input("strong witness oracle needs p >= 1".into()));
        }
        for t in a_set {
            self.check(t, self.formula.c(), "candidate")?;
        }
        let refs: Vec<&[Vertex]> = a_set.iter().map(Vec::as_slice).collect();
        let table = self.table(&refs)?;
        let pos: Vec<Vec<usize>> = refs.iter().map(|t| positions(&table, t)).collect();
        let f = &self.formula;

        // Witness types, deduplicated by the set of candidates they defeat.
        let mut types: Vec<(Vec<bool>, Vec<usize>)> = Vec::new();
        let mut seen: HashSet<Vec<bool>> = HashSet::new();
        let mut tuple = vec![0usize; f.d()];
        let total = (table.len() as u128).pow(f.d() as u32);
        for _ in 0..total {
            let defeated: Vec<bool> = pos
                .iter()
                .map(|pa| !f.eval_with(|i, j| table.entries()[tuple[j]].profile.raw(pa[i])))
                .collect();
            if defeated.iter().any(|&x| x) && seen.insert(defeated.clone()) {
                types.push((defeated, tuple.clone()));
            }
            advance(&mut tuple, table.len());
        }

        for size in 1..=p.min(a_set.len()) {
            let mut chosen = Vec::new();
            if cover(&types, &mut vec![false; a_set.len()], size, &mut chosen) {
                return Ok(Some(chosen.iter().map(|&t| representatives(&table, &types[t].1)).collect()));
            }
        }
        Ok(None)
    }

    /// A candidate agreeing with all of `b` together with a witness outside
    /// `b` that it disagrees with, or `None` when every candidate agreeing
    /// with `b` agrees with everything.
    pub fn extension_oracle(&self, b: &[Tuple], budget: u128) -> Result<Option<(Tuple, Tuple)>> {
        for t in b {
            self.check(t, self.formula.d(), "witness")?;
        }
        let n = self.graph.n();
        let d = self.formula.d();
        let total = (n as u128).pow(d as u32);
        if total > budget {
            return Err(Error::Resource(format!(
                "extension oracle would scan {total} witness tuples, over the budget of {budget}"
            )));
        }
        let r = self.formula.radius();
        let known: HashSet<&[Vertex]> = b.iter().map(Vec::as_slice).collect();
        let base: VertexSet = b.iter().flatten().copied().collect();
        let base_rows: Vec<Vec<Dist>> = base.iter().map(|&s| self.graph.bfs_within(s, r, None)).collect();
        for index in 0..total as usize {
            let wb = tuple_at(index, d, n);
            if known.contains(wb.as_slice()) {
                continue;
            }
            let extra: Vec<Vertex> = wb.iter().copied().filter(|v| !base.contains(*v)).collect::<VertexSet>().into_vec();
            let extra_rows: Vec<Vec<Dist>> = extra.iter().map(|&s| self.graph.bfs_within(s, r, None)).collect();
            let pivot = base.union(&extra.iter().copied().collect());
            let rows: Vec<&[Dist]> = pivot
                .iter()
                .map(|&s| match base.position(s) {
                    Some(i) => base_rows[i].as_slice(),
                    None => extra_rows[extra.iter().position(|&e| e == s).unwrap()].as_slice(),
                })
                .collect();
            let table = ProfileTable::from_rows(pivot, r, &rows, n);
            let mut constraints: Vec<(Vec<usize>, bool)> = b.iter().map(|t| (positions(&table, t), true)).collect();
            constraints.push((positions(&table, &wb), false));
            if let Some(a) = candidate_search(&self.formula, &table, &constraints) {
                return Ok(Some((a, wb)));
            }
        }
        Ok(None)
    }
}

fn positions(table: &ProfileTable, t: &[Vertex]) -> Vec<usize> {
    t.iter().map(|&v| table.pivot().position(v).expect("tuple vertex in pivot")).collect()
}

fn representatives(table: &ProfileTable, types: &[usize]) -> Tuple {
    types.iter().map(|&e| table.entries()[e].representative).collect()
}

/// Lexicographically first tuple of profile types whose evaluation against
/// every witness `(positions, wanted)` gives the wanted truth value.
fn candidate_search(f: &DistanceFormula, table: &ProfileTable, constraints: &[(Vec<usize>, bool)]) -> Option<Tuple> {
    let found = first_tuple(table.len(), f.c(), |prefix| {
        let mut all = Some(true);
        for (pos, wanted) in constraints {
            let v = f.eval_partial(|i, j| prefix.get(i).map(|&e| table.entries()[e].profile.raw(pos[j])));
            match v {
                Some(v) if v != *wanted => return Some(false),
                Some(_) => {}
                None => all = None,
            }
        }
        all
    })?;
    Some(representatives(table, &found))
}

/// Depth-first search over tuples of `0..alphabet` of length `len` in
/// lexicographic order. `status` judges a prefix: `Some(false)` rejects
/// every extension, `Some(true)` accepts every extension (so the prefix is
/// padded with zeros), `None` keeps searching.
fn first_tuple(alphabet: usize, len: usize, mut status: impl FnMut(&[usize]) -> Option<bool>) -> Option<Vec<usize>> {
    fn go(
        prefix: &mut Vec<usize>,
        alphabet: usize,
        len: usize,
        status: &mut impl FnMut(&[usize]) -> Option<bool>,
    ) -> bool {
        match status(prefix) {
            Some(false) => return false,
            Some(true) if alphabet > 0 || prefix.len() == len => {
                prefix.resize(len, 0);
                return true;
            }
            _ => {}
        }
        if prefix.len() == len {
            return false;
        }
        for e in 0..alphabet {
            prefix.push(e);
            if go(prefix, alphabet, len, status) {
                return true;
            }
            prefix.pop();
        }
        false
    }
    let mut prefix = Vec::with_capacity(len);
    go(&mut prefix, alphabet, len, &mut status).then_some(prefix)
}

/// Odometer step over `0..base` digits, most significant first.
fn advance(t: &mut [usize], base: usize) {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < base {
            return;
        }
        *slot = 0;
    }
}

/// Chooses at most `left` types covering every candidate, always branching
/// on the first candidate not yet covered.
fn cover(types: &[(Vec<bool>, Vec<usize>)], covered: &mut Vec<bool>, left: usize, chosen: &mut Vec<usize>) -> bool {
    let Some(first) = covered.iter().position(|&c| !c) else { return true };
    if left == 0 {
        return false;
    }
    for (t, (mask, _)) in types.iter().enumerate() {
        if !mask[first] {
            continue;
        }
        let before = covered.clone();
        for (c, &m) in covered.iter_mut().zip(mask) {
            *c |= m;
        }
        chosen.push(t);
        if cover(types, covered, left - 1, chosen) {
            return true;
        }
        chosen.pop();
        *covered = before;
    }
    false
}
