use std::collections::{HashMap, HashSet};
use std::time::Instant;

use itertools::Itertools;
use serde::Serialize;

use super::splitter::{ball, greedy_within, play, Dichotomy, SplitterRule};
use crate::error::{Error, Result};
use crate::graph::{inf, Dist, Graph, Vertex, VertexSet};
use crate::profiles::build_profile_table;

/// Default number of splitter-game rounds the pre-core recursion may use.
pub const DEFAULT_DEPTH_BUDGET: usize = 20;

type Profile = Vec<Dist>;

/// Alive vertices, `S` and `A`.
type MemoKey = (Vec<Vertex>, Vec<Vertex>, Vec<Vertex>);

struct Precore<'a> {
    g: &'a Graph,
    k: usize,
    r: Dist,
    rule: &'a dyn SplitterRule,
    depth_budget: usize,
    memo: HashMap<MemoKey, VertexSet>,
}

/// Distance-`r` dependence pre-core for `(G, A, k)`: a set `Q` such that
/// whenever `D` with `|D| <= k` distance-`r` dominates `A`, every `a` in `A`
/// reaches `D` by a walk of length at most `r` through `Q`. Built by
/// simulating the radius-`3r` splitter game with the given rule.
pub fn compute_precore(
    g: &Graph,
    a: &VertexSet,
    k: usize,
    r: Dist,
    rule: &dyn SplitterRule,
    depth_budget: usize,
) -> Result<VertexSet> {
    a.validate(g)?;
    crate::profiles::build_profile_table(g, &VertexSet::new(), r)?;
    let mut pc = Precore {
        g,
        k,
        r,
        rule,
        depth_budget,
        memo: HashMap::new(),
    };
    let alive = vec![true; g.n()];
    pc.solve(&alive, &VertexSet::new(), a, depth_budget)
}

impl Precore<'_> {
    /// `alive` is the vertex set of the current graph, which contains `s`.
    fn solve(&mut self, alive: &[bool], s: &VertexSet, a: &[Vertex], budget: usize) -> Result<VertexSet> {
        let (g, r, k) = (self.g, self.r, self.k);
        let arena: Vec<bool> = alive.iter().enumerate().map(|(v, &x)| x && !s.contains(v)).collect();
        let a: Vec<Vertex> = a.iter().copied().filter(|&v| arena[v]).collect();
        if a.is_empty() || !arena.contains(&true) {
            return Ok(s.clone());
        }
        let key = (
            (0..g.n()).filter(|&v| alive[v]).collect::<Vec<_>>(),
            s.to_vec(),
            a.clone(),
        );
        if let Some(q) = self.memo.get(&key) {
            return Ok(q.clone());
        }
        if budget == 0 {
            return Err(Error::SplitterBudget {
                budget: self.depth_budget,
                remaining: arena.iter().filter(|&&x| x).count(),
            });
        }

        // Capped profiles on S inside the current graph.
        let rows: Vec<Vec<Dist>> = s.iter().map(|&x| g.bfs_within(x, r, Some(alive))).collect();
        let profile = |v: Vertex| -> Profile { rows.iter().map(|row| row[v]).collect() };

        let mut classes: Vec<(Profile, Vec<Vertex>)> = Vec::new();
        for &v in &a {
            let p = profile(v);
            match classes.iter_mut().find(|(q, _)| *q == p) {
                Some((_, members)) => members.push(v),
                None => classes.push((p, vec![v])),
            }
        }
        let mut z: Vec<Vertex> = Vec::new();
        for (_, members) in &classes {
            if let Dichotomy::Dominated(zp) = greedy_within(g, members, r, k, Some(&arena)) {
                z.extend(zp.iter().copied());
            }
        }
        z.sort_unstable();
        z.dedup();

        let set_profiles = self.set_profiles(alive, &profile, s.len());
        let mut q = s.clone();
        for &zv in &z {
            let (w, ball3) = play(g, &arena, zv, 3 * r, self.rule)?;
            let mut next_alive = vec![false; g.n()];
            for &v in ball3.iter().chain(s.iter()) {
                next_alive[v] = true;
            }
            let mut next_s = s.clone();
            next_s.insert(w);
            let near = ball(g, &arena, zv, 2 * r);
            let near_a: Vec<Vertex> = a.iter().copied().filter(|v| near.binary_search(v).is_ok()).collect();
            let mut seen: HashSet<Vec<Vertex>> = HashSet::new();
            for p in &set_profiles {
                let a_zp: Vec<Vertex> = near_a
                    .iter()
                    .copied()
                    .filter(|&v| rows.iter().zip(p).all(|(row, &pv)| row[v] + pv > r))
                    .collect();
                if a_zp.is_empty() || !seen.insert(a_zp.clone()) {
                    continue;
                }
                let qt = self.solve(&next_alive, &next_s, &a_zp, budget - 1)?;
                q = q.union(&qt);
            }
        }
        self.memo.insert(key, q.clone());
        Ok(q)
    }

    /// Every profile on `S` of a vertex set of size at most `k` in the
    /// current graph: pointwise minima of up to `k` vertex profiles.
    fn set_profiles(&self, alive: &[bool], profile: &dyn Fn(Vertex) -> Profile, width: usize) -> Vec<Profile> {
        let singles: Vec<Profile> = (0..self.g.n())
            .filter(|&v| alive[v])
            .map(profile)
            .unique()
            .collect();
        let mut all: Vec<Profile> = vec![vec![inf(self.r); width]];
        let mut known: HashSet<Profile> = all.iter().cloned().collect();
        let mut frontier = all.clone();
        for _ in 0..self.k {
            let mut next = Vec::new();
            for f in &frontier {
                for s in &singles {
                    let m: Profile = f.iter().zip(s).map(|(x, y)| *x.min(y)).collect();
                    if known.insert(m.clone()) {
                        next.push(m);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            frontier = next;
        }
        all
    }
}

/// Exhaustive pre-core check: a pair `(D, a)` with `|D| <= k`, `D`
/// distance-`r` dominating `A`, and no walk of length at most `r` from `a`
/// to `D` through `Q`; `None` when `Q` is a pre-core.
pub fn find_uncaptured(
    g: &Graph,
    a: &VertexSet,
    k: usize,
    r: Dist,
    q: &VertexSet,
    budget: u128,
) -> Result<Option<(VertexSet, Vertex)>> {
    a.validate(g)?;
    q.validate(g)?;
    let n = g.n();
    let sets: u128 = (0..=k.min(n))
        .map(|s| (0..s as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1)))
        .sum();
    if sets > budget {
        return Err(Error::Resource(format!("pre-core check needs {sets} sets, over {budget}")));
    }
    let dist = g.all_pairs_capped(r);
    for size in 0..=k.min(n) {
        for d in (0..n).combinations(size) {
            if !a.iter().all(|&x| d.iter().any(|&y| dist[x][y] <= r)) {
                continue;
            }
            for &x in a.iter() {
                let captured = q.iter().any(|&y| d.iter().any(|&t| dist[x][y] + dist[y][t] <= r));
                if !captured {
                    return Ok(Some((d.into(), x)));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "decision", content = "set", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum IndependentOutcome {
    /// `k` vertices with pairwise distances above `r`.
    Solution(VertexSet),
    /// The pre-core certifying that no such set exists.
    NoSolution(VertexSet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependentSetResult {
    #[serde(flatten)]
    pub outcome: IndependentOutcome,
    pub precore_size: usize,
    pub profiles: usize,
    pub multisets_checked: usize,
    pub exchange_steps: usize,
    pub elapsed_micros: u64,
}

/// Decides whether `g` has a distance-`r` independent set of size `k` and
/// returns one if so. A pre-core for `(G, V(G), k - 1)` reduces the
/// question to multisets of profiles on it; a surviving multiset is turned
/// into an actual set by exchanging close vertices for far ones.
pub fn independent_set_solve(
    g: &Graph,
    k: usize,
    r: Dist,
    rule: &dyn SplitterRule,
    depth_budget: usize,
) -> Result<IndependentSetResult> {
    if k == 0 {
        return Err(Error::Input("independent set size must be at least 1".into()));
    }
    let start = Instant::now();
    let q = compute_precore(g, &VertexSet::all(g.n()), k - 1, r, rule, depth_budget)?;
    let table = build_profile_table(g, &q, r)?;
    let entries = table.entries();
    let m = entries.len();
    let free: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| (0..q.len()).all(|y| entries[i].profile.raw(y) + entries[j].profile.raw(y) > r))
                .collect()
        })
        .collect();

    let mut checked = 0;
    let mut chosen: Vec<usize> = Vec::new();
    let found = pick_multiset(&free, &|e| entries[e].count, k, 0, &mut chosen, &mut checked);
    let mut result = IndependentSetResult {
        outcome: IndependentOutcome::NoSolution(q.clone()),
        precore_size: q.len(),
        profiles: m,
        multisets_checked: checked,
        exchange_steps: 0,
        elapsed_micros: 0,
    };
    if found {
        let mut x: Vec<Vertex> = Vec::new();
        for (e, group) in &chosen.iter().chunk_by(|&&e| e) {
            x.extend(table.members(e, group.count()));
        }
        let (set, steps) = exchange(g, x, r)?;
        result.outcome = IndependentOutcome::Solution(set);
        result.exchange_steps = steps;
    }
    result.elapsed_micros = start.elapsed().as_micros() as u64;
    Ok(result)
}

/// Lexicographically first non-decreasing sequence of `k` entries, each used
/// at most `count(e)` times, with every pair (including repeats) free.
fn pick_multiset(
    free: &[Vec<bool>],
    count: &dyn Fn(usize) -> usize,
    k: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    checked: &mut usize,
) -> bool {
    *checked += 1;
    if chosen.len() == k {
        return true;
    }
    for e in from..free.len() {
        let used = chosen.iter().filter(|&&c| c == e).count();
        if used >= count(e) || !chosen.iter().all(|&c| free[c][e]) {
            continue;
        }
        if used > 0 && !free[e][e] {
            continue;
        }
        chosen.push(e);
        if pick_multiset(free, count, k, e, chosen, checked) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Number of members of `x` with another member within distance `r`.
fn close_count(g: &Graph, x: &[Vertex], r: Dist) -> usize {
    x.iter()
        .filter(|&&w| {
            let d = g.bfs_within(w, r, None);
            x.iter().any(|&v| v != w && d[v] <= r)
        })
        .count()
}

fn exchange(g: &Graph, mut x: Vec<Vertex>, r: Dist) -> Result<(VertexSet, usize)> {
    let mut steps = 0;
    let mut f = close_count(g, &x, r);
    while f > 0 {
        x.sort_unstable();
        let close = x.iter().enumerate().find_map(|(i, &a)| {
            let d = g.bfs_within(a, r, None);
            x[i + 1..].iter().find(|&&b| d[b] <= r).copied()
        });
        let w = close.ok_or_else(|| Error::Invariant("close-pair count and search disagree".into()))?;
        let rest: Vec<Vertex> = x.iter().copied().filter(|&v| v != w).collect();
        let mut covered = vec![false; g.n()];
        for &v in &rest {
            for (u, d) in g.bfs_within(v, r, None).into_iter().enumerate() {
                covered[u] |= d <= r;
            }
        }
        let u = (0..g.n()).find(|&u| !covered[u]).ok_or_else(|| {
            Error::Invariant(format!(
                "{rest:?} dominates the graph, so the computed set is not a pre-core"
            ))
        })?;
        x = rest;
        x.push(u);
        let next = close_count(g, &x, r);
        if next >= f {
            return Err(Error::Invariant(format!("exchange did not make progress ({f} -> {next})")));
        }
        f = next;
        steps += 1;
    }
    Ok((x.into_iter().collect(), steps))
}
