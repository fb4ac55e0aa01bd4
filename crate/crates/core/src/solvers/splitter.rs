use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Dist, Graph, Vertex, VertexSet};

/// Result of [`greedy_dichotomy`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Dichotomy {
    /// `k + 1` vertices of `X`, pairwise more than `2r` apart.
    Independent(VertexSet),
    /// At most `k` vertices of `X` within distance `2r` of all of `X`.
    Dominated(VertexSet),
}

/// Greedy scan of `X` in ascending order: a vertex is taken when it is more
/// than `2r` away from everything taken so far.
pub fn greedy_dichotomy(g: &Graph, x: &VertexSet, r: Dist, k: usize) -> Result<Dichotomy> {
    x.validate(g)?;
    Ok(greedy_within(g, x, r, k, None))
}

pub(crate) fn greedy_within(g: &Graph, x: &[Vertex], r: Dist, k: usize, allowed: Option<&[bool]>) -> Dichotomy {
    let cap = 2 * r;
    let mut near = vec![false; g.n()];
    let mut taken = Vec::new();
    for &v in x {
        if near[v] {
            continue;
        }
        taken.push(v);
        if taken.len() == k + 1 {
            return Dichotomy::Independent(taken.into());
        }
        for (u, d) in g.bfs_within(v, cap, allowed).into_iter().enumerate() {
            if d <= cap {
                near[u] = true;
            }
        }
    }
    Dichotomy::Dominated(taken.into())
}

/// Splitter's answer to a Connector move `v`, chosen from `ball`, the
/// radius-`r` ball around `v` in the arena.
pub trait SplitterRule {
    fn choose(&self, g: &Graph, arena: &[bool], v: Vertex, ball: &[Vertex]) -> Vertex;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SplitterStrategy {
    /// Delete Connector's own vertex.
    ConnectorEcho,
    /// Highest arena degree inside the ball, lowest id on ties.
    #[default]
    BallMaxDegree,
    /// Smallest eccentricity within the ball, lowest id on ties.
    BfsCenter,
}

impl SplitterStrategy {
    pub fn name(self) -> &'static str {
        match self {
            SplitterStrategy::ConnectorEcho => "connector-echo",
            SplitterStrategy::BallMaxDegree => "ball-max-degree",
            SplitterStrategy::BfsCenter => "bfs-center",
        }
    }
}

impl std::str::FromStr for SplitterStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            SplitterStrategy::ConnectorEcho,
            SplitterStrategy::BallMaxDegree,
            SplitterStrategy::BfsCenter,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::Input(format!("unknown splitter strategy `{s}`")))
    }
}

impl SplitterRule for SplitterStrategy {
    fn choose(&self, g: &Graph, arena: &[bool], v: Vertex, ball: &[Vertex]) -> Vertex {
        match self {
            SplitterStrategy::ConnectorEcho => v,
            SplitterStrategy::BallMaxDegree => *ball
                .iter()
                .min_by_key(|&&u| (std::cmp::Reverse(g.neighbors(u).iter().filter(|&&x| arena[x]).count()), u))
                .unwrap_or(&v),
            SplitterStrategy::BfsCenter => {
                let mut inside = vec![false; g.n()];
                for &u in ball {
                    inside[u] = true;
                }
                let cap = ball.len() as Dist;
                *ball
                    .iter()
                    .min_by_key(|&&u| {
                        let d = g.bfs_within(u, cap, Some(&inside));
                        (ball.iter().map(|&x| d[x]).max().unwrap_or(0), u)
                    })
                    .unwrap_or(&v)
            }
        }
    }
}

/// Radius-`r` ball around `v` inside the arena, ascending.
pub(crate) fn ball(g: &Graph, arena: &[bool], v: Vertex, r: Dist) -> Vec<Vertex> {
    g.bfs_within(v, r, Some(arena))
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d <= r)
        .map(|(u, _)| u)
        .collect()
}

/// Splitter's move inside an arena given as a mask, checked against the
/// ball. Returns the move and the ball.
pub(crate) fn play(
    g: &Graph,
    arena: &[bool],
    v: Vertex,
    r: Dist,
    rule: &dyn SplitterRule,
) -> Result<(Vertex, Vec<Vertex>)> {
    let ball = ball(g, arena, v, r);
    let w = rule.choose(g, arena, v, &ball);
    if ball.binary_search(&w).is_err() {
        return Err(Error::Contract(format!(
            "splitter answered {w}, outside the radius-{r} ball around {v}"
        )));
    }
    Ok((w, ball))
}

/// One round of the radius-`r` splitter game on `g` minus `excluded`:
/// Connector plays `v`, Splitter answers `w`, and the next arena is the
/// ball around `v` without `w`.
pub fn splitter_game_round(
    g: &Graph,
    excluded: &VertexSet,
    v: Vertex,
    r: Dist,
    rule: &dyn SplitterRule,
) -> Result<(Vertex, VertexSet)> {
    excluded.validate(g)?;
    g.check_vertex(v)?;
    if excluded.contains(v) {
        return Err(Error::Input(format!("Connector move {v} is not in the arena")));
    }
    let arena: Vec<bool> = excluded.mask(g.n()).into_iter().map(|x| !x).collect();
    let (w, ball) = play(g, &arena, v, r, rule)?;
    Ok((w, ball.into_iter().filter(|&u| u != w).collect()))
}
