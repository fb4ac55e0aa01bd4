//! Seeded instance generators. Every family knows how to re-check its own
//! defining property, which generation does for instances of at most
//! [`VALIDATE_LIMIT`] vertices.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{graph_power, half_square, Dist, Graph, Vertex, VertexSet};
use crate::error::{input, Error, Result};

const VALIDATE_LIMIT: usize = 14;

/// Instance families. Serialised with an inline `"family"` tag, e.g.
/// `{"family":"grid","rows":2,"cols":2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Grid { rows: usize, cols: usize },
    Path { n: usize },
    Cycle { n: usize },
    Star { leaves: usize },
    Complete { n: usize },
    Edgeless { n: usize },
    /// Uniform random recursive tree whose depth (from vertex 0) is capped.
    Tree { n: usize, max_depth: Option<usize> },
    /// Random spanning tree plus independent extra edges with probability `p`.
    ConnectedRandom { n: usize, p: f64 },
    BoundedDegreeRandom { n: usize, max_degree: usize },
    CompleteBipartite { a: usize, b: usize },
    /// Random edges inserted only while no `K_{t,t}` subgraph appears.
    KttFreeRandom { n: usize, t: usize, p: f64 },
    PowerOf { base: Box<Family>, s: Dist },
    /// Half-square of a `rows x cols` grid taken on the even colour class.
    HalfSquareOfPlanarBipartite { rows: usize, cols: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Grid { .. } => "grid",
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::Star { .. } => "star",
            Family::Complete { .. } => "complete",
            Family::Edgeless { .. } => "edgeless",
            Family::Tree { .. } => "tree",
            Family::ConnectedRandom { .. } => "connected_random",
            Family::BoundedDegreeRandom { .. } => "bounded_degree_random",
            Family::CompleteBipartite { .. } => "complete_bipartite",
            Family::KttFreeRandom { .. } => "ktt_free_random",
            Family::PowerOf { .. } => "power_of",
            Family::HalfSquareOfPlanarBipartite { .. } => "half_square_of_planar_bipartite",
        }
    }
}

fn grid(rows: usize, cols: usize) -> Result<Graph> {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges)
}

fn random_tree(n: usize, max_depth: Option<usize>, rng: &mut ChaCha8Rng) -> Result<Graph> {
    if n > 1 && max_depth == Some(0) {
        return input("a tree with more than one vertex has depth at least 1");
    }
    let mut depth = vec![0usize; n];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let parents: Vec<Vertex> = (0..v)
            .filter(|&u| max_depth.is_none_or(|d| depth[u] < d))
            .collect();
        let parent = *parents.choose(rng).expect("root always qualifies");
        depth[v] = depth[parent] + 1;
        edges.push((parent, v));
    }
    Graph::from_edges(n, edges)
}

/// Would adding `u`–`v` to `adj` create a `K_{t,t}` through that edge?
fn edge_creates_ktt(adj: &[Vec<bool>], u: Vertex, v: Vertex, t: usize) -> bool {
    let n = adj.len();
    let nv: Vec<Vertex> = (0..n).filter(|&x| x != u && adj[v][x]).collect();
    nv.into_iter().combinations(t - 1).any(|mut side| {
        side.push(u);
        let common = (0..n)
            .filter(|&y| side.iter().all(|&x| adj[x][y] || (x == u && y == v)))
            .count();
        common >= t
    })
}

/// Brute-force `K_{t,t}` subgraph test: some `t` vertices with `t` common
/// neighbours.
pub fn is_ktt_free(g: &Graph, t: usize) -> bool {
    if t == 0 {
        return false;
    }
    !g.vertices().combinations(t).any(|side| {
        let common = g
            .vertices()
            .filter(|&y| side.iter().all(|&x| g.has_edge(x, y)))
            .count();
        common >= t
    })
}

/// Generates an instance of `family`; deterministic for a fixed seed.
pub fn generate(family: &Family, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match *family {
        Family::Grid { rows, cols } => grid(rows, cols)?,
        Family::Path { n } => Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?,
        Family::Cycle { n } => {
            if n < 3 {
                return input("a cycle needs at least 3 vertices");
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))?
        }
        Family::Star { leaves } => Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i)))?,
        Family::Complete { n } => Graph::from_edges(n, (0..n).tuple_combinations())?,
        Family::Edgeless { n } => Graph::edgeless(n),
        Family::Tree { n, max_depth } => random_tree(n, max_depth, &mut rng)?,
        Family::ConnectedRandom { n, p } => {
            let tree = random_tree(n, None, &mut rng)?;
            let mut perm: Vec<Vertex> = (0..n).collect();
            perm.shuffle(&mut rng);
            let mut edges: Vec<_> = tree.edges().map(|(u, v)| (perm[u], perm[v])).collect();
            for (u, v) in (0..n).tuple_combinations() {
                if rng.gen_bool(p.clamp(0.0, 1.0)) {
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, edges)?
        }
        Family::BoundedDegreeRandom { n, max_degree } => {
            let mut degree = vec![0usize; n];
            let mut edges = std::collections::HashSet::new();
            let target = n * max_degree / 2;
            for _ in 0..target.saturating_mul(8) {
                if edges.len() >= target || n < 2 {
                    break;
                }
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v && degree[u] < max_degree && degree[v] < max_degree && edges.insert((u.min(v), u.max(v))) {
                    degree[u] += 1;
                    degree[v] += 1;
                }
            }
            let mut edges: Vec<_> = edges.into_iter().collect();
            edges.sort_unstable();
            Graph::from_edges(n, edges)?
        }
        Family::CompleteBipartite { a, b } => {
            Graph::from_edges(a + b, (0..a).cartesian_product(a..a + b))?
        }
        Family::KttFreeRandom { n, t, p } => {
            if t == 0 {
                return input("K_{0,0}-free graphs do not exist");
            }
            let mut pairs: Vec<(Vertex, Vertex)> = (0..n).tuple_combinations().collect();
            pairs.shuffle(&mut rng);
            let mut adj = vec![vec![false; n]; n];
            let mut edges = Vec::new();
            for (u, v) in pairs {
                if rng.gen_bool(p.clamp(0.0, 1.0)) && !edge_creates_ktt(&adj, u, v, t) {
                    adj[u][v] = true;
                    adj[v][u] = true;
                    edges.push((u, v));
                }
            }
            Graph::from_edges(n, edges)?
        }
        Family::PowerOf { ref base, s } => graph_power(&generate(base, seed)?, s)?,
        Family::HalfSquareOfPlanarBipartite { rows, cols } => {
            let h = grid(rows, cols)?;
            let side: VertexSet = h.vertices().filter(|&v| (v / cols.max(1) + v % cols.max(1)) % 2 == 0).collect();
            half_square(&h, &side)?
        }
    };
    if g.n() <= VALIDATE_LIMIT && !validate_family(family, &g, seed)? {
        return Err(Error::Invariant(format!(
            "generated {} instance fails its family predicate",
            family.name()
        )));
    }
    Ok(g)
}

fn max_depth_from_root(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let cap = g.n() as Dist;
    g.bfs_within(0, cap, None).into_iter().filter(|&d| d <= cap).max().unwrap_or(0) as usize
}

/// Checks the defining property of `family` on `g`. Exponential for some
/// families; meant for small instances.
pub fn validate_family(family: &Family, g: &Graph, seed: u64) -> Result<bool> {
    let degrees = || g.vertices().map(|v| g.degree(v));
    Ok(match *family {
        Family::Grid { rows, cols } => {
            g.n() == rows * cols
                && g.edge_count() == rows * cols.saturating_sub(1) + cols * rows.saturating_sub(1)
                && degrees().all(|d| d <= 4)
                && super::bipartition(g).is_some()
        }
        Family::Path { n } => {
            g.n() == n && g.edge_count() == n.saturating_sub(1) && g.is_connected() && degrees().all(|d| d <= 2)
        }
        Family::Cycle { n } => g.n() == n && g.is_connected() && degrees().all(|d| d == 2),
        Family::Star { leaves } => {
            g.n() == leaves + 1 && g.degree(0) == leaves && g.edge_count() == leaves
        }
        Family::Complete { n } => g.n() == n && g.edge_count() == n * n.saturating_sub(1) / 2,
        Family::Edgeless { n } => g.n() == n && g.edge_count() == 0,
        Family::Tree { n, max_depth } => {
            g.n() == n
                && g.edge_count() == n.saturating_sub(1)
                && g.is_connected()
                && max_depth.is_none_or(|d| max_depth_from_root(g) <= d)
        }
        Family::ConnectedRandom { n, .. } => g.n() == n && g.is_connected(),
        Family::BoundedDegreeRandom { n, max_degree } => g.n() == n && degrees().all(|d| d <= max_degree),
        Family::CompleteBipartite { a, b } => {
            g.n() == a + b
                && g.edge_count() == a * b
                && (0..a).all(|u| (a..a + b).all(|v| g.has_edge(u, v)))
        }
        Family::KttFreeRandom { n, t, .. } => g.n() == n && is_ktt_free(g, t),
        Family::PowerOf { ref base, s } => *g == graph_power(&generate(base, seed)?, s)?,
        Family::HalfSquareOfPlanarBipartite { rows, cols } => {
            g.n() == (rows * cols).div_ceil(2)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families() {
        let g = generate(&Family::Grid { rows: 2, cols: 2 }, 0).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let k22 = generate(&Family::CompleteBipartite { a: 2, b: 2 }, 0).unwrap();
        assert_eq!(k22.edges().collect::<Vec<_>>(), vec![(0, 2), (0, 3), (1, 2), (1, 3)]);
        assert_eq!(generate(&Family::Star { leaves: 3 }, 0).unwrap().edge_count(), 3);
    }

    #[test]
    fn deterministic_for_seed() {
        let fam = Family::ConnectedRandom { n: 12, p: 0.3 };
        assert_eq!(generate(&fam, 7).unwrap(), generate(&fam, 7).unwrap());
        assert_ne!(generate(&fam, 7).unwrap(), generate(&fam, 8).unwrap());
    }

    #[test]
    fn ktt_free_generator_is_ktt_free() {
        for t in 2..=3 {
            for seed in 0..30 {
                let g = generate(&Family::KttFreeRandom { n: 10, t, p: 0.8 }, seed).unwrap();
                assert!(is_ktt_free(&g, t));
            }
        }
        let k33 = generate(&Family::CompleteBipartite { a: 3, b: 3 }, 0).unwrap();
        assert!(!is_ktt_free(&k33, 3));
        assert!(!is_ktt_free(&k33, 2));
    }

    #[test]
    fn trees_respect_depth() {
        for seed in 0..50 {
            let g = generate(&Family::Tree { n: 9, max_depth: Some(4) }, seed).unwrap();
            assert!(max_depth_from_root(&g) <= 4);
        }
    }

    #[test]
    fn half_square_of_grid() {
        // 2x3 grid: even class {(0,0),(0,2),(1,1)} = {0, 2, 4}; each pair at distance 2.
        let g = generate(&Family::HalfSquareOfPlanarBipartite { rows: 2, cols: 3 }, 0).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn family_json_shape() {
        let fam: Family = serde_json::from_str(r#"{"family":"grid","rows":2,"cols":3}"#).unwrap();
        assert_eq!(fam, Family::Grid { rows: 2, cols: 3 });
        let nested: Family =
            serde_json::from_str(r#"{"family":"power_of","s":2,"base":{"family":"path","n":5}}"#).unwrap();
        assert_eq!(generate(&nested, 0).unwrap().edge_count(), 7);
    }
}
