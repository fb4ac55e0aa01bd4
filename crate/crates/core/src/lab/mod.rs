//! Explicit bipartite graphs and exact small-scale computations on them:
//! obstruction indices, Helly properties, Coverage, Ramsey extraction.
//! These are the reference answers the implicit algorithms are checked
//! against.

mod bits;
mod helly;
mod index;
mod ramsey;

pub use bits::Bits;
pub use helly::{check_p_helly, min_weak_helly, HellyOutcome, HellyVariant};
pub use index::{index_of, index_of_with_budget, Obstruction, ObstructionKind, DEFAULT_INDEX_BUDGET};
pub use ramsey::{find_monochromatic, ramsey_bound, EdgeColoring};

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::formula::DistanceFormula;
use crate::graph::{Graph, Vertex};

/// Bipartite graph `(L, R, E)` with `L = 0..left`, `R = 0..right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    left: usize,
    right: usize,
    /// For each left vertex, its neighbours in `R`.
    adj: Vec<Bits>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph {
            left,
            right,
            adj: vec![Bits::empty(right); left],
        }
    }

    pub fn from_edges(left: usize, right: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut h = BipartiteGraph::new(left, right);
        for (a, b) in edges {
            if a >= left || b >= right {
                return Err(Error::Input(format!("edge ({a}, {b}) out of range for {left}x{right}")));
            }
            h.adj[a].insert(b);
        }
        Ok(h)
    }

    /// Builds from a predicate over all `left x right` pairs.
    pub fn from_fn(left: usize, right: usize, mut edge: impl FnMut(usize, usize) -> bool) -> Self {
        let mut h = BipartiteGraph::new(left, right);
        for a in 0..left {
            for b in 0..right {
                if edge(a, b) {
                    h.adj[a].insert(b);
                }
            }
        }
        h
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj[a].contains(b)
    }

    pub fn neighbors(&self, a: usize) -> &Bits {
        &self.adj[a]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Bits::count).sum()
    }

    /// Neighbourhoods of right vertices, as subsets of `L`.
    pub fn right_neighborhoods(&self) -> Vec<Bits> {
        let mut out = vec![Bits::empty(self.left); self.right];
        for (a, nb) in self.adj.iter().enumerate() {
            for b in nb.ones() {
                out[b].insert(a);
            }
        }
        out
    }

    /// Swaps the roles of the two sides.
    pub fn transpose(&self) -> BipartiteGraph {
        BipartiteGraph {
            left: self.right,
            right: self.left,
            adj: self.right_neighborhoods(),
        }
    }

    /// Complement of a perfect matching of order `n`: `a_i ~ b_j` iff `i != j`.
    pub fn comatching(n: usize) -> Self {
        BipartiteGraph::from_fn(n, n, |i, j| i != j)
    }

    /// Ladder of order `n`: `a_i ~ b_j` iff `i > j`.
    pub fn ladder(n: usize) -> Self {
        BipartiteGraph::from_fn(n, n, |i, j| i > j)
    }

    /// Parses `"L R m"` followed by `m` lines `"l r"`.
    pub fn parse(text: &str) -> Result<Self> {
        let parse_err = |line: usize, message: String| Error::Parse { line, message };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "empty input".into()))?;
        let nums = |line: usize, s: &str, want: usize| -> Result<Vec<usize>> {
            let v: Vec<usize> = s
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| parse_err(line, format!("`{t}` is not a non-negative integer"))))
                .collect::<Result<_>>()?;
            if v.len() != want {
                return Err(parse_err(line, format!("expected {want} numbers, found {}", v.len())));
            }
            Ok(v)
        };
        let h = nums(hline, header, 3)?;
        let (left, right, m) = (h[0], h[1], h[2]);
        let mut g = BipartiteGraph::new(left, right);
        let mut count = 0;
        for (line, content) in lines {
            let e = nums(line, content, 2)?;
            if e[0] >= left || e[1] >= right {
                return Err(parse_err(line, format!("edge ({}, {}) out of range", e[0], e[1])));
            }
            if g.has_edge(e[0], e[1]) {
                return Err(parse_err(line, format!("duplicate edge ({}, {})", e[0], e[1])));
            }
            g.adj[e[0]].insert(e[1]);
            count += 1;
        }
        if count != m {
            return Err(parse_err(hline, format!("header declares {m} edges but {count} were given")));
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.left, self.right, self.edge_count());
        for (a, nb) in self.adj.iter().enumerate() {
            for b in nb.ones() {
                let _ = writeln!(out, "{a} {b}");
            }
        }
        out
    }
}

/// Lowest left vertex adjacent to every right vertex. With `R` empty every
/// left vertex qualifies, so the answer is 0 whenever `L` is nonempty.
pub fn coverage_bruteforce(h: &BipartiteGraph) -> Option<usize> {
    (0..h.left).find(|&a| h.adj[a].count() == h.right)
}

/// Default cap on `|V|^c * |V|^d` for [`materialize`].
pub const DEFAULT_MATERIALIZE_BUDGET: u128 = 1_000_000;

/// Decodes the `index`-th tuple of length `len` over `0..n` in
/// lexicographic order.
pub fn tuple_at(mut index: usize, len: usize, n: usize) -> Vec<Vertex> {
    let mut t = vec![0; len];
    for slot in t.iter_mut().rev() {
        *slot = index % n;
        index /= n;
    }
    t
}

/// Inverse of [`tuple_at`].
pub fn tuple_index(tuple: &[Vertex], n: usize) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * n + v)
}

/// Builds `phi(G)` explicitly: left part `V^c`, right part `V^d`, both in
/// lexicographic order, with an edge wherever the formula holds.
pub fn materialize(g: &Graph, f: &DistanceFormula, budget: u128) -> Result<BipartiteGraph> {
    let n = g.n();
    let pairs = (n as u128).pow((f.c() + f.d()) as u32);
    if pairs > budget {
        return Err(Error::Resource(format!(
            "materialising {pairs} tuple pairs exceeds the budget of {budget}"
        )));
    }
    let left = n.pow(f.c() as u32);
    let right = n.pow(f.d() as u32);
    let dist = g.all_pairs_capped(f.radius());
    let rights: Vec<Vec<Vertex>> = (0..right).map(|j| tuple_at(j, f.d(), n)).collect();
    Ok(BipartiteGraph::from_fn(left, right, |i, j| {
        let xs = tuple_at(i, f.c(), n);
        let ys = &rights[j];
        f.eval_with(|a, b| dist[xs[a]][ys[b]])
    }))
}
