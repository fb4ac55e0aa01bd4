//! Simple undirected graphs, capped breadth-first search and the graph
//! transformations (powers, half-squares) the solvers are exercised on.

mod generate;
mod io;

pub use generate::{generate, is_ktt_free, validate_family, Family};
pub use io::{parse_dimacs, parse_edge_list, parse_graph, write_edge_list};

use std::collections::VecDeque;
use std::ops::Deref;

use serde::Serialize;

use crate::error::{input, Result};

/// Vertex identifier. Always a dense index in `0..n`.
pub type Vertex = usize;

/// Capped distance. A value of `cap + 1` stands for "farther than the cap".
pub type Dist = u32;

/// The "infinite" sentinel for a BFS capped at `cap`.
#[inline]
pub const fn inf(cap: Dist) -> Dist {
    cap + 1
}

/// Simple undirected graph stored as sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    edges: usize,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edges: 0,
        }
    }

    /// Builds a graph from an edge list. Self-loops and out-of-range ids are
    /// rejected; repeated edges are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        let mut edges = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            edges += list.len();
        }
        Ok(Graph {
            adjacency,
            edges: edges / 2,
        })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    /// `n + m`, the size measure running times are stated in.
    pub fn size(&self) -> usize {
        self.n() + self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            input(format!("vertex {v} out of range for {} vertices", self.n()))
        }
    }

    /// Distances from `source`, exact up to `cap` and `inf(cap)` beyond.
    pub fn bfs_capped(&self, source: Vertex, cap: Dist) -> Result<Vec<Dist>> {
        self.check_vertex(source)?;
        Ok(self.bfs_within(source, cap, None))
    }

    /// Capped BFS that only walks through vertices with `allowed[v]` set.
    /// Vertices outside the allowed set (including `source` if excluded)
    /// get `inf(cap)`, except that `source` itself always gets 0.
    pub(crate) fn bfs_within(&self, source: Vertex, cap: Dist, allowed: Option<&[bool]>) -> Vec<Dist> {
        let far = inf(cap);
        let mut dist = vec![far; self.n()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            if du == cap {
                continue;
            }
            for &w in &self.adjacency[u] {
                if dist[w] == far && allowed.is_none_or(|a| a[w]) {
                    dist[w] = du + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Capped distance matrix between all pairs. Quadratic memory; for
    /// small graphs and test oracles.
    pub fn all_pairs_capped(&self, cap: Dist) -> Vec<Vec<Dist>> {
        self.vertices().map(|v| self.bfs_within(v, cap, None)).collect()
    }

    /// Exact distance matrix, `None` for disconnected pairs.
    pub fn all_pairs(&self) -> Vec<Vec<Option<Dist>>> {
        let cap = self.n() as Dist;
        self.all_pairs_capped(cap)
            .into_iter()
            .map(|row| row.into_iter().map(|d| (d <= cap).then_some(d)).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let cap = self.n() as Dist;
        self.bfs_within(0, cap, None).iter().all(|&d| d <= cap)
    }

    /// Subgraph induced by `keep`, relabelled to `0..keep.len()` in order.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let edges = keep.iter().flat_map(|&u| {
            let index = &index;
            self.adjacency[u]
                .iter()
                .filter(move |&&v| u < v && index[v] != usize::MAX)
                .map(move |&v| (index[u], index[v]))
        });
        Graph::from_edges(keep.len(), edges.collect::<Vec<_>>()).expect("induced edges are valid")
    }
}

/// Strictly increasing list of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    pub fn all(n: usize) -> Self {
        VertexSet((0..n).collect())
    }

    /// Checks that every id is valid for `g`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        match self.0.last() {
            Some(&v) if v >= g.n() => input(format!("vertex {v} out of range for {} vertices", g.n())),
            _ => Ok(()),
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Position of `v` within the set.
    pub fn position(&self, v: Vertex) -> Option<usize> {
        self.0.binary_search(&v).ok()
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        match self.0.binary_search(&v) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, v);
                true
            }
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).copied().collect()
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.0 {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl From<Vec<Vertex>> for VertexSet {
    fn from(v: Vec<Vertex>) -> Self {
        v.into_iter().collect()
    }
}

impl Deref for VertexSet {
    type Target = [Vertex];

    fn deref(&self) -> &[Vertex] {
        &self.0
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a Vertex;
    type IntoIter = std::slice::Iter<'a, Vertex>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// `G^s`: same vertices, `u ~ v` iff `1 <= dist_G(u, v) <= s`.
pub fn graph_power(g: &Graph, s: Dist) -> Result<Graph> {
    if s == 0 {
        return input("graph power exponent must be at least 1");
    }
    let mut edges = Vec::new();
    for u in g.vertices() {
        let dist = g.bfs_within(u, s, None);
        edges.extend(
            dist.iter()
                .enumerate()
                .filter(|&(v, &d)| u < v && d <= s)
                .map(|(v, _)| (u, v)),
        );
    }
    Graph::from_edges(g.n(), edges)
}

/// Two-colouring of `g`, `None` if `g` has an odd cycle.
pub fn bipartition(g: &Graph) -> Option<Vec<bool>> {
    let mut colour: Vec<Option<bool>> = vec![None; g.n()];
    for root in g.vertices() {
        if colour[root].is_some() {
            continue;
        }
        colour[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for &w in g.neighbors(u) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(colour.into_iter().map(|c| c.unwrap()).collect())
}

/// Half-square of a bipartite graph `h` on one side of its bipartition:
/// the graph on `side` (relabelled `0..side.len()` in order) where two
/// vertices are adjacent iff they are at distance exactly 2 in `h`.
pub fn half_square(h: &Graph, side: &VertexSet) -> Result<Graph> {
    side.validate(h)?;
    let in_side = side.mask(h.n());
    if let Some((u, v)) = h.edges().find(|&(u, v)| in_side[u] == in_side[v]) {
        return input(format!(
            "edge ({u}, {v}) has both endpoints on the same side; not a bipartition"
        ));
    }
    let mut edges = Vec::new();
    for (i, &u) in side.iter().enumerate() {
        let dist = h.bfs_within(u, 2, None);
        for (j, &v) in side.iter().enumerate().skip(i + 1) {
            if dist[v] == 2 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(side.len(), edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn bfs_examples() {
        let p3 = path(3);
        assert_eq!(p3.bfs_capped(0, 1).unwrap(), vec![0, 1, inf(1)]);
        assert_eq!(p3.bfs_capped(1, 0).unwrap(), vec![inf(0), 0, inf(0)]);
        let c4 = cycle(4);
        assert_eq!(c4.bfs_capped(0, 2).unwrap(), vec![0, 1, 2, 1]);
        assert!(p3.bfs_capped(3, 1).is_err());
    }

    #[test]
    fn power_examples() {
        let p4 = path(4);
        assert_eq!(graph_power(&p4, 1).unwrap(), p4);
        let sq = graph_power(&p4, 2).unwrap();
        let edges: Vec<_> = sq.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]);
        let single = Graph::edgeless(1);
        assert_eq!(graph_power(&single, 5).unwrap().edge_count(), 0);
        assert!(graph_power(&p4, 0).is_err());
    }

    #[test]
    fn half_square_examples() {
        // star: centre 0, leaves 1, 2
        let star = Graph::from_edges(3, [(0, 1), (0, 2)]).unwrap();
        let hs = half_square(&star, &VertexSet::from(vec![1, 2])).unwrap();
        assert_eq!(hs.edges().collect::<Vec<_>>(), vec![(0, 1)]);

        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let hs = half_square(&two_edges, &VertexSet::from(vec![0, 2])).unwrap();
        assert_eq!(hs.edge_count(), 0);

        let c6 = cycle(6);
        let hs = half_square(&c6, &VertexSet::from(vec![0, 2, 4])).unwrap();
        assert_eq!(hs.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);

        assert!(half_square(&c6, &VertexSet::from(vec![0, 1])).is_err());
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
    }

    #[test]
    fn vertex_set_normalises() {
        let s: VertexSet = vec![3, 1, 3, 2].into();
        assert_eq!(&*s, &[1, 2, 3]);
        assert_eq!(s.position(3), Some(2));
    }
}
