//! Distance-r profiles on a pivot set and the deduplicated profile tables
//! every oracle is built on.

use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{input, Result};
use crate::graph::{inf, Dist, Graph, Vertex, VertexSet};

/// Largest radius whose profiles still pack into bytes (`r + 1` must fit).
pub const MAX_RADIUS: Dist = 254;

fn check_radius(r: Dist) -> Result<()> {
    if r > MAX_RADIUS {
        input(format!("radius {r} exceeds the supported maximum {MAX_RADIUS}"))
    } else {
        Ok(())
    }
}

/// Capped distances from one vertex (or set) to each pivot, in pivot order.
/// Entries equal to `radius + 1` mean "farther than `radius`".
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistanceProfile {
    radius: Dist,
    values: Vec<u8>,
}

impl DistanceProfile {
    pub fn radius(&self) -> Dist {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Distance to the `i`-th pivot, `None` if beyond the radius.
    pub fn get(&self, i: usize) -> Option<Dist> {
        let d = self.values[i] as Dist;
        (d <= self.radius).then_some(d)
    }

    /// Raw capped value; `radius + 1` encodes infinity.
    pub fn raw(&self, i: usize) -> Dist {
        self.values[i] as Dist
    }

    pub fn packed(&self) -> &[u8] {
        &self.values
    }

    /// Pointwise minimum; infinity is the top element.
    pub fn meet(&self, other: &DistanceProfile) -> DistanceProfile {
        debug_assert_eq!(self.radius, other.radius);
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a.min(b)).collect();
        DistanceProfile {
            radius: self.radius,
            values,
        }
    }
}

impl fmt::Display for DistanceProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for i in 0..self.len() {
            if i > 0 {
                write!(f, ",")?;
            }
            match self.get(i) {
                Some(d) => write!(f, "{d}")?,
                None => write!(f, "INF")?,
            }
        }
        write!(f, ")")
    }
}

/// Profile of `v` on pivot set `pivot` at radius `r`.
pub fn profile_of_vertex(g: &Graph, pivot: &VertexSet, r: Dist, v: Vertex) -> Result<DistanceProfile> {
    check_radius(r)?;
    pivot.validate(g)?;
    g.check_vertex(v)?;
    let dist = g.bfs_capped(v, r)?;
    Ok(DistanceProfile {
        radius: r,
        values: pivot.iter().map(|&s| dist[s] as u8).collect(),
    })
}

/// Pointwise minimum of the profiles of the members of `set`.
pub fn profile_of_set(g: &Graph, pivot: &VertexSet, r: Dist, set: &VertexSet) -> Result<DistanceProfile> {
    let Some((&first, rest)) = set.split_first() else {
        return input("profile of an empty set is undefined");
    };
    set.validate(g)?;
    let mut acc = profile_of_vertex(g, pivot, r, first)?;
    for &u in rest {
        acc = acc.meet(&profile_of_vertex(g, pivot, r, u)?);
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileEntry {
    pub profile: DistanceProfile,
    /// Lowest-id vertex realising the profile.
    pub representative: Vertex,
    pub count: usize,
}

/// All profiles realised on a pivot set, each with a representative.
/// Entries are ordered by representative.
#[derive(Clone, Debug)]
pub struct ProfileTable {
    pivot: VertexSet,
    radius: Dist,
    entries: Vec<ProfileEntry>,
    vertex_to_profile: Vec<usize>,
}

impl ProfileTable {
    /// Builds the table from one capped BFS row per pivot vertex
    /// (`rows[i][v]` = capped distance from `pivot[i]` to `v`).
    pub fn from_rows(pivot: VertexSet, radius: Dist, rows: &[&[Dist]], n: usize) -> Self {
        debug_assert_eq!(rows.len(), pivot.len());
        let far = inf(radius);
        let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
        let mut entries: Vec<ProfileEntry> = Vec::new();
        let mut vertex_to_profile = Vec::with_capacity(n);
        for v in 0..n {
            let key: Vec<u8> = rows.iter().map(|row| row[v].min(far) as u8).collect();
            let slot = *index.entry(key).or_insert_with_key(|key| {
                entries.push(ProfileEntry {
                    profile: DistanceProfile {
                        radius,
                        values: key.clone(),
                    },
                    representative: v,
                    count: 0,
                });
                entries.len() - 1
            });
            entries[slot].count += 1;
            vertex_to_profile.push(slot);
        }
        ProfileTable {
            pivot,
            radius,
            entries,
            vertex_to_profile,
        }
    }

    pub fn pivot(&self) -> &VertexSet {
        &self.pivot
    }

    pub fn radius(&self) -> Dist {
        self.radius
    }

    pub fn entries(&self) -> &[ProfileEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Index of the entry realised by `v`.
    pub fn entry_of(&self, v: Vertex) -> usize {
        self.vertex_to_profile[v]
    }

    pub fn profile_of(&self, v: Vertex) -> &DistanceProfile {
        &self.entries[self.vertex_to_profile[v]].profile
    }

    /// Up to `limit` realising vertices of `entry`, lowest ids first.
    pub fn members(&self, entry: usize, limit: usize) -> Vec<Vertex> {
        self.vertex_to_profile
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e == entry)
            .map(|(v, _)| v)
            .take(limit)
            .collect()
    }
}

/// One capped BFS per pivot vertex, then deduplication.
pub fn build_profile_table(g: &Graph, pivot: &VertexSet, r: Dist) -> Result<ProfileTable> {
    check_radius(r)?;
    pivot.validate(g)?;
    let rows: Vec<Vec<Dist>> = pivot.iter().map(|&s| g.bfs_within(s, r, None)).collect();
    let refs: Vec<&[Dist]> = rows.iter().map(Vec::as_slice).collect();
    Ok(ProfileTable::from_rows(pivot.clone(), r, &refs, g.n()))
}

/// Result of [`measure_profile_complexity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProfileComplexity {
    pub count: usize,
    /// `true` when every pivot set of the requested size was examined;
    /// otherwise `count` is a sampled lower bound.
    pub exact: bool,
}

/// Default number of pivot sets examined before switching to sampling.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 100_000;

fn binomial(n: usize, k: usize) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul((n - i) as u64) / (i as u64 + 1))
}

/// Maximum number of realised distance-`r` profiles over pivot sets of size
/// at most `m`. Refining the pivot set never merges profiles, so only sets of
/// size exactly `m` are examined: all of them when there are at most
/// `budget`, otherwise `trials` uniformly sampled ones.
pub fn measure_profile_complexity(
    g: &Graph,
    r: Dist,
    m: usize,
    trials: usize,
    seed: u64,
    budget: u64,
) -> Result<ProfileComplexity> {
    check_radius(r)?;
    let n = g.n();
    if m > n {
        return input(format!("pivot size {m} exceeds vertex count {n}"));
    }
    let rows: Vec<Vec<Dist>> = g.vertices().map(|v| g.bfs_within(v, r, None)).collect();
    let far = inf(r);
    let count = |pivot: &[Vertex]| -> usize {
        let seen: HashSet<Vec<u8>> = (0..n)
            .map(|v| pivot.iter().map(|&s| rows[s][v].min(far) as u8).collect())
            .collect();
        seen.len()
    };
    if n == 0 {
        return Ok(ProfileComplexity { count: 0, exact: true });
    }
    if binomial(n, m) <= budget {
        let best = (0..n).combinations(m).map(|s| count(&s)).max().unwrap_or(0);
        Ok(ProfileComplexity { count: best, exact: true })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let best = (0..trials.max(1))
            .map(|_| {
                let mut s = sample(&mut rng, n, m).into_vec();
                s.sort_unstable();
                count(&s)
            })
            .max()
            .unwrap_or(0);
        Ok(ProfileComplexity { count: best, exact: false })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn set(v: &[Vertex]) -> VertexSet {
        v.to_vec().into()
    }

    #[test]
    fn vertex_profiles() {
        let p3 = path(3);
        let p = profile_of_vertex(&p3, &set(&[0]), 1, 2).unwrap();
        assert_eq!(p.get(0), None);
        assert_eq!(p.to_string(), "(INF)");
        let q = profile_of_vertex(&p3, &set(&[1]), 5, 1).unwrap();
        assert_eq!(q.get(0), Some(0));
        assert!(profile_of_vertex(&p3, &VertexSet::new(), 1, 0).unwrap().is_empty());
    }

    #[test]
    fn set_profiles() {
        let p3 = path(3);
        let single = profile_of_set(&p3, &set(&[0, 2]), 2, &set(&[1])).unwrap();
        assert_eq!(single, profile_of_vertex(&p3, &set(&[0, 2]), 2, 1).unwrap());
        let both = profile_of_set(&p3, &set(&[1]), 1, &set(&[0, 2])).unwrap();
        assert_eq!(both.get(0), Some(1));
        let all = profile_of_set(&p3, &set(&[0, 1, 2]), 3, &set(&[0, 1, 2])).unwrap();
        assert!((0..3).all(|i| all.get(i) == Some(0)));
        assert!(profile_of_set(&p3, &set(&[0]), 1, &VertexSet::new()).is_err());
    }

    #[test]
    fn table_examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let t = build_profile_table(&star, &set(&[0]), 1).unwrap();
        let summary: Vec<_> = t.entries().iter().map(|e| (e.profile.to_string(), e.count)).collect();
        assert_eq!(summary, vec![("(0)".to_string(), 1), ("(1)".to_string(), 3)]);

        let empty = Graph::edgeless(4);
        let t = build_profile_table(&empty, &set(&[0]), 2).unwrap();
        let summary: Vec<_> = t.entries().iter().map(|e| (e.profile.to_string(), e.count)).collect();
        assert_eq!(summary, vec![("(0)".to_string(), 1), ("(INF)".to_string(), 3)]);

        let p4 = path(4);
        let t = build_profile_table(&p4, &set(&[0, 3]), 3).unwrap();
        let profiles: Vec<_> = t.entries().iter().map(|e| e.profile.to_string()).collect();
        assert_eq!(profiles, vec!["(0,3)", "(1,2)", "(2,1)", "(3,0)"]);
        assert_eq!(t.members(1, 5), vec![1]);
    }

    #[test]
    fn complexity_examples() {
        let p5 = path(5);
        let c = measure_profile_complexity(&p5, 1, 0, 10, 0, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(c, ProfileComplexity { count: 1, exact: true });
        let e = Graph::edgeless(5);
        let c = measure_profile_complexity(&e, 1, 1, 10, 0, DEFAULT_ENUMERATION_BUDGET).unwrap();
        assert_eq!(c.count, 2);
        // sampling path
        let c = measure_profile_complexity(&p5, 1, 2, 20, 3, 1).unwrap();
        assert!(!c.exact && c.count <= 5);
        assert!(measure_profile_complexity(&p5, 1, 6, 1, 0, 10).is_err());
    }
}
