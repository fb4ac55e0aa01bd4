use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Dist, Graph, VertexSet};

/// Default cap on the number of vertex subsets the brute-force solvers test.
pub const DEFAULT_BRUTE_FORCE_BUDGET: u128 = 50_000_000;

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn charge(total: u128, budget: u128) -> Result<()> {
    if total > budget {
        return Err(Error::Resource(format!(
            "brute force would test {total} subsets, over the budget of {budget}"
        )));
    }
    Ok(())
}

/// Smallest distance-`r` dominating set of size at most `k`, first in
/// lexicographic order among those of that size.
pub fn brute_force_dominating(g: &Graph, k: usize, r: Dist, budget: u128) -> Result<Option<VertexSet>> {
    let n = g.n();
    if n == 0 {
        return Ok(Some(VertexSet::new()));
    }
    let top = k.min(n);
    charge((1..=top).map(|s| binomial(n, s)).sum(), budget)?;
    let dist = g.all_pairs_capped(r);
    for size in 1..=top {
        let found = (0..n)
            .combinations(size)
            .find(|set| (0..n).all(|v| set.iter().any(|&x| dist[x][v] <= r)));
        if let Some(set) = found {
            return Ok(Some(set.into()));
        }
    }
    Ok(None)
}

/// First set of exactly `k` vertices with pairwise distances above `r`.
pub fn brute_force_independent(g: &Graph, k: usize, r: Dist, budget: u128) -> Result<Option<VertexSet>> {
    let n = g.n();
    if k > n {
        return Ok(None);
    }
    charge(binomial(n, k), budget)?;
    let dist = g.all_pairs_capped(r);
    Ok((0..n)
        .combinations(k)
        .find(|set| set.iter().tuple_combinations().all(|(&a, &b)| dist[a][b] > r))
        .map(VertexSet::from))
}
