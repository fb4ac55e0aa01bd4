use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::BipartiteGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HellyVariant {
    Weak,
    Full,
    Strong,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HellyOutcome {
    pub holds: bool,
    /// A violating pair `(A, B)` when the property fails.
    pub counterexample: Option<(Vec<usize>, Vec<usize>)>,
}

impl HellyOutcome {
    fn holds() -> Self {
        HellyOutcome {
            holds: true,
            counterexample: None,
        }
    }

    fn fails(a: Vec<usize>, b: Vec<usize>) -> Self {
        HellyOutcome {
            holds: false,
            counterexample: Some((a, b)),
        }
    }
}

/// Largest right side for which the subset-lattice checks run.
const MAX_RIGHT: usize = 20;

/// Smallest subset of `R` not covered by `L`, or `None` if `R` is covered.
/// The empty set counts as uncovered exactly when `L` is empty.
fn min_uncovered(h: &BipartiteGraph) -> Option<Vec<usize>> {
    if h.left() == 0 {
        return Some(Vec::new());
    }
    let covered = |t: &[usize]| (0..h.left()).any(|a| t.iter().all(|&b| h.has_edge(a, b)));
    (1..=h.right()).find_map(|size| (0..h.right()).combinations(size).find(|t| !covered(t)))
}

/// Least `p` for which weak `p`-Helly holds: 0 when `R` is covered,
/// otherwise the size of the smallest uncovered subset.
pub fn min_weak_helly(h: &BipartiteGraph) -> usize {
    min_uncovered(h).map_or(0, |t| t.len())
}

pub fn check_p_helly(h: &BipartiteGraph, p: usize, variant: HellyVariant) -> Result<HellyOutcome> {
    match variant {
        HellyVariant::Weak => Ok(match min_uncovered(h) {
            Some(t) if t.len() > p => HellyOutcome::fails((0..h.left()).collect(), (0..h.right()).collect()),
            _ => HellyOutcome::holds(),
        }),
        HellyVariant::Full => full(h, p),
        HellyVariant::Strong => strong(h, p),
    }
}

fn masks(h: &BipartiteGraph) -> Result<Vec<u32>> {
    if h.right() > MAX_RIGHT {
        return Err(Error::Resource(format!(
            "Helly check enumerates subsets of R; |R| = {} exceeds {MAX_RIGHT}",
            h.right()
        )));
    }
    Ok((0..h.left())
        .map(|a| h.neighbors(a).ones().fold(0u32, |m, b| m | 1 << b))
        .collect())
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&i| mask >> i & 1 == 1).collect()
}

fn full(h: &BipartiteGraph, p: usize) -> Result<HellyOutcome> {
    let nb = masks(h)?;
    let r = h.right();
    let size = 1usize << r;
    // covered[B]: some left vertex sees all of B.
    let mut covered = vec![false; size];
    for &m in &nb {
        covered[m as usize] = true;
    }
    for b in (0..size).rev() {
        if !covered[b] {
            covered[b] = (0..r).any(|x| b >> x & 1 == 0 && covered[b | 1 << x]);
        }
    }
    // smallest[B]: size of the smallest uncovered subset of B.
    let mut smallest = vec![usize::MAX; size];
    for b in 0..size {
        let own = if covered[b] { usize::MAX } else { b.count_ones() as usize };
        let sub = (0..r)
            .filter(|&x| b >> x & 1 == 1)
            .map(|x| smallest[b & !(1 << x)])
            .min()
            .unwrap_or(usize::MAX);
        smallest[b] = own.min(sub);
        if !covered[b] && smallest[b] > p {
            return Ok(HellyOutcome::fails((0..h.left()).collect(), members(b as u32)));
        }
    }
    Ok(HellyOutcome::holds())
}

/// For fixed `B`, a violating `A` exists iff the largest `A` that fails to
/// cover `B` still covers every `p`-subset of it.
fn strong(h: &BipartiteGraph, p: usize) -> Result<HellyOutcome> {
    let nb = masks(h)?;
    let r = h.right();
    for b in 0u32..(1 << r) {
        if (b.count_ones() as usize) <= p {
            continue;
        }
        let a_star: Vec<usize> = (0..h.left()).filter(|&a| b & !nb[a] != 0).collect();
        if a_star.is_empty() {
            continue;
        }
        let elems = members(b);
        let all_covered = elems.iter().copied().combinations(p).all(|t| {
            let t = t.iter().fold(0u32, |m, &x| m | 1 << x);
            a_star.iter().any(|&a| t & !nb[a] == 0)
        });
        if all_covered {
            return Ok(HellyOutcome::fails(a_star, elems));
        }
    }
    Ok(HellyOutcome::holds())
}

#[cfg(test)]
mod tests {
    use super::super::Bits;
    use super::*;

/// Weak `p`-Helly for the pair `(A, B)` given as bitsets.
fn pair_helly(h: &BipartiteGraph, a: &Bits, b: &Bits, p: usize) -> bool {
    let sub = BipartiteGraph::from_fn(a.count(), b.count(), |i, j| {
        let ai = a.ones().nth(i).unwrap();
        let bj = b.ones().nth(j).unwrap();
        h.has_edge(ai, bj)
    });
    min_weak_helly(&sub) <= p
}

    /// Strong Helly by enumerating every pair of subsets.
    fn strong_exhaustive(h: &BipartiteGraph, p: usize) -> bool {
        (0u32..1 << h.left()).all(|am| {
            (0u32..1 << h.right()).all(|bm| {
                let a: Bits = Bits::from_mask(h.left(), am);
                let b: Bits = Bits::from_mask(h.right(), bm);
                pair_helly(h, &a, &b, p)
            })
        })
    }

    impl Bits {
        fn from_mask(len: usize, m: u32) -> Bits {
            let mut b = Bits::empty(len);
            for i in members(m) {
                b.insert(i);
            }
            b
        }
    }

    #[test]
    fn covered_right_side_is_weak_helly() {
        let h = BipartiteGraph::from_fn(2, 3, |a, _| a == 0);
        for p in 0..3 {
            assert!(check_p_helly(&h, p, HellyVariant::Weak).unwrap().holds);
        }
    }

    #[test]
    fn isolated_left_vertex() {
        let h = BipartiteGraph::new(1, 1);
        assert!(check_p_helly(&h, 1, HellyVariant::Weak).unwrap().holds);
        assert!(!check_p_helly(&h, 0, HellyVariant::Weak).unwrap().holds);
    }

    #[test]
    fn comatching_threshold() {
        for n in 1..=5 {
            let h = BipartiteGraph::comatching(n);
            for p in 0..=n {
                let out = check_p_helly(&h, p, HellyVariant::Strong).unwrap();
                assert_eq!(out.holds, p >= n, "n={n} p={p}");
                assert_eq!(out.holds, strong_exhaustive(&h, p));
            }
        }
    }

    #[test]
    fn reduction_matches_exhaustive_on_small_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let (l, r) = (rng.gen_range(0..5), rng.gen_range(0..5));
            let h = BipartiteGraph::from_fn(l, r, |_, _| rng.gen_bool(0.6));
            for p in 0..4 {
                let fast = check_p_helly(&h, p, HellyVariant::Strong).unwrap();
                assert_eq!(fast.holds, strong_exhaustive(&h, p));
                if let Some((a, b)) = fast.counterexample {
                    let a = Bits::from_mask(l, a.iter().fold(0, |m, &x| m | 1 << x));
                    let b = Bits::from_mask(r, b.iter().fold(0, |m, &x| m | 1 << x));
                    assert!(!pair_helly(&h, &a, &b, p));
                }
                let full = check_p_helly(&h, p, HellyVariant::Full).unwrap();
                let full_slow = (0u32..1 << r).all(|bm| pair_helly(&h, &Bits::full(l), &Bits::from_mask(r, bm), p));
                assert_eq!(full.holds, full_slow);
            }
        }
    }
}
