use num_bigint::BigUint;
use rand::Rng;

use crate::error::{Error, Result};

/// Upper bound `c^(c*l - 1)` on the `c`-colour Ramsey number for cliques of
/// size `l`.
pub fn ramsey_bound(c: usize, l: usize) -> Result<BigUint> {
    if c < 2 {
        return Err(Error::Input(format!("Ramsey bound needs at least 2 colours, got {c}")));
    }
    if l == 0 {
        return Err(Error::Input("Ramsey bound needs a clique size of at least 1".into()));
    }
    let exp = u32::try_from(c * l - 1).map_err(|_| Error::Input("exponent too large".into()))?;
    Ok(BigUint::from(c).pow(exp))
}

/// Edge colouring of the complete graph on `n` vertices with colours
/// `0..colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    n: usize,
    colors: usize,
    /// Row-major upper triangle.
    table: Vec<u8>,
}

impl EdgeColoring {
    pub fn from_fn(n: usize, colors: usize, mut color: impl FnMut(usize, usize) -> usize) -> Result<Self> {
        if colors == 0 || colors > 256 {
            return Err(Error::Input(format!("colour count {colors} outside 1..=256")));
        }
        let mut table = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                let c = color(u, v);
                if c >= colors {
                    return Err(Error::Input(format!("edge ({u}, {v}) has colour {c} >= {colors}")));
                }
                table.push(c as u8);
            }
        }
        Ok(EdgeColoring { n, colors, table })
    }

    pub fn random(n: usize, colors: usize, rng: &mut impl Rng) -> Result<Self> {
        EdgeColoring::from_fn(n, colors, |_, _| rng.gen_range(0..colors.max(1)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn color(&self, u: usize, v: usize) -> usize {
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        assert!(u != v && v < self.n, "no edge ({u}, {v})");
        // Offset of row u in the upper triangle.
        let row = u * (2 * self.n - u - 1) / 2;
        self.table[row + v - u - 1] as usize
    }

    pub fn is_monochromatic(&self, set: &[usize]) -> bool {
        let mut colour = None;
        for (i, &u) in set.iter().enumerate() {
            for &v in &set[i + 1..] {
                if u == v {
                    return false;
                }
                let c = self.color(u, v);
                if *colour.get_or_insert(c) != c {
                    return false;
                }
            }
        }
        true
    }
}

/// Extracts `l` vertices spanning a single colour. Repeatedly takes the
/// lowest remaining vertex, keeps only its neighbours in its most frequent
/// colour, and finally reads off the vertices sharing a chosen colour.
pub fn find_monochromatic(coloring: &EdgeColoring, l: usize) -> Result<Vec<usize>> {
    let n = coloring.n();
    let mut pool: Vec<usize> = (0..n).collect();
    let mut picks: Vec<(usize, Option<usize>)> = Vec::new();
    while let Some((&u, rest)) = pool.split_first() {
        if rest.is_empty() {
            picks.push((u, None));
            break;
        }
        let mut counts = vec![0usize; coloring.colors()];
        for &v in rest {
            counts[coloring.color(u, v)] += 1;
        }
        let best = (0..counts.len()).max_by_key(|&c| (counts[c], std::cmp::Reverse(c))).unwrap();
        picks.push((u, Some(best)));
        pool = rest.iter().copied().filter(|&v| coloring.color(u, v) == best).collect();
    }
    for colour in 0..coloring.colors() {
        let set: Vec<usize> = picks
            .iter()
            .filter(|(_, c)| c.is_none_or(|c| c == colour))
            .map(|&(u, _)| u)
            .take(l)
            .collect();
        if set.len() == l {
            if !coloring.is_monochromatic(&set) {
                return Err(Error::Invariant(format!("extracted set {set:?} is not monochromatic")));
            }
            return Ok(set);
        }
    }
    let guaranteed = coloring.colors() >= 2
        && ramsey_bound(coloring.colors(), l.max(1)).is_ok_and(|b| BigUint::from(n) >= b);
    if guaranteed {
        return Err(Error::Invariant(format!(
            "no monochromatic {l}-set extracted although n = {n} meets the Ramsey bound"
        )));
    }
    Err(Error::NotFound(format!("no monochromatic set of size {l} found among {n} vertices")))
}
