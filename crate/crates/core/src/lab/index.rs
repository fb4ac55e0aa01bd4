use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BipartiteGraph, Bits};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstructionKind {
    Comatching,
    Ladder,
    Semiladder,
}

impl ObstructionKind {
    pub const ALL: [ObstructionKind; 3] = [
        ObstructionKind::Comatching,
        ObstructionKind::Ladder,
        ObstructionKind::Semiladder,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ObstructionKind::Comatching => "comatching",
            ObstructionKind::Ladder => "ladder",
            ObstructionKind::Semiladder => "semiladder",
        }
    }

    /// Whether `(a_i, b_j)` must be an edge, must not be, or is free.
    fn expected(self, i: usize, j: usize) -> Option<bool> {
        match self {
            ObstructionKind::Comatching => Some(i != j),
            ObstructionKind::Ladder => Some(i > j),
            ObstructionKind::Semiladder if i > j => Some(true),
            ObstructionKind::Semiladder if i == j => Some(false),
            ObstructionKind::Semiladder => None,
        }
    }
}

impl std::str::FromStr for ObstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ObstructionKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown obstruction kind `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Obstruction {
    pub kind: ObstructionKind,
    pub a_seq: Vec<usize>,
    pub b_seq: Vec<usize>,
}

impl Obstruction {
    pub fn empty(kind: ObstructionKind) -> Self {
        Obstruction {
            kind,
            a_seq: Vec::new(),
            b_seq: Vec::new(),
        }
    }

    pub fn order(&self) -> usize {
        self.a_seq.len()
    }

    /// Checks the defining pattern of the kind against `h`, including that
    /// both sequences are in range and free of repeats.
    pub fn verify(&self, h: &BipartiteGraph) -> bool {
        let n = self.a_seq.len();
        if self.b_seq.len() != n {
            return false;
        }
        let distinct = |s: &[usize]| {
            let mut v = s.to_vec();
            v.sort_unstable();
            v.windows(2).all(|w| w[0] != w[1])
        };
        if !distinct(&self.a_seq) || !distinct(&self.b_seq) {
            return false;
        }
        if self.a_seq.iter().any(|&a| a >= h.left()) || self.b_seq.iter().any(|&b| b >= h.right()) {
            return false;
        }
        (0..n).all(|i| {
            (0..n).all(|j| match self.kind.expected(i, j) {
                Some(e) => h.has_edge(self.a_seq[i], self.b_seq[j]) == e,
                None => true,
            })
        })
    }
}

/// Default number of memoised search states before giving up.
pub const DEFAULT_INDEX_BUDGET: usize = 2_000_000;

/// Maximum order of an obstruction of the given kind in `h`, with a witness.
pub fn index_of(h: &BipartiteGraph, kind: ObstructionKind) -> Result<(usize, Obstruction)> {
    index_of_with_budget(h, kind, DEFAULT_INDEX_BUDGET)
}

pub fn index_of_with_budget(h: &BipartiteGraph, kind: ObstructionKind, budget: usize) -> Result<(usize, Obstruction)> {
    let mut search = Search {
        h,
        nb_right: h.right_neighborhoods(),
        budget,
        visited: 0,
        single: HashMap::new(),
        pair: HashMap::new(),
    };
    let all_left = Bits::full(h.left());
    let all_right = Bits::full(h.right());
    let mut ob = Obstruction::empty(kind);
    match kind {
        ObstructionKind::Semiladder => {
            search.semiladder(&all_left)?;
            search.trace_semiladder(all_left, &mut ob);
        }
        ObstructionKind::Ladder => {
            search.ladder(&all_left, &all_right)?;
            search.trace_ladder(all_left, all_right, &mut ob);
        }
        ObstructionKind::Comatching => {
            search.comatching(&all_left, &all_right)?;
            search.trace_comatching(all_left, all_right, &mut ob);
        }
    }
    if !ob.verify(h) {
        return Err(Error::Invariant(format!("reconstructed {} obstruction fails verification", kind.name())));
    }
    Ok((ob.order(), ob))
}

/// Exact searches over pools of still-eligible vertices. Choosing the
/// pair `(a, b)` first restricts the later `a_i` to `N(b)` in every kind;
/// the later `b_j` are restricted to `N(a)` for co-matchings and to its
/// complement for ladders, and are unconstrained for semi-ladders.
struct Search<'h> {
    h: &'h BipartiteGraph,
    nb_right: Vec<Bits>,
    budget: usize,
    visited: usize,
    single: HashMap<Bits, usize>,
    pair: HashMap<(Bits, Bits), usize>,
}

impl Search<'_> {
    fn charge(&mut self) -> Result<()> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::Resource(format!(
                "index search exceeded the budget of {} states",
                self.budget
            )));
        }
        Ok(())
    }

    fn semiladder(&mut self, p: &Bits) -> Result<usize> {
        if let Some(&v) = self.single.get(p) {
            return Ok(v);
        }
        self.charge()?;
        let mut best = 0;
        for b in 0..self.h.right() {
            let nb = &self.nb_right[b];
            if p.is_subset(nb) {
                continue;
            }
            let next = p.and(nb);
            if next.count() < best {
                continue;
            }
            best = best.max(1 + self.semiladder(&next)?);
        }
        self.single.insert(p.clone(), best);
        Ok(best)
    }

    fn trace_semiladder(&self, mut p: Bits, ob: &mut Obstruction) {
        loop {
            let target = self.single[&p];
            if target == 0 {
                return;
            }
            let b = (0..self.h.right())
                .find(|&b| {
                    let nb = &self.nb_right[b];
                    !p.is_subset(nb) && self.single.get(&p.and(nb)) == Some(&(target - 1))
                })
                .expect("memo holds an optimal move");
            ob.a_seq.push(p.and_not(&self.nb_right[b]).first().unwrap());
            ob.b_seq.push(b);
            p = p.and(&self.nb_right[b]);
        }
    }

    fn ladder(&mut self, p: &Bits, q: &Bits) -> Result<usize> {
        let key = (p.clone(), q.clone());
        if let Some(&v) = self.pair.get(&key) {
            return Ok(v);
        }
        self.charge()?;
        let mut best = 0;
        let mut seen: Vec<Bits> = Vec::new();
        for a in p.ones() {
            let q_next = q.and_not(self.h.neighbors(a));
            if q_next.is_clear() || seen.contains(&q_next) {
                continue;
            }
            for b in q_next.ones() {
                let p_next = p.and(&self.nb_right[b]);
                if p_next.count().min(q_next.count()) < best {
                    continue;
                }
                best = best.max(1 + self.ladder(&p_next, &q_next)?);
            }
            seen.push(q_next);
        }
        self.pair.insert(key, best);
        Ok(best)
    }

    fn trace_ladder(&self, mut p: Bits, mut q: Bits, ob: &mut Obstruction) {
        loop {
            let target = self.pair[&(p.clone(), q.clone())];
            if target == 0 {
                return;
            }
            let (a, b) = p
                .ones()
                .flat_map(|a| q.and_not(self.h.neighbors(a)).ones().map(move |b| (a, b)).collect::<Vec<_>>())
                .find(|&(a, b)| {
                    let key = (p.and(&self.nb_right[b]), q.and_not(self.h.neighbors(a)));
                    self.pair.get(&key) == Some(&(target - 1))
                })
                .expect("memo holds an optimal move");
            ob.a_seq.push(a);
            ob.b_seq.push(b);
            p = p.and(&self.nb_right[b]);
            q = q.and_not(self.h.neighbors(a));
        }
    }

    /// Co-matchings are symmetric under reordering, so it suffices to decide
    /// for the lowest remaining `a` whether it is used, and with which `b`.
    fn comatching(&mut self, p: &Bits, q: &Bits) -> Result<usize> {
        let Some(a) = p.first() else { return Ok(0) };
        if q.is_clear() {
            return Ok(0);
        }
        let key = (p.clone(), q.clone());
        if let Some(&v) = self.pair.get(&key) {
            return Ok(v);
        }
        self.charge()?;
        let mut rest = p.clone();
        rest.remove(a);
        let mut best = self.comatching(&rest, q)?;
        let q_next = q.and(self.h.neighbors(a));
        for b in q.and_not(self.h.neighbors(a)).ones() {
            let p_next = p.and(&self.nb_right[b]);
            if p_next.count().min(q_next.count()) < best {
                continue;
            }
            best = best.max(1 + self.comatching(&p_next, &q_next)?);
        }
        self.pair.insert(key, best);
        Ok(best)
    }

    fn value_comatching(&self, p: &Bits, q: &Bits) -> usize {
        if p.is_clear() || q.is_clear() {
            0
        } else {
            self.pair[&(p.clone(), q.clone())]
        }
    }

    fn trace_comatching(&self, mut p: Bits, mut q: Bits, ob: &mut Obstruction) {
        loop {
            let target = self.value_comatching(&p, &q);
            if target == 0 {
                return;
            }
            let a = p.first().unwrap();
            let q_next = q.and(self.h.neighbors(a));
            let used = q.and_not(self.h.neighbors(a)).ones().find(|&b| {
                let p_next = p.and(&self.nb_right[b]);
                let known = if p_next.is_clear() || q_next.is_clear() {
                    Some(0)
                } else {
                    self.pair.get(&(p_next, q_next.clone())).copied()
                };
                known == Some(target - 1)
            });
            match used {
                Some(b) => {
                    ob.a_seq.push(a);
                    ob.b_seq.push(b);
                    p = p.and(&self.nb_right[b]);
                    q = q_next;
                }
                None => p.remove(a),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(h: &BipartiteGraph, kind: ObstructionKind) -> usize {
        index_of(h, kind).unwrap().0
    }

    #[test]
    fn paper_figure_patterns() {
        let cm = BipartiteGraph::comatching(4);
        assert_eq!(idx(&cm, ObstructionKind::Comatching), 4);
        let ladder = BipartiteGraph::ladder(4);
        assert_eq!(idx(&ladder, ObstructionKind::Ladder), 4);
        assert_eq!(idx(&ladder, ObstructionKind::Semiladder), 4);
        let k33 = BipartiteGraph::from_fn(3, 3, |_, _| true);
        for kind in ObstructionKind::ALL {
            assert_eq!(idx(&k33, kind), 0);
        }
    }

    #[test]
    fn empty_graph_has_order_one() {
        let h = BipartiteGraph::new(3, 2);
        for kind in ObstructionKind::ALL {
            assert_eq!(idx(&h, kind), 1);
        }
        assert_eq!(idx(&BipartiteGraph::new(0, 0), ObstructionKind::Ladder), 0);
    }

    #[test]
    fn budget_is_reported() {
        let h = BipartiteGraph::comatching(10);
        assert!(matches!(
            index_of_with_budget(&h, ObstructionKind::Semiladder, 3),
            Err(Error::Resource(_))
        ));
    }
}
