#![allow(dead_code)]

use pe_core::graph::{generate, Family, Graph};

pub struct Instance {
    pub name: String,
    pub graph: Graph,
    /// Paths, stars and trees of depth at most 4.
    pub shallow: bool,
}

fn instance(name: String, family: &Family, seed: u64, shallow: bool) -> Instance {
    Instance {
        name,
        graph: generate(family, seed).expect("generator"),
        shallow,
    }
}

/// Seeded connected graphs on at most 7 vertices plus small structured
/// families on at most 9 vertices.
pub fn small_grid(random: usize) -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..random as u64 {
        let n = 1 + (seed % 7) as usize;
        let p = [0.15, 0.3, 0.5][(seed / 7 % 3) as usize];
        out.push(instance(format!("random n={n} p={p} seed={seed}"), &Family::ConnectedRandom { n, p }, seed, false));
    }
    for n in 1..=9 {
        out.push(instance(format!("path {n}"), &Family::Path { n }, 0, true));
    }
    for n in 3..=9 {
        out.push(instance(format!("cycle {n}"), &Family::Cycle { n }, 0, false));
    }
    for leaves in 1..=8 {
        out.push(instance(format!("star {leaves}"), &Family::Star { leaves }, 0, true));
    }
    for rows in 1..=3 {
        for cols in rows..=9 / rows {
            out.push(instance(format!("grid {rows}x{cols}"), &Family::Grid { rows, cols }, 0, false));
        }
    }
    for seed in 0..20 {
        let n = 5 + (seed % 5) as usize;
        out.push(instance(
            format!("tree n={n} seed={seed}"),
            &Family::Tree { n, max_depth: Some(4) },
            seed,
            true,
        ));
    }
    out
}
