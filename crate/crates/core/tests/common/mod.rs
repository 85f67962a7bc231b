//! Shared seeded corpus for the integration tests.
#![allow(dead_code)]

use tokslide::generator::{family, random_girth5, random_instance, Family};
use tokslide::graph::Graph;
use tokslide::Instance;

pub struct Case {
    pub name: String,
    pub instance: Instance,
}

/// `count` random instances with `n <= 16` and `k` cycling through 1, 2, 3.
pub fn random_corpus(count: usize) -> Vec<Case> {
    let mut out = Vec::with_capacity(count);
    let mut seed = 0u64;
    while out.len() < count {
        let k = 1 + (seed % 3) as usize;
        let n = 5 + (seed * 7 % 12) as usize;
        let m = n - 1 + (seed % 5) as usize;
        let g = random_girth5(n, m, seed);
        if let Ok(instance) = random_instance(&g, k, seed + 10_000) {
            out.push(Case {
                name: format!("random seed={seed} n={n} k={k}"),
                instance,
            });
        }
        seed += 1;
    }
    out
}

/// Every family for `k` in 1..=3 at small scales, plus the smallest scale
/// that makes the long path diameter-safe and the spider degree-safe.
pub fn family_corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for f in Family::ALL {
        for k in 1..=3usize {
            let mut scales = vec![0, 1, 2, 3, 5];
            match f {
                Family::LongPathComponent => scales.push(k.pow(3) + 1),
                Family::DegreeSafeSpider => scales.push(k * k + 1),
                _ => {}
            }
            for scale in scales {
                let instance = family(f, k, scale).unwrap();
                out.push(Case {
                    name: format!("{f} k={k} scale={scale}"),
                    instance,
                });
            }
        }
    }
    out
}

pub fn corpus() -> Vec<Case> {
    let mut c = random_corpus(500);
    c.extend(family_corpus());
    c
}

pub fn c5() -> Graph {
    Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap()
}

pub fn k13() -> Graph {
    Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
}
