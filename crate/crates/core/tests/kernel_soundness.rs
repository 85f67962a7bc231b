//! Kernelization keeps the yes/no answer on instances built to trigger
//! gadget replacement and high-degree token slides.

mod common;

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use tokslide::generator::{random_girth5, random_instance};
use tokslide::graph::{girth, Graph};
use tokslide::kernel::{kernelize, KernelStep};
use tokslide::solver::{solve_direct, solve_via_kernel, DEFAULT_BUDGET};
use tokslide::Instance;

/// Random girth-5 base with a hub of degree above `2k^2` carrying a source
/// token; some hub leaves continue into a second vertex.
fn hub_instance(k: usize, seed: u64) -> Option<Instance> {
    let mut rng = Pcg64::seed_from_u64(seed);
    let n = 12 + (seed % 10) as usize;
    let base = random_girth5(n, n + (seed % 4) as usize, seed);
    let leaves = 2 * k * k + 1 + rng.gen_range(0..3);
    let mut edges: Vec<_> = base.edges().collect();
    for j in 0..leaves {
        edges.push((0, n + j));
        if rng.gen_bool(0.4) {
            edges.push((n + j, n + leaves + j));
        }
    }
    let g = Graph::from_edges(n + 2 * leaves, edges).unwrap();
    if !girth(&g).at_least(5) {
        return None;
    }
    let drawn = random_instance(&g, k, seed).ok()?;
    let mut source = vec![0];
    for v in drawn.source.iter() {
        if source.len() < k && source.iter().all(|&s| s != v && !g.has_edge(s, v)) {
            source.push(v);
        }
    }
    if source.len() < k {
        return None;
    }
    Instance::new(g, source.into_iter().collect(), drawn.target).ok()
}

#[test]
fn hub_instances_keep_their_answer() {
    let (mut gadgets, mut slides, mut total) = (0, 0, 0);
    for k in 1..=3 {
        for seed in 0..120 {
            let Some(i) = hub_instance(k, seed) else {
                continue;
            };
            total += 1;
            let (_, trace) = kernelize(&i).unwrap();
            gadgets += trace
                .entries
                .iter()
                .any(|e| matches!(e.step, KernelStep::GadgetReplaced(_)))
                as usize;
            slides += trace
                .entries
                .iter()
                .any(|e| matches!(e.step, KernelStep::L1Slide { .. }))
                as usize;
            let direct = solve_direct(&i, DEFAULT_BUDGET).answer();
            let kernel = solve_via_kernel(&i, DEFAULT_BUDGET).unwrap().answer();
            assert_eq!(direct, kernel, "k={k} seed={seed}");
        }
    }
    assert!(
        total > 250 && gadgets > 50 && slides > 50,
        "{total} {gadgets} {slides}"
    );
}

#[test]
fn sparse_instances_keep_their_answer() {
    for k in 2..=3 {
        for seed in 0..100 {
            let n = 20 + (seed % 15) as usize;
            let g = random_girth5(n, n + (seed % 4) as usize, seed);
            let Ok(i) = random_instance(&g, k, seed) else {
                continue;
            };
            let direct = solve_direct(&i, DEFAULT_BUDGET).answer();
            let kernel = solve_via_kernel(&i, DEFAULT_BUDGET).unwrap().answer();
            assert_eq!(direct, kernel, "k={k} seed={seed}");
        }
    }
}

#[test]
fn family_answers() {
    use tokslide::generator::{family, Family};
    for k in 2..=3 {
        let trap = family(Family::StarTrap, k, 4).unwrap();
        assert_eq!(
            solve_via_kernel(&trap, DEFAULT_BUDGET).unwrap().answer(),
            Some(false)
        );
    }
    let trap = family(Family::StarTrap, 1, 4).unwrap();
    assert_eq!(solve_direct(&trap, DEFAULT_BUDGET).answer(), Some(true));
    for f in [Family::LongPathComponent, Family::DegreeSafeSpider] {
        for k in 1..=3 {
            let i = family(f, k, 40).unwrap();
            assert_eq!(
                solve_via_kernel(&i, DEFAULT_BUDGET).unwrap().answer(),
                solve_direct(&i, DEFAULT_BUDGET).answer()
            );
        }
    }
}
