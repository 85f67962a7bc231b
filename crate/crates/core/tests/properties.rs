mod common;

use proptest::prelude::*;
use tokslide::generator::{random_girth5, random_instance};
use tokslide::graph::is_independent;
use tokslide::instance::{parse_instance, serialize_instance};
use tokslide::kernel::{kernelize, l1_degree_bound};
use tokslide::oracle::{build_reconfiguration_graph, DEFAULT_STATE_CAP};
use tokslide::solver::{solve_direct, DEFAULT_BUDGET};
use tokslide::{Decision, Instance, VertexSet};

fn arb_instance() -> impl Strategy<Value = Instance> {
    (1usize..=16, 0usize..24, 1usize..=3, any::<u64>())
        .prop_filter_map("no placement", |(n, m, k, seed)| {
            random_instance(&random_girth5(n, m, seed), k, seed ^ 0x5eed).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialization_round_trips(i in arb_instance()) {
        let text = serialize_instance(&i);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &i);
        prop_assert_eq!(serialize_instance(&back), text);
    }

    #[test]
    fn reachability_is_symmetric(i in arb_instance()) {
        let rev = Instance::new(i.graph.clone(), i.target.clone(), i.source.clone()).unwrap();
        let len = |d: Decision| match d {
            Decision::Yes(Some(s)) => Some(s.len()),
            Decision::No => None,
            other => panic!("{other:?}"),
        };
        prop_assert_eq!(len(solve_direct(&i, DEFAULT_BUDGET)), len(solve_direct(&rev, DEFAULT_BUDGET)));
    }

    #[test]
    fn kernels_are_fixed_points(i in arb_instance()) {
        let (kern, trace) = kernelize(&i).unwrap();
        prop_assert_eq!(serialize_instance(&trace.replay(&i)), serialize_instance(&kern));
        let (again, trace2) = kernelize(&kern).unwrap();
        prop_assert!(trace2.is_empty());
        prop_assert_eq!(again, kern.clone());
        let bound = l1_degree_bound(kern.k);
        prop_assert!(kern.terminals().iter().all(|v| kern.graph.degree(v) <= bound));
    }

    #[test]
    fn state_count_matches_bitmask_filter(n in 1usize..=12, m in 0usize..16, k in 0usize..=3, seed: u64) {
        let g = random_girth5(n, m, seed);
        let r = build_reconfiguration_graph(&g, k, DEFAULT_STATE_CAP).unwrap();
        let count = (0u32..1 << n)
            .filter(|mask| mask.count_ones() as usize == k)
            .filter(|mask| is_independent(&g, &(0..n).filter(|&v| mask >> v & 1 == 1).collect::<VertexSet>()))
            .count();
        prop_assert_eq!(r.states.len(), count);
    }
}
