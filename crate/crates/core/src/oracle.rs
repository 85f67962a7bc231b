//! Brute-force reference: enumerate every size-`k` independent set, join
//! pairs whose symmetric difference is one edge, and search the result.
//! Shares no move generation with [`crate::solver`].

use std::collections::VecDeque;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{is_independent, Graph, VertexSet};
use crate::instance::Instance;

pub const DEFAULT_STATE_CAP: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("C({n}, {k}) candidate sets exceed the cap of {cap}")]
    CapExceeded { n: usize, k: usize, cap: usize },
}

/// `C(n, k)`, saturating.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

/// All size-`k` independent sets in lexicographic order.
pub fn enumerate_independent_sets(
    g: &Graph,
    k: usize,
    cap: usize,
) -> Result<Vec<VertexSet>, OracleError> {
    let n = g.vertex_count();
    if binomial(n, k) > cap {
        return Err(OracleError::CapExceeded { n, k, cap });
    }
    Ok(g.vertices()
        .combinations(k)
        .map(VertexSet::from_sorted)
        .filter(|s| is_independent(g, s))
        .collect())
}

/// Explicit reconfiguration graph over state indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReconfigurationGraph {
    pub states: Vec<VertexSet>,
    pub adjacency: Vec<Vec<usize>>,
}

impl ReconfigurationGraph {
    pub fn index_of(&self, s: &VertexSet) -> Option<usize> {
        self.states.binary_search(s).ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Hop distances from state `from`.
    pub fn distances(&self, from: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.states.len()];
        dist[from] = Some(0);
        let mut queue = VecDeque::from([from]);
        while let Some(a) = queue.pop_front() {
            for &b in &self.adjacency[a] {
                if dist[b].is_none() {
                    dist[b] = Some(dist[a].unwrap() + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    }
}

/// Adjacent iff `I \ J = {a}`, `J \ I = {b}` and `{a, b}` is an edge.
fn one_slide_apart(g: &Graph, i: &VertexSet, j: &VertexSet) -> bool {
    let only_i = i.difference(j);
    let only_j = j.difference(i);
    only_i.len() == 1 && only_j.len() == 1 && g.has_edge(only_i.as_slice()[0], only_j.as_slice()[0])
}

pub fn build_reconfiguration_graph(
    g: &Graph,
    k: usize,
    cap: usize,
) -> Result<ReconfigurationGraph, OracleError> {
    let states = enumerate_independent_sets(g, k, cap)?;
    let mut adjacency = vec![Vec::new(); states.len()];
    for a in 0..states.len() {
        for b in (a + 1)..states.len() {
            if one_slide_apart(g, &states[a], &states[b]) {
                adjacency[a].push(b);
                adjacency[b].push(a);
            }
        }
    }
    Ok(ReconfigurationGraph { states, adjacency })
}

/// Number of slides on a shortest sequence, `None` when unreachable.
pub fn oracle_distance(instance: &Instance, cap: usize) -> Result<Option<usize>, OracleError> {
    let r = build_reconfiguration_graph(&instance.graph, instance.k, cap)?;
    let s = r
        .index_of(&instance.source)
        .expect("source is an independent k-set");
    let t = r
        .index_of(&instance.target)
        .expect("target is an independent k-set");
    Ok(r.distances(s)[t])
}

pub fn oracle_decide(instance: &Instance) -> Result<bool, OracleError> {
    Ok(oracle_distance(instance, DEFAULT_STATE_CAP)?.is_some())
}
