//! Breadth-first search over the reconfiguration graph, generated on the fly.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rustc_hash::FxHashMap;
use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::instance::{Instance, ReconfigurationSequence, Slide};
use crate::kernel::{kernelize, KernelError};

pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A size-`k` independent set in canonical (ascending) order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateKey(Box<[u32]>);

impl StateKey {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<u32> = vertices.into_iter().map(|x| x as u32).collect();
        v.sort_unstable();
        v.dedup();
        StateKey(v.into_boxed_slice())
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().map(|&x| x as Vertex)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    /// Reachable; the witness is present when it could be reconstructed.
    Yes(Option<ReconfigurationSequence>),
    No,
    BudgetExceeded,
}

impl Decision {
    pub fn answer(&self) -> Option<bool> {
        match self {
            Decision::Yes(_) => Some(true),
            Decision::No => Some(false),
            Decision::BudgetExceeded => None,
        }
    }
}

/// Independent sets reachable by one slide, in the order tokens ascending,
/// then destinations ascending.
fn successors<'a>(
    g: &'a Graph,
    state: &'a StateKey,
    occupied: &'a [bool],
) -> impl Iterator<Item = (Slide, StateKey)> + 'a {
    state.vertices().flat_map(move |u| {
        g.neighbors(u).iter().filter_map(move |&v| {
            if occupied[v] || g.neighbors(v).iter().any(|&w| w != u && occupied[w]) {
                return None;
            }
            let next = StateKey::new(state.vertices().map(|x| if x == u { v } else { x }));
            Some((Slide { from: u, to: v }, next))
        })
    })
}

/// Decides the instance by BFS from `I_s`; a `Yes` carries a shortest
/// sequence. Stops with `BudgetExceeded` once more than `budget` states
/// would be visited.
pub fn solve_direct(instance: &Instance, budget: usize) -> Decision {
    let g = &instance.graph;
    let start = StateKey::new(instance.source.iter());
    let goal = StateKey::new(instance.target.iter());
    if start == goal {
        return Decision::Yes(Some(ReconfigurationSequence::default()));
    }
    if budget < 1 {
        return Decision::BudgetExceeded;
    }
    // state -> (parent index, slide from parent)
    let mut states: Vec<StateKey> = vec![start.clone()];
    let mut parent: Vec<(u32, Slide)> = vec![(u32::MAX, Slide { from: 0, to: 0 })];
    let mut index: FxHashMap<StateKey, u32> = FxHashMap::default();
    index.insert(start, 0);
    let mut queue = VecDeque::from([0u32]);
    let mut occupied = vec![false; g.vertex_count()];

    while let Some(i) = queue.pop_front() {
        let state = states[i as usize].clone();
        for v in state.vertices() {
            occupied[v] = true;
        }
        let mut found = None;
        for (slide, next) in successors(g, &state, &occupied) {
            if index.contains_key(&next) {
                continue;
            }
            if states.len() >= budget {
                return Decision::BudgetExceeded;
            }
            let j = states.len() as u32;
            let done = next == goal;
            index.insert(next.clone(), j);
            states.push(next);
            parent.push((i, slide));
            if done {
                found = Some(j);
                break;
            }
            queue.push_back(j);
        }
        for v in state.vertices() {
            occupied[v] = false;
        }
        if let Some(mut j) = found {
            let mut slides = Vec::new();
            while j != 0 {
                let (p, s) = parent[j as usize];
                slides.push(s);
                j = p;
            }
            slides.reverse();
            return Decision::Yes(Some(ReconfigurationSequence(slides)));
        }
    }
    Decision::No
}

/// Kernelizes, then runs [`solve_direct`] on the kernel. `Yes` carries no
/// witness since kernel moves are not mapped back through gadgets.
pub fn solve_via_kernel(instance: &Instance, budget: usize) -> Result<Decision, KernelError> {
    let (kernel, _) = kernelize(instance)?;
    Ok(match solve_direct(&kernel, budget) {
        Decision::Yes(_) => Decision::Yes(None),
        other => other,
    })
}

/// Replays `seq` from `I_s`: every step slides one token along an edge onto
/// a vertex that keeps the set independent, ending at `I_t`.
pub fn verify_sequence(instance: &Instance, seq: &ReconfigurationSequence) -> bool {
    let g = &instance.graph;
    let n = g.vertex_count();
    let mut occupied = instance.source.mask(n);
    for s in seq.slides() {
        if s.from >= n
            || s.to >= n
            || !occupied[s.from]
            || occupied[s.to]
            || !g.has_edge(s.from, s.to)
        {
            return false;
        }
        if g.neighbors(s.to)
            .iter()
            .any(|&w| w != s.from && occupied[w])
        {
            return false;
        }
        occupied[s.from] = false;
        occupied[s.to] = true;
    }
    occupied == instance.target.mask(n)
}

/// `YES <count>` plus one `u -> v` line per slide (1-based), or `NO`.
pub fn format_witness(seq: &ReconfigurationSequence) -> String {
    let mut out = format!("YES {}\n", seq.len());
    for s in seq.slides() {
        writeln!(out, "{} -> {}", s.from + 1, s.to + 1).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
    #[error("header announces {expected} slides, found {found}")]
    CountMismatch { expected: usize, found: usize },
}

/// Parses the witness text format against a graph on `n` vertices. The
/// `YES <count>` header is optional and blank lines are skipped.
pub fn parse_witness(text: &str, n: usize) -> Result<ReconfigurationSequence, WitnessError> {
    let mut slides = Vec::new();
    let mut expected = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match fields.as_slice() {
            [] => continue,
            ["YES", count] if expected.is_none() && slides.is_empty() => {
                expected = Some(
                    count
                        .parse::<usize>()
                        .map_err(|_| WitnessError::Malformed {
                            line,
                            reason: format!("bad slide count `{count}`"),
                        })?,
                );
            }
            [from, "->", to] => {
                let vertex = |s: &str| -> Result<Vertex, WitnessError> {
                    let v: usize = s.parse().map_err(|_| WitnessError::Malformed {
                        line,
                        reason: format!("`{s}` is not a vertex id"),
                    })?;
                    if v == 0 || v > n {
                        return Err(WitnessError::VertexOutOfRange { line, v, n });
                    }
                    Ok(v - 1)
                };
                slides.push(Slide {
                    from: vertex(from)?,
                    to: vertex(to)?,
                });
            }
            _ => {
                return Err(WitnessError::Malformed {
                    line,
                    reason: format!("expected `u -> v`, got `{}`", raw.trim()),
                })
            }
        }
    }
    if let Some(expected) = expected {
        if expected != slides.len() {
            return Err(WitnessError::CountMismatch {
                expected,
                found: slides.len(),
            });
        }
    }
    Ok(ReconfigurationSequence(slides))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn inst(g: Graph, s: &[Vertex], t: &[Vertex]) -> Instance {
        Instance::new(g, set(s), set(t)).unwrap()
    }

    #[test]
    fn c5_two_tokens() {
        let i = inst(cycle(5), &[0, 2], &[1, 3]);
        let Decision::Yes(Some(seq)) = solve_direct(&i, DEFAULT_BUDGET) else {
            panic!()
        };
        assert_eq!(seq.len(), 2);
        assert!(verify_sequence(&i, &seq));
    }

    #[test]
    fn star_leaves_are_stuck() {
        let i = inst(star(3), &[1, 2], &[1, 3]);
        assert_eq!(solve_direct(&i, DEFAULT_BUDGET), Decision::No);
    }

    #[test]
    fn equal_endpoints() {
        let i = inst(cycle(5), &[0, 2], &[0, 2]);
        assert_eq!(
            solve_direct(&i, DEFAULT_BUDGET),
            Decision::Yes(Some(ReconfigurationSequence::default()))
        );
        assert!(verify_sequence(&i, &ReconfigurationSequence::default()));
    }

    #[test]
    fn budget_is_respected() {
        let i = inst(path(12), &[0], &[11]);
        assert_eq!(solve_direct(&i, 5), Decision::BudgetExceeded);
        assert!(matches!(solve_direct(&i, 12), Decision::Yes(Some(_))));
    }

    #[test]
    fn rejects_bad_sequences() {
        // C5 with tokens {0,2}; second slide 0->4 lands next to the token on 3
        let i = inst(cycle(5), &[0, 2], &[1, 3]);
        let seq = ReconfigurationSequence(vec![Slide { from: 2, to: 3 }, Slide { from: 0, to: 4 }]);
        assert!(!verify_sequence(&i, &seq));
        let not_edge = ReconfigurationSequence(vec![Slide { from: 0, to: 3 }]);
        assert!(!verify_sequence(&i, &not_edge));
        let short = ReconfigurationSequence(vec![Slide { from: 2, to: 3 }]);
        assert!(!verify_sequence(&i, &short));
    }

    #[test]
    fn witness_round_trip() {
        let seq = ReconfigurationSequence(vec![Slide { from: 0, to: 1 }, Slide { from: 2, to: 3 }]);
        let text = format_witness(&seq);
        assert_eq!(text, "YES 2\n1 -> 2\n3 -> 4\n");
        assert_eq!(parse_witness(&text, 4).unwrap(), seq);
        assert!(matches!(
            parse_witness(&text, 3),
            Err(WitnessError::VertexOutOfRange { v: 4, .. })
        ));
        assert!(matches!(
            parse_witness("YES 3\n1 -> 2\n", 4),
            Err(WitnessError::CountMismatch { .. })
        ));
        assert!(matches!(
            parse_witness("1 2\n", 4),
            Err(WitnessError::Malformed { line: 1, .. })
        ));
    }
}
