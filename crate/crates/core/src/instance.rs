//! Token Sliding instances, reconfiguration sequences and the `p ts`
//! text format.
//!
//! ```text
//! c <comment>          zero or more, anywhere
//! p ts <n> <m> <k>     first non-comment line
//! e <u> <v>            exactly m lines, 1 <= u, v <= n, u != v
//! s <v>                exactly k lines (source tokens)
//! t <v>                exactly k lines (target tokens)
//! ```
//!
//! Ids are 1-based on disk and 0-based in memory. Blank lines are ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{girth, is_independent, Graph, Vertex, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("token sets have sizes {source_len} and {target_len}, expected k = {k}")]
    TokenCountMismatch {
        k: usize,
        source_len: usize,
        target_len: usize,
    },
    #[error("token count must be at least 1")]
    ZeroTokens,
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("{which} set is not independent")]
    NotIndependent { which: Side },
}

/// Which token configuration a change applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Source,
    Target,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub graph: Graph,
    pub k: usize,
    pub source: VertexSet,
    pub target: VertexSet,
}

impl Instance {
    /// Builds a validated instance; `k` is the common size of both sets.
    pub fn new(graph: Graph, source: VertexSet, target: VertexSet) -> Result<Self, InstanceError> {
        let k = source.len();
        if k == 0 && target.is_empty() {
            return Err(InstanceError::ZeroTokens);
        }
        if target.len() != k {
            return Err(InstanceError::TokenCountMismatch {
                k,
                source_len: source.len(),
                target_len: target.len(),
            });
        }
        let n = graph.vertex_count();
        for (set, which) in [(&source, Side::Source), (&target, Side::Target)] {
            if let Some(v) = set.iter().find(|&v| v >= n) {
                return Err(InstanceError::VertexOutOfRange { vertex: v, n });
            }
            if !is_independent(&graph, set) {
                return Err(InstanceError::NotIndependent { which });
            }
        }
        Ok(Instance {
            graph,
            k,
            source,
            target,
        })
    }

    pub fn tokens(&self, side: Side) -> &VertexSet {
        match side {
            Side::Source => &self.source,
            Side::Target => &self.target,
        }
    }

    pub fn tokens_mut(&mut self, side: Side) -> &mut VertexSet {
        match side {
            Side::Source => &mut self.source,
            Side::Target => &mut self.target,
        }
    }

    /// `I_s ∪ I_t`.
    pub fn terminals(&self) -> VertexSet {
        self.source.union(&self.target)
    }
}

/// True iff the graph has girth at least five (forests included).
pub fn validate_girth(instance: &Instance) -> bool {
    girth(&instance.graph).at_least(5)
}

/// One token moving along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slide {
    pub from: Vertex,
    pub to: Vertex,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReconfigurationSequence(pub Vec<Slide>);

impl ReconfigurationSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slides(&self) -> &[Slide] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: malformed line: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: self-loop on vertex {v}")]
    SelfLoop { line: usize, v: Vertex },
    #[error("line {line}: {which} has {found} distinct tokens, header says k = {expected}")]
    TokenCountMismatch {
        line: usize,
        which: Side,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {which} tokens {u} and {v} are adjacent")]
    NotIndependent {
        line: usize,
        which: Side,
        u: Vertex,
        v: Vertex,
    },
    #[error("line {line}: vertex {v} out of range 1..={n}")]
    VertexOutOfRange { line: usize, v: usize, n: usize },
}

struct Header {
    line: usize,
    n: usize,
    m: usize,
    k: usize,
}

fn parse_header(line: usize, fields: &[&str]) -> Result<Header, ParseError> {
    let bad = |reason: &str| ParseError::MalformedHeader {
        line,
        reason: reason.to_string(),
    };
    if fields.len() != 5 || fields[0] != "p" || fields[1] != "ts" {
        return Err(bad("expected `p ts <n> <m> <k>`"));
    }
    let num = |s: &str| {
        s.parse::<usize>()
            .map_err(|_| bad(&format!("`{s}` is not a count")))
    };
    let header = Header {
        line,
        n: num(fields[2])?,
        m: num(fields[3])?,
        k: num(fields[4])?,
    };
    if header.k == 0 {
        return Err(bad("k must be at least 1"));
    }
    Ok(header)
}

/// Parses and validates an instance file. Every error names a 1-based line.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<Header> = None;
    let mut edges: Vec<(usize, Vertex, Vertex)> = Vec::new();
    let mut tokens: [Vec<(usize, Vertex)>; 2] = [Vec::new(), Vec::new()];

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = fields.first() else { continue };
        if tag == "c" {
            continue;
        }
        let Some(h) = &header else {
            header = Some(parse_header(line, &fields)?);
            continue;
        };
        let vertex = |s: &str| -> Result<Vertex, ParseError> {
            let v: usize = s.parse().map_err(|_| ParseError::MalformedLine {
                line,
                reason: format!("`{s}` is not a vertex id"),
            })?;
            if v == 0 || v > h.n {
                return Err(ParseError::VertexOutOfRange { line, v, n: h.n });
            }
            Ok(v - 1)
        };
        let arity = |want: usize| {
            if fields.len() == want {
                Ok(())
            } else {
                Err(ParseError::MalformedLine {
                    line,
                    reason: format!("`{tag}` takes {} argument(s)", want - 1),
                })
            }
        };
        match tag {
            "e" => {
                arity(3)?;
                if edges.len() == h.m {
                    return Err(ParseError::MalformedHeader {
                        line,
                        reason: format!("more than m = {} edge lines", h.m),
                    });
                }
                let (u, v) = (vertex(fields[1])?, vertex(fields[2])?);
                if u == v {
                    return Err(ParseError::SelfLoop { line, v: u + 1 });
                }
                edges.push((line, u, v));
            }
            "s" | "t" => {
                arity(2)?;
                let (slot, which) = if tag == "s" {
                    (0, Side::Source)
                } else {
                    (1, Side::Target)
                };
                let v = vertex(fields[1])?;
                if tokens[slot].len() == h.k {
                    return Err(ParseError::TokenCountMismatch {
                        line,
                        which,
                        expected: h.k,
                        found: h.k + 1,
                    });
                }
                tokens[slot].push((line, v));
            }
            "p" => {
                return Err(ParseError::MalformedHeader {
                    line,
                    reason: "second header line".to_string(),
                })
            }
            _ => {
                return Err(ParseError::MalformedLine {
                    line,
                    reason: format!("unknown line type `{tag}`"),
                })
            }
        }
    }

    let Some(h) = header else {
        return Err(ParseError::MalformedHeader {
            line: 1,
            reason: "missing `p ts` header".into(),
        });
    };
    if edges.len() != h.m {
        return Err(ParseError::MalformedHeader {
            line: h.line,
            reason: format!(
                "header says m = {} but found {} edge lines",
                h.m,
                edges.len()
            ),
        });
    }

    let mut seen = std::collections::HashSet::new();
    for &(line, u, v) in &edges {
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(ParseError::DuplicateEdge {
                line,
                u: u.min(v) + 1,
                v: u.max(v) + 1,
            });
        }
    }
    let graph = Graph::from_edges(h.n, edges.iter().map(|&(_, u, v)| (u, v)))
        .expect("edges were validated above");

    let mut sets = Vec::with_capacity(2);
    for (slot, which) in [(0, Side::Source), (1, Side::Target)] {
        let list = &tokens[slot];
        let set: VertexSet = list.iter().map(|&(_, v)| v).collect();
        if set.len() != h.k {
            // a repeated token line or too few lines
            let line = list
                .iter()
                .enumerate()
                .find(|(i, (_, v))| list[..*i].iter().any(|(_, w)| w == v))
                .map_or(h.line, |(_, (l, _))| *l);
            return Err(ParseError::TokenCountMismatch {
                line,
                which,
                expected: h.k,
                found: set.len(),
            });
        }
        for (i, &(line, u)) in list.iter().enumerate() {
            if let Some(&(_, v)) = list[..i].iter().find(|(_, v)| graph.has_edge(u, *v)) {
                return Err(ParseError::NotIndependent {
                    line,
                    which,
                    u: v + 1,
                    v: u + 1,
                });
            }
        }
        sets.push(set);
    }
    let target = sets.pop().unwrap();
    let source = sets.pop().unwrap();
    Ok(Instance {
        graph,
        k: h.k,
        source,
        target,
    })
}

/// Canonical text form: edges sorted with the smaller endpoint first,
/// token lines ascending.
pub fn serialize_instance(instance: &Instance) -> String {
    let g = &instance.graph;
    let mut out = String::new();
    writeln!(
        out,
        "p ts {} {} {}",
        g.vertex_count(),
        g.edge_count(),
        instance.k
    )
    .unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    for v in instance.source.iter() {
        writeln!(out, "s {}", v + 1).unwrap();
    }
    for v in instance.target.iter() {
        writeln!(out, "t {}", v + 1).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn parses_path_instance() {
        let i = parse_instance("p ts 3 2 1\ne 1 2\ne 2 3\ns 1\nt 3\n").unwrap();
        assert_eq!(i.graph, path(3));
        assert_eq!(i.k, 1);
        assert_eq!(i.source, set(&[0]));
        assert_eq!(i.target, set(&[2]));
    }

    #[test]
    fn comments_and_blank_lines_anywhere() {
        let i =
            parse_instance("c hi\n\np ts 3 2 1\nc mid\ns 1\ne 2 3\n\ne 1 2\nt 3\nc end\n").unwrap();
        assert_eq!(i.graph, path(3));
    }

    #[test]
    fn error_paths_name_lines() {
        type Check = fn(&ParseError) -> bool;
        let cases: &[(&str, Check)] = &[
            ("p ts 3 2 1\ne 1 2\ne 2 3\ne 1 3\ns 1\nt 3", |e| {
                matches!(e, ParseError::MalformedHeader { line: 4, .. })
            }),
            ("p ts 3 2 1\ne 1 2\ns 1\nt 3", |e| {
                matches!(e, ParseError::MalformedHeader { line: 1, .. })
            }),
            ("e 1 2\np ts 3 1 1", |e| {
                matches!(e, ParseError::MalformedHeader { line: 1, .. })
            }),
            ("p ts 3 x 1", |e| {
                matches!(e, ParseError::MalformedHeader { line: 1, .. })
            }),
            ("p ts 3 0 0", |e| {
                matches!(e, ParseError::MalformedHeader { line: 1, .. })
            }),
            ("p ts 3 2 1\ne 1 2\ne 2 1\ns 1\nt 3", |e| {
                matches!(
                    e,
                    ParseError::DuplicateEdge {
                        line: 3,
                        u: 1,
                        v: 2
                    }
                )
            }),
            ("p ts 3 1 1\ne 2 2\ns 1\nt 3", |e| {
                matches!(e, ParseError::SelfLoop { line: 2, v: 2 })
            }),
            ("p ts 3 0 1\ns 1\ns 2\nt 3", |e| {
                matches!(
                    e,
                    ParseError::TokenCountMismatch {
                        line: 3,
                        which: Side::Source,
                        ..
                    }
                )
            }),
            ("p ts 3 0 2\ns 1\ns 2\nt 3", |e| {
                matches!(
                    e,
                    ParseError::TokenCountMismatch {
                        line: 1,
                        which: Side::Target,
                        found: 1,
                        ..
                    }
                )
            }),
            ("p ts 3 0 2\ns 1\ns 1\nt 2\nt 3", |e| {
                matches!(
                    e,
                    ParseError::TokenCountMismatch {
                        line: 3,
                        which: Side::Source,
                        found: 1,
                        ..
                    }
                )
            }),
            ("p ts 3 1 2\ne 1 2\ns 1\ns 2\nt 1\nt 3", |e| {
                matches!(
                    e,
                    ParseError::NotIndependent {
                        line: 4,
                        which: Side::Source,
                        ..
                    }
                )
            }),
            ("p ts 3 1 1\ne 1 4\ns 1\nt 3", |e| {
                matches!(
                    e,
                    ParseError::VertexOutOfRange {
                        line: 2,
                        v: 4,
                        n: 3
                    }
                )
            }),
            ("p ts 3 0 1\ns 0\nt 3", |e| {
                matches!(e, ParseError::VertexOutOfRange { line: 2, v: 0, .. })
            }),
            ("p ts 3 0 1\nx 1\ns 1\nt 3", |e| {
                matches!(e, ParseError::MalformedLine { line: 2, .. })
            }),
            ("", |e| matches!(e, ParseError::MalformedHeader { .. })),
        ];
        for (text, check) in cases {
            let err = parse_instance(text).unwrap_err();
            assert!(check(&err), "{text:?} gave {err:?}");
        }
    }

    #[test]
    fn serializes_edgeless_instance() {
        let i = Instance::new(Graph::empty(2), set(&[0]), set(&[1])).unwrap();
        assert_eq!(serialize_instance(&i), "p ts 2 0 1\ns 1\nt 2\n");
    }

    #[test]
    fn serialization_is_canonical() {
        let text = "p ts 5 5 2\ne 2 3\ne 1 2\ne 4 5\ne 3 4\ne 5 1\ns 3\ns 1\nt 4\nt 2\n";
        let once = serialize_instance(&parse_instance(text).unwrap());
        let twice = serialize_instance(&parse_instance(&once).unwrap());
        assert_eq!(once, twice);
        assert!(once.starts_with("p ts 5 5 2\ne 1 2\ne 1 5\n"));
    }

    #[test]
    fn girth_validation() {
        let pet = Instance::new(petersen(), set(&[0]), set(&[1])).unwrap();
        assert!(validate_girth(&pet));
        let c4 = Instance::new(cycle(4), set(&[0]), set(&[1])).unwrap();
        assert!(!validate_girth(&c4));
        let tree = Instance::new(star(3), set(&[1]), set(&[2])).unwrap();
        assert!(validate_girth(&tree));
    }

    #[test]
    fn constructor_rejects_bad_sets() {
        let g = path(3);
        assert!(matches!(
            Instance::new(g.clone(), set(&[0, 1]), set(&[0, 2])),
            Err(InstanceError::NotIndependent {
                which: Side::Source
            })
        ));
        assert!(matches!(
            Instance::new(g.clone(), set(&[0]), set(&[0, 2])),
            Err(InstanceError::TokenCountMismatch { .. })
        ));
        assert_eq!(
            Instance::new(g, VertexSet::new(), VertexSet::new()),
            Err(InstanceError::ZeroTokens)
        );
    }
}
