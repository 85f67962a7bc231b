//! Undirected simple graphs over dense vertex ids and the traversal
//! primitives the rest of the crate is built on.

use std::collections::VecDeque;
use std::fmt;

use thiserror::Error;

pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("vertex set does not induce a connected subgraph")]
    Disconnected,
}

/// Sorted, duplicate-free set of vertex ids.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(Vec<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(Vec::new())
    }

    /// Wraps a vector that is already strictly increasing.
    pub fn from_sorted(v: Vec<Vertex>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        VertexSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Vertex> {
        self.0
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| !other.contains(v)).collect()
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        self.iter().filter(|&v| other.contains(v)).collect()
    }

    /// Membership mask of length `n`.
    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for v in self.iter() {
            mask[v] = true;
        }
        mask
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        let mut v: Vec<Vertex> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// Girth of a graph; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= bound,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "inf"),
        }
    }
}

/// Relabeling produced by deleting vertices: `forward[old]` is the new id,
/// or `None` for deleted vertices. New ids preserve the old order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdMap {
    forward: Vec<Option<Vertex>>,
    new_len: usize,
}

impl IdMap {
    pub fn identity(n: usize) -> Self {
        IdMap {
            forward: (0..n).map(Some).collect(),
            new_len: n,
        }
    }

    /// Map that keeps exactly the vertices where `keep` is true.
    pub fn keeping(keep: &[bool]) -> Self {
        let mut next = 0;
        let forward = keep
            .iter()
            .map(|&k| {
                if k {
                    next += 1;
                    Some(next - 1)
                } else {
                    None
                }
            })
            .collect();
        IdMap {
            forward,
            new_len: next,
        }
    }

    pub fn get(&self, old: Vertex) -> Option<Vertex> {
        self.forward.get(old).copied().flatten()
    }

    pub fn old_len(&self) -> usize {
        self.forward.len()
    }

    pub fn new_len(&self) -> usize {
        self.new_len
    }

    /// Maps a set whose members all survive.
    pub fn map_set(&self, s: &VertexSet) -> VertexSet {
        s.iter()
            .map(|v| self.get(v).expect("vertex was deleted"))
            .collect()
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &IdMap) -> IdMap {
        IdMap {
            forward: self
                .forward
                .iter()
                .map(|v| v.and_then(|v| next.get(v)))
                .collect(),
            new_len: next.new_len,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph { adj })
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.adj.len()
    }

    /// Edges with the smaller endpoint first, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Open neighborhood of a set: vertices outside `s` adjacent to some member.
    pub fn set_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let inside = s.mask(self.vertex_count());
        s.iter()
            .flat_map(|v| self.adj[v].iter().copied())
            .filter(|&w| !inside[w])
            .collect()
    }

    /// Deletes `removed` and compacts the remaining ids in order.
    pub fn remove_vertices(&self, removed: &VertexSet) -> (Graph, IdMap) {
        let keep: Vec<bool> = {
            let mut keep = vec![true; self.vertex_count()];
            for v in removed.iter() {
                keep[v] = false;
            }
            keep
        };
        let map = IdMap::keeping(&keep);
        let adj = self
            .adj
            .iter()
            .enumerate()
            .filter(|&(v, _)| keep[v])
            .map(|(_, list)| list.iter().filter_map(|&w| map.get(w)).collect())
            .collect();
        (Graph { adj }, map)
    }

    /// Appends `extra` isolated vertices and the given edges between any ids.
    pub fn extended<I>(&self, extra: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let n = self.vertex_count() + extra;
        Graph::from_edges(n, self.edges().chain(edges))
    }

    pub fn relabeled(&self, perm: &[Vertex]) -> Graph {
        Graph::from_edges(
            self.vertex_count(),
            self.edges().map(|(u, v)| (perm[u], perm[v])),
        )
        .expect("permutation of a simple graph is simple")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.vertex_count())?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Exact girth. Vertices outside the 2-core lie on no cycle, so they are
/// peeled first; then a depth-bounded BFS from every remaining root.
pub fn girth(g: &Graph) -> Girth {
    let n = g.vertex_count();
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut alive = vec![true; n];
    let mut stack: Vec<Vertex> = g.vertices().filter(|&v| deg[v] <= 1).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    stack.push(w);
                }
            }
        }
    }

    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut touched = Vec::new();
    let mut queue = VecDeque::new();
    for root in g.vertices().filter(|&v| alive[v]) {
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            // any cycle closed from here on has length at least 2*dist[u]+1
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for &w in g.neighbors(u) {
                if !alive[w] || w == parent[u] {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    touched.push(w);
                    queue.push_back(w);
                } else {
                    best = best.min(dist[u] + dist[w] + 1);
                    if best == 3 {
                        break 'bfs;
                    }
                }
            }
        }
        if best == 3 {
            break;
        }
    }
    if best == usize::MAX {
        Girth::Infinite
    } else {
        Girth::Finite(best)
    }
}

/// BFS distances from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Vec<Option<usize>> {
    bfs_within(g, source, None).0
}

/// BFS restricted to vertices where `mask` is true (all vertices when
/// `mask` is `None`). Returns distances and BFS parents.
pub(crate) fn bfs_within(
    g: &Graph,
    source: Vertex,
    mask: Option<&[bool]>,
) -> (Vec<Option<usize>>, Vec<Option<Vertex>>) {
    let n = g.vertex_count();
    let mut dist = vec![None; n];
    let mut parent = vec![None; n];
    let allowed = |v: Vertex| mask.is_none_or(|m| m[v]);
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.neighbors(u) {
            if dist[w].is_none() && allowed(w) {
                dist[w] = Some(du + 1);
                parent[w] = Some(u);
                queue.push_back(w);
            }
        }
    }
    (dist, parent)
}

/// Walks BFS parent links back from `to`; the result starts at the BFS source.
pub(crate) fn path_to(parent: &[Option<Vertex>], to: Vertex) -> Vec<Vertex> {
    let mut path = vec![to];
    let mut cur = to;
    while let Some(p) = parent[cur] {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

/// Components ordered by their smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    components_within(g, &vec![true; g.vertex_count()])
}

/// Components of the subgraph induced by `mask`.
pub fn components_within(g: &Graph, mask: &[bool]) -> Vec<VertexSet> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for start in 0..n {
        if seen[start] || !mask[start] {
            continue;
        }
        seen[start] = true;
        stack.push(start);
        let mut members = Vec::new();
        while let Some(u) = stack.pop() {
            members.push(u);
            for &w in g.neighbors(u) {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        out.push(members.into_iter().collect());
    }
    out
}

fn require_connected(g: &Graph, c: &VertexSet) -> Result<Vec<bool>, GraphError> {
    let n = g.vertex_count();
    if let Some(v) = c.iter().find(|&v| v >= n) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n });
    }
    let mask = c.mask(n);
    let Some(first) = c.first() else {
        return Err(GraphError::Disconnected);
    };
    let (dist, _) = bfs_within(g, first, Some(&mask));
    if c.iter().any(|v| dist[v].is_none()) {
        return Err(GraphError::Disconnected);
    }
    Ok(mask)
}

/// A longest shortest path inside `G[c]`, found by BFS from every member.
pub fn component_diameter_path(g: &Graph, c: &VertexSet) -> Result<Vec<Vertex>, GraphError> {
    let mask = require_connected(g, c)?;
    let mut best: Option<(usize, Vertex, Vertex)> = None;
    for s in c.iter() {
        let (dist, _) = bfs_within(g, s, Some(&mask));
        for t in c.iter() {
            let d = dist[t].unwrap();
            if best.is_none_or(|(bd, _, _)| d > bd) {
                best = Some((d, s, t));
            }
        }
    }
    let (_, s, t) = best.expect("component is non-empty");
    let (_, parent) = bfs_within(g, s, Some(&mask));
    Ok(path_to(&parent, t))
}

/// Exact diameter of `G[c]`.
pub fn component_diameter(g: &Graph, c: &VertexSet) -> Result<usize, GraphError> {
    Ok(component_diameter_path(g, c)?.len() - 1)
}

/// Exact test `diam(G[c]) > bound`. A single eccentricity `e` already
/// decides it when `e > bound` or `2e <= bound`; otherwise fall back to
/// all-sources BFS with an early exit.
pub fn diameter_exceeds(g: &Graph, c: &VertexSet, bound: usize) -> Result<bool, GraphError> {
    let mask = require_connected(g, c)?;
    let ecc = |s: Vertex| -> usize {
        let (dist, _) = bfs_within(g, s, Some(&mask));
        c.iter().map(|v| dist[v].unwrap()).max().unwrap()
    };
    let e = ecc(c.first().unwrap());
    if e > bound {
        return Ok(true);
    }
    if e.saturating_mul(2) <= bound {
        return Ok(false);
    }
    Ok(c.iter().skip(1).any(|s| ecc(s) > bound))
}

pub fn is_independent(g: &Graph, s: &VertexSet) -> bool {
    s.iter()
        .all(|v| g.neighbors(v).iter().all(|&w| !s.contains(w)))
}

/// Subgraph induced by `s`, relabeled in order; returns the old→new map.
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> (Graph, IdMap) {
    let removed: VertexSet = g.vertices().filter(|&v| !s.contains(v)).collect();
    g.remove_vertices(&removed)
}
