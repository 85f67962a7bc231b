//! Isomorphism of attached components that keeps the shared boundary fixed.
//!
//! Two components `C_a`, `C_b` with the same boundary `B` are equivalent when
//! `G[C_a ∪ B]` and `G[C_b ∪ B]` are isomorphic by a map that is the identity
//! on `B`. Interior vertices are matched by backtracking; boundary pinning
//! makes the exact set of boundary neighbors part of every vertex signature.

use std::collections::VecDeque;

use crate::graph::{Graph, Vertex, VertexSet};

/// A component together with its boundary and the edges of `G[C ∪ B]`.
///
/// Interior vertices are addressed by local index `0..interior.len()` in
/// the order of `interior`; boundary vertices keep their graph ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttachedComponent {
    pub interior: VertexSet,
    pub boundary: VertexSet,
    interior_adj: Vec<Vec<usize>>,
    links: Vec<VertexSet>,
    boundary_edges: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Signature {
    depth: usize,
    degree: usize,
}

impl AttachedComponent {
    /// Attaches `interior` to its open neighborhood in `g`.
    pub fn from_graph(g: &Graph, interior: &VertexSet) -> Self {
        let boundary = g.set_neighborhood(interior);
        let local = |v: Vertex| interior.as_slice().binary_search(&v).ok();
        let mut interior_adj = Vec::with_capacity(interior.len());
        let mut links = Vec::with_capacity(interior.len());
        for v in interior.iter() {
            let mut inner = Vec::new();
            let mut outer = Vec::new();
            for &w in g.neighbors(v) {
                match local(w) {
                    Some(i) => inner.push(i),
                    None => outer.push(w),
                }
            }
            interior_adj.push(inner);
            links.push(VertexSet::from_sorted(outer));
        }
        let boundary_edges = boundary
            .iter()
            .flat_map(|u| {
                g.neighbors(u)
                    .iter()
                    .filter(move |&&w| w > u)
                    .map(move |&w| (u, w))
            })
            .filter(|&(_, w)| boundary.contains(w))
            .collect();
        AttachedComponent {
            interior: interior.clone(),
            boundary,
            interior_adj,
            links,
            boundary_edges,
        }
        .normalized()
    }

    /// Builds a component from local interior edges and `(local, boundary
    /// vertex)` links. `interior` only labels the local vertices.
    pub fn from_parts(
        interior: VertexSet,
        interior_edges: &[(usize, usize)],
        links: &[(usize, Vertex)],
        boundary_edges: &[(Vertex, Vertex)],
    ) -> Self {
        let n = interior.len();
        let mut interior_adj = vec![Vec::new(); n];
        for &(a, b) in interior_edges {
            interior_adj[a].push(b);
            interior_adj[b].push(a);
        }
        let mut per_vertex = vec![Vec::new(); n];
        for &(a, v) in links {
            per_vertex[a].push(v);
        }
        let links: Vec<VertexSet> = per_vertex.into_iter().map(VertexSet::from_iter).collect();
        let boundary: VertexSet = links.iter().flat_map(|l| l.iter()).collect();
        let boundary_edges = boundary_edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        AttachedComponent {
            interior,
            boundary,
            interior_adj,
            links,
            boundary_edges,
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        for list in &mut self.interior_adj {
            list.sort_unstable();
            list.dedup();
        }
        self.boundary_edges.sort_unstable();
        self.boundary_edges.dedup();
        self
    }

    pub fn interior_len(&self) -> usize {
        self.interior.len()
    }

    pub fn edge_count(&self) -> usize {
        let inner: usize = self.interior_adj.iter().map(Vec::len).sum::<usize>() / 2;
        let attach: usize = self.links.iter().map(VertexSet::len).sum();
        inner + attach + self.boundary_edges.len()
    }

    fn has_interior_edge(&self, a: usize, b: usize) -> bool {
        self.interior_adj[a].binary_search(&b).is_ok()
    }

    /// Distance from each interior vertex to the boundary inside `G[C ∪ B]`.
    fn depths(&self) -> Vec<usize> {
        let n = self.interior_len();
        let mut depth = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for (i, link) in self.links.iter().enumerate() {
            if !link.is_empty() {
                depth[i] = 1;
                queue.push_back(i);
            }
        }
        while let Some(a) = queue.pop_front() {
            for &b in &self.interior_adj[a] {
                if depth[b] == usize::MAX {
                    depth[b] = depth[a] + 1;
                    queue.push_back(b);
                }
            }
        }
        depth
    }

    fn signatures(&self) -> Vec<Signature> {
        self.depths()
            .into_iter()
            .enumerate()
            .map(|(i, depth)| Signature {
                depth,
                degree: self.interior_adj[i].len() + self.links[i].len(),
            })
            .collect()
    }
}

/// True iff there is an isomorphism `G[C_a ∪ B] → G[C_b ∪ B]` that is the
/// identity on the common boundary `B`.
pub fn boundary_fixed_isomorphic(a: &AttachedComponent, b: &AttachedComponent) -> bool {
    boundary_fixed_isomorphism(a, b).is_some()
}

/// The interior bijection of a boundary-fixing isomorphism, as local index
/// of `a` → local index of `b`.
pub fn boundary_fixed_isomorphism(
    a: &AttachedComponent,
    b: &AttachedComponent,
) -> Option<Vec<usize>> {
    if a.boundary != b.boundary
        || a.interior_len() != b.interior_len()
        || a.boundary_edges != b.boundary_edges
        || a.edge_count() != b.edge_count()
    {
        return None;
    }
    let sig_a = a.signatures();
    let sig_b = b.signatures();
    fn key<'c>(sig: &[Signature], c: &'c AttachedComponent) -> Vec<(Signature, &'c VertexSet)> {
        let mut keys: Vec<_> = sig.iter().copied().zip(c.links.iter()).collect();
        keys.sort_unstable();
        keys
    }
    if key(&sig_a, a) != key(&sig_b, b) {
        return None;
    }

    let mut order: Vec<usize> = (0..a.interior_len()).collect();
    order.sort_by_key(|&i| (sig_a[i].depth, sig_a[i].degree, a.interior.as_slice()[i]));

    let mut search = Search {
        a,
        b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        order: &order,
        forward: vec![None; a.interior_len()],
        used: vec![false; b.interior_len()],
    };
    if search.extend(0) {
        Some(search.forward.into_iter().map(Option::unwrap).collect())
    } else {
        None
    }
}

struct Search<'a> {
    a: &'a AttachedComponent,
    b: &'a AttachedComponent,
    sig_a: &'a [Signature],
    sig_b: &'a [Signature],
    order: &'a [usize],
    forward: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, pos: usize) -> bool {
        let Some(&x) = self.order.get(pos) else {
            return true;
        };
        let anchor = self.a.interior_adj[x].iter().find_map(|&y| self.forward[y]);
        let candidates: Vec<usize> = match anchor {
            Some(img) => self.b.interior_adj[img].clone(),
            None => (0..self.b.interior_len()).collect(),
        };
        for c in candidates {
            if self.used[c] || !self.compatible(x, c) {
                continue;
            }
            self.forward[x] = Some(c);
            self.used[c] = true;
            if self.extend(pos + 1) {
                return true;
            }
            self.forward[x] = None;
            self.used[c] = false;
        }
        false
    }

    fn compatible(&self, x: usize, c: usize) -> bool {
        if self.sig_a[x] != self.sig_b[c] || self.a.links[x] != self.b.links[c] {
            return false;
        }
        let mut mapped = 0;
        for &y in &self.a.interior_adj[x] {
            if let Some(img) = self.forward[y] {
                if !self.b.has_interior_edge(c, img) {
                    return false;
                }
                mapped += 1;
            }
        }
        let mapped_b = self.b.interior_adj[c]
            .iter()
            .filter(|&&d| self.used[d])
            .count();
        mapped == mapped_b
    }
}
