//! Reduction of a girth ≥ 5 instance to an answer-equivalent instance whose
//! size depends only on `k`.
//!
//! The vertex set is split into `L1 = I_s ∪ I_t`, `L2 = N(L1)` and the rest
//! `L3`. Components of `G[L3]` are classified by diameter and degree; safe
//! components are swapped for a fixed gadget, high-degree tokens are slid
//! to low-degree vertices, and equivalent components are pruned. Every
//! change is logged in a [`KernelTrace`].

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{
    bfs_within, components_within, diameter_exceeds, girth, is_independent, path_to, Graph,
    GraphError, IdMap, Vertex, VertexSet,
};
use crate::instance::{Instance, Side, Slide};
use crate::iso::{boundary_fixed_isomorphic, AttachedComponent};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("component is not connected")]
    Disconnected,
    #[error("graph has girth {0}; kernelization needs girth at least 5")]
    GirthTooSmall(crate::graph::Girth),
    #[error("no induced subdivided {k}-star in a degree-safe component (classification bug)")]
    StarNotFound { k: usize },
    #[error("component is {0}, only safe components can be replaced")]
    NotSafe(ComponentKind),
    #[error("component intersects the token sets")]
    ComponentHoldsTokens,
    #[error("vertex {vertex} is not a {side} token of degree above {bound}")]
    NotApplicable {
        side: Side,
        vertex: Vertex,
        bound: usize,
    },
    #[error("slide path for vertex {0} broke independence (internal error)")]
    IndependenceViolated(Vertex),
    #[error("no low-degree vertex reachable from token {0} (internal error)")]
    NoEscapeVertex(Vertex),
    #[error("kernelization did not reach a fixed point within {0} steps")]
    IterationCapExceeded(usize),
}

impl From<GraphError> for KernelError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Disconnected => KernelError::Disconnected,
            other => panic!("unexpected graph error: {other}"),
        }
    }
}

/// `k^e` saturating at `usize::MAX`.
fn kpow(k: usize, e: u32) -> usize {
    k.checked_pow(e).unwrap_or(usize::MAX)
}

/// The maximum allowed degree of a token vertex in a kernel, `2k^2`.
pub fn l1_degree_bound(k: usize) -> usize {
    kpow(k, 2).saturating_mul(2)
}

/// Number of vertices of the gadget replacing a safe component.
pub fn gadget_size(k: usize, boundary: usize) -> usize {
    3 * k + 2 * boundary
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub l1: VertexSet,
    pub l2: VertexSet,
    pub l3: VertexSet,
}

pub fn compute_partition(instance: &Instance) -> Partition {
    let g = &instance.graph;
    let l1 = instance.terminals();
    let l2 = g.set_neighborhood(&l1);
    let l3 = g
        .vertices()
        .filter(|&v| !l1.contains(v) && !l2.contains(v))
        .collect();
    Partition { l1, l2, l3 }
}

impl Partition {
    /// Components of `G[L3]`, ordered by smallest member.
    pub fn l3_components(&self, g: &Graph) -> Vec<VertexSet> {
        components_within(g, &self.l3.mask(g.vertex_count()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    DiameterSafe,
    DegreeSafe,
    Bounded,
    Bad,
}

impl ComponentKind {
    pub fn is_safe(self) -> bool {
        matches!(
            self,
            ComponentKind::DiameterSafe | ComponentKind::DegreeSafe
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            ComponentKind::DiameterSafe => "diameter-safe",
            ComponentKind::DegreeSafe => "degree-safe",
            ComponentKind::Bounded => "bounded",
            ComponentKind::Bad => "bad",
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

fn inner_degrees(g: &Graph, c: &VertexSet) -> Vec<usize> {
    c.iter()
        .map(|v| g.neighbors(v).iter().filter(|&&w| c.contains(w)).count())
        .collect()
}

/// Classifies a connected component of `G[L3]`: diameter above `k^3`
/// first, then a vertex with `k^2 + 1` neighbors in `c`, at least `k^2` of
/// them of degree two in `G[c]`; otherwise bounded if no vertex has more
/// than `k^2` neighbors in `c`, and bad if some vertex does.
pub fn classify_component(
    g: &Graph,
    c: &VertexSet,
    k: usize,
) -> Result<ComponentKind, KernelError> {
    if diameter_exceeds(g, c, kpow(k, 3))? {
        return Ok(ComponentKind::DiameterSafe);
    }
    let k2 = kpow(k, 2);
    let deg = inner_degrees(g, c);
    let local = |v: Vertex| c.as_slice().binary_search(&v).unwrap();
    let degree_safe = c.iter().enumerate().any(|(i, u)| {
        deg[i] > k2 && {
            let twos = g
                .neighbors(u)
                .iter()
                .filter(|&&w| c.contains(w) && deg[local(w)] == 2)
                .count();
            twos >= k2
        }
    });
    if degree_safe {
        return Ok(ComponentKind::DegreeSafe);
    }
    if deg.iter().all(|&d| d <= k2) {
        Ok(ComponentKind::Bounded)
    } else {
        Ok(ComponentKind::Bad)
    }
}

/// Root plus `k` branches `(first level, second level)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubdividedStar {
    pub root: Vertex,
    pub branches: Vec<(Vertex, Vertex)>,
}

impl SubdividedStar {
    pub fn vertices(&self) -> VertexSet {
        std::iter::once(self.root)
            .chain(self.branches.iter().flat_map(|&(a, b)| [a, b]))
            .collect()
    }

    /// Distinct vertices, the star edges present, and no other edge among them.
    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let vs = self.vertices();
        if vs.len() != 2 * self.branches.len() + 1 {
            return false;
        }
        let star_edges = self
            .branches
            .iter()
            .all(|&(a, b)| g.has_edge(self.root, a) && g.has_edge(a, b));
        let induced_edges: usize = vs
            .iter()
            .map(|v| g.neighbors(v).iter().filter(|&&w| vs.contains(w)).count())
            .sum::<usize>()
            / 2;
        star_edges && induced_edges == 2 * self.branches.len()
    }
}

/// Extracts an induced subdivided `k`-star with branches of length two from
/// a degree-safe component.
pub fn find_subdivided_star(
    g: &Graph,
    c: &VertexSet,
    k: usize,
) -> Result<SubdividedStar, KernelError> {
    let k2 = kpow(k, 2);
    let deg = inner_degrees(g, c);
    let local = |v: Vertex| c.as_slice().binary_search(&v).ok();
    for (i, root) in c.iter().enumerate() {
        if deg[i] <= k2 {
            continue;
        }
        // first-level vertices of degree two in G[c], each with its other neighbor
        let mut level: Vec<(Vertex, Vertex)> = Vec::new();
        for &a in g.neighbors(root) {
            if local(a).is_some_and(|j| deg[j] == 2) {
                let b = *g
                    .neighbors(a)
                    .iter()
                    .find(|&&w| w != root && c.contains(w))
                    .unwrap();
                level.push((a, b));
            }
        }
        if level.len() < k2 {
            continue;
        }
        let second: VertexSet = level.iter().map(|&(_, b)| b).collect();
        if second.len() != level.len() || second.iter().any(|b| b == root || g.has_edge(root, b)) {
            // only possible with a short cycle
            continue;
        }
        let adj2 = |v: Vertex| {
            g.neighbors(v)
                .iter()
                .copied()
                .filter(|&w| second.contains(w))
        };
        let chosen: Vec<Vertex> = match second.iter().find(|&v| adj2(v).count() >= k) {
            Some(hub) => adj2(hub).take(k).collect(),
            None => {
                let mut alive = second.clone();
                let mut picked = Vec::new();
                while picked.len() < k {
                    let Some(v) = alive.first() else { break };
                    picked.push(v);
                    alive = alive
                        .iter()
                        .filter(|&w| w != v && !g.has_edge(v, w))
                        .collect();
                }
                picked
            }
        };
        if chosen.len() < k {
            continue;
        }
        let branches = chosen
            .iter()
            .map(|&b| *level.iter().find(|&&(_, bb)| bb == b).unwrap())
            .collect();
        let star = SubdividedStar { root, branches };
        if star.is_induced_in(g) {
            return Ok(star);
        }
    }
    Err(KernelError::StarNotFound { k })
}

/// Everything needed to replay one gadget replacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetRecord {
    pub kind: ComponentKind,
    /// Ids before the replacement.
    pub replaced_component: VertexSet,
    /// `N(C)`, ids before the replacement.
    pub boundary: VertexSet,
    /// Ids after the replacement: `v', v''` per boundary vertex in
    /// ascending boundary order, then `p_1..p_{3k}`.
    pub new_vertices: Vec<Vertex>,
}

/// Builds `G - C` plus the gadget: for each boundary vertex `v` a path
/// `v - v' - v''`, a path `p_1..p_{3k}`, and the edges `v'' - p_1`.
fn attach_gadget(
    g: &Graph,
    c: &VertexSet,
    boundary: &VertexSet,
    k: usize,
) -> (Graph, IdMap, Vec<Vertex>) {
    let (base, map) = g.remove_vertices(c);
    let start = base.vertex_count();
    let size = gadget_size(k, boundary.len());
    let new_vertices: Vec<Vertex> = (start..start + size).collect();
    let p = |i: usize| start + 2 * boundary.len() + i;
    let mut edges = Vec::with_capacity(size + boundary.len());
    for (j, v) in boundary.iter().enumerate() {
        let (v1, v2) = (start + 2 * j, start + 2 * j + 1);
        edges.push((map.get(v).unwrap(), v1));
        edges.push((v1, v2));
        edges.push((v2, p(0)));
    }
    for i in 1..3 * k {
        edges.push((p(i - 1), p(i)));
    }
    let g2 = base.extended(size, edges).expect("gadget edges are fresh");
    (g2, map, new_vertices)
}

fn template_gadget(g: &Graph, boundary: &VertexSet, k: usize) -> AttachedComponent {
    let b = boundary.len();
    let size = gadget_size(k, b);
    let p = |i: usize| 2 * b + i;
    let mut inner = Vec::new();
    let mut links = Vec::new();
    for (j, v) in boundary.iter().enumerate() {
        links.push((2 * j, v));
        inner.push((2 * j, 2 * j + 1));
        inner.push((2 * j + 1, p(0)));
    }
    for i in 1..3 * k {
        inner.push((p(i - 1), p(i)));
    }
    let boundary_edges: Vec<(Vertex, Vertex)> = boundary
        .iter()
        .flat_map(|u| {
            g.neighbors(u)
                .iter()
                .filter(move |&&w| w > u)
                .map(move |&w| (u, w))
        })
        .filter(|&(_, w)| boundary.contains(w))
        .collect();
    AttachedComponent::from_parts((0..size).collect(), &inner, &links, &boundary_edges)
}

/// True iff the component `c` is exactly a replacement gadget for its
/// boundary (boundary-fixing isomorphic to a fresh one).
pub fn is_gadget(g: &Graph, c: &VertexSet, k: usize) -> bool {
    let attached = AttachedComponent::from_graph(g, c);
    if c.len() != gadget_size(k, attached.boundary.len()) {
        return false;
    }
    boundary_fixed_isomorphic(&attached, &template_gadget(g, &attached.boundary, k))
}

/// Replaces a safe component of `G[L3]` by the bounded gadget.
pub fn replace_safe_component(
    instance: &Instance,
    c: &VertexSet,
) -> Result<(Instance, GadgetRecord), KernelError> {
    let k = instance.k;
    let kind = classify_component(&instance.graph, c, k)?;
    if !kind.is_safe() {
        return Err(KernelError::NotSafe(kind));
    }
    if c.iter()
        .any(|v| instance.source.contains(v) || instance.target.contains(v))
    {
        return Err(KernelError::ComponentHoldsTokens);
    }
    if kind == ComponentKind::DegreeSafe {
        find_subdivided_star(&instance.graph, c, k)?;
    }
    let boundary = instance.graph.set_neighborhood(c);
    let (graph, map, new_vertices) = attach_gadget(&instance.graph, c, &boundary, k);
    let out = Instance {
        graph,
        k,
        source: map.map_set(&instance.source),
        target: map.map_set(&instance.target),
    };
    let record = GadgetRecord {
        kind,
        replaced_component: c.clone(),
        boundary,
        new_vertices,
    };
    Ok((out, record))
}

/// One logged reduction. Vertex ids refer to the instance the step was
/// applied to, except `GadgetRecord::new_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KernelStep {
    TwinRemoved {
        kept: Vertex,
        removed: VertexSet,
    },
    GadgetReplaced(GadgetRecord),
    L1Slide {
        side: Side,
        slides: Vec<Slide>,
    },
    ComponentsPruned {
        representative: VertexSet,
        removed: Vec<VertexSet>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub step: KernelStep,
    /// Old→new ids across this step.
    pub id_map: IdMap,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KernelTrace {
    pub entries: Vec<TraceEntry>,
}

fn delete(instance: &Instance, removed: &VertexSet) -> (Instance, IdMap) {
    let (graph, map) = instance.graph.remove_vertices(removed);
    let out = Instance {
        graph,
        k: instance.k,
        source: map.map_set(&instance.source),
        target: map.map_set(&instance.target),
    };
    (out, map)
}

fn apply_slides(set: &VertexSet, slides: &[Slide]) -> VertexSet {
    let mut cur = set.clone();
    for s in slides {
        cur = cur
            .iter()
            .map(|v| if v == s.from { s.to } else { v })
            .collect();
    }
    cur
}

impl KernelStep {
    /// Re-applies this step to the instance it was recorded on.
    pub fn apply(&self, instance: &Instance) -> (Instance, IdMap) {
        match self {
            KernelStep::TwinRemoved { removed, .. } => delete(instance, removed),
            KernelStep::ComponentsPruned { removed, .. } => {
                let all: VertexSet = removed.iter().flat_map(|c| c.iter()).collect();
                delete(instance, &all)
            }
            KernelStep::GadgetReplaced(rec) => {
                let (graph, map, _) = attach_gadget(
                    &instance.graph,
                    &rec.replaced_component,
                    &rec.boundary,
                    instance.k,
                );
                let out = Instance {
                    graph,
                    k: instance.k,
                    source: map.map_set(&instance.source),
                    target: map.map_set(&instance.target),
                };
                (out, map)
            }
            KernelStep::L1Slide { side, slides } => {
                let mut out = instance.clone();
                *out.tokens_mut(*side) = apply_slides(instance.tokens(*side), slides);
                (out, IdMap::identity(instance.graph.vertex_count()))
            }
        }
    }
}

fn fmt_set(out: &mut String, s: impl IntoIterator<Item = Vertex>) {
    let mut first = true;
    for v in s {
        if !first {
            out.push(',');
        }
        first = false;
        write!(out, "{}", v + 1).unwrap();
    }
    if first {
        out.push('-');
    }
}

impl KernelTrace {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    fn push(&mut self, step: KernelStep, id_map: IdMap) {
        self.entries.push(TraceEntry { step, id_map });
    }

    /// Every intermediate instance, starting with `original`.
    pub fn replay_states(&self, original: &Instance) -> Vec<Instance> {
        let mut states = vec![original.clone()];
        for e in &self.entries {
            let (next, _) = e.step.apply(states.last().unwrap());
            states.push(next);
        }
        states
    }

    pub fn replay(&self, original: &Instance) -> Instance {
        self.replay_states(original).pop().unwrap()
    }

    /// Line-oriented log, one step per line, 1-based ids.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.step {
                KernelStep::TwinRemoved { kept, removed } => {
                    write!(out, "TWIN kept={} removed=", kept + 1).unwrap();
                    fmt_set(&mut out, removed.iter());
                }
                KernelStep::GadgetReplaced(rec) => {
                    write!(out, "GADGET kind={} component=", rec.kind).unwrap();
                    fmt_set(&mut out, rec.replaced_component.iter());
                    out.push_str(" boundary=");
                    fmt_set(&mut out, rec.boundary.iter());
                    out.push_str(" new=");
                    fmt_set(&mut out, rec.new_vertices.iter().copied());
                }
                KernelStep::L1Slide { side, slides } => {
                    write!(out, "SLIDE {side}").unwrap();
                    for s in slides {
                        write!(out, " {}->{}", s.from + 1, s.to + 1).unwrap();
                    }
                }
                KernelStep::ComponentsPruned {
                    representative,
                    removed,
                } => {
                    out.push_str("PRUNE keep=");
                    fmt_set(&mut out, representative.iter());
                    out.push_str(" removed=");
                    for (i, c) in removed.iter().enumerate() {
                        if i > 0 {
                            out.push('|');
                        }
                        fmt_set(&mut out, c.iter());
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Removes twins outside `I_s ∪ I_t` (including duplicate isolated
/// vertices), keeping the smallest id of each class, until none remain.
pub fn remove_twins(instance: &Instance) -> (Instance, Vec<TraceEntry>) {
    let mut cur = instance.clone();
    let mut steps = Vec::new();
    loop {
        let terminals = cur.terminals();
        let mut candidates: Vec<Vertex> = cur
            .graph
            .vertices()
            .filter(|&v| !terminals.contains(v))
            .collect();
        // bucket by neighborhood fingerprint; ties keep ascending ids
        candidates.sort_by(|&a, &b| {
            cur.graph
                .neighbors(a)
                .cmp(cur.graph.neighbors(b))
                .then(a.cmp(&b))
        });
        let classes: Vec<(Vertex, VertexSet)> = candidates
            .chunk_by(|&a, &b| cur.graph.neighbors(a) == cur.graph.neighbors(b))
            .filter(|class| class.len() > 1)
            .map(|class| (class[0], class[1..].iter().copied().collect()))
            .collect();
        if classes.is_empty() {
            break;
        }
        let mut pending = classes;
        while !pending.is_empty() {
            let (kept, removed) = pending.remove(0);
            let (next, map) = delete(&cur, &removed);
            pending = pending
                .into_iter()
                .map(|(k, r)| (map.get(k).unwrap(), map.map_set(&r)))
                .collect();
            steps.push(TraceEntry {
                step: KernelStep::TwinRemoved { kept, removed },
                id_map: map,
            });
            cur = next;
        }
    }
    (cur, steps)
}

/// Kind of each `L3` component, with gadgets reported separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentInfo {
    pub vertices: VertexSet,
    pub kind: ComponentKind,
    pub gadget: bool,
}

pub fn l3_component_info(instance: &Instance) -> Vec<ComponentInfo> {
    let part = compute_partition(instance);
    part.l3_components(&instance.graph)
        .into_iter()
        .map(|c| {
            let kind = classify_component(&instance.graph, &c, instance.k)
                .expect("components are connected");
            let gadget = is_gadget(&instance.graph, &c, instance.k);
            ComponentInfo {
                vertices: c,
                kind,
                gadget,
            }
        })
        .collect()
}

/// The first safe `L3` component that is not already a gadget.
fn next_unreplaced_safe(instance: &Instance) -> Option<VertexSet> {
    let part = compute_partition(instance);
    part.l3_components(&instance.graph).into_iter().find(|c| {
        classify_component(&instance.graph, c, instance.k)
            .unwrap()
            .is_safe()
            && !is_gadget(&instance.graph, c, instance.k)
    })
}

fn slides_along(path: &[Vertex]) -> Vec<Slide> {
    path.windows(2)
        .map(|w| Slide {
            from: w[0],
            to: w[1],
        })
        .collect()
}

/// Slides the `side` token on `u` (degree above `2k^2`) to a vertex of
/// degree at most `2k^2`. Follows the walk `u → v ∈ L2 → w ∈ L3 → …` by
/// the kind of `w`'s component; when that walk does not end on a
/// low-degree vertex, takes the shortest free path instead.
pub fn reduce_l1_degree(
    instance: &Instance,
    side: Side,
    u: Vertex,
) -> Result<(Instance, Vec<Slide>), KernelError> {
    let g = &instance.graph;
    let k = instance.k;
    let bound = l1_degree_bound(k);
    let tokens = instance.tokens(side);
    if !tokens.contains(u) || g.degree(u) <= bound {
        return Err(KernelError::NotApplicable {
            side,
            vertex: u,
            bound,
        });
    }
    let others: VertexSet = tokens.iter().filter(|&v| v != u).collect();
    let mut blocked = vec![false; g.vertex_count()];
    for t in others.iter() {
        blocked[t] = true;
        for &w in g.neighbors(t) {
            blocked[w] = true;
        }
    }

    let path = walk_by_case(instance, u, &blocked)
        .or_else(|| shortest_free_path(g, u, &blocked, bound))
        .ok_or(KernelError::NoEscapeVertex(u))?;

    for &x in &path[1..] {
        let mut set = others.clone();
        set = set.union(&std::iter::once(x).collect());
        if blocked[x] || !is_independent(g, &set) {
            return Err(KernelError::IndependenceViolated(u));
        }
    }
    let slides = slides_along(&path);
    let mut out = instance.clone();
    *out.tokens_mut(side) = apply_slides(tokens, &slides);
    Ok((out, slides))
}

fn walk_by_case(instance: &Instance, u: Vertex, blocked: &[bool]) -> Option<Vec<Vertex>> {
    let g = &instance.graph;
    let k = instance.k;
    let bound = l1_degree_bound(k);
    let candidates: Vec<Vertex> = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&v| !blocked[v])
        .collect();
    if let Some(&v) = candidates.iter().find(|&&v| g.degree(v) <= bound) {
        return Some(vec![u, v]);
    }
    let &v = candidates.first()?;
    let part = compute_partition(instance);
    let l3_mask = part.l3.mask(g.vertex_count());
    for &w in g
        .neighbors(v)
        .iter()
        .filter(|&&w| l3_mask[w] && !blocked[w])
    {
        let comp = components_within(g, &l3_mask)
            .into_iter()
            .find(|c| c.contains(w))?;
        if g.degree(w) <= bound
            && (is_gadget(g, &comp, k)
                || classify_component(g, &comp, k).ok()? == ComponentKind::Bounded)
        {
            return Some(vec![u, v, w]);
        }
        if classify_component(g, &comp, k).ok()? == ComponentKind::Bad {
            if let Some(mut tail) = escape_in_bad(g, &comp, w, k, bound) {
                let mut path = vec![u, v];
                path.append(&mut tail);
                return Some(path);
            }
        }
    }
    None
}

/// Inside a bad component: from `w` to a high-degree vertex `b`, then to a
/// neighbor `z` of `b` with no other neighbor in the component.
fn escape_in_bad(
    g: &Graph,
    comp: &VertexSet,
    w: Vertex,
    k: usize,
    bound: usize,
) -> Option<Vec<Vertex>> {
    let k2 = kpow(k, 2);
    let deg = inner_degrees(g, comp);
    let local = |v: Vertex| comp.as_slice().binary_search(&v).unwrap();
    let mask = comp.mask(g.vertex_count());
    let (_, parent) = bfs_within(g, w, Some(&mask));
    for (i, b) in comp.iter().enumerate() {
        if deg[i] <= k2 {
            continue;
        }
        let Some(z) = g
            .neighbors(b)
            .iter()
            .copied()
            .find(|&z| mask[z] && deg[local(z)] == 1 && g.degree(z) <= bound)
        else {
            continue;
        };
        if z == w {
            return Some(vec![w]);
        }
        let mut path = path_to(&parent, b);
        path.push(z);
        return Some(path);
    }
    None
}

/// Shortest path from `u` through unblocked vertices to a vertex of degree
/// at most `bound`.
fn shortest_free_path(g: &Graph, u: Vertex, blocked: &[bool], bound: usize) -> Option<Vec<Vertex>> {
    let mask: Vec<bool> = blocked.iter().map(|b| !b).collect();
    let (dist, parent) = bfs_within(g, u, Some(&mask));
    let target = g
        .vertices()
        .filter(|&x| x != u && g.degree(x) <= bound)
        .filter_map(|x| dist[x].map(|d| (d, x)))
        .min()?;
    Some(path_to(&parent, target.1))
}

/// Groups `L3` components into boundary-fixing isomorphism classes and
/// keeps one member of each gadget class and `k` of every other class.
pub fn prune_equivalent_components(instance: &Instance) -> (Instance, Vec<TraceEntry>) {
    let k = instance.k;
    let g = &instance.graph;
    let part = compute_partition(instance);
    let mut by_boundary: BTreeMap<VertexSet, Vec<AttachedComponent>> = BTreeMap::new();
    for c in part.l3_components(g) {
        let a = AttachedComponent::from_graph(g, &c);
        by_boundary.entry(a.boundary.clone()).or_default().push(a);
    }
    let mut prunes: Vec<(VertexSet, Vec<VertexSet>)> = Vec::new();
    for (_, comps) in by_boundary {
        let mut classes: Vec<Vec<AttachedComponent>> = Vec::new();
        for a in comps {
            match classes
                .iter_mut()
                .find(|cls| boundary_fixed_isomorphic(&cls[0], &a))
            {
                Some(cls) => cls.push(a),
                None => classes.push(vec![a]),
            }
        }
        for mut cls in classes {
            cls.sort_by(|x, y| x.interior.cmp(&y.interior));
            let keep = if is_gadget(g, &cls[0].interior, k) {
                1
            } else {
                k
            };
            if cls.len() > keep {
                let removed = cls[keep..].iter().map(|a| a.interior.clone()).collect();
                prunes.push((cls[0].interior.clone(), removed));
            }
        }
    }
    prunes.sort();

    let mut cur = instance.clone();
    let mut steps = Vec::new();
    let mut pending = prunes;
    while !pending.is_empty() {
        let (representative, removed) = pending.remove(0);
        let step = KernelStep::ComponentsPruned {
            representative,
            removed,
        };
        let (next, map) = step.apply(&cur);
        pending = pending
            .into_iter()
            .map(|(r, rm)| (map.map_set(&r), rm.iter().map(|c| map.map_set(c)).collect()))
            .collect();
        steps.push(TraceEntry { step, id_map: map });
        cur = next;
    }
    (cur, steps)
}

/// Runs all reductions to a fixed point. Each pass removes twins, then
/// alternates safe-component replacement with one high-degree token slide
/// until neither applies, then prunes equivalent components.
pub fn kernelize(instance: &Instance) -> Result<(Instance, KernelTrace), KernelError> {
    let g0 = girth(&instance.graph);
    if !g0.at_least(5) {
        return Err(KernelError::GirthTooSmall(g0));
    }
    let k = instance.k;
    let cap = 4usize
        .saturating_mul(k)
        .saturating_mul(instance.graph.vertex_count().max(1));
    let mut steps = 0usize;
    let tick = |steps: &mut usize| -> Result<(), KernelError> {
        *steps += 1;
        if *steps > cap {
            Err(KernelError::IterationCapExceeded(cap))
        } else {
            Ok(())
        }
    };

    let mut cur = instance.clone();
    let mut trace = KernelTrace::default();
    loop {
        tick(&mut steps)?;
        let before = trace.len();

        let (next, twin_steps) = remove_twins(&cur);
        cur = next;
        trace.entries.extend(twin_steps);

        loop {
            tick(&mut steps)?;
            let mut applied = false;
            while let Some(c) = next_unreplaced_safe(&cur) {
                let (next, record) = replace_safe_component(&cur, &c)?;
                let keep: Vec<bool> = cur.graph.vertices().map(|v| !c.contains(v)).collect();
                let map = IdMap::keeping(&keep);
                trace.push(KernelStep::GadgetReplaced(record), map);
                cur = next;
                applied = true;
            }
            let bound = l1_degree_bound(k);
            let high = cur
                .terminals()
                .iter()
                .find(|&v| cur.graph.degree(v) > bound);
            if let Some(u) = high {
                let side = if cur.source.contains(u) {
                    Side::Source
                } else {
                    Side::Target
                };
                let (next, slides) = reduce_l1_degree(&cur, side, u)?;
                trace.push(
                    KernelStep::L1Slide { side, slides },
                    IdMap::identity(cur.graph.vertex_count()),
                );
                cur = next;
                applied = true;
            }
            if !applied {
                break;
            }
        }

        let (next, prune_steps) = prune_equivalent_components(&cur);
        cur = next;
        trace.entries.extend(prune_steps);

        if trace.len() == before {
            break;
        }
    }
    Ok((cur, trace))
}
