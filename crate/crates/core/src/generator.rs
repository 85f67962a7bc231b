//! Seeded instance generators: random girth ≥ 5 graphs and fixed families
//! that exercise each reduction.
//!
//! All randomness comes from `Pcg64` (PCG XSL RR 128/64) seeded with
//! `seed_from_u64`, so equal parameters give byte-identical instances.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexSet};
use crate::instance::Instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("no independent set of size {k} found after 100 shuffles")]
    NoPlacement { k: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("token count must be at least 1")]
    ZeroTokens,
}

fn rng(seed: u64) -> Pcg64 {
    Pcg64::seed_from_u64(seed)
}

fn within_distance(adj: &[Vec<Vertex>], u: Vertex, v: Vertex, radius: usize) -> bool {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[u] = 0;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            return true;
        }
        if dist[x] == radius {
            continue;
        }
        for &w in &adj[x] {
            if dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
        }
    }
    false
}

/// Random graph of girth at least five: proposes uniform vertex pairs and
/// keeps `{u, v}` only when `dist(u, v) >= 4`. Gives up after
/// `20 * target_m` proposals.
pub fn random_girth5(n: usize, target_m: usize, seed: u64) -> Graph {
    assert!(n >= 1, "graph needs a vertex");
    let mut rng = rng(seed);
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    for _ in 0..target_m.saturating_mul(20) {
        if edges.len() >= target_m {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u == v || within_distance(&adj, u, v, 3) {
            continue;
        }
        adj[u].push(v);
        adj[v].push(u);
        edges.push((u, v));
    }
    Graph::from_edges(n, edges).expect("generator keeps the graph simple")
}

/// Draws `I_s` and `I_t` independently by shuffling the vertices and
/// greedily keeping pairwise non-adjacent ones.
pub fn random_instance(g: &Graph, k: usize, seed: u64) -> Result<Instance, GenError> {
    if k == 0 {
        return Err(GenError::ZeroTokens);
    }
    let mut rng = rng(seed);
    let mut draw = || -> Result<VertexSet, GenError> {
        let mut order: Vec<Vertex> = g.vertices().collect();
        for _ in 0..100 {
            order.shuffle(&mut rng);
            let mut picked: Vec<Vertex> = Vec::with_capacity(k);
            for &v in &order {
                if picked.iter().all(|&p| !g.has_edge(p, v)) {
                    picked.push(v);
                    if picked.len() == k {
                        return Ok(picked.into_iter().collect());
                    }
                }
            }
        }
        Err(GenError::NoPlacement { k })
    };
    let source = draw()?;
    let target = draw()?;
    Ok(Instance::new(g.clone(), source, target).expect("greedy sets are independent"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `K_{1,k+1}` with tokens on leaves plus a path of `scale` vertices
    /// hanging off the center; a no-instance for `k >= 2`.
    StarTrap,
    /// Tokens reach a hub through private paths; the hub starts a path of
    /// length `scale` that lies entirely in `L3`.
    LongPathComponent,
    /// The hub is the root of `scale` legs of length two.
    DegreeSafeSpider,
    /// `scale` pendant twins on the first source connector.
    TwinCluster,
    /// `scale` identical three-vertex pendant paths on the first source connector.
    EquivalentPendants,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::StarTrap,
        Family::LongPathComponent,
        Family::DegreeSafeSpider,
        Family::TwinCluster,
        Family::EquivalentPendants,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::StarTrap => "star_trap",
            Family::LongPathComponent => "long_path_component",
            Family::DegreeSafeSpider => "degree_safe_spider",
            Family::TwinCluster => "twin_cluster",
            Family::EquivalentPendants => "equivalent_pendants",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

#[derive(Default)]
struct Builder {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl Builder {
    fn vertex(&mut self) -> Vertex {
        self.n += 1;
        self.n - 1
    }

    /// Appends `len` fresh vertices as a path hanging off `from`.
    fn path_from(&mut self, from: Vertex, len: usize) -> Vec<Vertex> {
        let mut prev = from;
        (0..len)
            .map(|_| {
                let v = self.vertex();
                self.edges.push((prev, v));
                prev = v;
                v
            })
            .collect()
    }

    fn finish(self, source: VertexSet, target: VertexSet) -> Instance {
        let g = Graph::from_edges(self.n, self.edges).expect("family graphs are simple");
        Instance::new(g, source, target).expect("family token sets are valid")
    }
}

/// Hub `0`; for each token `j` the paths `s_j - m_j - hub` and
/// `t_j - n_j - hub`. Returns (sources, targets, source connectors).
fn scaffold(b: &mut Builder, k: usize) -> (Vec<Vertex>, Vec<Vertex>, Vec<Vertex>) {
    let hub = b.vertex();
    let (mut sources, mut targets, mut connectors) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..k {
        let s = b.vertex();
        let m = b.vertex();
        let t = b.vertex();
        let n = b.vertex();
        b.edges.extend([(s, m), (m, hub), (t, n), (n, hub)]);
        sources.push(s);
        targets.push(t);
        connectors.push(m);
    }
    (sources, targets, connectors)
}

pub fn family(name: Family, k: usize, scale: usize) -> Result<Instance, GenError> {
    if k == 0 {
        return Err(GenError::ZeroTokens);
    }
    let mut b = Builder::default();
    if name == Family::StarTrap {
        let center = b.vertex();
        let leaves: Vec<Vertex> = (0..=k).map(|_| b.vertex()).collect();
        for &l in &leaves {
            b.edges.push((center, l));
        }
        b.path_from(center, scale);
        let source = leaves[..k].iter().copied().collect();
        let target = leaves[1..].iter().copied().collect();
        return Ok(b.finish(source, target));
    }
    let (sources, targets, connectors) = scaffold(&mut b, k);
    let hub = 0;
    match name {
        Family::LongPathComponent => {
            b.path_from(hub, scale);
        }
        Family::DegreeSafeSpider => {
            for _ in 0..scale {
                b.path_from(hub, 2);
            }
        }
        Family::TwinCluster => {
            for _ in 0..scale {
                b.path_from(connectors[0], 1);
            }
        }
        Family::EquivalentPendants => {
            for _ in 0..scale {
                b.path_from(connectors[0], 3);
            }
        }
        Family::StarTrap => unreachable!(),
    }
    Ok(b.finish(sources.into_iter().collect(), targets.into_iter().collect()))
}
