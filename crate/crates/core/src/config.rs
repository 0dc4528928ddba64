//! Combinatorial models of the ordered configuration spaces `F_k(|K|)`.
//!
//! The model is the deleted product: the subcomplex of the staircase
//! product `K^k` whose simplices have pairwise vertex-disjoint coordinate
//! carriers. For a graph that is subdivided finely enough (Abrams'
//! condition), the model is homotopy equivalent to the configuration space.
//! For other inputs it is only a heuristic.

use std::collections::VecDeque;
use std::fmt;

use crate::complex::{
    constrained_subcomplex, staircase_product, subdivide_edges, ConstraintSet, OrderedComplex,
    ProductComplex, SimplicialMap,
};
use crate::{Error, Result};

/// Whether a model is known to have the homotopy type of `F_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exactness {
    Certified,
    Heuristic,
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exactness::Certified => "certified",
            Exactness::Heuristic => "heuristic",
        })
    }
}

/// A deleted-product model of `F_k(|K|)` inside the staircase `K^k`.
#[derive(Clone, Debug)]
pub struct ConfigModel {
    pub base: OrderedComplex,
    pub k: usize,
    pub complex: OrderedComplex,
    pub inclusion: SimplicialMap,
    pub exactness: Exactness,
    pub product: ProductComplex,
}

/// The deleted product of `k` copies of `K`.
pub fn deleted_product_model(k_complex: &OrderedComplex, k: usize) -> Result<ConfigModel> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let product = staircase_product(&vec![k_complex.clone(); k])?;
    let sub = constrained_subcomplex(&product, &ConstraintSet::full(k))?;
    let exactness = if k_complex.is_graph() && abrams_condition(k_complex, k)?.holds() {
        Exactness::Certified
    } else {
        Exactness::Heuristic
    };
    Ok(ConfigModel {
        base: k_complex.clone(),
        k,
        complex: sub.complex,
        inclusion: sub.inclusion,
        exactness,
        product,
    })
}

/// A cycle or a path violating the subdivision bound, as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbramsWitness {
    /// An embedded cycle with fewer than `k + 1` edges (closed walk,
    /// first vertex not repeated).
    Cycle(Vec<usize>),
    /// A path with fewer than `k - 1` edges between distinct essential
    /// vertices.
    Path(Vec<usize>),
}

/// Outcome of [`abrams_condition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbramsReport {
    pub k: usize,
    /// Length of a shortest cycle, if the graph has one.
    pub girth: Option<usize>,
    /// Shortest distance between two distinct essential vertices.
    pub essential_distance: Option<usize>,
    pub witness: Option<AbramsWitness>,
}

impl AbramsReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }

    /// The witness spelled with vertex names.
    pub fn describe(&self, k: &OrderedComplex) -> String {
        let names = |v: &[usize]| {
            v.iter().map(|&i| k.vertices()[i].as_str()).collect::<Vec<_>>().join(" ")
        };
        match &self.witness {
            None => "ok".to_string(),
            Some(AbramsWitness::Cycle(c)) => format!("cycle of length {}: {}", c.len(), names(c)),
            Some(AbramsWitness::Path(p)) => {
                format!("essential path of length {}: {}", p.len() - 1, names(p))
            }
        }
    }
}

/// Checks the sufficient subdivision condition for the discretized model
/// of `F_k` of a graph: every embedded cycle has at least `k + 1` edges and
/// distinct essential vertices (degree other than 2) are at least `k - 1`
/// edges apart.
pub fn abrams_condition(g: &OrderedComplex, k: usize) -> Result<AbramsReport> {
    let adj = adjacency(g)?;
    let girth = shortest_cycle(&adj);
    let essential = essential_vertices(&adj);
    let path = shortest_essential_path(&adj, &essential);
    let mut witness = None;
    if let Some(c) = girth.as_ref().filter(|c| c.len() < k + 1) {
        witness = Some(AbramsWitness::Cycle(c.clone()));
    } else if let Some(p) = path.as_ref().filter(|p| p.len() - 1 < k.saturating_sub(1)) {
        witness = Some(AbramsWitness::Path(p.clone()));
    }
    Ok(AbramsReport {
        k,
        girth: girth.map(|c| c.len()),
        essential_distance: path.map(|p| p.len() - 1),
        witness,
    })
}

/// The smallest uniform edge subdivision of `g` satisfying
/// [`abrams_condition`] for `k`.
pub fn prepare_graph(g: &OrderedComplex, k: usize) -> Result<OrderedComplex> {
    subdivide_edges(g, subdivision_factor(g, k)?)
}

/// The factor used by [`prepare_graph`]. Subdividing every edge into `f`
/// pieces multiplies the girth and the essential distance by `f`.
pub fn subdivision_factor(g: &OrderedComplex, k: usize) -> Result<usize> {
    let report = abrams_condition(g, k)?;
    let mut f = 1;
    if let Some(girth) = report.girth {
        f = f.max((k + 1).div_ceil(girth));
    }
    if let Some(dist) = report.essential_distance {
        f = f.max(k.saturating_sub(1).div_ceil(dist));
    }
    Ok(f)
}

fn adjacency(g: &OrderedComplex) -> Result<Vec<Vec<usize>>> {
    if let Some(d) = g.dim().filter(|&d| d > 1) {
        return Err(Error::NotAGraph(d));
    }
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for e in g.simplices(1) {
        adj[e[0]].push(e[1]);
        adj[e[1]].push(e[0]);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    Ok(adj)
}

fn essential_vertices(adj: &[Vec<usize>]) -> Vec<bool> {
    adj.iter().map(|a| a.len() != 2).collect()
}

fn bfs(adj: &[Vec<usize>], s: usize) -> (Vec<usize>, Vec<usize>) {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut parent = vec![usize::MAX; adj.len()];
    dist[s] = 0;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if dist[v] == usize::MAX {
                dist[v] = dist[u] + 1;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    (dist, parent)
}

fn walk_to_root(parent: &[usize], mut v: usize) -> Vec<usize> {
    let mut out = vec![v];
    while parent[v] != usize::MAX {
        v = parent[v];
        out.push(v);
    }
    out
}

/// A shortest cycle, as its vertex sequence.
fn shortest_cycle(adj: &[Vec<usize>]) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for s in 0..adj.len() {
        let (dist, parent) = bfs(adj, s);
        for u in 0..adj.len() {
            if dist[u] == usize::MAX {
                continue;
            }
            for &v in &adj[u] {
                if u < v && parent[u] != v && parent[v] != u && dist[v] != usize::MAX {
                    let len = dist[u] + dist[v] + 1;
                    if best.as_ref().is_none_or(|b| len < b.len()) {
                        let mut a = walk_to_root(&parent, u);
                        let mut b = walk_to_root(&parent, v);
                        // Both walks end at s; keep s once.
                        a.reverse();
                        b.pop();
                        a.extend(b);
                        let mut seen = a.clone();
                        seen.sort_unstable();
                        seen.dedup();
                        if seen.len() == a.len() && a.len() == len {
                            best = Some(a);
                        }
                    }
                }
            }
        }
    }
    best
}

/// A shortest path between two distinct essential vertices.
fn shortest_essential_path(adj: &[Vec<usize>], essential: &[bool]) -> Option<Vec<usize>> {
    let mut best: Option<Vec<usize>> = None;
    for s in (0..adj.len()).filter(|&v| essential[v]) {
        let (dist, parent) = bfs(adj, s);
        for t in (0..adj.len()).filter(|&v| essential[v] && v != s && dist[v] != usize::MAX) {
            if best.as_ref().is_none_or(|b| dist[t] + 1 < b.len()) {
                let mut p = walk_to_root(&parent, t);
                p.reverse();
                best = Some(p);
            }
        }
    }
    best
}

/// A graph with its degree-2 vertices smoothed away: a multigraph (loops
/// allowed) on the essential vertices, plus a count of components that are
/// plain circles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothedGraph {
    pub vertices: usize,
    /// Edge multiplicities, `edges[u][v] == edges[v][u]`; loops on the
    /// diagonal.
    pub edges: Vec<Vec<usize>>,
    pub circles: usize,
}

/// Smooths every degree-2 vertex of a graph.
pub fn smooth_graph(g: &OrderedComplex) -> Result<SmoothedGraph> {
    let adj = adjacency(g)?;
    let essential = essential_vertices(&adj);
    let ids: Vec<usize> = (0..adj.len()).filter(|&v| essential[v]).collect();
    let mut new_id = vec![usize::MAX; adj.len()];
    for (i, &v) in ids.iter().enumerate() {
        new_id[v] = i;
    }
    let mut edges = vec![vec![0usize; ids.len()]; ids.len()];
    let mut visited = vec![false; adj.len()];
    let mut used_edge = std::collections::HashSet::new();
    for &s in &ids {
        visited[s] = true;
        for &first in &adj[s] {
            if used_edge.contains(&(s.min(first), s.max(first))) {
                continue;
            }
            let (mut prev, mut cur) = (s, first);
            used_edge.insert((s.min(first), s.max(first)));
            while !essential[cur] {
                visited[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                used_edge.insert((cur.min(next), cur.max(next)));
                prev = cur;
                cur = next;
            }
            let (a, b) = (new_id[s], new_id[cur]);
            if a == b {
                edges[a][a] += 1;
            } else {
                edges[a][b] += 1;
                edges[b][a] += 1;
            }
        }
    }
    let mut circles = 0;
    for v in 0..adj.len() {
        if visited[v] {
            continue;
        }
        circles += 1;
        let mut stack = vec![v];
        visited[v] = true;
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !visited[w] {
                    visited[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    Ok(SmoothedGraph { vertices: ids.len(), edges, circles })
}

/// Whether two graphs are homeomorphic, i.e. subdivisions of a common graph.
pub fn homeomorphic(a: &OrderedComplex, b: &OrderedComplex) -> Result<bool> {
    let (x, y) = (smooth_graph(a)?, smooth_graph(b)?);
    if x.vertices != y.vertices || x.circles != y.circles {
        return Ok(false);
    }
    let signature = |g: &SmoothedGraph, v: usize| {
        let mut row = g.edges[v].clone();
        let own = row.remove(v);
        row.sort_unstable();
        (own, row)
    };
    let sx: Vec<_> = (0..x.vertices).map(|v| signature(&x, v)).collect();
    let sy: Vec<_> = (0..y.vertices).map(|v| signature(&y, v)).collect();
    let mut assignment = vec![usize::MAX; x.vertices];
    let mut used = vec![false; y.vertices];
    fn extend(
        v: usize,
        x: &SmoothedGraph,
        y: &SmoothedGraph,
        sx: &[(usize, Vec<usize>)],
        sy: &[(usize, Vec<usize>)],
        assignment: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == x.vertices {
            return true;
        }
        for w in 0..y.vertices {
            if used[w] || sx[v] != sy[w] {
                continue;
            }
            if (0..v).any(|u| x.edges[v][u] != y.edges[w][assignment[u]]) {
                continue;
            }
            assignment[v] = w;
            used[w] = true;
            if extend(v + 1, x, y, sx, sy, assignment, used) {
                return true;
            }
            used[w] = false;
        }
        false
    }
    Ok(extend(0, &x, &y, &sx, &sy, &mut assignment, &mut used))
}
