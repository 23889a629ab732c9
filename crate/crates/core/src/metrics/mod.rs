//! Robustness measures, random graph models and the studies relating them
//! to truss size.
//!
//! Every measure works on the alive nodes of a graph. Path-based measures
//! treat each connected component separately and ignore unreachable pairs;
//! effective resistance is only defined for connected graphs.

mod generators;
mod study;

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::{intersection_count, Edge, Graph};
use crate::par;

pub use generators::{gen_er, gen_hk, gen_ws};
pub use study::{correlation_study, correlation_study_with, greedy_improve, Operation, StudyRound, StudyTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetricId {
    /// Average vertex betweenness.
    Vb,
    /// Average edge betweenness.
    Eb,
    /// Total effective resistance.
    Er,
    /// Spectral gap of the adjacency matrix.
    Sg,
    /// Natural connectivity.
    Nc,
    /// Average shortest-path distance.
    Ad,
    /// Transitivity.
    Ts,
    /// Average local clustering coefficient.
    Lc,
}

impl MetricId {
    pub const ALL: [MetricId; 8] = [
        MetricId::Vb,
        MetricId::Eb,
        MetricId::Er,
        MetricId::Sg,
        MetricId::Nc,
        MetricId::Ad,
        MetricId::Ts,
        MetricId::Lc,
    ];

    /// The five measures of the merge-versus-add and correlation studies.
    pub const ROBUSTNESS: [MetricId; 5] = [MetricId::Vb, MetricId::Eb, MetricId::Er, MetricId::Sg, MetricId::Nc];

    pub fn as_str(&self) -> &'static str {
        match self {
            MetricId::Vb => "VB",
            MetricId::Eb => "EB",
            MetricId::Er => "ER",
            MetricId::Sg => "SG",
            MetricId::Nc => "NC",
            MetricId::Ad => "AD",
            MetricId::Ts => "TS",
            MetricId::Lc => "LC",
        }
    }

    /// Direction in which the graph counts as more robust.
    pub fn higher_is_better(&self) -> bool {
        matches!(self, MetricId::Sg | MetricId::Nc | MetricId::Ts | MetricId::Lc)
    }

    pub fn evaluate(&self, g: &Graph) -> Result<f64> {
        Ok(match self {
            MetricId::Vb => avg_vertex_betweenness(g),
            MetricId::Eb => avg_edge_betweenness(g),
            MetricId::Er => effective_resistance_total(g)?,
            MetricId::Sg => spectral_gap(g),
            MetricId::Nc => natural_connectivity(g),
            MetricId::Ad => average_distance(g),
            MetricId::Ts => transitivity(g),
            MetricId::Lc => avg_local_clustering(g),
        })
    }

    /// `a` is strictly more robust than `b` under this measure.
    pub fn better(&self, a: f64, b: f64) -> bool {
        if self.higher_is_better() {
            a > b
        } else {
            a < b
        }
    }
}

impl fmt::Display for MetricId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MetricId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MetricId::ALL
            .iter()
            .copied()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or(Error::InvalidConfig("unknown metric"))
    }
}

/// Sources are processed in this many fixed chunks so that floating-point
/// sums do not depend on the thread count.
const SOURCE_CHUNKS: usize = 64;

fn source_chunks(n: usize) -> Vec<(usize, usize)> {
    let size = n.div_ceil(SOURCE_CHUNKS).max(1);
    (0..n).step_by(size).map(|s| (s, (s + size).min(n))).collect()
}

struct Dense {
    adj: Vec<Vec<usize>>,
    /// Edge index of every adjacency slot.
    slot_edge: Vec<Vec<usize>>,
    edges: usize,
}

fn dense(g: &Graph) -> Dense {
    let (c, _) = g.compacted();
    let edges: Vec<Edge> = c.edges().collect();
    let mut adj = Vec::with_capacity(c.node_count());
    let mut slot_edge = Vec::with_capacity(c.node_count());
    for v in c.nodes() {
        let nbrs = c.adjacent(v);
        adj.push(nbrs.iter().map(|&u| u as usize).collect());
        slot_edge.push(
            nbrs.iter()
                .map(|&u| edges.binary_search(&Edge::new(v, u)).expect("edge exists"))
                .collect(),
        );
    }
    Dense {
        adj,
        slot_edge,
        edges: edges.len(),
    }
}

/// Brandes accumulation over all sources; returns per-node and per-edge
/// betweenness with every unordered pair counted once.
fn brandes(d: &Dense) -> (Vec<f64>, Vec<f64>) {
    let n = d.adj.len();
    let partials = par::map(&source_chunks(n), |&(lo, hi)| {
        let mut node = vec![0.0; n];
        let mut edge = vec![0.0; d.edges];
        let mut sigma = vec![0.0f64; n];
        let mut dist = vec![usize::MAX; n];
        let mut delta = vec![0.0f64; n];
        let mut order = Vec::with_capacity(n);
        for s in lo..hi {
            sigma.iter_mut().for_each(|x| *x = 0.0);
            dist.iter_mut().for_each(|x| *x = usize::MAX);
            delta.iter_mut().for_each(|x| *x = 0.0);
            order.clear();
            sigma[s] = 1.0;
            dist[s] = 0;
            order.push(s);
            let mut head = 0;
            while head < order.len() {
                let v = order[head];
                head += 1;
                for &w in &d.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        order.push(w);
                    }
                    if dist[w] == dist[v] + 1 {
                        sigma[w] += sigma[v];
                    }
                }
            }
            for &w in order.iter().rev() {
                for (slot, &v) in d.adj[w].iter().enumerate() {
                    if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                        let c = sigma[v] / sigma[w] * (1.0 + delta[w]);
                        delta[v] += c;
                        edge[d.slot_edge[w][slot]] += c;
                    }
                }
                if w != s {
                    node[w] += delta[w];
                }
            }
        }
        (node, edge)
    });
    let mut node = vec![0.0; n];
    let mut edge = vec![0.0; d.edges];
    for (pn, pe) in partials {
        node.iter_mut().zip(pn).for_each(|(a, b)| *a += b);
        edge.iter_mut().zip(pe).for_each(|(a, b)| *a += b);
    }
    node.iter_mut().for_each(|x| *x /= 2.0);
    edge.iter_mut().for_each(|x| *x /= 2.0);
    (node, edge)
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        0.0
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

/// Shortest-path betweenness of every alive node (in id order), each
/// unordered pair of endpoints counted once.
pub fn vertex_betweenness(g: &Graph) -> Vec<f64> {
    brandes(&dense(g)).0
}

/// Shortest-path betweenness of every edge in canonical order.
pub fn edge_betweenness(g: &Graph) -> Vec<f64> {
    brandes(&dense(g)).1
}

pub fn avg_vertex_betweenness(g: &Graph) -> f64 {
    mean(&vertex_betweenness(g))
}

pub fn avg_edge_betweenness(g: &Graph) -> f64 {
    mean(&edge_betweenness(g))
}

fn laplacian(g: &Graph) -> DMatrix<f64> {
    let d = dense(g);
    let n = d.adj.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (v, nbrs) in d.adj.iter().enumerate() {
        m[(v, v)] = nbrs.len() as f64;
        for &u in nbrs {
            m[(v, u)] = -1.0;
        }
    }
    m
}

fn adjacency(g: &Graph) -> DMatrix<f64> {
    let d = dense(g);
    let n = d.adj.len();
    let mut m = DMatrix::<f64>::zeros(n, n);
    for (v, nbrs) in d.adj.iter().enumerate() {
        for &u in nbrs {
            m[(v, u)] = 1.0;
        }
    }
    m
}

/// Adjacency eigenvalues in descending order.
pub fn adjacency_spectrum(g: &Graph) -> Vec<f64> {
    if g.node_count() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = adjacency(g).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_unstable_by(|a, b| b.total_cmp(a));
    ev
}

/// Kirchhoff index `n · Σ 1/μ` over the nonzero Laplacian eigenvalues.
pub fn effective_resistance_total(g: &Graph) -> Result<f64> {
    let n = g.node_count();
    if n <= 1 {
        return Ok(0.0);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut ev: Vec<f64> = laplacian(g).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_unstable_by(|a, b| a.total_cmp(b));
    // the connected Laplacian has exactly one zero eigenvalue
    Ok(n as f64 * ev[1..].iter().map(|&mu| 1.0 / mu).sum::<f64>())
}

pub fn spectral_gap(g: &Graph) -> f64 {
    let ev = adjacency_spectrum(g);
    if ev.len() < 2 {
        return 0.0;
    }
    ev[0] - ev[1]
}

/// `ln(mean(exp(λ)))`, evaluated with the largest eigenvalue factored out.
pub fn natural_connectivity(g: &Graph) -> f64 {
    let ev = adjacency_spectrum(g);
    if ev.is_empty() {
        return 0.0;
    }
    let top = ev[0];
    let s: f64 = ev.iter().map(|&l| libm::exp(l - top)).sum();
    top + libm::log(s / ev.len() as f64)
}

/// Mean shortest-path length over connected unordered pairs.
pub fn average_distance(g: &Graph) -> f64 {
    let d = dense(g);
    let n = d.adj.len();
    let partials = par::map(&source_chunks(n), |&(lo, hi)| {
        let mut dist = vec![usize::MAX; n];
        let mut queue = Vec::with_capacity(n);
        let (mut total, mut pairs) = (0u64, 0u64);
        for s in lo..hi {
            dist.iter_mut().for_each(|x| *x = usize::MAX);
            queue.clear();
            dist[s] = 0;
            queue.push(s);
            let mut head = 0;
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                for &w in &d.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push(w);
                        total += dist[w] as u64;
                        pairs += 1;
                    }
                }
            }
        }
        (total, pairs)
    });
    let (total, pairs) = partials
        .into_iter()
        .fold((0u64, 0u64), |(a, b), (c, e)| (a + c, b + e));
    if pairs == 0 {
        0.0
    } else {
        total as f64 / pairs as f64
    }
}

/// `3 · triangles / connected triples`.
pub fn transitivity(g: &Graph) -> f64 {
    let closed: usize = g
        .edges()
        .map(|e| intersection_count(g.adjacent(e.u), g.adjacent(e.v)))
        .sum();
    let triples: usize = g
        .nodes()
        .map(|v| {
            let d = g.degree(v);
            d * d.saturating_sub(1) / 2
        })
        .sum();
    if triples == 0 {
        0.0
    } else {
        closed as f64 / triples as f64
    }
}

/// Clustering coefficient of every alive node in id order; nodes of degree
/// below two get 0.
pub fn local_clustering(g: &Graph) -> Vec<f64> {
    g.nodes()
        .map(|v| {
            let nbrs = g.adjacent(v);
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            let links: usize = nbrs.iter().map(|&u| intersection_count(g.adjacent(u), nbrs)).sum();
            links as f64 / (d * (d - 1)) as f64
        })
        .collect()
}

pub fn avg_local_clustering(g: &Graph) -> f64 {
    mean(&local_clustering(g))
}

/// Sample correlation; `None` for mismatched or too-short inputs and for
/// constant series.
pub fn pearson_r(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let constant = |v: &[f64]| v.iter().all(|&x| x == v[0]);
    if constant(xs) || constant(ys) {
        return None;
    }
    let (mx, my) = (mean(xs), mean(ys));
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&x, &y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / libm::sqrt(sxx * syy)).clamp(-1.0, 1.0))
}
