//! Truss and core decomposition.
//!
//! Truss decomposition peels edges in order of current support using a
//! bucket queue over flat arrays indexed by dense edge ids (edge ids follow
//! canonical edge order, so peeling is deterministic). An edge removed while
//! its support is `s` gets trussness `s + 2`; neighbors are only decremented
//! while their support is still above `s`, which keeps the sequence monotone.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};

/// Compressed adjacency over a fixed edge list, remembering edge ids.
#[derive(Debug, Clone, Default)]
pub(crate) struct EdgeCsr {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
    eids: Vec<u32>,
}

impl EdgeCsr {
    pub(crate) fn new(capacity: usize, edges: &[Edge]) -> Self {
        let mut offsets = vec![0usize; capacity + 1];
        for e in edges {
            offsets[e.u as usize + 1] += 1;
            offsets[e.v as usize + 1] += 1;
        }
        for i in 0..capacity {
            offsets[i + 1] += offsets[i];
        }
        let mut fill = offsets.clone();
        let mut slots = vec![(0 as NodeId, 0u32); 2 * edges.len()];
        for (id, e) in edges.iter().enumerate() {
            slots[fill[e.u as usize]] = (e.v, id as u32);
            fill[e.u as usize] += 1;
            slots[fill[e.v as usize]] = (e.u, id as u32);
            fill[e.v as usize] += 1;
        }
        for v in 0..capacity {
            slots[offsets[v]..offsets[v + 1]].sort_unstable();
        }
        let (targets, eids) = slots.into_iter().unzip();
        EdgeCsr {
            offsets,
            targets,
            eids,
        }
    }

    #[inline]
    pub(crate) fn neighbors(&self, v: NodeId) -> (&[NodeId], &[u32]) {
        let v = v as usize;
        if v + 1 >= self.offsets.len() {
            return (&[], &[]);
        }
        let r = self.offsets[v]..self.offsets[v + 1];
        (&self.targets[r.clone()], &self.eids[r])
    }

    #[inline]
    pub(crate) fn edge_id(&self, a: NodeId, b: NodeId) -> Option<usize> {
        let (t, ids) = self.neighbors(a);
        t.binary_search(&b).ok().map(|i| ids[i] as usize)
    }

    /// Calls `f(e1, e2)` for every triangle on `e` whose other two edges
    /// are not marked removed.
    #[inline]
    fn for_each_triangle(&self, e: Edge, removed: &[bool], mut f: impl FnMut(usize, usize)) {
        let (mut a, mut b) = (e.u, e.v);
        if self.neighbors(a).0.len() > self.neighbors(b).0.len() {
            core::mem::swap(&mut a, &mut b);
        }
        let (ta, ia) = self.neighbors(a);
        let (tb, ib) = self.neighbors(b);
        for (&w, &e1) in ta.iter().zip(ia) {
            if w == b || removed[e1 as usize] {
                continue;
            }
            if let Ok(j) = tb.binary_search(&w) {
                let e2 = ib[j] as usize;
                if !removed[e2] {
                    f(e1 as usize, e2);
                }
            }
        }
    }

    fn supports(&self, edges: &[Edge]) -> Vec<u32> {
        let removed = vec![false; edges.len()];
        edges
            .iter()
            .map(|&e| {
                let mut s = 0u32;
                self.for_each_triangle(e, &removed, |_, _| s += 1);
                s
            })
            .collect()
    }
}

/// Exact trussness of every edge.
#[derive(Debug, Clone)]
pub struct TrussDecomposition {
    capacity: usize,
    edges: Vec<Edge>,
    trussness: Vec<u32>,
    csr: EdgeCsr,
    kmax: u32,
}

impl TrussDecomposition {
    /// Edges in canonical order; index `i` pairs with `edge_trussness()[i]`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_trussness(&self) -> &[u32] {
        &self.trussness
    }

    /// Largest trussness of any edge, 0 for an edgeless graph.
    pub fn kmax(&self) -> u32 {
        self.kmax
    }

    pub fn trussness(&self, a: NodeId, b: NodeId) -> Option<u32> {
        self.csr.edge_id(a, b).map(|i| self.trussness[i])
    }

    /// Edges of the k-truss: those with trussness at least `k`.
    pub fn k_truss_edges(&self, k: u32) -> Vec<Edge> {
        self.edges_where(|t| t >= k)
    }

    pub fn k_truss_size(&self, k: u32) -> usize {
        self.trussness.iter().filter(|&&t| t >= k).count()
    }

    /// Sorted nodes incident to at least one k-truss edge.
    pub fn k_truss_nodes(&self, k: u32) -> Vec<NodeId> {
        let mut seen = vec![false; self.capacity];
        for (e, &t) in self.edges.iter().zip(&self.trussness) {
            if t >= k {
                seen[e.u as usize] = true;
                seen[e.v as usize] = true;
            }
        }
        (0..self.capacity as NodeId)
            .filter(|&v| seen[v as usize])
            .collect()
    }

    /// Shell edges for `k`: trussness exactly `k - 1`.
    pub fn shell_edges(&self, k: u32) -> Vec<Edge> {
        self.edges_where(|t| t + 1 == k)
    }

    fn edges_where(&self, keep: impl Fn(u32) -> bool) -> Vec<Edge> {
        self.edges
            .iter()
            .zip(&self.trussness)
            .filter(|(_, &t)| keep(t))
            .map(|(&e, _)| e)
            .collect()
    }

    /// Node trussness (max over incident edges), indexed by node id.
    /// Nodes without edges get 0.
    pub fn node_trussness(&self) -> Vec<u32> {
        let mut out = vec![0u32; self.capacity];
        for (e, &t) in self.edges.iter().zip(&self.trussness) {
            out[e.u as usize] = out[e.u as usize].max(t);
            out[e.v as usize] = out[e.v as usize].max(t);
        }
        out
    }
}

pub fn truss_decompose(g: &Graph) -> TrussDecomposition {
    let edges: Vec<Edge> = g.edges().collect();
    let capacity = g.capacity();
    let csr = EdgeCsr::new(capacity, &edges);
    let m = edges.len();
    let mut sup = csr.supports(&edges);
    let max_sup = sup.iter().copied().max().unwrap_or(0) as usize;

    // Counting sort of edge ids by support; `pos` is the inverse permutation
    // and `bin[s]` the first slot holding support s.
    let mut bin = vec![0usize; max_sup + 2];
    for &s in &sup {
        bin[s as usize + 1] += 1;
    }
    for s in 0..=max_sup {
        bin[s + 1] += bin[s];
    }
    let mut order = vec![0usize; m];
    let mut pos = vec![0usize; m];
    {
        let mut next = bin.clone();
        for (e, &s) in sup.iter().enumerate() {
            pos[e] = next[s as usize];
            order[pos[e]] = e;
            next[s as usize] += 1;
        }
    }

    let mut removed = vec![false; m];
    let mut trussness = vec![0u32; m];
    for i in 0..m {
        let e = order[i];
        let s = sup[e];
        trussness[e] = s + 2;
        removed[e] = true;
        csr.for_each_triangle(edges[e], &removed, |e1, e2| {
            for f in [e1, e2] {
                if sup[f] > s {
                    // move f to the front of its bucket, then shrink the bucket
                    let sf = sup[f] as usize;
                    let front = bin[sf];
                    let g = order[front];
                    if g != f {
                        order.swap(pos[f], front);
                        pos[g] = pos[f];
                        pos[f] = front;
                    }
                    bin[sf] += 1;
                    sup[f] -= 1;
                }
            }
        });
    }
    let kmax = trussness.iter().copied().max().unwrap_or(0);
    TrussDecomposition {
        capacity,
        edges,
        trussness,
        csr,
        kmax,
    }
}

/// Membership mask of the k-truss of the graph formed by `edges`
/// (canonical, duplicate-free) over node ids `< capacity`.
pub(crate) fn k_truss_mask(capacity: usize, edges: &[Edge], k: u32) -> Vec<bool> {
    let csr = EdgeCsr::new(capacity, edges);
    let mut sup = csr.supports(edges);
    let need = k.saturating_sub(2);
    let mut removed = vec![false; edges.len()];
    let mut queued = vec![false; edges.len()];
    let mut stack: Vec<usize> = Vec::new();
    for (e, &s) in sup.iter().enumerate() {
        if s < need {
            queued[e] = true;
            stack.push(e);
        }
    }
    while let Some(e) = stack.pop() {
        removed[e] = true;
        csr.for_each_triangle(edges[e], &removed, |e1, e2| {
            for f in [e1, e2] {
                sup[f] -= 1;
                if sup[f] < need && !queued[f] {
                    queued[f] = true;
                    stack.push(f);
                }
            }
        });
    }
    removed.into_iter().map(|r| !r).collect()
}

/// `|E(T_k)|` of the graph formed by `edges`.
pub fn k_truss_size_of(capacity: usize, edges: &[Edge], k: u32) -> usize {
    k_truss_mask(capacity, edges, k)
        .into_iter()
        .filter(|&b| b)
        .count()
}

/// Evaluates `|E(T_k)|` after a single merger without touching the full
/// graph: only the (k-1)-truss minus the merged nodes' edges, plus the
/// edges from the survivor to inside nodes adjacent to either endpoint,
/// can end up in the new k-truss.
#[derive(Debug, Clone)]
pub struct MergeEvaluator<'a> {
    graph: &'a Graph,
    k: u32,
    base: Vec<Edge>,
    inside: Vec<bool>,
}

impl<'a> MergeEvaluator<'a> {
    pub fn new(graph: &'a Graph, truss: &TrussDecomposition, k: u32) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidK(k));
        }
        let base = truss.k_truss_edges(k - 1);
        let mut inside = vec![false; graph.capacity()];
        for e in &base {
            inside[e.u as usize] = true;
            inside[e.v as usize] = true;
        }
        Ok(MergeEvaluator {
            graph,
            k,
            base,
            inside,
        })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `|E(T_k(PM(v1, v2)))|`.
    pub fn evaluate(&self, v1: NodeId, v2: NodeId) -> Result<usize> {
        if v1 == v2 {
            return Err(Error::SelfMerge(v1));
        }
        let n1 = self.graph.neighbors(v1)?;
        let n2 = self.graph.neighbors(v2)?;
        let mut edges: Vec<Edge> = self
            .base
            .iter()
            .copied()
            .filter(|e| !e.contains(v1) && !e.contains(v2))
            .collect();
        for x in crate::graph::union(n1, n2) {
            if x != v1 && x != v2 && self.inside[x as usize] {
                edges.push(Edge::new(v1, x));
            }
        }
        edges.sort_unstable();
        Ok(k_truss_size_of(self.graph.capacity(), &edges, self.k))
    }
}

/// `|E(T_k(PM(v1, v2; g)))|` computed on the restricted graph.
pub fn post_merger_truss_size(
    g: &Graph,
    d: &TrussDecomposition,
    k: u32,
    v1: NodeId,
    v2: NodeId,
) -> Result<usize> {
    MergeEvaluator::new(g, d, k)?.evaluate(v1, v2)
}

/// Coreness of every node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    coreness: Vec<u32>,
}

impl CoreDecomposition {
    /// Indexed by node id; dead ids read 0.
    pub fn coreness(&self) -> &[u32] {
        &self.coreness
    }

    pub fn k_core_nodes(&self, k: u32) -> Vec<NodeId> {
        (0..self.coreness.len() as NodeId)
            .filter(|&v| self.coreness[v as usize] >= k)
            .collect()
    }

    pub fn max_core(&self) -> u32 {
        self.coreness.iter().copied().max().unwrap_or(0)
    }
}

/// Degree-peeling coreness (bucket queue, linear time).
pub fn core_decompose(g: &Graph) -> CoreDecomposition {
    let n = g.capacity();
    let mut deg: Vec<usize> = (0..n as NodeId).map(|v| g.degree(v)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 0..=max_deg {
        bin[d + 1] += bin[d];
    }
    let mut order = vec![0usize; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin.clone();
        for (v, &d) in deg.iter().enumerate() {
            pos[v] = next[d];
            order[pos[v]] = v;
            next[d] += 1;
        }
    }
    let mut coreness = vec![0u32; n];
    for i in 0..n {
        let v = order[i];
        coreness[v] = deg[v] as u32;
        for &u in g.adjacent(v as NodeId) {
            let u = u as usize;
            if deg[u] > deg[v] {
                let du = deg[u];
                let front = bin[du];
                let w = order[front];
                if w != u {
                    order.swap(pos[u], front);
                    pos[w] = pos[u];
                    pos[u] = front;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    CoreDecomposition { coreness }
}
