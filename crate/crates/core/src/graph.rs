//! Undirected simple graphs with vertex identification.
//!
//! Nodes are dense `u32` ids. A merged-away node keeps its id slot but is
//! no longer alive, so ids of surviving nodes stay stable across merges.
//! Neighbor lists are kept sorted, which makes intersections (support,
//! common neighbors) linear merges.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};

pub type NodeId = u32;

/// An unordered node pair stored as `(min, max)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
}

impl Edge {
    pub fn new(a: NodeId, b: NodeId) -> Self {
        debug_assert_ne!(a, b, "self-loops are not edges");
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn contains(&self, x: NodeId) -> bool {
        self.u == x || self.v == x
    }

    pub fn other(&self, x: NodeId) -> NodeId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Outcome of [`Graph::merge_all`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergeReport {
    /// `(survivor, removed)` for every executed merger, in input order.
    pub applied: Vec<(NodeId, NodeId)>,
    /// Indices into the input of pairs whose endpoints had already collapsed.
    pub skipped: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<NodeId>>,
    alive: Vec<bool>,
    node_count: usize,
    edge_count: usize,
}

impl Graph {
    /// A graph with nodes `0..n` and no edges.
    pub fn with_nodes(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            alive: vec![true; n],
            node_count: n,
            edge_count: 0,
        }
    }

    /// Builds a simple graph on nodes `0..n`; self-loops and repeated pairs are dropped.
    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a == b {
                continue;
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Graph {
            adj,
            alive: vec![true; n],
            node_count: n,
            edge_count: edge_count / 2,
        }
    }

    /// One past the largest node id ever allocated.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.alive.get(v as usize).copied().unwrap_or(false)
    }

    fn check(&self, v: NodeId) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownNode(v))
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(i, _)| i as NodeId)
    }

    /// Edges in canonical order: by smaller endpoint, then larger.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as NodeId;
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| Edge { u, v })
        })
    }

    pub fn neighbors(&self, v: NodeId) -> Result<&[NodeId]> {
        self.check(v)?;
        Ok(&self.adj[v as usize])
    }

    /// Neighbors without the liveness check; dead or out-of-range ids yield `&[]`.
    pub fn adjacent(&self, v: NodeId) -> &[NodeId] {
        self.adj.get(v as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacent(v).len()
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        self.adjacent(a).binary_search(&b).is_ok()
    }

    /// Number of triangles containing the edge `(a, b)`.
    pub fn support(&self, a: NodeId, b: NodeId) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        if !self.has_edge(a, b) {
            return Err(Error::MissingEdge(a, b));
        }
        Ok(intersection_count(self.adjacent(a), self.adjacent(b)))
    }

    /// Adds a node with no edges and returns its id.
    pub fn add_node(&mut self) -> NodeId {
        self.adj.push(Vec::new());
        self.alive.push(true);
        self.node_count += 1;
        (self.adj.len() - 1) as NodeId
    }

    /// Inserts `(a, b)`; returns `false` if it was already present.
    pub fn add_edge(&mut self, a: NodeId, b: NodeId) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::SelfMerge(a));
        }
        Ok(self.insert_edge(a, b))
    }

    fn insert_edge(&mut self, a: NodeId, b: NodeId) -> bool {
        match self.adj[a as usize].binary_search(&b) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[a as usize].insert(pos, b);
                let list = &mut self.adj[b as usize];
                let pos = list.binary_search(&a).unwrap_err();
                list.insert(pos, a);
                self.edge_count += 1;
                true
            }
        }
    }

    /// Removes `(a, b)`; returns `false` if it was absent.
    pub fn remove_edge(&mut self, a: NodeId, b: NodeId) -> bool {
        if a == b || !self.contains(a) || !self.contains(b) {
            return false;
        }
        match self.adj[a as usize].binary_search(&b) {
            Err(_) => false,
            Ok(pos) => {
                self.adj[a as usize].remove(pos);
                let list = &mut self.adj[b as usize];
                let pos = list.binary_search(&a).expect("adjacency is symmetric");
                list.remove(pos);
                self.edge_count -= 1;
                true
            }
        }
    }

    /// Deletes `v` and all its incident edges.
    pub fn remove_node(&mut self, v: NodeId) -> Result<()> {
        self.check(v)?;
        let nbrs = core::mem::take(&mut self.adj[v as usize]);
        for &u in &nbrs {
            let list = &mut self.adj[u as usize];
            let pos = list.binary_search(&v).expect("adjacency is symmetric");
            list.remove(pos);
        }
        self.edge_count -= nbrs.len();
        self.alive[v as usize] = false;
        self.node_count -= 1;
        Ok(())
    }

    /// Identifies `v2` into `v1` in place: `v2` disappears and every
    /// neighbor of `v2` other than `v1` becomes a neighbor of `v1`.
    /// No self-loop or parallel edge is created.
    pub fn merge(&mut self, v1: NodeId, v2: NodeId) -> Result<()> {
        if v1 == v2 {
            return Err(Error::SelfMerge(v1));
        }
        self.check(v1)?;
        self.check(v2)?;
        let moved = core::mem::take(&mut self.adj[v2 as usize]);
        for &u in &moved {
            let list = &mut self.adj[u as usize];
            let pos = list.binary_search(&v2).expect("adjacency is symmetric");
            list.remove(pos);
        }
        self.edge_count -= moved.len();
        self.alive[v2 as usize] = false;
        self.node_count -= 1;
        for &u in &moved {
            if u != v1 {
                self.insert_edge(v1, u);
            }
        }
        Ok(())
    }

    /// Non-mutating [`Graph::merge`].
    pub fn merged(&self, v1: NodeId, v2: NodeId) -> Result<Graph> {
        let mut g = self.clone();
        g.merge(v1, v2)?;
        Ok(g)
    }

    /// Applies a sequence of mergers. Each pair is first resolved to the
    /// current representatives of its endpoints (a removed node is
    /// represented by the node it was merged into); pairs whose endpoints
    /// already share a representative are skipped and reported.
    pub fn merge_all(&mut self, pairs: &[(NodeId, NodeId)]) -> Result<MergeReport> {
        let mut parent: Vec<NodeId> = (0..self.capacity() as NodeId).collect();
        fn find(parent: &mut [NodeId], mut x: NodeId) -> NodeId {
            while parent[x as usize] != x {
                let next = parent[x as usize];
                parent[x as usize] = parent[next as usize];
                x = next;
            }
            x
        }
        let mut report = MergeReport::default();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if (a as usize) >= parent.len() {
                return Err(Error::UnknownNode(a));
            }
            if (b as usize) >= parent.len() {
                return Err(Error::UnknownNode(b));
            }
            let ra = find(&mut parent, a);
            let rb = find(&mut parent, b);
            if ra == rb {
                report.skipped.push(i);
                continue;
            }
            self.merge(ra, rb)?;
            parent[rb as usize] = ra;
            report.applied.push((ra, rb));
        }
        Ok(report)
    }

    /// Full scan of the structural invariants: symmetric, sorted, no
    /// self-loops, no parallel edges, consistent counts.
    pub fn is_simple(&self) -> bool {
        let mut degree_sum = 0;
        let mut alive = 0;
        for (v, list) in self.adj.iter().enumerate() {
            if self.alive[v] {
                alive += 1;
            } else if !list.is_empty() {
                return false;
            }
            if list.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &u in list {
                if u as usize == v || !self.contains(u) {
                    return false;
                }
                if self.adj[u as usize].binary_search(&(v as NodeId)).is_err() {
                    return false;
                }
            }
            degree_sum += list.len();
        }
        alive == self.node_count && degree_sum == 2 * self.edge_count
    }

    /// Connected components as sorted node lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.capacity()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for s in self.nodes() {
            if seen[s as usize] {
                continue;
            }
            seen[s as usize] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &u in self.adjacent(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Induced subgraph on `keep`, relabelled densely in the order given.
    pub fn induced(&self, keep: &[NodeId]) -> Graph {
        let mut map = vec![NodeId::MAX; self.capacity()];
        for (i, &v) in keep.iter().enumerate() {
            map[v as usize] = i as NodeId;
        }
        let edges = self.edges().filter_map(|e| {
            let (a, b) = (map[e.u as usize], map[e.v as usize]);
            (a != NodeId::MAX && b != NodeId::MAX).then_some((a, b))
        });
        Graph::from_edges(keep.len(), edges)
    }

    /// Largest connected component (ties: the one with the smallest member),
    /// relabelled densely, with the original id of every new node.
    pub fn largest_component(&self) -> (Graph, Vec<NodeId>) {
        let comps = self.components();
        let best = comps
            .into_iter()
            .fold(None::<Vec<NodeId>>, |best, c| match best {
                Some(b) if b.len() >= c.len() => Some(b),
                _ => Some(c),
            })
            .unwrap_or_default();
        (self.induced(&best), best)
    }

    /// Relabels alive nodes to `0..node_count` in id order.
    pub fn compacted(&self) -> (Graph, Vec<NodeId>) {
        let keep: Vec<NodeId> = self.nodes().collect();
        (self.induced(&keep), keep)
    }
}

/// `|a ∩ b|` for sorted slices.
pub(crate) fn intersection_count(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

pub(crate) fn union(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// `a \ b` for sorted slices.
pub(crate) fn difference(a: &[NodeId], b: &[NodeId]) -> Vec<NodeId> {
    let mut j = 0;
    let mut out = Vec::with_capacity(a.len());
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j >= b.len() || b[j] != x {
            out.push(x);
        }
    }
    out
}
