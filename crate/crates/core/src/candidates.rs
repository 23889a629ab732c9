//! Heuristic search for promising mergers.
//!
//! Inside nodes are ranked by incident prospects, pruned outside nodes by
//! the number of inside neighbors. Inside-outside pairs are scored by the
//! shell edges they potentially help; inside-inside pairs by a reward /
//! penalty count over collisions and shell edges whose support changes.
//! Every ranking is an exact top-n selection with ties broken by ids.

use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::TrussDecomposition;
use crate::error::{Error, Result};
use crate::graph::{difference, intersection_count, union, Edge, Graph, NodeId};
use crate::par;
use crate::pruning::{partition_nodes, prune_outside_maximal, NodePartition};

/// Which scoring rules to use.
///
/// `Semantic` counts exactly the shell edges whose support changes.
/// `Literal` follows the printed pseudocode line by line, including the
/// k-truss neighborhood in the new-neighbor set and reward conditions that
/// also admit edges whose support cannot change.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Heuristics {
    #[default]
    Semantic,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MergeKind {
    /// Inside-outside merger.
    Iom,
    /// Inside-inside merger.
    Iim,
    /// Outside-outside merger; only the exhaustive methods produce these.
    Oom,
}

impl MergeKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            MergeKind::Iom => "IOM",
            MergeKind::Iim => "IIM",
            MergeKind::Oom => "OOM",
        }
    }
}

/// A scored merger; `v1` survives.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateMerger {
    pub v1: NodeId,
    pub v2: NodeId,
    pub kind: MergeKind,
    pub score: i64,
    /// `|Z|` for inside-outside mergers, 0 otherwise.
    pub tiebreak: i64,
}

/// Optional distance constraint on which pairs may merge.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConstraintFilter {
    /// `(lat, lon)` in degrees, indexed by node id.
    pub coordinates: Vec<Option<(f64, f64)>>,
    pub threshold_km: Option<f64>,
}

impl ConstraintFilter {
    pub fn new(coordinates: Vec<Option<(f64, f64)>>, threshold_km: Option<f64>) -> Self {
        ConstraintFilter {
            coordinates,
            threshold_km,
        }
    }

    pub fn is_active(&self) -> bool {
        self.threshold_km.is_some()
    }

    /// Without a threshold every pair is admitted. With one, both
    /// endpoints need coordinates and must lie within the threshold.
    pub fn admits(&self, a: NodeId, b: NodeId) -> bool {
        let Some(limit) = self.threshold_km else {
            return true;
        };
        let get = |v: NodeId| self.coordinates.get(v as usize).copied().flatten();
        match (get(a), get(b)) {
            (Some(pa), Some(pb)) => haversine_km(pa, pb) <= limit,
            _ => false,
        }
    }
}

const EARTH_RADIUS_KM: f64 = 6371.0;

/// Great-circle distance between two `(lat, lon)` points in degrees.
pub fn haversine_km(a: (f64, f64), b: (f64, f64)) -> f64 {
    let (lat1, lon1) = (a.0.to_radians(), a.1.to_radians());
    let (lat2, lon2) = (b.0.to_radians(), b.1.to_radians());
    let s1 = libm::sin((lat2 - lat1) / 2.0);
    let s2 = libm::sin((lon2 - lon1) / 2.0);
    let h = s1 * s1 + libm::cos(lat1) * libm::cos(lat2) * s2 * s2;
    let h = h.clamp(0.0, 1.0);
    2.0 * EARTH_RADIUS_KM * libm::atan2(libm::sqrt(h), libm::sqrt(1.0 - h))
}

/// Pruned outside nodes ranked by inside-neighbor count (descending), then id.
pub fn top_outside_nodes(pruned: &[NodeId], inside_nbrs: &[Vec<NodeId>], n_o: usize) -> Vec<NodeId> {
    let mut ranked: Vec<NodeId> = pruned.to_vec();
    ranked.sort_unstable_by_key(|&v| (core::cmp::Reverse(inside_nbrs[v as usize].len()), v));
    ranked.truncate(n_o);
    ranked
}

fn neighbor_lists(capacity: usize, edges: &[Edge]) -> Vec<Vec<NodeId>> {
    let mut adj = vec![Vec::new(); capacity];
    for e in edges {
        adj[e.u as usize].push(e.v);
        adj[e.v as usize].push(e.u);
    }
    for list in &mut adj {
        list.sort_unstable();
    }
    adj
}

#[inline]
fn has(sorted: &[NodeId], x: NodeId) -> bool {
    sorted.binary_search(&x).is_ok()
}

/// Everything the scoring rules need about one graph state and one `k`.
#[derive(Debug, Clone)]
pub struct ScoringContext<'a> {
    graph: &'a Graph,
    k: u32,
    mode: Heuristics,
    partition: NodePartition,
    pruned_outside: Vec<NodeId>,
    /// N(v; T_k)
    truss_nbrs: Vec<Vec<NodeId>>,
    /// N(v; T_{k-1})
    outer_truss_nbrs: Vec<Vec<NodeId>>,
    shell_nbrs: Vec<Vec<NodeId>>,
}

impl<'a> ScoringContext<'a> {
    pub fn new(g: &'a Graph, d: &TrussDecomposition, k: u32, mode: Heuristics) -> Result<Self> {
        let partition = partition_nodes(g, d, k)?;
        let pruned_outside = prune_outside_maximal(&partition.outside, &partition.inside_nbrs);
        let cap = g.capacity();
        Ok(ScoringContext {
            graph: g,
            k,
            mode,
            partition,
            pruned_outside,
            truss_nbrs: neighbor_lists(cap, &d.k_truss_edges(k)),
            outer_truss_nbrs: neighbor_lists(cap, &d.k_truss_edges(k - 1)),
            shell_nbrs: neighbor_lists(cap, &d.shell_edges(k)),
        })
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn mode(&self) -> Heuristics {
        self.mode
    }

    pub fn partition(&self) -> &NodePartition {
        &self.partition
    }

    pub fn pruned_outside(&self) -> &[NodeId] {
        &self.pruned_outside
    }

    pub fn inside_nbrs(&self, v: NodeId) -> &[NodeId] {
        &self.partition.inside_nbrs[v as usize]
    }

    pub fn truss_nbrs(&self, v: NodeId) -> &[NodeId] {
        &self.truss_nbrs[v as usize]
    }

    pub fn shell_nbrs(&self, v: NodeId) -> &[NodeId] {
        &self.shell_nbrs[v as usize]
    }

    fn require_inside(&self, v: NodeId) -> Result<()> {
        if !self.graph.contains(v) {
            return Err(Error::UnknownNode(v));
        }
        if !self.partition.is_inside[v as usize] {
            return Err(Error::NotInside(v));
        }
        Ok(())
    }

    /// `Ñ_k(v) \ N(v; T_k)`.
    pub fn incident_prospects(&self, v: NodeId) -> Result<Vec<NodeId>> {
        self.require_inside(v)?;
        Ok(difference(self.inside_nbrs(v), self.truss_nbrs(v)))
    }

    fn prospect_count(&self, v: NodeId) -> usize {
        self.inside_nbrs(v).len() - intersection_count(self.inside_nbrs(v), self.truss_nbrs(v))
    }

    /// Inside nodes ranked by incident-prospect count (descending), then id.
    pub fn top_inside_nodes(&self, n_i: usize) -> Vec<NodeId> {
        let mut ranked: Vec<(usize, NodeId)> = self
            .partition
            .inside
            .iter()
            .map(|&v| (self.prospect_count(v), v))
            .collect();
        ranked.sort_unstable_by_key(|&(c, v)| (core::cmp::Reverse(c), v));
        ranked.into_iter().take(n_i).map(|(_, v)| v).collect()
    }

    pub fn top_outside_nodes(&self, n_o: usize) -> Vec<NodeId> {
        top_outside_nodes(&self.pruned_outside, &self.partition.inside_nbrs, n_o)
    }

    /// `Z = (Ñ(v_i) ∪ Ñ(v_o)) \ (N(v_i; T_{k-1}) ∪ {v_i})`.
    pub fn new_inside_neighbors(&self, v_i: NodeId, v_o: NodeId) -> Result<Vec<NodeId>> {
        self.require_inside(v_i)?;
        if !self.graph.contains(v_o) {
            return Err(Error::UnknownNode(v_o));
        }
        Ok(self.new_nbrs(v_i, v_o, &self.outer_truss_nbrs[v_i as usize]))
    }

    fn new_nbrs(&self, v_i: NodeId, v_o: NodeId, existing: &[NodeId]) -> Vec<NodeId> {
        let mut z = difference(&union(self.inside_nbrs(v_i), self.inside_nbrs(v_o)), existing);
        z.retain(|&x| x != v_i);
        z
    }

    /// Shell edges whose support grows once `v_i` is joined to every node
    /// of `Z`. New triangles all contain a new edge `(v_i, z)`; the helped
    /// edges are either shell edges `(v_i, z')` with `z' ~ z` or shell edges
    /// `(z, y)` with `y` adjacent to `v_i` afterwards.
    pub fn phse(&self, v_i: NodeId, v_o: NodeId) -> Result<Vec<Edge>> {
        let z = self.new_inside_neighbors(v_i, v_o)?;
        Ok(self.phse_from(v_i, &z))
    }

    fn phse_from(&self, v_i: NodeId, z: &[NodeId]) -> Vec<Edge> {
        let nvi = self.graph.adjacent(v_i);
        let fresh = difference(z, nvi);
        if fresh.is_empty() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for &zp in self.shell_nbrs(v_i) {
            if intersection_count(self.graph.adjacent(zp), &fresh) > 0 {
                out.push(Edge::new(v_i, zp));
            }
        }
        for &x in &fresh {
            for &y in self.shell_nbrs(x) {
                if y != v_i && (has(&fresh, y) || has(nvi, y)) {
                    out.push(Edge::new(x, y));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `(score, |Z|)` for an inside-outside pair under the active mode.
    pub fn iom_score(&self, v_i: NodeId, v_o: NodeId) -> Result<(i64, i64)> {
        self.require_inside(v_i)?;
        if !self.graph.contains(v_o) {
            return Err(Error::UnknownNode(v_o));
        }
        Ok(match self.mode {
            Heuristics::Semantic => {
                let z = self.new_nbrs(v_i, v_o, &self.outer_truss_nbrs[v_i as usize]);
                (self.phse_from(v_i, &z).len() as i64, z.len() as i64)
            }
            Heuristics::Literal => self.iom_score_literal(v_i, v_o),
        })
    }

    fn iom_score_literal(&self, v_i: NodeId, v_o: NodeId) -> (i64, i64) {
        let own = self.inside_nbrs(v_i);
        let z = self.new_nbrs(v_i, v_o, self.truss_nbrs(v_i));
        // H(t) = Ñ(t) ∪ Ñ(v_i), defined for t outside Ñ(v_i)
        let mut incident: Vec<NodeId> = Vec::new();
        for &t in z.iter().filter(|&&t| !has(own, t)) {
            incident = union(&incident, self.inside_nbrs(t));
            incident = union(&incident, own);
        }
        let reach = union(&z, own);
        let mut non_incident = Vec::new();
        for &x in &z {
            for &y in self.shell_nbrs(x) {
                if has(&reach, y) {
                    non_incident.push(Edge::new(x, y));
                }
            }
        }
        non_incident.sort_unstable();
        non_incident.dedup();
        ((incident.len() + non_incident.len()) as i64, z.len() as i64)
    }

    /// Reward/penalty score of an inside-inside pair: −1 per common
    /// k-truss neighbor (collision), +1 per shell edge gaining support,
    /// −1 per shell edge between two common inside neighbors.
    pub fn iim_score(&self, v1: NodeId, v2: NodeId) -> Result<i64> {
        self.require_inside(v1)?;
        self.require_inside(v2)?;
        if v1 == v2 {
            return Err(Error::SelfMerge(v1));
        }
        let a1 = self.inside_nbrs(v1);
        let a2 = self.inside_nbrs(v2);
        let mut h = -(intersection_count(self.truss_nbrs(v1), self.truss_nbrs(v2)) as i64);
        let reach = union(a1, a2);
        // bit 1: in Ñ(v1), bit 2: in Ñ(v2)
        let side = |x: NodeId| (has(a1, x) as u8) | ((has(a2, x) as u8) << 1);
        for &x in &reach {
            if x == v1 || x == v2 {
                continue;
            }
            let sx = side(x);
            for &y in self.shell_nbrs(x) {
                if y <= x || y == v1 || y == v2 || !has(&reach, y) {
                    continue;
                }
                let sy = side(y);
                let (gain, loss) = match self.mode {
                    Heuristics::Semantic => ((sx | sy) == 3 && sx != 3 && sy != 3, sx == 3 && sy == 3),
                    Heuristics::Literal => (sx != 3 && sy != 3, sx == 3 && sy == 3),
                };
                if gain {
                    h += 1;
                } else if loss {
                    h -= 1;
                }
            }
        }
        Ok(h)
    }

    /// The `n_c` best inside-outside pairs among the top `n_i` inside and
    /// top `n_o` pruned outside nodes.
    pub fn find_iom_candidates(
        &self,
        n_i: usize,
        n_o: usize,
        n_c: usize,
        filter: Option<&ConstraintFilter>,
    ) -> Vec<CandidateMerger> {
        if n_c == 0 {
            return Vec::new();
        }
        let inside = self.top_inside_nodes(n_i);
        let outside = self.top_outside_nodes(n_o);
        let pairs: Vec<(NodeId, NodeId)> = inside
            .iter()
            .flat_map(|&a| outside.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| filter.map_or(true, |f| f.admits(a, b)))
            .collect();
        self.rank_iom_pairs(&pairs, n_c)
    }

    /// Scores arbitrary inside-outside pairs and keeps the best `n_c`.
    pub fn rank_iom_pairs(&self, pairs: &[(NodeId, NodeId)], n_c: usize) -> Vec<CandidateMerger> {
        let mut scored: Vec<CandidateMerger> = par::map(pairs, |&(a, b)| {
            let (score, tiebreak) = self.iom_score(a, b).expect("pairs come from the partition");
            CandidateMerger {
                v1: a,
                v2: b,
                kind: MergeKind::Iom,
                score,
                tiebreak,
            }
        });
        scored.sort_unstable_by(|x, y| {
            y.score
                .cmp(&x.score)
                .then(y.tiebreak.cmp(&x.tiebreak))
                .then((x.v1, x.v2).cmp(&(y.v1, y.v2)))
        });
        scored.truncate(n_c);
        scored
    }

    /// The `n_c` best inside-inside pairs among the top `n_i` inside nodes.
    pub fn find_iim_candidates(
        &self,
        n_i: usize,
        n_c: usize,
        filter: Option<&ConstraintFilter>,
    ) -> Vec<CandidateMerger> {
        if n_c == 0 {
            return Vec::new();
        }
        let mut inside = self.top_inside_nodes(n_i);
        inside.sort_unstable();
        let mut pairs = Vec::new();
        for (i, &a) in inside.iter().enumerate() {
            for &b in &inside[i + 1..] {
                if filter.map_or(true, |f| f.admits(a, b)) {
                    pairs.push((a, b));
                }
            }
        }
        let mut scored: Vec<CandidateMerger> = par::map(&pairs, |&(a, b)| CandidateMerger {
            v1: a,
            v2: b,
            kind: MergeKind::Iim,
            score: self.iim_score(a, b).expect("pairs come from the partition"),
            tiebreak: 0,
        });
        scored.sort_unstable_by(|x, y| y.score.cmp(&x.score).then((x.v1, x.v2).cmp(&(y.v1, y.v2))));
        scored.truncate(n_c);
        scored
    }
}
