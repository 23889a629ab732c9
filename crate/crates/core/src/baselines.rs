//! Comparison methods, exhaustive oracles and hardness fixtures.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::batman::{greedy_rounds, select_best, MergeStep, MergerPlan, Method, RunConfig};
use crate::candidates::{CandidateMerger, MergeKind, ScoringContext};
use crate::decomposition::truss_decompose;
use crate::error::{Error, Result};
use crate::graph::{difference, intersection_count, union, Graph, NodeId};
use crate::par;
use crate::pruning::partition_nodes;

/// Largest graph the exhaustive methods accept.
pub const EXHAUSTIVE_NODE_LIMIT: usize = 200;

/// `|E(T_k)|` after merging `v2` into `v1`, by full recomputation.
pub fn merged_truss_size(g: &Graph, k: u32, v1: NodeId, v2: NodeId) -> Result<usize> {
    Ok(truss_decompose(&g.merged(v1, v2)?).k_truss_size(k))
}

fn check_exhaustive(g: &Graph) -> Result<()> {
    if g.node_count() > EXHAUSTIVE_NODE_LIMIT {
        return Err(Error::TooLarge {
            nodes: g.node_count(),
            limit: EXHAUSTIVE_NODE_LIMIT,
        });
    }
    Ok(())
}

fn all_pairs(g: &Graph) -> Vec<(NodeId, NodeId)> {
    let nodes: Vec<NodeId> = g.nodes().collect();
    let mut pairs = Vec::new();
    for (i, &a) in nodes.iter().enumerate() {
        for &b in &nodes[i + 1..] {
            pairs.push((a, b));
        }
    }
    pairs
}

/// Best single merger over `pairs` by full recomputation; ties go to the
/// smaller pair. `None` when `pairs` is empty.
pub fn brute_force_best_over(
    g: &Graph,
    k: u32,
    pairs: &[(NodeId, NodeId)],
) -> Result<Option<((NodeId, NodeId), usize)>> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    let sizes = par::map(pairs, |&(a, b)| merged_truss_size(g, k, a, b))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut best: Option<((NodeId, NodeId), usize)> = None;
    for (&(a, b), &s) in pairs.iter().zip(&sizes) {
        let key = (a.min(b), a.max(b));
        match best {
            Some((p, bs)) if bs > s || (bs == s && p <= key) => {}
            _ => best = Some((key, s)),
        }
    }
    Ok(best)
}

/// Exact best single merger over all node pairs of a small graph.
pub fn brute_force_best_merger(g: &Graph, k: u32) -> Result<Option<((NodeId, NodeId), usize)>> {
    check_exhaustive(g)?;
    brute_force_best_over(g, k, &all_pairs(g))
}

/// Greedy over every node pair with full recomputation per candidate.
pub fn naive_greedy(g: &Graph, k: u32, b: usize) -> Result<MergerPlan> {
    let cfg = RunConfig {
        budget: b,
        method: Method::Naive,
        ..RunConfig::new(k)
    };
    naive_greedy_observed(g, &cfg, &mut |_| {})
}

pub fn naive_greedy_observed(g: &Graph, cfg: &RunConfig, observer: &mut dyn FnMut(usize)) -> Result<MergerPlan> {
    cfg.validate()?;
    check_exhaustive(g)?;
    let k = cfg.k;
    let mut g = g.clone();
    let mut plan = MergerPlan::default();
    for round in 0..cfg.budget {
        let d = truss_decompose(&g);
        let current = d.k_truss_size(k);
        if round == 0 {
            plan.initial_size = current;
            plan.final_size = current;
        }
        let part = partition_nodes(&g, &d, k)?;
        let cands: Vec<CandidateMerger> = all_pairs(&g)
            .into_iter()
            .filter(|&(a, b)| cfg.admits(a, b))
            .map(|(a, b)| {
                let (ia, ib) = (part.is_inside[a as usize], part.is_inside[b as usize]);
                let (v1, v2, kind) = match (ia, ib) {
                    (true, true) => (a, b, MergeKind::Iim),
                    (true, false) => (a, b, MergeKind::Iom),
                    (false, true) => (b, a, MergeKind::Iom),
                    (false, false) => (a, b, MergeKind::Oom),
                };
                CandidateMerger {
                    v1,
                    v2,
                    kind,
                    score: 0,
                    tiebreak: 0,
                }
            })
            .collect();
        let sizes = par::map(&cands, |c| merged_truss_size(&g, k, c.v1, c.v2))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let Some(i) = select_best(&cands, &sizes) else {
            plan.skipped_rounds.push(round);
            observer(round);
            continue;
        };
        let c = cands[i];
        if !cfg.allow_no_op && sizes[i] <= current {
            plan.stopped_early = true;
            observer(round);
            break;
        }
        plan.final_size = sizes[i];
        plan.steps.push(MergeStep {
            round,
            v1: c.v1,
            v2: c.v2,
            kind: c.kind,
            size_after: sizes[i],
            n_io: None,
            evaluated: cands.len(),
            inside: part.inside.len(),
            pruned_outside: 0,
        });
        observer(round);
        if plan.steps.len() == cfg.budget {
            break;
        }
        g.merge(c.v1, c.v2)?;
    }
    Ok(plan)
}

fn candidate(v1: NodeId, v2: NodeId, kind: MergeKind, score: i64, tiebreak: i64) -> CandidateMerger {
    CandidateMerger {
        v1,
        v2,
        kind,
        score,
        tiebreak,
    }
}

/// Maps an index of the pool `C(inside, 2) ∪ inside × outside` to its pair.
fn pool_pair(inside: &[NodeId], outside: &[NodeId], mut idx: usize) -> CandidateMerger {
    let n = inside.len();
    for a in 0..n {
        let row = n - 1 - a;
        if idx < row {
            return candidate(inside[a], inside[a + 1 + idx], MergeKind::Iim, 0, 0);
        }
        idx -= row;
    }
    let (a, b) = (idx / outside.len(), idx % outside.len());
    candidate(inside[a], outside[b], MergeKind::Iom, 0, 0)
}

/// Uniform sampling of `n_c` candidates per round from all inside-inside
/// pairs and all inside × pruned-outside pairs.
pub fn baseline_rd(g: &Graph, cfg: &RunConfig) -> Result<MergerPlan> {
    baseline_rd_observed(g, cfg, &mut |_| {})
}

pub fn baseline_rd_observed(g: &Graph, cfg: &RunConfig, observer: &mut dyn FnMut(usize)) -> Result<MergerPlan> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    greedy_rounds(
        g,
        cfg,
        None,
        |ctx, _| {
            let inside = &ctx.partition().inside;
            let outside = ctx.pruned_outside();
            let n = inside.len();
            let total = n * n.saturating_sub(1) / 2 + n * outside.len();
            if cfg.filter.as_ref().is_some_and(|f| f.is_active()) {
                let pool: Vec<CandidateMerger> = (0..total)
                    .map(|i| pool_pair(inside, outside, i))
                    .filter(|c| cfg.admits(c.v1, c.v2))
                    .collect();
                let take = cfg.n_c.min(pool.len());
                index::sample(&mut rng, pool.len(), take)
                    .into_iter()
                    .map(|i| pool[i])
                    .collect()
            } else {
                let take = cfg.n_c.min(total);
                index::sample(&mut rng, total, take)
                    .into_iter()
                    .map(|i| pool_pair(inside, outside, i))
                    .collect()
            }
        },
        observer,
    )
}

fn top_pools(ctx: &ScoringContext<'_>, cfg: &RunConfig) -> (Vec<NodeId>, Vec<NodeId>) {
    let mut inside = ctx.top_inside_nodes(cfg.n_i);
    inside.sort_unstable();
    (inside, ctx.top_outside_nodes(cfg.n_o))
}

fn rank_and_truncate(mut cands: Vec<CandidateMerger>, n_c: usize) -> Vec<CandidateMerger> {
    cands.sort_unstable_by(|x, y| {
        y.score
            .cmp(&x.score)
            .then((x.v1.min(x.v2), x.v1.max(x.v2)).cmp(&(y.v1.min(y.v2), y.v1.max(y.v2))))
    });
    cands.truncate(n_c);
    cands
}

/// Inside-outside candidates ranked by the number of new edges they
/// create among inside nodes, `|Z|`.
pub fn baseline_ne(g: &Graph, cfg: &RunConfig) -> Result<MergerPlan> {
    baseline_ne_observed(g, cfg, &mut |_| {})
}

pub fn baseline_ne_observed(g: &Graph, cfg: &RunConfig, observer: &mut dyn FnMut(usize)) -> Result<MergerPlan> {
    greedy_rounds(
        g,
        cfg,
        None,
        |ctx, _| {
            let (inside, outside) = top_pools(ctx, cfg);
            let pairs: Vec<(NodeId, NodeId)> = inside
                .iter()
                .flat_map(|&a| outside.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| cfg.admits(a, b))
                .collect();
            let cands = par::map(&pairs, |&(a, b)| {
                let z = ctx.new_inside_neighbors(a, b).expect("pool nodes are valid").len() as i64;
                candidate(a, b, MergeKind::Iom, z, z)
            });
            rank_and_truncate(cands, cfg.n_c)
        },
        observer,
    )
}

/// Number of edges with both endpoints in `set`.
fn edges_within(g: &Graph, set: &[NodeId]) -> usize {
    set.iter()
        .map(|&x| intersection_count(g.adjacent(x), set))
        .sum::<usize>()
        / 2
}

/// Change in the number of triangles whose nodes all lie in the current
/// (k-1)-truss (with the survivor counted as a member) caused by merging
/// `v2` into `v1`.
pub fn nt_score(ctx: &ScoringContext<'_>, v1: NodeId, v2: NodeId) -> Result<i64> {
    let g = ctx.graph();
    if v1 == v2 {
        return Err(Error::SelfMerge(v1));
    }
    g.neighbors(v1)?;
    g.neighbors(v2)?;
    let part = ctx.partition();
    let (in1, in2) = (part.is_inside[v1 as usize], part.is_inside[v2 as usize]);
    let a1 = ctx.inside_nbrs(v1);
    let a2 = ctx.inside_nbrs(v2);
    let mut before = 0i64;
    if in1 {
        before += edges_within(g, a1) as i64;
    }
    if in2 {
        before += edges_within(g, a2) as i64;
    }
    if in1 && in2 && g.has_edge(v1, v2) {
        before -= intersection_count(a1, a2) as i64;
    }
    let mut joined = union(a1, a2);
    joined = difference(&joined, &[v1.min(v2), v1.max(v2)]);
    let after = edges_within(g, &joined) as i64;
    Ok(after - before)
}

/// Inside-inside and inside-outside candidates ranked by the increase in
/// triangles among inside nodes.
pub fn baseline_nt(g: &Graph, cfg: &RunConfig) -> Result<MergerPlan> {
    baseline_nt_observed(g, cfg, &mut |_| {})
}

pub fn baseline_nt_observed(g: &Graph, cfg: &RunConfig, observer: &mut dyn FnMut(usize)) -> Result<MergerPlan> {
    greedy_rounds(
        g,
        cfg,
        None,
        |ctx, _| {
            let (inside, outside) = top_pools(ctx, cfg);
            let mut pairs: Vec<(NodeId, NodeId, MergeKind)> = Vec::new();
            for (i, &a) in inside.iter().enumerate() {
                for &b in &inside[i + 1..] {
                    pairs.push((a, b, MergeKind::Iim));
                }
            }
            for &a in &inside {
                for &b in &outside {
                    pairs.push((a, b, MergeKind::Iom));
                }
            }
            pairs.retain(|&(a, b, _)| cfg.admits(a, b));
            let cands = par::map(&pairs, |&(a, b, kind)| {
                let s = nt_score(ctx, a, b).expect("pool nodes are valid");
                candidate(a, b, kind, s, 0)
            });
            rank_and_truncate(cands, cfg.n_c)
        },
        observer,
    )
}

/// A maximum-coverage instance to be turned into a hardness graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureSpec {
    /// Sets over elements `1..=elements`.
    pub sets: Vec<Vec<usize>>,
    pub elements: usize,
    pub k: u32,
    /// Copies per element side.
    pub d: usize,
    /// Hub nodes joined to every element node; `k - 3` by default.
    pub r_nodes: usize,
}

impl FixtureSpec {
    pub fn new(sets: Vec<Vec<usize>>, k: u32, d: usize) -> Self {
        let elements = sets.iter().flatten().copied().max().unwrap_or(0);
        FixtureSpec {
            sets,
            elements,
            k,
            d,
            r_nodes: k.saturating_sub(3) as usize,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidK(self.k));
        }
        if self.d == 0 {
            return Err(Error::InvalidConfig("fixture width d must be at least 1"));
        }
        if self.sets.iter().flatten().any(|&j| j == 0 || j > self.elements) {
            return Err(Error::InvalidConfig("fixture elements must lie in 1..=m"));
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        2 * self.d * self.elements + 2 * self.sets.len() + self.r_nodes
    }
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub spec: FixtureSpec,
    pub graph: Graph,
    /// Label of every node id.
    pub labels: Vec<String>,
    /// `(s_i1, s_i2)` for every set, in input order.
    pub set_pairs: Vec<(NodeId, NodeId)>,
}

impl Fixture {
    /// Pairs to merge for covering with the given sets (0-based).
    pub fn cover_pairs(&self, chosen: &[usize]) -> Vec<(NodeId, NodeId)> {
        chosen.iter().map(|&i| self.set_pairs[i]).collect()
    }
}

/// Element `j` gets `d` nodes on each of two sides, joined across sides
/// except between copies with the same index. Set `i` gets one node per
/// side, joined to that side's copies of its elements. The hub nodes are
/// joined to every element node. Merging the two nodes of a set turns
/// every element group it covers into a dense k-truss.
pub fn hardness_fixture(spec: &FixtureSpec) -> Result<Fixture> {
    spec.validate()?;
    let (m, d) = (spec.elements, spec.d);
    let t = |j: usize, p: usize, side: usize| ((j - 1) * 2 * d + side * d + p) as NodeId;
    let mut labels = Vec::with_capacity(spec.node_count());
    for j in 1..=m {
        for side in 1..=2 {
            for p in 1..=d {
                labels.push(format!("t{j}.{p}.{side}"));
            }
        }
    }
    let mut edges = Vec::new();
    for j in 1..=m {
        for p in 0..d {
            for q in 0..d {
                if p != q {
                    edges.push((t(j, p, 0), t(j, q, 1)));
                }
            }
        }
    }
    let mut set_pairs = Vec::new();
    for (i, set) in spec.sets.iter().enumerate() {
        let s1 = labels.len() as NodeId;
        labels.push(format!("s{}.1", i + 1));
        let s2 = labels.len() as NodeId;
        labels.push(format!("s{}.2", i + 1));
        for &j in set {
            for p in 0..d {
                edges.push((s1, t(j, p, 0)));
                edges.push((s2, t(j, p, 1)));
            }
        }
        set_pairs.push((s1, s2));
    }
    for q in 0..spec.r_nodes {
        let r = labels.len() as NodeId;
        labels.push(format!("r{}", q + 1));
        for v in 0..(2 * d * m) as NodeId {
            edges.push((r, v));
        }
    }
    let graph = Graph::from_edges(labels.len(), edges);
    Ok(Fixture {
        spec: spec.clone(),
        graph,
        labels,
        set_pairs,
    })
}

/// Smallest copy width for which [`nonsubmodularity_witness`] holds.
pub const WITNESS_D: usize = 4;

/// A concrete instance where the objective's marginal gain grows with the
/// base set: `f(X ∪ {x}) - f(X) = 0 < f(Y ∪ {x}) - f(Y)` with `X ⊂ Y`.
#[derive(Debug, Clone)]
pub struct Witness {
    pub fixture: Fixture,
    pub k: u32,
    pub smaller: Vec<(NodeId, NodeId)>,
    pub larger: Vec<(NodeId, NodeId)>,
    pub extra: (NodeId, NodeId),
}

pub fn nonsubmodularity_witness() -> Witness {
    nonsubmodularity_witness_with(WITNESS_D).expect("witness width is valid")
}

/// Sets `{1,2}, {2,3}, {3,4}` with a single hub node, evaluated at `k = 5`.
/// The first set alone does not reach the 5-truss and neither does the
/// third on top of it; the second and third together cover element 3
/// from both sides and do.
pub fn nonsubmodularity_witness_with(d: usize) -> Result<Witness> {
    let spec = FixtureSpec {
        r_nodes: 1,
        ..FixtureSpec::new(alloc::vec![alloc::vec![1, 2], alloc::vec![2, 3], alloc::vec![3, 4]], 5, d)
    };
    let fixture = hardness_fixture(&spec)?;
    let smaller = fixture.cover_pairs(&[0]);
    let larger = fixture.cover_pairs(&[0, 1]);
    let extra = fixture.set_pairs[2];
    Ok(Witness {
        fixture,
        k: 5,
        smaller,
        larger,
        extra,
    })
}
