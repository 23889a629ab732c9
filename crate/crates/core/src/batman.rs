//! The greedy merger loop with adaptive candidate distribution.
//!
//! Each round re-decomposes the current graph, generates inside-outside
//! and inside-inside candidates, evaluates every candidate exactly on the
//! restricted graph and executes the best one. The share `n_io` of the
//! per-round candidate budget given to inside-outside mergers moves toward
//! whichever kind won the previous round.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::baselines;
use crate::candidates::{CandidateMerger, ConstraintFilter, Heuristics, ScoringContext};
use crate::decomposition::{truss_decompose, MergeEvaluator};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::par;

pub use crate::candidates::MergeKind;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum Method {
    /// Adaptive candidate distribution.
    #[default]
    Bm,
    /// Candidate budget split evenly between the two kinds.
    Eq,
    /// Inside-inside candidates only.
    Ii,
    /// Inside-outside candidates only.
    Io,
    /// Uniformly sampled candidates.
    Rd,
    /// Inside-outside candidates ranked by new inside edges.
    Ne,
    /// Candidates ranked by new triangles among inside nodes.
    Nt,
    /// Every pair, evaluated by full recomputation.
    Naive,
}

impl Method {
    pub const ALL: [Method; 8] = [
        Method::Bm,
        Method::Eq,
        Method::Ii,
        Method::Io,
        Method::Rd,
        Method::Ne,
        Method::Nt,
        Method::Naive,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Bm => "BM",
            Method::Eq => "EQ",
            Method::Ii => "II",
            Method::Io => "IO",
            Method::Rd => "RD",
            Method::Ne => "NE",
            Method::Nt => "NT",
            Method::Naive => "NAIVE",
        }
    }

    /// Whether the method uses the random seed.
    pub fn is_randomized(&self) -> bool {
        matches!(self, Method::Rd)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or(Error::InvalidConfig("unknown method"))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub k: u32,
    /// Maximum number of mergers.
    pub budget: usize,
    /// Inside nodes considered per round.
    pub n_i: usize,
    /// Pruned outside nodes considered per round.
    pub n_o: usize,
    /// Candidates evaluated per round.
    pub n_c: usize,
    pub method: Method,
    pub seed: u64,
    pub filter: Option<ConstraintFilter>,
    pub heuristics: Heuristics,
    /// Execute the best candidate even when it does not grow the truss.
    pub allow_no_op: bool,
}

impl RunConfig {
    pub fn new(k: u32) -> Self {
        RunConfig {
            k,
            ..RunConfig::default()
        }
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 3 {
            return Err(Error::InvalidK(self.k));
        }
        if self.budget == 0 {
            return Err(Error::InvalidConfig("budget must be at least 1"));
        }
        if self.method != Method::Naive && (self.n_c == 0 || self.n_i == 0 || self.n_o == 0) {
            return Err(Error::InvalidConfig("candidate counts must be at least 1"));
        }
        Ok(())
    }

    pub(crate) fn admits(&self, a: NodeId, b: NodeId) -> bool {
        self.filter.as_ref().map_or(true, |f| f.admits(a, b))
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            k: 10,
            budget: 10,
            n_i: 100,
            n_o: 50,
            n_c: 10,
            method: Method::Bm,
            seed: 0,
            filter: None,
            heuristics: Heuristics::Semantic,
            allow_no_op: true,
        }
    }
}

/// One executed merger; `v2` is merged into `v1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MergeStep {
    pub round: usize,
    pub v1: NodeId,
    pub v2: NodeId,
    pub kind: MergeKind,
    /// `|E(T_k)|` right after this merger.
    pub size_after: usize,
    /// Inside-outside share of the candidate budget used in this round.
    pub n_io: Option<usize>,
    pub evaluated: usize,
    pub inside: usize,
    pub pruned_outside: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MergerPlan {
    pub initial_size: usize,
    pub final_size: usize,
    pub steps: Vec<MergeStep>,
    /// Rounds in which no candidate was available.
    pub skipped_rounds: Vec<usize>,
    /// Set when the run stopped because no candidate grew the truss.
    pub stopped_early: bool,
}

impl MergerPlan {
    /// Executed pairs in order, in the ids of the input graph.
    pub fn pairs(&self) -> Vec<(NodeId, NodeId)> {
        self.steps.iter().map(|s| (s.v1, s.v2)).collect()
    }

    pub fn gain(&self) -> i64 {
        self.final_size as i64 - self.initial_size as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ObjectiveValue {
    pub size: usize,
}

/// `|E(T_k)|` after applying `pairs` to a copy of `g`.
pub fn objective(g: &Graph, k: u32, pairs: &[(NodeId, NodeId)]) -> Result<ObjectiveValue> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    let mut h = g.clone();
    h.merge_all(pairs)?;
    Ok(ObjectiveValue {
        size: truss_decompose(&h).k_truss_size(k),
    })
}

/// Next inside-outside share after a round won by `winner`.
pub fn adaptive_update(n_io: usize, winner: MergeKind, n_c: usize, b: usize) -> usize {
    let step = n_c / b.max(1);
    match winner {
        MergeKind::Iom => {
            let cap = (n_c * b.saturating_sub(1)).div_ceil(b.max(1));
            (n_io + step).min(cap)
        }
        MergeKind::Iim => n_io.saturating_sub(step).max(step),
        MergeKind::Oom => n_io,
    }
}

/// How the candidate budget is split between the two kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Schedule {
    Adaptive,
    Pinned(usize),
}

impl Schedule {
    pub fn for_method(method: Method, n_c: usize) -> Option<Schedule> {
        match method {
            Method::Bm => Some(Schedule::Adaptive),
            Method::Eq => Some(Schedule::Pinned(n_c / 2)),
            Method::Ii => Some(Schedule::Pinned(0)),
            Method::Io => Some(Schedule::Pinned(n_c)),
            _ => None,
        }
    }

    fn initial(&self, n_c: usize) -> usize {
        match *self {
            Schedule::Adaptive => n_c / 2,
            Schedule::Pinned(n) => n.min(n_c),
        }
    }
}

/// Picks the candidate with the largest evaluation; ties go to the
/// smaller unordered pair.
pub(crate) fn select_best(cands: &[CandidateMerger], sizes: &[usize]) -> Option<usize> {
    let key = |i: usize| {
        let c = &cands[i];
        (c.v1.min(c.v2), c.v1.max(c.v2))
    };
    (0..cands.len()).reduce(|best, i| {
        if sizes[i] > sizes[best] || (sizes[i] == sizes[best] && key(i) < key(best)) {
            i
        } else {
            best
        }
    })
}

/// The shared greedy loop: `select` produces the round's candidates from
/// the scoring context and the current inside-outside share.
pub(crate) fn greedy_rounds<S>(
    g: &Graph,
    cfg: &RunConfig,
    schedule: Option<Schedule>,
    mut select: S,
    observer: &mut dyn FnMut(usize),
) -> Result<MergerPlan>
where
    S: FnMut(&ScoringContext<'_>, usize) -> Vec<CandidateMerger>,
{
    cfg.validate()?;
    let k = cfg.k;
    let mut g = g.clone();
    let mut n_io = schedule.map_or(0, |s| s.initial(cfg.n_c));
    let mut plan = MergerPlan::default();
    for round in 0..cfg.budget {
        let d = truss_decompose(&g);
        let current = d.k_truss_size(k);
        if round == 0 {
            plan.initial_size = current;
            plan.final_size = current;
        }
        let (step, winner) = {
            let ctx = ScoringContext::new(&g, &d, k, cfg.heuristics)?;
            let cands = select(&ctx, n_io);
            let eval = MergeEvaluator::new(&g, &d, k)?;
            let sizes = par::map(&cands, |c| eval.evaluate(c.v1, c.v2))
                .into_iter()
                .collect::<Result<Vec<usize>>>()?;
            match select_best(&cands, &sizes) {
                None => (None, None),
                Some(i) => {
                    let c = cands[i];
                    let step = MergeStep {
                        round,
                        v1: c.v1,
                        v2: c.v2,
                        kind: c.kind,
                        size_after: sizes[i],
                        n_io: schedule.map(|_| n_io),
                        evaluated: cands.len(),
                        inside: ctx.partition().inside.len(),
                        pruned_outside: ctx.pruned_outside().len(),
                    };
                    (Some(step), Some(c.kind))
                }
            }
        };
        let Some(step) = step else {
            plan.skipped_rounds.push(round);
            observer(round);
            continue;
        };
        if !cfg.allow_no_op && step.size_after <= current {
            plan.stopped_early = true;
            observer(round);
            break;
        }
        plan.final_size = step.size_after;
        plan.steps.push(step);
        observer(round);
        if plan.steps.len() == cfg.budget {
            break;
        }
        g.merge(step.v1, step.v2)?;
        if let (Some(Schedule::Adaptive), Some(kind)) = (schedule, winner) {
            n_io = adaptive_update(n_io, kind, cfg.n_c, cfg.budget);
        }
    }
    Ok(plan)
}

/// Runs the BATMAN loop. `cfg.method` selects the candidate split:
/// adaptive for `Bm`, pinned for `Eq`, `Ii` and `Io`.
pub fn batman(g: &Graph, cfg: &RunConfig) -> Result<MergerPlan> {
    batman_observed(g, cfg, &mut |_| {})
}

pub fn batman_observed(g: &Graph, cfg: &RunConfig, observer: &mut dyn FnMut(usize)) -> Result<MergerPlan> {
    let schedule = Schedule::for_method(cfg.method, cfg.n_c)
        .ok_or(Error::InvalidConfig("method is not a BATMAN variant"))?;
    batman_with_schedule(g, cfg, schedule, observer)
}

pub fn batman_with_schedule(
    g: &Graph,
    cfg: &RunConfig,
    schedule: Schedule,
    observer: &mut dyn FnMut(usize),
) -> Result<MergerPlan> {
    let filter = cfg.filter.as_ref();
    greedy_rounds(
        g,
        cfg,
        Some(schedule),
        |ctx, n_io| {
            let n_io = n_io.min(cfg.n_c);
            let mut cands = ctx.find_iom_candidates(cfg.n_i, cfg.n_o, n_io, filter);
            cands.extend(ctx.find_iim_candidates(cfg.n_i, cfg.n_c - n_io, filter));
            cands
        },
        observer,
    )
}

/// Runs whichever method `cfg.method` names.
pub fn run(g: &Graph, cfg: &RunConfig) -> Result<MergerPlan> {
    run_observed(g, cfg, &mut |_| {})
}

/// [`run`] with a callback invoked once at the end of every round.
pub fn run_observed(g: &Graph, cfg: &RunConfig, observer: &mut dyn FnMut(usize)) -> Result<MergerPlan> {
    match cfg.method {
        Method::Bm | Method::Eq | Method::Ii | Method::Io => batman_observed(g, cfg, observer),
        Method::Rd => baselines::baseline_rd_observed(g, cfg, observer),
        Method::Ne => baselines::baseline_ne_observed(g, cfg, observer),
        Method::Nt => baselines::baseline_nt_observed(g, cfg, observer),
        Method::Naive => baselines::naive_greedy_observed(g, cfg, observer),
    }
}
