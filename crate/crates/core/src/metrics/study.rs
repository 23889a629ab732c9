//! Greedy metric improvement and truss-size correlation studies.

use alloc::vec::Vec;

use super::{pearson_r, MetricId};
use crate::batman::{run, RunConfig};
use crate::decomposition::truss_decompose;
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::par;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operation {
    Merge,
    AddEdge,
}

impl Operation {
    pub fn as_str(&self) -> &'static str {
        match self {
            Operation::Merge => "merge",
            Operation::AddEdge => "add",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyRound {
    pub round: usize,
    /// The pair merged or joined in this round, in the input graph's ids;
    /// `None` for the baseline row.
    pub pair: Option<(NodeId, NodeId)>,
    /// One value per entry of [`StudyTrace::metrics`].
    pub values: Vec<f64>,
    pub truss_size: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StudyTrace {
    pub metrics: Vec<MetricId>,
    /// Baseline row first.
    pub rounds: Vec<StudyRound>,
    /// Correlation of each metric with the truss size, when recorded.
    pub pearson_r: Vec<Option<f64>>,
}

impl StudyTrace {
    pub fn series(&self, metric: MetricId) -> Option<Vec<f64>> {
        let i = self.metrics.iter().position(|&m| m == metric)?;
        Some(self.rounds.iter().map(|r| r.values[i]).collect())
    }

    /// Improvement of `metric` after `round` operations relative to the
    /// baseline row, positive when the graph became more robust.
    pub fn improvement(&self, metric: MetricId, round: usize) -> Option<f64> {
        let s = self.series(metric)?;
        let v = *s.get(round)?;
        Some(if metric.higher_is_better() { v - s[0] } else { s[0] - v })
    }

    pub fn correlation(&self, metric: MetricId) -> Option<f64> {
        let i = self.metrics.iter().position(|&m| m == metric)?;
        self.pearson_r.get(i).copied().flatten()
    }
}

fn record(g: &Graph, metrics: &[MetricId]) -> Result<Vec<f64>> {
    metrics.iter().map(|m| m.evaluate(g)).collect()
}

/// Repeatedly applies the merger (or new edge) that improves `metric` the
/// most, evaluating every node pair (or every non-edge) each round. Runs
/// on the largest connected component; every row records all measures.
pub fn greedy_improve(g: &Graph, metric: MetricId, op: Operation, rounds: usize) -> Result<StudyTrace> {
    let (mut h, ids) = g.largest_component();
    let metrics: Vec<MetricId> = MetricId::ALL.to_vec();
    let mut trace = StudyTrace {
        rounds: alloc::vec![StudyRound {
            round: 0,
            pair: None,
            values: record(&h, &metrics)?,
            truss_size: None,
        }],
        metrics,
        pearson_r: Vec::new(),
    };
    for round in 1..=rounds {
        let nodes: Vec<NodeId> = h.nodes().collect();
        let mut pairs = Vec::new();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                if op == Operation::Merge || !h.has_edge(a, b) {
                    pairs.push((a, b));
                }
            }
        }
        let values = par::map(&pairs, |&(a, b)| {
            let mut c = h.clone();
            match op {
                Operation::Merge => c.merge(a, b)?,
                Operation::AddEdge => {
                    c.add_edge(a, b)?;
                }
            }
            metric.evaluate(&c)
        })
        .into_iter()
        .collect::<Result<Vec<f64>>>()?;
        let Some(best) = (0..pairs.len()).reduce(|b, i| if metric.better(values[i], values[b]) { i } else { b })
        else {
            break;
        };
        let (a, b) = pairs[best];
        match op {
            Operation::Merge => h.merge(a, b)?,
            Operation::AddEdge => {
                h.add_edge(a, b)?;
            }
        }
        trace.rounds.push(StudyRound {
            round,
            pair: Some((ids[a as usize], ids[b as usize])),
            values: record(&h, &trace.metrics)?,
            truss_size: None,
        });
    }
    Ok(trace)
}

/// Runs BATMAN for `rounds` mergers on the largest connected component
/// and records the k-truss size and the five robustness measures after
/// every merger.
pub fn correlation_study(g: &Graph, k: u32, rounds: usize) -> Result<StudyTrace> {
    let cfg = RunConfig {
        budget: rounds,
        ..RunConfig::new(k)
    };
    correlation_study_with(g, &cfg, &MetricId::ROBUSTNESS)
}

/// [`correlation_study`] with an explicit configuration and metric list;
/// `cfg.budget` is the number of mergers and `cfg.method` picks the solver.
pub fn correlation_study_with(g: &Graph, cfg: &RunConfig, metrics: &[MetricId]) -> Result<StudyTrace> {
    let (mut h, ids) = g.largest_component();
    let size = |h: &Graph| truss_decompose(h).k_truss_size(cfg.k);
    let mut rows = alloc::vec![StudyRound {
        round: 0,
        pair: None,
        values: record(&h, metrics)?,
        truss_size: Some(size(&h)),
    }];
    if cfg.budget > 0 {
        let plan = run(&h, cfg)?;
        for (i, step) in plan.steps.iter().enumerate() {
            h.merge(step.v1, step.v2)?;
            rows.push(StudyRound {
                round: i + 1,
                pair: Some((ids[step.v1 as usize], ids[step.v2 as usize])),
                values: record(&h, metrics)?,
                truss_size: Some(size(&h)),
            });
        }
    }
    let sizes: Vec<f64> = rows.iter().map(|r| r.truss_size.unwrap_or(0) as f64).collect();
    let pearson = (0..metrics.len())
        .map(|i| {
            let ys: Vec<f64> = rows.iter().map(|r| r.values[i]).collect();
            pearson_r(&sizes, &ys)
        })
        .collect();
    Ok(StudyTrace {
        metrics: metrics.to_vec(),
        rounds: rows,
        pearson_r: pearson,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::gen_er;

    #[test]
    fn zero_rounds_is_baseline_only() {
        let g = gen_er(20, 0.3, 1);
        let t = greedy_improve(&g, MetricId::Vb, Operation::Merge, 0).unwrap();
        assert_eq!(t.rounds.len(), 1);
        assert_eq!(t.rounds[0].values.len(), 8);
    }

    #[test]
    fn greedy_round_does_not_worsen_nc_under_addition() {
        let g = gen_er(15, 0.3, 2);
        let t = greedy_improve(&g, MetricId::Nc, Operation::AddEdge, 2).unwrap();
        assert!(t.improvement(MetricId::Nc, 2).unwrap() >= 0.0);
    }
}
