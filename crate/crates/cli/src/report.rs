//! JSON reports and CSV traces.

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};
use trussmerge_core::{MergerPlan, NodeId, RunConfig, TrussDecomposition};

use crate::error::{CliError, Result};
use crate::io::Dataset;

pub const REPORT_SCHEMA: u32 = 1;
pub const CSV_SCHEMA: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub version: String,
    pub command: String,
    pub config: ConfigEcho,
    pub dataset: DatasetStats,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanReport>,
    /// Wall time per phase in seconds.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

/// Flags that influence the result. Thread count is deliberately absent
/// so reports compare equal across pool sizes.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub input: Option<String>,
    pub ks: Vec<u32>,
    pub budget: Option<usize>,
    pub n_i: Option<usize>,
    pub n_o: Option<usize>,
    pub n_c: Option<usize>,
    pub method: Option<String>,
    pub seed: Option<u64>,
    pub coords: Option<String>,
    pub dist_threshold_km: Option<f64>,
    pub literal_heuristics: Option<bool>,
    pub allow_no_op: Option<bool>,
}

impl ConfigEcho {
    pub fn from_run(input: &str, cfg: &RunConfig, coords: Option<&str>) -> Self {
        ConfigEcho {
            input: Some(input.to_owned()),
            ks: vec![cfg.k],
            budget: Some(cfg.budget),
            n_i: Some(cfg.n_i),
            n_o: Some(cfg.n_o),
            n_c: Some(cfg.n_c),
            method: Some(cfg.method.to_string()),
            seed: Some(cfg.seed),
            coords: coords.map(str::to_owned),
            dist_threshold_km: cfg.filter.as_ref().and_then(|f| f.threshold_km),
            literal_heuristics: Some(cfg.heuristics == trussmerge_core::Heuristics::Literal),
            allow_no_op: Some(cfg.allow_no_op),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrussRow {
    pub k: u32,
    pub nodes: usize,
    pub edges: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub nodes: usize,
    pub edges: usize,
    pub kmax: u32,
    pub truss: Vec<TrussRow>,
}

impl DatasetStats {
    pub fn new(dataset: &Dataset, d: &TrussDecomposition, ks: &[u32]) -> Self {
        DatasetStats {
            nodes: dataset.graph.node_count(),
            edges: dataset.graph.edge_count(),
            kmax: d.kmax(),
            truss: ks
                .iter()
                .map(|&k| TrussRow {
                    k,
                    nodes: d.k_truss_nodes(k).len(),
                    edges: d.k_truss_size(k),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    /// Zero-based solver round.
    pub round: usize,
    /// Survivor label.
    pub keep: String,
    /// Label of the node merged away.
    pub absorb: String,
    pub kind: String,
    pub size_after: usize,
    pub n_io: Option<usize>,
    pub evaluated: usize,
    pub inside: usize,
    pub pruned_outside: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanReport {
    pub method: String,
    pub k: u32,
    pub initial_size: usize,
    pub final_size: usize,
    pub gain: i64,
    pub skipped_rounds: Vec<usize>,
    pub stopped_early: bool,
    pub steps: Vec<StepReport>,
}

impl PlanReport {
    pub fn new(plan: &MergerPlan, cfg: &RunConfig, dataset: &Dataset) -> Self {
        PlanReport {
            method: cfg.method.to_string(),
            k: cfg.k,
            initial_size: plan.initial_size,
            final_size: plan.final_size,
            gain: plan.gain(),
            skipped_rounds: plan.skipped_rounds.clone(),
            stopped_early: plan.stopped_early,
            steps: plan
                .steps
                .iter()
                .map(|s| StepReport {
                    round: s.round,
                    keep: dataset.label(s.v1).to_owned(),
                    absorb: dataset.label(s.v2).to_owned(),
                    kind: s.kind.as_str().to_owned(),
                    size_after: s.size_after,
                    n_io: s.n_io,
                    evaluated: s.evaluated,
                    inside: s.inside,
                    pruned_outside: s.pruned_outside,
                })
                .collect(),
        }
    }

    /// The merge sequence mapped back to dataset ids.
    pub fn pairs(&self, dataset: &Dataset) -> Result<Vec<(NodeId, NodeId)>> {
        let index = dataset.index();
        let id = |l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| CliError::Usage(format!("plan label `{l}` is not in the dataset")))
        };
        self.steps
            .iter()
            .map(|s| Ok((id(&s.keep)?, id(&s.absorb)?)))
            .collect()
    }
}

impl RunReport {
    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Per-step CSV trace of a plan.
pub fn write_plan_trace<W: Write>(w: W, plan: &PlanReport) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "schema", "step", "keep", "absorb", "kind", "size_after", "n_io", "evaluated",
    ])?;
    out.write_record([CSV_SCHEMA, "0", "", "", "", &plan.initial_size.to_string(), "", ""])?;
    for (i, s) in plan.steps.iter().enumerate() {
        out.write_record([
            CSV_SCHEMA.to_owned(),
            (i + 1).to_string(),
            s.keep.clone(),
            s.absorb.clone(),
            s.kind.clone(),
            s.size_after.to_string(),
            s.n_io.map(|x| x.to_string()).unwrap_or_default(),
            s.evaluated.to_string(),
        ])?;
    }
    out.flush().map_err(|e| CliError::Output(e.to_string()))
}
