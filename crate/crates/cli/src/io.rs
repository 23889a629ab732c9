//! Edge-list and coordinate files.
//!
//! Edge lists are whitespace separated `a b [ignored...]` lines; blank lines
//! and lines starting with `#` or `%` are skipped. Labels are kept as the
//! strings that appear in the file and get ids in order of first use.
//! Self-loops and repeated edges are dropped.

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use trussmerge_core::{Graph, NodeId};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub graph: Graph,
    pub labels: Vec<String>,
}

impl Dataset {
    pub fn index(&self) -> HashMap<&str, NodeId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as NodeId))
            .collect()
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v as usize]
    }
}

fn skip(line: &str) -> bool {
    line.is_empty() || line.starts_with('#') || line.starts_with('%')
}

pub fn parse_edge_list(text: &str, path: &Path) -> Result<Dataset> {
    let mut ids: HashMap<String, NodeId> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    let mut id_of = |s: &str| {
        *ids.entry(s.to_owned()).or_insert_with(|| {
            labels.push(s.to_owned());
            (labels.len() - 1) as NodeId
        })
    };
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if skip(line) {
            continue;
        }
        let mut tok = line.split_whitespace();
        let (Some(a), Some(b)) = (tok.next(), tok.next()) else {
            return Err(CliError::Parse {
                path: path.to_owned(),
                line: no + 1,
                message: format!("expected two node labels, found `{line}`"),
            });
        };
        let (a, b) = (id_of(a), id_of(b));
        edges.push((a, b));
    }
    let graph = Graph::from_edges(labels.len(), edges);
    Ok(Dataset { graph, labels })
}

pub fn read_edge_list(path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_edge_list(&text, path)
}

/// One `a b` line per edge in canonical order, preceded by a header comment.
pub fn write_edge_list<W: Write>(mut w: W, graph: &Graph, labels: &[String]) -> std::io::Result<()> {
    writeln!(w, "# nodes {} edges {}", graph.node_count(), graph.edge_count())?;
    for e in graph.edges() {
        writeln!(w, "{} {}", labels[e.u as usize], labels[e.v as usize])?;
    }
    Ok(())
}

/// Reads `label lat lon` lines. Labels missing from the dataset are ignored;
/// dataset nodes missing from the file get `None`.
pub fn read_coordinates(path: &Path, dataset: &Dataset) -> Result<Vec<Option<(f64, f64)>>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let index = dataset.index();
    let mut coords = vec![None; dataset.labels.len()];
    for (no, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if skip(line) {
            continue;
        }
        let bad = |message: String| CliError::Parse {
            path: path.to_owned(),
            line: no + 1,
            message,
        };
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() < 3 {
            return Err(bad(format!("expected `label lat lon`, found `{line}`")));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("`{s}` is not a number")));
        let (lat, lon) = (num(tok[1])?, num(tok[2])?);
        if !(-90.0..=90.0).contains(&lat) || !(-180.0..=180.0).contains(&lon) {
            return Err(bad(format!("coordinate ({lat}, {lon}) out of range")));
        }
        if let Some(&v) = index.get(tok[0]) {
            coords[v as usize] = Some((lat, lon));
        }
    }
    Ok(coords)
}
