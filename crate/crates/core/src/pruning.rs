//! Inside/outside node classification and maximal-set pruning of outside nodes.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::decomposition::TrussDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Split of the alive nodes w.r.t. `k`: inside nodes belong to the
/// (k-1)-truss, everything else is outside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodePartition {
    pub k: u32,
    /// Sorted inside nodes.
    pub inside: Vec<NodeId>,
    /// Sorted outside nodes.
    pub outside: Vec<NodeId>,
    /// Indexed by node id.
    pub is_inside: Vec<bool>,
    /// `N(v) ∩ V(T_{k-1})` for every node id, sorted; empty for dead ids.
    pub inside_nbrs: Vec<Vec<NodeId>>,
}

pub fn partition_nodes(g: &Graph, d: &TrussDecomposition, k: u32) -> Result<NodePartition> {
    if k < 3 {
        return Err(Error::InvalidK(k));
    }
    let t = d.node_trussness();
    let mut is_inside = vec![false; g.capacity()];
    let (mut inside, mut outside) = (Vec::new(), Vec::new());
    for v in g.nodes() {
        if t[v as usize] + 1 >= k {
            is_inside[v as usize] = true;
            inside.push(v);
        } else {
            outside.push(v);
        }
    }
    let inside_nbrs = (0..g.capacity() as NodeId)
        .map(|v| {
            g.adjacent(v)
                .iter()
                .copied()
                .filter(|&u| is_inside[u as usize])
                .collect()
        })
        .collect();
    Ok(NodePartition {
        k,
        inside,
        outside,
        is_inside,
        inside_nbrs,
    })
}

/// Keeps one outside node per maximal inside neighborhood.
///
/// Duplicate neighborhoods collapse to their lowest id; nodes with no
/// inside neighbors are dropped. Maximality is tested with membership
/// lists: `m(u)` holds the indices of retained nodes adjacent to inside
/// node `u`, and `r(v) = ⋂_{u ∈ Ñ(v)} m(u)` lists every retained node whose
/// neighborhood contains `Ñ(v)`. `v` is maximal iff `r(v) = {v}`. The lists
/// are the sparse form of the bit-vector indicators, so space stays
/// linear in the total neighborhood size.
///
/// Returns the kept nodes in ascending order.
pub fn prune_outside_maximal(outside: &[NodeId], inside_nbrs: &[Vec<NodeId>]) -> Vec<NodeId> {
    let mut sorted: Vec<NodeId> = outside.to_vec();
    sorted.sort_unstable();
    sorted.dedup();

    let mut seen: BTreeMap<&[NodeId], ()> = BTreeMap::new();
    let mut retained: Vec<NodeId> = Vec::new();
    for &v in &sorted {
        let nbrs = inside_nbrs[v as usize].as_slice();
        if nbrs.is_empty() {
            continue;
        }
        if seen.insert(nbrs, ()).is_none() {
            retained.push(v);
        }
    }

    let mut membership: Vec<Vec<u32>> = vec![Vec::new(); inside_nbrs.len()];
    for (i, &v) in retained.iter().enumerate() {
        for &u in &inside_nbrs[v as usize] {
            membership[u as usize].push(i as u32);
        }
    }

    retained
        .iter()
        .enumerate()
        .filter(|&(i, &v)| {
            let nbrs = &inside_nbrs[v as usize];
            let shortest = nbrs
                .iter()
                .min_by_key(|&&u| membership[u as usize].len())
                .expect("retained nodes have inside neighbors");
            let mut r: Vec<u32> = membership[*shortest as usize].clone();
            for &u in nbrs {
                if r.len() == 1 {
                    break;
                }
                let m = &membership[u as usize];
                r.retain(|x| m.binary_search(x).is_ok());
            }
            r.len() == 1 && r[0] == i as u32
        })
        .map(|(_, &v)| v)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::truss_decompose;

    fn k5_with_pendant() -> Graph {
        let mut edges = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                edges.push((a, b));
            }
        }
        edges.push((0, 5));
        Graph::from_edges(6, edges)
    }

    #[test]
    fn k5_all_inside() {
        let g = k5_with_pendant();
        let d = truss_decompose(&g);
        let p = partition_nodes(&g, &d, 5).unwrap();
        assert_eq!(p.inside, vec![0, 1, 2, 3, 4]);
        assert_eq!(p.outside, vec![5]);
        assert_eq!(p.inside_nbrs[5], vec![0]);
    }

    #[test]
    fn rejects_small_k() {
        let g = k5_with_pendant();
        let d = truss_decompose(&g);
        assert_eq!(partition_nodes(&g, &d, 2), Err(Error::InvalidK(2)));
    }

    fn nbrs(sets: &[(NodeId, &[NodeId])]) -> (Vec<NodeId>, Vec<Vec<NodeId>>) {
        let mut table = vec![Vec::new(); 20];
        let mut outside = Vec::new();
        for (v, s) in sets {
            table[*v as usize] = s.to_vec();
            outside.push(*v);
        }
        (outside, table)
    }

    #[test]
    fn strict_containment_keeps_superset() {
        let (o, t) = nbrs(&[(10, &[1]), (11, &[1, 2])]);
        assert_eq!(prune_outside_maximal(&o, &t), vec![11]);
    }

    #[test]
    fn duplicates_keep_lowest_id() {
        let (o, t) = nbrs(&[(12, &[1, 2]), (11, &[1, 2])]);
        assert_eq!(prune_outside_maximal(&o, &t), vec![11]);
    }

    #[test]
    fn empty_neighborhoods_dropped() {
        let (o, t) = nbrs(&[(10, &[]), (11, &[3])]);
        assert_eq!(prune_outside_maximal(&o, &t), vec![11]);
    }

    #[test]
    fn incomparable_sets_all_kept() {
        let (o, t) = nbrs(&[(10, &[1, 2]), (11, &[2, 3]), (12, &[1, 3])]);
        assert_eq!(prune_outside_maximal(&o, &t), vec![10, 11, 12]);
    }
}
