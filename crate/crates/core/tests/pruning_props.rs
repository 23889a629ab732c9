mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use trussmerge_core::baselines::merged_truss_size;
use trussmerge_core::{partition_nodes, prune_outside_maximal, truss_decompose, NodeId};

/// One representative (lowest id) per distinct maximal non-empty set,
/// by pairwise containment checks.
fn containment_oracle(outside: &[NodeId], sets: &[Vec<NodeId>]) -> Vec<NodeId> {
    let mut kept = Vec::new();
    for &v in outside {
        let s: BTreeSet<NodeId> = sets[v as usize].iter().copied().collect();
        if s.is_empty() {
            continue;
        }
        let mut keep = true;
        for &u in outside {
            if u == v {
                continue;
            }
            let t: BTreeSet<NodeId> = sets[u as usize].iter().copied().collect();
            if s.is_subset(&t) && (s != t || u < v) {
                keep = false;
                break;
            }
        }
        if keep {
            kept.push(v);
        }
    }
    kept.sort_unstable();
    kept
}

fn families() -> impl Strategy<Value = (Vec<NodeId>, Vec<Vec<NodeId>>)> {
    (1usize..=60, 1u32..=40).prop_flat_map(|(count, elems)| {
        proptest::collection::vec(proptest::collection::btree_set(0..elems, 0..8), count).prop_map(move |sets| {
            let base = elems as usize;
            let mut table = vec![Vec::new(); base + sets.len()];
            let mut outside = Vec::new();
            for (i, s) in sets.into_iter().enumerate() {
                table[base + i] = s.into_iter().collect();
                outside.push((base + i) as NodeId);
            }
            (outside, table)
        })
    })
}

proptest! {
    #[test]
    fn pruning_matches_containment_oracle((outside, table) in families()) {
        let got = prune_outside_maximal(&outside, &table);
        prop_assert_eq!(&got, &containment_oracle(&outside, &table));
        // antichain without duplicates
        for (i, &a) in got.iter().enumerate() {
            for &b in &got[i + 1..] {
                let (sa, sb): (BTreeSet<_>, BTreeSet<_>) =
                    (table[a as usize].iter().collect(), table[b as usize].iter().collect());
                prop_assert!(!sa.is_subset(&sb) && !sb.is_subset(&sa));
            }
        }
    }

    #[test]
    fn partition_matches_definition(g in graphs(2, 20, 0.45), k in 3u32..7) {
        let d = truss_decompose(&g);
        let p = partition_nodes(&g, &d, k).unwrap();
        let inside = inside_oracle(&g, k);
        for v in g.nodes() {
            prop_assert_eq!(p.is_inside[v as usize], inside[v as usize]);
            let nbrs: Vec<NodeId> = g.adjacent(v).iter().copied().filter(|&u| inside[u as usize]).collect();
            prop_assert_eq!(&p.inside_nbrs[v as usize], &nbrs);
        }
        prop_assert_eq!(p.inside.len() + p.outside.len(), g.node_count());
    }

    #[test]
    fn pruning_is_lossless_for_mergers_with_an_inside_node(g in graphs(4, 13, 0.45), k in 3u32..6) {
        let d = truss_decompose(&g);
        let p = partition_nodes(&g, &d, k).unwrap();
        let kept = prune_outside_maximal(&p.outside, &p.inside_nbrs);
        let best = |allowed: &dyn Fn(NodeId) -> bool| {
            let mut best = None::<usize>;
            for &a in &p.inside {
                for b in g.nodes() {
                    if a == b || (!p.is_inside[b as usize] && !allowed(b)) {
                        continue;
                    }
                    let s = merged_truss_size(&g, k, a, b).unwrap();
                    best = Some(best.map_or(s, |x: usize| x.max(s)));
                }
            }
            best
        };
        let full = best(&|_| true);
        let mut pruned = best(&|v| kept.binary_search(&v).is_ok());
        // merging with an outside node that has no inside neighbors keeps T_k
        if kept.is_empty() && !p.inside.is_empty() && !p.outside.is_empty() {
            let current = d.k_truss_size(k);
            pruned = Some(pruned.map_or(current, |x| x.max(current)));
        }
        prop_assert_eq!(full, pruned);
        for &v in &p.inside {
            prop_assert!(!kept.contains(&v));
        }
    }
}
