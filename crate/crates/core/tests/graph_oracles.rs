mod common;

use common::*;
use proptest::prelude::*;
use trussmerge_core::{Edge, Error, Graph, NodeId};

proptest! {
    #[test]
    fn neighbors_match_adjacency_matrix(g in graphs(2, 25, 0.3)) {
        let m = matrix(&g);
        for v in g.nodes() {
            let expected: Vec<NodeId> = (0..m.len()).filter(|&u| m[v as usize][u]).map(|u| u as NodeId).collect();
            prop_assert_eq!(g.neighbors(v).unwrap(), expected.as_slice());
        }
        prop_assert!(g.is_simple());
    }

    #[test]
    fn support_matches_triangle_enumeration(g in graphs(3, 20, 0.4)) {
        let m = matrix(&g);
        let n = m.len();
        for e in g.edges() {
            let (a, b) = (e.u as usize, e.v as usize);
            let mut triangles = 0;
            for c in 0..n {
                if m[a][c] && m[b][c] {
                    triangles += 1;
                }
            }
            prop_assert_eq!(g.support(e.u, e.v).unwrap(), triangles);
        }
    }

    #[test]
    fn merge_matches_two_step_oracle(g in graphs(2, 20, 0.35), a in 0usize..1000, b in 0usize..1000) {
        let n = g.capacity();
        let (v1, v2) = ((a % n) as NodeId, (b % n) as NodeId);
        prop_assume!(v1 != v2);
        let before_edges = g.edge_count();
        let common = common_count(&matrix(&g), v1 as usize, v2 as usize);
        let joined = g.has_edge(v1, v2) as usize;
        let merged = g.merged(v1, v2).unwrap();
        prop_assert!(merged.is_simple());
        prop_assert!(!merged.contains(v2));
        prop_assert_eq!(merged.node_count(), g.node_count() - 1);
        prop_assert_eq!(merged.edge_count(), before_edges - common - joined);
        prop_assert_eq!(edge_pairs(&merged), two_step_merge(&g, v1, v2));
    }

    #[test]
    fn disjoint_batches_are_order_independent(g in graphs(6, 18, 0.3), seed in any::<u64>()) {
        let n = g.capacity() as NodeId;
        let s = (seed % n as u64) as NodeId;
        let pairs = [(s, (s + 1) % n), ((s + 2) % n, (s + 3) % n), ((s + 4) % n, (s + 5) % n)];
        let mut forward = g.clone();
        forward.merge_all(&pairs).unwrap();
        let mut reversed = g.clone();
        let mut rev = pairs.to_vec();
        rev.reverse();
        reversed.merge_all(&rev).unwrap();
        prop_assert_eq!(edge_pairs(&forward), edge_pairs(&reversed));
    }

    #[test]
    fn edge_list_round_trip(g in graphs(1, 20, 0.3)) {
        let rebuilt = Graph::from_edges(g.capacity(), g.edges().map(|e| (e.u, e.v)));
        prop_assert_eq!(rebuilt, g);
    }
}

#[test]
fn chained_pairs_equal_merging_three_nodes() {
    // a=0, b=1, c=2, x=3; a-x, b-c, c-x
    let g = Graph::from_edges(4, [(0, 3), (1, 2), (2, 3)]);
    let mut chained = g.clone();
    let report = chained.merge_all(&[(0, 1), (1, 2)]).unwrap();
    assert_eq!(report.applied, vec![(0, 1), (0, 2)]);
    let mut direct = g.clone();
    direct.merge(0, 1).unwrap();
    direct.merge(0, 2).unwrap();
    assert_eq!(chained, direct);
    assert_eq!(chained.edges().collect::<Vec<_>>(), vec![Edge::new(0, 3)]);
}

#[test]
fn collapsed_pair_is_skipped() {
    let mut g = Graph::from_edges(3, [(0, 1), (1, 2)]);
    let report = g.merge_all(&[(0, 1), (1, 0)]).unwrap();
    assert_eq!(report.skipped, vec![1]);
}

#[test]
fn unknown_nodes_are_errors() {
    let g = Graph::from_edges(2, [(0, 1)]);
    assert_eq!(g.neighbors(5), Err(Error::UnknownNode(5)));
    assert_eq!(g.support(0, 5), Err(Error::UnknownNode(5)));
    assert_eq!(g.merged(0, 0).unwrap_err(), Error::SelfMerge(0));
}
