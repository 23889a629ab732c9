//! Brute-force oracles and generators shared by the integration tests.
//! Everything here works on dense boolean adjacency matrices and repeated
//! rescans, sharing no code with the library's algorithms.

#![allow(dead_code)]

use proptest::prelude::*;
use trussmerge_core::{Graph, NodeId};

pub type Matrix = Vec<Vec<bool>>;

pub fn matrix(g: &Graph) -> Matrix {
    let n = g.capacity();
    let mut m = vec![vec![false; n]; n];
    for e in g.edges() {
        m[e.u as usize][e.v as usize] = true;
        m[e.v as usize][e.u as usize] = true;
    }
    m
}

pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if bits[i] {
                edges.push((a as NodeId, b as NodeId));
            }
            i += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Random simple graphs on `lo..hi` nodes with edge density `p`.
pub fn graphs(lo: usize, hi: usize, p: f64) -> impl Strategy<Value = Graph> {
    (lo..hi).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(p), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

/// A deterministic pseudo-random graph for loops that do not go through
/// proptest (splitmix64).
pub fn seeded_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut state = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut next = move || {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    };
    let mut bits = Vec::new();
    for _ in 0..n * (n - 1) / 2 {
        bits.push((next() >> 11) as f64 / (1u64 << 53) as f64 <= p);
    }
    graph_from_bits(n, &bits)
}

pub fn common_count(m: &Matrix, a: usize, b: usize) -> usize {
    (0..m.len()).filter(|&x| m[a][x] && m[b][x]).count()
}

/// Trussness of every edge by repeated deletion: the k-truss is what
/// remains after deleting edges with fewer than k-2 triangles until none
/// are left. Returns `(a, b, t)` with `a < b`.
pub fn trussness_oracle(g: &Graph) -> Vec<(usize, usize, u32)> {
    let base = matrix(g);
    let n = base.len();
    let mut t: Vec<(usize, usize, u32)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if base[a][b] {
                t.push((a, b, 2));
            }
        }
    }
    let mut k = 3;
    loop {
        let m = k_truss_matrix(&base, k);
        let mut any = false;
        for e in t.iter_mut() {
            if m[e.0][e.1] {
                e.2 = k;
                any = true;
            }
        }
        if !any {
            break;
        }
        k += 1;
    }
    t
}

pub fn k_truss_matrix(base: &Matrix, k: u32) -> Matrix {
    let mut m = base.clone();
    let n = m.len();
    loop {
        let mut changed = false;
        for a in 0..n {
            for b in a + 1..n {
                if m[a][b] && common_count(&m, a, b) + 2 < k as usize {
                    m[a][b] = false;
                    m[b][a] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return m;
        }
    }
}

pub fn edge_count(m: &Matrix) -> usize {
    m.iter().map(|r| r.iter().filter(|&&x| x).count()).sum::<usize>() / 2
}

pub fn k_truss_size_oracle(g: &Graph, k: u32) -> usize {
    edge_count(&k_truss_matrix(&matrix(g), k))
}

/// Merge by deleting `v2` with its edges and then adding every missing
/// `(v1, u)` for former neighbors `u` of `v2`.
pub fn two_step_merge(g: &Graph, v1: NodeId, v2: NodeId) -> Vec<(NodeId, NodeId)> {
    let m = matrix(g);
    let n = m.len();
    let mut out = m.clone();
    for x in 0..n {
        out[v2 as usize][x] = false;
        out[x][v2 as usize] = false;
    }
    for u in 0..n {
        if m[v2 as usize][u] && u != v1 as usize {
            out[v1 as usize][u] = true;
            out[u][v1 as usize] = true;
        }
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if out[a][b] {
                edges.push((a as NodeId, b as NodeId));
            }
        }
    }
    edges
}

pub fn edge_pairs(g: &Graph) -> Vec<(NodeId, NodeId)> {
    g.edges().map(|e| (e.u, e.v)).collect()
}

/// Coreness by repeated deletion of nodes below each threshold.
pub fn coreness_oracle(g: &Graph) -> Vec<u32> {
    let m = matrix(g);
    let n = m.len();
    let mut core = vec![0u32; n];
    let mut k = 1;
    loop {
        let mut alive: Vec<bool> = (0..n).map(|v| g.contains(v as NodeId)).collect();
        loop {
            let mut changed = false;
            for v in 0..n {
                if alive[v] && (0..n).filter(|&u| alive[u] && m[v][u]).count() < k as usize {
                    alive[v] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if !alive.iter().any(|&a| a) {
            return core;
        }
        for v in 0..n {
            if alive[v] {
                core[v] = k;
            }
        }
        k += 1;
    }
}

/// All triangles `(a, b, c)` with `a < b < c`, restricted to `allowed`.
pub fn triangles_within(m: &Matrix, allowed: &[bool]) -> usize {
    let n = m.len();
    let mut count = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if allowed[a] && allowed[b] && allowed[c] && m[a][b] && m[b][c] && m[a][c] {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Inside nodes by definition: endpoints of edges whose trussness is at
/// least `k - 1`.
pub fn inside_oracle(g: &Graph, k: u32) -> Vec<bool> {
    let mut inside = vec![false; g.capacity()];
    for (a, b, t) in trussness_oracle(g) {
        if t + 1 >= k {
            inside[a] = true;
            inside[b] = true;
        }
    }
    inside
}
