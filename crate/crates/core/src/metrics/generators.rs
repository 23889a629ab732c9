//! Seeded random graph models.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, NodeId};

/// Erdős–Rényi `G(n, p)`: every pair independently with probability `p`.
pub fn gen_er(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for a in 0..n as NodeId {
        for b in a + 1..n as NodeId {
            if rng.random::<f64>() < p {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Watts–Strogatz small world: a ring where every node is joined to its
/// `k_nbrs / 2` nearest neighbors on each side, after which each lattice
/// edge `(u, u + j)` is rewired to a uniformly chosen new endpoint with
/// probability `p`.
pub fn gen_ws(n: usize, k_nbrs: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_nodes(n);
    if n == 0 {
        return g;
    }
    let half = k_nbrs / 2;
    for j in 1..=half {
        for u in 0..n {
            g.add_edge(u as NodeId, ((u + j) % n) as NodeId).expect("nodes exist");
        }
    }
    for j in 1..=half {
        for u in 0..n {
            let v = ((u + j) % n) as NodeId;
            let u = u as NodeId;
            if rng.random::<f64>() < p {
                if g.degree(u) >= n - 1 {
                    continue;
                }
                let mut w = rng.random_range(0..n) as NodeId;
                while w == u || g.has_edge(u, w) {
                    w = rng.random_range(0..n) as NodeId;
                }
                g.remove_edge(u, v);
                g.add_edge(u, w).expect("nodes exist");
            }
        }
    }
    g
}

/// Holme–Kim powerlaw-cluster growth: each new node attaches `m_attach`
/// edges by preferential attachment; after each attachment a triad is
/// closed instead with probability `p`.
pub fn gen_hk(n: usize, m_attach: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::with_nodes(n);
    if m_attach == 0 || n <= m_attach {
        return g;
    }
    let mut repeated: Vec<NodeId> = (0..m_attach as NodeId).collect();
    for source in m_attach as NodeId..n as NodeId {
        let mut targets: Vec<NodeId> = Vec::with_capacity(m_attach);
        while targets.len() < m_attach {
            let x = repeated[rng.random_range(0..repeated.len())];
            if !targets.contains(&x) {
                targets.push(x);
            }
        }
        let mut target = targets.pop().expect("m_attach >= 1");
        g.add_edge(source, target).expect("nodes exist");
        repeated.push(target);
        let mut count = 1;
        while count < m_attach {
            if rng.random::<f64>() < p {
                let closing: Vec<NodeId> = g
                    .adjacent(target)
                    .iter()
                    .copied()
                    .filter(|&x| x != source && !g.has_edge(source, x))
                    .collect();
                if !closing.is_empty() {
                    let x = closing[rng.random_range(0..closing.len())];
                    g.add_edge(source, x).expect("nodes exist");
                    repeated.push(x);
                    count += 1;
                    continue;
                }
            }
            target = targets.pop().expect("one target per remaining edge");
            g.add_edge(source, target).expect("nodes exist");
            repeated.push(target);
            count += 1;
        }
        repeated.extend(core::iter::repeat(source).take(m_attach));
    }
    g
}
