mod common;

use common::*;
use proptest::prelude::*;
use trussmerge_core::metrics::{
    adjacency_spectrum, average_distance, avg_local_clustering, edge_betweenness, effective_resistance_total,
    gen_er, gen_hk, gen_ws, local_clustering, natural_connectivity, pearson_r, spectral_gap, transitivity,
    vertex_betweenness, MetricId,
};
use trussmerge_core::{Error, Graph, NodeId};

fn connected(g: &Graph) -> Graph {
    g.largest_component().0
}

fn connected_graphs(lo: usize, hi: usize, p: f64) -> impl Strategy<Value = Graph> {
    graphs(lo, hi, p).prop_map(|g| connected(&g)).prop_filter("needs two nodes", |g| g.node_count() >= 2)
}

fn distances(m: &Matrix) -> Vec<Vec<Option<usize>>> {
    let n = m.len();
    let mut d = vec![vec![None; n]; n];
    for s in 0..n {
        d[s][s] = Some(0);
        let mut frontier = vec![s];
        let mut step = 0;
        while !frontier.is_empty() {
            step += 1;
            let mut next = Vec::new();
            for &v in &frontier {
                for u in 0..n {
                    if m[v][u] && d[s][u].is_none() {
                        d[s][u] = Some(step);
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
    }
    d
}

/// All shortest paths between `s` and `t` by explicit enumeration.
fn shortest_paths(m: &Matrix, dist: &[Vec<Option<usize>>], s: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut path = vec![s];
    fn walk(m: &Matrix, dist: &[Vec<Option<usize>>], t: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let v = *path.last().unwrap();
        if v == t {
            out.push(path.clone());
            return;
        }
        for u in 0..m.len() {
            if m[v][u] && dist[u][t].is_some() && dist[u][t].unwrap() + 1 == dist[v][t].unwrap() {
                path.push(u);
                walk(m, dist, t, path, out);
                path.pop();
            }
        }
    }
    walk(m, dist, t, &mut path, &mut out);
    out
}

fn betweenness_oracle(g: &Graph) -> (Vec<f64>, Vec<f64>) {
    let m = matrix(g);
    let n = m.len();
    let dist = distances(&m);
    let edges: Vec<(usize, usize)> = g.edges().map(|e| (e.u as usize, e.v as usize)).collect();
    let mut node = vec![0.0; n];
    let mut edge = vec![0.0; edges.len()];
    for s in 0..n {
        for t in s + 1..n {
            if dist[s][t].is_none() {
                continue;
            }
            let paths = shortest_paths(&m, &dist, s, t);
            let w = 1.0 / paths.len() as f64;
            for p in &paths {
                for &v in &p[1..p.len() - 1] {
                    node[v] += w;
                }
                for pair in p.windows(2) {
                    let key = (pair[0].min(pair[1]), pair[0].max(pair[1]));
                    edge[edges.binary_search(&key).unwrap()] += w;
                }
            }
        }
    }
    (node, edge)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, descending.
fn jacobi_eigenvalues(mut a: Vec<Vec<f64>>) -> Vec<f64> {
    let n = a.len();
    for _ in 0..100 {
        let off: f64 = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j]).sum();
        if off < 1e-22 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.total_cmp(x));
    ev
}

fn adjacency_f64(g: &Graph) -> Vec<Vec<f64>> {
    matrix(g).iter().map(|row| row.iter().map(|&b| b as u8 as f64).collect()).collect()
}

fn invert(mut a: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u8 as f64).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs())).unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col];
        for j in 0..n {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] -= f * a[col][j];
                    inv[r][j] -= f * inv[col][j];
                }
            }
        }
    }
    inv
}

/// Sum of pairwise effective resistances from the Laplacian pseudoinverse.
fn resistance_oracle(g: &Graph) -> f64 {
    let adj = adjacency_f64(g);
    let n = adj.len();
    let shift = 1.0 / n as f64;
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            l[i][j] = if i == j { adj[i].iter().sum::<f64>() } else { -adj[i][j] } + shift;
        }
    }
    let mut p = invert(l);
    p.iter_mut().for_each(|row| row.iter_mut().for_each(|x| *x -= shift));
    let mut total = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            total += p[i][i] + p[j][j] - 2.0 * p[i][j];
        }
    }
    total
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn betweenness_matches_path_enumeration(g in graphs(2, 12, 0.35)) {
        let (node, edge) = betweenness_oracle(&g);
        let vb = vertex_betweenness(&g);
        let eb = edge_betweenness(&g);
        prop_assert_eq!(vb.len(), node.len());
        prop_assert_eq!(eb.len(), edge.len());
        for (a, b) in vb.iter().zip(&node) {
            prop_assert!(close(*a, *b, 1e-9), "{} vs {}", a, b);
        }
        for (a, b) in eb.iter().zip(&edge) {
            prop_assert!(close(*a, *b, 1e-9), "{} vs {}", a, b);
        }
        // each shortest path has d - 1 interior nodes and d edges
        let dist = distances(&matrix(&g));
        let n = dist.len();
        let (mut inner, mut hops) = (0.0, 0.0);
        for s in 0..n {
            for t in s + 1..n {
                if let Some(d) = dist[s][t] {
                    inner += (d - 1) as f64;
                    hops += d as f64;
                }
            }
        }
        prop_assert!(close(vb.iter().sum(), inner, 1e-9));
        prop_assert!(close(eb.iter().sum(), hops, 1e-9));
    }

    #[test]
    fn resistance_matches_pseudoinverse(g in connected_graphs(2, 16, 0.4)) {
        let got = effective_resistance_total(&g).unwrap();
        let want = resistance_oracle(&g);
        prop_assert!(close(got, want, 1e-9), "{} vs {}", got, want);
    }

    #[test]
    fn spectrum_matches_jacobi(g in graphs(1, 14, 0.4)) {
        let got = adjacency_spectrum(&g);
        let want = jacobi_eigenvalues(adjacency_f64(&g));
        prop_assert_eq!(got.len(), want.len());
        for (a, b) in got.iter().zip(&want) {
            prop_assert!((a - b).abs() < 1e-8, "{:?} vs {:?}", got, want);
        }
        if want.len() >= 2 {
            prop_assert!((spectral_gap(&g) - (want[0] - want[1])).abs() < 1e-8);
        }
        let mean: f64 = want.iter().map(|l| l.exp()).sum::<f64>() / want.len() as f64;
        prop_assert!((natural_connectivity(&g) - mean.ln()).abs() < 1e-9);
    }

    #[test]
    fn natural_connectivity_grows_with_edges(g in graphs(3, 14, 0.3), a in 0usize..1000, b in 0usize..1000) {
        let n = g.capacity();
        let (u, v) = ((a % n) as NodeId, (b % n) as NodeId);
        prop_assume!(u != v && !g.has_edge(u, v));
        let mut h = g.clone();
        h.add_edge(u, v).unwrap();
        prop_assert!(natural_connectivity(&h) > natural_connectivity(&g));
    }

    #[test]
    fn distance_and_clustering_match_brute_force(g in graphs(1, 16, 0.35)) {
        let m = matrix(&g);
        let n = m.len();
        let dist = distances(&m);
        let (mut total, mut pairs) = (0usize, 0usize);
        for s in 0..n {
            for t in s + 1..n {
                if let Some(d) = dist[s][t] {
                    total += d;
                    pairs += 1;
                }
            }
        }
        let ad = if pairs == 0 { 0.0 } else { total as f64 / pairs as f64 };
        prop_assert!(close(average_distance(&g), ad, 1e-12));

        let all = vec![true; n];
        let triangles = triangles_within(&m, &all);
        let triples: usize = (0..n).map(|v| {
            let d = m[v].iter().filter(|&&x| x).count();
            d * d.saturating_sub(1) / 2
        }).sum();
        let ts = if triples == 0 { 0.0 } else { 3.0 * triangles as f64 / triples as f64 };
        prop_assert!(close(transitivity(&g), ts, 1e-12));

        let lc: Vec<f64> = (0..n).map(|v| {
            let nbrs: Vec<usize> = (0..n).filter(|&u| m[v][u]).collect();
            let d = nbrs.len();
            if d < 2 {
                return 0.0;
            }
            let mut links = 0;
            for (i, &x) in nbrs.iter().enumerate() {
                for &y in &nbrs[i + 1..] {
                    links += m[x][y] as usize;
                }
            }
            2.0 * links as f64 / (d * (d - 1)) as f64
        }).collect();
        let got = local_clustering(&g);
        for (a, b) in got.iter().zip(&lc) {
            prop_assert!(close(*a, *b, 1e-12));
        }
        let avg = if n == 0 { 0.0 } else { lc.iter().sum::<f64>() / n as f64 };
        prop_assert!(close(avg_local_clustering(&g), avg, 1e-12));
    }

    #[test]
    fn pearson_matches_sum_formula(xs in proptest::collection::vec(-100.0f64..100.0, 2..40), seed in any::<u64>()) {
        let ys: Vec<f64> = xs.iter().enumerate()
            .map(|(i, x)| 0.5 * x + ((seed.wrapping_mul(i as u64 + 1) % 97) as f64))
            .collect();
        let n = xs.len() as f64;
        let (sx, sy) = (xs.iter().sum::<f64>(), ys.iter().sum::<f64>());
        let sxy: f64 = xs.iter().zip(&ys).map(|(a, b)| a * b).sum();
        let (sxx, syy) = (xs.iter().map(|a| a * a).sum::<f64>(), ys.iter().map(|b| b * b).sum::<f64>());
        let den = ((n * sxx - sx * sx) * (n * syy - sy * sy)).sqrt();
        match pearson_r(&xs, &ys) {
            Some(r) => {
                prop_assert!((r - (n * sxy - sx * sy) / den).abs() < 1e-6);
                prop_assert!((-1.0 - 1e-12..=1.0 + 1e-12).contains(&r));
            }
            None => prop_assert!(den.abs() < 1e-9),
        }
    }

    #[test]
    fn metrics_are_reproducible(seed in any::<u64>()) {
        let g = connected(&gen_er(30, 0.15, seed));
        prop_assume!(g.node_count() >= 2);
        for m in MetricId::ALL {
            let a = m.evaluate(&g).unwrap();
            let b = m.evaluate(&g).unwrap();
            prop_assert_eq!(a.to_bits(), b.to_bits(), "{}", m.as_str());
        }
    }
}

#[test]
fn resistance_of_paths_and_cliques() {
    // path on n nodes: Σ_{i<j} (j - i) = (n^3 - n) / 6
    for n in 2..10u32 {
        let g = Graph::from_edges(n as usize, (0..n - 1).map(|i| (i, i + 1)));
        let want = f64::from(n * n * n - n) / 6.0;
        assert!(close(effective_resistance_total(&g).unwrap(), want, 1e-10));
    }
    // complete graph: every pair has resistance 2/n
    for n in 2..9u32 {
        let mut edges = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                edges.push((a, b));
            }
        }
        let g = Graph::from_edges(n as usize, edges);
        assert!(close(effective_resistance_total(&g).unwrap(), f64::from(n - 1), 1e-10));
    }
    let split = Graph::from_edges(4, [(0, 1), (2, 3)]);
    assert_eq!(effective_resistance_total(&split), Err(Error::Disconnected));
}

#[test]
fn generators_are_seeded_and_shaped() {
    assert_eq!(gen_er(40, 0.2, 7), gen_er(40, 0.2, 7));
    assert_eq!(gen_er(20, 0.0, 1).edge_count(), 0);
    assert_eq!(gen_er(20, 1.0, 1).edge_count(), 190);
    let ring = gen_ws(20, 4, 0.0, 3);
    assert_eq!(ring.edge_count(), 40);
    assert!(ring.nodes().all(|v| ring.degree(v) == 4));
    assert_eq!(gen_ws(30, 4, 0.3, 9).edge_count(), 60);
    let hk = gen_hk(50, 3, 0.5, 11);
    assert_eq!(hk, gen_hk(50, 3, 0.5, 11));
    assert!(hk.is_simple());
    assert!(hk.is_connected());
}

#[test]
fn study_rows_replay_on_the_component() {
    use trussmerge_core::metrics::{correlation_study, greedy_improve, Operation};
    use trussmerge_core::objective;

    let g = gen_er(24, 0.15, 5);
    let (lcc, ids) = g.largest_component();
    let back = |v: NodeId| ids.iter().position(|&x| x == v).unwrap() as NodeId;
    for op in [Operation::Merge, Operation::AddEdge] {
        let t = greedy_improve(&g, MetricId::Sg, op, 3).unwrap();
        let mut h = lcc.clone();
        for row in &t.rounds[1..] {
            let (a, b) = row.pair.unwrap();
            match op {
                Operation::Merge => h.merge(back(a), back(b)).unwrap(),
                Operation::AddEdge => assert!(h.add_edge(back(a), back(b)).unwrap()),
            }
            for (m, v) in t.metrics.iter().zip(&row.values) {
                assert_eq!(m.evaluate(&h).unwrap().to_bits(), v.to_bits());
            }
        }
        assert!(t.improvement(MetricId::Sg, 1).unwrap() >= t.improvement(MetricId::Sg, 0).unwrap());
    }

    let t = correlation_study(&g, 3, 4).unwrap();
    let mut pairs = Vec::new();
    for row in &t.rounds {
        pairs.extend(row.pair);
        let mapped: Vec<(NodeId, NodeId)> = pairs.iter().map(|&(a, b)| (back(a), back(b))).collect();
        assert_eq!(row.truss_size, Some(objective(&lcc, 3, &mapped).unwrap().size));
    }
    assert_eq!(t.pearson_r.len(), MetricId::ROBUSTNESS.len());
}
