//! Minimum-weight vertex cover of a bipartite graph by max-flow.

use std::collections::VecDeque;

const RESIDUAL_EPS: f64 = 1e-15;

/// Minimum-weight vertex cover of the bipartite graph with left weights
/// `wl`, right weights `wr` and edges `(left, right)`.
///
/// Returns the cover membership of each side and its total weight. The cut
/// taken is the one closest to the source (left vertices unreachable in
/// the residual graph, right vertices reachable).
pub fn min_weight_vertex_cover(wl: &[f64], wr: &[f64], edges: &[(usize, usize)]) -> (Vec<bool>, Vec<bool>, f64) {
    let (nl, nr) = (wl.len(), wr.len());
    let n = nl + nr + 2;
    let (s, t) = (n - 2, n - 1);
    let inf = 1.0 + wl.iter().chain(wr).sum::<f64>();
    let mut cap = vec![vec![0.0; n]; n];
    for (j, &w) in wl.iter().enumerate() {
        cap[s][j] = w;
    }
    for (k, &w) in wr.iter().enumerate() {
        cap[nl + k][t] = w;
    }
    for &(j, k) in edges {
        cap[j][nl + k] = inf;
    }

    // Edmonds-Karp
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > RESIDUAL_EPS {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[t] == usize::MAX {
            break;
        }
        let mut bottleneck = f64::INFINITY;
        let mut v = t;
        while v != s {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u][v]);
            v = u;
        }
        let mut v = t;
        while v != s {
            let u = parent[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
    }

    let mut reach = vec![false; n];
    reach[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if !reach[v] && cap[u][v] > RESIDUAL_EPS {
                reach[v] = true;
                queue.push_back(v);
            }
        }
    }
    let left: Vec<bool> = (0..nl).map(|j| !reach[j]).collect();
    let right: Vec<bool> = (0..nr).map(|k| reach[nl + k]).collect();
    let weight = left.iter().zip(wl).filter(|(c, _)| **c).map(|(_, w)| w).sum::<f64>()
        + right.iter().zip(wr).filter(|(c, _)| **c).map(|(_, w)| w).sum::<f64>();
    (left, right, weight)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(wl: &[f64], wr: &[f64], edges: &[(usize, usize)]) -> f64 {
        let n = wl.len() + wr.len();
        let mut best = f64::INFINITY;
        for mask in 0u32..1 << n {
            let inl = |j: usize| mask >> j & 1 == 1;
            let inr = |k: usize| mask >> (wl.len() + k) & 1 == 1;
            if edges.iter().all(|&(j, k)| inl(j) || inr(k)) {
                let w: f64 = (0..wl.len()).filter(|&j| inl(j)).map(|j| wl[j]).sum::<f64>()
                    + (0..wr.len()).filter(|&k| inr(k)).map(|k| wr[k]).sum::<f64>();
                best = best.min(w);
            }
        }
        best
    }

    #[test]
    fn two_disjoint_edges() {
        let (l, r, w) = min_weight_vertex_cover(&[0.64 / 1.64, 1.0 / 1.64], &[1.0 / 1.64, 0.64 / 1.64], &[(0, 0), (1, 1)]);
        assert_eq!(l, vec![true, false]);
        assert_eq!(r, vec![false, true]);
        assert!((w - 1.28 / 1.64).abs() < 1e-15);
    }

    #[test]
    fn no_edges_means_empty_cover() {
        let (l, r, w) = min_weight_vertex_cover(&[0.5, 0.5], &[1.0], &[]);
        assert!(l.iter().chain(&r).all(|c| !c));
        assert_eq!(w, 0.0);
    }

    proptest! {
        #[test]
        fn matches_exhaustive_search(
            wl in prop::collection::vec(0.0f64..1.0, 1..5),
            wr in prop::collection::vec(0.0f64..1.0, 1..5),
            mask in any::<u32>(),
        ) {
            let mut edges = Vec::new();
            for j in 0..wl.len() {
                for k in 0..wr.len() {
                    if mask >> (j * 5 + k) & 1 == 1 {
                        edges.push((j, k));
                    }
                }
            }
            let (l, r, w) = min_weight_vertex_cover(&wl, &wr, &edges);
            for &(j, k) in &edges {
                prop_assert!(l[j] || r[k]);
            }
            prop_assert!((w - brute(&wl, &wr, &edges)).abs() < 1e-12);
        }
    }
}
