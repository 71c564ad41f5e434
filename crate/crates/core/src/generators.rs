//! Synthetic graph families: random geometric sensor graphs, community
//! graphs and Barabási-Albert trees. Every generator is a pure function of
//! its parameters and seed.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Neighbor count used for sensor graphs unless overridden.
pub const DEFAULT_SENSOR_KNN: usize = 6;

const COMMUNITY_SPREAD: f64 = 0.15;
const COMMUNITY_RADIUS: f64 = 0.3;
const INTER_COMMUNITY_EDGE_FRACTION: f64 = 0.02;

/// A generated graph plus whatever layout information the family has.
#[derive(Debug, Clone)]
pub struct GeneratedGraph {
    pub graph: Graph,
    pub coords: Option<Vec<[f64; 2]>>,
    pub communities: Option<Vec<usize>>,
}

pub(crate) fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sq_dist(a: [f64; 2], b: [f64; 2]) -> f64 {
    let dx = a[0] - b[0];
    let dy = a[1] - b[1];
    dx * dx + dy * dy
}

/// Random sensor network: points uniform in the unit square, each joined to
/// its `k_nn` nearest neighbors (symmetrized union), Gaussian-kernel weights
/// `exp(−d²/σ²)` with `σ²` the mean squared length of the included edges.
pub fn sensor_graph(n: usize, k_nn: usize, seed: u64) -> Result<GeneratedGraph> {
    if k_nn == 0 || n <= k_nn {
        return Err(Error::InvalidParameter(format!(
            "sensor graph needs n > k_nn >= 1 (n={n}, k_nn={k_nn})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let coords: Vec<[f64; 2]> = (0..n)
        .map(|_| [rng.random::<f64>(), rng.random::<f64>()])
        .collect();

    let mut pairs = Vec::with_capacity(n * k_nn);
    let mut scratch: Vec<(f64, usize)> = Vec::with_capacity(n);
    for (i, &ci) in coords.iter().enumerate() {
        scratch.clear();
        scratch.extend(
            coords
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(j, &cj)| (sq_dist(ci, cj), j)),
        );
        let cmp = |a: &(f64, usize), b: &(f64, usize)| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1));
        scratch.select_nth_unstable_by(k_nn - 1, cmp);
        for &(_, j) in &scratch[..k_nn] {
            pairs.push(if i < j { (i, j) } else { (j, i) });
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let sq: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| sq_dist(coords[i], coords[j]))
        .collect();
    let sigma2 = sq.iter().sum::<f64>() / sq.len() as f64;
    let edges = pairs
        .iter()
        .zip(&sq)
        .map(|(&(i, j), &d2)| (i, j, gaussian_weight(d2, sigma2)));
    let graph = Graph::new(n, edges)?;
    Ok(GeneratedGraph {
        graph,
        coords: Some(coords),
        communities: None,
    })
}

fn gaussian_weight(d2: f64, sigma2: f64) -> f64 {
    // Coincident points would give exactly 1; underflow to 0 is clamped so the
    // edge stays valid.
    (-d2 / sigma2).exp().max(f64::MIN_POSITIVE)
}

pub fn community_count(n: usize) -> usize {
    ((n as f64).sqrt() / 2.0).floor() as usize
}

/// Community graph with `⌊√n/2⌋` clusters placed evenly on the unit circle.
///
/// Nodes scatter around their cluster center with isotropic Gaussian noise;
/// intra-community pairs closer than 0.3 are joined, plus `⌈0.02·n⌉` random
/// inter-community edges. Weights use the Gaussian kernel with `σ = 1`.
pub fn community_graph(n: usize, seed: u64) -> Result<GeneratedGraph> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "community graph needs n >= 4 (n={n})"
        )));
    }
    let c = community_count(n);
    let mut rng = rng_from_seed(seed);
    // First c nodes seed one community each so none is empty.
    let labels: Vec<usize> = (0..n)
        .map(|v| if v < c { v } else { rng.random_range(0..c) })
        .collect();
    let offset = Normal::new(0.0, COMMUNITY_SPREAD).expect("valid std");
    let coords: Vec<[f64; 2]> = labels
        .iter()
        .map(|&l| {
            let angle = std::f64::consts::TAU * l as f64 / c as f64;
            [
                angle.cos() + offset.sample(&mut rng),
                angle.sin() + offset.sample(&mut rng),
            ]
        })
        .collect();

    let r2 = COMMUNITY_RADIUS * COMMUNITY_RADIUS;
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if labels[i] == labels[j] && sq_dist(coords[i], coords[j]) <= r2 {
                pairs.push((i, j));
            }
        }
    }
    if c > 1 {
        let wanted = (INTER_COMMUNITY_EDGE_FRACTION * n as f64).ceil() as usize;
        let mut added = 0;
        while added < wanted {
            let i = rng.random_range(0..n);
            let j = rng.random_range(0..n);
            if labels[i] == labels[j] {
                continue;
            }
            let p = if i < j { (i, j) } else { (j, i) };
            if !pairs.contains(&p) {
                pairs.push(p);
                added += 1;
            }
        }
    }
    let edges: Vec<_> = pairs
        .into_iter()
        .map(|(i, j)| (i, j, gaussian_weight(sq_dist(coords[i], coords[j]), 1.0)))
        .collect();
    let graph = Graph::new(n, edges)?;
    Ok(GeneratedGraph {
        graph,
        coords: Some(coords),
        communities: Some(labels),
    })
}

/// Barabási-Albert preferential attachment with one edge per new node,
/// grown from the single edge `0 - 1`. Weights are uniform on `(0, 1)`.
pub fn ba_graph(n: usize, seed: u64) -> Result<GeneratedGraph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "BA graph needs n >= 2 (n={n})"
        )));
    }
    let mut rng = rng_from_seed(seed);
    let mut weight = || loop {
        let w: f64 = rng.random();
        if w > 0.0 {
            return w;
        }
    };
    let mut edges = vec![(0, 1, weight())];
    // Each node appears once per incident edge, so a uniform pick from this
    // list is a degree-proportional pick.
    let mut endpoints = vec![0usize, 1];
    let mut pick = rng_from_seed(seed ^ 0x9e37_79b9_7f4a_7c15);
    for v in 2..n {
        let target = endpoints[pick.random_range(0..endpoints.len())];
        edges.push((target, v, weight()));
        endpoints.push(target);
        endpoints.push(v);
    }
    let graph = Graph::new(n, edges)?;
    Ok(GeneratedGraph {
        graph,
        coords: None,
        communities: None,
    })
}

/// `k` distinct indices from `0..n`, uniform without replacement.
pub(crate) fn choose_distinct(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = rng_from_seed(seed);
    index::sample(&mut rng, n, k).into_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rebuilt_degrees(g: &Graph) -> Vec<f64> {
        let mut d = vec![0.0; g.n()];
        for e in g.edges() {
            d[e.i] += e.w;
            d[e.j] += e.w;
        }
        d
    }

    #[test]
    fn sensor_graph_has_knn_lower_bound() {
        for seed in 0..5 {
            let g = sensor_graph(10, 6, seed).unwrap().graph;
            for v in 0..g.n() {
                assert!(g.neighbors(v).len() >= 6);
            }
            assert!(g.edges().iter().all(|e| e.w > 0.0 && e.w <= 1.0));
            assert_eq!(rebuilt_degrees(&g), g.degrees());
        }
    }

    #[test]
    fn sensor_graph_is_deterministic() {
        let a = sensor_graph(200, 6, 42).unwrap();
        let b = sensor_graph(200, 6, 42).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.coords, b.coords);
        let c = sensor_graph(200, 6, 43).unwrap();
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn sensor_graph_rejects_small_n() {
        assert!(sensor_graph(6, 6, 0).is_err());
        assert!(sensor_graph(10, 0, 0).is_err());
    }

    #[test]
    fn community_counts() {
        assert_eq!(community_count(500), 11);
        assert_eq!(community_count(16), 2);
        assert_eq!(community_count(4), 1);
    }

    #[test]
    fn community_labels_partition_nodes() {
        let gen = community_graph(500, 3).unwrap();
        let labels = gen.communities.unwrap();
        assert_eq!(labels.len(), 500);
        let mut sizes = [0; 11];
        for &l in &labels {
            sizes[l] += 1;
        }
        assert!(sizes.iter().all(|&s| s > 0));
        assert_eq!(sizes.iter().sum::<usize>(), 500);
        let g = gen.graph;
        let inter = g
            .edges()
            .iter()
            .filter(|e| labels[e.i] != labels[e.j])
            .count();
        assert_eq!(inter, 10);
        assert!(g.edges().iter().all(|e| e.w > 0.0 && e.w <= 1.0));
        assert_eq!(rebuilt_degrees(&g), g.degrees());
        assert!(community_graph(3, 0).is_err());
    }

    #[test]
    fn ba_graph_is_a_weighted_tree() {
        for seed in 0..10 {
            let g = ba_graph(100, seed).unwrap().graph;
            assert_eq!(g.num_edges(), 99);
            assert!(g.is_connected());
            assert!(g.edges().iter().all(|e| e.w > 0.0 && e.w < 1.0));
            assert_eq!(rebuilt_degrees(&g), g.degrees());
        }
        assert_eq!(ba_graph(2, 0).unwrap().graph.num_edges(), 1);
        assert!(ba_graph(1, 0).is_err());
    }

    #[test]
    fn ba_graph_is_deterministic() {
        assert_eq!(ba_graph(50, 7).unwrap().graph, ba_graph(50, 7).unwrap().graph);
    }

    #[test]
    fn choose_distinct_is_uniform_support() {
        let s = choose_distinct(10, 10, 1);
        let mut sorted = s.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..10).collect::<Vec<_>>());
        assert_eq!(choose_distinct(30, 5, 9), choose_distinct(30, 5, 9));
    }
}
