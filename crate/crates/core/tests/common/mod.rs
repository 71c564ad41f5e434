#![allow(dead_code)]

use bsgda::generators::{ba_graph, sensor_graph};
use bsgda::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Erdős-Rényi graph with edge probability `p` and weights in `[0.05, 2)`.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    let mut r = rng(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if r.random::<f64>() < p {
                edges.push((i, j, r.random_range(0.05..2.0)));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// A mix of the three families with `n` in `lo..=hi`.
pub fn random_graph(k: u64, lo: usize, hi: usize) -> Graph {
    let mut r = rng(1000 + k);
    let n = r.random_range(lo..=hi);
    match k % 3 {
        0 => erdos_renyi(n, r.random_range(0.15..0.6), k),
        1 => sensor_graph(n, 3.min(n - 1).max(1), k).unwrap().graph,
        _ => ba_graph(n, k).unwrap().graph,
    }
}

/// Positive scales `exp(N)` with moderate spread.
pub fn random_scales(n: usize, seed: u64) -> Vec<f64> {
    let mut r = rng(seed);
    (0..n).map(|_| r.random_range(-1.5f64..1.5).exp()).collect()
}

pub fn random_nodes(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut r = rng(seed);
    rand::seq::index::sample(&mut r, n, k).into_vec()
}

pub fn harmonic(n: usize) -> f64 {
    (1..=n).map(|i| 1.0 / i as f64).sum()
}
