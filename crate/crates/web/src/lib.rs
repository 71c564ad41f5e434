//! WebAssembly bindings for the browser demo in `www/`.
//!
//! A [`Demo`] owns one generated graph and exposes three operations: grow
//! a coverage subset from a node, run the sampler at a budget, and compare
//! reconstructions from BS-GDA and random samples of the same signal.

use bsgda::experiment::{GraphKind, GraphSpec};
use bsgda::oracle::{gen_gs1, laplacian_spectrum, DEFAULT_ORACLE_CAP};
use bsgda::{bs_gda, estimate_coverage, glr_reconstruct, mse, random_sampler, GdaParams, Graph, SolverConfig};
use wasm_bindgen::prelude::*;

/// Largest graph the demo builds; GS1 signals need the full spectrum.
pub const MAX_NODES: usize = DEFAULT_ORACLE_CAP;

#[wasm_bindgen]
pub struct Demo {
    graph: Graph,
    coords: Vec<[f64; 2]>,
}

#[wasm_bindgen]
pub struct Coverage {
    members: Vec<u32>,
    scales: Vec<f64>,
}

#[wasm_bindgen]
impl Coverage {
    /// Covered nodes in breadth-first order.
    #[wasm_bindgen(getter)]
    pub fn members(&self) -> Vec<u32> {
        self.members.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn scales(&self) -> Vec<f64> {
        self.scales.clone()
    }
}

#[wasm_bindgen]
pub struct Selection {
    nodes: Vec<u32>,
    t_hat: f64,
    certified_lb: f64,
    valid: bool,
}

#[wasm_bindgen]
impl Selection {
    #[wasm_bindgen(getter)]
    pub fn nodes(&self) -> Vec<u32> {
        self.nodes.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn t_hat(&self) -> f64 {
        self.t_hat
    }

    #[wasm_bindgen(getter)]
    pub fn certified_lb(&self) -> f64 {
        self.certified_lb
    }

    #[wasm_bindgen(getter)]
    pub fn valid(&self) -> bool {
        self.valid
    }
}

#[wasm_bindgen]
pub struct Comparison {
    truth: Vec<f64>,
    gda_nodes: Vec<u32>,
    gda_estimate: Vec<f64>,
    gda_mse: f64,
    random_nodes: Vec<u32>,
    random_estimate: Vec<f64>,
    random_mse: f64,
}

#[wasm_bindgen]
impl Comparison {
    #[wasm_bindgen(getter)]
    pub fn truth(&self) -> Vec<f64> {
        self.truth.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn gda_nodes(&self) -> Vec<u32> {
        self.gda_nodes.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn gda_estimate(&self) -> Vec<f64> {
        self.gda_estimate.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn gda_mse(&self) -> f64 {
        self.gda_mse
    }

    #[wasm_bindgen(getter)]
    pub fn random_nodes(&self) -> Vec<u32> {
        self.random_nodes.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn random_estimate(&self) -> Vec<f64> {
        self.random_estimate.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn random_mse(&self) -> f64 {
        self.random_mse
    }
}

fn to_u32(v: &[usize]) -> Vec<u32> {
    v.iter().map(|&i| i as u32).collect()
}

fn circle_layout(n: usize) -> Vec<[f64; 2]> {
    (0..n)
        .map(|i| {
            let a = std::f64::consts::TAU * i as f64 / n as f64;
            [a.cos(), a.sin()]
        })
        .collect()
}

impl Demo {
    pub fn build(kind: &str, n: usize, seed: u64) -> bsgda::Result<Demo> {
        if n > MAX_NODES {
            return Err(bsgda::Error::InvalidParameter(format!("the demo is limited to {MAX_NODES} nodes")));
        }
        let spec = GraphSpec {
            kind: kind.parse::<GraphKind>()?,
            n,
            seed,
        };
        let generated = spec.generate()?;
        let coords = generated.coords.unwrap_or_else(|| circle_layout(n));
        Ok(Demo {
            graph: generated.graph,
            coords,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn coverage_of(&self, root: usize, t: f64, mu: f64, hops: usize) -> bsgda::Result<Coverage> {
        let om = estimate_coverage(&self.graph, t, root, hops, mu)?;
        Ok(Coverage {
            members: to_u32(&om.members),
            scales: om.scales,
        })
    }

    pub fn select(&self, k: usize, mu: f64, eps: f64) -> bsgda::Result<Selection> {
        let out = bs_gda(&self.graph, k, &GdaParams { mu, eps, hops: 12 })?;
        Ok(Selection {
            nodes: to_u32(&out.sample_set),
            t_hat: out.achieved_t,
            certified_lb: out.certified_lower_bound,
            valid: out.valid,
        })
    }

    pub fn compare(&self, k: usize, mu: f64, seed: u64) -> bsgda::Result<Comparison> {
        let spectrum = laplacian_spectrum(&self.graph, MAX_NODES)?;
        let signal = gen_gs1(&spectrum, seed);
        let gda = bs_gda(&self.graph, k, &GdaParams { mu, ..GdaParams::default() })?.sample_set;
        let rnd = random_sampler(&self.graph, k, seed)?;
        let solve = |set: &[usize]| -> bsgda::Result<(Vec<f64>, f64)> {
            let rec = glr_reconstruct(&self.graph, &signal.observe(set)?, &SolverConfig::with_mu(mu))?;
            let err = mse(&rec.x, &signal.x_true)?;
            Ok((rec.x, err))
        };
        let (gda_estimate, gda_mse) = solve(&gda)?;
        let (random_estimate, random_mse) = solve(&rnd)?;
        Ok(Comparison {
            truth: signal.x_true,
            gda_nodes: to_u32(&gda),
            gda_estimate,
            gda_mse,
            random_nodes: to_u32(&rnd),
            random_estimate,
            random_mse,
        })
    }
}

fn js_err(e: bsgda::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
impl Demo {
    /// `kind` is `sensor`, `community` or `ba`.
    #[wasm_bindgen(constructor)]
    pub fn new(kind: &str, n: usize, seed: u64) -> Result<Demo, JsError> {
        Demo::build(kind, n, seed).map_err(js_err)
    }

    #[wasm_bindgen(getter)]
    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Node positions as `[x0, y0, x1, y1, ...]`.
    pub fn coords(&self) -> Vec<f64> {
        self.coords.iter().flatten().copied().collect()
    }

    /// Edges as `[i0, j0, i1, j1, ...]`.
    pub fn edges(&self) -> Vec<u32> {
        self.graph.edges().iter().flat_map(|e| [e.i as u32, e.j as u32]).collect()
    }

    pub fn coverage(&self, root: usize, t: f64, mu: f64, hops: usize) -> Result<Coverage, JsError> {
        self.coverage_of(root, t, mu, hops).map_err(js_err)
    }

    pub fn sample(&self, k: usize, mu: f64, eps: f64) -> Result<Selection, JsError> {
        self.select(k, mu, eps).map_err(js_err)
    }

    pub fn reconstruct(&self, k: usize, mu: f64, seed: u64) -> Result<Comparison, JsError> {
        self.compare(k, mu, seed).map_err(js_err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_every_family_with_layout() {
        for kind in ["sensor", "community", "ba"] {
            let d = Demo::build(kind, 60, 1).unwrap();
            assert_eq!(d.coords().len(), 120);
            assert_eq!(d.edges().len(), 2 * d.graph().num_edges());
        }
        assert!(Demo::build("grid", 60, 1).is_err());
        assert!(Demo::build("sensor", MAX_NODES + 1, 1).is_err());
    }

    #[test]
    fn coverage_contains_root() {
        let d = Demo::build("sensor", 80, 2).unwrap();
        let c = d.coverage_of(5, 0.3, 0.1, 12).unwrap();
        assert_eq!(c.members[0], 5);
        assert_eq!(c.members.len(), c.scales.len());
    }

    #[test]
    fn selection_respects_budget() {
        let d = Demo::build("sensor", 100, 3).unwrap();
        let s = d.select(10, 0.01, 1e-4).unwrap();
        assert!(s.valid);
        assert!(s.nodes.len() <= 10);
    }

    #[test]
    fn comparison_reports_both_samplers() {
        let d = Demo::build("sensor", 200, 4).unwrap();
        let c = d.compare(40, 0.01, 7).unwrap();
        assert_eq!(c.truth.len(), 200);
        assert_eq!(c.gda_estimate.len(), 200);
        assert_eq!(c.random_nodes.len(), 40);
        assert!(c.gda_mse.is_finite() && c.random_mse.is_finite());
    }
}
