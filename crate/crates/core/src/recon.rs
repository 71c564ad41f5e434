//! Graph-Laplacian-regularized reconstruction.
//!
//! Given samples `y` on nodes `S`, the estimate solves
//! `(HᵀH + μL) x̂ = Hᵀy` with `HᵀH = diag(a)`. The system is symmetric and
//! positive definite exactly when every connected component holds a sample,
//! and is solved matrix-free by conjugate gradient.

use crate::disc::{check_mu, SamplingVector};
use crate::error::{Error, Result};
use crate::graph::{check_len, Graph};
use crate::oracle;

/// Sampled nodes and the values observed on them, in the same order.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleObservation {
    n: usize,
    sample_set: Vec<usize>,
    values: Vec<f64>,
}

impl SampleObservation {
    pub fn new(n: usize, sample_set: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        check_len(sample_set.len(), values.len())?;
        // Validates range and uniqueness.
        SamplingVector::from_nodes(n, &sample_set)?;
        Ok(SampleObservation {
            n,
            sample_set,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sample_set(&self) -> &[usize] {
        &self.sample_set
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sampling_vector(&self) -> SamplingVector {
        SamplingVector::from_nodes(self.n, &self.sample_set).expect("validated at construction")
    }

    /// `Hᵀy`: observations scattered back onto their nodes, zero elsewhere.
    pub fn scatter(&self) -> Vec<f64> {
        let mut b = vec![0.0; self.n];
        for (&v, &y) in self.sample_set.iter().zip(&self.values) {
            b[v] = y;
        }
        b
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub mu: f64,
    /// Relative residual `‖r‖ / ‖Hᵀy‖` at which iteration stops.
    pub tol: f64,
    /// Iteration cap; `None` means `10·n`.
    pub max_iters: Option<usize>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            mu: 0.01,
            tol: 1e-8,
            max_iters: None,
        }
    }
}

impl SolverConfig {
    pub fn with_mu(mu: f64) -> Self {
        SolverConfig {
            mu,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        check_mu(self.mu)?;
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::InvalidParameter(format!("tol = {} must be positive", self.tol)));
        }
        if self.max_iters == Some(0) {
            return Err(Error::InvalidParameter("max_iters must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub relative_residual: f64,
}

/// `y_k = x[S_k]`.
pub fn apply_sampling(x: &[f64], sample_set: &[usize]) -> Result<Vec<f64>> {
    sample_set
        .iter()
        .map(|&v| {
            x.get(v).copied().ok_or(Error::IndexOutOfRange {
                index: v,
                n: x.len(),
            })
        })
        .collect()
}

/// Fails with the first component that holds no sample.
pub fn check_components_sampled(g: &Graph, a: &SamplingVector) -> Result<()> {
    let mut covered = vec![false; g.num_components()];
    for (v, &c) in g.components().iter().enumerate() {
        covered[c] |= a.is_sampled(v);
    }
    match covered.iter().position(|&c| !c) {
        None => Ok(()),
        Some(component) => Err(Error::UnsampledComponent {
            component,
            node: g
                .components()
                .iter()
                .position(|&c| c == component)
                .expect("every label has a node"),
        }),
    }
}

/// `out = (diag(a) + μL) x`.
fn apply_system(g: &Graph, a: &SamplingVector, mu: f64, x: &[f64], out: &mut [f64]) {
    g.laplacian().apply_into(x, out);
    for (i, o) in out.iter_mut().enumerate() {
        *o = a.value(i) * x[i] + mu * *o;
    }
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}

/// Solves `(diag(a) + μL) x̂ = Hᵀy` by unpreconditioned conjugate gradient.
pub fn glr_reconstruct(g: &Graph, obs: &SampleObservation, cfg: &SolverConfig) -> Result<Reconstruction> {
    cfg.validate()?;
    check_len(g.n(), obs.n())?;
    if obs.sample_set().is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let a = obs.sampling_vector();
    check_components_sampled(g, &a)?;

    let n = g.n();
    let b = obs.scatter();
    let b_norm = norm(&b);
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok(Reconstruction {
            x,
            iterations: 0,
            relative_residual: 0.0,
        });
    }
    let max_iters = cfg.max_iters.unwrap_or(10 * n);
    let mut r = b.clone();
    let mut p = r.clone();
    let mut ap = vec![0.0; n];
    let mut rr = dot(&r, &r);
    let mut iterations = 0;
    while rr.sqrt() > cfg.tol * b_norm {
        if iterations == max_iters {
            return Err(Error::NotConverged {
                iterations,
                residual: rr.sqrt() / b_norm,
            });
        }
        apply_system(g, &a, cfg.mu, &p, &mut ap);
        let alpha = rr / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        let rr_next = dot(&r, &r);
        let beta = rr_next / rr;
        for i in 0..n {
            p[i] = r[i] + beta * p[i];
        }
        rr = rr_next;
        iterations += 1;
    }

    // Report the true residual rather than the recurrence.
    apply_system(g, &a, cfg.mu, &x, &mut ap);
    let res: Vec<f64> = ap.iter().zip(&b).map(|(u, v)| u - v).collect();
    Ok(Reconstruction {
        x,
        iterations,
        relative_residual: norm(&res) / b_norm,
    })
}

/// Mean squared error `(1/n) Σ (x̂_i − x_i)²`.
pub fn mse(estimate: &[f64], truth: &[f64]) -> Result<f64> {
    check_len(truth.len(), estimate.len())?;
    if truth.is_empty() {
        return Ok(0.0);
    }
    let sum: f64 = estimate
        .iter()
        .zip(truth)
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(sum / truth.len() as f64)
}

/// Both sides of the reconstruction error bound
/// `‖x̂ − x‖ ≤ μ/λ_min(B) · ‖L(x + ñ)‖ + ‖ñ‖`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MseBound {
    pub lhs: f64,
    pub rhs: f64,
    pub lambda_min: f64,
}

impl MseBound {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

/// Evaluates the error bound for observations `y = x[S] + ñ[S]`.
///
/// `noise` is full length; only its entries on `S` enter `y`, but the bound
/// is stated with the whole vector as in the noise model `y = H(x + ñ)`.
/// The estimate is solved densely so the check does not depend on the
/// iterative solver's tolerance.
pub fn mse_bound_check(
    g: &Graph,
    sample_set: &[usize],
    x: &[f64],
    noise: &[f64],
    mu: f64,
    oracle_cap: usize,
) -> Result<MseBound> {
    check_mu(mu)?;
    check_len(g.n(), x.len())?;
    check_len(g.n(), noise.len())?;
    let a = SamplingVector::from_nodes(g.n(), sample_set)?;
    let noisy: Vec<f64> = x.iter().zip(noise).map(|(u, v)| u + v).collect();
    let rhs_vec: Vec<f64> = (0..g.n()).map(|i| a.value(i) * noisy[i]).collect();
    let estimate = oracle::dense_solve(g, mu, &a, &rhs_vec, oracle_cap)?;
    let lambda_min = oracle::lambda_min(g, mu, &a, oracle_cap)?;
    let diff: Vec<f64> = estimate.iter().zip(x).map(|(u, v)| u - v).collect();
    let l_noisy = g.laplacian().apply(&noisy)?;
    Ok(MseBound {
        lhs: norm(&diff),
        rhs: mu / lambda_min * norm(&l_noisy) + norm(noise),
        lambda_min,
    })
}
