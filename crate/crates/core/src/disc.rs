//! Gershgorin discs of `B = diag(a) + μL` under a positive diagonal
//! similarity `C = S B S⁻¹`.
//!
//! Row `i` of `C` has center `a_i + μ d_i` (scaling leaves the diagonal
//! alone) and radius `μ s_i Σ_j w_ij / s_j`, so its left-end is
//!
//! ```text
//! ℓ_i = a_i + μ (d_i − s_i Σ_{j∈N_i} w_ij / s_j)
//! ```
//!
//! For non-negative weights `B` is a symmetric M-matrix-like operator, and
//! `min_i ℓ_i ≤ λ_min(B) ≤ max_i ℓ_i` holds for every positive `s`. The
//! lower half is Gershgorin's theorem; the upper half follows from a
//! Collatz-Wielandt argument on `σI − B`.

use crate::error::{Error, Result};
use crate::graph::{check_len, Graph};
use crate::oracle;

/// 0-1 indicator of the sampled nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SamplingVector {
    bits: Vec<bool>,
}

impl SamplingVector {
    pub fn empty(n: usize) -> Self {
        SamplingVector {
            bits: vec![false; n],
        }
    }

    pub fn full(n: usize) -> Self {
        SamplingVector {
            bits: vec![true; n],
        }
    }

    /// Indicator of `nodes`; repeated indices are rejected.
    pub fn from_nodes(n: usize, nodes: &[usize]) -> Result<Self> {
        let mut bits = vec![false; n];
        for &v in nodes {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            if bits[v] {
                return Err(Error::DuplicateSample(v));
            }
            bits[v] = true;
        }
        Ok(SamplingVector { bits })
    }

    pub fn from_bits(bits: Vec<bool>) -> Self {
        SamplingVector { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn is_sampled(&self, i: usize) -> bool {
        self.bits[i]
    }

    /// `a_i` as a real number.
    pub fn value(&self, i: usize) -> f64 {
        if self.bits[i] {
            1.0
        } else {
            0.0
        }
    }

    /// Number of sampled nodes, the budget `K` this vector spends.
    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.bits
            .iter()
            .enumerate()
            .filter_map(|(i, &b)| b.then_some(i))
            .collect()
    }
}

/// `a_i + μ (d_i − s_i Σ w_ij / s_j)` given the precomputed weighted sum
/// `inv_sum = Σ w_ij / s_j`.
#[inline]
pub(crate) fn left_end_from_parts(a: f64, mu: f64, degree: f64, s: f64, inv_sum: f64) -> f64 {
    a + mu * (degree - s * inv_sum)
}

/// The `s_i` that puts the left-end at exactly `target`.
#[inline]
pub(crate) fn aligning_scale(a: f64, mu: f64, degree: f64, target: f64, inv_sum: f64) -> f64 {
    (a + mu * degree - target) / (mu * inv_sum)
}

/// Scale factors and the discs they induce for one sampling vector.
#[derive(Debug, Clone)]
pub struct DiscState<'g> {
    graph: &'g Graph,
    a: SamplingVector,
    s: Vec<f64>,
    mu: f64,
}

impl<'g> DiscState<'g> {
    /// Unscaled state, `s ≡ 1`.
    pub fn new(graph: &'g Graph, a: SamplingVector, mu: f64) -> Result<Self> {
        let n = graph.n();
        Self::with_scales(graph, a, vec![1.0; n], mu)
    }

    pub fn with_scales(graph: &'g Graph, a: SamplingVector, s: Vec<f64>, mu: f64) -> Result<Self> {
        check_len(graph.n(), a.len())?;
        check_len(graph.n(), s.len())?;
        check_mu(mu)?;
        if let Some(i) = s.iter().position(|&v| !(v.is_finite() && v > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "scale factor s[{i}] = {} must be positive and finite",
                s[i]
            )));
        }
        Ok(DiscState { graph, a, s, mu })
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn sampling(&self) -> &SamplingVector {
        &self.a
    }

    pub fn scales(&self) -> &[f64] {
        &self.s
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn center(&self, i: usize) -> f64 {
        self.a.value(i) + self.mu * self.graph.degree(i)
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.mu * self.s[i] * self.inv_sum(i)
    }

    fn inv_sum(&self, i: usize) -> f64 {
        self.graph
            .neighbors(i)
            .iter()
            .map(|nb| nb.weight / self.s[nb.node])
            .sum()
    }

    pub fn left_end(&self, i: usize) -> f64 {
        left_end_from_parts(
            self.a.value(i),
            self.mu,
            self.graph.degree(i),
            self.s[i],
            self.inv_sum(i),
        )
    }

    pub fn left_ends(&self) -> Vec<f64> {
        (0..self.graph.n()).map(|i| self.left_end(i)).collect()
    }

    pub fn min_left_end(&self) -> f64 {
        self.left_ends().into_iter().fold(f64::INFINITY, f64::min)
    }

    pub fn max_left_end(&self) -> f64 {
        self.left_ends().into_iter().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Scale factor that aligns disc `i`'s left-end at `target`, given the
    /// current scales of its neighbors.
    pub fn scale_factor(&self, i: usize, target: f64) -> Result<f64> {
        if self.graph.neighbors(i).is_empty() {
            return Err(Error::IsolatedNode(i));
        }
        Ok(aligning_scale(
            self.a.value(i),
            self.mu,
            self.graph.degree(i),
            target,
            self.inv_sum(i),
        ))
    }

    pub fn set_scale(&mut self, i: usize, s: f64) -> Result<()> {
        if !(s.is_finite() && s > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale factor {s} must be positive and finite"
            )));
        }
        self.s[i] = s;
        Ok(())
    }
}

pub(crate) fn check_mu(mu: f64) -> Result<()> {
    if mu.is_finite() && mu > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("mu = {mu} must be positive")))
    }
}

/// Smallest left-end, exact smallest eigenvalue, largest left-end.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sandwich {
    pub min_left_end: f64,
    pub lambda_min: f64,
    pub max_left_end: f64,
}

impl Sandwich {
    pub fn holds(&self, tol: f64) -> bool {
        self.min_left_end <= self.lambda_min + tol && self.lambda_min <= self.max_left_end + tol
    }

    pub fn gap(&self) -> f64 {
        self.max_left_end - self.min_left_end
    }
}

/// Brackets `λ_min(diag(a) + μL)` between the extreme left-ends under `s`,
/// with the eigenvalue taken from a dense decomposition.
pub fn eig_sandwich_check(
    graph: &Graph,
    a: &SamplingVector,
    s: &[f64],
    mu: f64,
    oracle_cap: usize,
) -> Result<Sandwich> {
    let state = DiscState::with_scales(graph, a.clone(), s.to_vec(), mu)?;
    let lambda_min = oracle::lambda_min(graph, mu, a, oracle_cap)?;
    Ok(Sandwich {
        min_left_end: state.min_left_end(),
        lambda_min,
        max_left_end: state.max_left_end(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_graph;
    use crate::oracle::DEFAULT_ORACLE_CAP;
    use nalgebra::DMatrix;

    fn dense_b(g: &Graph, a: &SamplingVector, mu: f64) -> DMatrix<f64> {
        let n = g.n();
        let mut b = DMatrix::zeros(n, n);
        for i in 0..n {
            b[(i, i)] = a.value(i) + mu * g.degree(i);
        }
        for e in g.edges() {
            b[(e.i, e.j)] = -mu * e.w;
            b[(e.j, e.i)] = -mu * e.w;
        }
        b
    }

    #[test]
    fn unscaled_left_ends_equal_sampling_bits() {
        let g = path_graph(5).unwrap();
        let a = SamplingVector::from_nodes(5, &[1, 4]).unwrap();
        let st = DiscState::new(&g, a, 0.7).unwrap();
        let le = st.left_ends();
        assert_eq!(le, vec![0.0, 1.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn path_example_left_end() {
        // Paper's node 3 is index 2 here.
        let g = path_graph(5).unwrap();
        let a = SamplingVector::from_nodes(5, &[2]).unwrap();
        let st = DiscState::with_scales(&g, a, vec![1.0, 1.0, 1.4, 1.0, 1.0], 1.0).unwrap();
        assert!((st.left_end(2) - 0.2).abs() < 1e-12);
        // Dense cross-check: row 2 of S B S⁻¹.
        let b = dense_b(&g, st.sampling(), 1.0);
        let s = st.scales();
        let row: f64 = (0..5)
            .filter(|&j| j != 2)
            .map(|j| (s[2] * b[(2, j)] / s[j]).abs())
            .sum();
        assert!((b[(2, 2)] - row - st.left_end(2)).abs() < 1e-12);
    }

    #[test]
    fn path_example_scale_factors() {
        let g = path_graph(5).unwrap();
        let a = SamplingVector::from_nodes(5, &[2]).unwrap();
        let mut st = DiscState::new(&g, a, 1.0).unwrap();
        let s2 = st.scale_factor(2, 0.2).unwrap();
        assert!((s2 - 1.4).abs() < 1e-12);
        st.set_scale(2, s2).unwrap();
        let s1 = st.scale_factor(1, 0.2).unwrap();
        // 1.8 / (1 + 1/1.4) = 1.05
        assert!((s1 - 1.05).abs() < 1e-12);
        st.set_scale(1, s1).unwrap();
        assert!((st.left_end(1) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn sampled_node_scale_exceeds_one() {
        let g = Graph::new(4, [(0, 1, 0.4), (0, 2, 2.0), (0, 3, 0.1)]).unwrap();
        let a = SamplingVector::from_nodes(4, &[0]).unwrap();
        let st = DiscState::new(&g, a, 0.05).unwrap();
        for t in [0.01, 0.5, 0.99] {
            assert!(st.scale_factor(0, t).unwrap() > 1.0);
        }
    }

    #[test]
    fn isolated_node_has_no_scale_factor() {
        let g = Graph::new(3, [(0, 1, 1.0)]).unwrap();
        let st = DiscState::new(&g, SamplingVector::empty(3), 1.0).unwrap();
        assert!(matches!(st.scale_factor(2, 0.5), Err(Error::IsolatedNode(2))));
    }

    #[test]
    fn rejects_bad_state() {
        let g = path_graph(3).unwrap();
        assert!(DiscState::new(&g, SamplingVector::empty(3), 0.0).is_err());
        assert!(DiscState::with_scales(&g, SamplingVector::empty(3), vec![1.0, -1.0, 1.0], 1.0).is_err());
        assert!(DiscState::new(&g, SamplingVector::empty(4), 1.0).is_err());
        assert!(SamplingVector::from_nodes(3, &[0, 0]).is_err());
        assert!(SamplingVector::from_nodes(3, &[3]).is_err());
    }

    #[test]
    fn extreme_sampling_sandwich() {
        let g = path_graph(5).unwrap();
        let full = eig_sandwich_check(&g, &SamplingVector::full(5), &[1.0; 5], 0.5, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(full.min_left_end, 1.0);
        assert!((full.lambda_min - 1.0).abs() < 1e-10);
        assert!(full.holds(1e-9));
        let empty = eig_sandwich_check(&g, &SamplingVector::empty(5), &[1.0; 5], 0.5, DEFAULT_ORACLE_CAP).unwrap();
        assert_eq!(empty.min_left_end, 0.0);
        assert!(empty.lambda_min.abs() < 1e-10);
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let g = path_graph(20).unwrap();
        let err = eig_sandwich_check(&g, &SamplingVector::empty(20), &[1.0; 20], 1.0, 10);
        assert!(matches!(err, Err(Error::OracleCapExceeded { n: 20, cap: 10 })));
    }
}
