//! Dense reference computations for desk-scale graphs.
//!
//! Everything here is `O(n³)` and exists to check the sparse algorithms and
//! to synthesize test signals: eigendecompositions of `diag(a) + μL`, the
//! graph Fourier transform, bandlimited (GS1) and GMRF (GS2) signals, dense
//! linear solves, and an exhaustive minimum set cover.

use nalgebra::{DMatrix, DVector};
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::disc::SamplingVector;
use crate::error::{Error, Result};
use crate::generators::rng_from_seed;
use crate::graph::{check_len, Graph};
use crate::recon::SampleObservation;
use crate::seed::derive_seed;

pub const DEFAULT_ORACLE_CAP: usize = 500;

/// Largest universe [`brute_force_set_cover`] accepts.
pub const SET_COVER_CAP: usize = 12;

pub const NOISE_STD: f64 = 0.1;
pub const GS1_COEFF_VARIANCE: f64 = 10.0;
pub const GS2_DELTA: f64 = 1e-5;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::OracleCapExceeded { n, cap })
    } else {
        Ok(())
    }
}

pub fn dense_laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut l = DMatrix::zeros(n, n);
    for i in 0..n {
        l[(i, i)] = g.degree(i);
    }
    for e in g.edges() {
        l[(e.i, e.j)] = -e.w;
        l[(e.j, e.i)] = -e.w;
    }
    l
}

/// `B = diag(a) + μL` as a dense matrix.
pub fn dense_system_matrix(g: &Graph, mu: f64, a: &SamplingVector) -> Result<DMatrix<f64>> {
    check_len(g.n(), a.len())?;
    let mut b = dense_laplacian(g) * mu;
    for i in 0..g.n() {
        b[(i, i)] += a.value(i);
    }
    Ok(b)
}

/// Eigenpairs of a symmetric matrix, eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
    eigenvectors: DMatrix<f64>,
}

impl Spectrum {
    pub fn from_symmetric(m: DMatrix<f64>) -> Self {
        let eig = m.symmetric_eigen();
        let n = eig.eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let eigenvectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
        Spectrum {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// Orthonormal eigenvectors as columns, in eigenvalue order.
    pub fn eigenvectors(&self) -> &DMatrix<f64> {
        &self.eigenvectors
    }

    pub fn eigenvector(&self, k: usize) -> Vec<f64> {
        self.eigenvectors.column(k).iter().copied().collect()
    }

    /// Graph Fourier transform `α = Uᵀx`.
    pub fn gft(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_len(self.len(), x.len())?;
        let v = self.eigenvectors.tr_mul(&DVector::from_column_slice(x));
        Ok(v.iter().copied().collect())
    }

    /// Inverse transform `x = Uα`.
    pub fn inverse_gft(&self, alpha: &[f64]) -> Result<Vec<f64>> {
        check_len(self.len(), alpha.len())?;
        let v = &self.eigenvectors * DVector::from_column_slice(alpha);
        Ok(v.iter().copied().collect())
    }
}

/// Full eigendecomposition of `diag(a) + μL`.
pub fn dense_spectrum(g: &Graph, mu: f64, a: &SamplingVector, cap: usize) -> Result<Spectrum> {
    check_cap(g.n(), cap)?;
    Ok(Spectrum::from_symmetric(dense_system_matrix(g, mu, a)?))
}

/// Spectrum of `L` itself, the graph frequency basis.
pub fn laplacian_spectrum(g: &Graph, cap: usize) -> Result<Spectrum> {
    check_cap(g.n(), cap)?;
    Ok(Spectrum::from_symmetric(dense_laplacian(g)))
}

/// `λ_min(diag(a) + μL)`, eigenvalues only.
pub fn lambda_min(g: &Graph, mu: f64, a: &SamplingVector, cap: usize) -> Result<f64> {
    check_cap(g.n(), cap)?;
    let b = dense_system_matrix(g, mu, a)?;
    Ok(b.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}

/// Solves `(diag(a) + μL) x = rhs` by dense LU.
pub fn dense_solve(
    g: &Graph,
    mu: f64,
    a: &SamplingVector,
    rhs: &[f64],
    cap: usize,
) -> Result<Vec<f64>> {
    check_cap(g.n(), cap)?;
    check_len(g.n(), rhs.len())?;
    let b = dense_system_matrix(g, mu, a)?;
    let x = b
        .lu()
        .solve(&DVector::from_column_slice(rhs))
        .ok_or_else(|| Error::Factorization("system matrix is singular".into()))?;
    Ok(x.iter().copied().collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalModel {
    /// Random GFT coefficients on the `bandwidth` lowest frequencies.
    Gs1 { bandwidth: usize },
    /// Draw from `N(0, (L + δI)⁻¹)`, then standardized.
    Gs2 { delta: f64 },
}

/// A ground-truth graph signal with a full-length additive noise draw.
#[derive(Debug, Clone)]
pub struct SignalInstance {
    pub x_true: Vec<f64>,
    pub noise: Vec<f64>,
    pub model: SignalModel,
    pub noise_std: f64,
    pub seed: u64,
}

impl SignalInstance {
    /// Noisy observations `y = x[S] + ñ[S]`.
    pub fn observe(&self, sample_set: &[usize]) -> Result<SampleObservation> {
        let y = sample_set
            .iter()
            .map(|&v| {
                if v < self.x_true.len() {
                    Ok(self.x_true[v] + self.noise[v])
                } else {
                    Err(Error::IndexOutOfRange {
                        index: v,
                        n: self.x_true.len(),
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SampleObservation::new(self.x_true.len(), sample_set.to_vec(), y)
    }

    /// Same ground truth with a fresh noise draw.
    pub fn with_noise_seed(&self, seed: u64) -> Self {
        SignalInstance {
            noise: noise_vector(self.x_true.len(), self.noise_std, seed),
            seed,
            ..self.clone()
        }
    }
}

/// I.i.d. `N(0, std²)` entries.
pub fn noise_vector(n: usize, std: f64, seed: u64) -> Vec<f64> {
    let mut rng = rng_from_seed(seed);
    let dist = Normal::new(0.0, std).expect("noise std must be finite and non-negative");
    (0..n).map(|_| dist.sample(&mut rng)).collect()
}

pub fn gs1_bandwidth(n: usize) -> usize {
    n / 10
}

/// Bandlimited signal: the lowest `⌊n/10⌋` GFT coefficients are
/// `N(0, 10)` (variance 10), the rest zero.
pub fn gen_gs1(spectrum: &Spectrum, seed: u64) -> SignalInstance {
    let n = spectrum.len();
    let bandwidth = gs1_bandwidth(n);
    let mut rng = rng_from_seed(derive_seed(seed, 0, 0));
    let coeff = Normal::new(0.0, GS1_COEFF_VARIANCE.sqrt()).expect("valid std");
    let mut alpha = vec![0.0; n];
    for a in alpha.iter_mut().take(bandwidth) {
        *a = coeff.sample(&mut rng);
    }
    let x_true = spectrum.inverse_gft(&alpha).expect("length matches spectrum");
    SignalInstance {
        x_true,
        noise: noise_vector(n, NOISE_STD, derive_seed(seed, 1, 0)),
        model: SignalModel::Gs1 { bandwidth },
        noise_std: NOISE_STD,
        seed,
    }
}

/// Reusable Cholesky factor of `L + δI` for GMRF draws.
#[derive(Debug, Clone)]
pub struct Gs2Generator {
    upper: DMatrix<f64>,
    delta: f64,
}

impl Gs2Generator {
    pub fn new(g: &Graph, cap: usize) -> Result<Self> {
        Self::with_delta(g, GS2_DELTA, cap)
    }

    pub fn with_delta(g: &Graph, delta: f64, cap: usize) -> Result<Self> {
        check_cap(g.n(), cap)?;
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::InvalidParameter(format!("delta = {delta} must be positive")));
        }
        let mut q = dense_laplacian(g);
        for i in 0..g.n() {
            q[(i, i)] += delta;
        }
        let chol = q
            .cholesky()
            .ok_or_else(|| Error::Factorization("L + δI is not positive definite".into()))?;
        Ok(Gs2Generator {
            upper: chol.l().transpose(),
            delta,
        })
    }

    /// Raw draw `x = R⁻ᵀ z` where `L + δI = R Rᵀ`, so `cov(x) = (L + δI)⁻¹`.
    pub fn draw_raw(&self, seed: u64) -> Vec<f64> {
        let n = self.upper.nrows();
        let mut rng = rng_from_seed(seed);
        let z = DVector::from_fn(n, |_, _| StandardNormal.sample(&mut rng));
        let x = self
            .upper
            .solve_upper_triangular(&z)
            .expect("Cholesky factor has a positive diagonal");
        x.iter().copied().collect()
    }

    /// Standardized draw (zero mean, unit population std) plus noise.
    pub fn generate(&self, seed: u64) -> SignalInstance {
        let mut x = self.draw_raw(derive_seed(seed, 0, 0));
        standardize(&mut x);
        let n = x.len();
        SignalInstance {
            x_true: x,
            noise: noise_vector(n, NOISE_STD, derive_seed(seed, 1, 0)),
            model: SignalModel::Gs2 { delta: self.delta },
            noise_std: NOISE_STD,
            seed,
        }
    }
}

pub fn gen_gs2(g: &Graph, seed: u64, cap: usize) -> Result<SignalInstance> {
    Ok(Gs2Generator::new(g, cap)?.generate(seed))
}

fn standardize(x: &mut [f64]) {
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    let std = var.sqrt();
    for v in x.iter_mut() {
        *v = if std > 0.0 { (*v - mean) / std } else { 0.0 };
    }
}

/// Minimum number of `subsets` whose union is `0..universe`, by exhaustive
/// branching on the first uncovered element with iterative deepening.
///
/// Returns the chosen subset indices (ascending), or `None` when no cover
/// of at most `max_size` subsets exists.
pub fn brute_force_set_cover(
    universe: usize,
    subsets: &[Vec<usize>],
    max_size: usize,
) -> Result<Option<Vec<usize>>> {
    if universe > SET_COVER_CAP {
        return Err(Error::SetCoverTooLarge {
            size: universe,
            cap: SET_COVER_CAP,
        });
    }
    let full: u32 = if universe == 0 { 0 } else { (1u32 << universe) - 1 };
    let mut masks = Vec::with_capacity(subsets.len());
    for s in subsets {
        let mut m = 0u32;
        for &e in s {
            if e >= universe {
                return Err(Error::IndexOutOfRange { index: e, n: universe });
            }
            m |= 1 << e;
        }
        masks.push(m);
    }
    let reachable = masks.iter().fold(0u32, |acc, m| acc | m);
    if reachable & full != full {
        return Ok(None);
    }

    fn search(masks: &[u32], full: u32, covered: u32, depth: usize, picks: &mut Vec<usize>) -> bool {
        if covered == full {
            return true;
        }
        if depth == 0 {
            return false;
        }
        let first = (!covered & full).trailing_zeros();
        for (k, &m) in masks.iter().enumerate() {
            if m & (1 << first) != 0 {
                picks.push(k);
                if search(masks, full, covered | m, depth - 1, picks) {
                    return true;
                }
                picks.pop();
            }
        }
        false
    }

    for depth in 0..=max_size.min(universe) {
        let mut picks = Vec::new();
        if search(&masks, full, 0, depth, &mut picks) {
            picks.sort_unstable();
            return Ok(Some(picks));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path_graph;

    /// Roots of the characteristic cubic of a symmetric 3×3 matrix by the
    /// trigonometric method.
    fn cubic_eigenvalues(m: &DMatrix<f64>) -> [f64; 3] {
        let tr = m.trace();
        let q = tr / 3.0;
        let p1 = m[(0, 1)].powi(2) + m[(0, 2)].powi(2) + m[(1, 2)].powi(2);
        let p2 = (m[(0, 0)] - q).powi(2) + (m[(1, 1)] - q).powi(2) + (m[(2, 2)] - q).powi(2) + 2.0 * p1;
        let p = (p2 / 6.0).sqrt();
        let bm = (m - DMatrix::identity(3, 3) * q) / p;
        let r = (bm.determinant() / 2.0).clamp(-1.0, 1.0);
        let phi = r.acos() / 3.0;
        let e1 = q + 2.0 * p * phi.cos();
        let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
        let e2 = 3.0 * q - e1 - e3;
        let mut e = [e1, e2, e3];
        e.sort_by(f64::total_cmp);
        e
    }

    #[test]
    fn extreme_sampling_lambda_min() {
        let g = path_graph(5).unwrap();
        let full = dense_spectrum(&g, 1.0, &SamplingVector::full(5), DEFAULT_ORACLE_CAP).unwrap();
        assert!((full.lambda_min() - 1.0).abs() < 1e-10);
        let empty = dense_spectrum(&g, 1.0, &SamplingVector::empty(5), DEFAULT_ORACLE_CAP).unwrap();
        assert!(empty.lambda_min().abs() < 1e-10);
    }

    #[test]
    fn three_node_spectrum_matches_cubic_roots() {
        let graphs = [
            Graph::new(3, [(0, 1, 0.7), (1, 2, 1.3)]).unwrap(),
            Graph::new(3, [(0, 1, 0.2), (1, 2, 2.0), (0, 2, 0.9)]).unwrap(),
        ];
        for g in &graphs {
            for nodes in [vec![], vec![0], vec![1, 2], vec![0, 1, 2]] {
                let a = SamplingVector::from_nodes(3, &nodes).unwrap();
                let spec = dense_spectrum(g, 0.4, &a, 10).unwrap();
                let b = dense_system_matrix(g, 0.4, &a).unwrap();
                let roots = cubic_eigenvalues(&b);
                for (x, y) in spec.eigenvalues().iter().zip(roots) {
                    assert!((x - y).abs() < 1e-8, "{x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn laplacian_spectrum_invariants() {
        let g = crate::generators::sensor_graph(60, 6, 4).unwrap().graph;
        assert!(g.is_connected());
        let spec = laplacian_spectrum(&g, DEFAULT_ORACLE_CAP).unwrap();
        assert!(spec.eigenvalues()[0].abs() < 1e-8);
        assert!(spec.eigenvalues()[1] > 1e-8);
        let u = spec.eigenvectors();
        let gram = u.tr_mul(u);
        assert!((gram - DMatrix::identity(60, 60)).amax() < 1e-8);
    }

    #[test]
    fn gft_round_trip_and_parseval() {
        let g = crate::generators::ba_graph(30, 2).unwrap().graph;
        let spec = laplacian_spectrum(&g, DEFAULT_ORACLE_CAP).unwrap();
        let x = noise_vector(30, 1.0, 5);
        let alpha = spec.gft(&x).unwrap();
        let back = spec.inverse_gft(&alpha).unwrap();
        for (a, b) in x.iter().zip(&back) {
            assert!((a - b).abs() < 1e-9);
        }
        let nx: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        let na: f64 = alpha.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!((nx - na).abs() < 1e-9);
        let u1 = spec.eigenvector(0);
        let e = spec.gft(&u1).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-9);
        assert!(e[1..].iter().all(|v| v.abs() < 1e-9));
        assert!(spec.gft(&[1.0; 3]).is_err());
    }

    #[test]
    fn similarity_preserves_eigenvalues() {
        let g = crate::generators::sensor_graph(25, 4, 8).unwrap().graph;
        let a = SamplingVector::from_nodes(25, &[1, 7, 19]).unwrap();
        let b = dense_system_matrix(&g, 0.3, &a).unwrap();
        let s = noise_vector(25, 1.0, 3).iter().map(|v| v.exp()).collect::<Vec<_>>();
        let c = DMatrix::from_fn(25, 25, |i, j| s[i] * b[(i, j)] / s[j]);
        let complex = c.complex_eigenvalues();
        assert!(complex.iter().all(|z| z.im.abs() < 1e-8));
        let mut ev: Vec<f64> = complex.iter().map(|z| z.re).collect();
        ev.sort_by(f64::total_cmp);
        let spec = Spectrum::from_symmetric(b);
        for (x, y) in ev.iter().zip(spec.eigenvalues()) {
            assert!((x - y).abs() < 1e-8);
        }
    }

    #[test]
    fn gs1_is_bandlimited_and_deterministic() {
        let g = crate::generators::sensor_graph(120, 6, 1).unwrap().graph;
        let spec = laplacian_spectrum(&g, DEFAULT_ORACLE_CAP).unwrap();
        let sig = gen_gs1(&spec, 9);
        assert_eq!(sig.model, SignalModel::Gs1 { bandwidth: 12 });
        let alpha = spec.gft(&sig.x_true).unwrap();
        assert!(alpha[12..].iter().all(|v| v.abs() <= 1e-10));
        assert_eq!(alpha[..12].iter().filter(|v| v.abs() > 0.0).count(), 12);
        let again = gen_gs1(&spec, 9);
        assert_eq!(sig.x_true, again.x_true);
        assert_eq!(sig.noise, again.noise);
        assert_eq!(gs1_bandwidth(500), 50);
    }

    #[test]
    fn gs2_is_standardized() {
        let g = crate::generators::sensor_graph(80, 6, 2).unwrap().graph;
        let sig = gen_gs2(&g, 4, DEFAULT_ORACLE_CAP).unwrap();
        let n = sig.x_true.len() as f64;
        let mean = sig.x_true.iter().sum::<f64>() / n;
        let std = (sig.x_true.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        assert!(mean.abs() <= 1e-9);
        assert!((std - 1.0).abs() <= 1e-9);
        // 0.1 noise on a unit-power signal is 20 dB.
        let noise_power = sig.noise.iter().map(|v| v * v).sum::<f64>() / n;
        let snr = 10.0 * (1.0 / noise_power).log10();
        assert!((snr - 20.0).abs() < 2.0, "snr {snr}");
    }

    #[test]
    fn gs2_covariance_pattern() {
        // Centered draws have covariance ≈ L⁺; the standardized draws keep
        // its sign pattern.
        let g = Graph::new(5, [(0, 1, 1.0), (1, 2, 0.5), (2, 3, 2.0), (3, 4, 1.0)]).unwrap();
        let gen = Gs2Generator::new(&g, 10).unwrap();
        let draws = 10_000;
        let mut cov = DMatrix::<f64>::zeros(5, 5);
        for k in 0..draws {
            let x = gen.generate(k as u64).x_true;
            for i in 0..5 {
                for j in 0..5 {
                    cov[(i, j)] += x[i] * x[j];
                }
            }
        }
        cov /= draws as f64;
        let pinv = dense_laplacian(&g)
            .pseudo_inverse(1e-9)
            .unwrap();
        let big = 0.2 * pinv.amax();
        for i in 0..5 {
            for j in 0..5 {
                if pinv[(i, j)].abs() > big {
                    assert_eq!(cov[(i, j)].signum(), pinv[(i, j)].signum(), "({i},{j})");
                }
            }
        }
        let rank = |m: &DMatrix<f64>| {
            let mut idx: Vec<usize> = (0..5).collect();
            idx.sort_by(|&x, &y| m[(y, y)].total_cmp(&m[(x, x)]));
            idx
        };
        // Nodes 2 and 3 are too close to order reliably.
        assert_eq!(rank(&cov)[..3], rank(&pinv)[..3]);
    }

    #[test]
    fn set_cover_cases() {
        // 0-based versions of the path-5 subsets at T = 0.2.
        let omegas = vec![
            vec![0, 1],
            vec![0, 1, 2],
            vec![1, 2, 3],
            vec![2, 3, 4],
            vec![3, 4],
        ];
        let best = brute_force_set_cover(5, &omegas, 5).unwrap().unwrap();
        assert_eq!(best.len(), 2);
        assert!(brute_force_set_cover(5, &omegas, 1).unwrap().is_none());

        let singles: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
        assert_eq!(brute_force_set_cover(6, &singles, 6).unwrap().unwrap().len(), 6);

        let missing = vec![vec![0, 1], vec![1]];
        assert!(brute_force_set_cover(3, &missing, 3).unwrap().is_none());

        assert!(brute_force_set_cover(13, &[], 1).is_err());
    }

    #[test]
    fn dense_solve_matches_residual() {
        let g = path_graph(6).unwrap();
        let a = SamplingVector::from_nodes(6, &[0, 3]).unwrap();
        let rhs = vec![1.0, 0.0, 0.0, -2.0, 0.0, 0.0];
        let x = dense_solve(&g, 0.5, &a, &rhs, 10).unwrap();
        let b = dense_system_matrix(&g, 0.5, &a).unwrap();
        let r = &b * DVector::from_column_slice(&x) - DVector::from_column_slice(&rhs);
        assert!(r.norm() < 1e-12);
    }
}
