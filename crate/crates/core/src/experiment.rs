//! Experiment harness: sample, reconstruct noisy synthetic signals, and
//! tabulate mean squared error and runtime per sampler and budget.

use std::fmt;
use std::io;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{ba_graph, community_graph, sensor_graph, GeneratedGraph, DEFAULT_SENSOR_KNN};
use crate::graph::Graph;
use crate::oracle::{gen_gs1, laplacian_spectrum, Gs2Generator, SignalInstance, Spectrum, DEFAULT_ORACLE_CAP};
use crate::recon::{glr_reconstruct, mse, SolverConfig};
use crate::sampler::{bs_gda, random_sampler, GdaParams};
use crate::seed::derive_seed;

const STREAM_SIGNAL: u64 = 1;
const STREAM_NOISE: u64 = 2;
const STREAM_RANDOM_SET: u64 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    Sensor,
    Community,
    Ba,
}

impl FromStr for GraphKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sensor" => Ok(GraphKind::Sensor),
            "community" => Ok(GraphKind::Community),
            "ba" => Ok(GraphKind::Ba),
            other => Err(Error::InvalidParameter(format!(
                "unknown graph type `{other}` (expected sensor, community or ba)"
            ))),
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Sensor => "sensor",
            GraphKind::Community => "community",
            GraphKind::Ba => "ba",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphSpec {
    pub kind: GraphKind,
    pub n: usize,
    pub seed: u64,
}

impl GraphSpec {
    pub fn generate(&self) -> Result<GeneratedGraph> {
        match self.kind {
            GraphKind::Sensor => sensor_graph(self.n, DEFAULT_SENSOR_KNN, self.seed),
            GraphKind::Community => community_graph(self.n, self.seed),
            GraphKind::Ba => ba_graph(self.n, self.seed),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignalKind {
    Gs1,
    Gs2,
}

impl FromStr for SignalKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gs1" => Ok(SignalKind::Gs1),
            "gs2" => Ok(SignalKind::Gs2),
            other => Err(Error::InvalidParameter(format!(
                "unknown signal model `{other}` (expected gs1 or gs2)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplerKind {
    Gda,
    Random,
}

impl SamplerKind {
    pub fn name(&self) -> &'static str {
        match self {
            SamplerKind::Gda => "bs-gda",
            SamplerKind::Random => "random",
        }
    }
}

impl FromStr for SamplerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gda" | "bs-gda" => Ok(SamplerKind::Gda),
            "random" => Ok(SamplerKind::Random),
            other => Err(Error::InvalidParameter(format!(
                "unknown sampler `{other}` (expected gda or random)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub graph: GraphSpec,
    pub signal: SignalKind,
    pub budgets: Vec<usize>,
    pub signal_draws: usize,
    pub noise_draws: usize,
    pub params: GdaParams,
    pub samplers: Vec<SamplerKind>,
    /// Root of every signal, noise and random-set seed.
    pub seed: u64,
}

impl ExperimentConfig {
    /// Sensor graph, GS1, both samplers, 10 × 10 trials.
    pub fn new(graph: GraphSpec, budgets: Vec<usize>) -> Self {
        ExperimentConfig {
            graph,
            signal: SignalKind::Gs1,
            budgets,
            signal_draws: 10,
            noise_draws: 10,
            params: GdaParams::default(),
            samplers: vec![SamplerKind::Gda, SamplerKind::Random],
            seed: 0,
        }
    }

    pub fn trials(&self) -> usize {
        self.signal_draws * self.noise_draws
    }

    pub fn validate(&self) -> Result<()> {
        if self.budgets.is_empty() {
            return Err(Error::InvalidParameter("at least one budget is required".into()));
        }
        if let Some(&k) = self.budgets.iter().find(|&&k| k == 0 || k > self.graph.n) {
            return Err(Error::InvalidParameter(format!(
                "budget {k} outside 1..={}",
                self.graph.n
            )));
        }
        if self.trials() == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.samplers.is_empty() {
            return Err(Error::InvalidParameter("at least one sampler is required".into()));
        }
        Ok(())
    }
}

/// One CSV row: `sampler,K,trials,mean_mse,std_mse,wall_ms`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRow {
    pub sampler: String,
    #[serde(rename = "K")]
    pub k: usize,
    pub trials: usize,
    pub mean_mse: f64,
    pub std_mse: f64,
    /// Sampler wall time; the only column that varies between identical runs.
    pub wall_ms: f64,
}

enum SignalSource {
    Gs1(Spectrum),
    Gs2(Gs2Generator),
}

impl SignalSource {
    fn new(kind: SignalKind, g: &Graph) -> Result<Self> {
        Ok(match kind {
            SignalKind::Gs1 => SignalSource::Gs1(laplacian_spectrum(g, DEFAULT_ORACLE_CAP)?),
            SignalKind::Gs2 => SignalSource::Gs2(Gs2Generator::new(g, DEFAULT_ORACLE_CAP)?),
        })
    }

    fn draw(&self, seed: u64) -> SignalInstance {
        match self {
            SignalSource::Gs1(spec) => gen_gs1(spec, seed),
            SignalSource::Gs2(gen) => gen.generate(seed),
        }
    }
}

/// The noisy instances an experiment reconstructs, in trial order.
pub fn trial_signals(cfg: &ExperimentConfig, g: &Graph) -> Result<Vec<SignalInstance>> {
    let source = SignalSource::new(cfg.signal, g)?;
    let mut out = Vec::with_capacity(cfg.trials());
    for s in 0..cfg.signal_draws {
        let base = source.draw(derive_seed(cfg.seed, STREAM_SIGNAL, s as u64));
        for q in 0..cfg.noise_draws {
            let trial = s * cfg.noise_draws + q;
            out.push(base.with_noise_seed(derive_seed(cfg.seed, STREAM_NOISE, trial as u64)));
        }
    }
    Ok(out)
}

/// Sample set chosen by `sampler` with budget `k`, and the time it took.
pub fn select_samples(
    sampler: SamplerKind,
    g: &Graph,
    k: usize,
    params: &GdaParams,
    seed: u64,
) -> Result<(Vec<usize>, f64)> {
    let start = Instant::now();
    let set = match sampler {
        SamplerKind::Gda => bs_gda(g, k, params)?.sample_set,
        SamplerKind::Random => random_sampler(g, k, derive_seed(seed, STREAM_RANDOM_SET, k as u64))?,
    };
    Ok((set, start.elapsed().as_secs_f64() * 1e3))
}

fn trial_mses(g: &Graph, signals: &[SignalInstance], set: &[usize], solver: &SolverConfig) -> Result<Vec<f64>> {
    let one = |(trial, sig): (usize, &SignalInstance)| -> Result<f64> {
        let wrap = |e| Error::Trial {
            trial,
            source: Box::new(e),
        };
        let obs = sig.observe(set).map_err(wrap)?;
        let rec = glr_reconstruct(g, &obs, solver).map_err(wrap)?;
        mse(&rec.x, &sig.x_true).map_err(wrap)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        signals.par_iter().enumerate().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        signals.iter().enumerate().map(one).collect()
    }
}

/// Mean and sample standard deviation, summed in index order.
fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std = if values.len() > 1 {
        (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, std)
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let g = cfg.graph.generate()?.graph;
    run_experiment_on(cfg, &g)
}

/// Runs the experiment on an already built graph (`cfg.graph` is ignored
/// apart from budget validation).
pub fn run_experiment_on(cfg: &ExperimentConfig, g: &Graph) -> Result<Vec<ExperimentRow>> {
    cfg.validate()?;
    let signals = trial_signals(cfg, g)?;
    let solver = SolverConfig::with_mu(cfg.params.mu);
    let mut rows = Vec::new();
    for &sampler in &cfg.samplers {
        for &k in &cfg.budgets {
            let (set, wall_ms) = select_samples(sampler, g, k, &cfg.params, cfg.seed)?;
            let mses = trial_mses(g, &signals, &set, &solver)?;
            let (mean_mse, std_mse) = mean_std(&mses);
            rows.push(ExperimentRow {
                sampler: sampler.name().to_string(),
                k,
                trials: mses.len(),
                mean_mse,
                std_mse,
                wall_ms,
            });
        }
    }
    Ok(rows)
}

pub fn write_csv<W: io::Write>(rows: &[ExperimentRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<ExperimentRow>> {
    let mut r = csv::Reader::from_reader(input);
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

/// How the timing sweep chooses the budget for each size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetRule {
    Fixed(usize),
    /// `K = n / divisor`.
    Fraction(usize),
}

impl BudgetRule {
    pub fn budget(&self, n: usize) -> usize {
        match *self {
            BudgetRule::Fixed(k) => k,
            BudgetRule::Fraction(d) => (n / d).max(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimingRow {
    pub n: usize,
    pub k: usize,
    /// Fastest of the repeats, sampler only.
    pub wall_ms: f64,
    pub achieved_t: f64,
}

/// Times `bs_gda` on sensor graphs of each size. Graph generation is not
/// timed.
pub fn run_timing(
    sizes: &[usize],
    rule: BudgetRule,
    params: &GdaParams,
    seed: u64,
    repeats: usize,
) -> Result<Vec<TimingRow>> {
    let mut rows = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let g = sensor_graph(n, DEFAULT_SENSOR_KNN, derive_seed(seed, n as u64, 0))?.graph;
        let k = rule.budget(n);
        let mut best = f64::INFINITY;
        let mut achieved_t = 0.0;
        for _ in 0..repeats.max(1) {
            let start = Instant::now();
            let out = bs_gda(&g, k, params)?;
            best = best.min(start.elapsed().as_secs_f64() * 1e3);
            achieved_t = out.achieved_t;
        }
        rows.push(TimingRow {
            n,
            k,
            wall_ms: best,
            achieved_t,
        });
    }
    Ok(rows)
}

/// `time(large) / time(small)` from a timing table.
pub fn timing_ratio(rows: &[TimingRow], small: usize, large: usize) -> Option<f64> {
    let t = |n| rows.iter().find(|r| r.n == n).map(|r| r.wall_ms);
    Some(t(large)? / t(small)?)
}
