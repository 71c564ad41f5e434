use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use bsgda::experiment::{
    run_experiment_on, run_timing, timing_ratio, write_csv, BudgetRule, ExperimentConfig, GraphKind, GraphSpec,
    SamplerKind, SignalKind,
};
use bsgda::generators::GeneratedGraph;
use bsgda::io::{
    coords_path, load_edge_list, load_sampling_set, load_signal, save_coords, save_edge_list, save_sampling_set,
    save_signal, SamplingSetFile,
};
use bsgda::oracle::{gen_gs1, gen_gs2, laplacian_spectrum, DEFAULT_ORACLE_CAP};
use bsgda::sampler::{assemble_scaling, certified_lower_bound, verify_alignment, DEFAULT_ALIGNMENT_TOL};
use bsgda::{
    bs_gda, eig_sandwich_check, estimate_coverage, glr_reconstruct, mse, random_sampler, GdaParams, Graph,
    SampleObservation, SamplingVector, SolverConfig,
};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "bsgda", version, about = "Graph sampling by Gershgorin disc alignment")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random graph (and optionally a signal on it).
    Generate(GenerateArgs),
    /// Choose a sampling set for a graph.
    Sample(SampleArgs),
    /// Reconstruct a full signal from sampled values.
    Reconstruct(ReconstructArgs),
    /// Compare samplers by reconstruction MSE over many noisy trials.
    Experiment(ExperimentArgs),
    /// Check the disc bounds of a sampling set against the exact spectrum.
    Verify(VerifyArgs),
    /// Time the sampler on sensor graphs of increasing size.
    Timing(TimingArgs),
}

#[derive(Args, Clone, Copy)]
struct GdaFlags {
    /// GLR weight μ.
    #[arg(long, default_value_t = 0.01)]
    mu: f64,
    /// Binary-search tolerance on T.
    #[arg(long, default_value_t = 1e-5)]
    eps: f64,
    /// Hop limit p for coverage growth.
    #[arg(long, default_value_t = 12)]
    hops: usize,
}

impl GdaFlags {
    fn params(self) -> GdaParams {
        GdaParams {
            mu: self.mu,
            eps: self.eps,
            hops: self.hops,
        }
    }
}

#[derive(Args)]
struct GenerateArgs {
    /// sensor, community or ba.
    #[arg(long = "type")]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge-list output; coordinates, when the model has them, go to `<out>.xy`.
    #[arg(long)]
    out: PathBuf,
    /// Also draw a signal from this model (gs1 or gs2).
    #[arg(long, requires = "signal_out")]
    signal: Option<String>,
    /// Clean signal output, one value per node.
    #[arg(long, requires = "signal")]
    signal_out: Option<PathBuf>,
    /// Noisy version of the signal (noise std 0.1).
    #[arg(long, requires = "signal")]
    noisy_out: Option<PathBuf>,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    budget: usize,
    #[arg(long)]
    out: PathBuf,
    /// bs-gda or random.
    #[arg(long, default_value = "bs-gda")]
    sampler: String,
    /// Seed for the random sampler.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    gda: GdaFlags,
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Sampling-set file.
    #[arg(long)]
    samples: PathBuf,
    /// Either one value per sample (in sampling-set order) or a full-length
    /// signal to be sampled.
    #[arg(long)]
    signal: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Ground truth; when given the MSE is printed.
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long, default_value_t = 0.01)]
    mu: f64,
    /// Relative residual at which CG stops.
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
}

#[derive(Args)]
struct ExperimentArgs {
    /// Run on this edge list instead of generating a graph.
    #[arg(long, conflicts_with_all = ["kind", "n"])]
    graph: Option<PathBuf>,
    #[arg(long = "type", default_value = "sensor")]
    kind: String,
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Seed for the generated graph and every signal, noise and random set.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// gs1 or gs2.
    #[arg(long, default_value = "gs1")]
    signal: String,
    /// Comma-separated sampling budgets.
    #[arg(long = "budget", value_delimiter = ',', required = true)]
    budgets: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    signal_draws: usize,
    #[arg(long, default_value_t = 10)]
    noise_draws: usize,
    /// Comma-separated samplers.
    #[arg(long, value_delimiter = ',', default_value = "bs-gda,random")]
    samplers: Vec<String>,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    gda: GdaFlags,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Sampling-set file; the empty set when omitted.
    #[arg(long)]
    samples: Option<PathBuf>,
    #[arg(long, default_value_t = 0.01)]
    mu: f64,
    #[arg(long, default_value_t = 12)]
    hops: usize,
    /// Largest graph the dense eigensolver will accept.
    #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
}

#[derive(Args)]
struct TimingArgs {
    /// Comma-separated graph sizes.
    #[arg(long, value_delimiter = ',', default_value = "500,1000,2000,4000")]
    sizes: Vec<usize>,
    /// Fixed budget; `n/10` when omitted.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV output; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    gda: GdaFlags,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(a) => generate(a),
        Command::Sample(a) => sample(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Experiment(a) => experiment(a),
        Command::Verify(a) => verify(a),
        Command::Timing(a) => timing(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    load_edge_list(path).with_context(|| format!("cannot load graph {}", path.display()))
}

fn generate(a: GenerateArgs) -> Result<()> {
    let kind: GraphKind = a.kind.parse()?;
    let spec = GraphSpec {
        kind,
        n: a.n,
        seed: a.seed,
    };
    let GeneratedGraph { graph, coords, .. } = spec.generate()?;
    save_edge_list(&graph, &a.out)?;
    if let Some(coords) = &coords {
        save_coords(coords, coords_path(&a.out))?;
    }
    if let (Some(model), Some(path)) = (&a.signal, &a.signal_out) {
        let sig = match model.parse::<SignalKind>()? {
            SignalKind::Gs1 => gen_gs1(&laplacian_spectrum(&graph, DEFAULT_ORACLE_CAP)?, a.seed),
            SignalKind::Gs2 => gen_gs2(&graph, a.seed, DEFAULT_ORACLE_CAP)?,
        };
        save_signal(&sig.x_true, path)?;
        if let Some(noisy) = &a.noisy_out {
            let y: Vec<f64> = sig.x_true.iter().zip(&sig.noise).map(|(x, e)| x + e).collect();
            save_signal(&y, noisy)?;
        }
    }
    println!(
        "{kind} graph: n={} edges={} components={}",
        graph.n(),
        graph.num_edges(),
        graph.num_components()
    );
    Ok(())
}

fn sample(a: SampleArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    if a.budget == 0 || a.budget > g.n() {
        bail!("--budget must lie in 1..={} (got {})", g.n(), a.budget);
    }
    let file = match a.sampler.parse::<SamplerKind>()? {
        SamplerKind::Gda => {
            let out = bs_gda(&g, a.budget, &a.gda.params())?;
            SamplingSetFile {
                t_hat: out.achieved_t,
                valid: out.valid,
                certified_lb: out.certified_lower_bound,
                nodes: out.sample_set,
            }
        }
        SamplerKind::Random => SamplingSetFile {
            t_hat: 0.0,
            valid: false,
            certified_lb: 0.0,
            nodes: random_sampler(&g, a.budget, a.seed)?,
        },
    };
    save_sampling_set(&file, &a.out)?;
    println!(
        "{} samples, T_hat={} valid={} certified_lb={}",
        file.nodes.len(),
        file.t_hat,
        u8::from(file.valid),
        file.certified_lb
    );
    Ok(())
}

fn reconstruct(a: ReconstructArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let set = load_sampling_set(&a.samples)?;
    let values = load_signal(&a.signal)?;
    let y = if values.len() == set.nodes.len() {
        values
    } else if values.len() == g.n() {
        bsgda::apply_sampling(&values, &set.nodes)?
    } else {
        bail!(
            "signal has {} values; expected {} (samples) or {} (nodes)",
            values.len(),
            set.nodes.len(),
            g.n()
        );
    };
    let obs = SampleObservation::new(g.n(), set.nodes, y)?;
    let cfg = SolverConfig {
        tol: a.tol,
        ..SolverConfig::with_mu(a.mu)
    };
    let rec = glr_reconstruct(&g, &obs, &cfg)?;
    save_signal(&rec.x, &a.out)?;
    print!("CG iterations={} relative_residual={:.3e}", rec.iterations, rec.relative_residual);
    if let Some(truth) = &a.truth {
        print!(" mse={}", mse(&rec.x, &load_signal(truth)?)?);
    }
    println!();
    Ok(())
}

fn experiment(a: ExperimentArgs) -> Result<()> {
    let loaded = a.graph.as_deref().map(load_graph).transpose()?;
    let graph = GraphSpec {
        kind: a.kind.parse()?,
        n: loaded.as_ref().map_or(a.n, Graph::n),
        seed: a.seed,
    };
    let cfg = ExperimentConfig {
        graph,
        signal: a.signal.parse()?,
        budgets: a.budgets,
        signal_draws: a.signal_draws,
        noise_draws: a.noise_draws,
        params: a.gda.params(),
        samplers: a.samplers.iter().map(|s| s.parse()).collect::<Result<_, _>>()?,
        seed: a.seed,
    };
    cfg.validate()?;
    let g = match loaded {
        Some(g) => g,
        None => graph.generate()?.graph,
    };
    let rows = run_experiment_on(&cfg, &g)?;
    match &a.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
            write_csv(&rows, file)?;
        }
        None => write_csv(&rows, io::stdout().lock())?,
    }
    Ok(())
}

/// Scales that reproduce the alignment a sampling set was selected with:
/// coverage subsets at `T̂` grown from each sample, first sample wins.
fn rebuild_scales(g: &Graph, set: &SamplingSetFile, mu: f64, hops: usize) -> Result<Vec<f64>> {
    if !(set.t_hat > 0.0 && set.t_hat < 1.0) {
        return Ok(vec![1.0; g.n()]);
    }
    let subsets = set
        .nodes
        .iter()
        .map(|&v| estimate_coverage(g, set.t_hat, v, hops, mu))
        .collect::<bsgda::Result<Vec<_>>>()?;
    Ok(assemble_scaling(g.n(), &subsets))
}

fn verify(a: VerifyArgs) -> Result<()> {
    let g = load_graph(&a.graph)?;
    let set = match &a.samples {
        Some(p) => load_sampling_set(p)?,
        None => SamplingSetFile {
            t_hat: 0.0,
            valid: false,
            certified_lb: 0.0,
            nodes: Vec::new(),
        },
    };
    let sv = SamplingVector::from_nodes(g.n(), &set.nodes)?;
    let s = rebuild_scales(&g, &set, a.mu, a.hops)?;
    let sw = eig_sandwich_check(&g, &sv, &s, a.mu, a.oracle_cap)?;
    let report = verify_alignment(&g, &sv, &s, a.mu, set.t_hat, DEFAULT_ALIGNMENT_TOL)?;
    let certified = certified_lower_bound(&g, &sv, &s, a.mu);
    let mut out = io::stdout().lock();
    writeln!(out, "samples            {}", set.nodes.len())?;
    writeln!(out, "target T_hat       {}", set.t_hat)?;
    writeln!(out, "certified_lb       {certified:.12}")?;
    writeln!(out, "lambda_min         {:.12}", sw.lambda_min)?;
    writeln!(out, "max_left_end       {:.12}", sw.max_left_end)?;
    writeln!(out, "violations         {}", report.violations.len())?;
    writeln!(
        out,
        "sandwich           {}",
        if sw.holds(1e-9) { "holds" } else { "VIOLATED" }
    )?;
    if !sw.holds(1e-9) {
        bail!("disc bounds do not enclose lambda_min");
    }
    Ok(())
}

fn timing(a: TimingArgs) -> Result<()> {
    if a.sizes.is_empty() {
        bail!("--sizes needs at least one value");
    }
    let rule = match a.budget {
        Some(0) => bail!("--budget must be at least 1"),
        Some(k) => BudgetRule::Fixed(k),
        None => BudgetRule::Fraction(10),
    };
    let rows = run_timing(&a.sizes, rule, &a.gda.params(), a.seed, a.repeats)?;
    let mut text = String::from("n,K,wall_ms,T_hat\n");
    for r in &rows {
        text.push_str(&format!("{},{},{:.3},{}\n", r.n, r.k, r.wall_ms, r.achieved_t));
    }
    match &a.out {
        Some(path) => fs::write(path, &text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    for &n in &a.sizes {
        if let Some(ratio) = timing_ratio(&rows, n, 4 * n) {
            eprintln!("time({})/time({n}) = {ratio:.2}", 4 * n);
        }
    }
    Ok(())
}
