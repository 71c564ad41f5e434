//! Sampling set selection by Gershgorin disc alignment.
//!
//! Three layers:
//!
//! 1. [`estimate_coverage`] grows, by breadth-first search from a candidate
//!    sample `i`, the set `Ω_i` of nodes whose disc left-ends can be pushed
//!    to at least `T` by sampling `i` alone and expanding discs outward.
//! 2. [`greedy_cover`] computes every `Ω_i` and picks samples greedily, each
//!    time the subset covering the most still-uncovered nodes, until all
//!    nodes are covered or the budget runs out.
//! 3. [`bs_gda`] binary-searches the largest `T` for which step 2 succeeds
//!    within the budget.
//!
//! The minimum left-end under the assembled scales is always a valid lower
//! bound on `λ_min(diag(a) + μL)`, whatever the alignment audit says.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use fixedbitset::FixedBitSet;

use crate::disc::{aligning_scale, check_mu, left_end_from_parts, DiscState, SamplingVector};
use crate::error::{Error, Result};
use crate::generators::choose_distinct;
use crate::graph::Graph;

pub const DEFAULT_MU: f64 = 0.01;
pub const DEFAULT_EPS: f64 = 1e-5;
pub const DEFAULT_HOPS: usize = 12;
pub const DEFAULT_ALIGNMENT_TOL: f64 = 1e-9;

/// Tuning shared by the greedy and binary-search stages.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GdaParams {
    pub mu: f64,
    /// Binary search stops once the bracket on `T` is at most this wide.
    pub eps: f64,
    /// Coverage subsets stay within this many hops of their root.
    pub hops: usize,
}

impl Default for GdaParams {
    fn default() -> Self {
        GdaParams {
            mu: DEFAULT_MU,
            eps: DEFAULT_EPS,
            hops: DEFAULT_HOPS,
        }
    }
}

/// The nodes a single sample at `root` can lift to the target, with the
/// scale factor assigned to each while the subset grew.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageSubset {
    pub root: usize,
    /// Members in inclusion (BFS) order; `members[0] == root` when `T < 1`.
    pub members: Vec<usize>,
    /// `scales[k]` belongs to `members[k]`.
    pub scales: Vec<f64>,
    pub target: f64,
    pub hop_limit: usize,
}

impl CoverageSubset {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.contains(&v)
    }

    pub fn scale_of(&self, v: usize) -> Option<f64> {
        self.members
            .iter()
            .position(|&m| m == v)
            .map(|k| self.scales[k])
    }

    /// Full-length scale vector: this subset's scales, 1 elsewhere.
    pub fn scale_vector(&self, n: usize) -> Vec<f64> {
        let mut s = vec![1.0; n];
        for (&m, &v) in self.members.iter().zip(&self.scales) {
            s[m] = v;
        }
        s
    }
}

fn check_target(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("target T = {t} must lie in (0, 1)")))
    }
}

/// Per-worker buffers for coverage growth. Only entries touched by the
/// current root are reset, so a sweep over all roots costs the size of the
/// explored neighborhoods rather than `n` per root.
struct CoverageScratch {
    scale: Vec<f64>,
    hop: Vec<usize>,
    seen: Vec<bool>,
    touched: Vec<usize>,
    queue: VecDeque<usize>,
}

impl CoverageScratch {
    fn new(n: usize) -> Self {
        CoverageScratch {
            scale: vec![1.0; n],
            hop: vec![0; n],
            seen: vec![false; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    fn grow(&mut self, g: &Graph, t: f64, root: usize, hops: usize, mu: f64) -> CoverageSubset {
        let mut members = Vec::new();
        let mut scales = Vec::new();
        self.queue.push_back(root);
        self.seen[root] = true;
        self.hop[root] = 0;
        self.touched.push(root);

        while let Some(k) = self.queue.pop_front() {
            let a = if k == root { 1.0 } else { 0.0 };
            let nbrs = g.neighbors(k);
            let s_k = if nbrs.is_empty() {
                // An isolated disc is the point a_k; it is covered iff it
                // already sits at or past the target.
                if a >= t {
                    1.0
                } else {
                    0.0
                }
            } else {
                let inv_sum: f64 = nbrs.iter().map(|nb| nb.weight / self.scale[nb.node]).sum();
                aligning_scale(a, mu, g.degree(k), t, inv_sum)
            };
            if s_k >= 1.0 && self.hop[k] <= hops {
                self.scale[k] = s_k;
                members.push(k);
                scales.push(s_k);
                for nb in nbrs {
                    if !self.seen[nb.node] {
                        self.seen[nb.node] = true;
                        self.hop[nb.node] = self.hop[k] + 1;
                        self.touched.push(nb.node);
                        self.queue.push_back(nb.node);
                    }
                }
            }
            // Rejected nodes keep s = 1: they are not part of the alignment.
        }

        for &v in &self.touched {
            self.scale[v] = 1.0;
            self.seen[v] = false;
        }
        self.touched.clear();
        CoverageSubset {
            root,
            members,
            scales,
            target: t,
            hop_limit: hops,
        }
    }
}

/// Grows the coverage subset of `root` at target `t`.
pub fn estimate_coverage(g: &Graph, t: f64, root: usize, hops: usize, mu: f64) -> Result<CoverageSubset> {
    check_target(t)?;
    check_mu(mu)?;
    if root >= g.n() {
        return Err(Error::IndexOutOfRange {
            index: root,
            n: g.n(),
        });
    }
    Ok(CoverageScratch::new(g.n()).grow(g, t, root, hops, mu))
}

/// Coverage subsets of every node, indexed by root.
pub fn all_coverage_subsets(g: &Graph, t: f64, hops: usize, mu: f64) -> Result<Vec<CoverageSubset>> {
    check_target(t)?;
    check_mu(mu)?;
    Ok(coverage_sweep(g, t, hops, mu))
}

#[cfg(feature = "parallel")]
fn coverage_sweep(g: &Graph, t: f64, hops: usize, mu: f64) -> Vec<CoverageSubset> {
    use rayon::prelude::*;
    // Indexed collect keeps root order regardless of scheduling.
    (0..g.n())
        .into_par_iter()
        .map_init(
            || CoverageScratch::new(g.n()),
            |scratch, i| scratch.grow(g, t, i, hops, mu),
        )
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn coverage_sweep(g: &Graph, t: f64, hops: usize, mu: f64) -> Vec<CoverageSubset> {
    let mut scratch = CoverageScratch::new(g.n());
    (0..g.n()).map(|i| scratch.grow(g, t, i, hops, mu)).collect()
}

/// Greedy cover result: subset roots in selection order.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedySelection {
    pub valid: bool,
    pub selected: Vec<usize>,
}

/// Heap key: most newly covered nodes first, then lowest root index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Candidate {
    gain: usize,
    root: usize,
}

impl Ord for Candidate {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .cmp(&other.gain)
            .then_with(|| other.root.cmp(&self.root))
    }
}

impl PartialOrd for Candidate {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Greedy set cover of `0..n` by `subsets` with at most `budget` picks.
///
/// Each step takes the subset with the largest number of uncovered members,
/// ties to the lowest index. Uncovered nodes live in a bit array and gains
/// are recomputed lazily: a gain can only shrink as coverage grows, so a
/// stale heap entry is an upper bound and the first entry whose refreshed
/// gain still beats the heap top is the exact greedy choice.
pub fn greedy_select(n: usize, subsets: &[CoverageSubset], budget: usize) -> GreedySelection {
    let mut uncovered = FixedBitSet::with_capacity(n);
    uncovered.insert_range(..);
    let gain_of = |s: &CoverageSubset, u: &FixedBitSet| s.members.iter().filter(|&&m| u.contains(m)).count();

    let mut heap: BinaryHeap<Candidate> = subsets
        .iter()
        .enumerate()
        .map(|(root, s)| Candidate { gain: s.len(), root })
        .collect();
    let mut selected = Vec::new();
    let mut remaining = n;

    while remaining > 0 && selected.len() < budget {
        let Some(top) = heap.pop() else { break };
        let fresh = Candidate {
            gain: gain_of(&subsets[top.root], &uncovered),
            root: top.root,
        };
        if fresh.gain == 0 {
            continue;
        }
        if heap.peek().is_some_and(|next| *next > fresh) {
            heap.push(fresh);
            continue;
        }
        for &m in &subsets[fresh.root].members {
            if uncovered.contains(m) {
                uncovered.remove(m);
                remaining -= 1;
            }
        }
        selected.push(fresh.root);
    }
    GreedySelection {
        valid: remaining == 0,
        selected,
    }
}

/// Outcome of one greedy probe at a fixed target.
#[derive(Debug, Clone, PartialEq)]
pub struct GreedyCover {
    pub valid: bool,
    pub sample_set: Vec<usize>,
    /// Subsets of the selected samples, in selection order.
    pub subsets_used: Vec<CoverageSubset>,
}

/// Disc alignment at target `t` via greedy set cover over all `Ω_i`.
pub fn greedy_cover(g: &Graph, t: f64, budget: usize, hops: usize, mu: f64) -> Result<GreedyCover> {
    if budget == 0 {
        return Err(Error::InvalidParameter("budget K must be at least 1".into()));
    }
    let subsets = all_coverage_subsets(g, t, hops, mu)?;
    let sel = greedy_select(g.n(), &subsets, budget);
    let mut slots: Vec<Option<CoverageSubset>> = subsets.into_iter().map(Some).collect();
    let subsets_used = sel
        .selected
        .iter()
        .map(|&r| slots[r].take().expect("each root is selected once"))
        .collect();
    Ok(GreedyCover {
        valid: sel.valid,
        sample_set: sel.selected,
        subsets_used,
    })
}

/// Scale vector for a selection: each node takes its scale from the first
/// selected subset (in selection order) that contains it; uncovered nodes
/// keep 1.
pub fn assemble_scaling(n: usize, subsets_used: &[CoverageSubset]) -> Vec<f64> {
    let mut s = vec![1.0; n];
    let mut assigned = vec![false; n];
    for subset in subsets_used {
        for (&m, &v) in subset.members.iter().zip(&subset.scales) {
            if !assigned[m] {
                assigned[m] = true;
                s[m] = v;
            }
        }
    }
    s
}

/// Nodes whose left-end falls below `T − tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentReport {
    pub target: f64,
    pub violations: Vec<(usize, f64)>,
    pub min_left_end: f64,
}

impl AlignmentReport {
    pub fn is_aligned(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn verify_alignment(
    g: &Graph,
    a: &SamplingVector,
    s: &[f64],
    mu: f64,
    t: f64,
    tol: f64,
) -> Result<AlignmentReport> {
    let state = DiscState::with_scales(g, a.clone(), s.to_vec(), mu)?;
    let left_ends = state.left_ends();
    let violations = left_ends
        .iter()
        .enumerate()
        .filter(|&(_, &l)| l < t - tol)
        .map(|(i, &l)| (i, l))
        .collect();
    Ok(AlignmentReport {
        target: t,
        violations,
        min_left_end: left_ends.iter().copied().fold(f64::INFINITY, f64::min),
    })
}

/// One binary-search step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probe {
    pub target: f64,
    pub valid: bool,
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplingOutcome {
    /// Selected nodes in greedy order.
    pub sample_set: Vec<usize>,
    pub valid: bool,
    /// Largest target found feasible, `T̂`.
    pub achieved_t: f64,
    pub assembled_s: Vec<f64>,
    /// `min_i ℓ_i` under `assembled_s`; a lower bound on `λ_min(B)`.
    pub certified_lower_bound: f64,
    pub trace: Vec<Probe>,
}

impl SamplingOutcome {
    pub fn sampling_vector(&self, n: usize) -> SamplingVector {
        SamplingVector::from_nodes(n, &self.sample_set).expect("sampler emits distinct in-range nodes")
    }
}

/// Minimum left-end of `diag(a) + μL` under scales `s`.
pub fn certified_lower_bound(g: &Graph, a: &SamplingVector, s: &[f64], mu: f64) -> f64 {
    (0..g.n())
        .map(|i| {
            let inv_sum: f64 = g.neighbors(i).iter().map(|nb| nb.weight / s[nb.node]).sum();
            left_end_from_parts(a.value(i), mu, g.degree(i), s[i], inv_sum)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Binary search over `T ∈ (0, 1)` for the largest target the greedy cover
/// can meet with at most `budget` samples.
pub fn bs_gda(g: &Graph, budget: usize, params: &GdaParams) -> Result<SamplingOutcome> {
    if budget == 0 {
        return Err(Error::InvalidParameter("budget K must be at least 1".into()));
    }
    if params.eps.is_nan() || params.eps <= 0.0 {
        return Err(Error::InvalidParameter(format!("eps = {} must be positive", params.eps)));
    }
    check_mu(params.mu)?;

    let n = g.n();
    let (mut left, mut right) = (0.0f64, 1.0f64);
    let mut best: Option<GreedyCover> = None;
    let mut trace = Vec::new();
    while right - left > params.eps {
        let t = 0.5 * (left + right);
        let probe = greedy_cover(g, t, budget, params.hops, params.mu)?;
        trace.push(Probe {
            target: t,
            valid: probe.valid,
            samples: probe.sample_set.len(),
        });
        if probe.valid {
            left = t;
            best = Some(probe);
        } else {
            right = t;
        }
    }

    let (valid, sample_set, subsets) = match best {
        Some(c) => (true, c.sample_set, c.subsets_used),
        None => (false, Vec::new(), Vec::new()),
    };
    let assembled_s = assemble_scaling(n, &subsets);
    let a = SamplingVector::from_nodes(n, &sample_set)?;
    let certified = certified_lower_bound(g, &a, &assembled_s, params.mu);
    Ok(SamplingOutcome {
        sample_set,
        valid,
        achieved_t: left,
        assembled_s,
        certified_lower_bound: certified,
        trace,
    })
}

/// `k` distinct nodes drawn uniformly without replacement.
pub fn random_sampler(g: &Graph, k: usize, seed: u64) -> Result<Vec<usize>> {
    if k == 0 || k > g.n() {
        return Err(Error::InvalidParameter(format!(
            "random sampler needs 1 <= K <= n (K={k}, n={})",
            g.n()
        )));
    }
    Ok(choose_distinct(g.n(), k, seed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::sensor_graph;
    use crate::graph::path_graph;

    fn subset(members: &[usize]) -> CoverageSubset {
        CoverageSubset {
            root: members[0],
            members: members.to_vec(),
            scales: vec![1.0; members.len()],
            target: 0.5,
            hop_limit: 12,
        }
    }

    #[test]
    fn path_worked_example_root_three() {
        // Paper labels are 1-based; node 3 is index 2.
        let g = path_graph(5).unwrap();
        let om = estimate_coverage(&g, 0.2, 2, 12, 1.0).unwrap();
        let mut members = om.members.clone();
        members.sort_unstable();
        assert_eq!(members, vec![1, 2, 3]);
        assert!((om.scale_of(2).unwrap() - 1.4).abs() < 1e-12);
        assert!((om.scale_of(1).unwrap() - 1.05).abs() < 1e-12);
        assert!((om.scale_of(3).unwrap() - 1.05).abs() < 1e-12);
    }

    #[test]
    fn path_worked_example_end_root() {
        let g = path_graph(5).unwrap();
        let om = estimate_coverage(&g, 0.2, 0, 12, 1.0).unwrap();
        assert_eq!(om.members, vec![0, 1]);
        assert!((om.scales[0] - 1.8).abs() < 1e-12);
        assert!((om.scales[1] - 1.8 / (1.0 / 1.8 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn zero_hops_confines_to_root() {
        let g = sensor_graph(40, 6, 1).unwrap().graph;
        for root in [0, 7, 39] {
            let om = estimate_coverage(&g, 0.01, root, 0, 0.5).unwrap();
            assert_eq!(om.members, vec![root]);
        }
    }

    #[test]
    fn hop_limit_bounds_distance() {
        let g = path_graph(30).unwrap();
        let om = estimate_coverage(&g, 1e-4, 15, 3, 1.0).unwrap();
        assert!(om.members.iter().all(|&m| m.abs_diff(15) <= 3));
    }

    #[test]
    fn isolated_root_covers_itself() {
        let g = Graph::new(3, [(0, 1, 1.0)]).unwrap();
        let om = estimate_coverage(&g, 0.5, 2, 12, 1.0).unwrap();
        assert_eq!(om.members, vec![2]);
        assert_eq!(om.scales, vec![1.0]);
    }

    #[test]
    fn coverage_rejects_bad_parameters() {
        let g = path_graph(5).unwrap();
        assert!(estimate_coverage(&g, 0.0, 0, 2, 1.0).is_err());
        assert!(estimate_coverage(&g, 1.0, 0, 2, 1.0).is_err());
        assert!(estimate_coverage(&g, 0.5, 0, 2, 0.0).is_err());
        assert!(estimate_coverage(&g, 0.5, 5, 2, 1.0).is_err());
    }

    #[test]
    fn path_greedy_examples() {
        let g = path_graph(5).unwrap();
        let sizes: Vec<usize> = all_coverage_subsets(&g, 0.2, 12, 1.0)
            .unwrap()
            .iter()
            .map(|s| s.len())
            .collect();
        assert_eq!(sizes, vec![2, 3, 3, 3, 2]);
        let two = greedy_cover(&g, 0.2, 2, 12, 1.0).unwrap();
        assert!(two.valid);
        assert_eq!(two.sample_set, vec![1, 3]);
        let one = greedy_cover(&g, 0.2, 1, 12, 1.0).unwrap();
        assert!(!one.valid);
        assert_eq!(one.sample_set.len(), 1);
    }

    #[test]
    fn full_budget_is_always_valid() {
        let g = sensor_graph(30, 6, 5).unwrap().graph;
        for t in [0.1, 0.5, 0.999] {
            assert!(greedy_cover(&g, t, 30, 12, 0.01).unwrap().valid);
        }
        assert!(greedy_cover(&g, 0.5, 0, 12, 0.01).is_err());
    }

    #[test]
    fn greedy_select_ties_to_lowest_index() {
        let subsets = vec![subset(&[0, 1]), subset(&[2, 3]), subset(&[1, 2])];
        let sel = greedy_select(4, &subsets, 4);
        assert_eq!(sel.selected, vec![0, 1]);
        assert!(sel.valid);
    }

    #[test]
    fn greedy_select_matches_eager_greedy() {
        // Eager reference: rescan every subset at every step.
        fn eager(n: usize, subsets: &[CoverageSubset], budget: usize) -> GreedySelection {
            let mut covered = vec![false; n];
            let mut selected = Vec::new();
            while covered.iter().any(|c| !c) && selected.len() < budget {
                let (best, gain) = subsets
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (i, s.members.iter().filter(|&&m| !covered[m]).count()))
                    .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
                if gain == 0 {
                    break;
                }
                for &m in &subsets[best].members {
                    covered[m] = true;
                }
                selected.push(best);
            }
            GreedySelection {
                valid: covered.iter().all(|&c| c),
                selected,
            }
        }
        for seed in 0..10 {
            let g = sensor_graph(120, 6, seed).unwrap().graph;
            for t in [0.05, 0.3, 0.7] {
                let subsets = all_coverage_subsets(&g, t, 12, 0.01).unwrap();
                for budget in [3, 12, 120] {
                    assert_eq!(greedy_select(120, &subsets, budget), eager(120, &subsets, budget));
                }
            }
        }
    }

    #[test]
    fn assembled_scaling_takes_first_subset() {
        let g = path_graph(5).unwrap();
        let cover = greedy_cover(&g, 0.2, 2, 12, 1.0).unwrap();
        let s = assemble_scaling(5, &cover.subsets_used);
        let first = &cover.subsets_used[0];
        let second = &cover.subsets_used[1];
        for (v, &sv) in s.iter().enumerate() {
            let owner = if v < 3 { first } else { second };
            assert_eq!(sv, owner.scale_of(v).unwrap());
        }
        let single = assemble_scaling(5, &cover.subsets_used[..1]);
        assert_eq!(single, first.scale_vector(5));
        assert!(s.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn alignment_examples() {
        let g = path_graph(5).unwrap();
        let full = verify_alignment(&g, &SamplingVector::full(5), &[1.0; 5], 1.0, 0.5, 1e-9).unwrap();
        assert!(full.is_aligned());
        assert_eq!(full.min_left_end, 1.0);

        let out = bs_gda(&g, 2, &GdaParams { mu: 1.0, eps: 1e-3, hops: 12 }).unwrap();
        let a = out.sampling_vector(5);
        let rep = verify_alignment(&g, &a, &out.assembled_s, 1.0, out.achieved_t, 1e-9).unwrap();
        assert_eq!(rep.min_left_end, out.certified_lower_bound);

        let s = [0.5, 2.0, 1.3, 0.9, 3.0];
        let zero = verify_alignment(&g, &SamplingVector::from_nodes(5, &[1]).unwrap(), &s, 1.0, 0.0, 1e-9).unwrap();
        // s here is arbitrary, so left-ends may be negative.
        assert_eq!(zero.violations.len(), (0..5).filter(|&i| {
            let st = DiscState::with_scales(&g, SamplingVector::from_nodes(5, &[1]).unwrap(), s.to_vec(), 1.0).unwrap();
            st.left_end(i) < -1e-9
        }).count());
    }

    #[test]
    fn bs_gda_full_budget_reaches_one() {
        let g = path_graph(5).unwrap();
        let eps = 1e-5;
        let out = bs_gda(&g, 5, &GdaParams { mu: 1.0, eps, hops: 12 }).unwrap();
        assert!(out.valid);
        assert!(out.achieved_t >= 1.0 - 2.0 * eps);
    }

    #[test]
    fn bs_gda_two_node_single_sample() {
        let g = Graph::new(2, [(0, 1, 1.0)]).unwrap();
        let out = bs_gda(&g, 1, &GdaParams { mu: 1.0, eps: 1e-4, hops: 12 }).unwrap();
        assert!(out.valid);
        assert!(out.achieved_t > 0.0);
        assert_eq!(out.sample_set.len(), 1);
    }

    #[test]
    fn bs_gda_rejects_bad_parameters() {
        let g = path_graph(5).unwrap();
        assert!(bs_gda(&g, 0, &GdaParams::default()).is_err());
        assert!(bs_gda(&g, 2, &GdaParams { eps: 0.0, ..Default::default() }).is_err());
        assert!(bs_gda(&g, 2, &GdaParams { mu: -1.0, ..Default::default() }).is_err());
    }

    #[test]
    fn random_sampler_cases() {
        let g = path_graph(8).unwrap();
        let mut all = random_sampler(&g, 8, 1).unwrap();
        all.sort_unstable();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
        assert_eq!(random_sampler(&g, 3, 4).unwrap(), random_sampler(&g, 3, 4).unwrap());
        let single = Graph::new(1, []).unwrap();
        assert_eq!(random_sampler(&single, 1, 0).unwrap(), vec![0]);
        assert!(random_sampler(&g, 9, 0).is_err());
        assert!(random_sampler(&g, 0, 0).is_err());
    }
}
