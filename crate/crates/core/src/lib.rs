//! Fast graph sampling set selection by Gershgorin disc alignment.
//!
//! Picks `K` nodes of a weighted graph so that the reconstruction system
//! `diag(a) + μL` is well conditioned, without any eigendecomposition. The
//! sampler works on the Gershgorin discs of a diagonally scaled copy of the
//! system and returns, besides the sample set, a certified lower bound on
//! its smallest eigenvalue.
//!
//! ```
//! use bsgda::{bs_gda, path_graph, GdaParams};
//!
//! let g = path_graph(5).unwrap();
//! let out = bs_gda(&g, 2, &GdaParams { mu: 1.0, eps: 1e-3, hops: 12 }).unwrap();
//! assert!(out.valid);
//! assert_eq!(out.sample_set.len(), 2);
//! ```

pub mod disc;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod recon;
pub mod sampler;
pub mod seed;

pub use disc::{eig_sandwich_check, DiscState, Sandwich, SamplingVector};
pub use error::{Error, Result};
pub use graph::{path_graph, Edge, Graph, LaplacianView, Neighbor};
pub use recon::{apply_sampling, glr_reconstruct, mse, mse_bound_check, SampleObservation, SolverConfig};
pub use sampler::{
    all_coverage_subsets, assemble_scaling, bs_gda, estimate_coverage, greedy_cover, random_sampler,
    verify_alignment, CoverageSubset, GdaParams, SamplingOutcome,
};
