//! Distance correlation, maximum similarity correlation and their
//! complex-valued coherence analogues.
//!
//! The crate is `no_std` (with `alloc`). Every estimator works on dense
//! `N x N` pairwise matrices:
//!
//! - [`matrix`]: pairwise distances, double- and triple-centering.
//! - [`kernel`]: exponential and biweight similarity kernels.
//! - [`real`]: distance/similarity covariance and correlation, the RV
//!   coefficient and the large-scale "modified" similarity correlation.
//! - [`search`]: maximization of the similarity correlation over the two
//!   scale parameters on a log grid with nested refinement.
//! - [`complex`]: total similarity/distance coherence with its partition
//!   into real and imaginary contributions.
//! - [`toy`]: deterministic generators for the reference toy datasets.
//!
//! Enable the `parallel` feature to spread row loops over a rayon pool.
//! Reductions always combine per-row partial sums in index order, so the
//! results are bit-identical with and without it.

#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod complex;
mod error;
pub mod kernel;
pub mod matrix;
mod par;
pub mod real;
pub mod sample;
pub mod search;
pub mod toy;

pub use complex::{distance_coherence, similarity_coherence, CoherenceBreakdown, CoherenceMeasure};
pub use error::{Error, Result};
pub use kernel::{similarity_from_distances, KernelConfig, KernelFamily};
pub use matrix::{
    double_center, pairwise_distances, pairwise_distances_complex, triple_center, CenteredKernel,
    MatrixKind, PairwiseMatrix, SymmetricMatrix,
};
pub use real::{
    distance_correlation, distance_covariance, distance_variance, modified_similarity_correlation,
    rv_coefficient, similarity_correlation_at, similarity_covariance, similarity_variance,
    AssociationEstimate, Measure, Moments,
};
pub use sample::{ComplexSampleSet, SampleSet};
pub use search::{
    evaluate_surface, maximize_correlation, maximize_variance_scale, Normalization, ScaleGrid,
    ScaleOptimum, SurfaceSample, VarianceOptimum,
};
