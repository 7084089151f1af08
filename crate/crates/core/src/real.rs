//! Association measures between two groups of real variables.
//!
//! Every measure has the same shape: build one centered `N x N` kernel per
//! group, then
//!
//! ```text
//! cov(X, Y) = (1/N^2) sum_ij K_ij L_ij
//! corr      = cov(X, Y) / sqrt(cov(X, X) cov(Y, Y))
//! ```
//!
//! with the correlation set to zero when the variance product vanishes.
//! Distance correlation double-centers Euclidean distances; similarity
//! correlation triple-centers kernel similarities; the RV coefficient
//! double-centers scalar products.

use crate::error::{Error, Result};
use crate::kernel::{pow_alpha, KernelConfig, KernelFamily};
use crate::matrix::{
    double_center, pairwise_distances, triple_center, CenteredKernel, PairwiseMatrix,
    SymmetricMatrix,
};
use crate::sample::SampleSet;

/// Relative amplitude below which a centered kernel counts as zero.
///
/// A pair is degenerate when `sqrt(var_x * var_y) <= EPS_VAR * sqrt(ref_x *
/// ref_y)`, where `ref` is the mean squared entry of the matrix before
/// centering. Rounding residue of centering sits near `1e-16` relative.
pub const EPS_VAR: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    DistanceCorrelation,
    SimilarityCorrelation,
    ModifiedSimilarityCorrelation,
    Rv,
}

/// A scalar association value and the configuration that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociationEstimate {
    pub value: f64,
    pub measure: Measure,
    /// Distance exponent; absent for the RV coefficient.
    pub alpha: Option<f64>,
    pub s_x: Option<f64>,
    pub s_y: Option<f64>,
    /// The variance product vanished and `value` was set to zero.
    pub degenerate: bool,
}

/// Covariance and both variances of a kernel pair, `1/N^2` normalized.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub cross: f64,
    pub var_x: f64,
    pub var_y: f64,
    /// Degeneracy threshold for `sqrt(var_x * var_y)`.
    pub floor: f64,
}

impl Moments {
    pub fn from_kernels(a: &CenteredKernel, b: &CenteredKernel) -> Self {
        if core::ptr::eq(a, b) {
            let v = normalized(a, a.sum_squares());
            return Self::new(v, v, v, pair_floor(a.reference(), a.reference()));
        }
        Self::new(
            normalized(a, a.inner(b)),
            normalized(a, a.sum_squares()),
            normalized(b, b.sum_squares()),
            pair_floor(a.reference(), b.reference()),
        )
    }

    pub fn new(cross: f64, var_x: f64, var_y: f64, floor: f64) -> Self {
        Self {
            cross,
            var_x,
            var_y,
            floor,
        }
    }

    #[inline]
    fn denominator(&self) -> f64 {
        libm::sqrt(self.var_x) * libm::sqrt(self.var_y)
    }

    pub fn is_degenerate(&self) -> bool {
        self.denominator() <= self.floor
    }

    /// `cross / sqrt(var_x var_y)`, or 0 in the degenerate case.
    pub fn correlation(&self) -> f64 {
        if self.is_degenerate() {
            0.0
        } else {
            self.cross / self.denominator()
        }
    }

    /// The same pair with `x` and `y` exchanged.
    pub fn swapped(&self) -> Self {
        Self::new(self.cross, self.var_y, self.var_x, self.floor)
    }
}

#[inline]
fn normalized(k: &CenteredKernel, v: f64) -> f64 {
    let n = k.len() as f64;
    v / (n * n)
}

#[inline]
pub(crate) fn pair_floor(ref_x: f64, ref_y: f64) -> f64 {
    EPS_VAR * libm::sqrt(ref_x) * libm::sqrt(ref_y)
}

/// Threshold for a single variance: `var <= EPS_VAR^2 * ref`.
pub fn variance_floor(reference: f64) -> f64 {
    EPS_VAR * EPS_VAR * reference
}

fn check_counts(x: usize, y: usize) -> Result<()> {
    if x != y {
        return Err(Error::SampleCountMismatch { left: x, right: y });
    }
    Ok(())
}

/// `d^alpha` for every pair, computed once per group.
pub(crate) fn powered(d: &PairwiseMatrix, alpha: f64) -> SymmetricMatrix {
    let m = d.matrix();
    SymmetricMatrix::from_fn(m.len(), |i, j| pow_alpha(m.get(i, j), alpha))
}

/// Triple-centered similarity matrix from precomputed `d^alpha`.
pub(crate) fn centered_similarity(
    powered: &SymmetricMatrix,
    family: KernelFamily,
    scale: f64,
) -> CenteredKernel {
    let s = SymmetricMatrix::from_fn(powered.len(), |i, j| family.eval(powered.get(i, j) / scale));
    triple_center(&s).expect("sample sets hold at least two samples")
}

fn similarity_kernel(d: &PairwiseMatrix, cfg: &KernelConfig) -> CenteredKernel {
    centered_similarity(&powered(d, cfg.alpha()), cfg.family(), cfg.scale())
}

// ---------------------------------------------------------------------------
// Distance measures

pub(crate) fn distance_moments_from(a: &PairwiseMatrix, b: &PairwiseMatrix) -> Result<Moments> {
    check_counts(a.len(), b.len())?;
    Ok(Moments::from_kernels(
        &double_center(a.matrix()),
        &double_center(b.matrix()),
    ))
}

/// Distance covariance and variances of `x` and `y`.
pub fn distance_moments(x: &SampleSet, y: &SampleSet) -> Result<Moments> {
    check_counts(x.len(), y.len())?;
    distance_moments_from(&pairwise_distances(x), &pairwise_distances(y))
}

pub fn distance_covariance(x: &SampleSet, y: &SampleSet) -> Result<f64> {
    check_counts(x.len(), y.len())?;
    let a = double_center(pairwise_distances(x).matrix());
    let b = double_center(pairwise_distances(y).matrix());
    Ok(normalized(&a, a.inner(&b)))
}

pub fn distance_variance(x: &SampleSet) -> f64 {
    let a = double_center(pairwise_distances(x).matrix());
    normalized(&a, a.sum_squares())
}

pub fn distance_correlation(x: &SampleSet, y: &SampleSet) -> Result<AssociationEstimate> {
    let m = distance_moments(x, y)?;
    Ok(AssociationEstimate {
        value: m.correlation(),
        measure: Measure::DistanceCorrelation,
        alpha: Some(1.0),
        s_x: None,
        s_y: None,
        degenerate: m.is_degenerate(),
    })
}

// ---------------------------------------------------------------------------
// Similarity measures

pub(crate) fn similarity_moments_from(
    a: &PairwiseMatrix,
    b: &PairwiseMatrix,
    cfg_x: &KernelConfig,
    cfg_y: &KernelConfig,
) -> Result<Moments> {
    check_counts(a.len(), b.len())?;
    if cfg_x.alpha() != cfg_y.alpha() {
        return Err(Error::AlphaMismatch {
            left: cfg_x.alpha(),
            right: cfg_y.alpha(),
        });
    }
    Ok(Moments::from_kernels(
        &similarity_kernel(a, cfg_x),
        &similarity_kernel(b, cfg_y),
    ))
}

/// Similarity covariance and variances at fixed kernels.
pub fn similarity_moments(
    x: &SampleSet,
    y: &SampleSet,
    cfg_x: &KernelConfig,
    cfg_y: &KernelConfig,
) -> Result<Moments> {
    check_counts(x.len(), y.len())?;
    similarity_moments_from(&pairwise_distances(x), &pairwise_distances(y), cfg_x, cfg_y)
}

pub fn similarity_variance(x: &SampleSet, cfg: &KernelConfig) -> f64 {
    let d = similarity_kernel(&pairwise_distances(x), cfg);
    normalized(&d, d.sum_squares())
}

/// Similarity variance together with its degeneracy threshold.
pub fn similarity_variance_with_floor(x: &SampleSet, cfg: &KernelConfig) -> (f64, f64) {
    let d = similarity_kernel(&pairwise_distances(x), cfg);
    (
        normalized(&d, d.sum_squares()),
        variance_floor(d.reference()),
    )
}

/// May be negative.
pub fn similarity_covariance(
    x: &SampleSet,
    y: &SampleSet,
    cfg_x: &KernelConfig,
    cfg_y: &KernelConfig,
) -> Result<f64> {
    Ok(similarity_moments(x, y, cfg_x, cfg_y)?.cross)
}

/// Similarity correlation (exponential kernel) at fixed scales, without
/// maximization.
pub fn similarity_correlation_at(
    x: &SampleSet,
    y: &SampleSet,
    alpha: f64,
    s_x: f64,
    s_y: f64,
) -> Result<f64> {
    let cx = KernelConfig::exponential(alpha, s_x)?;
    let cy = KernelConfig::exponential(alpha, s_y)?;
    Ok(similarity_moments(x, y, &cx, &cy)?.correlation())
}

/// Moments of the double-centered (not triple-centered) similarity
/// matrices with `alpha = 1`. For large scales these approach the distance
/// moments up to the factors `1/s_x`, `1/s_y`, so the correlation tends to
/// the distance correlation.
pub fn modified_similarity_moments(
    x: &SampleSet,
    y: &SampleSet,
    s_x: f64,
    s_y: f64,
) -> Result<Moments> {
    check_counts(x.len(), y.len())?;
    let cx = KernelConfig::exponential(1.0, s_x)?;
    let cy = KernelConfig::exponential(1.0, s_y)?;
    let sim = |x: &SampleSet, cfg: &KernelConfig| {
        let d = pairwise_distances(x);
        let m = d.matrix();
        double_center(&SymmetricMatrix::from_fn(m.len(), |i, j| {
            cfg.similarity(m.get(i, j))
        }))
    };
    Ok(Moments::from_kernels(&sim(x, &cx), &sim(y, &cy)))
}

pub fn modified_similarity_correlation(
    x: &SampleSet,
    y: &SampleSet,
    s_x: f64,
    s_y: f64,
) -> Result<f64> {
    Ok(modified_similarity_moments(x, y, s_x, s_y)?.correlation())
}

// ---------------------------------------------------------------------------
// RV coefficient

fn gram(x: &SampleSet) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(x.len(), |i, j| {
        x.row(i).iter().zip(x.row(j)).map(|(a, b)| a * b).sum()
    })
}

/// Escoufier's RV coefficient from double-centered scalar-product matrices.
pub fn rv_coefficient(x: &SampleSet, y: &SampleSet) -> Result<AssociationEstimate> {
    check_counts(x.len(), y.len())?;
    let m = Moments::from_kernels(&double_center(&gram(x)), &double_center(&gram(y)));
    Ok(AssociationEstimate {
        value: m.correlation(),
        measure: Measure::Rv,
        alpha: None,
        s_x: None,
        s_y: None,
        degenerate: m.is_degenerate(),
    })
}
