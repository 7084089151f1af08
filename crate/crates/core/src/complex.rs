//! Coherence between groups of complex variables.
//!
//! The total coherence is the real-valued correlation computed on complex
//! distances `sqrt(|dRe|^2 + |dIm|^2)`. It is split into a real and an
//! imaginary contribution with weights built from four real-valued
//! covariances between the parts:
//!
//! ```text
//! w_re = cov(Re X, Re Y) + cov(Im X, Im Y)
//! w_im = cov(Re X, Im Y) + cov(Im X, Re Y)
//! real = total * w_re / (w_re + w_im),  imag = total * w_im / (w_re + w_im)
//! ```
//!
//! For the similarity coherence the part covariances reuse the scales that
//! maximize the total; they are not re-maximized.

use crate::error::{Error, Result};
use crate::kernel::{KernelConfig, KernelFamily};
use crate::matrix::{pairwise_distances, pairwise_distances_complex};
use crate::real::{distance_moments_from, similarity_moments_from, EPS_VAR};
use crate::sample::ComplexSampleSet;
use crate::search::{maximize_on, ScaleGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoherenceMeasure {
    Similarity,
    Distance,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherenceBreakdown {
    pub total: f64,
    pub real_part: f64,
    pub imag_part: f64,
    pub s_x: Option<f64>,
    pub s_y: Option<f64>,
    pub measure: CoherenceMeasure,
    /// The total coherence hit the zero-variance branch.
    pub degenerate: bool,
    /// `w_re + w_im` cancelled; the total was split evenly.
    pub partition_degenerate: bool,
    pub w_re: f64,
    pub w_im: f64,
}

/// Splits `total` by the weights. Near-cancelling weights
/// (`|w_re + w_im| <= EPS_VAR * max(|w_re|, |w_im|, EPS_VAR)`) split evenly
/// and report `true`.
pub fn partition(total: f64, w_re: f64, w_im: f64) -> (f64, f64, bool) {
    let sum = w_re + w_im;
    let scale = w_re.abs().max(w_im.abs()).max(EPS_VAR);
    if sum.abs() <= EPS_VAR * scale {
        let half = 0.5 * total;
        return (half, total - half, true);
    }
    (total * (w_re / sum), total * (w_im / sum), false)
}

fn check(x: &ComplexSampleSet, y: &ComplexSampleSet, min: usize) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::SampleCountMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < min {
        return Err(Error::TooFewSamples { min, got: x.len() });
    }
    Ok(())
}

/// Maximum total similarity coherence and its real/imaginary partition.
pub fn similarity_coherence(
    x: &ComplexSampleSet,
    y: &ComplexSampleSet,
    family: KernelFamily,
    alpha: f64,
    grid: &ScaleGrid,
) -> Result<CoherenceBreakdown> {
    check(x, y, 3)?;
    let opt = maximize_on(
        &pairwise_distances_complex(x),
        &pairwise_distances_complex(y),
        family,
        alpha,
        grid,
    )?;
    let est = opt.estimate;
    let (Some(s_x), Some(s_y)) = (est.s_x, est.s_y) else {
        return Ok(CoherenceBreakdown {
            total: 0.0,
            real_part: 0.0,
            imag_part: 0.0,
            s_x: None,
            s_y: None,
            measure: CoherenceMeasure::Similarity,
            degenerate: true,
            partition_degenerate: false,
            w_re: 0.0,
            w_im: 0.0,
        });
    };
    let cx = KernelConfig::new(family, alpha, s_x)?;
    let cy = KernelConfig::new(family, alpha, s_y)?;
    let (xr, xi) = (pairwise_distances(x.re()), pairwise_distances(x.im()));
    let (yr, yi) = (pairwise_distances(y.re()), pairwise_distances(y.im()));
    let cov = |a, b| similarity_moments_from(a, b, &cx, &cy).map(|m| m.cross);
    let w_re = cov(&xr, &yr)? + cov(&xi, &yi)?;
    let w_im = cov(&xr, &yi)? + cov(&xi, &yr)?;
    let (real_part, imag_part, partition_degenerate) = partition(est.value, w_re, w_im);
    Ok(CoherenceBreakdown {
        total: est.value,
        real_part,
        imag_part,
        s_x: Some(s_x),
        s_y: Some(s_y),
        measure: CoherenceMeasure::Similarity,
        degenerate: false,
        partition_degenerate,
        w_re,
        w_im,
    })
}

/// Total distance coherence and its real/imaginary partition.
pub fn distance_coherence(
    x: &ComplexSampleSet,
    y: &ComplexSampleSet,
) -> Result<CoherenceBreakdown> {
    check(x, y, 2)?;
    let m = distance_moments_from(
        &pairwise_distances_complex(x),
        &pairwise_distances_complex(y),
    )?;
    let total = m.correlation();
    let (xr, xi) = (pairwise_distances(x.re()), pairwise_distances(x.im()));
    let (yr, yi) = (pairwise_distances(y.re()), pairwise_distances(y.im()));
    let cov = |a, b| distance_moments_from(a, b).map(|m| m.cross);
    let w_re = cov(&xr, &yr)? + cov(&xi, &yi)?;
    let w_im = cov(&xr, &yi)? + cov(&xi, &yr)?;
    let (real_part, imag_part, partition_degenerate) = if m.is_degenerate() {
        (0.0, 0.0, false)
    } else {
        partition(total, w_re, w_im)
    };
    Ok(CoherenceBreakdown {
        total,
        real_part,
        imag_part,
        s_x: None,
        s_y: None,
        measure: CoherenceMeasure::Distance,
        degenerate: m.is_degenerate(),
        partition_degenerate,
        w_re,
        w_im,
    })
}
