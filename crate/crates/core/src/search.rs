//! Maximization of the similarity correlation over the scale parameters.
//!
//! The objective is evaluated on a square grid of `log10` scales, then
//! refined by nested 5x5 grids centred on the incumbent, each round
//! shrinking the window by 4x. The triple-centered kernel of one group
//! depends only on that group's scale, so a `G x G` grid costs `2G`
//! kernel constructions and `G^2` inner products.
//!
//! Grid coordinates are relative: with [`Normalization::Median`] the raw
//! scale of a group is `10^g * median^alpha`, where `median` is the median
//! nonzero pairwise distance of that group. All reported scales are raw.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernel::KernelFamily;
use crate::matrix::{pairwise_distances, CenteredKernel, PairwiseMatrix, SymmetricMatrix};
use crate::real::{
    centered_similarity, pair_floor, powered, variance_floor, AssociationEstimate, Measure, Moments,
};
use crate::sample::SampleSet;

/// Upper bound on bytes held by cached kernels of one axis block.
const KERNEL_CACHE_BYTES: usize = 512 << 20;

/// How grid coordinates map to raw scales.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Grid coordinate `g` means `s = 10^g * median_distance^alpha`.
    #[default]
    Median,
    /// Grid coordinate `g` means `s = 10^g`.
    None,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleGrid {
    pub log10_min: f64,
    pub log10_max: f64,
    pub points_per_axis: usize,
    pub refine_iterations: usize,
    /// Refinement stops once a round improves the value by less than this.
    pub refine_tolerance: f64,
    pub normalization: Normalization,
}

impl Default for ScaleGrid {
    fn default() -> Self {
        Self {
            log10_min: -4.0,
            log10_max: 4.0,
            points_per_axis: 33,
            refine_iterations: 3,
            refine_tolerance: 1e-3,
            normalization: Normalization::Median,
        }
    }
}

impl ScaleGrid {
    /// Whole decades `s = 10^-6 .. 10^6` on raw distances, no refinement.
    /// This is the resolution the published toy tables correspond to.
    pub fn decades() -> Self {
        Self {
            log10_min: -6.0,
            log10_max: 6.0,
            points_per_axis: 13,
            refine_iterations: 0,
            refine_tolerance: 1e-3,
            normalization: Normalization::None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.log10_min.is_finite() && self.log10_max.is_finite()) {
            return Err(Error::Grid("bounds must be finite"));
        }
        if self.log10_min >= self.log10_max {
            return Err(Error::Grid("log10_min must be below log10_max"));
        }
        if self.points_per_axis < 3 {
            return Err(Error::Grid("need at least 3 points per axis"));
        }
        if self.refine_tolerance.is_nan() || self.refine_tolerance <= 0.0 {
            return Err(Error::Grid("refine tolerance must be positive"));
        }
        Ok(())
    }

    pub fn step(&self) -> f64 {
        (self.log10_max - self.log10_min) / (self.points_per_axis - 1) as f64
    }

    /// Coarse grid coordinates, endpoints exact.
    pub fn nodes(&self) -> Vec<f64> {
        let last = self.points_per_axis - 1;
        (0..=last)
            .map(|k| {
                if k == last {
                    self.log10_max
                } else {
                    self.log10_min + k as f64 * self.step()
                }
            })
            .collect()
    }
}

/// One surface node; coordinates are `log10` of the raw scales.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceSample {
    pub log10_sx: f64,
    pub log10_sy: f64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaleOptimum {
    pub estimate: AssociationEstimate,
    pub log10_sx: Option<f64>,
    pub log10_sy: Option<f64>,
    /// Moments at the optimum (absent when degenerate).
    pub moments: Option<Moments>,
    /// Number of `(s_x, s_y)` cells evaluated.
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceOptimum {
    pub scale: Option<f64>,
    pub log10_scale: Option<f64>,
    pub variance: f64,
    pub degenerate: bool,
}

/// One group's precomputed `d^alpha` plus its grid-to-raw offset.
pub(crate) struct Axis {
    powered: SymmetricMatrix,
    family: KernelFamily,
    offset: f64,
}

struct AxisKernel {
    kernel: CenteredKernel,
    var: f64,
}

impl Axis {
    pub(crate) fn new(
        d: &PairwiseMatrix,
        family: KernelFamily,
        alpha: f64,
        normalization: Normalization,
    ) -> Self {
        let offset = match normalization {
            Normalization::None => 0.0,
            Normalization::Median => d.median_nonzero().map_or(0.0, |m| alpha * libm::log10(m)),
        };
        Self {
            powered: powered(d, alpha),
            family,
            offset,
        }
    }

    fn raw(&self, grid_coord: f64) -> f64 {
        grid_coord + self.offset
    }

    fn kernel(&self, log10_raw: f64) -> AxisKernel {
        let scale = libm::pow(10.0, log10_raw).clamp(f64::MIN_POSITIVE, f64::MAX);
        let kernel = centered_similarity(&self.powered, self.family, scale);
        let n = kernel.len() as f64;
        let var = kernel.sum_squares() / (n * n);
        AxisKernel { kernel, var }
    }
}

/// Moments for every `(xs[i], ys[j])`, row-major. Kernels of `x` are cached
/// in blocks bounded by [`KERNEL_CACHE_BYTES`]; `y` kernels are rebuilt per
/// block.
fn evaluate_cells(x: &Axis, y: &Axis, xs: &[f64], ys: &[f64]) -> Vec<Moments> {
    let n = x.powered.len();
    let nf = n as f64;
    let block = (KERNEL_CACHE_BYTES / (n * n * 8).max(1)).max(1);
    let mut out = alloc::vec![Moments::new(0.0, 0.0, 0.0, 0.0); xs.len() * ys.len()];
    for (b, chunk) in xs.chunks(block).enumerate() {
        let dks: Vec<AxisKernel> = chunk.iter().map(|&l| x.kernel(l)).collect();
        for (j, &ly) in ys.iter().enumerate() {
            let ek = y.kernel(ly);
            for (k, dk) in dks.iter().enumerate() {
                let i = b * block + k;
                out[i * ys.len() + j] = Moments::new(
                    dk.kernel.inner(&ek.kernel) / (nf * nf),
                    dk.var,
                    ek.var,
                    pair_floor(dk.kernel.reference(), ek.kernel.reference()),
                );
            }
        }
    }
    out
}

#[derive(Clone, Copy)]
struct Incumbent {
    gx: f64,
    gy: f64,
    value: f64,
    moments: Moments,
}

/// Larger value wins; equal values go to the lexicographically smaller
/// `(gx, gy)`.
fn beats(value: f64, gx: f64, gy: f64, best: &Incumbent) -> bool {
    value > best.value || (value == best.value && (gx, gy) < (best.gx, best.gy))
}

fn best_of(gxs: &[f64], gys: &[f64], cells: &[Moments], start: Option<Incumbent>) -> Incumbent {
    let mut best = start;
    for (i, &gx) in gxs.iter().enumerate() {
        for (j, &gy) in gys.iter().enumerate() {
            let m = cells[i * gys.len() + j];
            let value = m.correlation();
            let replace = match &best {
                None => true,
                Some(b) => beats(value, gx, gy, b),
            };
            if replace {
                best = Some(Incumbent {
                    gx,
                    gy,
                    value,
                    moments: m,
                });
            }
        }
    }
    best.expect("grid has at least one node")
}

/// Five points spaced `half / 2` around `centre`, kept inside the window.
fn refine_nodes(centre: f64, half: f64, grid: &ScaleGrid) -> Vec<f64> {
    (-2..=2)
        .map(|k| centre + k as f64 * half / 2.0)
        .filter(|&g| g >= grid.log10_min && g <= grid.log10_max)
        .collect()
}

pub(crate) fn maximize_on(
    a: &PairwiseMatrix,
    b: &PairwiseMatrix,
    family: KernelFamily,
    alpha: f64,
    grid: &ScaleGrid,
) -> Result<ScaleOptimum> {
    grid.validate()?;
    check_alpha(alpha)?;
    if a.len() != b.len() {
        return Err(Error::SampleCountMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 3 {
        return Err(Error::TooFewSamples {
            min: 3,
            got: a.len(),
        });
    }
    let ax = Axis::new(a, family, alpha, grid.normalization);
    let ay = Axis::new(b, family, alpha, grid.normalization);
    let raw = |axis: &Axis, g: &[f64]| g.iter().map(|&v| axis.raw(v)).collect::<Vec<_>>();

    let nodes = grid.nodes();
    let cells = evaluate_cells(&ax, &ay, &raw(&ax, &nodes), &raw(&ay, &nodes));
    let mut evaluations = cells.len();
    let mut best = best_of(&nodes, &nodes, &cells, None);

    if !best.moments.is_degenerate() {
        let mut half = grid.step();
        for _ in 0..grid.refine_iterations {
            let gxs = refine_nodes(best.gx, half, grid);
            let gys = refine_nodes(best.gy, half, grid);
            let cells = evaluate_cells(&ax, &ay, &raw(&ax, &gxs), &raw(&ay, &gys));
            evaluations += cells.len();
            let before = best.value;
            best = best_of(&gxs, &gys, &cells, Some(best));
            half /= 4.0;
            if best.value - before < grid.refine_tolerance {
                break;
            }
        }
    }

    let degenerate = best.moments.is_degenerate();
    let (lx, ly) = (ax.raw(best.gx), ay.raw(best.gy));
    Ok(ScaleOptimum {
        estimate: AssociationEstimate {
            value: if degenerate { 0.0 } else { best.value },
            measure: Measure::SimilarityCorrelation,
            alpha: Some(alpha),
            s_x: (!degenerate).then(|| libm::pow(10.0, lx)),
            s_y: (!degenerate).then(|| libm::pow(10.0, ly)),
            degenerate,
        },
        log10_sx: (!degenerate).then_some(lx),
        log10_sy: (!degenerate).then_some(ly),
        moments: (!degenerate).then_some(best.moments),
        evaluations,
    })
}

pub(crate) fn surface_on(
    a: &PairwiseMatrix,
    b: &PairwiseMatrix,
    family: KernelFamily,
    alpha: f64,
    grid: &ScaleGrid,
) -> Result<Vec<SurfaceSample>> {
    grid.validate()?;
    check_alpha(alpha)?;
    if a.len() != b.len() {
        return Err(Error::SampleCountMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.len() < 3 {
        return Err(Error::TooFewSamples {
            min: 3,
            got: a.len(),
        });
    }
    let ax = Axis::new(a, family, alpha, grid.normalization);
    let ay = Axis::new(b, family, alpha, grid.normalization);
    let nodes = grid.nodes();
    let xs: Vec<f64> = nodes.iter().map(|&g| ax.raw(g)).collect();
    let ys: Vec<f64> = nodes.iter().map(|&g| ay.raw(g)).collect();
    let cells = evaluate_cells(&ax, &ay, &xs, &ys);
    let mut out = Vec::with_capacity(cells.len());
    for (i, &lx) in xs.iter().enumerate() {
        for (j, &ly) in ys.iter().enumerate() {
            out.push(SurfaceSample {
                log10_sx: lx,
                log10_sy: ly,
                value: cells[i * ys.len() + j].correlation(),
            });
        }
    }
    Ok(out)
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::Config("alpha must be a positive finite number"))
    }
}

/// Maximum similarity correlation over `(s_x, s_y)`.
///
/// Degenerate cells count as 0. If the winning cell is degenerate (for
/// instance when one group is constant) the estimate is 0, flagged, with no
/// scales.
pub fn maximize_correlation(
    x: &SampleSet,
    y: &SampleSet,
    family: KernelFamily,
    alpha: f64,
    grid: &ScaleGrid,
) -> Result<ScaleOptimum> {
    if x.len() != y.len() {
        return Err(Error::SampleCountMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    maximize_on(
        &pairwise_distances(x),
        &pairwise_distances(y),
        family,
        alpha,
        grid,
    )
}

/// The similarity correlation at every coarse grid node, row-major over
/// `(s_x, s_y)`.
pub fn evaluate_surface(
    x: &SampleSet,
    y: &SampleSet,
    family: KernelFamily,
    alpha: f64,
    grid: &ScaleGrid,
) -> Result<Vec<SurfaceSample>> {
    if x.len() != y.len() {
        return Err(Error::SampleCountMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    surface_on(
        &pairwise_distances(x),
        &pairwise_distances(y),
        family,
        alpha,
        grid,
    )
}

/// Scale maximizing the similarity variance of a single group.
pub fn maximize_variance_scale(
    x: &SampleSet,
    family: KernelFamily,
    alpha: f64,
    grid: &ScaleGrid,
) -> Result<VarianceOptimum> {
    grid.validate()?;
    check_alpha(alpha)?;
    if x.len() < 3 {
        return Err(Error::TooFewSamples {
            min: 3,
            got: x.len(),
        });
    }
    let axis = Axis::new(&pairwise_distances(x), family, alpha, grid.normalization);
    // (grid coordinate, variance, floor)
    let eval = |g: f64| {
        let k = axis.kernel(axis.raw(g));
        (g, k.var, variance_floor(k.kernel.reference()))
    };
    let pick = |cands: Vec<(f64, f64, f64)>, start: Option<(f64, f64, f64)>| {
        cands.into_iter().fold(start, |best, c| match best {
            Some(b) if !(c.1 > b.1 || (c.1 == b.1 && c.0 < b.0)) => Some(b),
            _ => Some(c),
        })
    };
    let mut best = pick(grid.nodes().into_iter().map(eval).collect(), None)
        .expect("grid has at least one node");
    if best.1 > best.2 {
        let mut half = grid.step();
        for _ in 0..grid.refine_iterations {
            let before = best.1;
            let cands = refine_nodes(best.0, half, grid)
                .into_iter()
                .map(eval)
                .collect();
            best = pick(cands, Some(best)).expect("incumbent present");
            half /= 4.0;
            if best.1 - before < grid.refine_tolerance * before {
                break;
            }
        }
    }
    let degenerate = best.1 <= best.2;
    let lx = axis.raw(best.0);
    Ok(VarianceOptimum {
        scale: (!degenerate).then(|| libm::pow(10.0, lx)),
        log10_scale: (!degenerate).then_some(lx),
        variance: if degenerate { 0.0 } else { best.1 },
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn line(n: usize) -> SampleSet {
        let v: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        SampleSet::from_column(&v).unwrap()
    }

    fn small_grid() -> ScaleGrid {
        ScaleGrid {
            log10_min: -2.0,
            log10_max: 2.0,
            points_per_axis: 9,
            refine_iterations: 2,
            ..ScaleGrid::default()
        }
    }

    #[test]
    fn grid_validation() {
        assert!(ScaleGrid::default().validate().is_ok());
        assert!(ScaleGrid::decades().validate().is_ok());
        let bad = [
            ScaleGrid {
                log10_min: 1.0,
                log10_max: 1.0,
                ..ScaleGrid::default()
            },
            ScaleGrid {
                points_per_axis: 2,
                ..ScaleGrid::default()
            },
            ScaleGrid {
                refine_tolerance: 0.0,
                ..ScaleGrid::default()
            },
            ScaleGrid {
                log10_max: f64::INFINITY,
                ..ScaleGrid::default()
            },
        ];
        for g in bad {
            assert!(matches!(g.validate(), Err(Error::Grid(_))));
        }
        let x = line(5);
        assert!(maximize_correlation(&x, &x, KernelFamily::Exponential, 2.0, &bad[1]).is_err());
    }

    #[test]
    fn nodes_hit_both_ends() {
        let g = ScaleGrid::default();
        let nodes = g.nodes();
        assert_eq!(nodes.len(), 33);
        assert_eq!(nodes[0], -4.0);
        assert_eq!(nodes[32], 4.0);
        assert_abs_diff_eq!(nodes[16], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn surface_cardinality_and_order() {
        let x = line(12);
        let y = SampleSet::from_column(&(0..12).map(|i| libm::sin(i as f64)).collect::<Vec<_>>())
            .unwrap();
        let grid = ScaleGrid {
            points_per_axis: 3,
            normalization: Normalization::None,
            ..ScaleGrid::default()
        };
        let s = evaluate_surface(&x, &y, KernelFamily::Exponential, 2.0, &grid).unwrap();
        assert_eq!(s.len(), 9);
        let coords: Vec<(f64, f64)> = s.iter().map(|c| (c.log10_sx, c.log10_sy)).collect();
        assert_eq!(coords[0], (-4.0, -4.0));
        assert_eq!(coords[1], (-4.0, 0.0));
        assert_eq!(coords[3], (0.0, -4.0));
        assert_eq!(coords[8], (4.0, 4.0));
    }

    #[test]
    fn line_reaches_one() {
        let x = line(60);
        let opt =
            maximize_correlation(&x, &x, KernelFamily::Exponential, 2.0, &small_grid()).unwrap();
        assert_abs_diff_eq!(opt.estimate.value, 1.0, epsilon = 1e-12);
        assert!(!opt.estimate.degenerate);
        assert_eq!(opt.log10_sx, opt.log10_sy);
    }

    #[test]
    fn constant_group_is_degenerate() {
        let x = line(20);
        let c = SampleSet::from_column(&[0.5; 20]).unwrap();
        let opt =
            maximize_correlation(&x, &c, KernelFamily::Exponential, 2.0, &small_grid()).unwrap();
        assert!(opt.estimate.degenerate);
        assert_eq!(opt.estimate.value, 0.0);
        assert!(opt.estimate.s_x.is_none() && opt.estimate.s_y.is_none());
    }

    #[test]
    fn extreme_grid_is_all_zero() {
        let x = line(15);
        let y = SampleSet::from_column(&(0..15).map(|i| libm::cos(i as f64)).collect::<Vec<_>>())
            .unwrap();
        let grid = ScaleGrid {
            log10_min: 290.0,
            log10_max: 300.0,
            points_per_axis: 3,
            normalization: Normalization::None,
            ..ScaleGrid::default()
        };
        let s = evaluate_surface(&x, &y, KernelFamily::Exponential, 2.0, &grid).unwrap();
        assert!(s.iter().all(|c| c.value == 0.0));
        let opt = maximize_correlation(&x, &y, KernelFamily::Exponential, 2.0, &grid).unwrap();
        assert!(opt.estimate.degenerate);
    }

    #[test]
    fn optimizer_dominates_surface() {
        let x = line(30);
        let y = SampleSet::from_column(
            &(0..30)
                .map(|i| libm::sin(0.5 * i as f64))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let grid = small_grid();
        let s = evaluate_surface(&x, &y, KernelFamily::Exponential, 2.0, &grid).unwrap();
        let opt = maximize_correlation(&x, &y, KernelFamily::Exponential, 2.0, &grid).unwrap();
        let top = s.iter().map(|c| c.value).fold(f64::MIN, f64::max);
        assert!(opt.estimate.value >= top - 1e-12);
        let again = maximize_correlation(&x, &y, KernelFamily::Exponential, 2.0, &grid).unwrap();
        assert_eq!(opt, again);
    }

    #[test]
    fn too_few_samples() {
        let x = line(2);
        assert!(matches!(
            maximize_correlation(&x, &x, KernelFamily::Exponential, 2.0, &small_grid()),
            Err(Error::TooFewSamples { min: 3, .. })
        ));
    }

    #[test]
    fn tetrahedron_variance_is_degenerate() {
        let x = SampleSet::from_rows(&[
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ])
        .unwrap();
        let v = maximize_variance_scale(&x, KernelFamily::Exponential, 2.0, &ScaleGrid::default())
            .unwrap();
        assert!(v.degenerate);
        assert_eq!(v.variance, 0.0);
        assert!(v.scale.is_none());
    }
}
